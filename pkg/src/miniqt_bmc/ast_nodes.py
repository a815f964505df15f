"""Untyped syntax tree for MiniQt, plus a pretty-printer.

Expression nodes carry a `ty` slot that the type checker fills in; until
then it is None.  `structurally_equal` compares trees while ignoring
locations and type annotations, which is what the print/re-parse
round-trip needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Optional

from .source import SourceLocation


@dataclass
class Node:
    loc: SourceLocation


# --- expressions -----------------------------------------------------------


@dataclass
class Expr(Node):
    ty: object = field(default=None, init=False, compare=False, repr=False)


@dataclass
class IntLit(Expr):
    value: int


@dataclass
class BoolLit(Expr):
    value: bool


@dataclass
class StringLit(Expr):
    value: str


@dataclass
class VarRef(Expr):
    name: str
    # Filled by the type checker: "local" or "field" (implicit this), plus the
    # declaration node a local resolves to (shadowing-safe renaming needs it).
    binding: Optional[str] = field(default=None, compare=False, repr=False)
    decl: Optional[object] = field(default=None, compare=False, repr=False)


@dataclass
class ThisRef(Expr):
    pass


@dataclass
class FieldAccess(Expr):
    receiver: Expr
    field_name: str


@dataclass
class IndexExpr(Expr):
    base: Expr
    index: Expr


@dataclass
class Call(Expr):
    """Free-function, builtin, or method call (receiver is None when bare)."""

    receiver: Optional[Expr]
    name: str
    args: list[Expr]
    # Mangled callee, filled by the type checker (None for builtins).
    mangled: Optional[str] = field(default=None, compare=False, repr=False)


@dataclass
class UnaryOp(Expr):
    op: str  # '!' or '-'
    operand: Expr


@dataclass
class BinOp(Expr):
    op: str
    lhs: Expr
    rhs: Expr


# --- statements ------------------------------------------------------------


@dataclass
class Stmt(Node):
    pass


@dataclass
class Block(Stmt):
    stmts: list[Stmt]


@dataclass
class VarDeclStmt(Stmt):
    type_ref: "TypeRef"
    name: str
    init: Optional[Expr]


@dataclass
class AssignStmt(Stmt):
    target: Expr
    value: Expr


@dataclass
class IfStmt(Stmt):
    cond: Expr
    then_body: Block
    else_body: Optional[Block]


@dataclass
class WhileStmt(Stmt):
    cond: Expr
    body: Block


@dataclass
class ForStmt(Stmt):
    init: Optional[Stmt]  # VarDeclStmt or AssignStmt
    cond: Optional[Expr]
    step: Optional[Stmt]  # AssignStmt
    body: Block


@dataclass
class ExprStmt(Stmt):
    expr: Expr


@dataclass
class AssertStmt(Stmt):
    cond: Expr
    text: str  # source rendering of cond, used for the claim message


@dataclass
class VerifierAssertStmt(Stmt):
    cond: Expr
    message: str


@dataclass
class ReturnStmt(Stmt):
    value: Optional[Expr]


# --- declarations ----------------------------------------------------------


@dataclass
class TypeRef(Node):
    name: str
    arg: Optional["TypeRef"] = None  # template argument, e.g. QList<int>

    def __str__(self) -> str:
        return f"{self.name}<{self.arg}>" if self.arg else self.name


@dataclass
class Param(Node):
    type_ref: TypeRef
    name: str


@dataclass
class FieldDecl(Node):
    type_ref: TypeRef
    name: str
    array_size: Optional[object] = None  # int literal or identifier text


@dataclass
class MethodDecl(Node):
    return_type: Optional[TypeRef]  # None for constructors
    name: str
    params: list[Param]
    body: Block
    is_ctor: bool = False


@dataclass
class ClassDecl(Node):
    name: str
    type_param: Optional[str]  # template<class T>
    fields: list[FieldDecl]
    methods: list[MethodDecl]


@dataclass
class FuncDecl(Node):
    return_type: TypeRef
    name: str
    params: list[Param]
    body: Block


@dataclass
class Include(Node):
    name: str


@dataclass
class Program(Node):
    includes: list[Include]
    classes: list[ClassDecl]
    functions: list[FuncDecl]


# --- pretty-printing -------------------------------------------------------

_PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "==": 3, "!=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3,
    "+": 4, "-": 4,
    "*": 5, "/": 5, "%": 5,
}
_UNARY_PREC = 6


def expr_to_source(e: Expr, parent_prec: int = 0) -> str:
    """Render an expression; parenthesizes so the output re-parses identically."""
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, StringLit):
        escaped = e.value.replace("\\", "\\\\").replace('"', '\\"')
        escaped = escaped.replace("\n", "\\n").replace("\t", "\\t")
        return f'"{escaped}"'
    if isinstance(e, VarRef):
        return e.name
    if isinstance(e, ThisRef):
        return "this"
    if isinstance(e, FieldAccess):
        recv = expr_to_source(e.receiver, _UNARY_PREC + 1)
        sep = "->" if isinstance(e.receiver, ThisRef) else "."
        return f"{recv}{sep}{e.field_name}"
    if isinstance(e, IndexExpr):
        return f"{expr_to_source(e.base, _UNARY_PREC + 1)}[{expr_to_source(e.index)}]"
    if isinstance(e, Call):
        args = ", ".join(expr_to_source(a) for a in e.args)
        if e.receiver is None:
            return f"{e.name}({args})"
        recv = expr_to_source(e.receiver, _UNARY_PREC + 1)
        sep = "->" if isinstance(e.receiver, ThisRef) else "."
        return f"{recv}{sep}{e.name}({args})"
    if isinstance(e, UnaryOp):
        inner = expr_to_source(e.operand, _UNARY_PREC)
        if e.op == "-" and inner.startswith("-"):
            inner = f"({inner})"  # avoid fusing into a '--' token
        text = f"{e.op}{inner}"
        return text if parent_prec <= _UNARY_PREC else f"({text})"
    if isinstance(e, BinOp):
        prec = _PRECEDENCE[e.op]
        lhs = expr_to_source(e.lhs, prec)
        rhs = expr_to_source(e.rhs, prec + 1)  # left-associative
        text = f"{lhs} {e.op} {rhs}"
        return text if prec >= parent_prec else f"({text})"
    raise AssertionError(f"unhandled expression {e!r}")


def _stmt_lines(s: Stmt, indent: int) -> list[str]:
    pad = "    " * indent
    if isinstance(s, Block):
        lines = [pad + "{"]
        for inner in s.stmts:
            lines.extend(_stmt_lines(inner, indent + 1))
        lines.append(pad + "}")
        return lines
    if isinstance(s, VarDeclStmt):
        init = f" = {expr_to_source(s.init)}" if s.init is not None else ""
        return [f"{pad}{s.type_ref} {s.name}{init};"]
    if isinstance(s, AssignStmt):
        return [f"{pad}{expr_to_source(s.target)} = {expr_to_source(s.value)};"]
    if isinstance(s, IfStmt):
        lines = [f"{pad}if ({expr_to_source(s.cond)})"]
        lines.extend(_stmt_lines(s.then_body, indent))
        if s.else_body is not None:
            lines.append(pad + "else")
            lines.extend(_stmt_lines(s.else_body, indent))
        return lines
    if isinstance(s, WhileStmt):
        return [f"{pad}while ({expr_to_source(s.cond)})"] + _stmt_lines(s.body, indent)
    if isinstance(s, ForStmt):
        init = _stmt_lines(s.init, 0)[0][:-1] if s.init is not None else ""
        cond = expr_to_source(s.cond) if s.cond is not None else ""
        step = _stmt_lines(s.step, 0)[0][:-1] if s.step is not None else ""
        return [f"{pad}for ({init}; {cond}; {step})"] + _stmt_lines(s.body, indent)
    if isinstance(s, ExprStmt):
        return [f"{pad}{expr_to_source(s.expr)};"]
    if isinstance(s, AssertStmt):
        return [f"{pad}assert({expr_to_source(s.cond)});"]
    if isinstance(s, VerifierAssertStmt):
        msg = expr_to_source(StringLit(s.loc, s.message))
        return [f"{pad}__VERIFIER_assert({expr_to_source(s.cond)}, {msg});"]
    if isinstance(s, ReturnStmt):
        if s.value is None:
            return [pad + "return;"]
        return [f"{pad}return {expr_to_source(s.value)};"]
    raise AssertionError(f"unhandled statement {s!r}")


def to_source(program: Program) -> str:
    """Pretty-print a whole program back to parseable MiniQt source."""
    lines: list[str] = []
    for inc in program.includes:
        lines.append(f"#include <{inc.name}>")
    for cls in program.classes:
        if cls.type_param:
            lines.append(f"template<class {cls.type_param}>")
        lines.append(f"class {cls.name} {{")
        for f in cls.fields:
            size = f"[{f.array_size}]" if f.array_size is not None else ""
            lines.append(f"    {f.type_ref} {f.name}{size};")
        for m in cls.methods:
            params = ", ".join(f"{p.type_ref} {p.name}" for p in m.params)
            head = m.name if m.is_ctor else f"{m.return_type} {m.name}"
            lines.append(f"    {head}({params})")
            lines.extend(_stmt_lines(m.body, 1))
        lines.append("};")
    for fn in program.functions:
        params = ", ".join(f"{p.type_ref} {p.name}" for p in fn.params)
        lines.append(f"{fn.return_type} {fn.name}({params})")
        lines.extend(_stmt_lines(fn.body, 0))
    return "\n".join(lines) + "\n"


def structurally_equal(a: object, b: object) -> bool:
    """Deep equality over AST nodes, ignoring locations and annotations."""
    if type(a) is not type(b):
        return False
    if isinstance(a, Node):
        for f in fields(a):
            if f.name in ("loc", "ty", "binding", "mangled", "decl"):
                continue
            if not structurally_equal(getattr(a, f.name), getattr(b, f.name)):
                return False
        return True
    if isinstance(a, list):
        return len(a) == len(b) and all(
            structurally_equal(x, y) for x, y in zip(a, b)
        )
    return a == b


def iter_nodes(root: Node):
    """Yield every AST node reachable from `root`, including itself."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        for f in fields(node):
            if f.name == "decl":
                continue  # back-reference, not tree structure
            value = getattr(node, f.name)
            if isinstance(value, Node):
                stack.append(value)
            elif isinstance(value, list):
                stack.extend(v for v in value if isinstance(v, Node))

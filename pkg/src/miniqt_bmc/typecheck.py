"""Type checking and template monomorphization.

The checker annotates every expression with a SemType, resolves identifier
uses to their declarations, rewrites magic configuration constants to
integer literals, and instantiates single-parameter template classes at
`int` (QList<int> becomes the concrete class QList_int).  Conditions in
int position get an implicit `!= 0` comparison, so `while (1)` works.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

from . import ast_nodes as ast
from .config import VerifierConfig
from .errors import TypeCheckError, UndefinedSymbol
from .semtypes import (
    BOOL,
    STRING,
    VOID,
    ArrayType,
    BoolType,
    ClassType,
    IntType,
    SemType,
    is_scalar,
)


def mangle(class_name: str, method_name: str, arity: int) -> str:
    return f"{class_name}::{method_name}/{arity}"


@dataclass
class MethodInfo:
    mangled: str
    owner: str
    decl: ast.MethodDecl
    param_types: list[SemType]
    return_type: SemType


@dataclass
class ClassInfo:
    name: str
    decl: ast.ClassDecl
    fields: dict[str, SemType] = field(default_factory=dict)
    methods: dict[tuple[str, int], MethodInfo] = field(default_factory=dict)
    ctor: MethodInfo | None = None


@dataclass
class FunctionInfo:
    name: str
    decl: ast.FuncDecl
    param_types: list[SemType]
    return_type: SemType


@dataclass
class TypedAst:
    program: ast.Program
    classes: dict[str, ClassInfo]
    functions: dict[str, FunctionInfo]
    int_type: IntType

    @property
    def main(self) -> FunctionInfo:
        return self.functions["main"]

    def method(self, mangled: str) -> MethodInfo:
        cls, rest = mangled.split("::", 1)
        name, arity = rest.rsplit("/", 1)
        return self.classes[cls].methods[(name, int(arity))]


def typecheck(program: ast.Program, config: VerifierConfig | None = None) -> TypedAst:
    """Annotate `program` in place and return the typed view of it."""
    return _Checker(config or VerifierConfig()).run(program)


class _Checker:
    def __init__(self, config: VerifierConfig):
        self.config = config
        self.int_type = IntType(config.int_width)
        self.templates: dict[str, ast.ClassDecl] = {}
        self.classes: dict[str, ClassInfo] = {}
        self.functions: dict[str, FunctionInfo] = {}
        self.concrete_decls: list[ast.ClassDecl] = []
        self.scopes: list[dict[str, tuple[object, SemType]]] = []
        self.current_class: ClassInfo | None = None
        self.current_return: SemType = VOID

    # -- driver --------------------------------------------------------

    def run(self, program: ast.Program) -> TypedAst:
        for cls in program.classes:
            if cls.name in self.templates or cls.name in self.classes:
                raise TypeCheckError(f"duplicate class '{cls.name}'", cls.loc)
            if cls.type_param is not None:
                self.templates[cls.name] = cls
            else:
                self._register_class(cls)
        for fn in program.functions:
            if fn.name in self.functions:
                raise TypeCheckError(f"duplicate function '{fn.name}'", fn.loc)
            ret = self.resolve_type(fn.return_type)
            if not (ret == VOID or is_scalar(ret)):
                raise TypeCheckError(
                    "functions may only return int, bool, or void", fn.loc
                )
            params = [self._resolve_param_type(p) for p in fn.params]
            self.functions[fn.name] = FunctionInfo(fn.name, fn, params, ret)

        if "main" not in self.functions:
            raise TypeCheckError("program declares no 'main' function", program.loc)
        main = self.functions["main"]
        if main.param_types:
            raise TypeCheckError("'main' must take no parameters", main.decl.loc)

        # Function bodies first: they trigger template instantiation on
        # demand, growing self.classes.  Then drain the class worklist, which
        # can itself instantiate further templates.
        for info in self.functions.values():
            self._check_function_body(info)
        checked: set[str] = set()
        while True:
            pending = [n for n in self.classes if n not in checked]
            if not pending:
                break
            for name in pending:
                checked.add(name)
                self._check_class_body(self.classes[name])

        program.classes = list(self.concrete_decls)
        return TypedAst(program, self.classes, self.functions, self.int_type)

    # -- declarations ----------------------------------------------------

    def _register_class(self, decl: ast.ClassDecl) -> ClassInfo:
        info = ClassInfo(decl.name, decl)
        self.classes[decl.name] = info
        self.concrete_decls.append(decl)
        for f in decl.fields:
            if f.name in info.fields:
                raise TypeCheckError(f"duplicate field '{f.name}'", f.loc)
            base = self.resolve_type(f.type_ref)
            if not is_scalar(base):
                raise TypeCheckError(
                    f"field '{f.name}' must have scalar type (class-typed fields "
                    "are not supported)",
                    f.loc,
                )
            if f.array_size is not None:
                capacity = self._resolve_array_size(f)
                info.fields[f.name] = ArrayType(base, capacity)
            else:
                info.fields[f.name] = base
        for m in decl.methods:
            arity = len(m.params)
            params = [self._resolve_param_type(p) for p in m.params]
            if m.is_ctor:
                if info.ctor is not None:
                    raise TypeCheckError("duplicate constructor", m.loc)
                mangled = mangle(decl.name, decl.name, arity)
                info.ctor = MethodInfo(mangled, decl.name, m, params, VOID)
                if arity != 0:
                    raise TypeCheckError(
                        "constructors with parameters are not supported", m.loc
                    )
                continue
            key = (m.name, arity)
            if key in info.methods:
                raise TypeCheckError(
                    f"duplicate method '{m.name}' with {arity} parameter(s)", m.loc
                )
            ret = self.resolve_type(m.return_type)
            if not (ret == VOID or is_scalar(ret)):
                raise TypeCheckError(
                    "methods may only return int, bool, or void", m.loc
                )
            info.methods[key] = MethodInfo(
                mangle(decl.name, m.name, arity), decl.name, m, params, ret
            )
        return info

    def _resolve_array_size(self, f: ast.FieldDecl) -> int:
        size = f.array_size
        if isinstance(size, str):
            consts = self.config.builtin_constants
            if size not in consts:
                raise TypeCheckError(f"unknown array capacity '{size}'", f.loc)
            size = consts[size]
        if size < 1:
            raise TypeCheckError("array capacity must be >= 1", f.loc)
        return size

    def _resolve_param_type(self, p: ast.Param) -> SemType:
        ty = self.resolve_type(p.type_ref)
        if not is_scalar(ty):
            raise TypeCheckError(
                f"parameter '{p.name}' must be int or bool", p.loc
            )
        return ty

    def resolve_type(self, ref: ast.TypeRef) -> SemType:
        if ref.name == "int":
            return self.int_type
        if ref.name == "bool":
            return BOOL
        if ref.name == "void":
            return VOID
        if ref.arg is not None:
            template = self.templates.get(ref.name)
            if template is None:
                raise TypeCheckError(
                    f"'{ref.name}' is not a template class", ref.loc
                )
            arg_ty = self.resolve_type(ref.arg)
            if arg_ty != self.int_type:
                raise TypeCheckError(
                    f"only the int instantiation of '{ref.name}' is supported",
                    ref.loc,
                )
            inst_name = f"{ref.name}_int"
            if inst_name not in self.classes:
                self._instantiate(template, inst_name)
            return ClassType(inst_name)
        if ref.name in self.classes:
            return ClassType(ref.name)
        if ref.name in self.templates:
            raise TypeCheckError(
                f"template class '{ref.name}' needs a type argument", ref.loc
            )
        raise UndefinedSymbol(ref.loc, ref.name)

    def _instantiate(self, template: ast.ClassDecl, inst_name: str) -> None:
        inst = copy.deepcopy(template)
        inst.name = inst_name
        param = inst.type_param
        inst.type_param = None
        for node in ast.iter_nodes(inst):
            if isinstance(node, ast.TypeRef) and node.name == param:
                node.name = "int"
                node.arg = None
        self._register_class(inst)

    # -- bodies ----------------------------------------------------------

    def _check_class_body(self, info: ClassInfo) -> None:
        self.current_class = info
        members = list(info.methods.values())
        if info.ctor is not None:
            members.append(info.ctor)
        for method in members:
            self.current_return = method.return_type
            self.scopes = [
                {
                    p.name: (p, ty)
                    for p, ty in zip(method.decl.params, method.param_types)
                }
            ]
            self._check_block(method.decl.body, push_scope=False)
        self.current_class = None

    def _check_function_body(self, info: FunctionInfo) -> None:
        self.current_return = info.return_type
        self.scopes = [
            {p.name: (p, ty) for p, ty in zip(info.decl.params, info.param_types)}
        ]
        self._check_block(info.decl.body, push_scope=False)

    def _check_block(self, block: ast.Block, push_scope: bool = True) -> None:
        if push_scope:
            self.scopes.append({})
        for stmt in block.stmts:
            self._check_stmt(stmt)
        if push_scope:
            self.scopes.pop()

    def _check_stmt(self, stmt: ast.Stmt) -> None:
        if isinstance(stmt, ast.Block):
            self._check_block(stmt)
        elif isinstance(stmt, ast.VarDeclStmt):
            ty = self.resolve_type(stmt.type_ref)
            if ty == VOID:
                raise TypeCheckError("cannot declare a void variable", stmt.loc)
            if isinstance(ty, ClassType):
                if stmt.init is not None:
                    raise TypeCheckError(
                        "objects are default-constructed; initializers are not "
                        "supported",
                        stmt.loc,
                    )
            elif stmt.init is not None:
                stmt.init = self._expr(stmt.init)
                self._require(stmt.init, ty)
            self.scopes[-1][stmt.name] = (stmt, ty)
        elif isinstance(stmt, ast.AssignStmt):
            stmt.target = self._expr(stmt.target)
            target_ty = stmt.target.ty
            if isinstance(target_ty, ClassType):
                raise TypeCheckError("objects cannot be assigned", stmt.loc)
            if not self._is_lvalue(stmt.target):
                raise TypeCheckError("left side is not assignable", stmt.loc)
            stmt.value = self._expr(stmt.value)
            self._require(stmt.value, target_ty)
        elif isinstance(stmt, ast.IfStmt):
            stmt.cond = self._condition(stmt.cond)
            self._check_block(stmt.then_body)
            if stmt.else_body is not None:
                self._check_block(stmt.else_body)
        elif isinstance(stmt, ast.WhileStmt):
            stmt.cond = self._condition(stmt.cond)
            self._check_block(stmt.body)
        elif isinstance(stmt, ast.ForStmt):
            self.scopes.append({})
            if stmt.init is not None:
                self._check_stmt(stmt.init)
            if stmt.cond is not None:
                stmt.cond = self._condition(stmt.cond)
            if stmt.step is not None:
                self._check_stmt(stmt.step)
            self._check_block(stmt.body)
            self.scopes.pop()
        elif isinstance(stmt, ast.ExprStmt):
            stmt.expr = self._expr(stmt.expr)
        elif isinstance(stmt, ast.AssertStmt):
            stmt.cond = self._condition(stmt.cond)
        elif isinstance(stmt, ast.VerifierAssertStmt):
            stmt.cond = self._expr(stmt.cond)
            if not isinstance(stmt.cond.ty, BoolType):
                raise TypeCheckError(
                    "__VERIFIER_assert needs a bool condition", stmt.loc
                )
        elif isinstance(stmt, ast.ReturnStmt):
            if stmt.value is None:
                if self.current_return != VOID:
                    raise TypeCheckError("missing return value", stmt.loc)
            else:
                if self.current_return == VOID:
                    raise TypeCheckError(
                        "void function cannot return a value", stmt.loc
                    )
                stmt.value = self._expr(stmt.value)
                self._require(stmt.value, self.current_return)
        else:
            raise AssertionError(f"unhandled statement {stmt!r}")

    # -- expressions -------------------------------------------------------

    def _condition(self, e: ast.Expr) -> ast.Expr:
        """Check a condition; ints get the C-style implicit `!= 0`."""
        e = self._expr(e)
        if isinstance(e.ty, IntType):
            zero = ast.IntLit(e.loc, 0)
            zero.ty = self.int_type
            wrapped = ast.BinOp(e.loc, "!=", e, zero)
            wrapped.ty = BOOL
            return wrapped
        if isinstance(e.ty, BoolType):
            return e
        raise TypeCheckError(f"condition has type {e.ty}, expected bool", e.loc)

    def _require(self, e: ast.Expr, expected: SemType) -> None:
        if e.ty != expected:
            raise TypeCheckError(f"expected {expected}, got {e.ty}", e.loc)

    def _scalar(self, e: ast.Expr) -> ast.Expr:
        e = self._expr(e)
        if not is_scalar(e.ty):
            raise TypeCheckError(f"scalar value expected, got {e.ty}", e.loc)
        return e

    def _is_lvalue(self, e: ast.Expr) -> bool:
        if isinstance(e, ast.VarRef):
            return e.binding in ("local", "field")
        return isinstance(e, (ast.FieldAccess, ast.IndexExpr))

    def _lookup_local(self, name: str):
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def _expr(self, e: ast.Expr) -> ast.Expr:
        if isinstance(e, ast.IntLit):
            half = 1 << (self.int_type.width - 1)
            if not (-half <= e.value <= half - 1):
                raise TypeCheckError(
                    f"integer literal {e.value} out of range for "
                    f"{self.int_type.width}-bit int",
                    e.loc,
                )
            e.ty = self.int_type
            return e
        if isinstance(e, ast.BoolLit):
            e.ty = BOOL
            return e
        if isinstance(e, ast.StringLit):
            e.ty = STRING
            return e
        if isinstance(e, ast.VarRef):
            hit = self._lookup_local(e.name)
            if hit is not None:
                decl, ty = hit
                e.binding = "local"
                e.decl = decl
                e.ty = ty
                return e
            if self.current_class is not None and e.name in self.current_class.fields:
                e.binding = "field"
                e.ty = self.current_class.fields[e.name]
                return e
            consts = self.config.builtin_constants
            if e.name in consts:
                lit = ast.IntLit(e.loc, consts[e.name])
                lit.ty = self.int_type
                return lit
            raise UndefinedSymbol(e.loc, e.name)
        if isinstance(e, ast.ThisRef):
            if self.current_class is None:
                raise TypeCheckError("'this' outside of a class method", e.loc)
            e.ty = ClassType(self.current_class.name)
            return e
        if isinstance(e, ast.FieldAccess):
            e.receiver = self._expr(e.receiver)
            cls = self._receiver_class(e.receiver, e.loc)
            if e.field_name not in cls.fields:
                raise TypeCheckError(
                    f"class {cls.name} has no field '{e.field_name}'", e.loc
                )
            e.ty = cls.fields[e.field_name]
            return e
        if isinstance(e, ast.IndexExpr):
            e.base = self._expr(e.base)
            if not isinstance(e.base.ty, ArrayType):
                raise TypeCheckError("only array fields can be indexed", e.loc)
            e.index = self._expr(e.index)
            self._require(e.index, self.int_type)
            e.ty = e.base.ty.elem
            return e
        if isinstance(e, ast.Call):
            return self._check_call(e)
        if isinstance(e, ast.UnaryOp):
            if e.op == "!":
                e.operand = self._condition(e.operand)
                e.ty = BOOL
            else:
                e.operand = self._scalar(e.operand)
                self._require(e.operand, self.int_type)
                e.ty = self.int_type
            return e
        if isinstance(e, ast.BinOp):
            return self._check_binop(e)
        raise AssertionError(f"unhandled expression {e!r}")

    def _receiver_class(self, receiver: ast.Expr, loc) -> ClassInfo:
        if not isinstance(receiver.ty, ClassType):
            raise TypeCheckError(
                f"member access on non-class value of type {receiver.ty}", loc
            )
        if not (
            isinstance(receiver, ast.ThisRef)
            or (isinstance(receiver, ast.VarRef) and receiver.binding == "local")
        ):
            raise TypeCheckError(
                "method receiver must be a variable or 'this'", loc
            )
        return self.classes[receiver.ty.name]

    def _check_call(self, e: ast.Call) -> ast.Expr:
        e.args = [self._scalar(a) for a in e.args]
        arg_types = [a.ty for a in e.args]
        if e.receiver is None:
            if e.name == "nondet_int":
                if e.args:
                    raise TypeCheckError("nondet_int takes no arguments", e.loc)
                e.ty = self.int_type
                return e
            if e.name in self.functions:
                info = self.functions[e.name]
                self._check_args(e, arg_types, info.param_types)
                e.mangled = e.name
                e.ty = info.return_type
                return e
            if self.current_class is not None:
                key = (e.name, len(e.args))
                if key in self.current_class.methods:
                    info = self.current_class.methods[key]
                    self._check_args(e, arg_types, info.param_types)
                    e.mangled = info.mangled
                    e.ty = info.return_type
                    return e
            raise UndefinedSymbol(e.loc, e.name)
        e.receiver = self._expr(e.receiver)
        cls = self._receiver_class(e.receiver, e.loc)
        key = (e.name, len(e.args))
        if key not in cls.methods:
            raise TypeCheckError(
                f"class {cls.name} has no method '{e.name}' with "
                f"{len(e.args)} argument(s)",
                e.loc,
            )
        info = cls.methods[key]
        self._check_args(e, arg_types, info.param_types)
        e.mangled = info.mangled
        e.ty = info.return_type
        return e

    def _check_args(self, e: ast.Call, actual: list, expected: list) -> None:
        if len(actual) != len(expected):
            raise TypeCheckError(
                f"'{e.name}' expects {len(expected)} argument(s), got "
                f"{len(actual)}",
                e.loc,
            )
        for arg, want in zip(e.args, expected):
            self._require(arg, want)

    def _check_binop(self, e: ast.BinOp) -> ast.Expr:
        if e.op in ("&&", "||"):
            e.lhs = self._condition(e.lhs)
            e.rhs = self._condition(e.rhs)
            e.ty = BOOL
            return e
        e.lhs = self._scalar(e.lhs)
        e.rhs = self._scalar(e.rhs)
        if e.op in ("+", "-", "*", "/", "%"):
            self._require(e.lhs, self.int_type)
            self._require(e.rhs, self.int_type)
            e.ty = self.int_type
            return e
        if e.op in ("<", "<=", ">", ">="):
            self._require(e.lhs, self.int_type)
            self._require(e.rhs, self.int_type)
            e.ty = BOOL
            return e
        if e.op in ("==", "!="):
            if e.lhs.ty != e.rhs.ty:
                raise TypeCheckError(
                    f"cannot compare {e.lhs.ty} with {e.rhs.ty}", e.loc
                )
            e.ty = BOOL
            return e
        raise AssertionError(f"unhandled operator {e.op}")

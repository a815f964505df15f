"""Recursive-descent parser producing the untyped MiniQt AST."""

from __future__ import annotations

from typing import Optional

from . import ast_nodes as ast
from .errors import ParseError
from .lexer import decode_string
from .source import SourceLocation, Token, TokenKind

_TYPE_KEYWORDS = ("int", "bool", "void")
_CMP_OPS = ("==", "!=", "<", "<=", ">", ">=")


class _Cursor:
    def __init__(self, tokens: list[Token], file: str = "<input>"):
        self.tokens = tokens
        self.pos = 0
        self.file = file

    def peek(self, offset: int = 0) -> Optional[Token]:
        idx = self.pos + offset
        return self.tokens[idx] if idx < len(self.tokens) else None

    def at(self, text: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.text == text

    def at_kind(self, kind: TokenKind, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok.kind == kind

    def loc(self) -> SourceLocation:
        tok = self.peek()
        if tok is not None:
            return tok.loc
        if self.tokens:
            return self.tokens[-1].loc
        return SourceLocation(self.file, 1, 1)

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.loc(), "a token", "end-of-input")
        self.pos += 1
        return tok

    def found(self) -> str:
        tok = self.peek()
        return f"'{tok.text}'" if tok is not None else "end-of-input"

    def expect(self, text: str, expected: Optional[str] = None) -> Token:
        if not self.at(text):
            raise ParseError(self.loc(), expected or f"'{text}'", self.found())
        return self.advance()

    def expect_kind(self, kind: TokenKind, expected: str) -> Token:
        if not self.at_kind(kind):
            raise ParseError(self.loc(), expected, self.found())
        return self.advance()


def parse(tokens: list[Token], file: str = "<input>") -> ast.Program:
    """Parse a token list into a Program; raises ParseError on malformed input."""
    cur = _Cursor(tokens, file)
    start = cur.loc()
    includes: list[ast.Include] = []
    classes: list[ast.ClassDecl] = []
    functions: list[ast.FuncDecl] = []
    while cur.peek() is not None:
        if cur.at("#"):
            includes.append(_parse_include(cur))
        elif cur.at("template") or cur.at("class"):
            classes.append(_parse_class(cur))
        else:
            functions.append(_parse_function(cur))
    return ast.Program(start, includes, classes, functions)


def _parse_include(cur: _Cursor) -> ast.Include:
    loc = cur.loc()
    cur.expect("#")
    tok = cur.expect_kind(TokenKind.IDENT, "'include'")
    if tok.text != "include":
        raise ParseError(tok.loc, "'include'", f"'{tok.text}'")
    cur.expect("<")
    name = cur.expect_kind(TokenKind.IDENT, "include name").text
    cur.expect(">")
    return ast.Include(loc, name)


def _parse_class(cur: _Cursor) -> ast.ClassDecl:
    loc = cur.loc()
    type_param = None
    if cur.at("template"):
        cur.advance()
        cur.expect("<")
        cur.expect("class")
        type_param = cur.expect_kind(TokenKind.IDENT, "type parameter").text
        cur.expect(">")
    cur.expect("class")
    name = cur.expect_kind(TokenKind.IDENT, "class name").text
    cur.expect("{")
    fields: list[ast.FieldDecl] = []
    methods: list[ast.MethodDecl] = []
    while not cur.at("}"):
        member_loc = cur.loc()
        # Constructor: ClassName '(' with no leading return type.
        if cur.at(name) and cur.at("(", 1):
            cur.advance()
            params = _parse_params(cur)
            body = _parse_block(cur)
            methods.append(ast.MethodDecl(member_loc, None, name, params, body, is_ctor=True))
            continue
        type_ref = _parse_type(cur)
        member_name = cur.expect_kind(TokenKind.IDENT, "member name").text
        if cur.at("("):
            params = _parse_params(cur)
            body = _parse_block(cur)
            methods.append(ast.MethodDecl(member_loc, type_ref, member_name, params, body))
        else:
            size: Optional[object] = None
            if cur.at("["):
                cur.advance()
                if cur.at_kind(TokenKind.INT):
                    size = int(cur.advance().text)
                else:
                    size = cur.expect_kind(TokenKind.IDENT, "array capacity").text
                cur.expect("]")
            cur.expect(";")
            fields.append(ast.FieldDecl(member_loc, type_ref, member_name, size))
    cur.expect("}")
    if cur.at(";"):
        cur.advance()
    return ast.ClassDecl(loc, name, type_param, fields, methods)


def _parse_function(cur: _Cursor) -> ast.FuncDecl:
    loc = cur.loc()
    ret = _parse_type(cur)
    name = cur.expect_kind(TokenKind.IDENT, "function name").text
    params = _parse_params(cur)
    body = _parse_block(cur)
    return ast.FuncDecl(loc, ret, name, params, body)


def _parse_params(cur: _Cursor) -> list[ast.Param]:
    cur.expect("(")
    params: list[ast.Param] = []
    if not cur.at(")"):
        while True:
            ploc = cur.loc()
            type_ref = _parse_type(cur)
            pname = cur.expect_kind(TokenKind.IDENT, "parameter name").text
            params.append(ast.Param(ploc, type_ref, pname))
            if cur.at(","):
                cur.advance()
                continue
            break
    cur.expect(")")
    return params


def _parse_type(cur: _Cursor) -> ast.TypeRef:
    loc = cur.loc()
    tok = cur.peek()
    if tok is None:
        raise ParseError(cur.loc(), "a type", "end-of-input")
    if tok.text in _TYPE_KEYWORDS:
        cur.advance()
        return ast.TypeRef(loc, tok.text)
    if tok.kind != TokenKind.IDENT:
        raise ParseError(tok.loc, "a type", cur.found())
    cur.advance()
    arg = None
    if cur.at("<"):
        cur.advance()
        arg = _parse_type(cur)
        cur.expect(">")
    return ast.TypeRef(loc, tok.text, arg)


def _parse_block(cur: _Cursor) -> ast.Block:
    loc = cur.loc()
    cur.expect("{")
    stmts: list[ast.Stmt] = []
    while not cur.at("}"):
        stmts.append(_parse_statement(cur))
    cur.expect("}")
    return ast.Block(loc, stmts)


def _starts_var_decl(cur: _Cursor) -> bool:
    tok = cur.peek()
    if tok is None:
        return False
    if tok.text in _TYPE_KEYWORDS:
        return True
    if tok.kind != TokenKind.IDENT:
        return False
    # `Name name` or `Name<type> name`: declaration; anything else: expression.
    if cur.at_kind(TokenKind.IDENT, 1):
        return True
    if cur.at("<", 1):
        nxt = cur.peek(2)
        if nxt is not None and (nxt.kind == TokenKind.IDENT or nxt.text in _TYPE_KEYWORDS):
            return cur.at(">", 3) and cur.at_kind(TokenKind.IDENT, 4)
    return False


def _parse_statement(cur: _Cursor) -> ast.Stmt:
    loc = cur.loc()
    if cur.at("{"):
        return _parse_block(cur)
    if cur.at("if"):
        cur.advance()
        cur.expect("(")
        cond = _parse_expr(cur)
        cur.expect(")")
        then_body = _as_block(_parse_statement(cur))
        else_body = None
        if cur.at("else"):
            cur.advance()
            else_body = _as_block(_parse_statement(cur))
        return ast.IfStmt(loc, cond, then_body, else_body)
    if cur.at("while"):
        cur.advance()
        cur.expect("(")
        cond = _parse_expr(cur)
        cur.expect(")")
        return ast.WhileStmt(loc, cond, _as_block(_parse_statement(cur)))
    if cur.at("for"):
        cur.advance()
        cur.expect("(")
        init = None if cur.at(";") else _parse_simple_statement(cur, consume_semi=False)
        cur.expect(";")
        cond = None if cur.at(";") else _parse_expr(cur)
        cur.expect(";")
        step = None if cur.at(")") else _parse_simple_statement(cur, consume_semi=False)
        cur.expect(")")
        return ast.ForStmt(loc, init, cond, step, _as_block(_parse_statement(cur)))
    if cur.at("return"):
        cur.advance()
        value = None if cur.at(";") else _parse_expr(cur)
        cur.expect(";")
        return ast.ReturnStmt(loc, value)
    if cur.at("assert"):
        cur.advance()
        cur.expect("(")
        cond = _parse_expr(cur)
        cur.expect(")")
        cur.expect(";")
        return ast.AssertStmt(loc, cond, ast.expr_to_source(cond))
    if cur.at("__VERIFIER_assert"):
        cur.advance()
        cur.expect("(")
        cond = _parse_expr(cur)
        cur.expect(",")
        msg_tok = cur.expect_kind(TokenKind.STRING, "assertion message string")
        cur.expect(")")
        cur.expect(";")
        return ast.VerifierAssertStmt(loc, cond, decode_string(msg_tok.text))
    stmt = _parse_simple_statement(cur, consume_semi=True)
    return stmt


def _as_block(stmt: ast.Stmt) -> ast.Block:
    if isinstance(stmt, ast.Block):
        return stmt
    return ast.Block(stmt.loc, [stmt])


def _parse_simple_statement(cur: _Cursor, consume_semi: bool) -> ast.Stmt:
    """Declaration, assignment, increment/decrement, or expression statement."""
    loc = cur.loc()
    if _starts_var_decl(cur):
        type_ref = _parse_type(cur)
        name = cur.expect_kind(TokenKind.IDENT, "variable name").text
        init = None
        if cur.at("="):
            cur.advance()
            init = _parse_expr(cur)
        if consume_semi:
            cur.expect(";")
        return ast.VarDeclStmt(loc, type_ref, name, init)
    expr = _parse_expr(cur)
    if cur.at("="):
        _require_lvalue(expr)
        cur.advance()
        value = _parse_expr(cur)
        if consume_semi:
            cur.expect(";")
        return ast.AssignStmt(loc, expr, value)
    if cur.at("++") or cur.at("--"):
        op = "+" if cur.advance().text == "++" else "-"
        _require_lvalue(expr)
        if consume_semi:
            cur.expect(";")
        one = ast.IntLit(loc, 1)
        return ast.AssignStmt(loc, expr, ast.BinOp(loc, op, expr, one))
    if consume_semi:
        cur.expect(";")
    return ast.ExprStmt(loc, expr)


def _require_lvalue(expr: ast.Expr) -> None:
    if isinstance(expr, (ast.VarRef, ast.FieldAccess, ast.IndexExpr)):
        return
    raise ParseError(expr.loc, "an assignable expression", type(expr).__name__)


# --- expressions, precedence climbing --------------------------------------


def _parse_expr(cur: _Cursor) -> ast.Expr:
    return _parse_or(cur)


def _parse_or(cur: _Cursor) -> ast.Expr:
    lhs = _parse_and(cur)
    while cur.at("||"):
        loc = cur.advance().loc
        lhs = ast.BinOp(loc, "||", lhs, _parse_and(cur))
    return lhs


def _parse_and(cur: _Cursor) -> ast.Expr:
    lhs = _parse_cmp(cur)
    while cur.at("&&"):
        loc = cur.advance().loc
        lhs = ast.BinOp(loc, "&&", lhs, _parse_cmp(cur))
    return lhs


def _parse_cmp(cur: _Cursor) -> ast.Expr:
    lhs = _parse_add(cur)
    while any(cur.at(op) for op in _CMP_OPS):
        tok = cur.advance()
        lhs = ast.BinOp(tok.loc, tok.text, lhs, _parse_add(cur))
    return lhs


def _parse_add(cur: _Cursor) -> ast.Expr:
    lhs = _parse_mul(cur)
    while cur.at("+") or cur.at("-"):
        tok = cur.advance()
        lhs = ast.BinOp(tok.loc, tok.text, lhs, _parse_mul(cur))
    return lhs


def _parse_mul(cur: _Cursor) -> ast.Expr:
    lhs = _parse_unary(cur)
    while cur.at("*") or cur.at("/") or cur.at("%"):
        tok = cur.advance()
        lhs = ast.BinOp(tok.loc, tok.text, lhs, _parse_unary(cur))
    return lhs


def _parse_unary(cur: _Cursor) -> ast.Expr:
    if cur.at("!"):
        loc = cur.advance().loc
        return ast.UnaryOp(loc, "!", _parse_unary(cur))
    if cur.at("-"):
        loc = cur.advance().loc
        operand = _parse_unary(cur)
        if isinstance(operand, ast.IntLit):
            return ast.IntLit(loc, -operand.value)  # literal minus folds here
        return ast.UnaryOp(loc, "-", operand)
    return _parse_postfix(cur)


def _parse_postfix(cur: _Cursor) -> ast.Expr:
    expr = _parse_primary(cur)
    while True:
        if cur.at(".") or cur.at("->"):
            cur.advance()
            name_tok = cur.expect_kind(TokenKind.IDENT, "member name")
            if cur.at("("):
                args = _parse_args(cur)
                expr = ast.Call(name_tok.loc, expr, name_tok.text, args)
            else:
                expr = ast.FieldAccess(name_tok.loc, expr, name_tok.text)
            continue
        if cur.at("["):
            loc = cur.advance().loc
            index = _parse_expr(cur)
            cur.expect("]")
            expr = ast.IndexExpr(loc, expr, index)
            continue
        return expr


def _parse_args(cur: _Cursor) -> list[ast.Expr]:
    cur.expect("(")
    args: list[ast.Expr] = []
    if not cur.at(")"):
        while True:
            args.append(_parse_expr(cur))
            if cur.at(","):
                cur.advance()
                continue
            break
    cur.expect(")")
    return args


def _parse_primary(cur: _Cursor) -> ast.Expr:
    tok = cur.peek()
    if tok is None:
        raise ParseError(cur.loc(), "expression", "end-of-input")
    if tok.kind == TokenKind.INT:
        cur.advance()
        return ast.IntLit(tok.loc, int(tok.text))
    if tok.kind == TokenKind.STRING:
        cur.advance()
        return ast.StringLit(tok.loc, decode_string(tok.text))
    if tok.text == "true" or tok.text == "false":
        cur.advance()
        return ast.BoolLit(tok.loc, tok.text == "true")
    if tok.text == "this":
        cur.advance()
        return ast.ThisRef(tok.loc)
    if tok.text == "(":
        cur.advance()
        expr = _parse_expr(cur)
        cur.expect(")")
        return expr
    if tok.kind == TokenKind.IDENT:
        cur.advance()
        if cur.at("("):
            args = _parse_args(cur)
            return ast.Call(tok.loc, None, tok.text, args)
        return ast.VarRef(tok.loc, tok.text)
    raise ParseError(tok.loc, "expression", cur.found())

"""Independent AST-level reference evaluator used as a lowering oracle.

Deliberately does not share arithmetic helpers with the package: the
two's-complement wrap and truncating division are reimplemented here so
a bug in the production semantics cannot hide in both executors at once.
Covers the scalar subset the random program generator emits (no classes,
no helper functions).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from miniqt_bmc import ast_nodes as ast


def _wrap(value: int, width: int) -> int:
    mask = (1 << width) - 1
    value &= mask
    if value >= 1 << (width - 1):
        value -= 1 << width
    return value


def _div(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        return 0, a
    quotient = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        quotient = -quotient
    return quotient, a - quotient * b


@dataclass
class RefOutcome:
    verdict: str  # "completed" | "assertion-violated"
    message: Optional[str] = None
    store: dict[str, int] = field(default_factory=dict)


class _Violation(Exception):
    def __init__(self, message: str):
        self.message = message


class _Returned(Exception):
    pass


class RefEvaluator:
    def __init__(self, program: ast.Program, nondet_values, width: int,
                 max_steps: int = 100_000):
        self.program = program
        self.nondet = list(nondet_values)
        self.pos = 0
        self.width = width
        self.env: dict[str, int] = {}
        self.budget = max_steps

    def run(self) -> RefOutcome:
        main = next(f for f in self.program.functions if f.name == "main")
        try:
            self._block(main.body)
        except _Violation as v:
            return RefOutcome("assertion-violated", v.message, dict(self.env))
        except _Returned:
            pass
        return RefOutcome("completed", None, dict(self.env))

    def _tick(self) -> None:
        self.budget -= 1
        if self.budget <= 0:
            raise RuntimeError("reference evaluator step budget exhausted")

    def _block(self, block: ast.Block) -> None:
        for stmt in block.stmts:
            self._stmt(stmt)

    def _stmt(self, stmt: ast.Stmt) -> None:
        self._tick()
        if isinstance(stmt, ast.Block):
            self._block(stmt)
        elif isinstance(stmt, ast.VarDeclStmt):
            self.env[stmt.name] = self._expr(stmt.init) if stmt.init else 0
        elif isinstance(stmt, ast.AssignStmt):
            assert isinstance(stmt.target, ast.VarRef)
            self.env[stmt.target.name] = self._expr(stmt.value)
        elif isinstance(stmt, ast.IfStmt):
            if self._expr(stmt.cond):
                self._block(stmt.then_body)
            elif stmt.else_body is not None:
                self._block(stmt.else_body)
        elif isinstance(stmt, ast.WhileStmt):
            while self._expr(stmt.cond):
                self._tick()
                self._block(stmt.body)
        elif isinstance(stmt, ast.ForStmt):
            if stmt.init is not None:
                self._stmt(stmt.init)
            while stmt.cond is None or self._expr(stmt.cond):
                self._tick()
                self._block(stmt.body)
                if stmt.step is not None:
                    self._stmt(stmt.step)
        elif isinstance(stmt, ast.AssertStmt):
            if not self._expr(stmt.cond):
                raise _Violation(f"assertion {stmt.text}")
        elif isinstance(stmt, ast.ReturnStmt):
            raise _Returned()
        elif isinstance(stmt, ast.ExprStmt):
            self._expr(stmt.expr)
        else:
            raise AssertionError(f"reference evaluator: unhandled {stmt!r}")

    def _expr(self, e: ast.Expr) -> int:
        if isinstance(e, ast.IntLit):
            return _wrap(e.value, self.width)
        if isinstance(e, ast.BoolLit):
            return 1 if e.value else 0
        if isinstance(e, ast.VarRef):
            return self.env[e.name]
        if isinstance(e, ast.Call) and e.name == "nondet_int":
            value = _wrap(self.nondet[self.pos], self.width)
            self.pos += 1
            return value
        if isinstance(e, ast.UnaryOp):
            v = self._expr(e.operand)
            return (0 if v else 1) if e.op == "!" else _wrap(-v, self.width)
        if isinstance(e, ast.BinOp):
            a = self._expr(e.lhs)
            b = self._expr(e.rhs)
            op = e.op
            if op == "+":
                return _wrap(a + b, self.width)
            if op == "-":
                return _wrap(a - b, self.width)
            if op == "*":
                return _wrap(a * b, self.width)
            if op == "/":
                return _wrap(_div(a, b)[0], self.width)
            if op == "%":
                return _wrap(_div(a, b)[1], self.width)
            if op == "<":
                return int(a < b)
            if op == "<=":
                return int(a <= b)
            if op == ">":
                return int(a > b)
            if op == ">=":
                return int(a >= b)
            if op == "==":
                return int(a == b)
            if op == "!=":
                return int(a != b)
            if op == "&&":
                return int(bool(a) and bool(b))
            if op == "||":
                return int(bool(a) or bool(b))
        raise AssertionError(f"reference evaluator: unhandled {e!r}")

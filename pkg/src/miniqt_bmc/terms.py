"""Bit-vector term DAG with hash-consing and constant folding.

All construction goes through a TermBuilder, which interns structurally
identical nodes so term equality is object identity and shared subterms
are blasted once.  The folding rules mirror the concrete interpreter's
two's-complement semantics exactly; straight-line programs with constant
inputs typically fold to constants before any SAT work happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import SortError


@dataclass(frozen=True)
class BoolSort:
    def __str__(self) -> str:
        return "Bool"


@dataclass(frozen=True)
class BvSort:
    width: int

    def __str__(self) -> str:
        return f"(_ BitVec {self.width})"


BOOL_SORT = BoolSort()


@dataclass(frozen=True)
class VarId:
    """A versioned SSA variable name, the payload of Var terms."""

    name: str
    version: int

    def __str__(self) -> str:
        return f"{self.name}#{self.version}"


class Term:
    """One interned DAG node; compare with `is`, never structurally."""

    __slots__ = ("kind", "sort", "args", "payload")

    def __init__(self, kind: str, sort, args: tuple, payload):
        self.kind = kind
        self.sort = sort
        self.args = args
        self.payload = payload

    @property
    def width(self) -> int:
        return self.sort.width

    def __repr__(self) -> str:
        return f"<{to_str(self)}>"


def to_unsigned(value: int, width: int) -> int:
    return value & ((1 << width) - 1)


def to_signed(value: int, width: int) -> int:
    value &= (1 << width) - 1
    half = 1 << (width - 1)
    return value - (1 << width) if value >= half else value


class TermBuilder:
    """Factory and intern table for terms."""

    def __init__(self):
        self._intern: dict = {}
        self.true_ = self._node("bool", BOOL_SORT, (), True)
        self.false_ = self._node("bool", BOOL_SORT, (), False)

    def _node(self, kind: str, sort, args: tuple, payload=None) -> Term:
        key = (kind, sort, tuple(id(a) for a in args), payload)
        hit = self._intern.get(key)
        if hit is None:
            hit = Term(kind, sort, args, payload)
            self._intern[key] = hit
        return hit

    # -- leaves ---------------------------------------------------------

    def bool_const(self, value: bool) -> Term:
        return self.true_ if value else self.false_

    def bv_const(self, width: int, value: int) -> Term:
        return self._node("bv", BvSort(width), (), to_unsigned(value, width))

    def var(self, name: str, version: int, sort) -> Term:
        return self._node("var", sort, (), VarId(name, version))

    # -- boolean --------------------------------------------------------

    def _need_bool(self, *terms: Term) -> None:
        for t in terms:
            if t.sort is not BOOL_SORT and not isinstance(t.sort, BoolSort):
                raise SortError(f"expected Bool operand, got {t.sort}")

    def not_(self, a: Term) -> Term:
        self._need_bool(a)
        if a.kind == "bool":
            return self.bool_const(not a.payload)
        if a.kind == "not":
            return a.args[0]
        return self._node("not", BOOL_SORT, (a,))

    def and_(self, a: Term, b: Term) -> Term:
        self._need_bool(a, b)
        if a.kind == "bool":
            return b if a.payload else self.false_
        if b.kind == "bool":
            return a if b.payload else self.false_
        if a is b:
            return a
        if (a.kind == "not" and a.args[0] is b) or (b.kind == "not" and b.args[0] is a):
            return self.false_
        return self._node("and", BOOL_SORT, (a, b))

    def or_(self, a: Term, b: Term) -> Term:
        self._need_bool(a, b)
        if a.kind == "bool":
            return self.true_ if a.payload else b
        if b.kind == "bool":
            return self.true_ if b.payload else a
        if a is b:
            return a
        if (a.kind == "not" and a.args[0] is b) or (b.kind == "not" and b.args[0] is a):
            return self.true_
        return self._node("or", BOOL_SORT, (a, b))

    def implies(self, a: Term, b: Term) -> Term:
        self._need_bool(a, b)
        if a.kind == "bool":
            return b if a.payload else self.true_
        if b.kind == "bool":
            return self.true_ if b.payload else self.not_(a)
        if a is b:
            return self.true_
        return self._node("implies", BOOL_SORT, (a, b))

    def conj(self, terms) -> Term:
        out = self.true_
        for t in terms:
            out = self.and_(out, t)
        return out

    # -- polymorphic ------------------------------------------------------

    def eq(self, a: Term, b: Term) -> Term:
        if a.sort != b.sort:
            raise SortError(f"cannot equate {a.sort} with {b.sort}")
        if a is b:
            return self.true_
        if a.kind == "bool" or b.kind == "bool":
            if a.kind == "bool":
                a, b = b, a
            if b.kind == "bool":  # both constant case folded by `a is b` above
                return a if b.payload else self.not_(a)
        if a.kind == "bv" and b.kind == "bv":
            return self.bool_const(a.payload == b.payload)
        return self._node("eq", BOOL_SORT, (a, b))

    def ite(self, cond: Term, then: Term, orelse: Term) -> Term:
        self._need_bool(cond)
        if then.sort != orelse.sort:
            raise SortError(f"ite arms differ: {then.sort} vs {orelse.sort}")
        if cond.kind == "bool":
            return then if cond.payload else orelse
        if then is orelse:
            return then
        if then.sort is BOOL_SORT or isinstance(then.sort, BoolSort):
            if then.kind == "bool" and orelse.kind == "bool":
                return cond if then.payload else self.not_(cond)
        return self._node("ite", then.sort, (cond, then, orelse))

    # -- bit-vector arithmetic --------------------------------------------

    def _need_bv(self, a: Term, b: Optional[Term] = None) -> int:
        if not isinstance(a.sort, BvSort):
            raise SortError(f"expected bit-vector operand, got {a.sort}")
        if b is not None:
            if not isinstance(b.sort, BvSort):
                raise SortError(f"expected bit-vector operand, got {b.sort}")
            if a.sort.width != b.sort.width:
                raise SortError(
                    f"width mismatch: {a.sort.width} vs {b.sort.width}"
                )
        return a.sort.width

    def bv_add(self, a: Term, b: Term) -> Term:
        w = self._need_bv(a, b)
        if a.kind == "bv" and b.kind == "bv":
            return self.bv_const(w, a.payload + b.payload)
        if a.kind == "bv" and a.payload == 0:
            return b
        if b.kind == "bv" and b.payload == 0:
            return a
        return self._node("bvadd", a.sort, (a, b))

    def bv_sub(self, a: Term, b: Term) -> Term:
        w = self._need_bv(a, b)
        if a.kind == "bv" and b.kind == "bv":
            return self.bv_const(w, a.payload - b.payload)
        if b.kind == "bv" and b.payload == 0:
            return a
        if a is b:
            return self.bv_const(w, 0)
        return self._node("bvsub", a.sort, (a, b))

    def bv_neg(self, a: Term) -> Term:
        w = self._need_bv(a)
        if a.kind == "bv":
            return self.bv_const(w, -a.payload)
        if a.kind == "bvneg":
            return a.args[0]
        return self._node("bvneg", a.sort, (a,))

    def bv_mul(self, a: Term, b: Term) -> Term:
        w = self._need_bv(a, b)
        if a.kind == "bv" and b.kind == "bv":
            return self.bv_const(w, a.payload * b.payload)
        for x, y in ((a, b), (b, a)):
            if x.kind == "bv":
                if x.payload == 0:
                    return self.bv_const(w, 0)
                if x.payload == 1:
                    return y
        return self._node("bvmul", a.sort, (a, b))

    def bv_slt(self, a: Term, b: Term) -> Term:
        w = self._need_bv(a, b)
        if a.kind == "bv" and b.kind == "bv":
            return self.bool_const(to_signed(a.payload, w) < to_signed(b.payload, w))
        if a is b:
            return self.false_
        return self._node("bvslt", BOOL_SORT, (a, b))

    def bv_sle(self, a: Term, b: Term) -> Term:
        w = self._need_bv(a, b)
        if a.kind == "bv" and b.kind == "bv":
            return self.bool_const(to_signed(a.payload, w) <= to_signed(b.payload, w))
        if a is b:
            return self.true_
        return self._node("bvsle", BOOL_SORT, (a, b))

    def bv_ult(self, a: Term, b: Term) -> Term:
        """Unsigned compare, built from the signed one by flipping sign bits."""
        w = self._need_bv(a, b)
        msb = self.bv_const(w, 1 << (w - 1))
        return self.bv_slt(self.bv_add(a, msb), self.bv_add(b, msb))


def evaluate(term: Term, env: dict[VarId, int], default: int = 0):
    """Evaluate a term bottom-up under `env` (unsigned bv values, Python bools).

    Missing variables default to `default`; that only matters for values the
    solver left unconstrained, which by construction never influence claims.
    """
    memo: dict[int, object] = {}
    stack = [term]
    while stack:
        t = stack[-1]
        if id(t) in memo:
            stack.pop()
            continue
        pending = [a for a in t.args if id(a) not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        memo[id(t)] = _eval_node(t, [memo[id(a)] for a in t.args], env, default)
    return memo[id(term)]


def _eval_node(t: Term, args: list, env, default):
    kind = t.kind
    if kind == "bool":
        return t.payload
    if kind == "bv":
        return t.payload
    if kind == "var":
        value = env.get(t.payload, default)
        if isinstance(t.sort, BvSort):
            return to_unsigned(int(value), t.sort.width)
        return bool(value)
    if kind == "not":
        return not args[0]
    if kind == "and":
        return args[0] and args[1]
    if kind == "or":
        return args[0] or args[1]
    if kind == "implies":
        return (not args[0]) or args[1]
    if kind == "eq":
        return args[0] == args[1]
    if kind == "ite":
        return args[1] if args[0] else args[2]
    w = t.args[0].sort.width
    if kind == "bvadd":
        return to_unsigned(args[0] + args[1], w)
    if kind == "bvsub":
        return to_unsigned(args[0] - args[1], w)
    if kind == "bvneg":
        return to_unsigned(-args[0], w)
    if kind == "bvmul":
        return to_unsigned(args[0] * args[1], w)
    if kind == "bvslt":
        return to_signed(args[0], w) < to_signed(args[1], w)
    if kind == "bvsle":
        return to_signed(args[0], w) <= to_signed(args[1], w)
    raise AssertionError(f"unhandled term kind {kind}")


def iter_dag(term: Term):
    """Yield each reachable node once, children before parents."""
    seen: set[int] = set()
    order: list[Term] = []
    stack = [term]
    while stack:
        t = stack[-1]
        if id(t) in seen:
            stack.pop()
            continue
        pending = [a for a in t.args if id(a) not in seen]
        if pending:
            stack.extend(pending)
            continue
        seen.add(id(t))
        order.append(t)
        stack.pop()
    return order


_INFIX = {
    "and": "&&", "or": "||", "implies": "=>", "eq": "==",
    "bvadd": "+", "bvsub": "-", "bvmul": "*", "bvslt": "<s", "bvsle": "<=s",
}


def to_str(term: Term) -> str:
    """Readable rendering; shared nodes print expanded (debug/SSA dump use)."""
    memo: dict[int, str] = {}
    for t in iter_dag(term):
        if t.kind == "bool":
            memo[id(t)] = "true" if t.payload else "false"
        elif t.kind == "bv":
            memo[id(t)] = str(to_signed(t.payload, t.sort.width))
        elif t.kind == "var":
            memo[id(t)] = str(t.payload)
        elif t.kind == "not":
            memo[id(t)] = f"!{memo[id(t.args[0])]}"
        elif t.kind == "ite":
            c, a, b = (memo[id(x)] for x in t.args)
            memo[id(t)] = f"ite({c}, {a}, {b})"
        elif t.kind == "bvneg":
            memo[id(t)] = f"-({memo[id(t.args[0])]})"
        else:
            a, b = (memo[id(x)] for x in t.args)
            memo[id(t)] = f"({a} {_INFIX[t.kind]} {b})"
    return memo[id(term)]

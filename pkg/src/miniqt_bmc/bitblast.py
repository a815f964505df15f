"""Tseitin bit-blasting of bit-vector terms to CNF.

Literal convention: CNF variable 1 is pinned true by a unit clause, so
the constant literals are 1 (true) and -1 (false) and gate encoders can
fold constants without special cases downstream.  Arithmetic uses
ripple-carry adders, shift-and-add multiplication, and an LSB-to-MSB
comparator chain; signed comparisons flip the sign bits and reuse the
unsigned chain.  Gates are cached, so the shared term DAG stays shared
in the clause database.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SortError
from .terms import BvSort, Term, VarId

TRUE_LIT = 1
FALSE_LIT = -1


@dataclass
class Cnf:
    num_vars: int
    clauses: list[list[int]]
    var_map: dict[tuple[VarId, int], int] = field(default_factory=dict)

    def check_model(self, model: dict[int, bool]) -> bool:
        """True iff every clause is satisfied under a total model."""
        return all(
            any(model[abs(lit)] == (lit > 0) for lit in clause)
            for clause in self.clauses
        )


class _Blaster:
    def __init__(self):
        self.num_vars = 1
        self.clauses: list[list[int]] = [[TRUE_LIT]]
        self.var_map: dict[tuple[VarId, int], int] = {}
        self._and_cache: dict[tuple[int, int], int] = {}
        self._xor_cache: dict[tuple[int, int], int] = {}
        self._ite_cache: dict[tuple[int, int, int], int] = {}

    def fresh(self) -> int:
        self.num_vars += 1
        return self.num_vars

    # -- gates ------------------------------------------------------------

    def enc_and(self, a: int, b: int) -> int:
        if a == TRUE_LIT:
            return b
        if b == TRUE_LIT:
            return a
        if a == FALSE_LIT or b == FALSE_LIT:
            return FALSE_LIT
        if a == b:
            return a
        if a == -b:
            return FALSE_LIT
        key = (a, b) if a < b else (b, a)
        hit = self._and_cache.get(key)
        if hit is not None:
            return hit
        t = self.fresh()
        self.clauses.append([-t, a])
        self.clauses.append([-t, b])
        self.clauses.append([t, -a, -b])
        self._and_cache[key] = t
        return t

    def enc_or(self, a: int, b: int) -> int:
        return -self.enc_and(-a, -b)

    def enc_xor(self, a: int, b: int) -> int:
        negate = False
        if a < 0:
            a, negate = -a, not negate
        if b < 0:
            b, negate = -b, not negate
        if a == TRUE_LIT:
            result = -b
        elif b == TRUE_LIT:
            result = -a
        elif a == b:
            result = FALSE_LIT
        else:
            key = (a, b) if a < b else (b, a)
            hit = self._xor_cache.get(key)
            if hit is None:
                t = self.fresh()
                self.clauses.append([-t, a, b])
                self.clauses.append([-t, -a, -b])
                self.clauses.append([t, a, -b])
                self.clauses.append([t, -a, b])
                self._xor_cache[key] = t
                hit = t
            result = hit
        return -result if negate else result

    def enc_ite(self, c: int, a: int, b: int) -> int:
        if c == TRUE_LIT:
            return a
        if c == FALSE_LIT:
            return b
        if a == b:
            return a
        if a == -b:
            return -self.enc_xor(c, a)
        if a == TRUE_LIT:
            return self.enc_or(c, b)
        if a == FALSE_LIT:
            return self.enc_and(-c, b)
        if b == TRUE_LIT:
            return self.enc_or(-c, a)
        if b == FALSE_LIT:
            return self.enc_and(c, a)
        key = (c, a, b)
        hit = self._ite_cache.get(key)
        if hit is not None:
            return hit
        t = self.fresh()
        self.clauses.append([-t, -c, a])
        self.clauses.append([-t, c, b])
        self.clauses.append([t, -c, -a])
        self.clauses.append([t, c, -b])
        self._ite_cache[key] = t
        return t

    # -- word-level circuits -------------------------------------------------

    def add(self, a: list[int], b: list[int], carry: int = FALSE_LIT) -> list[int]:
        out = []
        for x, y in zip(a, b):
            half = self.enc_xor(x, y)
            out.append(self.enc_xor(half, carry))
            carry = self.enc_or(self.enc_and(x, y), self.enc_and(carry, half))
        return out

    def sub(self, a: list[int], b: list[int]) -> list[int]:
        return self.add(a, [-x for x in b], carry=TRUE_LIT)

    def neg(self, a: list[int]) -> list[int]:
        zero = [FALSE_LIT] * len(a)
        return self.sub(zero, a)

    def mul(self, a: list[int], b: list[int]) -> list[int]:
        w = len(a)
        acc = [FALSE_LIT] * w
        for i, bit in enumerate(b):
            if bit == FALSE_LIT:
                continue
            partial = [FALSE_LIT] * i + [self.enc_and(a[j], bit) for j in range(w - i)]
            acc = self.add(acc, partial)
        return acc

    def eq(self, a: list[int], b: list[int]) -> int:
        acc = TRUE_LIT
        for x, y in zip(a, b):
            acc = self.enc_and(acc, -self.enc_xor(x, y))
        return acc

    def ult(self, a: list[int], b: list[int]) -> int:
        lt = FALSE_LIT
        for x, y in zip(a, b):  # LSB first; higher bits override
            lt = self.enc_ite(self.enc_xor(x, y), self.enc_and(-x, y), lt)
        return lt

    def slt(self, a: list[int], b: list[int]) -> int:
        a2 = a[:-1] + [-a[-1]]
        b2 = b[:-1] + [-b[-1]]
        return self.ult(a2, b2)

    # -- term walk ------------------------------------------------------------

    def blast(self, root: Term):
        memo: dict[int, object] = {}
        stack = [root]
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
            memo[id(t)] = self._blast_node(t, [memo[id(a)] for a in t.args])
        return memo[id(root)]

    def assert_root(self, root: Term, memo: dict[int, object]) -> None:
        """Assert a Boolean term, peeling the top-level conjunction apart.

        Conjuncts of the shape `var = rhs` whose variable is still unbound
        become definitions: the variable's bits are simply the rhs bits.  SSA
        order guarantees rhs only mentions earlier variables, so each
        definition folds at the bit level instead of costing CNF variables
        and equality clauses.  Everything else is asserted as a unit clause.
        """
        ordered: list[Term] = []
        stack = [root]
        while stack:
            t = stack.pop()
            if t.kind == "and":
                stack.append(t.args[1])  # right pushed first, left pops first
                stack.append(t.args[0])
                continue
            ordered.append(t)
        for conjunct in ordered:
            if conjunct.kind == "eq":
                lhs, rhs = conjunct.args
                if lhs.kind == "var" and id(lhs) not in memo:
                    memo[id(lhs)] = self._blast_with(rhs, memo)
                    continue
                if rhs.kind == "var" and id(rhs) not in memo:
                    memo[id(rhs)] = self._blast_with(lhs, memo)
                    continue
            lit = self._blast_with(conjunct, memo)
            self.clauses.append([lit])

    def _blast_with(self, root: Term, memo: dict[int, object]):
        stack = [root]
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
            memo[id(t)] = self._blast_node(t, [memo[id(a)] for a in t.args])
        return memo[id(root)]

    def _blast_node(self, t: Term, args: list):
        kind = t.kind
        if kind == "bool":
            return TRUE_LIT if t.payload else FALSE_LIT
        if kind == "bv":
            return [TRUE_LIT if (t.payload >> i) & 1 else FALSE_LIT
                    for i in range(t.sort.width)]
        if kind == "var":
            if isinstance(t.sort, BvSort):
                bits = []
                for i in range(t.sort.width):
                    v = self.fresh()
                    self.var_map[(t.payload, i)] = v
                    bits.append(v)
                return bits
            v = self.fresh()
            self.var_map[(t.payload, 0)] = v
            return v
        if kind == "not":
            return -args[0]
        if kind == "and":
            return self.enc_and(args[0], args[1])
        if kind == "or":
            return self.enc_or(args[0], args[1])
        if kind == "implies":
            return self.enc_or(-args[0], args[1])
        if kind == "eq":
            if isinstance(t.args[0].sort, BvSort):
                return self.eq(args[0], args[1])
            return -self.enc_xor(args[0], args[1])
        if kind == "ite":
            if isinstance(t.sort, BvSort):
                c = args[0]
                return [self.enc_ite(c, x, y) for x, y in zip(args[1], args[2])]
            return self.enc_ite(args[0], args[1], args[2])
        if kind == "bvadd":
            return self.add(args[0], args[1])
        if kind == "bvsub":
            return self.sub(args[0], args[1])
        if kind == "bvneg":
            return self.neg(args[0])
        if kind == "bvmul":
            return self.mul(args[0], args[1])
        if kind == "bvslt":
            return self.slt(args[0], args[1])
        if kind == "bvsle":
            return -self.slt(args[1], args[0])
        raise AssertionError(f"unhandled term kind {kind}")


def bitblast(term: Term) -> Cnf:
    """Produce a CNF equisatisfiable with the Boolean-sorted `term`."""
    if isinstance(term.sort, BvSort):
        raise SortError("only Boolean-sorted terms can be bit-blasted")
    blaster = _Blaster()
    blaster.assert_root(term, {})
    return Cnf(blaster.num_vars, blaster.clauses, blaster.var_map)

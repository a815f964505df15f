"""A small deterministic CDCL SAT solver.

Two watched literals per clause, first-UIP conflict clause learning,
no restarts, no clause deletion.  Decisions pick the lowest-index
unassigned variable and try false first, so identical inputs always
produce identical models, which keeps verification reports reproducible.
Scales comfortably to the corpus sizes this checker produces (about 1e5
clauses); it is not meant to compete with industrial solvers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .bitblast import Cnf
from .errors import MiniQtError


class ResourceLimit(MiniQtError):
    def __init__(self, kind: str):
        super().__init__(f"solver hit the {kind} limit")
        self.kind = kind  # "timeout" | "memout"


@dataclass
class SolveStats:
    decisions: int = 0
    conflicts: int = 0
    propagations: int = 0


@dataclass
class SolveResult:
    status: str  # "sat" | "unsat"
    model: Optional[dict[int, bool]]
    stats: SolveStats

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"


def _current_rss_kb() -> int:
    try:
        with open("/proc/self/statm") as fh:
            pages = int(fh.read().split()[1])
        return pages * 4  # 4 KiB pages
    except (OSError, ValueError, IndexError):
        return 0


class _Solver:
    def __init__(self, cnf: Cnf, deadline: Optional[float], mem_limit_kb: Optional[int]):
        self.nv = cnf.num_vars
        self.deadline = deadline
        self.mem_limit_kb = mem_limit_kb
        self.stats = SolveStats()
        self.clauses: list[list[int]] = []
        self.assign = [0] * (self.nv + 1)  # 0 unassigned, +1 true, -1 false
        self.level = [0] * (self.nv + 1)
        self.reason = [-1] * (self.nv + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.next_var = 1
        self.watches: list[list[int]] = [[] for _ in range(2 * self.nv + 1)]
        self.ok = True
        for clause in cnf.clauses:
            self._add_clause(clause)

    # -- literal helpers -----------------------------------------------------

    def _value(self, lit: int) -> int:
        v = self.assign[lit if lit > 0 else -lit]
        return v if lit > 0 else -v

    def _widx(self, lit: int) -> int:
        return lit + self.nv

    # -- clause setup ----------------------------------------------------------

    def _add_clause(self, lits: list[int]) -> None:
        # Tautologies and duplicate literals are harmless to the watch
        # scheme, so clauses are taken as-is; only units need care.
        if not self.ok:
            return
        if not lits:
            self.ok = False
            return
        if len(lits) == 1:
            lit = lits[0]
            val = self._value(lit)
            if val == -1:
                self.ok = False
            elif val == 0:
                self._enqueue(lit, -1)
            return
        ci = len(self.clauses)
        clause = list(lits)
        self.clauses.append(clause)
        nv = self.nv
        self.watches[clause[0] + nv].append(ci)
        self.watches[clause[1] + nv].append(ci)

    # -- core -------------------------------------------------------------------

    def _enqueue(self, lit: int, reason_ci: int) -> None:
        var = lit if lit > 0 else -lit
        self.assign[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason_ci
        self.trail.append(lit)

    def _propagate(self) -> int:
        """Unit propagation; returns a conflicting clause index or -1."""
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            self.stats.propagations += 1
            if self.stats.propagations % 4096 == 0:
                self._check_limits()
            false_lit = -p
            ws = self.watches[self._widx(false_lit)]
            kept: list[int] = []
            i = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                clause = self.clauses[ci]
                if clause[0] == false_lit:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                if self._value(first) == 1:
                    kept.append(ci)
                    continue
                moved = False
                for k in range(2, len(clause)):
                    if self._value(clause[k]) != -1:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches[self._widx(clause[1])].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                kept.append(ci)
                if self._value(first) == -1:
                    kept.extend(ws[i:])
                    self.watches[self._widx(false_lit)] = kept
                    return ci
                self._enqueue(first, ci)
            self.watches[self._widx(false_lit)] = kept
        return -1

    def _check_limits(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceLimit("timeout")
        if self.mem_limit_kb is not None and _current_rss_kb() > self.mem_limit_kb:
            raise ResourceLimit("memout")

    def _analyze(self, conflict_ci: int) -> tuple[list[int], int]:
        """First-UIP learning; returns (learnt clause, backjump level)."""
        cur_level = len(self.trail_lim)
        learnt: list[int] = []
        seen = bytearray(self.nv + 1)
        counter = 0
        p = 0
        clause = self.clauses[conflict_ci]
        idx = len(self.trail) - 1
        while True:
            for q in clause:
                if q == p:
                    continue
                var = q if q > 0 else -q
                if not seen[var] and self.level[var] > 0:
                    seen[var] = 1
                    if self.level[var] == cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            lit = self.trail[idx]
            var = abs(lit)
            seen[var] = 0
            counter -= 1
            idx -= 1
            if counter == 0:
                uip = -lit
                break
            p = lit
            clause = self.clauses[self.reason[var]]
        learnt.insert(0, uip)
        if len(learnt) == 1:
            return learnt, 0
        # Hoist a literal from the backjump level into the watch slot.
        best = max(range(1, len(learnt)), key=lambda i: self.level[abs(learnt[i])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _backtrack(self, target_level: int) -> None:
        while self.trail and self.level[abs(self.trail[-1])] > target_level:
            var = abs(self.trail.pop())
            self.assign[var] = 0
            self.reason[var] = -1
            if var < self.next_var:
                self.next_var = var
        del self.trail_lim[target_level:]
        self.qhead = len(self.trail)

    def solve(self) -> SolveResult:
        self._check_limits()
        if not self.ok:
            return SolveResult("unsat", None, self.stats)
        if self._propagate() != -1:
            return SolveResult("unsat", None, self.stats)
        while True:
            if len(self.trail) == self.nv:
                model = {v: self.assign[v] == 1 for v in range(1, self.nv + 1)}
                return SolveResult("sat", model, self.stats)
            # Decide: lowest-index unassigned variable, false first.
            while self.assign[self.next_var] != 0:
                self.next_var += 1
            self.stats.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(-self.next_var, -1)
            while True:
                conflict = self._propagate()
                if conflict == -1:
                    break
                self.stats.conflicts += 1
                if not self.trail_lim:
                    return SolveResult("unsat", None, self.stats)
                learnt, back_level = self._analyze(conflict)
                self._backtrack(back_level)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], -1)
                else:
                    ci = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[self._widx(learnt[0])].append(ci)
                    self.watches[self._widx(learnt[1])].append(ci)
                    self._enqueue(learnt[0], ci)


def sat_solve(cnf: Cnf, deadline: Optional[float] = None,
              mem_limit_kb: Optional[int] = None) -> SolveResult:
    """Decide a CNF; deterministic given fixed input.

    `deadline` is an absolute time.monotonic() stamp; crossing it (or the
    memory limit) raises ResourceLimit rather than returning a verdict.
    """
    return _Solver(cnf, deadline, mem_limit_kb).solve()

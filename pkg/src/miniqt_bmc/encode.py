"""Encoding the SSA system as a single bit-vector formula.

The query is C ∧ ¬P: C constrains the equations plus the definitional
side conditions, and P is the conjunction of guarded claims.  A
satisfying model is therefore exactly a run within the unwinding bound
that violates some claim; unsatisfiable means every claim holds up to
the bound.

Assignment equalities are emitted unguarded (lhs = rhs regardless of the
path guard).  Single static assignment makes that sound: each version is
defined once, off-path versions get deterministic but irrelevant values,
and phi assignments pick the live branch, so claim verdicts and
counterexamples are unchanged while the bit-blaster gets to substitute
every definition instead of allocating solver variables for it.
"""

from __future__ import annotations

from .errors import SortError
from .ssa import SsaSystem
from .terms import Term


def encode(ssa: SsaSystem) -> Term:
    b = ssa.builder
    constraints = b.true_
    for eq in ssa.equations:
        if eq.lhs.sort != eq.rhs.sort:
            raise SortError(
                f"equation for {eq.lhs_var} mixes {eq.lhs.sort} and {eq.rhs.sort}"
            )
        constraints = b.and_(constraints, b.eq(eq.lhs, eq.rhs))
    for side in ssa.constraints:
        constraints = b.and_(constraints, side)
    properties = b.true_
    for claim in ssa.claims:
        properties = b.and_(properties, b.implies(claim.guard, claim.cond))
    return b.and_(constraints, b.not_(properties))

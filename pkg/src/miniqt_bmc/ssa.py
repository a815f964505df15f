"""Guarded single-static-assignment equation system produced by symex."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .source import SourceLocation
from .terms import Term, TermBuilder, VarId, to_str

# Equation origins; traces show "assignment", "parameter", and "call" rows.
ORIGIN_ASSIGNMENT = "assignment"
ORIGIN_PARAMETER = "parameter"
ORIGIN_PHI = "phi"
ORIGIN_INIT = "init"
ORIGIN_CALL = "call"


@dataclass
class SsaEquation:
    guard: Term
    lhs: Term  # a var node; lhs.payload is the VarId
    rhs: Term
    loc: SourceLocation
    origin: str = ORIGIN_ASSIGNMENT
    note: Optional[str] = None  # callee name on call markers

    @property
    def lhs_var(self) -> VarId:
        return self.lhs.payload


@dataclass
class SsaClaim:
    guard: Term
    cond: Term
    message: str
    property_class: str
    loc: SourceLocation
    position: int  # number of equations emitted before this claim


@dataclass
class SsaSystem:
    builder: TermBuilder
    int_width: int
    equations: list[SsaEquation] = field(default_factory=list)
    claims: list[SsaClaim] = field(default_factory=list)
    inputs: list[Term] = field(default_factory=list)  # nondet var nodes, in order
    constraints: list[Term] = field(default_factory=list)  # division axioms


def format_ssa(ssa: SsaSystem) -> str:
    """Equations as `guard ⊢ name#ver := term`, then claims and inputs."""
    lines = []
    for eq in ssa.equations:
        lines.append(f"{to_str(eq.guard)} ⊢ {eq.lhs_var} := {to_str(eq.rhs)}")
    for claim in ssa.claims:
        lines.append(
            f"{to_str(claim.guard)} ⊢ ASSERT {to_str(claim.cond)} "
            f'"{claim.message}" [{claim.property_class}] '
            f"// {claim.loc.file}:{claim.loc.line}"
        )
    if ssa.inputs:
        names = ", ".join(str(t.payload) for t in ssa.inputs)
        lines.append(f"inputs: {names}")
    for c in ssa.constraints:
        lines.append(f"constraint: {to_str(c)}")
    return "\n".join(lines)

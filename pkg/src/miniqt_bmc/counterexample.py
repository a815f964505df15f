"""Counterexample reconstruction from a satisfying assignment.

Values are recovered by replaying the SSA equations under the model's
input bits rather than reading every variable out of the CNF: constant
folding routinely removes variables from the formula entirely, but the
replay always produces a complete, consistent valuation.  Steps keep only
assignments a user can act on (source assignments, parameter bindings,
and call markers); internal temporaries stay hidden.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bitblast import Cnf
from .errors import NoViolatedClaim
from .sat import SolveResult
from .source import SourceLocation
from .ssa import ORIGIN_ASSIGNMENT, ORIGIN_CALL, ORIGIN_PARAMETER, SsaSystem
from .terms import BvSort, VarId, evaluate, to_signed


@dataclass
class CexStep:
    index: int
    kind: str  # "assignment" | "call"
    loc: SourceLocation
    name: str
    value_text: str = ""


@dataclass
class Counterexample:
    steps: list[CexStep]
    violated_message: str
    violated_loc: SourceLocation
    property_class: str
    input_values: dict[str, int] = field(default_factory=dict)
    input_bindings: dict[str, str] = field(default_factory=dict)
    input_sequence: list[tuple[str, int]] = field(default_factory=list)

    @property
    def replay_values(self) -> list[int]:
        """Nondet inputs in dynamic evaluation order, for the interpreter."""
        return [value for _, value in self.input_sequence]


def _hidden(name: str) -> bool:
    tail = name.rsplit("::", 1)[-1]
    return tail.startswith("__")


def _render(value, sort) -> str:
    if isinstance(sort, BvSort):
        return str(to_signed(int(value), sort.width))
    return "true" if value else "false"


def eval_model(result: SolveResult, ssa: SsaSystem, cnf: Cnf) -> Counterexample:
    """Build the trace for the first violated claim under a satisfying model."""
    assert result.is_sat and result.model is not None
    model = result.model

    # Leaf values (inputs, division witnesses) come from the CNF bits; a
    # variable the formula dropped entirely defaults to zero.
    env: dict[VarId, object] = {}
    bits: dict[VarId, dict[int, bool]] = {}
    for (var_id, bit), cnf_var in cnf.var_map.items():
        bits.setdefault(var_id, {})[bit] = model[cnf_var]
    for var_id, positions in bits.items():
        value = 0
        for bit, truth in positions.items():
            if truth:
                value |= 1 << bit
        env[var_id] = value

    guards: list[bool] = []
    for eq in ssa.equations:
        guards.append(bool(evaluate(eq.guard, env)))
        env[eq.lhs_var] = evaluate(eq.rhs, env)

    violated = None
    for claim in ssa.claims:
        if evaluate(claim.guard, env) and not evaluate(claim.cond, env):
            violated = claim
            break
    if violated is None:
        raise NoViolatedClaim(
            "satisfying model violates no claim; encode() is broken"
        )

    steps: list[CexStep] = []
    for index, eq in enumerate(ssa.equations):
        if index >= violated.position:
            break
        if not guards[index]:
            continue
        if eq.origin == ORIGIN_CALL:
            steps.append(CexStep(len(steps) + 1, "call", eq.loc, eq.note or "?"))
        elif eq.origin in (ORIGIN_ASSIGNMENT, ORIGIN_PARAMETER):
            name = eq.lhs_var.name
            if _hidden(name):
                continue
            steps.append(CexStep(
                len(steps) + 1, "assignment", eq.loc, name,
                _render(env[eq.lhs_var], eq.lhs.sort)))

    input_ids = {t.payload for t in ssa.inputs}
    input_values: dict[str, int] = {}
    for t in ssa.inputs:
        raw = env.get(t.payload, 0)
        input_values[t.payload.name] = to_signed(int(raw), t.sort.width)
    bindings: dict[str, str] = {}
    sequence: list[tuple[str, int]] = []
    for index, eq in enumerate(ssa.equations):
        if index >= violated.position:
            break
        rhs = eq.rhs
        if rhs.kind == "var" and rhs.payload in input_ids and guards[index]:
            name = rhs.payload.name
            sequence.append((name, input_values[name]))
            bindings.setdefault(name, eq.lhs_var.name)

    return Counterexample(
        steps,
        violated.message,
        violated.loc,
        violated.property_class,
        input_values,
        bindings,
        sequence,
    )

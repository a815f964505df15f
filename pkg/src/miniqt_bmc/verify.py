"""End-to-end verification pipeline and result formatting."""

from __future__ import annotations

import resource
import time
from dataclasses import dataclass, field
from typing import Optional

from .bitblast import bitblast
from .config import VerifierConfig
from .counterexample import Counterexample, eval_model
from .encode import encode
from .errors import MiniQtError
from .goto_ir import GotoProgram, validate_goto
from .includes import resolve_includes
from .lexer import tokenize
from .lower import lower_to_goto
from .parser import parse
from .sat import ResourceLimit, sat_solve
from .ssa import SsaSystem
from .symex import symex
from .typecheck import typecheck

SUCCESSFUL = "successful"
FAILED = "failed"
TIMEOUT = "timeout"
MEMOUT = "memout"
TOOL_ERROR = "tool-error"


@dataclass
class VerificationResult:
    status: str
    counterexample: Optional[Counterexample] = None
    error: Optional[str] = None
    wall_time_seconds: float = 0.0
    peak_memory_kb: int = 0
    # Debug/replay handles; not part of the reportable result.
    goto_program: Optional[GotoProgram] = field(default=None, repr=False)
    ssa: Optional[SsaSystem] = field(default=None, repr=False)

    @property
    def exit_code(self) -> int:
        if self.status == SUCCESSFUL:
            return 0
        if self.status == FAILED:
            return 10
        if self.status in (TIMEOUT, MEMOUT):
            return 2
        return 1


def build_goto(source: str, file: str, config: VerifierConfig) -> GotoProgram:
    """Front half of the pipeline: source text to a validated GOTO-program."""
    program = parse(tokenize(source, file), file)
    program = resolve_includes(program, config)
    typed = typecheck(program, config)
    goto = lower_to_goto(typed)
    diagnostics = validate_goto(goto)
    if diagnostics:
        raise MiniQtError(
            "goto invariants violated: " + "; ".join(str(d) for d in diagnostics)
        )
    return goto


def _peak_memory_kb() -> int:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss


def verify_source(source: str, file: str, config: VerifierConfig,
                  keep_artifacts: bool = False) -> VerificationResult:
    """Run the whole pipeline on in-memory source text."""
    start = time.monotonic()
    deadline = start + config.timeout_seconds

    def done(result: VerificationResult) -> VerificationResult:
        result.wall_time_seconds = time.monotonic() - start
        result.peak_memory_kb = _peak_memory_kb()
        return result

    try:
        goto = build_goto(source, file, config)
        ssa = symex(goto, config)
        if time.monotonic() > deadline:
            raise ResourceLimit("timeout")
        formula = encode(ssa)
        cnf = bitblast(formula)
        if time.monotonic() > deadline:
            raise ResourceLimit("timeout")
        outcome = sat_solve(cnf, deadline=deadline,
                            mem_limit_kb=config.mem_limit_kb)
    except ResourceLimit as limit:
        status = TIMEOUT if limit.kind == "timeout" else MEMOUT
        return done(VerificationResult(status))
    except MiniQtError as err:
        return done(VerificationResult(TOOL_ERROR, error=str(err)))

    if outcome.is_sat:
        cex = eval_model(outcome, ssa, cnf)
        result = VerificationResult(FAILED, counterexample=cex)
    else:
        result = VerificationResult(SUCCESSFUL)
    if keep_artifacts:
        result.goto_program = goto
        result.ssa = ssa
    return done(result)


def verify_file(path: str, config: VerifierConfig,
                keep_artifacts: bool = False) -> VerificationResult:
    """Verify one program file; frontend diagnostics become tool errors."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            source = fh.read()
    except OSError as err:
        return VerificationResult(TOOL_ERROR, error=str(err))
    return verify_source(source, path, config, keep_artifacts)


def format_counterexample(result: VerificationResult) -> str:
    """Human-readable verdict; FAILED results include the full trace."""
    if result.status == SUCCESSFUL:
        return "VERIFICATION SUCCESSFUL"
    if result.status == TIMEOUT:
        return "VERIFICATION INCONCLUSIVE: timeout"
    if result.status == MEMOUT:
        return "VERIFICATION INCONCLUSIVE: out of memory"
    if result.status == TOOL_ERROR:
        return f"ERROR: {result.error}"
    cex = result.counterexample
    assert cex is not None
    lines = ["VERIFICATION FAILED", ""]
    lines.append(
        f"Violated property: {cex.violated_message} "
        f"({cex.violated_loc.file}:{cex.violated_loc.line}) "
        f"[{cex.property_class}]"
    )
    if cex.steps:
        lines.append("")
        for step in cex.steps:
            where = f"({step.loc.file}:{step.loc.line})"
            if step.kind == "call":
                lines.append(f"State {step.index}: call {step.name} {where}")
            else:
                lines.append(
                    f"State {step.index}: {step.name} = {step.value_text} {where}"
                )
    if cex.input_values:
        lines.append("")
        lines.append("Nondeterministic inputs:")
        for name, value in cex.input_values.items():
            bound = cex.input_bindings.get(name)
            suffix = f"  (assigned to {bound})" if bound else ""
            lines.append(f"  {name} = {value}{suffix}")
    return "\n".join(lines)

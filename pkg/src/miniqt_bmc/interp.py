"""Concrete GOTO-program interpreter.

This is the ground-truth executor: it runs a lowered program on concrete
nondet inputs with two's-complement wrapping, stopping at the first
failed assertion.  The acceptance suite replays solver counterexamples
through it and exhaustively enumerates small input domains against the
BMC verdict, so its semantics must match the formula encoding bit for
bit (including division by zero, which yields quotient 0 and remainder
equal to the dividend in both places).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import goto_ir as g
from .errors import NondetUnderflow
from .semtypes import ClassType
from .source import SourceLocation


def wrap(value: int, width: int) -> int:
    """Reduce to the signed two's-complement range of `width` bits."""
    half = 1 << (width - 1)
    return (value + half) % (1 << width) - half


def divmod_trunc(a: int, b: int) -> tuple[int, int]:
    """C-style division: truncate toward zero; by zero: (0, a)."""
    if b == 0:
        return 0, a
    q = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        q = -q
    return q, a - q * b


@dataclass
class TraceStep:
    loc: SourceLocation
    kind: str  # "assignment" | "assertion-check" | "assume"
    name: Optional[str] = None
    value: Optional[int] = None


@dataclass
class TraceVerdict:
    kind: str  # "completed" | "assertion-violated" | "step-limit"
    message: Optional[str] = None
    loc: Optional[SourceLocation] = None
    property_class: Optional[str] = None


@dataclass
class Trace:
    steps: list[TraceStep]
    verdict: TraceVerdict
    final_store: dict[str, int] = field(default_factory=dict)

    @property
    def violated(self) -> bool:
        return self.verdict.kind == "assertion-violated"


@dataclass
class _Frame:
    fn: g.GotoFunction
    pc: int
    env: dict[str, object]  # scalars as ints, objects as heap ids
    result: Optional[g.GExpr]  # caller lvalue awaiting the return value


class _Interp:
    def __init__(self, program: g.GotoProgram, nondet_values, step_limit: int,
                 record_steps: bool):
        self.program = program
        self.width = program.int_width
        self.nondet = list(nondet_values)
        self.nondet_pos = 0
        self.step_limit = step_limit
        self.record = record_steps
        self.steps: list[TraceStep] = []
        self.heap: dict[int, dict] = {}
        self.next_obj = 0

    def run(self) -> Trace:
        entry = self.program.functions[self.program.entry]
        frames = [_Frame(entry, 0, {}, None)]
        executed = 0
        while frames:
            if executed >= self.step_limit:
                return Trace(self.steps, TraceVerdict("step-limit"))
            executed += 1
            frame = frames[-1]
            ins = frame.fn.body[frame.pc]
            if isinstance(ins, g.Decl):
                self._declare(frame, ins)
            elif isinstance(ins, g.Assign):
                value = self._eval(frame, ins.value)
                self._store(frame, ins.target, value)
                self._step(ins.loc, "assignment", g.gexpr_to_str(ins.target), value)
            elif isinstance(ins, g.Assume):
                holds = self._eval(frame, ins.cond)
                self._step(ins.loc, "assume")
                if not holds:
                    return Trace(self.steps, TraceVerdict("completed"))
            elif isinstance(ins, g.Assert):
                holds = self._eval(frame, ins.cond)
                self._step(ins.loc, "assertion-check")
                if not holds:
                    verdict = TraceVerdict("assertion-violated", ins.message,
                                           ins.loc, ins.property_class)
                    return Trace(self.steps, verdict)
            elif isinstance(ins, g.Goto):
                if ins.guard is None or self._eval(frame, ins.guard):
                    frame.pc = ins.target
                    continue
            elif isinstance(ins, g.Call):
                callee = self.program.functions[ins.callee]
                env: dict[str, object] = {}
                names = [name for name, _ in callee.params]
                pos = 0
                if ins.receiver is not None:
                    env[names[0]] = frame.env[ins.receiver]
                    pos = 1
                for arg, name in zip(ins.args, names[pos:]):
                    env[name] = self._eval(frame, arg)
                frames.append(_Frame(callee, 0, env, ins.result))
                continue
            elif isinstance(ins, (g.Return, g.EndFunction)):
                value = None
                if isinstance(ins, g.Return) and ins.value is not None:
                    value = self._eval(frame, ins.value)
                frames.pop()
                if not frames:
                    store = {
                        k: v for k, v in frame.env.items() if isinstance(v, int)
                    }
                    return Trace(self.steps, TraceVerdict("completed"), store)
                caller = frames[-1]
                if frame.result is not None and value is not None:
                    self._store(caller, frame.result, value)
                caller.pc += 1
                continue
            elif isinstance(ins, g.Skip):
                pass
            else:
                raise AssertionError(f"unhandled instruction {ins!r}")
            frame.pc += 1
        raise AssertionError("frame stack drained unexpectedly")

    # -- state -----------------------------------------------------------

    def _declare(self, frame: _Frame, ins: g.Decl) -> None:
        if isinstance(ins.var_type, ClassType):
            obj = self.next_obj
            self.next_obj += 1
            fields = {}
            for fname, fty in self.program.classes[ins.var_type.name]:
                from .semtypes import ArrayType

                if isinstance(fty, ArrayType):
                    for i in range(fty.capacity):
                        fields[(fname, i)] = 0
                else:
                    fields[fname] = 0
            self.heap[obj] = fields
            frame.env[ins.var] = obj
        else:
            frame.env[ins.var] = 0

    def _object(self, frame: _Frame, name: str) -> dict:
        return self.heap[frame.env[name]]

    def _store(self, frame: _Frame, target: g.GExpr, value: int) -> None:
        if isinstance(target, g.GVar):
            frame.env[target.name] = value
        elif isinstance(target, g.GField):
            self._object(frame, target.obj)[target.field_name] = value
        elif isinstance(target, g.GIndex):
            idx = self._eval(frame, target.index)
            self._object(frame, target.obj)[(target.field_name, idx)] = value
        else:
            raise AssertionError(f"bad assignment target {target!r}")

    def _step(self, loc, kind, name=None, value=None) -> None:
        if self.record:
            self.steps.append(TraceStep(loc, kind, name, value))

    # -- expressions -------------------------------------------------------

    def _eval(self, frame: _Frame, e: g.GExpr) -> int:
        if isinstance(e, g.GConst):
            return e.value
        if isinstance(e, g.GVar):
            return frame.env[e.name]
        if isinstance(e, g.GField):
            return self._object(frame, e.obj)[e.field_name]
        if isinstance(e, g.GIndex):
            idx = self._eval(frame, e.index)
            return self._object(frame, e.obj)[(e.field_name, idx)]
        if isinstance(e, g.GNondet):
            if self.nondet_pos >= len(self.nondet):
                raise NondetUnderflow(
                    f"nondet_int() evaluation #{self.nondet_pos + 1} has no "
                    "supplied value"
                )
            value = wrap(self.nondet[self.nondet_pos], self.width)
            self.nondet_pos += 1
            return value
        if isinstance(e, g.GUnary):
            v = self._eval(frame, e.operand)
            if e.op == "!":
                return 0 if v else 1
            return wrap(-v, self.width)
        if isinstance(e, g.GBinary):
            a = self._eval(frame, e.lhs)
            b = self._eval(frame, e.rhs)
            op = e.op
            if op == "+":
                return wrap(a + b, self.width)
            if op == "-":
                return wrap(a - b, self.width)
            if op == "*":
                return wrap(a * b, self.width)
            if op == "/":
                return wrap(divmod_trunc(a, b)[0], self.width)
            if op == "%":
                return wrap(divmod_trunc(a, b)[1], self.width)
            if op == "<":
                return 1 if a < b else 0
            if op == "<=":
                return 1 if a <= b else 0
            if op == ">":
                return 1 if a > b else 0
            if op == ">=":
                return 1 if a >= b else 0
            if op == "==":
                return 1 if a == b else 0
            if op == "!=":
                return 1 if a != b else 0
            if op == "&&":
                return 1 if (a and b) else 0
            if op == "||":
                return 1 if (a or b) else 0
            raise AssertionError(f"unhandled operator {op}")
        raise AssertionError(f"unhandled expression {e!r}")


def concrete_interpret(program: g.GotoProgram, nondet_values,
                       step_limit: int = 200_000,
                       record_steps: bool = False) -> Trace:
    """Run `program` on the given nondet inputs; deterministic by construction.

    Returns a Trace whose verdict is the first failed assertion, a step-limit
    stop, or completion with the entry frame's final scalar store.
    """
    return _Interp(program, nondet_values, step_limit, record_steps).run()

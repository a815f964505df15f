"""Flat GOTO-program intermediate representation.

Structured control flow is gone after lowering: branching exists only as
guarded jumps.  Expressions at this level are pure (calls were hoisted
into CALL instructions), which is what both the symbolic executor and the
concrete interpreter rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .semtypes import SemType
from .source import SourceLocation

USER_ASSERTION = "user-assertion"
MODEL_PRECONDITION = "model-precondition"
ARRAY_BOUNDS = "array-bounds"
UNWINDING = "unwinding"

PROPERTY_CLASSES = (USER_ASSERTION, MODEL_PRECONDITION, ARRAY_BOUNDS, UNWINDING)


# --- pure expressions -------------------------------------------------------


@dataclass
class GExpr:
    ty: SemType


@dataclass
class GConst(GExpr):
    value: int  # bools stored as 0/1 with a BoolType


@dataclass
class GVar(GExpr):
    name: str


@dataclass
class GField(GExpr):
    obj: str  # object variable in the current frame ('this' inside methods)
    field_name: str


@dataclass
class GIndex(GExpr):
    obj: str
    field_name: str
    index: GExpr
    capacity: int


@dataclass
class GUnary(GExpr):
    op: str
    operand: GExpr


@dataclass
class GBinary(GExpr):
    op: str
    lhs: GExpr
    rhs: GExpr


@dataclass
class GNondet(GExpr):
    pass


def gexpr_to_str(e: GExpr) -> str:
    if isinstance(e, GConst):
        from .semtypes import BoolType

        if isinstance(e.ty, BoolType):
            return "true" if e.value else "false"
        return str(e.value)
    if isinstance(e, GVar):
        return e.name
    if isinstance(e, GField):
        return f"{e.obj}.{e.field_name}"
    if isinstance(e, GIndex):
        return f"{e.obj}.{e.field_name}[{gexpr_to_str(e.index)}]"
    if isinstance(e, GUnary):
        return f"{e.op}({gexpr_to_str(e.operand)})"
    if isinstance(e, GBinary):
        return f"({gexpr_to_str(e.lhs)} {e.op} {gexpr_to_str(e.rhs)})"
    if isinstance(e, GNondet):
        return "nondet_int()"
    raise AssertionError(f"unhandled {e!r}")


# --- instructions -----------------------------------------------------------


@dataclass
class Instruction:
    loc: SourceLocation


@dataclass
class Decl(Instruction):
    var: str
    var_type: SemType


@dataclass
class Assign(Instruction):
    target: GExpr  # GVar, GField, or GIndex
    value: GExpr


@dataclass
class Assume(Instruction):
    cond: GExpr


@dataclass
class Assert(Instruction):
    cond: GExpr
    message: str
    property_class: str


@dataclass
class Goto(Instruction):
    target: int
    guard: Optional[GExpr]  # None: unconditional
    loop_id: Optional[int] = None
    backedge: bool = False
    loop_exit: bool = False


@dataclass
class Call(Instruction):
    result: Optional[GExpr]
    callee: str
    args: list[GExpr]
    receiver: Optional[str]  # object variable passed as 'this'


@dataclass
class Return(Instruction):
    value: Optional[GExpr]


@dataclass
class Skip(Instruction):
    pass


@dataclass
class EndFunction(Instruction):
    pass


@dataclass
class GotoFunction:
    name: str
    params: list[tuple[str, SemType]]
    return_type: SemType
    body: list[Instruction] = field(default_factory=list)
    loops: dict[int, tuple[int, int]] = field(default_factory=dict)  # id -> (head, backedge)


@dataclass
class GotoProgram:
    functions: dict[str, GotoFunction]
    entry: str
    classes: dict[str, list[tuple[str, SemType]]]  # field layouts for DECLs
    int_width: int


# --- printing ---------------------------------------------------------------


def instruction_to_str(ins: Instruction, index: int) -> str:
    if isinstance(ins, Decl):
        text = f"DECL {ins.var} : {ins.var_type}"
    elif isinstance(ins, Assign):
        text = f"ASSIGN {gexpr_to_str(ins.target)} := {gexpr_to_str(ins.value)}"
    elif isinstance(ins, Assume):
        text = f"ASSUME {gexpr_to_str(ins.cond)}"
    elif isinstance(ins, Assert):
        text = (
            f"ASSERT {gexpr_to_str(ins.cond)} "
            f'"{ins.message}" [{ins.property_class}]'
        )
    elif isinstance(ins, Goto):
        cond = f" if {gexpr_to_str(ins.guard)}" if ins.guard is not None else ""
        tags = ""
        if ins.backedge:
            tags = f" (backedge loop {ins.loop_id})"
        elif ins.loop_exit:
            tags = f" (exit loop {ins.loop_id})"
        text = f"GOTO {ins.target}{cond}{tags}"
    elif isinstance(ins, Call):
        result = f"{gexpr_to_str(ins.result)} := " if ins.result is not None else ""
        recv = f"{ins.receiver}." if ins.receiver is not None else ""
        args = ", ".join(gexpr_to_str(a) for a in ins.args)
        text = f"CALL {result}{recv}{ins.callee}({args})"
    elif isinstance(ins, Return):
        text = "RETURN" + (f" {gexpr_to_str(ins.value)}" if ins.value else "")
    elif isinstance(ins, Skip):
        text = "SKIP"
    elif isinstance(ins, EndFunction):
        text = "END_FUNCTION"
    else:
        raise AssertionError(f"unhandled {ins!r}")
    return f"{index}: {text} // {ins.loc.file}:{ins.loc.line}"


def format_goto_program(program: GotoProgram) -> str:
    lines = []
    for name, fn in program.functions.items():
        params = ", ".join(f"{t} {n}" for n, t in fn.params)
        lines.append(f"{fn.return_type} {name}({params}):")
        for idx, ins in enumerate(fn.body):
            lines.append("  " + instruction_to_str(ins, idx))
        lines.append("")
    return "\n".join(lines)


# --- validation -------------------------------------------------------------


@dataclass
class GotoDiagnostic:
    function: str
    index: int
    message: str

    def __str__(self) -> str:
        return f"{self.function}[{self.index}]: {self.message}"


def validate_goto(program: GotoProgram) -> list[GotoDiagnostic]:
    """Check GotoProgram invariants; an empty result means well-formed."""
    diags: list[GotoDiagnostic] = []
    for name, fn in program.functions.items():
        body = fn.body
        if not body or not isinstance(body[-1], EndFunction):
            diags.append(GotoDiagnostic(name, max(len(body) - 1, 0),
                                        "function does not end with END_FUNCTION"))
        for idx, ins in enumerate(body):
            if isinstance(ins, Goto):
                if not (0 <= ins.target < len(body)):
                    diags.append(GotoDiagnostic(name, idx,
                                                f"dangling GOTO target {ins.target}"))
                if ins.backedge and ins.target > idx:
                    diags.append(GotoDiagnostic(name, idx,
                                                "backedge jumps forward"))
                if (ins.backedge or ins.loop_exit) and ins.loop_id is None:
                    diags.append(GotoDiagnostic(name, idx,
                                                "loop-tagged GOTO without loop id"))
            elif isinstance(ins, Assert):
                if not ins.message:
                    diags.append(GotoDiagnostic(name, idx, "empty ASSERT message"))
                if ins.property_class not in PROPERTY_CLASSES:
                    diags.append(GotoDiagnostic(
                        name, idx, f"unknown property class {ins.property_class!r}"))
            elif isinstance(ins, Call):
                if ins.callee not in program.functions:
                    diags.append(GotoDiagnostic(name, idx,
                                                f"call to missing function {ins.callee}"))
        for loop_id, (head, backedge) in fn.loops.items():
            ok = (
                0 <= backedge < len(body)
                and isinstance(body[backedge], Goto)
                and body[backedge].backedge
                and body[backedge].target == head
            )
            if not ok:
                diags.append(GotoDiagnostic(name, backedge,
                                            f"loop {loop_id} backedge mismatch"))
    if program.entry not in program.functions:
        diags.append(GotoDiagnostic(program.entry, 0, "entry function missing"))
    return diags

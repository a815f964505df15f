"""Symbolic execution of GOTO-programs into a guarded SSA system.

The executor walks each function's instruction list once, keeping a single
active path state (guard term plus variable version map).  Forward jumps
park a copy of the state at their target; when the walk reaches a parked
index, states merge through phi assignments `x := ite(guard, a, b)`.
Backedges re-execute the loop region up to the unwind bound k; at the
loop-exit jump of the (k+1)-th head visit the executor emits the
unwinding claim (or assumption, with assertions off) that the exit
condition now holds, and leaves the loop.  Calls are inlined with a fresh
activation scope per call site; the receiver object is passed by aliasing
its field names, which is what gives operational-model methods reference
semantics over the caller's object.

Class objects never reach the solver whole: each field is a scalar SSA
variable and each array field explodes into capacity-many cell variables,
with symbolic-index reads and writes lowered to ite cascades.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import goto_ir as g
from .config import VerifierConfig
from .interp import divmod_trunc
from .semtypes import VOID, ArrayType, BoolType, ClassType, IntType, SemType
from .source import SourceLocation
from .ssa import (
    ORIGIN_ASSIGNMENT,
    ORIGIN_CALL,
    ORIGIN_INIT,
    ORIGIN_PARAMETER,
    ORIGIN_PHI,
    SsaClaim,
    SsaEquation,
    SsaSystem,
)
from .terms import BOOL_SORT, BvSort, Term, TermBuilder, to_signed


@dataclass
class _State:
    guard: Term
    versions: dict[str, int]


def symex(program: g.GotoProgram, config: VerifierConfig) -> SsaSystem:
    """Unwind and symbolically execute `program` up to the configured bound."""
    return _Engine(program, config).run()


class _Engine:
    def __init__(self, program: g.GotoProgram, config: VerifierConfig):
        self.program = program
        self.config = config
        self.k = config.unwind_bound
        self.builder = TermBuilder()
        self.width = program.int_width
        self.bv_sort = BvSort(self.width)
        self.ssa = SsaSystem(self.builder, self.width)
        self.version_next: dict[str, int] = {}
        self.sorts: dict[str, object] = {}
        self.frame_serial = 0
        self.div_serial = 0
        self.nondet_serial = 0

    def run(self) -> SsaSystem:
        b = self.builder
        entry = _State(b.true_, {})
        self._exec_function(self.program.entry, [], None, entry, (), None)
        return self.ssa

    # -- naming and equations ------------------------------------------------

    def _sort_of(self, ty: SemType):
        if isinstance(ty, BoolType):
            return BOOL_SORT
        if isinstance(ty, IntType):
            return BvSort(ty.width)
        raise AssertionError(f"no term sort for {ty}")

    def _new_version(self, name: str, sort) -> int:
        version = self.version_next.get(name, 0)
        self.version_next[name] = version + 1
        self.sorts[name] = sort
        return version

    def _read(self, state: _State, name: str, sort) -> Term:
        version = state.versions.get(name)
        if version is None:
            # First read without a DECL: pin to zero so the concrete replay
            # and the formula agree on uninitialized storage.
            version = self._new_version(name, sort)
            state.versions[name] = version
            lhs = self.builder.var(name, version, sort)
            self.ssa.equations.append(SsaEquation(
                self.builder.true_, lhs, self._zero(sort),
                SourceLocation("<init>", 1, 1), ORIGIN_INIT))
        return self.builder.var(name, version, self.sorts[name])

    def _zero(self, sort) -> Term:
        if sort is BOOL_SORT or isinstance(sort, type(BOOL_SORT)):
            return self.builder.false_
        return self.builder.bv_const(sort.width, 0)

    def _define(self, state: _State, name: str, sort, rhs: Term, loc,
                origin: str, note=None) -> None:
        version = self._new_version(name, sort)
        state.versions[name] = version
        lhs = self.builder.var(name, version, sort)
        self.ssa.equations.append(
            SsaEquation(state.guard, lhs, rhs, loc, origin, note))

    # -- function execution ------------------------------------------------

    def _exec_function(self, fname: str, args: list[Term],
                       receiver_obj: str | None, state: _State,
                       chain: tuple, call_loc) -> tuple[_State, Term | None]:
        fn = self.program.functions[fname]
        if fname == self.program.entry and not chain:
            prefix = fname
        else:
            self.frame_serial += 1
            prefix = f"{fname}!{self.frame_serial}"
        alias: dict[str, str] = {}
        arg_iter = iter(args)
        for pname, pty in fn.params:
            if isinstance(pty, ClassType):
                assert receiver_obj is not None
                alias[pname] = receiver_obj
                continue
            sort = self._sort_of(pty)
            value = next(arg_iter)
            self._define(state, f"{prefix}::{pname}", sort, value,
                         call_loc or fn.body[0].loc, ORIGIN_PARAMETER)
        frame = _Frame(prefix, alias)
        state = self._run_body(fn, frame, state, chain)
        ret_name = f"{prefix}::__ret"
        if ret_name in state.versions:
            ret = self.builder.var(ret_name, state.versions[ret_name],
                                   self.sorts[ret_name])
            return state, ret
        if fn.return_type != VOID:
            return state, self._zero(self._sort_of(fn.return_type))
        return state, None

    def _run_body(self, fn: g.GotoFunction, frame: "_Frame",
                  state: _State, chain: tuple) -> _State:
        body = fn.body
        b = self.builder
        merge_at: dict[int, list[_State]] = {}
        takes: dict[int, int] = {}
        pc = 0
        while pc < len(body):
            parked = merge_at.pop(pc, None)
            if parked:
                state = self._merge(parked + [state], body[pc].loc)
            ins = body[pc]
            dead = state.guard is b.false_
            if isinstance(ins, g.Goto):
                if ins.backedge and not dead:
                    count = takes.get(ins.loop_id, 0)
                    if count < self.k:
                        takes[ins.loop_id] = count + 1
                        for lid, (head, backedge) in fn.loops.items():
                            if lid != ins.loop_id and ins.target < head and backedge < pc:
                                takes[lid] = 0
                        pc = ins.target
                        continue
                    # The loop-exit jump cut this path already; dead fallthrough.
                    state = _State(b.false_, state.versions)
                elif not dead:
                    state = self._forward_goto(ins, frame, state, takes, merge_at)
            elif isinstance(ins, g.Decl):
                if not dead:
                    self._declare(state, frame, ins)
            elif isinstance(ins, g.Assign):
                if not dead:
                    value = self._term(state, frame, ins.value)
                    self._assign(state, frame, ins.target, value, ins.loc)
            elif isinstance(ins, g.Assume):
                if not dead:
                    cond = self._term(state, frame, ins.cond)
                    state = _State(b.and_(state.guard, cond), state.versions)
            elif isinstance(ins, g.Assert):
                if not dead:
                    cond = self._term(state, frame, ins.cond)
                    self._claim(state.guard, cond, ins.message,
                                ins.property_class, ins.loc)
            elif isinstance(ins, g.Call):
                if not dead:
                    state = self._call(state, frame, ins, chain)
            elif isinstance(ins, g.Return):
                if not dead:
                    if ins.value is not None:
                        value = self._term(state, frame, ins.value)
                        sort = self._sort_of(ins.value.ty)
                        self._define(state, f"{frame.prefix}::__ret", sort,
                                     value, ins.loc, ORIGIN_ASSIGNMENT)
                    end = len(body) - 1
                    merge_at.setdefault(end, []).append(state)
                    state = _State(b.false_, dict(state.versions))
            elif isinstance(ins, (g.Skip, g.EndFunction)):
                pass
            else:
                raise AssertionError(f"unhandled instruction {ins!r}")
            pc += 1
        return state

    def _forward_goto(self, ins: g.Goto, frame: "_Frame", state: _State,
                      takes: dict, merge_at: dict) -> _State:
        b = self.builder
        if ins.loop_exit:
            count = takes.get(ins.loop_id, 0)
            if count >= self.k:
                exit_cond = self._term(state, frame, ins.guard)
                if self.config.unwinding_assertions:
                    self._claim(state.guard, exit_cond, "unwinding assertion",
                                g.UNWINDING, ins.loc)
                cut = _State(b.and_(state.guard, exit_cond), dict(state.versions))
                merge_at.setdefault(ins.target, []).append(cut)
                return _State(b.false_, state.versions)
        if ins.guard is None:
            merge_at.setdefault(ins.target, []).append(state)
            return _State(b.false_, dict(state.versions))
        cond = self._term(state, frame, ins.guard)
        if cond is b.true_:
            merge_at.setdefault(ins.target, []).append(state)
            return _State(b.false_, dict(state.versions))
        if cond is b.false_:
            return state
        taken = _State(b.and_(state.guard, cond), dict(state.versions))
        merge_at.setdefault(ins.target, []).append(taken)
        return _State(b.and_(state.guard, b.not_(cond)), state.versions)

    def _merge(self, states: list[_State], loc) -> _State:
        b = self.builder
        live = [s for s in states if s.guard is not b.false_]
        if not live:
            return _State(b.false_, dict(states[-1].versions))
        acc = live[0]
        for other in live[1:]:
            merged_guard = b.or_(acc.guard, other.guard)
            versions: dict[str, int] = {}
            for name in acc.versions.keys() | other.versions.keys():
                va = acc.versions.get(name)
                vb = other.versions.get(name)
                if va == vb or vb is None:
                    versions[name] = va
                elif va is None:
                    versions[name] = vb
                else:
                    sort = self.sorts[name]
                    rhs = b.ite(acc.guard,
                                b.var(name, va, sort),
                                b.var(name, vb, sort))
                    version = self._new_version(name, sort)
                    versions[name] = version
                    lhs = b.var(name, version, sort)
                    self.ssa.equations.append(SsaEquation(
                        merged_guard, lhs, rhs, loc, ORIGIN_PHI))
            acc = _State(merged_guard, versions)
        return acc

    def _claim(self, guard: Term, cond: Term, message: str,
               property_class: str, loc) -> None:
        self.ssa.claims.append(SsaClaim(
            guard, cond, message, property_class, loc,
            position=len(self.ssa.equations)))

    # -- declarations, assignment, calls ------------------------------------

    def _declare(self, state: _State, frame: "_Frame", ins: g.Decl) -> None:
        if isinstance(ins.var_type, ClassType):
            obj = f"{frame.prefix}::{ins.var}"
            for fname, fty in self.program.classes[ins.var_type.name]:
                if isinstance(fty, ArrayType):
                    sort = self._sort_of(fty.elem)
                    for i in range(fty.capacity):
                        self._define(state, f"{obj}.{fname}[{i}]", sort,
                                     self._zero(sort), ins.loc, ORIGIN_INIT)
                else:
                    sort = self._sort_of(fty)
                    self._define(state, f"{obj}.{fname}", sort,
                                 self._zero(sort), ins.loc, ORIGIN_INIT)
            return
        sort = self._sort_of(ins.var_type)
        self._define(state, f"{frame.prefix}::{ins.var}", sort,
                     self._zero(sort), ins.loc, ORIGIN_INIT)

    def _object_of(self, frame: "_Frame", obj: str) -> str:
        return frame.alias.get(obj, f"{frame.prefix}::{obj}")

    def _assign(self, state: _State, frame: "_Frame", target: g.GExpr,
                value: Term, loc, origin: str = ORIGIN_ASSIGNMENT) -> None:
        b = self.builder
        if isinstance(target, g.GVar):
            self._define(state, f"{frame.prefix}::{target.name}",
                         self._sort_of(target.ty), value, loc, origin)
            return
        if isinstance(target, g.GField):
            obj = self._object_of(frame, target.obj)
            self._define(state, f"{obj}.{target.field_name}",
                         self._sort_of(target.ty), value, loc, origin)
            return
        assert isinstance(target, g.GIndex)
        obj = self._object_of(frame, target.obj)
        sort = self._sort_of(target.ty)
        index = self._term(state, frame, target.index)
        base = f"{obj}.{target.field_name}"
        if index.kind == "bv":
            i = index.payload  # already non-negative (unsigned canonical)
            if 0 <= i < target.capacity:
                self._define(state, f"{base}[{i}]", sort, value, loc, origin)
            return  # out of range: bounds claim already raised, write vanishes
        for i in range(target.capacity):
            cell = f"{base}[{i}]"
            old = self._read(state, cell, sort)
            hit = b.eq(index, b.bv_const(self.width, i))
            self._define(state, cell, sort, b.ite(hit, value, old), loc, origin)

    def _call(self, state: _State, frame: "_Frame", ins: g.Call,
              chain: tuple) -> _State:
        b = self.builder
        if chain.count(ins.callee) >= self.k:
            self._claim(state.guard, b.false_, "recursion bound exceeded",
                        g.UNWINDING, ins.loc)
            return _State(b.false_, state.versions)
        args = [self._term(state, frame, a) for a in ins.args]
        receiver_obj = None
        if ins.receiver is not None:
            receiver_obj = self._object_of(frame, ins.receiver)
        marker_scope = f"{ins.callee}@{len(self.ssa.equations)}"
        marker = b.var(f"{marker_scope}::__enter", 0, BOOL_SORT)
        self.ssa.equations.append(SsaEquation(
            state.guard, marker, b.true_, ins.loc, ORIGIN_CALL, note=ins.callee))
        state, ret = self._exec_function(
            ins.callee, args, receiver_obj, state, chain + (ins.callee,),
            ins.loc)
        if ins.result is not None and ret is not None:
            self._assign(state, frame, ins.result, ret, ins.loc)
        return state

    # -- expression translation ---------------------------------------------

    def _term(self, state: _State, frame: "_Frame", e: g.GExpr) -> Term:
        b = self.builder
        if isinstance(e, g.GConst):
            if isinstance(e.ty, BoolType):
                return b.bool_const(bool(e.value))
            return b.bv_const(e.ty.width, e.value)
        if isinstance(e, g.GVar):
            return self._read(state, f"{frame.prefix}::{e.name}",
                              self._sort_of(e.ty))
        if isinstance(e, g.GField):
            obj = self._object_of(frame, e.obj)
            return self._read(state, f"{obj}.{e.field_name}",
                              self._sort_of(e.ty))
        if isinstance(e, g.GIndex):
            return self._read_indexed(state, frame, e)
        if isinstance(e, g.GNondet):
            name = f"nondet{self.nondet_serial}"
            self.nondet_serial += 1
            var = b.var(name, 0, self.bv_sort)
            self.ssa.inputs.append(var)
            return var
        if isinstance(e, g.GUnary):
            operand = self._term(state, frame, e.operand)
            if e.op == "!":
                return b.not_(operand)
            return b.bv_neg(operand)
        if isinstance(e, g.GBinary):
            return self._binary(state, frame, e)
        raise AssertionError(f"unhandled expression {e!r}")

    def _read_indexed(self, state: _State, frame: "_Frame", e: g.GIndex) -> Term:
        b = self.builder
        obj = self._object_of(frame, e.obj)
        sort = self._sort_of(e.ty)
        index = self._term(state, frame, e.index)
        base = f"{obj}.{e.field_name}"
        if index.kind == "bv":
            i = index.payload
            if 0 <= i < e.capacity:
                return self._read(state, f"{base}[{i}]", sort)
            return self._zero(sort)  # unreachable past the bounds claim
        result = self._zero(sort)
        for i in range(e.capacity - 1, -1, -1):
            hit = b.eq(index, b.bv_const(self.width, i))
            result = b.ite(hit, self._read(state, f"{base}[{i}]", sort), result)
        return result

    def _binary(self, state: _State, frame: "_Frame", e: g.GBinary) -> Term:
        b = self.builder
        lhs = self._term(state, frame, e.lhs)
        rhs = self._term(state, frame, e.rhs)
        op = e.op
        if op == "+":
            return b.bv_add(lhs, rhs)
        if op == "-":
            return b.bv_sub(lhs, rhs)
        if op == "*":
            return b.bv_mul(lhs, rhs)
        if op in ("/", "%"):
            quotient, remainder = self._division(lhs, rhs)
            return quotient if op == "/" else remainder
        if op == "<":
            return b.bv_slt(lhs, rhs)
        if op == "<=":
            return b.bv_sle(lhs, rhs)
        if op == ">":
            return b.bv_slt(rhs, lhs)
        if op == ">=":
            return b.bv_sle(rhs, lhs)
        if op == "==":
            return b.eq(lhs, rhs)
        if op == "!=":
            return b.not_(b.eq(lhs, rhs))
        if op == "&&":
            return b.and_(lhs, rhs)
        if op == "||":
            return b.or_(lhs, rhs)
        raise AssertionError(f"unhandled operator {op}")

    def _division(self, a: Term, bterm: Term) -> tuple[Term, Term]:
        """C-style truncating division via fresh variables and axioms.

        When both operands are constant this folds without touching the
        solver.  Division by zero is pinned to quotient 0 and remainder a,
        matching the concrete interpreter.
        """
        b = self.builder
        w = a.sort.width
        if a.kind == "bv" and bterm.kind == "bv":
            q, r = divmod_trunc(to_signed(a.payload, w), to_signed(bterm.payload, w))
            return b.bv_const(w, q), b.bv_const(w, r)
        serial = self.div_serial
        self.div_serial += 1
        sort = BvSort(w)
        q = b.var(f"__div{serial}", 0, sort)
        r = b.var(f"__rem{serial}", 0, sort)
        zero = b.bv_const(w, 0)
        nonzero = b.not_(b.eq(bterm, zero))
        abs_r = b.ite(b.bv_slt(r, zero), b.bv_neg(r), r)
        abs_b = b.ite(b.bv_slt(bterm, zero), b.bv_neg(bterm), bterm)
        exact = b.eq(a, b.bv_add(b.bv_mul(q, bterm), r))
        sign_ok = b.or_(b.eq(r, zero),
                        b.eq(b.bv_slt(r, zero), b.bv_slt(a, zero)))
        small = b.bv_ult(abs_r, abs_b)
        self.ssa.constraints.append(
            b.implies(nonzero, b.conj([exact, sign_ok, small])))
        self.ssa.constraints.append(
            b.implies(b.eq(bterm, zero),
                      b.and_(b.eq(q, zero), b.eq(r, a))))
        return q, r


@dataclass
class _Frame:
    prefix: str
    alias: dict[str, str]

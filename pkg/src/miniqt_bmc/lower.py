"""Lowering from the typed AST to GOTO-programs.

`while (c) S` turns into a guarded exit jump, the body, and an
unconditional backedge; `for` desugars to `while` with the step appended
to the body; `if` becomes guarded jumps with a SKIP join point.  Calls in
expressions are hoisted into CALL instructions on temporaries, and every
array access is preceded by an automatic bounds assertion.  `&&`/`||`
whose right operand can call a method are lowered short-circuit, so a
guarded `l.front()` precondition is only checked when actually reached.
"""

from __future__ import annotations

from . import ast_nodes as ast
from . import goto_ir as g
from .semtypes import BOOL, VOID, ArrayType, BoolType, ClassType, IntType, SemType
from .source import SourceLocation
from .typecheck import TypedAst


def lower_to_goto(tast: TypedAst) -> g.GotoProgram:
    """Lower every function and method of a fully typed program."""
    functions: dict[str, g.GotoFunction] = {}
    layouts: dict[str, list[tuple[str, SemType]]] = {}
    for cls in tast.classes.values():
        layouts[cls.name] = list(cls.fields.items())
        this_param = ("this", ClassType(cls.name))
        members = list(cls.methods.values())
        if cls.ctor is not None:
            members.append(cls.ctor)
        for m in members:
            lowerer = _FunctionLowerer(tast)
            fn = lowerer.lower(
                m.mangled,
                m.decl.params,
                m.param_types,
                m.return_type,
                m.decl.body,
                extra_params=[this_param],
            )
            functions[m.mangled] = fn
    for info in tast.functions.values():
        lowerer = _FunctionLowerer(tast)
        functions[info.name] = lowerer.lower(
            info.name, info.decl.params, info.param_types,
            info.return_type, info.decl.body,
        )
    return g.GotoProgram(functions, "main", layouts, tast.int_type.width)


class _FunctionLowerer:
    def __init__(self, tast: TypedAst):
        self.tast = tast
        self.int_type = tast.int_type
        self.instrs: list[g.Instruction] = []
        self.names: dict[int, str] = {}  # id(decl node) -> goto name
        self.used: set[str] = set()
        self.temps = 0
        self.loop_count = 0
        self.loops: dict[int, tuple[int, int]] = {}

    def lower(self, name, params, param_types, return_type, body,
              extra_params=()) -> g.GotoFunction:
        goto_params = list(extra_params)
        for p, ty in zip(params, param_types):
            goto_params.append((self._alloc(p), ty))
        self._block(body)
        if return_type != VOID:
            # Falling off the end of a non-void function yields a default value.
            default = g.GConst(return_type, 0)
            self.instrs.append(g.Return(body.loc, default))
        self.instrs.append(g.EndFunction(body.loc))
        return g.GotoFunction(name, goto_params, return_type, self.instrs, self.loops)

    # -- helpers ---------------------------------------------------------

    def _alloc(self, decl) -> str:
        base = decl.name
        candidate = base
        serial = 0
        while candidate in self.used:
            serial += 1
            candidate = f"{base}${serial}"
        self.used.add(candidate)
        self.names[id(decl)] = candidate
        return candidate

    def _temp(self, ty: SemType, loc: SourceLocation) -> g.GVar:
        name = f"__t{self.temps}"
        self.temps += 1
        self.used.add(name)
        self.instrs.append(g.Decl(loc, name, ty))
        return g.GVar(ty, name)

    def _emit(self, ins: g.Instruction) -> int:
        self.instrs.append(ins)
        return len(self.instrs) - 1

    @staticmethod
    def _negate(cond: g.GExpr) -> g.GExpr:
        return g.GUnary(BOOL, "!", cond)

    def _object_name(self, receiver: ast.Expr) -> str:
        if isinstance(receiver, ast.ThisRef):
            return "this"
        assert isinstance(receiver, ast.VarRef) and receiver.binding == "local"
        return self.names[id(receiver.decl)]

    # -- statements --------------------------------------------------------

    def _block(self, block: ast.Block) -> None:
        for stmt in block.stmts:
            self._stmt(stmt)

    def _stmt(self, stmt: ast.Stmt) -> None:
        if isinstance(stmt, ast.Block):
            self._block(stmt)
        elif isinstance(stmt, ast.VarDeclStmt):
            self._var_decl(stmt)
        elif isinstance(stmt, ast.AssignStmt):
            self._assign(stmt.target, stmt.value, stmt.loc)
        elif isinstance(stmt, ast.IfStmt):
            self._if(stmt)
        elif isinstance(stmt, ast.WhileStmt):
            self._loop(stmt.cond, stmt.body, None, stmt.loc)
        elif isinstance(stmt, ast.ForStmt):
            if stmt.init is not None:
                self._stmt(stmt.init)
            cond = stmt.cond if stmt.cond is not None else ast.BoolLit(stmt.loc, True)
            if cond.ty is None:
                cond.ty = BOOL
            self._loop(cond, stmt.body, stmt.step, stmt.loc)
        elif isinstance(stmt, ast.ExprStmt):
            if isinstance(stmt.expr, ast.Call) and stmt.expr.mangled is not None:
                self._emit_call(stmt.expr, result=None)
            else:
                self._expr(stmt.expr)  # still emits bounds asserts etc.
        elif isinstance(stmt, ast.AssertStmt):
            cond = self._expr(stmt.cond)
            self._emit(g.Assert(stmt.loc, cond, f"assertion {stmt.text}",
                                g.USER_ASSERTION))
        elif isinstance(stmt, ast.VerifierAssertStmt):
            cond = self._expr(stmt.cond)
            self._emit(g.Assert(stmt.loc, cond, stmt.message,
                                g.MODEL_PRECONDITION))
        elif isinstance(stmt, ast.ReturnStmt):
            value = self._expr(stmt.value) if stmt.value is not None else None
            self._emit(g.Return(stmt.loc, value))
        else:
            raise AssertionError(f"unhandled statement {stmt!r}")

    def _var_decl(self, stmt: ast.VarDeclStmt) -> None:
        name = self._alloc(stmt)
        sem = self._decl_type(stmt)
        self._emit(g.Decl(stmt.loc, name, sem))
        if isinstance(sem, ClassType):
            ctor = self.tast.classes[sem.name].ctor
            if ctor is not None:
                self._emit(g.Call(stmt.loc, None, ctor.mangled, [], name))
            return
        if stmt.init is not None:
            self._assign_into(g.GVar(sem, name), stmt.init, stmt.loc)

    def _decl_type(self, stmt: ast.VarDeclStmt) -> SemType:
        ref = stmt.type_ref
        if ref.name == "int":
            return self.int_type
        if ref.name == "bool":
            return BOOL
        if ref.arg is not None:
            return ClassType(f"{ref.name}_int")
        return ClassType(ref.name)

    def _assign(self, target: ast.Expr, value: ast.Expr, loc) -> None:
        lhs = self._lvalue(target)
        self._assign_into(lhs, value, loc)

    def _assign_into(self, lhs: g.GExpr, value: ast.Expr, loc) -> None:
        # Direct forms keep counterexample steps readable: calls and nondet
        # land straight in the target instead of an extra temporary.
        if isinstance(value, ast.Call) and value.mangled is not None:
            self._emit_call(value, result=lhs)
            return
        if isinstance(value, ast.Call) and value.name == "nondet_int":
            self._emit(g.Assign(loc, lhs, g.GNondet(self.int_type)))
            return
        rhs = self._expr(value)
        self._emit(g.Assign(loc, lhs, rhs))

    def _lvalue(self, target: ast.Expr) -> g.GExpr:
        if isinstance(target, ast.VarRef):
            if target.binding == "local":
                return g.GVar(target.ty, self.names[id(target.decl)])
            return g.GField(target.ty, "this", target.name)
        if isinstance(target, ast.FieldAccess):
            obj = self._object_name(target.receiver)
            return g.GField(target.ty, obj, target.field_name)
        if isinstance(target, ast.IndexExpr):
            return self._indexed(target)
        raise AssertionError(f"not an lvalue: {target!r}")

    def _indexed(self, e: ast.IndexExpr) -> g.GIndex:
        base = e.base
        if isinstance(base, ast.VarRef):  # bare field name inside a method
            obj, fname, arr = "this", base.name, base.ty
        else:
            assert isinstance(base, ast.FieldAccess)
            obj = self._object_name(base.receiver)
            fname, arr = base.field_name, base.ty
        assert isinstance(arr, ArrayType)
        idx = self._expr(e.index)
        zero = g.GConst(self.int_type, 0)
        cap = g.GConst(self.int_type, arr.capacity)
        in_bounds = g.GBinary(
            BOOL, "&&",
            g.GBinary(BOOL, "<=", zero, idx),
            g.GBinary(BOOL, "<", idx, cap),
        )
        self._emit(g.Assert(e.loc, in_bounds, "array bounds violated",
                            g.ARRAY_BOUNDS))
        return g.GIndex(arr.elem, obj, fname, idx, arr.capacity)

    def _if(self, stmt: ast.IfStmt) -> None:
        cond = self._expr(stmt.cond)
        skip_then = self._emit(g.Goto(stmt.loc, -1, self._negate(cond)))
        self._block(stmt.then_body)
        if stmt.else_body is not None:
            skip_else = self._emit(g.Goto(stmt.loc, -1, None))
            self.instrs[skip_then].target = len(self.instrs)
            self._block(stmt.else_body)
            self.instrs[skip_else].target = len(self.instrs)
        else:
            self.instrs[skip_then].target = len(self.instrs)
        self._emit(g.Skip(stmt.loc))

    def _loop(self, cond: ast.Expr, body: ast.Block,
              step: ast.Stmt | None, loc) -> None:
        loop_id = self.loop_count
        self.loop_count += 1
        head = len(self.instrs)
        guard = self._expr(cond)  # condition code re-runs on every iteration
        exit_idx = self._emit(g.Goto(loc, -1, self._negate(guard),
                                     loop_id=loop_id, loop_exit=True))
        self._block(body)
        if step is not None:
            self._stmt(step)
        backedge_idx = self._emit(g.Goto(loc, head, None,
                                         loop_id=loop_id, backedge=True))
        self.instrs[exit_idx].target = len(self.instrs)
        self._emit(g.Skip(loc))
        self.loops[loop_id] = (head, backedge_idx)

    # -- expressions ---------------------------------------------------------

    def _has_effects(self, e: ast.Expr) -> bool:
        return any(isinstance(n, ast.Call) for n in ast.iter_nodes(e))

    def _expr(self, e: ast.Expr) -> g.GExpr:
        if isinstance(e, ast.IntLit):
            return g.GConst(e.ty, e.value)
        if isinstance(e, ast.BoolLit):
            return g.GConst(BOOL, 1 if e.value else 0)
        if isinstance(e, ast.VarRef):
            if e.binding == "local":
                return g.GVar(e.ty, self.names[id(e.decl)])
            return g.GField(e.ty, "this", e.name)
        if isinstance(e, ast.FieldAccess):
            obj = self._object_name(e.receiver)
            return g.GField(e.ty, obj, e.field_name)
        if isinstance(e, ast.IndexExpr):
            return self._indexed(e)
        if isinstance(e, ast.UnaryOp):
            return g.GUnary(e.ty, e.op, self._expr(e.operand))
        if isinstance(e, ast.BinOp):
            if e.op in ("&&", "||") and self._has_effects(e.rhs):
                return self._short_circuit(e)
            return g.GBinary(e.ty, e.op, self._expr(e.lhs), self._expr(e.rhs))
        if isinstance(e, ast.Call):
            if e.mangled is None:  # nondet_int()
                tmp = self._temp(self.int_type, e.loc)
                self._emit(g.Assign(e.loc, tmp, g.GNondet(self.int_type)))
                return tmp
            assert e.ty != VOID, "void call used as a value"
            tmp = self._temp(e.ty, e.loc)
            self._emit_call(e, result=tmp)
            return tmp
        raise AssertionError(f"unhandled expression {e!r}")

    def _short_circuit(self, e: ast.BinOp) -> g.GExpr:
        tmp = self._temp(BOOL, e.loc)
        lhs = self._expr(e.lhs)
        self._emit(g.Assign(e.loc, tmp, lhs))
        if e.op == "&&":
            skip = self._emit(g.Goto(e.loc, -1, self._negate(tmp)))
        else:
            skip = self._emit(g.Goto(e.loc, -1, tmp))
        rhs = self._expr(e.rhs)
        self._emit(g.Assign(e.loc, tmp, rhs))
        self.instrs[skip].target = len(self.instrs)
        self._emit(g.Skip(e.loc))
        return tmp

    def _emit_call(self, e: ast.Call, result: g.GExpr | None) -> None:
        receiver = None
        if "::" in e.mangled:
            receiver = "this" if e.receiver is None else self._object_name(e.receiver)
        args = [self._expr(a) for a in e.args]
        self._emit(g.Call(e.loc, result, e.mangled, args, receiver))

import pytest

from miniqt_bmc import VerifierConfig, resolve_includes, typecheck
from miniqt_bmc import ast_nodes as ast
from miniqt_bmc.errors import TypeCheckError, UndefinedSymbol
from miniqt_bmc.lexer import tokenize
from miniqt_bmc.parser import parse
from miniqt_bmc.semtypes import BOOL, ArrayType, BoolType, ClassType, IntType


def check(src: str, config: VerifierConfig | None = None):
    config = config or VerifierConfig()
    program = parse(tokenize(src, "t.cpp"), "t.cpp")
    program = resolve_includes(program, config)
    return typecheck(program, config)


def test_fig3_receiver_is_monomorphized(cfg):
    typed = check(
        "#include <QList>\n"
        "int main() { QList<int> l; l.push_front(300); return 0; }",
        cfg,
    )
    assert "QList_int" in typed.classes
    call = typed.main.decl.body.stmts[1].expr
    assert call.mangled == "QList_int::push_front/1"
    assert call.receiver.ty == ClassType("QList_int")


def test_no_generic_parameters_survive(cfg):
    typed = check(
        "#include <QList>\nint main() { QList<int> l; return 0; }", cfg
    )
    for cls in typed.program.classes:
        assert cls.type_param is None
        for node in ast.iter_nodes(cls):
            if isinstance(node, ast.TypeRef):
                assert node.arg is None


def test_int_plus_bool_rejected():
    with pytest.raises(TypeCheckError):
        check("int main() { bool b = 3 + true; return 0; }")


def test_undefined_symbol():
    with pytest.raises(UndefinedSymbol) as err:
        check("int main() { x = 1; return 0; }")
    assert err.value.name == "x"


def test_main_required_and_parameterless():
    with pytest.raises(TypeCheckError):
        check("int helper() { return 0; }")
    with pytest.raises(TypeCheckError):
        check("int main(int argc) { return 0; }")


def test_duplicate_declarations_rejected():
    with pytest.raises(TypeCheckError):
        check("class A { int x; };\nclass A { int y; };\n"
              "int main() { return 0; }")
    with pytest.raises(TypeCheckError):
        check("int main() { return 0; }\nint main() { return 0; }")


def test_condition_coercion_int_to_bool():
    typed = check("int main() { while (1) { return 0; } return 0; }")
    loop = typed.main.decl.body.stmts[0]
    assert isinstance(loop.cond, ast.BinOp) and loop.cond.op == "!="
    assert loop.cond.ty == BOOL


def test_bool_condition_untouched():
    typed = check("int main() { if (true) { return 1; } return 0; }")
    cond = typed.main.decl.body.stmts[0].cond
    assert isinstance(cond, ast.BoolLit)


def test_this_and_bare_field_agree():
    typed = check(
        "class C { int v; void set(int x) { v = x; this->v = x; } };\n"
        "int main() { C c; c.set(3); return 0; }"
    )
    body = typed.classes["C"].methods[("set", 1)].decl.body.stmts
    bare = body[0].target
    arrow = body[1].target
    assert isinstance(bare, ast.VarRef) and bare.binding == "field"
    assert isinstance(arrow, ast.FieldAccess)
    assert bare.ty == arrow.ty == IntType(32)


def test_overload_resolution_by_arity(cfg):
    typed = check(
        "#include <QTimer>\n"
        "int main() { QTimer t; t.start(); t.start(5); return 0; }",
        cfg,
    )
    stmts = typed.main.decl.body.stmts
    assert stmts[1].expr.mangled == "QTimer::start/0"
    assert stmts[2].expr.mangled == "QTimer::start/1"


def test_magic_capacity_resolves_from_config():
    config = VerifierConfig(container_capacity=7)
    typed = check(
        "class Buf { int data[__CONTAINER_CAPACITY__]; };\n"
        "int main() { return 0; }",
        config,
    )
    assert typed.classes["Buf"].fields["data"] == ArrayType(IntType(32), 7)


def test_literal_out_of_width_range():
    narrow = VerifierConfig(int_width=4)
    check("int main() { int x = 7; x = -8; return 0; }", narrow)
    with pytest.raises(TypeCheckError):
        check("int main() { int x = 8; return 0; }", narrow)


def test_verifier_assert_requires_bool():
    with pytest.raises(TypeCheckError):
        check('int main() { __VERIFIER_assert(1 + 1, "nope"); return 0; }')


def test_only_int_instantiation_supported(cfg):
    with pytest.raises(TypeCheckError):
        check("#include <QList>\nint main() { QList<bool> l; return 0; }", cfg)


def test_class_typed_fields_rejected():
    with pytest.raises(TypeCheckError):
        check("class A { int x; };\nclass B { A inner; };\n"
              "int main() { return 0; }")


def test_object_assignment_rejected():
    with pytest.raises(TypeCheckError):
        check(
            "class A { int x; };\n"
            "int main() { A a; A b; a = b; return 0; }"
        )


def test_nondet_int_types_as_int():
    typed = check("int main() { int x = nondet_int(); return x; }")
    init = typed.main.decl.body.stmts[0].init
    assert init.ty == IntType(32)
    with pytest.raises(TypeCheckError):
        check("int main() { int x = nondet_int(5); return 0; }")


def test_return_type_discipline():
    with pytest.raises(TypeCheckError):
        check("void f() { return 3; }\nint main() { return 0; }")
    with pytest.raises(TypeCheckError):
        check("int f() { return; }\nint main() { return 0; }")


def test_sequential_for_loops_may_reuse_counter_names():
    check(
        "int main() {\n"
        "    int s = 0;\n"
        "    for (int i = 0; i < 2; i++) { s = s + i; }\n"
        "    for (int i = 0; i < 2; i++) { s = s + i; }\n"
        "    return 0;\n"
        "}"
    )

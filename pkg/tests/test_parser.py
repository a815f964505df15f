import pytest

from miniqt_bmc import ast_nodes as ast
from miniqt_bmc.ast_nodes import structurally_equal, to_source
from miniqt_bmc.errors import ParseError
from miniqt_bmc.lexer import tokenize
from miniqt_bmc.parser import parse

from conftest import MODELS_DIR, corpus_files, read


def parse_src(src: str) -> ast.Program:
    return parse(tokenize(src, "t.cpp"), "t.cpp")


def parse_stmt(src: str) -> ast.Stmt:
    program = parse_src(f"void f() {{ {src} }}")
    return program.functions[0].body.stmts[0]


def test_fig3_assert_shape():
    stmt = parse_stmt("assert(mylist.front() == 300);")
    assert isinstance(stmt, ast.AssertStmt)
    cond = stmt.cond
    assert isinstance(cond, ast.BinOp) and cond.op == "=="
    assert isinstance(cond.lhs, ast.Call)
    assert isinstance(cond.lhs.receiver, ast.VarRef)
    assert cond.lhs.receiver.name == "mylist"
    assert cond.lhs.name == "front" and cond.lhs.args == []
    assert isinstance(cond.rhs, ast.IntLit) and cond.rhs.value == 300


def test_minimal_while():
    stmt = parse_stmt("while (1) {}")
    assert isinstance(stmt, ast.WhileStmt)
    assert isinstance(stmt.cond, ast.IntLit) and stmt.cond.value == 1
    assert stmt.body.stmts == []


def test_truncated_input_reports_end_of_input():
    with pytest.raises(ParseError) as err:
        parse_src("void f() { if (x >")
    assert err.value.found == "end-of-input"
    assert "expression" in err.value.expected


def test_operator_precedence_tower():
    expr = parse_stmt("x = 1 + 2 * 3;").value
    assert expr.op == "+"
    assert expr.rhs.op == "*"
    expr = parse_stmt("b = !p && q || r;").value
    assert expr.op == "||"
    assert expr.lhs.op == "&&"
    assert isinstance(expr.lhs.lhs, ast.UnaryOp)
    expr = parse_stmt("b = 1 + 2 < 3 - 4;").value
    assert expr.op == "<"
    assert expr.lhs.op == "+" and expr.rhs.op == "-"


def test_comparison_is_left_associative():
    expr = parse_stmt("x = a - b - c;").value
    assert expr.op == "-"
    assert expr.lhs.op == "-"
    assert isinstance(expr.rhs, ast.VarRef) and expr.rhs.name == "c"


def test_unary_minus_folds_into_literal():
    expr = parse_stmt("x = -8;").value
    assert isinstance(expr, ast.IntLit) and expr.value == -8
    expr = parse_stmt("x = - -8;").value
    assert isinstance(expr, ast.IntLit) and expr.value == 8


def test_increment_decrement_desugar():
    stmt = parse_stmt("i++;")
    assert isinstance(stmt, ast.AssignStmt)
    assert stmt.value.op == "+" and stmt.value.rhs.value == 1
    stmt = parse_stmt("i--;")
    assert stmt.value.op == "-"


def test_for_loop_parts():
    stmt = parse_stmt("for (int i = 0; i < 3; i++) { x = i; }")
    assert isinstance(stmt, ast.ForStmt)
    assert isinstance(stmt.init, ast.VarDeclStmt)
    assert isinstance(stmt.cond, ast.BinOp)
    assert isinstance(stmt.step, ast.AssignStmt)


def test_template_class_and_include():
    program = parse_src(
        "#include <QList>\n"
        "template<class T> class Box { T item; T get() { return item; } };\n"
        "int main() { return 0; }"
    )
    assert program.includes[0].name == "QList"
    cls = program.classes[0]
    assert cls.type_param == "T"
    assert cls.fields[0].name == "item"
    assert cls.methods[0].name == "get"


def test_constructor_member():
    program = parse_src("class C { int v; C() { v = 0; } };")
    ctor = program.classes[0].methods[0]
    assert ctor.is_ctor and ctor.return_type is None


def test_field_array_capacity_forms():
    program = parse_src(
        "class C { int a[4]; int b[__CONTAINER_CAPACITY__]; };"
    )
    fields = program.classes[0].fields
    assert fields[0].array_size == 4
    assert fields[1].array_size == "__CONTAINER_CAPACITY__"


def test_verifier_assert_statement():
    stmt = parse_stmt('__VERIFIER_assert(x > 0, "must be positive");')
    assert isinstance(stmt, ast.VerifierAssertStmt)
    assert stmt.message == "must be positive"


def test_declaration_vs_expression_disambiguation():
    decl = parse_stmt("QList<int> l;")
    assert isinstance(decl, ast.VarDeclStmt)
    assert decl.type_ref.name == "QList" and decl.type_ref.arg.name == "int"
    cmp_stmt = parse_stmt("b = a < b;")
    assert isinstance(cmp_stmt.value, ast.BinOp)


def test_assignment_needs_lvalue():
    with pytest.raises(ParseError):
        parse_stmt("f() = 3;")


@pytest.mark.parametrize("path", corpus_files() + sorted(MODELS_DIR.glob("*.mqt")),
                         ids=lambda p: p.name)
def test_print_reparse_roundtrip(path):
    source = read(path)
    first = parse(tokenize(source, str(path)), str(path))
    printed = to_source(first)
    second = parse(tokenize(printed, "printed"), "printed")
    assert structurally_equal(first, second)

import pytest

from miniqt_bmc.errors import SortError
from miniqt_bmc.terms import (
    BOOL_SORT,
    BvSort,
    TermBuilder,
    VarId,
    evaluate,
    to_signed,
    to_str,
    to_unsigned,
)


@pytest.fixture
def b():
    return TermBuilder()


def bv4(b, v):
    return b.bv_const(4, v)


def test_interning_gives_identity(b):
    x1 = b.var("x", 1, BvSort(4))
    x1_again = b.var("x", 1, BvSort(4))
    assert x1 is x1_again
    assert b.bv_add(x1, bv4(b, 1)) is b.bv_add(x1, bv4(b, 1))


def test_constant_folding_arithmetic(b):
    assert b.bv_add(bv4(b, 2), bv4(b, 3)).payload == 5
    assert b.bv_add(bv4(b, 9), bv4(b, 9)).payload == 2  # wraps mod 16
    assert b.bv_sub(bv4(b, 2), bv4(b, 3)).payload == to_unsigned(-1, 4)
    assert b.bv_mul(bv4(b, 5), bv4(b, 5)).payload == 9
    assert b.bv_neg(bv4(b, 1)).payload == 15


def test_identity_simplifications(b):
    x = b.var("x", 0, BvSort(4))
    assert b.bv_add(x, bv4(b, 0)) is x
    assert b.bv_mul(bv4(b, 1), x) is x
    assert b.bv_mul(x, bv4(b, 0)).payload == 0
    assert b.bv_sub(x, x).payload == 0
    assert b.bv_neg(b.bv_neg(x)) is x


def test_boolean_folding(b):
    p = b.var("p", 0, BOOL_SORT)
    assert b.and_(b.true_, p) is p
    assert b.and_(p, b.false_) is b.false_
    assert b.or_(p, b.true_) is b.true_
    assert b.not_(b.not_(p)) is p
    assert b.and_(p, b.not_(p)) is b.false_
    assert b.or_(p, b.not_(p)) is b.true_
    assert b.implies(b.false_, p) is b.true_


def test_comparison_folding_is_signed(b):
    assert b.bv_slt(bv4(b, 15), bv4(b, 0)) is b.true_  # 15 is -1 in 4 bits
    assert b.bv_sle(bv4(b, 7), bv4(b, 8)) is b.false_  # 8 is -8
    x = b.var("x", 0, BvSort(4))
    assert b.bv_slt(x, x) is b.false_
    assert b.bv_sle(x, x) is b.true_


def test_eq_and_ite_folding(b):
    x = b.var("x", 0, BvSort(4))
    p = b.var("p", 0, BOOL_SORT)
    assert b.eq(x, x) is b.true_
    assert b.eq(bv4(b, 3), bv4(b, 4)) is b.false_
    assert b.eq(p, b.true_) is p
    assert b.eq(p, b.false_).kind == "not"
    assert b.ite(b.true_, x, bv4(b, 0)) is x
    assert b.ite(p, x, x) is x
    assert b.ite(p, b.true_, b.false_) is p


def test_sort_errors(b):
    x = b.var("x", 0, BvSort(4))
    y = b.var("y", 0, BvSort(8))
    p = b.var("p", 0, BOOL_SORT)
    with pytest.raises(SortError):
        b.bv_add(x, y)
    with pytest.raises(SortError):
        b.and_(x, p)
    with pytest.raises(SortError):
        b.eq(x, p)
    with pytest.raises(SortError):
        b.ite(p, x, y)
    with pytest.raises(SortError):
        b.bv_slt(p, p)


def test_evaluate_matches_semantics(b):
    x = b.var("x", 0, BvSort(4))
    y = b.var("y", 0, BvSort(4))
    expr = b.bv_add(b.bv_mul(x, y), b.bv_const(4, 3))
    env = {VarId("x", 0): to_unsigned(-2, 4), VarId("y", 0): 5}
    # (-2 * 5 + 3) wrapped to 4 bits = -7
    assert to_signed(evaluate(expr, env), 4) == -7
    cmp = b.bv_slt(x, y)
    assert evaluate(cmp, env) is True


def test_evaluate_defaults_missing_vars(b):
    x = b.var("x", 0, BvSort(4))
    assert evaluate(x, {}) == 0


def test_signed_unsigned_rendering(b):
    assert to_signed(15, 4) == -1
    assert to_unsigned(-1, 4) == 15
    term = b.bv_add(b.var("x", 2, BvSort(4)), b.bv_const(4, 15))
    assert to_str(term) == "(x#2 + -1)"


def test_unsigned_compare_via_sign_flip(b):
    one = bv4(b, 1)
    minus_one = bv4(b, 15)
    assert b.bv_ult(one, minus_one) is b.true_  # 1 <u 15
    assert b.bv_ult(minus_one, one) is b.false_

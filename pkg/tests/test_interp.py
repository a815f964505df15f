import pytest

from miniqt_bmc import VerifierConfig, concrete_interpret
from miniqt_bmc.errors import NondetUnderflow
from miniqt_bmc.interp import divmod_trunc, wrap
from miniqt_bmc.verify import build_goto

from conftest import read, BENCH_DIR


def run(src: str, nondet=(), cfg: VerifierConfig | None = None, **kw):
    config = cfg or VerifierConfig()
    return concrete_interpret(build_goto(src, "t.cpp", config), list(nondet), **kw)


def test_fig3_completes(cfg):
    trace = concrete_interpret(
        build_goto(read(BENCH_DIR / "qlist" / "fig3.cpp"), "fig3.cpp", cfg), []
    )
    assert trace.verdict.kind == "completed"


def test_empty_front_violates_model_precondition(cfg):
    trace = run("#include <QList>\nint main() { QList<int> l; l.front(); return 0; }",
                cfg=cfg)
    assert trace.verdict.kind == "assertion-violated"
    assert trace.verdict.message == "The list must not be empty"
    assert trace.verdict.loc.file.endswith("QList.mqt")


def test_infinite_loop_hits_step_limit():
    trace = run("int main() { while (1) { } return 0; }", step_limit=1000)
    assert trace.verdict.kind == "step-limit"


def test_nondet_underflow():
    with pytest.raises(NondetUnderflow):
        run("int main() { int a = nondet_int(); int b = nondet_int(); return 0; }",
            nondet=[5])


def test_nondet_values_consumed_in_order():
    trace = run(
        "int main() { int a = nondet_int(); int b = nondet_int();\n"
        "assert(a == 3); assert(b == 4); return 0; }",
        nondet=[3, 4],
    )
    assert trace.verdict.kind == "completed"


def test_first_failed_assert_wins():
    trace = run("int main() { assert(1 == 2); assert(2 == 3); return 0; }")
    assert trace.verdict.message == "assertion 1 == 2"


def test_wrapping_arithmetic():
    assert wrap(2**31, 32) == -(2**31)
    assert wrap(-(2**31) - 1, 32) == 2**31 - 1
    assert wrap(7, 4) == 7
    assert wrap(8, 4) == -8
    trace = run("int main() { int x = 2147483647; x = x + 1;\n"
                "assert(x == -2147483647 - 1); return 0; }")
    assert trace.verdict.kind == "completed"


@pytest.mark.parametrize("a,b,q,r", [
    (7, 2, 3, 1), (-7, 2, -3, -1), (7, -2, -3, 1), (-7, -2, 3, -1),
    (5, 0, 0, 5), (-5, 0, 0, -5), (0, 3, 0, 0),
])
def test_division_truncates_toward_zero(a, b, q, r):
    assert divmod_trunc(a, b) == (q, r)


def test_objects_alias_through_method_calls(cfg):
    trace = run(
        "#include <QList>\n"
        "int main() { QList<int> l; l.push_back(9);\n"
        "assert(l.size() == 1); assert(l.front() == 9); return 0; }",
        cfg=cfg,
    )
    assert trace.verdict.kind == "completed"


def test_trace_records_steps(cfg):
    trace = run("int main() { int x = 5; assert(x == 5); return 0; }",
                record_steps=True)
    kinds = [s.kind for s in trace.steps]
    assert "assignment" in kinds and "assertion-check" in kinds


def test_final_store_scalars_only(cfg):
    trace = run("#include <QList>\nint main() { QList<int> l; int n = 2; return 0; }",
                cfg=cfg)
    assert trace.final_store.get("n") == 2
    assert all(isinstance(v, int) for v in trace.final_store.values())


def test_deterministic_given_inputs():
    src = ("int main() { int x = nondet_int(); int y = x * 3 - 1;\n"
           "assert(y != 11); return 0; }")
    first = run(src, nondet=[4], record_steps=True)
    second = run(src, nondet=[4], record_steps=True)
    assert first.verdict == second.verdict
    assert [(s.kind, s.name, s.value) for s in first.steps] == \
           [(s.kind, s.name, s.value) for s in second.steps]

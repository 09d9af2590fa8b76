import pytest
from hypothesis import given, settings, strategies as st

from scalewise import Transformation, point
from scalewise.errors import MeasureError
from scalewise.fuzz import Generator, registry as fuzz_registry
from scalewise.lang import infer_sort, parse_program, print_expr
from scalewise.meaning import (
    INDETERMINATE, MEANINGFUL, NOT_MEANINGFUL, _raw_value, check_meaningful, check_trial,
    deviation, replay, survey_program,
)

from conftest import TEMPS, build_registry

REG = build_registry()
S = REG.scale("s")
TIME = REG.family("time")
POINTS = {"t1": point(10, S), "t2": point(20, S), "t3": point(35, S)}


def test_deviation_floor():
    assert deviation(2.0, 1.0) == 1.0
    assert deviation(1e-9, 0.0) == pytest.approx(1e-6)


def test_typed_ratio_of_differences_cancels():
    ts = {"time": Transformation(-37.5, 4.25, TIME)}
    assert check_trial("(t2 - t1) / (t3 - t1)", POINTS, ts, REG) == pytest.approx(0, abs=1e-15)


def test_raw_point_ratio_deviation():
    ts = {"time": Transformation(30, 1, TIME)}
    assert check_trial("t1 / t2", POINTS, ts, REG, mode="raw") == pytest.approx(0.6)


def test_scalar_expression_is_invariant():
    ts = {"time": Transformation(5, 3, TIME)}
    assert check_trial("2 + 3", {}, ts, REG) == 0


def test_raw_point_ratio_not_meaningful():
    v = check_meaningful("t1 / t2", POINTS, REG, n_trials=50, seed=0, mode="raw")
    assert v.status == NOT_MEANINGFUL and v.witness is not None
    assert v.witness.deviation > 1e-6


def test_mean_as_mix_meaningful():
    v = check_meaningful("mix(1/3: t1, 1/3: t2, 1/3: t3)", POINTS, REG, n_trials=100)
    assert v.status == MEANINGFUL and v.trials == 100


def test_constant_meaningful():
    assert check_meaningful("0", {}, REG, n_trials=7).status == MEANINGFUL


def test_bad_arguments():
    with pytest.raises(ValueError):
        check_meaningful("0", {}, REG, n_trials=0)
    with pytest.raises(ValueError):
        check_meaningful("0", {}, REG, mode="loose")


def test_indeterminate_when_every_trial_fails(monkeypatch):
    import scalewise.meaning as m
    # every trial shifts the point onto zero, so the raw denominator vanishes
    monkeypatch.setattr(m, "trial_transformations",
                        lambda fams, seed, i: {"time": Transformation(-10, 1, TIME)})
    v = check_meaningful("1 / a", {"a": point(10, S)}, REG, n_trials=5, mode="raw")
    assert (v.status, v.trials, v.witness) == (INDETERMINATE, 0, None)


def test_untransformed_failure_propagates():
    with pytest.raises(MeasureError) as info:
        check_meaningful("1 / (a - a)", {"a": point(3, S)}, REG, n_trials=5)
    assert info.value.code == "E_DIV_ZERO"


def test_determinism_and_replay():
    a = check_meaningful("t1 / t2", POINTS, REG, n_trials=50, seed=9, mode="raw")
    b = check_meaningful("t1 / t2", POINTS, REG, n_trials=50, seed=9, mode="raw")
    assert a == b
    assert replay(a.witness, "t1 / t2", POINTS, REG, mode="raw") == pytest.approx(
        a.witness.deviation, rel=1e-12)


def test_witness_json():
    v = check_meaningful("t1 / t2", POINTS, REG, n_trials=50, mode="raw")
    d = v.witness.to_json()
    assert d["family"] == "time" and {"p", "q", "y", "y_transformed", "deviation"} <= set(d)


def test_survey_program():
    src = TEMPS + "let t1 = 10 @C\nlet t2 = 20 @C\ncheck t1 / t2\ncheck t2 - t1\nassert t1 < t2\n"
    verdicts = survey_program(parse_program(src), n_trials=50)
    assert [(v.kind, v.mode, v.verdict.status) for v in verdicts] == [
        ("check", "raw", NOT_MEANINGFUL), ("check", "typed", MEANINGFUL),
        ("assert", "typed", MEANINGFUL)]
    assert [d.code for d in verdicts[0].diagnostics] == ["W_RAW_MODE"]
    assert verdicts[0].to_json()["witness"]["family"] == "temperature"


def test_survey_of_well_sorted_program():
    src = TEMPS + "let a = 3 @F\ncheck (a - 1 @C) / (2 d@F)\ncheck mix(1/2: a, 1/2: 0 @C)\n"
    assert all(v.verdict.status == MEANINGFUL for v in survey_program(parse_program(src)))


def test_survey_of_empty_program():
    assert survey_program(parse_program("")) == []


def test_raw_assert_on_point_ratio_is_not_meaningful():
    src = TEMPS + "assert 10 @C / 20 @C < 0.6\n"
    (v,) = survey_program(parse_program(src), n_trials=50)
    assert v.mode == "raw" and v.verdict.status == NOT_MEANINGFUL


# properties over generated expressions

FREG = fuzz_registry()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_typed_expressions_never_flagged(seed):
    e = Generator(seed).typed_expr(budget=5)
    assert check_meaningful(e, {}, FREG, n_trials=20, seed=seed).status != NOT_MEANINGFUL, print_expr(e)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_verdicts_are_deterministic(seed):
    e = Generator(seed).any_expr(4)
    try:
        a = check_meaningful(e, {}, FREG, n_trials=10, seed=seed, mode="raw")
    except MeasureError:
        return
    assert a == check_meaningful(e, {}, FREG, n_trials=10, seed=seed, mode="raw")
    if a.witness is not None:
        assert replay(a.witness, e, {}, FREG, mode="raw") == pytest.approx(a.witness.deviation, rel=1e-12)


def test_agreement_on_generated_corpus():
    """Accepted expressions pass; point-rule rejections with a resolvable raw value fail."""
    g = Generator(2024)
    false_alarms, misses, rejected = [], [], 0
    for _ in range(1000):
        e = g.any_expr(5)
        try:
            infer_sort(e, {}, FREG)
            accepted, code = True, None
        except MeasureError as exc:
            accepted, code = False, exc.code
        if accepted:
            v = check_meaningful(e, {}, FREG, n_trials=20, seed=0)
            if v.status == NOT_MEANINGFUL:
                false_alarms.append(print_expr(e))
        elif code in ("E_POINT_RATIO", "E_POINT_SUM"):
            try:
                y = _raw_value(e, {}, FREG, None)
                v = check_meaningful(e, {}, FREG, n_trials=50, seed=0, mode="raw")
            except MeasureError:
                continue   # raw evaluation is not total
            if abs(y) < 1e-6:
                continue   # below the deviation floor the oracle cannot see
            rejected += 1
            if v.status != NOT_MEANINGFUL:
                misses.append(print_expr(e))
    assert false_alarms == []
    assert misses == []
    assert rejected > 100

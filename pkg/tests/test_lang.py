from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from scalewise import SCALAR, Point, Power
from scalewise.errors import MeasureError
from scalewise.fuzz import Generator, registry as fuzz_registry
from scalewise.lang import (
    DiagnosticError, check_program, evaluate_program, format_diagnostics, infer_sort,
    parse, parse_expression, parse_program, print_expr, print_program,
)
from scalewise.lang.diagnostics import Diagnostic
from scalewise.lang.nodes import Binary, Check, Let, Neg, Number, Span, depth

from conftest import TEMPS, approx, build_registry

CORPUS = sorted((Path(__file__).parent / "corpus").glob("*.msr"))
GRAMMAR_VALID = [p for p in CORPUS if not parse(p.read_text())[1]]


def codes(diags):
    return [d.code for d in diags]


# parsing

def test_parse_let_point_literal():
    prog = parse_program("let t1 = 20 @C")
    (stmt,) = prog.statements
    assert isinstance(stmt, Let) and stmt.name == "t1"
    assert stmt.expr == Number(20.0, "@", "C")


def test_parse_ratio_of_differences():
    prog = parse_program("check (t2 - t1) / (1 d@C)")
    (stmt,) = prog.statements
    assert isinstance(stmt, Check)
    assert stmt.expr.op == "/" and stmt.expr.right.inner == Number(1.0, "d@", "C")


def test_syntax_error_position():
    _, diags = parse("let x = 2 +")
    assert codes(diags) == ["E_SYNTAX"]
    assert (diags[0].span.line, diags[0].span.col) == (1, 10)


def test_recovery_reports_every_syntax_error():
    src = "let x = 2 +\nlet y = (3\ncheck 1 $ 2\ncheck 4\n"
    prog, diags = parse(src)
    assert codes(diags) == ["E_SYNTAX"] * 3
    assert [d.span.line for d in diags] == [1, 2, 3]
    assert len(prog.statements) == 1


@pytest.mark.parametrize("src", [
    "", "# only a comment\n", "let = 3", "check", "check (1", "assert 1 2",
    "family t kind wobbly", "scale X of", "check 2 ^ x", "check 1e999", "check mix()",
    "check 2 @", "let 5 = 3", "check )",
])
def test_invalid_inputs_yield_syntax_errors(src):
    prog, diags = parse(src)
    if src.strip() and not src.startswith("#"):
        assert diags and set(codes(diags)) == {"E_SYNTAX"}
        for d in diags:
            assert 1 <= d.span.line and d.span.col >= 0 and d.span.length >= 1
    else:
        assert diags == [] and prog.statements == ()


def test_negative_literal_versus_negation():
    assert parse_expression("-5 @C") == Number(-5.0, "@", "C")
    assert parse_expression("-(5 @C)").__class__ is Neg
    assert parse_expression("2 - -3") == Binary("-", Number(2.0), Number(-3.0))


def test_typographic_minus_and_separators():
    prog = parse_program(TEMPS + "let a=20 @C; let b=68 @F; check b−a")
    assert len(prog.statements) == 6


def test_power_binds_tighter_than_unit_product():
    e = parse_expression("2 d@C^2")
    assert e.exponent == 2 and e.base == Number(2.0, "d@", "C")
    e = parse_expression("x^-2")
    assert e.exponent == -2


def test_parse_expression_rejects_trailing_input():
    with pytest.raises(DiagnosticError):
        parse_expression("1 2")


# printing

@pytest.mark.parametrize("path", GRAMMAR_VALID, ids=lambda p: p.stem)
def test_corpus_round_trip(path):
    prog = parse_program(path.read_text())
    again = parse_program(print_program(prog))
    assert again.statements == prog.statements


def test_corpus_size():
    assert len(GRAMMAR_VALID) >= 30 and len(CORPUS) > len(GRAMMAR_VALID)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9))
def test_generated_round_trip(seed):
    g = Generator(seed)
    e = g.any_expr(5) if seed % 2 else g.typed_expr(budget=5)
    # generated trees carry no Group nodes; the printer adds the parentheses it needs
    parsed = parse_expression(print_expr(e))
    assert print_expr(parsed) == print_expr(e)
    assert parse_expression(print_expr(parsed)) == parsed


@pytest.mark.parametrize("text", [
    "1 - (2 - 3)", "(1 - 2) - 3", "1 / (2 * 3)", "-(1 + 2)", "-(2)", "--2", "(-2)^2",
    "mix(1/2: 0 @C, -1/2: x, 1: 2 @C)", "(a - b)^-1", "2 * -x", "1.5e-07 d@C",
])
def test_printer_round_trip_examples(text):
    e = parse_expression(text)
    assert parse_expression(print_expr(e)) == e


# checking

def env_points(*names, family="time"):
    return {n: Point(family) for n in names}


def test_infer_ratio_of_differences(reg):
    e = parse_expression("(t2 - t1) / (t3 - t1)")
    assert infer_sort(e, env_points("t1", "t2", "t3"), reg) == SCALAR


def test_infer_point_ratio_blames_operator(reg):
    with pytest.raises(MeasureError) as info:
        infer_sort(parse_expression("t1 / t2"), env_points("t1", "t2"), reg)
    assert info.value.code == "E_POINT_RATIO"
    assert info.value.span.col == 3


def test_infer_scaling(reg):
    assert infer_sort(parse_expression("2.5 * m"), {"m": Power("mass", 1)}, reg) == Power("mass", 1)


@pytest.mark.parametrize("text, code", [
    ("zz + 1", "E_UNBOUND_NAME"),
    ("1 @nowhere", "E_UNKNOWN_SCALE"),
    ("1 @kg", "E_KIND_SORT"),
    ("1 d@C + 1", "E_POWER_MISMATCH"),
    ("1 d@C * 1 d@s", "E_FAMILY_MIX"),
    ("-(1 @C)", "E_POINT_NEGATE"),
    ("(1 @C)^2", "E_POINT_POWER"),
    ("mix(1/2: 1 @C, 1/2: 1 d@C)", "E_MIX_SORT"),
    ("1 @C + 1 @C", "E_POINT_SUM"),
])
def test_infer_errors(reg, text, code):
    with pytest.raises(MeasureError) as info:
        infer_sort(parse_expression(text), {}, reg)
    assert info.value.code == code and info.value.span is not None


def test_checker_continues_after_errors():
    src = TEMPS + "check 1 @C / 2 @C\ncheck 1 @C + 1 @C\ncheck 3\n"
    res = check_program(parse_program(src))
    assert codes(res.diagnostics) == ["E_POINT_RATIO", "E_POINT_SUM"]
    assert res.sorts[5] == SCALAR


def test_failed_let_reported_once():
    src = TEMPS + "let a = 1 @C / 2 @C\ncheck a\ncheck a + 1\n"
    res = check_program(parse_program(src))
    assert codes(res.diagnostics) == ["E_POINT_RATIO"]
    assert res.failed == {3, 4, 5}


def test_duplicate_binding():
    res = check_program(parse_program("let a = 1\nlet a = 2"))
    assert codes(res.diagnostics) == ["E_DUP_BINDING"]


# evaluation

def run(src):
    return evaluate_program(parse_program(src))


def test_eval_difference_of_equal_temperatures():
    ev = run(TEMPS + "let a=20 @C; let b=68 @F; check b−a")
    (r,) = ev.results
    assert r.value.sort == Power("temperature", 1) and r.value.value == approx(0)


def test_eval_assert_passes():
    ev = run(TEMPS + "assert (30 @C − 10 @C)/(10 d@C) == 2")
    assert ev.ok and ev.results[0].passed


def test_eval_runtime_division_by_zero():
    ev = run(TEMPS + "check 1/(0 d@C − 0 d@C)\ncheck 2")
    assert codes(ev.diagnostics) == ["E_DIV_ZERO"]
    assert ev.diagnostics[0].span.line == 4 and ev.results == []


def test_eval_failed_assert_reports_both_sides():
    ev = run(TEMPS + "assert 1 @C == 2 @C\ncheck 5")
    assert codes(ev.diagnostics) == ["E_ASSERT_FAILED"]
    assert "1.0" in ev.diagnostics[0].message and "2.0" in ev.diagnostics[0].message
    assert [r.kind for r in ev.results] == ["assert", "check"]


def test_eval_blocked_by_sort_errors():
    ev = run(TEMPS + "check 1\ncheck 1 @C / 1 @C")
    assert ev.results == [] and codes(ev.diagnostics) == ["E_POINT_RATIO"]


def test_eval_weight_sum():
    ev = run(TEMPS + "check mix(0.7: 10 @C, 0.2: 30 @C)")
    assert codes(ev.diagnostics) == ["E_WEIGHT_SUM"]


def test_results_json_uses_display_scale():
    ev = run(TEMPS + "check 68 @F")
    d = ev.results[0].to_json(ev.registry)
    assert d["scale"] == "C" and d["sort"] == {"tag": "point", "family": "temperature"}
    assert d["value"] == approx(20)


# diagnostics

def test_format_point_ratio():
    src = TEMPS + "check 1 @C / 2 @C\n"
    res = check_program(parse_program(src))
    text = format_diagnostics(res.diagnostics, src)
    lines = text.splitlines()
    assert lines[0].startswith("error[E_POINT_RATIO]:")
    assert "Point(temperature)" in lines[0]
    src_line = lines[3]
    caret_line = lines[4]
    assert src_line.endswith("check 1 @C / 2 @C")
    assert src_line[caret_line.index("^")] == "/"


def test_format_orders_by_column():
    src = "x"
    d1 = Diagnostic("E_B", "second", Span(1, 5, 5, 1))
    d2 = Diagnostic("E_A", "first", Span(1, 2, 2, 1))
    text = format_diagnostics([d1, d2], "check 1 @C + 2 @C")
    assert text.index("E_A") < text.index("E_B")
    assert text.count("error[") == 2 and src


def test_format_empty():
    assert format_diagnostics([], "anything") == ""


def test_every_corpus_diagnostic_has_valid_span():
    for path in CORPUS:
        src = path.read_text()
        prog, diags = parse(src)
        if not diags:
            diags = evaluate_program(prog).diagnostics
        n_lines = len(src.splitlines())
        for d in diags:
            assert 1 <= d.span.line <= n_lines, (path.name, d)
            assert d.span.col >= 0 and d.span.length >= 1


def test_fuzz_registry_matches_declarations():
    from scalewise.fuzz import declarations
    from scalewise.lang.nodes import Program
    from scalewise.lang import load_registry
    a = load_registry(Program(tuple(declarations()), "")).to_json()
    assert a == fuzz_registry().to_json()


def test_typed_generator_respects_depth_and_sort():
    reg = fuzz_registry()
    for seed in range(200):
        g = Generator(seed)
        sort = g.sort()
        e = g.typed_expr(sort, 5)
        assert 1 <= depth(e) <= 5
        assert infer_sort(e, {}, reg) == sort

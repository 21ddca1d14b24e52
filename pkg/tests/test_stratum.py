import pytest

from modules.stratum import (
    ConnectednessKind,
    Flavor,
    Pattern,
    connectedness_facts,
    dimension,
    enumerate_patterns,
    format_pattern,
    genus,
    is_nonempty,
    parse_pattern,
    stratum_facts,
)
from modules.utils import FlavorError, OrderError, PatternSyntaxError, SumError, load_worker_count


def test_parse_expands_exponents_and_sorts():
    p = parse_pattern("Q(1^4,8,2,3^2)")
    assert p.flavor is Flavor.QUADRATIC
    assert p.orders == (8, 3, 3, 2, 1, 1, 1, 1)


def test_parse_ignores_whitespace():
    assert parse_pattern(" Q ( 9 , -1 ) ") == Pattern.quadratic(-1, 9)


def test_parse_empty_pattern():
    assert parse_pattern("Q()").orders == ()
    assert parse_pattern("H()") == Pattern.abelian()


def test_parse_keeps_marked_points():
    assert parse_pattern("H(2,0^2)").orders == (2, 0, 0)


@pytest.mark.parametrize("text, position", [
    ("X(1)", 0),
    ("Q(1,", 4),
    ("Q(1^0)", 4),
    ("Q(1) extra", 5),
    ("Q 1)", 2),
    ("Q(²)", 2),
    ("Q(4²)", 3),
    ("Q(1^99999999999)", 4),
    ("Q(1^500000,1^500001)", 13),
])
def test_parse_syntax_errors_report_position(text, position):
    with pytest.raises(PatternSyntaxError) as info:
        parse_pattern(text)
    assert info.value.position == position
    assert info.value.category == "syntax"


@pytest.mark.parametrize("text", ["Q(-2,6)", "H(-1,3)"])
def test_parse_order_errors(text):
    with pytest.raises(OrderError):
        parse_pattern(text)


@pytest.mark.parametrize("text", ["Q(1,2)", "H(1)", "Q(-1^8)"])
def test_parse_sum_errors(text):
    with pytest.raises(SumError):
        parse_pattern(text)


def test_format_collapses_exponents():
    assert format_pattern(parse_pattern("Q(1^4,8,2,3^2)")) == "Q(8,3^2,2,1^4)"
    assert format_pattern(Pattern.quadratic()) == "Q()"
    assert str(Pattern.quadratic(-1, 9)) == "Q(9,-1)"


def test_format_round_trips():
    for text in ("Q(8,3^2,2,1^4)", "H(4,2,0)", "Q(-1^4)", "Q(12)"):
        assert format_pattern(parse_pattern(text)) == text


def test_patterns_compare_as_multisets():
    assert Pattern.quadratic(1, 3) == Pattern.quadratic(3, 1)
    assert Pattern.quadratic(4) != Pattern.abelian(4)


@pytest.mark.parametrize("text, g", [
    ("Q(12)", 4),
    ("Q(9,-1)", 3),
    ("Q(-1^4)", 0),
    ("Q()", 1),
    ("H(10)", 6),
    ("H()", 1),
    ("H(1,1)", 2),
])
def test_genus(text, g):
    assert genus(parse_pattern(text)) == g


@pytest.mark.parametrize("text, dim", [
    ("Q(-1^4)", 2),
    ("Q(12)", 7),
    ("Q(12,0)", 8),
    ("H(2)", 4),
    ("H(1,1)", 5),
])
def test_dimension(text, dim):
    assert dimension(parse_pattern(text)) == dim


@pytest.mark.parametrize("text", ["Q()", "Q(1,-1)", "Q(4)", "Q(3,1)", "Q(1,-1,0)", "Q(4,0^3)"])
def test_empty_strata(text):
    assert not is_nonempty(parse_pattern(text))


@pytest.mark.parametrize("text", ["Q(8)", "Q(-1^4)", "Q(5,-1)", "Q(2,2)", "Q(12)"])
def test_nonempty_strata(text):
    assert is_nonempty(parse_pattern(text))


def test_nonempty_rejects_abelian():
    with pytest.raises(FlavorError):
        is_nonempty(Pattern.abelian(2))


@pytest.mark.parametrize("text, kind, count", [
    ("Q(-1^4)", ConnectednessKind.CONNECTED, 1),
    ("Q(1,-1^5)", ConnectednessKind.CONNECTED, 1),
    ("Q(12)", ConnectednessKind.KNOWN_MULTI_COMPONENT, 2),
    ("Q(9,-1)", ConnectednessKind.KNOWN_MULTI_COMPONENT, 2),
    ("Q(12,0)", ConnectednessKind.KNOWN_MULTI_COMPONENT, 2),
    ("Q(8)", ConnectednessKind.UNKNOWN, None),
    ("H(2)", ConnectednessKind.UNKNOWN, None),
])
def test_connectedness_facts(text, kind, count):
    facts = connectedness_facts(parse_pattern(text))
    assert facts.kind is kind
    assert facts.count == count


def test_stratum_facts_are_consistent():
    facts = stratum_facts(parse_pattern("Q(12)"))
    assert (facts.genus, facts.dimension, facts.nonempty) == (4, 7, True)
    assert stratum_facts(parse_pattern("H(2)")).nonempty is None


def test_enumerate_quadratic_small():
    patterns = enumerate_patterns(Flavor.QUADRATIC, 0)
    assert len(patterns) == 24
    assert patterns[0] == Pattern.quadratic(-1, -1, -1, -1)
    assert all(p.total <= 0 and 0 not in p.orders for p in patterns)
    keys = [(p.total, p.orders) for p in patterns]
    assert keys == sorted(keys)
    assert len(set(patterns)) == len(patterns)


def test_enumerate_abelian_small():
    patterns = enumerate_patterns(Flavor.ABELIAN, 4)
    assert [format_pattern(p) for p in patterns] == [
        "H()", "H(1^2)", "H(2)", "H(1^4)", "H(2,1^2)", "H(2^2)", "H(3,1)", "H(4)",
    ]


def test_enumerate_entry_bound():
    patterns = enumerate_patterns(Flavor.QUADRATIC, 0, max_entries=2)
    assert patterns == [Pattern.quadratic(), Pattern.quadratic(1, -1)]


def test_enumerate_without_entry_bound_keeps_long_patterns():
    patterns = enumerate_patterns(Flavor.QUADRATIC, 12, max_zero_mass=12)
    assert Pattern.quadratic(*[1] * 12) in patterns
    assert all(0 not in p.orders for p in patterns)


def test_enumerate_zero_mass_bound():
    patterns = enumerate_patterns(Flavor.QUADRATIC, 4, max_zero_mass=4)
    assert all(sum(k for k in p.orders if k > 0) <= 4 for p in patterns)
    assert Pattern.quadratic(4) in patterns
    assert Pattern.quadratic(5, -1) not in patterns


def test_enumerate_parallel_matches_serial():
    serial = enumerate_patterns(Flavor.QUADRATIC, 8, workers=1)
    assert enumerate_patterns(Flavor.QUADRATIC, 8, workers=2) == serial


def test_worker_count_falls_back_on_bad_values(monkeypatch):
    monkeypatch.setenv("STRATASPIN_WORKERS", "many")
    assert load_worker_count() == 1
    monkeypatch.setenv("STRATASPIN_WORKERS", "0")
    assert load_worker_count() == 1
    monkeypatch.setenv("STRATASPIN_WORKERS", "3")
    assert load_worker_count() == 3

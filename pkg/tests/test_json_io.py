import json

import pytest

from modules.billiard import classify, parse_angles
from modules.json_io import (
    arf_chain_report,
    arf_count_report,
    billiard_report,
    cover_report,
    enumerate_report,
    enumerate_row,
    export_report,
    render_json,
    render_text,
    spin_report,
    stratum_report,
)
from modules.stratum import Flavor, enumerate_patterns, parse_pattern
from modules.utils import DomainError


def test_stratum_report():
    report = stratum_report(parse_pattern("Q(12)"))
    assert report["pattern"] == "Q(12)"
    assert report["genus"] == 4
    assert report["dimension"] == 7
    assert report["nonempty"] is True
    assert report["connectedness"] == "known-multi-component"
    assert report["component_count"] == 2
    assert report["spin_defined"] is True


def test_cover_report_keys():
    report = cover_report(parse_pattern("Q(9,-1)"))
    assert list(report) == [
        "command", "base", "cover", "ramification_count", "cover_genus", "h1_dim", "square_candidate", "warnings",
    ]
    assert report["cover"] == "H(10)"


def test_cover_report_warns_on_square_candidate():
    assert cover_report(parse_pattern("Q(4,4)"))["warnings"]


def test_spin_report():
    report = spin_report(parse_pattern("Q(1^4)"))
    assert report["parity"] == "odd"
    assert (report["n_plus"], report["n_minus"]) == (4, 0)
    assert report["route_closed"] == report["route_sum"] == report["route_arf"] == "odd"
    assert report["routes_agree"] is True


def test_spin_report_undefined():
    report = spin_report(parse_pattern("Q(6,-1,-1)"))
    assert report["defined"] is False
    assert report["parity"] == "undefined"
    assert report["warnings"]


def test_arf_chain_report():
    report = arf_chain_report([1, 1, 1, 1, 1, 3])
    assert report["values"] == [1, 1, 1, 1]
    assert report["basis"] == [{"a": [1], "b": [2]}, {"a": [1, 3], "b": [4]}]
    assert report["arf"] == 1
    assert report["arf_majority"] == 1
    assert report["route_sum"] == "odd"


def test_arf_chain_report_skips_sum_route():
    report = arf_chain_report([1, 1, 1, 3])
    assert report["route_sum"] is None
    assert report["warnings"]


def test_arf_chain_report_names_orders_below_minus_one():
    report = arf_chain_report([-3, 1, 1, 1])
    assert report["route_sum"] is None
    assert report["warnings"] == ["order -3 is below -1: sum route skipped"]


def test_arf_chain_report_rejects_short_chain():
    with pytest.raises(DomainError):
        arf_chain_report([1, 3])


def test_arf_count_report():
    report = arf_count_report(3)
    assert (report["count_arf0"], report["count_arf1"], report["total"]) == (36, 28, 64)


def test_billiard_report_mirrors_classification():
    report = billiard_report(classify(parse_angles("11/14,1/7,1/14")))
    assert report["angles"] == ["11/14", "1/7", "1/14"]
    assert report["N"] == 14
    assert report["abelian_pattern"] == "H(10)"
    assert report["quadratic_pattern"] == "Q(9,-1)"
    assert report["spin"] == "even"
    assert report["hyperelliptic_parity"] == "odd"
    assert report["verdict"] == "not hyperelliptic"
    assert report["component_label"] == "H^even(10)"


def test_enumerate_rows():
    row = enumerate_row(parse_pattern("Q(1^4)"))
    assert row["parity"] == "odd"
    assert enumerate_row(parse_pattern("H(2)"))["parity"] is None


def test_enumerate_report_counts():
    patterns = enumerate_patterns(Flavor.QUADRATIC, 8)
    report = enumerate_report(patterns, "quadratic", 8, 12, None)
    assert report["count"] == len(patterns)
    empty = [row["pattern"] for row in report["patterns"] if row["nonempty"] is False]
    assert sorted(empty) == ["Q()", "Q(1,-1)", "Q(3,1)", "Q(4)"]


def test_render_json_is_deterministic_ascii():
    report = spin_report(parse_pattern("Q(9,-1)"))
    text = render_json(report)
    assert text == render_json(spin_report(parse_pattern("Q(9,-1)")))
    assert text.endswith("\n")
    assert text.isascii()
    assert list(json.loads(text)) == [
        "command", "pattern", "defined", "parity", "n_plus", "n_minus",
        "route_closed", "route_sum", "route_arf", "routes_agree", "warnings",
    ]


def test_render_text():
    text = render_text(cover_report(parse_pattern("Q(4,4)")))
    lines = text.splitlines()
    assert lines[0].endswith("cover")
    assert "cover: H(2^4)" in lines
    assert "square_candidate: yes" in lines
    assert lines[-1].startswith("⚠️")


def test_render_text_matrix_and_rows():
    text = render_text(arf_chain_report([1, 1, 1, 1, 1, 3]))
    assert "   0 1 0 0" in text
    assert "a=1  b=2" in text


def test_export_report(tmp_path):
    target = tmp_path / "reports" / "spin.json"
    assert export_report("{}\n", str(target))
    assert target.read_text(encoding="utf-8") == "{}\n"
    assert not export_report("{}\n", str(tmp_path))
    assert not export_report("{}\n", "  ")

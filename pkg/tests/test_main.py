import json

import pytest

import main
from modules import selftest
from modules.utils import ConsistencyError, PatternSyntaxError


def run_json(capsys, *argv):
    code = main.run(list(argv) + ["--json"])
    captured = capsys.readouterr()
    return code, json.loads(captured.out) if captured.out else None, captured.err


def test_spin_command(capsys):
    code, report, _ = run_json(capsys, "spin", "Q(9,-1)")
    assert code == 0
    assert report["command"] == "spin"
    assert report["parity"] == "even"
    assert report["route_closed"] == report["route_sum"] == report["route_arf"]


def test_cover_command(capsys):
    code, report, _ = run_json(capsys, "cover", "Q(1^4,8,2,3^2)")
    assert code == 0
    assert report["cover"] == "H(4^4,2^4,1^2)"
    assert report["cover_genus"] == 14


def test_cover_keep_marked(capsys):
    code, report, _ = run_json(capsys, "cover", "Q(9,-1,0)", "--keep-marked")
    assert code == 0
    assert report["cover"] == "H(10,0^3)"


def test_stratum_info_command(capsys):
    code, report, _ = run_json(capsys, "stratum", "info", "Q(-1^4)")
    assert code == 0
    assert report["connectedness"] == "connected"


def test_arf_chain_command(capsys):
    code, report, _ = run_json(capsys, "arf", "chain", "(1,1,1,1,1,3)")
    assert code == 0
    assert report["values"] == [1, 1, 1, 1]
    assert report["arf"] == 1


def test_arf_chain_negative_first_order(capsys):
    assert main.run(["arf", "chain", "--json", "--", "-1,1,3,5"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["odd_orders"] == [-1, 1, 3, 5]
    assert report["parity"] == "even"


def test_arf_count_command(capsys):
    code, report, _ = run_json(capsys, "arf", "count", "--genus", "2")
    assert code == 0
    assert (report["count_arf0"], report["count_arf1"]) == (10, 6)


def test_billiard_command(capsys):
    code, report, _ = run_json(capsys, "billiard", "classify", "--angles", "11/14,1/7,1/14")
    assert code == 0
    assert report["genus"] == 6
    assert report["fake_zero_count"] == 3
    assert report["verdict"] == "not hyperelliptic"


def test_enumerate_command(capsys):
    code, report, _ = run_json(capsys, "enumerate", "--flavor", "Q", "--max-sum", "8")
    assert code == 0
    assert report["max_zero_mass"] == 12
    assert report["count"] == len(report["patterns"])


def test_text_output(capsys):
    assert main.run(["stratum", "info", "Q(12)"]) == 0
    out = capsys.readouterr().out
    assert "genus: 4" in out
    assert "nonempty: yes" in out


def test_output_is_deterministic(capsys):
    main.run(["billiard", "classify", "--angles", "3/8,1/8,1/2", "--json"])
    first = capsys.readouterr().out
    main.run(["billiard", "classify", "--angles", "3/8,1/8,1/2", "--json"])
    assert capsys.readouterr().out == first


def test_output_file(capsys, tmp_path):
    target = tmp_path / "cover.json"
    assert main.run(["cover", "Q(9,-1)", "--json", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["cover"] == "H(10)"


@pytest.mark.parametrize("argv, category", [
    (["spin", "Q(1,2)"], "sum"),
    (["spin", "Q(-2,6)"], "order"),
    (["stratum", "info", "Q(1,"], "syntax"),
    (["spin", "Q(4²)"], "syntax"),
    (["spin", "Q(1^99999999999)"], "syntax"),
    (["spin", "H(2)"], "flavor"),
    (["arf", "chain", "1,1,1"], "domain"),
    (["arf", "chain", "1,x,1,1"], "syntax"),
    (["arf", "count", "--genus", "9"], "bound"),
    (["billiard", "classify", "--angles", "1/2,1/2,1/2"], "angle"),
])
def test_validation_errors_exit_2(capsys, argv, category):
    assert main.run(argv) == 2
    captured = capsys.readouterr()
    assert captured.err.startswith(f"error[{category}]:")
    assert captured.out == ""


def test_usage_errors_exit_2(capsys):
    assert main.run(["bogus"]) == 2
    assert capsys.readouterr().err.splitlines()[-1].startswith("error[usage]:")
    assert main.run(["enumerate"]) == 2
    assert capsys.readouterr().err.splitlines()[-1].startswith("error[usage]:")
    assert main.run(["arf", "count", "--genus", "two"]) == 2
    assert "error[usage]: argument --genus" in capsys.readouterr().err


def test_help_exits_0(capsys):
    assert main.run(["--help"]) == 0
    assert "stratum" in capsys.readouterr().out


def test_disagreement_exits_3(capsys, monkeypatch):
    def broken(args):
        raise ConsistencyError("routes disagree")

    monkeypatch.setattr(main, "build_report", broken)
    assert main.run(["spin", "Q(12)"]) == 3
    assert capsys.readouterr().err.startswith("error[consistency]:")


def test_selftest_command(capsys, monkeypatch):
    monkeypatch.setattr(selftest, "CHECKS", [
        ("fixtures", selftest.check_fixtures),
        ("hyperelliptic-table", selftest.check_hyperelliptic_table),
    ])
    code, report, _ = run_json(capsys, "selftest")
    assert code == 0
    assert report["passed"] is True
    assert [c["name"] for c in report["checks"]] == ["fixtures", "hyperelliptic-table"]


def test_selftest_failure_exits_3(capsys, monkeypatch):
    def failing():
        raise ConsistencyError("broken")

    monkeypatch.setattr(selftest, "CHECKS", [("failing", failing)])
    code, report, _ = run_json(capsys, "selftest")
    assert code == 3
    assert report["passed"] is False


def test_parse_orders():
    assert main.parse_orders("(-1, 1,3,5)") == [-1, 1, 3, 5]
    with pytest.raises(PatternSyntaxError) as info:
        main.parse_orders("1,,3")
    assert info.value.position == 2

import json

import pandas as pd
import pytest

from ringlab import EXIT_CAPABILITY, EXIT_PASS, EXIT_USAGE, main


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_props_of_z12(capsys):
    code, doc = run_json(capsys, "props", "Z/12")
    assert code == EXIT_PASS
    assert doc["schema"] == "ringlab-report/1"
    assert doc["command"] == "props"
    assert doc["passed"] is True
    result = doc["result"]
    assert result["flags"]["local"] is False
    assert result["witnesses"]["local"] == ["4", "9"]
    assert result["flags"]["arithmetical"] is True
    assert result["local_factors"] == ["Z/3", "Z/4"]
    assert result["ideal_count"] == 6
    assert result["zero_divisor_census"] == {"units": 4, "zero_divisors": 7, "other": 1}


def test_props_of_a_dvr(capsys):
    code, doc = run_json(capsys, "props", "Zloc(2)")
    assert code == EXIT_PASS
    assert doc["result"]["order"] == "infinite"
    assert doc["result"]["flags"]["valuation"] is True
    assert doc["result"]["ideal_count"] == "not computed"


def test_json_output_is_reproducible(capsys):
    _, first = run_json(capsys, "props", "F2[x,y]/(x^2,x*y,y^2)")
    _, second = run_json(capsys, "props", "F2[x,y]/(x^2,x*y,y^2)")
    assert first == second
    assert first["result"]["flags"]["valuation"] is False
    assert first["result"]["witnesses"]["valuation"] == ["y", "x"]


def test_pd_reports_the_cycle(capsys):
    code, doc = run_json(capsys, "pd", "Z/8", "2")
    assert code == EXIT_PASS
    result = doc["result"]
    assert result["verdict"] == "InfiniteByCycle"
    assert (result["b"], result["c"]) == ("4", "2")
    assert result["cycle_checks"] == [True, True, True]


def test_divides_with_witness(capsys):
    code, doc = run_json(capsys, "divides", "Z/12", "4", "8")
    assert code == EXIT_PASS
    assert doc["result"] == {"a": "4", "b": "8", "divides": True, "witness": "2"}


def test_annihilator_in_a_kq(capsys):
    code, doc = run_json(capsys, "ann", "triv(Zloc(2), Frac)", "(0, 5)")
    assert code == EXIT_PASS
    assert doc["result"]["annihilator"] == "0 ∝ K"
    assert doc["result"]["finitely_generated"] is False


def test_resolve_table_and_csv(capsys, tmp_path):
    destination = tmp_path / "resolution.csv"
    code = main(["resolve", "Z/12", "Z/12/(2)", "--max-steps", "4", "--report-csv", str(destination)])
    out = capsys.readouterr().out
    assert code == EXIT_PASS
    assert "Betti numbers: [1, 1, 1, 1, 1] ..." in out
    assert "period 2" in out
    frame = pd.read_csv(destination)
    assert list(frame["step"]) == [1, 2, 3, 4]
    assert frame["exact"].all()


def test_warfield_agrees_with_coset_enumeration(capsys):
    code, doc = run_json(capsys, "warfield", "Z/8", "--matrix", "[[2, 4], [0, 4]]")
    assert code == EXIT_PASS
    result = doc["result"]
    assert result["exponents"] == [1, 2]
    assert result["brute_force"] == {"order": 8, "histogram": [1, 4, 8, 8]}


def test_decompose(capsys):
    code, doc = run_json(capsys, "decompose", "Z/12")
    assert code == EXIT_PASS
    assert [row["factor"] for row in doc["result"]] == ["Z/3", "Z/4"]


def test_verify_single_theorem(capsys):
    code, doc = run_json(capsys, "verify", "ex-3.6")
    assert code == EXIT_PASS
    (report,) = doc["result"]
    assert report["id"] == "ex-3.6"
    assert report["passed"] is True
    assert "wall_clock_seconds" not in report


def test_parse_error_exit_code(capsys):
    assert main(["props", "Z/"]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert err.startswith("error: expected int")
    assert "^" in err


MALFORMED_INPUTS = [
    ["props", "Z/"],
    ["props", "Z/8 ? Z/3"],
    ["props", "Z/8 Z/3"],
    ["props", "prod("],
    ["props", "Z/1"],
    ["props", "Z/4 x Z/1"],
    ["props", "F6"],
    ["props", "F3[x]/(2*x^2+1)"],
    ["props", "F4[x]/(x^2)"],
    ["props", "F2[x,x]/(x^2)"],
    ["props", "F2[x,y]/(x^2,x+y)"],
    ["props", "Frac(Z/4)"],
    ["props", "triv(Z/4, Z/8/(2))"],
    ["props", "triv(Z/4, Z/4/(1))"],
    ["props", "triv(Zloc(2), free(2)/rel [[2, 0], [0, 2]])"],
    ["divides", "Z/8", "y", "2"],
    ["ann", "Z/4 x Z/3", "(1, 2, 3)"],
    ["warfield", "Z/8", "--matrix", "[[2, 4], [0]]"],
]


@pytest.mark.parametrize("argv", MALFORMED_INPUTS, ids=" ".join)
def test_malformed_input_exit_code(capsys, argv):
    assert main(argv) == EXIT_USAGE
    err = capsys.readouterr().err
    assert "error: " in err
    assert "^" in err


def test_unknown_theorem_exit_code(capsys):
    assert main(["verify", "thm-0"]) == EXIT_USAGE
    assert "unknown theorem id" in capsys.readouterr().err


def test_capability_exit_code(capsys):
    assert main(["ideals", "Zloc(2)"]) == EXIT_CAPABILITY
    assert "not supported" in capsys.readouterr().err


def test_missing_command_is_a_usage_error(capsys):
    assert main([]) == EXIT_USAGE


@pytest.mark.parametrize("argv", [["--help"], ["props", "--help"]])
def test_help_exits_cleanly(capsys, argv):
    assert main(argv) == EXIT_PASS
    assert "usage" in capsys.readouterr().out

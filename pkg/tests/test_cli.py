import json

import pytest

from acvariety.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_parse_reports_unbalanced(capsys):
    code, out, err = run(capsys, "parse", "(()")
    assert code == 2 and "UNBALANCED" in err and out == ""


def test_parse_ok(capsys):
    code, doc = run_json(capsys, "parse", "<()>")
    assert code == 0 and doc["command"] == "parse" and doc["failures"] == []


def test_unknown_option_is_usage_error(capsys):
    code, _, err = run(capsys, "enumerate", "--kind", "Par")
    assert code == 2 and err.startswith("error:")


def test_unknown_theorem(capsys):
    code, _, err = run(capsys, "check", "--theorem", "nope", "--n", "3")
    assert code == 2 and "unknown theorem" in err


def test_enumerate_counts(capsys):
    code, doc = run_json(capsys, "enumerate", "--kind", "Par", "--n", "4")
    assert code == 0 and doc["results"][0]["count"] == 14


def test_u_eval(capsys):
    code, out, _ = run(capsys, "u", "eval", "1", "2", "3")
    assert code == 0 and out.strip() == "2"


def test_check_ac_battery(capsys):
    code, doc = run_json(capsys, "check", "--theorem", "ac-mod4-0", "--n", "8", "--count", "5")
    assert code == 0
    assert doc["failures"] == [] and len(doc["results"]) == 14
    assert doc["params"]["seed"] == 0xC0FFEE


def test_check_alias(capsys):
    code, doc = run_json(capsys, "check", "--theorem", "7.2", "--n", "8", "--count", "3")
    assert code == 0 and doc["params"]["theorem"] == "ac-mod4-0"


def test_check_rejects_bad_size(capsys):
    code, _, _ = run(capsys, "check", "--theorem", "ac-mod4-0", "--n", "6")
    assert code == 2


def test_json_output_is_deterministic(capsys):
    argv = ("sample", "<()>", "--style", "ang", "--const", "3/7", "--count", "4", "--json")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


def test_seed_from_environment(capsys, monkeypatch):
    argv = ("sample", "()<>", "--style", "ang", "--const", "1", "--count", "3", "--json")
    default = json.loads(run(capsys, *argv)[1])
    monkeypatch.setenv("AC_SEED", "7")
    env = json.loads(run(capsys, *argv)[1])
    assert env["params"]["seed"] == 7 and env["results"] != default["results"]
    explicit = json.loads(run(capsys, *argv, "--seed", "7")[1])
    assert explicit == env
    override = json.loads(run(capsys, *argv, "--seed", "0xC0FFEE")[1])
    assert override == default


def test_bad_seed_environment(capsys, monkeypatch):
    monkeypatch.setenv("AC_SEED", "abc")
    code, _, err = run(capsys, "sample", "<>", "--style", "ang", "--const", "1")
    assert code == 2 and "AC_SEED" in err


def test_groebner(capsys):
    code, doc = run_json(capsys, "groebner", "--n", "6")
    rep = doc["results"][0]
    assert code == 0 and rep["ok"]
    assert rep["leading_monomials"] == ["x3*x4*x5*x6", "x2", "x1"]


def test_parametrize(capsys):
    code, doc = run_json(capsys, "parametrize", "--n", "5", "--tail", "1,2")
    assert code == 0 and doc["results"][0]["point"] == ["0", "-1", "1", "1", "2"]


def test_parametrize_denominator_zero(capsys):
    code, _, err = run(capsys, "parametrize", "--n", "5", "--tail", "1,1")
    assert code == 2 and "DENOMINATOR_ZERO" in err


def test_polygon_closes(capsys, tmp_path):
    svg = tmp_path / "p.svg"
    code, out, _ = run(capsys, "polygon", "--coeffs", "0,-1,1,1,2", "--svg", str(svg))
    assert code == 0 and "closed: True" in out
    assert svg.read_text().count('class="triangle"') == 5


def test_polygon_negative_basis_point(capsys):
    code, doc = run_json(capsys, "polygon", "--coeffs=-1,-1,-1", "--p0=-1,0", "--p1=0,-1")
    assert code == 0 and doc["results"][0]["areas"] == ["1"] * 3


def test_polygon_off_variety_fails(capsys):
    code, out, _ = run(capsys, "polygon", "--coeffs", "0,0,0")
    assert code == 1 and "closed: False" in out


def test_polygon_degenerate_basis(capsys):
    code, _, err = run(capsys, "polygon", "--coeffs", "1,1,1", "--p0", "1,1", "--p1", "2,2")
    assert code == 2 and "dependent" in err


def test_star_svg(capsys, tmp_path):
    svg, js = tmp_path / "s.svg", tmp_path / "s.json"
    code, _, _ = run(capsys, "star", "--n", "7", "--k", "2", "--svg", str(svg), "--json-out", str(js))
    assert code == 0
    text = svg.read_text()
    assert text.count('class="triangle"') == 7 and "nan" not in text.lower()
    assert json.loads(js.read_text())["closed"]


def test_star_inadmissible(capsys):
    assert run(capsys, "star", "--n", "6", "--k", "3")[0] == 2


def test_quad(capsys):
    code, doc = run_json(capsys, "quad", "--points=0,1,-1,0,0,-1,3,0")
    assert code == 0
    assert doc["results"][0]["kind"] == "DIAGONAL_02_BISECTED"
    assert doc["results"][0]["center"] == ["1", "0"]


def test_output_file(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "groebner", "--n", "5", "--json", "-o", str(dest))
    assert code == 0 and out == "" and json.loads(dest.read_text())["command"] == "groebner"


@pytest.mark.parametrize("argv", [
    ("identities", "--nmax", "5"),
    ("content", "<()>()"),
    ("rank", "(())()"),
    ("transform", "--kind", "ass", "(())()"),
    ("polyset", "<()>", "--style", "ang", "--const", "2"),
])
def test_other_verbs_succeed(capsys, argv):
    code, doc = run_json(capsys, *argv)
    assert code == 0 and doc["command"] == argv[0]

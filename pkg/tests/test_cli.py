import csv
import json
import random

import pytest

from plansing import cli
from plansing.census import CensusSpec, ConstraintError, run_census
from plansing.germclass import Tag
from plansing.jetalg import JetMap, TruncPoly, monomials, mpq
from plansing.parsing import ParseError, format_jet, infer_n, parse_jet, parse_polys
from plansing.report import SCHEMA, to_json


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# --- parser ---------------------------------------------------------------------


def random_rational_jet(rng):
    n = rng.randint(0, 2)
    m, order = n + 2, rng.randint(2, 5)
    comps = []
    for _ in range(2):
        terms = {}
        for e in monomials(m, order, 1):
            if rng.random() < 0.3:
                terms[e] = mpq(rng.randint(-9, 9), rng.randint(1, 4))
        comps.append(TruncPoly(m, order, terms))
    return JetMap(comps, m, order), n


def test_round_trip_200_jets():
    rng = random.Random(13)
    for _ in range(200):
        f, n = random_rational_jet(rng)
        assert parse_jet(format_jet(f), n=n, order=f.order) == f


@pytest.mark.parametrize("text, expected", [
    ("(x, y^3 + x*y)", "(x, y^3 + x*y)"),
    ("( x ,y^2-1/2*x^2 )", "(x, -1/2*x^2 + y^2)"),
    ("(x, (x+y)^2)", "(x, x^2 + 2*x*y + y^2)"),
    ("(x, -y^2 + 3/6*z2)", "(x, 1/2*z2 - y^2)"),
])
def test_parse_examples(text, expected):
    f = parse_jet(text)
    assert parse_jet(expected, n=f.source_dim - 2) == f


def test_parse_truncates():
    assert parse_jet("(x, y^2 + y^5)", order=4) == parse_jet("(x, y^2)")


def test_infer_n():
    assert infer_n(["(x, y^2 + z3^2)"]) == 3
    assert infer_n(["(x, y)"]) == 0


@pytest.mark.parametrize("text, position", [
    ("(x, y^^2)", 6),
    ("(x, y + )", 8),
    ("(x, 0.5*y)", 5),
    ("(x, w)", 4),
    ("(x, y^-1)", 6),
    ("(x, sin(y))", 4),
    ("(x, y", 5),
    ("(x, y/0)", 5),
])
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_jet(text)
    assert info.value.position == position
    caret = info.value.pointer().splitlines()[1]
    assert caret.index("^") == position


def test_parse_polys_with_own_names():
    (p,) = parse_polys("u*y + y^3", ["u", "y"], 4)
    assert p.coeff((1, 1)) == 1 and p.coeff((0, 3)) == 1


# --- classify --------------------------------------------------------------------


def test_classify_cusp(capsys):
    r = report(capsys, "classify", "(x, y^3 + x*y)")
    assert r["schema"] == SCHEMA
    res = r["results"]
    assert res["class"]["tag"] == "cusp"
    assert res["stratum_codim"] == 2
    assert res["local_degree"] in (1, -1)
    assert res["coefficients"]["b3"] == "1" and res["coefficients"]["c"] == "1"
    assert res["discriminant"]["image"] == ["-3*t^2", "-2*t^3"]


def test_classify_fold_with_z(capsys):
    res = report(capsys, "classify", "(x, y^2 + z1^2)", "--n", "1")["results"]
    assert res["class"] == {"tag": "fold", "abs_signature": 2, "unclassified_reason": None}
    assert res["stratum_codim"] == 2


def test_classify_unclassified(capsys):
    res = report(capsys, "classify", "(x, y^3)")["results"]
    assert res["class"]["tag"] == "unclassified"
    assert res["class"]["unclassified_reason"] == "3*b3*d2 - d1^2 = 0"
    assert res["stratum_codim"] is None


def test_classify_rationals_are_exact_strings(capsys):
    res = report(capsys, "classify", "(x, y^3 + 1/3*x*y^2 + x^2*y)")["results"]
    assert res["coefficients"]["d1"] == "1/3"
    assert res["coefficients"]["q"] == "26/9"


def test_classify_csv(tmp_path, capsys):
    path = tmp_path / "cusp.csv"
    report(capsys, "classify", "(x, y^3 + x*y)", "--csv", str(path))
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["t", "x", "y"]
    assert ["1/2", "-3/4", "-1/4"] in rows


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "--format", "text", "classify", "(x, y^2)")
    assert code == 0
    assert "tag: fold" in out


def test_output_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run_cli(capsys, "classify", "(x, y^2)", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["command"] == "classify"


# --- multigerm, tangent, normal-form ----------------------------------------------------


def test_multigerm_kissing(capsys):
    res = report(capsys, "multigerm", "(x,y^2)", "(x,y^2+x^2)")["results"]
    assert res["verdict"] == "admissible"
    assert res["stratum_label"] == "two kissing folds"


def test_multigerm_cusp_and_fold(capsys):
    res = report(capsys, "multigerm", "(x,y^3+x*y)", "(x,y^2)")["results"]
    assert res["verdict"] == "inadmissible"
    assert res["bad_events"]["minimal"] == [{"event": [1, 2], "case": "iii"}]
    assert (res["bad_events"]["size"], res["bad_events"]["complexity"]) == (2, 0)
    assert res["codim_bounds"]["chain_bound"] == 4


def test_multigerm_single_regular(capsys):
    res = report(capsys, "multigerm", "(x,y)")["results"]
    assert res["verdict"] == "admissible"
    assert res["stratum_label"] == "one regular branch"


def test_tangent_swallowtail(capsys):
    res = report(capsys, "tangent", "(x, y^4+x*y)", "--degrees", "4-6")["results"]
    assert [s["codim"] for s in res["stabilization"]] == [1, 1, 1]


def test_tangent_fold(capsys):
    assert report(capsys, "tangent", "(x, y^2)")["results"]["codim"] == 0


def test_tangent_unfolding(capsys):
    res = report(capsys, "tangent", "y^3", "--unfolding", "(u, y^3+u*y)")["results"]
    assert res["unfolding"] == {"params": ["u"], "universal": True, "deficiency": 0}


def test_normal_form_command(capsys):
    res = report(capsys, "normal-form", "lips", "--n", "2")["results"]
    assert [f["abs_signature"] for f in res["forms"]] == [0, 2]
    assert res["orbit_count"] == 2


# --- census ----------------------------------------------------------------------------


def test_census_counts_add_up():
    res = run_census(CensusSpec(samples=2000, seed=3, constraints=("N",)))
    assert res.total == 2000 == sum(res.tags.values())
    assert sum(res.reasons.values()) == res.tags[Tag.UNCLASSIFIED]


def test_census_workers_do_not_change_counts():
    spec = CensusSpec(samples=2500, seed=9, constraints=("N", "b2=0"))
    assert run_census(spec, workers=1).tags == run_census(spec, workers=2).tags


def test_census_rejects_unknown_constraint():
    with pytest.raises(ConstraintError):
        CensusSpec(constraints=("q=0",))


def test_report_is_byte_identical(capsys):
    argv = ["census", "--samples", "1500", "--seed", "4", "--constraint", "N"]
    first = run_cli(capsys, *argv)[1]
    second = run_cli(capsys, *argv)[1]
    assert first == second
    assert run_cli(capsys, "classify", "(x, y^4+x*y)")[1] == run_cli(capsys, "classify", "(x, y^4+x*y)")[1]


def test_json_key_order():
    r = cli.cmd_classify("(x, y^2)")
    assert list(json.loads(to_json(r))) == ["schema", "version", "command", "inputs", "results"]


# --- exit codes ------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["classify", "(x, y^^2)"],
    ["census", "--constraint", "q=0"],
    ["tangent", "(x, y^2)", "--degrees", "9"],
    ["frobnicate"],
    ["normal-form", "banana"],
    ["classify", "(x, y^2)", "--order", "12"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 1
    assert out == "" and err


def test_parse_error_message_points_at_the_problem(capsys):
    code, _, err = run_cli(capsys, "classify", "(x, y + )")
    assert code == 1
    assert "parse error" in err
    assert "        ^" in err


def test_internal_error_exits_2(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise AssertionError("invariant")

    monkeypatch.setattr(cli.gc, "classify_detailed", broken)
    code, _, err = run_cli(capsys, "classify", "(x, y^2)")
    assert code == 2
    assert "internal error" in err


def test_inadmissible_is_success(capsys):
    code, _, _ = run_cli(capsys, "multigerm", "(x,y^3+x*y)", "(x,y^3-x*y)")
    assert code == 0

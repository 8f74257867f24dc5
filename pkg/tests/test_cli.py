import json
import subprocess
import sys

import pytest

from conftest import laurent_mp
from fqineq.cli import main
from fqineq.galois_field import make_field
from fqineq.laurent import LaurentPoly
from fqineq.planner import ProblemInstance, Variant
from fqineq.serialize import dumps_instance, load_instance

F2 = make_field(2)

GENERAL = """{
  "field": {
    "p": 2,
    "e": 1
  },
  "variant": "general",
  "s": 5,
  "i": 1,
  "forms": [
    {
      "nvars": 5,
      "ring": "laurent",
      "terms": [[[1, 1, 0, 0, 0], [[-1, 1]]], [[0, 0, 2, 0, 0], [[0, 1]]]]
    }
  ],
  "target": {
    "eps_ord": -2
  }
}
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_verified(tmp_path, capsys):
    src = write(tmp_path, "f.json", GENERAL)
    code, out, _ = run(["solve", "--input", src], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["plan"]["B"] == 2 and rep["plan"]["nvars"] == 15
    assert rep["certificate"]["verified"] and rep["solver"]["outcome"] == "FOUND"


def test_eps_override_and_out_file(tmp_path, capsys):
    src = write(tmp_path, "f.json", GENERAL)
    dest = tmp_path / "r.json"
    code, out, _ = run(["solve", "--input", src, "--eps-ord", "0", "--out", str(dest)], capsys)
    assert code == 0 and out == ""
    rep = json.loads(dest.read_text())
    assert rep["instance"]["eps_ord"] == 0 and rep["plan"]["B"] == 0


def test_propagate_strategy(tmp_path, capsys):
    src = write(tmp_path, "f.json", GENERAL)
    code, out, _ = run(["solve", "--input", src, "--strategy", "propagate"], capsys)
    assert code == 0 and json.loads(out)["solver"]["mode"] == "propagate"


def test_budget_exit(tmp_path, capsys):
    # a sum of five squares over F_3 needs three nonzero coordinates, so lex order reaches it at rank 13
    F3 = make_field(3)
    terms = {tuple(2 if k == j else 0 for k in range(5)): {0: 1} for j in range(5)}
    inst = ProblemInstance(F3, Variant.GENERAL, 5, (laurent_mp(F3, 5, terms),), eps_ord=0)
    src = write(tmp_path, "f.json", dumps_instance(inst))
    code, out, err = run(["solve", "--input", src, "--budget", "12"], capsys)
    assert code == 2 and "budget" in err
    assert json.loads(out)["solver"]["outcome"] == "BUDGET_EXCEEDED"
    code, out, _ = run(["solve", "--input", src, "--budget", "13"], capsys)
    assert code == 0 and json.loads(out)["solver"]["evaluations"] == 13


def test_hypothesis_exit(tmp_path, capsys):
    f = laurent_mp(F2, 4, {(1, 1, 0, 0): {-1: 1}, (0, 0, 2, 0): {0: 1}})
    src = write(tmp_path, "f.json", dumps_instance(ProblemInstance(F2, Variant.GENERAL, 4, (f,), eps_ord=0)))
    code, _, err = run(["solve", "--input", src], capsys)
    assert code == 3 and "HypothesisViolated" in err


def test_non_chevalley_exit(tmp_path, capsys):
    f = laurent_mp(F2, 5, {(0,) * 5: {0: 1}, (2, 0, 0, 0, 0): {0: 1}})
    src = write(tmp_path, "f.json", dumps_instance(ProblemInstance(F2, Variant.GENERAL, 5, (f,), eps_ord=0)))
    assert run(["solve", "--input", src], capsys)[0] == 3


def test_zero_coefficient_exit(tmp_path, capsys):
    lams = (LaurentPoly.zero(F2),) + tuple(LaurentPoly.from_dict(F2, {0: 1}) for _ in range(4))
    inst = ProblemInstance(F2, Variant.DIAGONAL, 5, lambdas=lams, d=2, eps_ord=0)
    src = write(tmp_path, "f.json", dumps_instance(inst))
    assert run(["diagonal", "--input", src], capsys)[0] == 3


def test_parse_errors_are_located(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", GENERAL.replace("[[0, 1]]", '[[0, "one"]]'))
    code, _, err = run(["solve", "--input", bad], capsys)
    assert code == 1 and "$.forms[0].terms[1][1]" in err

    broken = write(tmp_path, "broken.json", GENERAL[:-5])
    code, _, err = run(["solve", "--input", broken], capsys)
    assert code == 1 and "broken.json:" in err

    code, _, _ = run(["solve", "--input", str(tmp_path / "missing.json")], capsys)
    assert code == 1


def test_variant_mismatch(tmp_path, capsys):
    src = write(tmp_path, "f.json", GENERAL)
    assert run(["diagonal", "--input", src], capsys)[0] == 1


def test_usage_error_exit(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 1
    capsys.readouterr()


def test_round_trip_is_byte_identical(tmp_path):
    src = write(tmp_path, "f.json", GENERAL)
    assert dumps_instance(load_instance(src)) == GENERAL


def test_round_trip_extension_field(tmp_path):
    F9 = make_field(3, 2)
    lams = tuple(LaurentPoly.from_dict(F9, {k: 3 + k}) for k in range(-2, 3))
    text = dumps_instance(ProblemInstance(F9, Variant.DIAGONAL, 5, lambdas=lams, d=2, eps_ord=-1))
    src = write(tmp_path, "d.json", text)
    assert dumps_instance(load_instance(src)) == text


def test_diagonal_report(tmp_path, capsys):
    F3 = make_field(3)
    lams = (LaurentPoly.from_dict(F3, {-1: 1}),) + tuple(LaurentPoly.from_dict(F3, {0: 1}) for _ in range(4))
    src = write(tmp_path, "d.json", dumps_instance(ProblemInstance(F3, Variant.DIAGONAL, 5, lambdas=lams, d=2,
                                                                     eps_ord=-3)))
    code, out, _ = run(["diagonal", "--input", src], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["certificate"]["verified"]
    assert rep["plan"]["bound_applies"] and rep["certificate"]["bound_holds"]


def test_distmod_report(tmp_path, capsys):
    f = laurent_mp(F2, 1, {(1,): {-2: 1}})
    src = write(tmp_path, "m.json", dumps_instance(ProblemInstance(F2, Variant.DISTMOD, 1, (f,), nu=1)))
    code, out, _ = run(["distmod", "--input", src], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["guarantee"]["frac_ord_at_most"] == -2 and rep["certificate"]["achieved"] == [-2]
    code, out, _ = run(["distmod", "--input", src, "--nu", "3"], capsys)
    assert code == 0 and json.loads(out)["plan"]["B"] == 3


def test_lowerbound_probe(capsys):
    code, out, _ = run(["lowerbound", "--q", "2", "--d", "1", "--r", "1", "--s", "2", "--probe", "1"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["probe"]["status"] == "FOUND" and rep["probe"]["min_ord"] == 1
    assert rep["samples"]["forms_vanish"] and rep["lower_bound_ord"] == 1

    code, out, _ = run(["lowerbound", "--q", "2", "--d", "2", "--r", "1", "--s", "5", "--probe", "2"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["probe"]["status"] == "NONE_BELOW"
    assert (rep["H_ord"], rep["lower_bound_ord"]) == (13, 24)


def test_lowerbound_errors(tmp_path, capsys):
    assert run(["lowerbound", "--q", "2", "--d", "2", "--r", "1", "--s", "4"], capsys)[0] == 3
    code = run(["lowerbound", "--q", "2", "--d", "2", "--r", "1", "--s", "5", "--probe", "9",
                "--budget", "1000"], capsys)[0]
    assert code == 2
    dest = tmp_path / "lb.json"
    assert run(["lowerbound", "--q", "2", "--d", "1", "--r", "1", "--s", "2", "--samples", "3",
                "--instance-out", str(dest)], capsys)[0] == 0
    assert load_instance(str(dest)).s == 2


def test_normic_and_irreducibles(capsys):
    code, out, _ = run(["normic", "--q", "2", "--d", "2"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["psi"] == "x1^2 + x1*x2 + x2^2" and rep["anisotropic"]
    code, out, _ = run(["irreducibles", "--q", "2", "--degree", "4"], capsys)
    assert json.loads(out) == {"field": "GF(2)", "degree": 4, "count": 3,
                               "polynomials": ["t^4 + t + 1", "t^4 + t^3 + 1", "t^4 + t^3 + t^2 + t + 1"]}
    assert run(["normic", "--q", "6", "--d", "2"], capsys)[0] == 1


def test_entry_point_runs():
    out = subprocess.run([sys.executable, "-m", "fqineq.cli", "irreducibles", "--q", "3", "--degree", "2",
                          "--count-only"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["count"] == 3


def test_unverified_exit(tmp_path, capsys, monkeypatch):
    # a valid plan always yields a witness, so fake a certificate that fails its checks
    import dataclasses

    import fqineq.planner as planner
    real = planner.certify
    monkeypatch.setattr(planner, "certify", lambda *a, **k: dataclasses.replace(real(*a, **k), verified=False))
    src = write(tmp_path, "f.json", GENERAL)
    code, out, err = run(["solve", "--input", src], capsys)
    assert code == 4 and "no verified witness" in err
    assert json.loads(out)["certificate"]["verified"] is False

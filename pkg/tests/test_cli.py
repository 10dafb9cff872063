import csv
import io
import json
import math
from contextlib import redirect_stdout
from fractions import Fraction

import pytest
from hypothesis import given

from corpus import exponent_sets, weights_strategy
from lctlab.bounds import ReportConfig, report
from lctlab.cli import main
from lctlab.models import MonomialIdeal, TruncatedWeighted, WeightedMonomial
from lctlab.serialize import (SchemaError, decode_value, encode_value, model_from_spec, report_from_json,
                              report_to_json)


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def spec(tmp_path, doc, name="model.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_rationals_are_canonical_strings():
    assert encode_value(Fraction(6, 4)) == "3/2"
    assert encode_value(Fraction(6)) == "6"
    assert encode_value(Fraction(-1, 2)) == "-1/2"
    assert encode_value(math.inf) == "inf"
    assert decode_value("3/2") == Fraction(3, 2) and decode_value("inf") == math.inf
    with pytest.raises(SchemaError):
        decode_value("x/2")


@given(weights_strategy)
def test_weighted_report_round_trips(ws):
    rep = report(WeightedMonomial(ws))
    assert report_from_json(json.loads(json.dumps(report_to_json(rep)))) == rep


@given(exponent_sets())
def test_monomial_report_round_trips(gens):
    rep = report(MonomialIdeal.from_exponents(gens), ReportConfig(seed=3, inject_c=Fraction(1, 7)))
    assert report_from_json(json.loads(json.dumps(report_to_json(rep)))) == rep


def test_truncated_spec_round_trips():
    m = model_from_spec({"model": {"type": "truncated", "weights": ["1", "2"], "M": "5"}})
    assert m == TruncatedWeighted((1, 2), 5)
    rep = report(m)
    assert report_from_json(report_to_json(rep)) == rep


def test_invariants_command(tmp_path):
    code, out = run(["invariants", spec(tmp_path, {"model": {"type": "weighted", "weights": ["1", "2"]}})])
    assert code == 0 and json.loads(out)["invariants"]["c"] == "3/2"
    code, out = run(["invariants", spec(tmp_path, {"model": {"type": "monomial", "exponents": [[2, 0], [0, 3]]}})])
    inv = json.loads(out)["invariants"]
    assert code == 0 and inv["c"] == "5/6" and inv["e"][2] == "6"


@pytest.mark.parametrize("doc, code", [
    ("{not json", 2),
    ({"model": {"type": "cubic"}}, 2),
    ({"model": {"type": "weighted", "weights": []}}, 2),
    ({"model": {"type": "monomial", "exponents": [[1, 0], [0, 1, 2]]}}, 2),
    ({"weights": [1]}, 2),
    ({"model": {"type": "weighted", "weights": ["1", "-2"]}}, 3),
    ({"model": {"type": "monomial", "exponents": [[1, 1]]}}, 3),
])
def test_invalid_input_exit_codes(tmp_path, doc, code):
    assert run(["invariants", spec(tmp_path, doc)])[0] == code


def test_missing_file_and_bad_arguments():
    assert run(["invariants", "/nonexistent/model.json"])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_check_command(tmp_path):
    code, out = run(["check", spec(tmp_path, {"model": {"type": "monomial", "exponents": [[2, 0], [0, 3]]}})])
    doc = json.loads(out)
    main_check = next(c for c in doc["checks"] if c["name"] == "main_inequality")
    assert code == 0 and main_check["margin"] == "0"


def test_check_numeric(tmp_path):
    path = spec(tmp_path, {"model": {"type": "weighted", "weights": ["1", "2", "3"]}})
    code, out = run(["check", path, "--numeric", "--samples", "1000000", "--seed", "42"])
    doc = json.loads(out)
    assert code == 0
    assert abs(doc["numeric"]["decay"]["c_hat"] - 11 / 6) <= 0.05 * 11 / 6
    assert doc["numeric"]["seed"] == 42 and doc["config"]["seed"] == 42


def test_check_injected_failure(tmp_path):
    path = spec(tmp_path, {"model": {"type": "weighted", "weights": ["1", "2", "3"]}})
    assert run(["check", path, "--inject-c", "0.5"])[0] == 1


def test_check_rejects_one_dimensional_models(tmp_path):
    assert run(["check", spec(tmp_path, {"model": {"type": "weighted", "weights": ["2"]}})])[0] == 3


def _rows(out):
    return list(csv.DictReader(io.StringIO(out)))


def test_sweep_pq_family():
    code, out = run(["sweep", "--family", "pq-ideal"])
    rows = _rows(out)
    assert code == 0 and len(rows) == 36
    assert list(rows[0]) == ["model-id", "c", "rhs", "margin", "upper_bound", "concavity_ok"]
    assert {r["margin"] for r in rows} == {"0"}


def test_sweep_tail_family(tmp_path):
    out_path = tmp_path / "tail.csv"
    code, _ = run(["sweep", "--family", "weighted-tail", "--n", "3", "-o", str(out_path)])
    rows = _rows(out_path.read_text())
    assert code == 0 and len(rows) == 10 and {r["margin"] for r in rows} == {"0"}


def test_sweep_random_family_is_seeded():
    code, out = run(["sweep", "--family", "weighted-random", "--n", "3", "--count", "30", "--seed", "5"])
    assert code == 0 and all(Fraction(r["margin"]) >= 0 for r in _rows(out))
    assert run(["sweep", "--family", "weighted-random", "--n", "3", "--count", "30", "--seed", "5"])[1] == out


def test_sweep_empty_range():
    assert run(["sweep", "--family", "pq-ideal", "--p-min", "4", "--p-max", "3"])[0] == 2


def test_bounds_eval(tmp_path):
    p23 = spec(tmp_path, {"n": 2, "A": 1, "t": [1]}, "p23.json")
    code, out = run(["bounds-eval", "--lemma", "23", "--params", p23])
    assert code == 0 and json.loads(out)["values"][0]["rhs"] == pytest.approx(2 * math.exp(-4))
    p24 = spec(tmp_path, {"n": 2, "A": 1, "B": 1, "c": 1, "lam": 1.2}, "p24.json")
    code, out = run(["bounds-eval", "--lemma", "24", "--params", p24])
    assert code == 0 and json.loads(out)["values"][0]["jn_integral"] == "3/8"
    bad = spec(tmp_path, {"n": 2, "A": 1, "B": 1, "c": 1, "lam": 2}, "bad.json")
    assert run(["bounds-eval", "--lemma", "24", "--params", bad])[0] == 2
    assert run(["bounds-eval", "--lemma", "23", "--params", spec(tmp_path, {"n": 2, "zz": 1}, "u.json")])[0] == 2


def test_module_entry_point(tmp_path):
    import subprocess
    import sys
    path = spec(tmp_path, {"model": {"type": "weighted", "weights": ["1", "2"]}})
    out = subprocess.run([sys.executable, "-m", "lctlab", "invariants", path], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["invariants"]["c"] == "3/2"

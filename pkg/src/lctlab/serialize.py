"""JSON model specs and report documents.

Rationals are written as strings in lowest terms (``"3/2"``, ``"6"``), infinities
as ``"inf"``/``"-inf"``, floats as JSON numbers.  Reading a document back gives
an equal :class:`~lctlab.bounds.CheckReport`.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from . import __version__
from ._exact import as_fraction
from .bounds import CheckReport, CheckResult, ReportConfig
from .invariants import InvariantTable, RestrictedLCT
from .models import ModelError, MonomialIdeal, SingularityModel, TruncatedWeighted, WeightedMonomial
from .newton_poly import build_polyhedron


class SchemaError(ValueError):
    """Malformed input document."""


def encode_value(x) -> Any:
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    raise TypeError(f"cannot encode {x!r}")


def decode_value(x) -> Fraction | float:
    if isinstance(x, str):
        if x in ("inf", "-inf"):
            return math.inf if x == "inf" else -math.inf
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational {x!r}") from exc
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return float(x)
    raise SchemaError(f"expected a number or rational string, got {x!r}")


def _render(x) -> float:
    return float(x)


# -- models -----------------------------------------------------------------------


def _rational_list(raw, what: str) -> list[Fraction]:
    if not isinstance(raw, list) or not raw:
        raise SchemaError(f"{what} must be a nonempty list")
    out = []
    for w in raw:
        if isinstance(w, bool) or not isinstance(w, (int, str, float)):
            raise SchemaError(f"{what} entries must be integers or 'p/q' strings")
        try:
            out.append(as_fraction(w))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad entry in {what}: {w!r}") from exc
    return out


def model_from_spec(doc: Any) -> SingularityModel:
    """Build a model from ``{"model": {...}}``; raises SchemaError or ModelError."""
    if not isinstance(doc, dict) or not isinstance(doc.get("model"), dict):
        raise SchemaError("document must be an object with a 'model' object")
    m = doc["model"]
    kind = m.get("type")
    if kind == "weighted":
        return WeightedMonomial(tuple(_rational_list(m.get("weights"), "weights")))
    if kind == "truncated":
        ws = _rational_list(m.get("weights"), "weights")
        if "M" not in m:
            raise SchemaError("truncated model needs 'M'")
        return TruncatedWeighted(tuple(ws), _rational_list([m["M"]], "M")[0])
    if kind == "monomial":
        exps = m.get("exponents")
        if not isinstance(exps, list) or not exps:
            raise SchemaError("exponents must be a nonempty list of lists")
        rows = [_rational_list(e, "exponent vector") for e in exps]
        if len({len(r) for r in rows}) != 1:
            raise SchemaError("exponent vectors have inconsistent dimensions")
        try:
            P = build_polyhedron(rows)
        except ValueError as exc:
            raise ModelError(str(exc)) from exc
        return MonomialIdeal(P)
    raise SchemaError(f"unknown model type {kind!r}")


def model_to_spec(model: SingularityModel) -> dict:
    if isinstance(model, WeightedMonomial):
        return {"model": {"type": "weighted", "weights": [str(w) for w in model.weights]}}
    if isinstance(model, TruncatedWeighted):
        return {"model": {"type": "truncated", "weights": [str(w) for w in model.weights],
                          "M": str(model.M)}}
    if isinstance(model, MonomialIdeal):
        return {"model": {"type": "monomial",
                          "exponents": [[str(x) for x in v] for v in model.polyhedron.vertices]}}
    raise TypeError(f"not a model: {model!r}")


def load_model(path: str) -> SingularityModel:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from exc
    return model_from_spec(doc)


# -- tables and checks ------------------------------------------------------------


def table_to_json(t: InvariantTable) -> dict:
    return {
        "n": t.n,
        "c": encode_value(t.c),
        "c_float": _render(t.c),
        "c_k": [{"k": k, "value": encode_value(r.value), "float": _render(r.value), "exact": r.exact}
                for k, r in enumerate(t.c_k, start=1)],
        "e": [encode_value(x) for x in t.e],
        "e_float": [_render(x) for x in t.e],
        "lelong": encode_value(t.lelong),
        "truncated": t.truncated,
        "notes": list(t.notes),
    }


def table_from_json(d: dict) -> InvariantTable:
    try:
        return InvariantTable(
            n=int(d["n"]),
            c=decode_value(d["c"]),
            c_k=tuple(RestrictedLCT(decode_value(r["value"]), bool(r["exact"])) for r in d["c_k"]),
            e=tuple(decode_value(x) for x in d["e"]),
            lelong=decode_value(d["lelong"]),
            truncated=bool(d.get("truncated", False)),
            notes=tuple(d.get("notes", ())),
        )
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad invariant table: {exc}") from exc


def check_to_json(c: CheckResult) -> dict:
    out = {"name": c.name, "lhs": encode_value(c.lhs), "rhs": encode_value(c.rhs),
           "verdict": c.verdict, "margin": encode_value(c.margin), "detail": c.detail,
           "parts": [check_to_json(p) for p in c.parts]}
    if c.error is not None:
        out["error"] = c.error
    return out


def check_from_json(d: dict) -> CheckResult:
    return CheckResult(d["name"], decode_value(d["lhs"]), decode_value(d["rhs"]), d["verdict"],
                       decode_value(d["margin"]), d.get("detail", ""),
                       tuple(check_from_json(p) for p in d.get("parts", ())), d.get("error"))


def report_to_json(r: CheckReport) -> dict:
    cfg = r.config
    return {
        "version": __version__,
        **model_to_spec(r.model),
        "invariants": table_to_json(r.table),
        "checks": [check_to_json(c) for c in r.checks],
        "verdict": r.verdict,
        "numeric": r.numeric,
        "config": {"numeric": cfg.numeric, "samples": cfg.samples, "seed": cfg.seed, "method": cfg.method,
                   "inject_c": None if cfg.inject_c is None else encode_value(as_fraction(cfg.inject_c))},
    }


def report_from_json(d: dict) -> CheckReport:
    try:
        cfg = d["config"]
        config = ReportConfig(bool(cfg["numeric"]), int(cfg["samples"]), int(cfg["seed"]), cfg["method"],
                              None if cfg["inject_c"] is None else decode_value(cfg["inject_c"]))
        return CheckReport(model_from_spec(d), table_from_json(d["invariants"]),
                           tuple(check_from_json(c) for c in d["checks"]), d.get("numeric", {}), config)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad report document: {exc}") from exc


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2)

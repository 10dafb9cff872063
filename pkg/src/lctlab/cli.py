"""Command-line front end.

    lctlab invariants MODEL.json
    lctlab check MODEL.json [--numeric --samples N --seed S]
    lctlab sweep --family pq-ideal|weighted-tail|weighted-random [...] [-o out.csv]
    lctlab bounds-eval --lemma 23|24 --params PARAMS.json

Exit codes: 0 success, 1 an inequality failed, 2 input error, 3 invalid model.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from ._exact import as_fraction
from .bounds import (FAILS, LemmaParams, ReportConfig, concavity_check, exact_checks, jn_integral,
                     lemma23_rhs, lemma24_rhs, report, upper_bound_check)
from .invariants import invariant_table
from .models import ModelError, MonomialIdeal, WeightedMonomial
from .serialize import SchemaError, dumps, encode_value, load_model, model_to_spec, report_to_json, table_to_json

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_MODEL = 0, 1, 2, 3


def cmd_invariants(args) -> int:
    model = load_model(args.file)
    doc = {"version": __version__, **model_to_spec(model),
           "invariants": table_to_json(invariant_table(model, args.method))}
    print(dumps(doc))
    return EXIT_OK


def cmd_check(args) -> int:
    model = load_model(args.file)
    inject = None
    if args.inject_c is not None:
        try:
            inject = as_fraction(args.inject_c)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad --inject-c: {exc}") from exc
    cfg = ReportConfig(numeric=args.numeric, samples=args.samples, seed=args.seed, method=args.method,
                       inject_c=inject)
    rep = report(model, cfg)
    print(dumps(report_to_json(rep)))
    return EXIT_VIOLATION if rep.verdict == FAILS else EXIT_OK


def _family(args):
    """Yield ``(model_id, model)`` for the requested sweep family."""
    if args.family == "pq-ideal":
        ps = range(args.p_min, args.p_max + 1)
        qs = range(args.q_min, args.q_max + 1)
        if not ps or not qs:
            raise SchemaError("empty p or q range")
        for p in ps:
            for q in qs:
                yield f"pq-{p}-{q}", MonomialIdeal.from_exponents([(p, 0), (0, q)])
    elif args.family == "weighted-tail":
        ms = range(args.m_min, args.m_max + 1)
        if not ms or args.n < 2:
            raise SchemaError("empty m range or n < 2")
        for m in ms:
            yield f"tail-n{args.n}-m{m}", WeightedMonomial((1,) * (args.n - 1) + (m,))
    elif args.family == "weighted-random":
        if args.count < 1 or args.n < 2:
            raise SchemaError("need --count >= 1 and n >= 2")
        rng = np.random.default_rng(args.seed)
        for i in range(args.count):
            ws = tuple(Fraction(int(rng.integers(1, args.max_weight + 1)), int(rng.integers(1, 4)))
                       for _ in range(args.n))
            yield f"rand-{args.seed}-{i}", WeightedMonomial(ws)
    else:
        raise SchemaError(f"unknown family {args.family!r}")


SWEEP_COLUMNS = ["model-id", "c", "rhs", "margin", "upper_bound", "concavity_ok"]


def cmd_sweep(args) -> int:
    rows = []
    failed = False
    for mid, model in _family(args):
        table = invariant_table(model)
        main = exact_checks(table)[0]
        ub = upper_bound_check(table)
        conc = concavity_check(table)
        failed |= any(c.verdict == FAILS for c in (main, ub, conc))
        rows.append([mid, encode_value(table.c), encode_value(main.rhs), encode_value(main.margin),
                     encode_value(ub.rhs), str(conc.ok).lower()])
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(SWEEP_COLUMNS)
        w.writerows(rows)
    finally:
        if args.output:
            out.close()
    return EXIT_VIOLATION if failed else EXIT_OK


def _real(v) -> float:
    if isinstance(v, bool):
        raise TypeError("booleans are not numbers")
    return float(as_fraction(v)) if isinstance(v, str) else float(v)


_PARAM_KEYS = {"n", "A", "B", "delta", "c_n_const", "vol", "c", "lam", "t"}


def cmd_bounds_eval(args) -> int:
    try:
        with open(args.params) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {args.params}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from exc
    if not isinstance(raw, dict) or "n" not in raw:
        raise SchemaError("params must be an object with at least 'n'")
    unknown = set(raw) - _PARAM_KEYS
    if unknown:
        raise SchemaError(f"unknown parameters: {sorted(unknown)}")
    ts = raw.pop("t", None)
    try:
        kw = {k: (int(v) if k == "n" else _real(v)) for k, v in raw.items()}
        params = LemmaParams(**kw)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad parameters: {exc}") from exc
    try:
        if args.lemma == "23":
            if ts is None:
                raise SchemaError("lemma 23 needs 't' (a number or a list)")
            ts = ts if isinstance(ts, list) else [ts]
            values = [{"t": float(t), "rhs": lemma23_rhs(float(t), params)} for t in ts]
        else:
            values = [{"lam": params.lam, "rhs": lemma24_rhs(params),
                       "jn_integral": str(jn_integral(params.n))}]
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from exc
    doc = {"version": __version__, "lemma": args.lemma, "params": {**kw, "t": ts}, "values": values}
    print(json.dumps(doc, indent=2, default=lambda x: None if x is None else float(x)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lctlab", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="print the invariant table of a model")
    inv.add_argument("file")
    inv.add_argument("--method", choices=["generic", "coordinate"], default="generic",
                     help="restricted thresholds of monomial ideals (default: exact generic planes)")
    inv.set_defaults(func=cmd_invariants)

    chk = sub.add_parser("check", help="run every inequality check on a model")
    chk.add_argument("file")
    chk.add_argument("--numeric", action="store_true", help="add Monte-Carlo cross-checks")
    chk.add_argument("--samples", type=int, default=200_000)
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--method", choices=["generic", "coordinate"], default="generic")
    chk.add_argument("--inject-c", default=None, help=argparse.SUPPRESS)
    chk.set_defaults(func=cmd_check)

    sw = sub.add_parser("sweep", help="tabulate the main inequality over a model family")
    sw.add_argument("--family", required=True, choices=["pq-ideal", "weighted-tail", "weighted-random"])
    sw.add_argument("--p-min", type=int, default=1)
    sw.add_argument("--p-max", type=int, default=6)
    sw.add_argument("--q-min", type=int, default=1)
    sw.add_argument("--q-max", type=int, default=6)
    sw.add_argument("--n", type=int, default=3)
    sw.add_argument("--m-min", type=int, default=1)
    sw.add_argument("--m-max", type=int, default=10)
    sw.add_argument("--count", type=int, default=50)
    sw.add_argument("--max-weight", type=int, default=12)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("-o", "--output", default=None, help="CSV path (default: stdout)")
    sw.set_defaults(func=cmd_sweep)

    be = sub.add_parser("bounds-eval", help="evaluate a sublevel/integrability estimate")
    be.add_argument("--lemma", required=True, choices=["23", "24"])
    be.add_argument("--params", required=True)
    be.set_defaults(func=cmd_bounds_eval)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "samples", 1) is not None and getattr(args, "samples", 1) <= 0:
        print("error: --samples must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ModelError as exc:
        print(f"invalid model: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except ValueError as exc:  # valid input the checks cannot handle, e.g. n = 1
        print(f"invalid model: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line interface.

Subcommands::

    measure      compute one functional of a catalog distribution
    verify       run the full characterization residual grid + verdict
    classc       one-signed density-quantile comparison class of a law
    records-sim  simulate n-th upper/lower k-record realizations
    symtest      bootstrap symmetry test on a newline-delimited data file

Every command accepts ``--output json|table``; JSON payloads follow the
schemas shipped under docs/schemas/.  Exit codes: 0 success, 2 usage or
parse error, 3 numerical failure (quadrature did not settle).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import measures as M
from . import symmetry as S
from .dist import DistributionError, make_distribution
from .quad import DEFAULT_TOL, QuadStatus
from .records import SIDES, simulate_records

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_SEED_ENV = "EXTROPY_SEED"

#: measure id -> (callable(dist, args) -> MeasureValue, parameter names used)
_MEASURES = {
    "extropy": (lambda d, a: M.extropy(d, a.tol), ()),
    "crj": (lambda d, a: M.crj(d, a.tol), ()),
    "cpj": (lambda d, a: M.cpj(d, a.tol), ()),
    "gcrj": (lambda d, a: M.gcrj(d, a.m, a.tol), ("m",)),
    "gcpj": (lambda d, a: M.gcpj(d, a.m, a.tol), ("m",)),
    "record_crj_upper": (lambda d, a: M.record_crj_upper(d, a.n, a.k, a.tol), ("n", "k")),
    "record_cpj_lower": (lambda d, a: M.record_cpj_lower(d, a.n, a.k, a.tol), ("n", "k")),
    "record_gcrj_upper": (lambda d, a: M.record_gcrj_upper(d, a.n, a.k, a.m, a.tol), ("n", "k", "m")),
    "record_gcpj_lower": (lambda d, a: M.record_gcpj_lower(d, a.n, a.k, a.m, a.tol), ("n", "k", "m")),
    "kij": (lambda d, a: M.kij_record(d, a.n, a.k, a.side, a.tol), ("n", "k", "side")),
    "crij_upper": (lambda d, a: M.crij_upper(d, a.n, a.k, a.tol), ("n", "k")),
    "cpij_lower": (lambda d, a: M.cpij_lower(d, a.n, a.k, a.tol), ("n", "k")),
    "delta1": (lambda d, a: S.delta1(d, a.tol), ()),
    "delta2": (lambda d, a: S.delta2(d, a.n, a.k, a.tol), ("n", "k")),
    "delta3": (lambda d, a: S.delta3(d, a.m, a.tol), ("m",)),
    "delta_kij": (lambda d, a: S.delta_kij(d, a.n, a.tol), ("n",)),
    "delta_crij": (lambda d, a: S.delta_crij(d, a.n, a.k, a.tol), ("n", "k")),
}


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text}")
    return v


def _seed_default() -> int:
    raw = os.environ.get(_SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: environment variable {_SEED_ENV}={raw!r} is not an integer")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="extrec", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, dist=True):
        if dist:
            p.add_argument("--dist", required=True, help="distribution spec, e.g. power:theta=2")
        p.add_argument("--output", choices=("json", "table"), default="table")

    p = sub.add_parser("measure", help="compute one measure of a distribution")
    common(p)
    p.add_argument("--measure", required=True, choices=sorted(_MEASURES))
    p.add_argument("--n", type=_positive_int, default=1)
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--m", type=_positive_int, default=2)
    p.add_argument("--side", choices=SIDES, default="upper")
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL)

    p = sub.add_parser("verify", help="verify the symmetry characterizations")
    common(p)
    p.add_argument("--max-n", type=_positive_int, default=4)
    p.add_argument("--max-k", type=_positive_int, default=4)
    p.add_argument("--max-m", type=_positive_int, default=4)
    p.add_argument("--tol", type=_positive_float, default=S.RESIDUAL_TOL)
    p.add_argument("--quad-tol", type=_positive_float, default=DEFAULT_TOL)

    p = sub.add_parser("classc", help="one-signed comparison class membership")
    common(p)
    p.add_argument("--grid-size", type=_positive_int, default=512)

    p = sub.add_parser("records-sim", help="simulate n-th upper/lower k-records")
    common(p)
    p.add_argument("--n", type=_positive_int, default=1)
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--side", choices=SIDES, default="upper")
    p.add_argument("--count", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-draws", type=_positive_int, default=10_000_000)

    p = sub.add_parser("symtest", help="bootstrap symmetry test on a data file")
    common(p, dist=False)
    p.add_argument("--input", required=True, help="newline-delimited decimals, optional header line")
    p.add_argument("--replicates", type=_positive_int, default=999)
    p.add_argument("--alpha", type=_positive_float, default=0.05)
    p.add_argument("--seed", type=int, default=None)
    return ap


def _emit(payload: dict, table: list[str], fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(table) + "\n")


def _finite_or_none(v: float) -> float | None:
    return v if math.isfinite(v) else None


def _cmd_measure(args) -> int:
    d = make_distribution(args.dist)
    fn, used = _MEASURES[args.measure]
    mv = fn(d, args)
    if mv.quad_status is QuadStatus.NO_CONVERGENCE:
        sys.stderr.write(f"error: quadrature did not settle for {args.measure} of {args.dist}\n")
        return EXIT_NUMERICAL
    payload = {
        "command": "measure",
        "dist": d.spec_string(),
        "measure": args.measure,
        "params": {k: getattr(args, k) for k in used},
        "value": _finite_or_none(mv.value),
        "display": mv.display(),
        "quad_status": mv.quad_status.value,
        "abs_error": _finite_or_none(mv.abs_error),
        "tol": args.tol,
    }
    _emit(payload, [f"{args.measure}({d.spec_string()}) = {mv.display()}   [{mv.quad_status.value}]"],
          args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    d = make_distribution(args.dist)
    rep = S.verify_characterizations(d, args.max_n, args.max_k, args.max_m,
                                     args.tol, args.quad_tol)
    rows = [{
        "family": e.family,
        "n": e.n, "k": e.k, "m": e.m,
        "value": _finite_or_none(e.value),
        "status": e.status.value,
    } for e in rep.residuals]
    payload = {
        "command": "verify",
        "dist": rep.distribution,
        "class_c": rep.class_c.value,
        "tolerance": rep.tolerance,
        "verdict": rep.verdict.value,
        "residuals": rows,
    }
    table = [f"distribution : {rep.distribution}",
             f"class        : {rep.class_c.value}",
             f"verdict      : {rep.verdict.value}   (tolerance {rep.tolerance:g})",
             f"{'residual':24s} {'value':>16s}  status"]
    for e in rep.residuals:
        val = f"{e.value:.6e}" if math.isfinite(e.value) else "-"
        table.append(f"{e.key():24s} {val:>16s}  {e.status.value}")
    _emit(payload, table, args.output)
    return EXIT_OK


def _cmd_classc(args) -> int:
    d = make_distribution(args.dist)
    cls = S.class_c_check(d, args.grid_size)
    payload = {
        "command": "classc",
        "dist": d.spec_string(),
        "class_c": cls.value,
        "grid_size": args.grid_size,
    }
    _emit(payload, [f"class_c({d.spec_string()}) = {cls.value}"], args.output)
    return EXIT_OK


def _cmd_records_sim(args) -> int:
    d = make_distribution(args.dist)
    seed = args.seed if args.seed is not None else _seed_default()
    rs = simulate_records(d, args.n, args.k, args.side, args.count, seed, args.max_draws)
    payload = {
        "command": "records-sim",
        "dist": d.spec_string(),
        "n": args.n, "k": args.k, "side": args.side,
        "count": args.count, "seed": seed, "max_draws": args.max_draws,
        "aborted": rs.aborted,
        "values": [float(v) for v in rs.values],
    }
    v = rs.values
    table = [f"records-sim {d.spec_string()} n={args.n} k={args.k} side={args.side} seed={seed}",
             f"realizations={v.size} aborted={rs.aborted}"]
    if v.size:
        table.append(f"mean={v.mean():.6g} min={v.min():.6g} max={v.max():.6g}")
    _emit(payload, table, args.output)
    return EXIT_OK


def _read_sample(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise SystemExit(f"error: cannot read input file {path!r}: {exc.strerror}")
    values = []
    start = 0
    if lines:
        try:
            float(lines[0].strip())
        except ValueError:
            start = 1  # single header line auto-detected
    for ln, raw in enumerate(lines[start:], start=start + 1):
        text = raw.strip()
        if not text:
            continue
        try:
            v = float(text)
        except ValueError:
            raise SystemExit(f"error: {path}:{ln}: not a decimal value: {text!r}")
        if not math.isfinite(v):
            raise SystemExit(f"error: {path}:{ln}: non-finite value: {text!r}")
        values.append(v)
    if len(values) < 20:
        raise SystemExit(f"error: {path}: need at least 20 data rows, found {len(values)}")
    return np.asarray(values, dtype=float)


def _cmd_symtest(args) -> int:
    x = _read_sample(args.input)
    seed = args.seed if args.seed is not None else _seed_default()
    if not 0.0 < args.alpha < 1.0:
        raise SystemExit(f"error: alpha must lie in (0, 1), got {args.alpha}")
    if args.replicates < 199:
        raise SystemExit(f"error: replicates must be >= 199, got {args.replicates}")
    try:
        res = S.symmetry_test(x, args.replicates, args.alpha, seed)
    except ValueError as exc:
        raise SystemExit(f"error: {exc}")
    payload = {
        "command": "symtest",
        "input": args.input,
        "n": int(x.size),
        "statistic": res.statistic,
        "replicates": res.bootstrap_replicates,
        "p_value": res.p_value,
        "alpha": res.alpha,
        "decision": res.decision,
        "seed": res.seed,
    }
    table = [f"symtest {args.input} (n={x.size})",
             f"T={res.statistic:.6g} p={res.p_value:.6g} alpha={res.alpha:g} -> {res.decision}"]
    _emit(payload, table, args.output)
    return EXIT_OK


_COMMANDS = {
    "measure": _cmd_measure,
    "verify": _cmd_verify,
    "classc": _cmd_classc,
    "records-sim": _cmd_records_sim,
    "symtest": _cmd_symtest,
}


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except DistributionError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        if isinstance(exc.code, str):
            sys.stderr.write(exc.code + "\n")
            return EXIT_USAGE
        return int(exc.code or 0)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

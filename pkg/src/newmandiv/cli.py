"""Command-line front end.

Every subcommand emits one self-describing JSON document on stdout — a run
manifest (subcommand, effective parameters with defaults materialized, tool
version, duration, result digest) plus the module's structured report — and
a short human-readable summary on stderr.

Exit codes: 0 = the expected mathematical outcome was confirmed, 1 = it was
not (the report carries the data), 2 = usage or environment error.

The document is canonical JSON (sorted keys, fixed indentation), so two
runs with identical flags are byte-identical except for wall-clock duration
fields; the digest is a SHA-256 over the document with those fields removed
and therefore stable across reruns.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .analytic import (
    EstimateGrids,
    check_estimates,
    estimate_N,
    find_roots,
    vandermonde_inverse,
    vandermonde_matrix,
)
from .modpoly import _is_prime
from .search import scan
from .simulate import (
    CounterfactualNegative,
    ExceedsOne,
    NegativeCoefficient,
    SimConfig,
    counterfactual_run,
    run_all_ones,
)
from .verifier import DEFAULT_PRIMES, verify_range

__all__ = ["main"]

VANDERMONDE_THRESHOLD = 1e-10


# --------------------------------------------------------------------------
# flag parsing helpers
# --------------------------------------------------------------------------


def _parse_primes(text: str) -> List[int]:
    """Either an explicit list "2,3,5" or an inclusive range "2..17"

    (the range form keeps every prime it contains)."""
    text = text.strip()
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if hi < lo:
            raise ValueError(f"empty prime range {text!r}")
        return [p for p in range(max(lo, 2), hi + 1) if _is_prime(p)]
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _parse_grids(specs: Optional[Sequence[str]]) -> EstimateGrids:
    """Override battery grids with name=start:stop:step entries."""
    grids = EstimateGrids()
    if not specs:
        return grids
    valid = {"unit", "large", "small"}
    overrides: Dict[str, tuple] = {}
    for spec in specs:
        if "=" not in spec:
            raise ValueError(f"grid spec {spec!r} is not name=start:stop:step")
        name, _, body = spec.partition("=")
        if name not in valid:
            raise ValueError(f"unknown grid {name!r}; valid: {sorted(valid)}")
        parts = body.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid spec {spec!r} is not name=start:stop:step")
        overrides[name] = tuple(float(x) for x in parts)
    return EstimateGrids(
        unit=overrides.get("unit", grids.unit),
        large=overrides.get("large", grids.large),
        small=overrides.get("small", grids.small),
    )


def _parse_nodes(text: str) -> List[complex]:
    """Comma-separated complex literals in Python syntax (1, -0.5, 0.6+0.8j)."""
    nodes = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            nodes.append(complex(tok))
        except ValueError:
            raise ValueError(f"cannot parse node {tok!r} as a complex number") from None
    if not nodes:
        raise ValueError("empty node list")
    return nodes


# --------------------------------------------------------------------------
# document emission
# --------------------------------------------------------------------------


def _strip_durations(obj):
    if isinstance(obj, dict):
        return {k: _strip_durations(v) for k, v in obj.items() if k != "duration_seconds"}
    if isinstance(obj, list):
        return [_strip_durations(v) for v in obj]
    return obj


def _emit(subcommand: str, parameters: dict, report: dict, started: float, summary: List[str]) -> None:
    stable = {"subcommand": subcommand, "parameters": parameters, "report": _strip_durations(report)}
    digest = hashlib.sha256(
        json.dumps(stable, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()
    doc = {
        "manifest": {
            "subcommand": subcommand,
            "parameters": parameters,
            "version": __version__,
            "duration_seconds": time.perf_counter() - started,
            "digest": digest,
        },
        "report": report,
    }
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    for line in summary:
        sys.stderr.write(line + "\n")


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    primes = _parse_primes(args.primes)
    report = verify_range(
        args.max_n,
        primes=primes,
        jobs=args.jobs,
        checkpoint=args.checkpoint,
        progress=lambda line: sys.stderr.write(line + "\n"),
    )
    params = {
        "max_n": args.max_n,
        "primes": primes,
        "checkpoint": args.checkpoint,
        "jobs": args.jobs,
    }
    ok = report.all_proven()
    summary = report.milestones() + [
        "all claims proven" if ok else f"UNPROVEN cases remain: {report.unproven()[:10]} ..."
    ]
    _emit("verify-resultants", params, report.to_dict(), t0, summary)
    return 0 if ok else 1


def _describe(outcome) -> str:
    if isinstance(outcome, NegativeCoefficient):
        return f"first violation: coefficient b_{outcome.n} = {outcome.value:.6f} < 0"
    if isinstance(outcome, ExceedsOne):
        return f"first violation: coefficient b_{outcome.n} = {outcome.value:.6f} > 1"
    if isinstance(outcome, CounterfactualNegative):
        return f"counterfactual window at N = {outcome.N}: b_{{N+8}} = {outcome.b[outcome.N + 8]:.6f} < 0"
    return f"no violation up to n = {outcome.max_n}"


def _cmd_simulate(args) -> int:
    t0 = time.perf_counter()
    if not 0.0 < args.a < 1.0:
        raise ValueError(f"a must satisfy 0 < a < 1, got {args.a}")
    config = SimConfig(a=args.a, max_n=args.max_n)
    trace = open(args.trace, "w") if args.trace else None
    try:
        if args.mode == "all-ones":
            result = run_all_ones(config, trace=trace)
            violated = result.violated()
        else:
            result = counterfactual_run(config, trace=trace)
            violated = isinstance(result.outcome, CounterfactualNegative)
    finally:
        if trace is not None:
            trace.close()
    params = {"a": args.a, "max_n": args.max_n, "mode": args.mode, "trace": args.trace}
    _emit("simulate", params, result.to_dict(), t0, [_describe(result.outcome)])
    return 0 if violated else 1


def _cmd_roots(args) -> int:
    t0 = time.perf_counter()
    roots = find_roots(args.t)
    report = {
        "t": args.t,
        "alpha": roots.alpha,
        "beta": [roots.beta.real, roots.beta.imag],
        "gamma": [roots.gamma.real, roots.gamma.imag],
        "abs_beta": abs(roots.beta),
        "abs_gamma": abs(roots.gamma),
        "residual": roots.residual,
    }
    summary = [
        f"alpha = {roots.alpha:.7f}",
        f"beta  = {roots.beta.real:.7f} + {roots.beta.imag:.7f}i  (|beta| = {abs(roots.beta):.5f})",
        f"gamma = {roots.gamma.real:.7f} + {roots.gamma.imag:.7f}i  (|gamma| = {abs(roots.gamma):.5f})",
    ]
    _emit("roots", {"t": args.t}, report, t0, summary)
    return 0


def _cmd_estimates(args) -> int:
    t0 = time.perf_counter()
    grids = _parse_grids(args.grid)
    checks = check_estimates(grids)
    report = {
        "grids": {"unit": list(grids.unit), "large": list(grids.large), "small": list(grids.small)},
        "checks": [
            {
                "check_id": c.check_id,
                "name": c.name,
                "statement": c.statement,
                "grid": c.grid,
                "worst_margin": c.worst_margin,
                "passed": c.passed,
            }
            for c in checks
        ],
        "all_passed": all(c.passed for c in checks),
    }
    summary = [
        f"({c.check_id}) {c.name}: worst margin {c.worst_margin:.3e} "
        f"{'ok' if c.passed else 'FAILED'}"
        for c in checks
    ]
    params = {"grid": sorted(args.grid) if args.grid else []}
    _emit("estimates", params, report, t0, summary)
    return 0 if report["all_passed"] else 1


def _cmd_vandermonde(args) -> int:
    t0 = time.perf_counter()
    nodes = _parse_nodes(args.nodes)
    v = vandermonde_matrix(nodes)
    m = vandermonde_inverse(nodes)
    eye = np.eye(len(nodes))
    err = max(
        float(np.max(np.abs(v @ m - eye))),
        float(np.max(np.abs(m @ v - eye))),
    )
    passed = err <= VANDERMONDE_THRESHOLD
    report = {
        "nodes": [[z.real, z.imag] for z in nodes],
        "max_error": err,
        "threshold": VANDERMONDE_THRESHOLD,
        "passed": passed,
    }
    _emit(
        "vandermonde-check",
        {"nodes": args.nodes},
        report,
        t0,
        [f"|V Vinv - I| = {err:.3e} ({'ok' if passed else 'FAILED'})"],
    )
    return 0 if passed else 1


def _cmd_search(args) -> int:
    t0 = time.perf_counter()
    rep = scan(args.max_degree)
    summary = [
        f"degrees 1..{args.max_degree}: {sum(s.polynomials for s in rep.summaries)} polynomials, "
        f"{sum(s.splits for s in rep.summaries)} splits",
        f"{rep.total_unfair} unfair, {rep.total_residual_indeterminate} residual indeterminate",
    ]
    _emit("search", {"max_degree": args.max_degree}, rep.to_dict(), t0, summary)
    return 0 if rep.conjecture_holds() else 1


def _cmd_estimate_n(args) -> int:
    t0 = time.perf_counter()
    value = estimate_N(args.a)
    _emit(
        "estimate-N",
        {"a": args.a},
        {"a": args.a, "estimate": value},
        t0,
        [f"N({args.a}) ~ {value:.1f}"],
    )
    return 0


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newmandiv",
        description="Verify the components of the x^5 + a x^2 + 1 non-divisibility proof.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify-resultants", help="prove B_{n-2}, B_{n-5} share no root for 11 <= n <= max-n")
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.add_argument("--primes", default="2..17", help='comma list "2,3,5" or range "2..17"')
    p.add_argument("--checkpoint", default=None, help="resume/persist pass results at this path")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate", help="drive the forced-cofactor recurrence for a given a")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--max-n", type=int, default=10000, dest="max_n")
    p.add_argument("--mode", choices=["all-ones", "counterfactual"], default="all-ones")
    p.add_argument("--trace", default=None, help="write an 'n b c d err' table to this path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("roots", help="roots of x^5 + t x^3 + 1 with sector labels")
    p.add_argument("--t", type=float, required=True)
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("estimates", help="re-check the quantitative root/residue estimates on grids")
    p.add_argument("--grid", action="append", help="override: name=start:stop:step (unit|large|small)")
    p.set_defaults(func=_cmd_estimates)

    p = sub.add_parser("vandermonde-check", help="invert the node Vandermonde matrix and report the residual")
    p.add_argument("--nodes", required=True, help='comma-separated complex nodes, e.g. "1,-1" or "0.6+0.8j,0.6-0.8j"')
    p.set_defaults(func=_cmd_vandermonde)

    p = sub.add_parser("search", help="exhaustive unfair-factorization scan up to a degree")
    p.add_argument("--max-degree", type=int, required=True, dest="max_degree")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("estimate-N", help="balance-index estimate for small a")
    p.add_argument("--a", type=float, required=True)
    p.set_defaults(func=_cmd_estimate_n)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every invocation prints a single-line JSON run report on stdout and a short
human-readable summary on stderr. Exit codes: 0 OK, 2 VIOLATION (a verified
inequality failed beyond tolerance), 1 ERROR. Identical argv and seed produce
byte-identical stdout; wall time is therefore reported on stderr only.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import functional, isoperimetry, spectral
from .errors import MagnetoError
from .frustration import (
    DEFAULT_BUDGET,
    frustration_cycle_oracle,
    frustration_exact,
    frustration_heuristic,
)
from .graph import MagneticGraph, cartesian_product_many, graph_from_json
from .groups import CYCLIC, GroupElement


def _budget() -> int:
    raw = os.environ.get("MAGNETO_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def _load_graph(path: str) -> MagneticGraph:
    with open(path) as fh:
        return graph_from_json(fh.read())


def _random_f(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def _tau_digest(tau) -> dict:
    out = {}
    for u in sorted(tau.values):
        g = tau[u]
        out[str(u)] = g.exponent if g.kind == CYCLIC else g.angle
    return out


def cmd_frustration(args):
    g = _load_graph(args.graph)
    subset = int(args.subset, 16) if args.subset else g.full_mask()
    if args.heuristic:
        res = frustration_heuristic(g, subset, restarts=args.restarts, seed=args.seed)
    else:
        res = frustration_exact(g, subset, budget=_budget())
    return {
        "value": res.value,
        "exact": res.exact,
        "evaluations": res.evaluations,
        "minimizer": _tau_digest(res.minimizer),
    }, "OK"


def _cut_digest(cut) -> dict:
    return {
        "subset": list(cut.subset),
        "frustration": cut.frustration,
        "boundary": cut.boundary,
        "volume": cut.volume,
        "objective": cut.objective,
    }


def cmd_cheeger(args):
    g = _load_graph(args.graph)
    res = isoperimetry.cheeger_constant(
        g,
        heuristic=args.heuristic,
        subset_limit=args.subset_limit,
        budget=_budget(),
        restarts=args.restarts,
        seed=args.seed,
        profile=args.profile,
    )
    out = {"h": res.constant, "argmin": _cut_digest(res.argmin), "exact": res.exact}
    if args.profile:
        out["profile"] = [_cut_digest(c) for c in res.profile]
    return out, "OK"


def cmd_isoperimetric(args):
    g = _load_graph(args.graph)
    res = isoperimetry.isoperimetric_constant(
        g,
        args.delta,
        heuristic=args.heuristic,
        subset_limit=args.subset_limit,
        budget=_budget(),
        restarts=args.restarts,
        seed=args.seed,
    )
    return {
        "delta": args.delta,
        "c_delta": res.constant,
        "argmin": _cut_digest(res.argmin),
        "exact": res.exact,
    }, "OK"


def cmd_product(args):
    graphs = [_load_graph(p) for p in args.graphs]
    prod = cartesian_product_many(graphs)
    with open(args.output, "w") as fh:
        fh.write(prod.to_json())
    return {"n": prod.n, "edges": prod.m, "output": args.output}, "OK"


def cmd_spectrum(args):
    g = _load_graph(args.graph)
    sd = spectral.spectral_data(g)
    balanced, _ = g.is_balanced()
    return {
        "eigenvalues": [float(x) for x in sd.eigenvalues],
        "d_mu": g.max_mu_degree(),
        "balanced": balanced,
    }, "OK"


def cmd_heat(args):
    g = _load_graph(args.graph)
    kern = spectral.heat_kernel(g, args.t, signed=not args.unsigned)
    return {
        "t": args.t,
        "unsigned": bool(args.unsigned),
        "matrix_re": kern.matrix.real.tolist(),
        "matrix_im": kern.matrix.imag.tolist(),
        "trace": float(np.trace(kern.matrix).real),
    }, "OK"


def cmd_oracle(args):
    if args.target != "cycle":
        raise MagnetoError("PARSE_ERROR", f"unknown oracle {args.target!r}")
    sigma = GroupElement.cyclic(args.j, args.k)
    iota = frustration_cycle_oracle(sigma)
    exponent = (args.delta - 1.0) / args.delta
    return {
        "n": args.n,
        "k": args.k,
        "j": args.j,
        "iota": iota,
        "h": iota / args.n,
        "delta": args.delta,
        "c_delta": iota / args.n**exponent,
    }, "OK"


def _suite_coarea(g, trials, seed, results):
    rng = np.random.default_rng(seed)
    factor = 2.0 if g.group_kind != CYCLIC else 3.0
    violations = 0
    for _ in range(trials):
        f = functional.normalize_vertex_function(_random_f(rng, g.n))
        lhs = functional.coarea_lhs(g, f, budget=_budget())
        rhs = factor * functional.signed_gradient_norm(g, f, 1.0)
        if lhs > rhs + 1e-9:
            violations += 1
    results["coarea"] = {"trials": trials, "violations": violations}
    return violations == 0


def _suite_sobolev(g, trials, seed, delta, results):
    rng = np.random.default_rng(seed)
    h = isoperimetry.cheeger_constant(g, budget=_budget()).constant
    c_delta = isoperimetry.isoperimetric_constant(g, delta, budget=_budget()).constant
    if h <= 0:
        results["sobolev"] = {"skipped": "balanced graph (h = 0)"}
        return True
    p = 2.0 if delta > 2.0 else 0.5 * (1.0 + delta)
    violations = 0
    for _ in range(trials):
        f = _random_f(rng, g.n)
        checks = [
            functional.verify_sobolev(g, f, "iso_p1", delta=delta, c_delta=c_delta),
            functional.verify_sobolev(g, f, "iso_general", p=p, delta=delta, c_delta=c_delta),
            functional.verify_sobolev(g, f, "cheeger_p1", h=h),
            functional.verify_sobolev(g, f, "cheeger_p", p=p, h=h),
        ]
        violations += sum(not c.satisfied for c in checks)
    results["sobolev"] = {
        "trials": trials, "h": h, "c_delta": c_delta, "violations": violations
    }
    return violations == 0


def _suite_kato(g, trials, seed, results):
    rng = np.random.default_rng(seed)
    violations = sum(
        not spectral.kato_check(g, _random_f(rng, g.n)) for _ in range(trials)
    )
    results["kato"] = {"trials": trials, "violations": violations}
    return violations == 0


def _suite_domination(g, trials, seed, results):
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(trials):
        f = _random_f(rng, g.n)
        for t in (0.1, 1.0, 10.0):
            if not spectral.domination_check(g, t, f):
                violations += 1
    results["domination"] = {"trials": trials, "violations": violations}
    return violations == 0


def _suite_trace(g, delta, results):
    c_delta = isoperimetry.isoperimetric_constant(g, delta, budget=_budget()).constant
    if c_delta <= 0:
        results["trace"] = {"skipped": "balanced graph (c_delta = 0)"}
        return True
    rep = spectral.trace_bound_check(g, delta, c_delta, (0.1, 1.0, 10.0))
    eig_ok = all(
        spectral.eigenvalue_lower_bound_check(g, delta, c_delta, k)["ok"]
        for k in range(1, g.n + 1)
    )
    results["trace"] = {"c_delta": c_delta, "trace_ok": rep["ok"], "eigenvalue_ok": eig_ok}
    return rep["ok"] and eig_ok


def _suite_product(g, results):
    rep = isoperimetry.verify_product_additivity([g], budget=_budget())
    results["product"] = {
        "factor_constants": rep.factor_constants,
        "product_constant": rep.product_constant,
        "holds": rep.holds,
    }
    return rep.holds


def cmd_verify(args):
    g = _load_graph(args.graph)
    suites = ["coarea", "sobolev", "kato", "domination", "trace", "product"] \
        if args.suite == "all" else [args.suite]
    results = {}
    ok = True
    for suite in suites:
        if suite == "coarea":
            ok &= _suite_coarea(g, args.trials, args.seed, results)
        elif suite == "sobolev":
            ok &= _suite_sobolev(g, args.trials, args.seed, args.delta, results)
        elif suite == "kato":
            ok &= _suite_kato(g, args.trials, args.seed, results)
        elif suite == "domination":
            ok &= _suite_domination(g, args.trials, args.seed, results)
        elif suite == "trace":
            ok &= _suite_trace(g, args.delta, results)
        elif suite == "product":
            ok &= _suite_product(g, results)
    return results, ("OK" if ok else "VIOLATION")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magneto")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker cap (current implementation is serial)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("frustration", help="frustration index of a vertex subset")
    p.add_argument("graph")
    p.add_argument("--subset", help="hex bitmask over vertex ids (default: all)")
    p.add_argument("--heuristic", action="store_true")
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_frustration)

    p = sub.add_parser("cheeger", help="signed 1-way Cheeger constant")
    p.add_argument("graph")
    p.add_argument("--profile", action="store_true")
    p.add_argument("--heuristic", action="store_true")
    p.add_argument("--subset-limit", type=int, default=isoperimetry.DEFAULT_SUBSET_LIMIT)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_cheeger)

    p = sub.add_parser("isoperimetric", help="isoperimetric constant c_delta")
    p.add_argument("graph")
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--heuristic", action="store_true")
    p.add_argument("--subset-limit", type=int, default=isoperimetry.DEFAULT_SUBSET_LIMIT)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_isoperimetric)

    p = sub.add_parser("product", help="signed Cartesian product of graph files")
    p.add_argument("graphs", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("spectrum", help="magnetic Laplacian spectrum")
    p.add_argument("graph")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("heat", help="heat kernel at time t")
    p.add_argument("graph")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--unsigned", action="store_true")
    p.set_defaults(func=cmd_heat)

    p = sub.add_parser("verify", help="batch inequality verification")
    p.add_argument("graph")
    p.add_argument("--suite", required=True,
                   choices=["coarea", "sobolev", "kato", "domination", "trace",
                            "product", "all"])
    p.add_argument("--delta", type=float, default=3.0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="closed forms from the cycle propositions")
    p.add_argument("target", choices=["cycle"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--delta", type=float, default=3.0)
    p.set_defaults(func=cmd_oracle)
    return parser


def _json_scalar(obj):
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.monotonic()
    inputs = {k: v for k, v in vars(args).items() if k != "func" and v is not None}
    try:
        results, status = args.func(args)
    except MagnetoError as exc:
        results, status = {"error": exc.code, "message": exc.message}, "ERROR"
    except OSError as exc:
        results, status = {"error": "IO_ERROR", "message": str(exc)}, "ERROR"
    elapsed = time.monotonic() - start
    report = {
        "command": args.command,
        "inputs": inputs,
        "results": results,
        "status": status,
    }
    print(json.dumps(report, separators=(",", ":"), default=_json_scalar))
    print(f"[magneto] {args.command}: {status} in {elapsed:.3f}s", file=sys.stderr)
    return {"OK": 0, "VIOLATION": 2}.get(status, 1)


if __name__ == "__main__":
    raise SystemExit(main())

"""Batch command-line interface: eval, verify, bench, propagator.

Single values are emitted as one JSON object, grids and benchmarks as CSV,
so outputs compose with plotting tools without any interactive step.  All
randomized commands are deterministic under a fixed seed; the tuples are
drawn up front so an optional thread pool (ORTHOSUM_THREADS) cannot change
the output.
"""

import argparse
import json
import math
import os
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from random import Random

from .closed_forms import closed_sum
from .contour_verifier import ContourSpec, default_radius, derivative_series_by_contour
from .errors import OrthosumError
from .oscillator_propagator import (
    OscillatorParams,
    SpacetimePoint,
    grid_csv_lines,
    propagator_grid,
)
from .poly_kernels import (
    ChebyshevT,
    ChebyshevU,
    Gegenbauer,
    Hermite,
    Laguerre,
    Legendre,
    Mehler,
)
from .series_oracle import (
    EXTENDED_DPS,
    PrecisionCtx,
    SeriesSpec,
    sum_chebyshev_log_series,
    sum_series,
)

_FAMILY_NAMES = (
    "gegenbauer",
    "legendre",
    "chebyshevt",
    "chebyshevu",
    "laguerre",
    "hermite",
    "mehler",
)

_REL_FLOOR = 1e-280


def _rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b), _REL_FLOOR)


def _parse_complex(text):
    try:
        return complex(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _build_family(args, parser):
    name = args.family
    try:
        if name == "gegenbauer":
            if args.lam is None:
                parser.error("gegenbauer requires --lambda")
            return Gegenbauer(args.lam)
        if name == "legendre":
            return Legendre()
        if name == "chebyshevt":
            return ChebyshevT()
        if name == "chebyshevu":
            return ChebyshevU()
        if name == "laguerre":
            if args.alpha is None:
                parser.error("laguerre requires --alpha")
            return Laguerre(args.alpha)
        if name == "hermite":
            return Hermite()
        if name == "mehler":
            return Mehler()
    except OrthosumError as exc:
        print(json.dumps({"error": str(exc)}))
        raise SystemExit(2)
    parser.error(f"unknown family {name!r}")


def _eval_point(args, parser):
    """(t, arg) for the family named in args."""
    name = args.family
    if name == "mehler":
        if args.z is None or args.x is None or args.y is None:
            parser.error("mehler requires --z, --x and --y")
        return args.z, (args.x, args.y)
    if name == "hermite":
        if args.z is None or args.x is None:
            parser.error("hermite requires --z and --x")
        return args.z, args.x
    if name == "laguerre":
        if args.t is None or args.u is None:
            parser.error("laguerre requires --t and --u")
        return args.t, args.u
    if args.t is None or args.w is None:
        parser.error(f"{name} requires --t and --w")
    return args.t, args.w


def cmd_eval(args, parser):
    family = _build_family(args, parser)
    t, arg = _eval_point(args, parser)
    try:
        if args.method == "closed":
            value = closed_sum(family, args.l, t, arg)
            payload = {"value_re": value.real, "value_im": value.imag, "method": "closed"}
        elif args.method == "series":
            if isinstance(family, ChebyshevT) and args.l == 0:
                report = sum_chebyshev_log_series(t, arg)
            else:
                report = sum_series(SeriesSpec(family, args.l, complex(t), arg))
            payload = {
                "value_re": report.value.real,
                "value_im": report.value.imag,
                "method": "series",
                "terms_used": report.terms_used,
                "est_abs_error": report.est_abs_error,
            }
            if not report.converged:
                payload["converged"] = False
                print(json.dumps(payload))
                return 3
        else:
            value = derivative_series_by_contour(family, args.l, t, arg)
            payload = {"value_re": value.real, "value_im": value.imag, "method": "contour"}
    except OrthosumError as exc:
        print(json.dumps({"error": str(exc)}))
        return 2
    print(json.dumps(payload))
    return 0


def _draw_case(rng, name, l_max, complex_t):
    """One verification tuple with the published sampling ranges."""

    def draw_t():
        if complex_t:
            r = 0.9 * math.sqrt(rng.random())
            phi = 2.0 * math.pi * rng.random()
            return complex(r * math.cos(phi), r * math.sin(phi))
        return complex(rng.uniform(-0.9, 0.9))

    l = rng.randint(0, l_max)
    if name == "gegenbauer":
        lam = 5.0 - 5.4 * rng.random()
        while lam == 0.0:
            lam = 5.0 - 5.4 * rng.random()
        return Gegenbauer(lam), l, draw_t(), rng.uniform(-1.0, 1.0)
    if name == "legendre":
        return Legendre(), l, draw_t(), rng.uniform(-1.0, 1.0)
    if name == "chebyshevt":
        return ChebyshevT(), max(l, 1), draw_t(), rng.uniform(-1.0, 1.0)
    if name == "chebyshevu":
        return ChebyshevU(), l, draw_t(), rng.uniform(-1.0, 1.0)
    if name == "laguerre":
        alpha = 5.0 - 5.9 * rng.random()
        return Laguerre(alpha), l, draw_t(), rng.uniform(0.0, 10.0)
    if name == "hermite":
        return Hermite(), l, draw_t(), rng.uniform(-3.0, 3.0)
    if name == "mehler":
        return Mehler(), l, draw_t(), (rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
    raise ValueError(name)


def _check_case(case, tol):
    """Returns (n_failures, worst_rel_err) of the multi-oracle comparisons."""
    family, l, t, arg = case
    closed = closed_sum(family, l, t, arg)
    if isinstance(family, ChebyshevT) and l == 0:
        report = sum_chebyshev_log_series(t, arg)
    else:
        report = sum_series(SeriesSpec(family, l, t, arg))
    failures = 0
    worst = _rel_err(closed, report.value)
    if not report.converged or worst > tol:
        failures += 1
    contour_tol = max(tol, 1e-8)
    r = default_radius(t)
    if (not isinstance(family, Hermite) or abs(t) < 0.5) and l <= 5 and r >= 0.04:
        from .contour_verifier import _derivative_series_with_diag

        contour, node_max = _derivative_series_with_diag(family, l, t, arg, ContourSpec(radius=r))
        # double-precision noise floor of the quadrature; only compare when
        # the contour can actually resolve the value
        noise = 2e-13 * node_max * r**-l
        if noise <= 0.2 * contour_tol * abs(closed):
            e = _rel_err(closed, contour)
            worst = max(worst, e)
            if e > contour_tol:
                failures += 1
    return failures, worst


def cmd_verify(args, parser):
    names = [args.family] if args.family else list(_FAMILY_NAMES)
    rng = Random(args.seed)
    cases = [_draw_case(rng, names[i % len(names)], args.l_max, args.complex) for i in range(args.cases)]
    threads = int(os.environ.get("ORTHOSUM_THREADS", "1"))
    check = lambda case: _check_case(case, args.tol)
    if threads > 1 and cases:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(check, cases))
    else:
        results = [check(case) for case in cases]
    failures = sum(f for f, _ in results)
    worst = max((w for _, w in results), default=0.0)
    print(json.dumps({"cases": len(cases), "failures": failures, "worst_rel_err": worst}))
    return 0 if failures == 0 else 1


# w = 0.55 keeps eta = (w-t)/q away from polynomial zeros on the t ladder
_BENCH_POINTS = {
    "legendre": (Legendre(), 0.55),
    "gegenbauer": (Gegenbauer(0.8), 0.55),
    "laguerre": (Laguerre(0.5), 1.5),
    "hermite": (Hermite(), 0.7),
    "mehler": (Mehler(), (0.8, -0.6)),
}


def _time_ns_per_eval(fn, reps, batch):
    samples = []
    for _ in range(reps):
        t0 = time.perf_counter_ns()
        for _ in range(batch):
            fn()
        samples.append((time.perf_counter_ns() - t0) / batch)
    return statistics.median(samples)


def cmd_bench(args, parser):
    reps = 100 if args.quick else 300
    families = [args.family] if args.family else list(_BENCH_POINTS)
    ls = [args.l] if args.l is not None else [0, 5]
    ts = [complex(args.t)] if args.t is not None else [0.3 + 0j, 0.6 + 0j, 0.8 + 0j, 0.9 + 0j]
    ref_ctx = PrecisionCtx(rel_tol=1e-15, mode="extended")
    # tolerance chosen so the timed series path stays in plain double
    series_ctx = PrecisionCtx(rel_tol=1e-9)
    lines = ["family,l,t_or_z,method,nanos_per_eval,rel_err_vs_extended"]
    for name in families:
        if name not in _BENCH_POINTS:
            parser.error(f"bench supports families {sorted(_BENCH_POINTS)}, got {name!r}")
        family, arg = _BENCH_POINTS[name]
        for l in ls:
            if isinstance(family, ChebyshevT):
                l = max(l, 1)
            for t in ts:
                spec = SeriesSpec(family, l, t, arg)
                ref = sum_series(spec, ref_ctx).value
                closed_fn = partial(closed_sum, family, l, t, arg)
                series_fn = partial(sum_series, spec, series_ctx)
                for method, fn, value in (
                    ("closed", closed_fn, closed_fn()),
                    ("series", series_fn, series_fn().value),
                ):
                    batch = 8 if method == "closed" else 1
                    nanos = _time_ns_per_eval(fn, reps, batch)
                    t_repr = f"{t.real:.17g}" if t.imag == 0.0 else f"{t:.17g}"
                    lines.append(
                        f"{name},{l},{t_repr},{method},{nanos:.1f},{_rel_err(value, ref):.3e}"
                    )
    print("\n".join(lines))
    return 0


def cmd_propagator(args, parser):
    try:
        params = OscillatorParams(
            mass=args.mass, omega=args.omega, hbar=args.hbar, epsilon=args.epsilon
        )
        rows = propagator_grid(
            params, args.time, (args.x_min, args.x_max), args.n_points, x_a=args.x_a
        )
    except OrthosumError as exc:
        print(json.dumps({"error": str(exc)}))
        return 2
    print("\n".join(grid_csv_lines(rows)))
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(prog="orthosum", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one series by one method")
    p_eval.add_argument("family", choices=_FAMILY_NAMES)
    p_eval.add_argument("--l", type=int, default=0)
    p_eval.add_argument("--lambda", dest="lam", type=float, default=None)
    p_eval.add_argument("--alpha", type=float, default=None)
    p_eval.add_argument("--t", type=_parse_complex, default=None, help="series variable (complex ok)")
    p_eval.add_argument("--z", type=_parse_complex, default=None, help="series variable for hermite/mehler")
    p_eval.add_argument("--w", type=float, default=None)
    p_eval.add_argument("--u", type=float, default=None)
    p_eval.add_argument("--x", type=float, default=None)
    p_eval.add_argument("--y", type=float, default=None)
    p_eval.add_argument("--method", choices=("closed", "series", "contour"), default="closed")

    p_verify = sub.add_parser("verify", help="randomized multi-oracle agreement checks")
    p_verify.add_argument("--family", choices=_FAMILY_NAMES, default=None)
    p_verify.add_argument("--cases", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.add_argument("--l-max", dest="l_max", type=int, default=6)
    p_verify.add_argument("--complex", action="store_true", help="draw complex series variables")

    p_bench = sub.add_parser("bench", help="closed-form versus series timing report (CSV)")
    p_bench.add_argument("family", nargs="?", default=None)
    p_bench.add_argument("--l", type=int, default=None)
    p_bench.add_argument("--t", type=_parse_complex, default=None)
    p_bench.add_argument("--quick", action="store_true")

    p_prop = sub.add_parser("propagator", help="oscillator propagator grid (CSV)")
    p_prop.add_argument("--mass", type=float, default=1.0)
    p_prop.add_argument("--omega", type=float, default=1.0)
    p_prop.add_argument("--hbar", type=float, default=1.0)
    p_prop.add_argument("--epsilon", type=float, default=1e-6)
    p_prop.add_argument("--time", type=float, required=True)
    p_prop.add_argument("--x-a", dest="x_a", type=float, default=0.0)
    p_prop.add_argument("--x-min", dest="x_min", type=float, default=-3.0)
    p_prop.add_argument("--x-max", dest="x_max", type=float, default=3.0)
    p_prop.add_argument("--n-points", dest="n_points", type=int, default=61)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "eval":
        return cmd_eval(args, parser)
    if args.command == "verify":
        return cmd_verify(args, parser)
    if args.command == "bench":
        return cmd_bench(args, parser)
    if args.command == "propagator":
        return cmd_propagator(args, parser)
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())

"""Adaptive truncated summation of the binomially weighted polynomial series.

This module is the independent ground truth the closed forms are checked
against.  A single generic loop serves every family; per-family term cores
are generated by balanced recurrences that cannot overflow (Hermite terms
carry z^n H_n(x)/n! as one quantity, Mehler terms carry z^n times a pair of
orthonormally scaled Hermite values).

Error control is two-sided: a geometric tail bound from the observed decay
of a window of recent terms, plus a rounding estimate proportional to the
sum of absolute terms.  When heavy cancellation makes the rounding estimate
dominate the requested tolerance (the series value can be exponentially
smaller than its largest term), the standard mode transparently reruns the
summation in fixed extended precision instead of returning a silently wrong
answer.
"""

import cmath
import math
from dataclasses import dataclass, field

import mpmath

from .errors import DomainError, InvalidParameter
from .poly_kernels import (
    ChebyshevT,
    ChebyshevU,
    Gegenbauer,
    Hermite,
    Laguerre,
    Legendre,
    Mehler,
    recurrence_terms,
)

__all__ = [
    "EXTENDED_DPS",
    "ABS_FLOOR",
    "PrecisionCtx",
    "EvalReport",
    "SeriesSpec",
    "sum_series",
    "sum_chebyshev_T_series",
    "sum_chebyshev_log_series",
]

# Fixed working precision of the extended mode (significant decimal digits).
# Sized so that the worst admissible cancellation (Laguerre near t=0.9,
# u=10, where the value is ~e^95 below the largest term) still leaves 14
# accurate digits.
EXTENDED_DPS = 64

ABS_FLOOR = 1e-300

# Calibration constant of the double-precision rounding estimate
# round_est = _ROUND_FACTOR * eps * sum(|terms|); validated by the
# extended-versus-standard cross check in the test suite.
_ROUND_FACTOR = 4.0

_MIN_TERMS = 21  # stop no earlier than 20 terms past n = l


@dataclass(frozen=True)
class PrecisionCtx:
    """Stopping-control knobs for the series oracle."""

    rel_tol: float = 1e-14
    max_terms: int = 100_000
    tail_window: int = 10
    mode: str = "standard"

    def __post_init__(self):
        if not (self.rel_tol > 0.0):
            raise InvalidParameter("rel_tol must be positive")
        if self.tail_window < 2:
            raise InvalidParameter("tail_window must be >= 2")
        if self.max_terms < 1:
            raise InvalidParameter("max_terms must be >= 1")
        if self.mode not in ("standard", "extended"):
            raise InvalidParameter(f"unknown precision mode: {self.mode!r}")


@dataclass(frozen=True)
class EvalReport:
    """Value plus the oracle's own account of how good it is.

    When converged is True, est_abs_error <= rel_tol*|value| + ABS_FLOOR.
    """

    value: complex
    terms_used: int
    est_abs_error: float
    converged: bool


@dataclass(frozen=True)
class SeriesSpec:
    """One series instance: family, derivative order l, and the point.

    ``arg`` is the real polynomial argument (w, u or x); for Mehler it is
    the pair (x, y).  ``t`` is the series variable (z for Hermite/Mehler).
    """

    family: object
    l: int
    t: complex
    arg: object

    def __post_init__(self):
        if not isinstance(self.l, int) or self.l < 0:
            raise InvalidParameter(f"l must be a nonnegative integer, got {self.l!r}")
        t = complex(self.t)
        if not cmath.isfinite(t):
            raise DomainError("non-finite series variable")
        if not isinstance(self.family, Hermite) and abs(t) >= 1.0:
            raise DomainError(f"|t| must be < 1 for this family, got {abs(t)}")
        if isinstance(self.family, Mehler):
            x, y = self.arg
            if not (math.isfinite(float(x)) and math.isfinite(float(y))):
                raise DomainError("non-finite Mehler argument")
        else:
            if not math.isfinite(float(self.arg)):
                raise DomainError("non-finite polynomial argument")
        if isinstance(self.family, ChebyshevT) and self.l < 1:
            raise InvalidParameter(
                "the weighted Chebyshev-T series is defined for l >= 1; "
                "the l = 0 object is the logarithmic generating function"
            )


class _DoubleOps:
    """Native complex/float arithmetic with Neumaier-compensated summation."""

    eps = 2.220446049250313e-16
    one_r = 1.0
    one_c = 1.0 + 0.0j

    @staticmethod
    def real(x):
        return float(x)

    @staticmethod
    def cplx(z):
        return complex(z)

    @staticmethod
    def sqrt(x):
        return math.sqrt(x)

    @staticmethod
    def abs(z):
        return abs(z)

    @staticmethod
    def isfinite(z):
        return cmath.isfinite(z)

    class Accumulator:
        __slots__ = ("sr", "si", "cr", "ci")

        def __init__(self):
            self.sr = self.si = self.cr = self.ci = 0.0

        def add(self, term):
            x = term.real
            s = self.sr
            t = s + x
            if abs(s) >= abs(x):
                self.cr += (s - t) + x
            else:
                self.cr += (x - t) + s
            self.sr = t
            y = term.imag
            s = self.si
            t = s + y
            if abs(s) >= abs(y):
                self.ci += (s - t) + y
            else:
                self.ci += (y - t) + s
            self.si = t

        def value(self):
            return complex(self.sr + self.cr, self.si + self.ci)


class _MpOps:
    """mpmath arithmetic at the fixed extended precision."""

    def __init__(self):
        self.eps = float(mpmath.mp.eps)
        self.one_r = mpmath.mpf(1)
        self.one_c = mpmath.mpc(1, 0)

    @staticmethod
    def real(x):
        return mpmath.mpf(float(x))

    @staticmethod
    def cplx(z):
        z = complex(z)
        return mpmath.mpc(z.real, z.imag)

    @staticmethod
    def sqrt(x):
        return mpmath.sqrt(x)

    @staticmethod
    def abs(z):
        return abs(z)

    @staticmethod
    def isfinite(z):
        return mpmath.isfinite(z)

    class Accumulator:
        __slots__ = ("s",)

        def __init__(self):
            self.s = mpmath.mpc(0, 0)

        def add(self, term):
            self.s += term

        def value(self):
            return self.s


def _term_core(family, l, t, arg, ops):
    """Yield the family term a_n (everything except the binomial weight)."""
    t = ops.cplx(t)
    if isinstance(family, (Gegenbauer, Legendre, ChebyshevU, Laguerre)):
        w = ops.real(arg)
        tp = ops.one_c
        for p in recurrence_terms(family, w, one=ops.one_r):
            yield tp * p
            tp = tp * t
    elif isinstance(family, ChebyshevT):
        w = ops.real(arg)
        two = 2 * ops.one_r
        tp = ops.one_c
        n = 0
        for p in recurrence_terms(family, w, one=ops.one_r):
            if n == 0:
                yield 0 * ops.one_c  # no n = 0 term in the weighted series
            else:
                yield tp * p * (two / n)
            tp = tp * t
            n += 1
    elif isinstance(family, Hermite):
        # g_n = z^n H_n(x)/n!  stays bounded for every z
        x = ops.real(arg)
        g_prev = ops.one_c
        g_cur = 2 * x * t
        yield g_prev
        yield g_cur
        n = 1
        while True:
            g_next = (2 * x * t * g_cur - 2 * t * t * g_prev) / (n + 1)
            yield g_next
            g_prev, g_cur = g_cur, g_next
            n += 1
    elif isinstance(family, Mehler):
        # z^n * hhat_n(x) * hhat_n(y) with hhat_n = H_n / sqrt(2^n n!)
        x, y = (ops.real(arg[0]), ops.real(arg[1]))
        hx_prev, hy_prev = ops.one_r, ops.one_r
        root2 = ops.sqrt(2 * ops.one_r)
        hx_cur, hy_cur = root2 * x, root2 * y
        zp = ops.one_c
        yield zp * hx_prev * hy_prev
        zp = zp * t
        yield zp * hx_cur * hy_cur
        n = 1
        while True:
            c1 = ops.sqrt((2 * ops.one_r) / (n + 1))
            c2 = ops.sqrt((ops.one_r * n) / (n + 1))
            hx_next = c1 * x * hx_cur - c2 * hx_prev
            hy_next = c1 * y * hy_cur - c2 * hy_prev
            zp = zp * t
            yield zp * hx_next * hy_next
            hx_prev, hx_cur = hx_cur, hx_next
            hy_prev, hy_cur = hy_cur, hy_next
            n += 1
    else:
        raise InvalidParameter(f"unknown series family: {family!r}")


def _run_sum(family, l, t, arg, ctx, ops, budget_scale=1.0):
    """One summation pass; returns (value, terms, est, converged, escalate).

    ``budget_scale`` < 1 makes the pass stop at a stricter internal target;
    the extended pass uses it to leave room for the downcast ulp.
    """
    W = ctx.tail_window
    rel_tol = ctx.rel_tol
    acc = ops.Accumulator()
    abs_sum = 0.0
    recent = []  # |term| history, at most 2W entries
    binom = ops.one_r
    count = 0
    tail_bound = math.inf
    for n, a in enumerate(_term_core(family, l, t, arg, ops)):
        if n < l:
            continue
        term = binom * a
        if not ops.isfinite(term):
            return acc.value(), count, math.inf, False, True
        acc.add(term)
        count += 1
        mag = float(ops.abs(term))
        abs_sum += mag
        recent.append(mag)
        if len(recent) > 2 * W:
            del recent[0]
        binom = binom * (n + 1) / (n + 1 - l)
        if count >= _MIN_TERMS and len(recent) == 2 * W:
            s_mag = float(ops.abs(acc.value()))
            budget = (rel_tol * s_mag + ABS_FLOOR) * budget_scale
            if mag <= budget:
                cur = max(recent[W:])
                if cur <= budget:
                    prev = max(recent[:W])
                    if cur == 0.0:
                        tail_bound = 0.0
                    elif prev > cur:
                        r_hat = (cur / prev) ** (1.0 / W)
                        tail_bound = cur * r_hat / (1.0 - r_hat)
                    else:
                        tail_bound = math.inf
                    round_est = _ROUND_FACTOR * ops.eps * abs_sum
                    if tail_bound + round_est <= budget:
                        return acc.value(), count, tail_bound + round_est, True, False
                    if round_est > 0.9 * budget:
                        # rounding alone nearly exhausts the budget; more
                        # terms in this precision cannot help
                        return acc.value(), count, tail_bound + round_est, False, True
        if count >= ctx.max_terms:
            break
    round_est = _ROUND_FACTOR * ops.eps * abs_sum
    return acc.value(), count, tail_bound + round_est, False, False


def _evaluate(family, l, t, arg, ctx):
    if ctx.mode == "extended":
        return _evaluate_mp(family, l, t, arg, ctx)
    ops = _DoubleOps()
    value, count, est, converged, escalate = _run_sum(family, l, t, arg, ctx, ops)
    if escalate:
        return _evaluate_mp(family, l, t, arg, ctx)
    return EvalReport(
        value=complex(value), terms_used=count, est_abs_error=float(est), converged=converged
    )


def _evaluate_mp(family, l, t, arg, ctx):
    with mpmath.mp.workdps(EXTENDED_DPS):
        ops = _MpOps()
        # half budget leaves room for the downcast ulp added below
        value, count, est, converged, _ = _run_sum(family, l, t, arg, ctx, ops, budget_scale=0.5)
        value = complex(value)
    # downcasting to double costs one ulp of the value
    est = float(est) + 2.3e-16 * abs(value)
    if converged and est > ctx.rel_tol * abs(value) + ABS_FLOOR:
        converged = False
    return EvalReport(value=value, terms_used=count, est_abs_error=est, converged=converged)


def sum_series(spec, ctx=PrecisionCtx()):
    """Adaptively sum Sum_{n>=l} binom(n,l) t^n (family term n).

    Binomial weights are carried incrementally through the ratio
    binom(n+1,l)/binom(n,l) = (n+1)/(n+1-l), so no factorials are formed.
    Returns an EvalReport; a report with converged=False means the stopping
    rule was not met within max_terms, never a silent wrong answer.
    """
    if not isinstance(spec, SeriesSpec):
        raise InvalidParameter("sum_series expects a SeriesSpec")
    return _evaluate(spec.family, spec.l, spec.t, spec.arg, ctx)


def sum_chebyshev_T_series(l, t, w, ctx=PrecisionCtx()):
    """Weighted Chebyshev-T series: terms carry the extra factor 2/n (l >= 1)."""
    spec = SeriesSpec(family=ChebyshevT(), l=l, t=complex(t), arg=float(w))
    return _evaluate(spec.family, spec.l, spec.t, spec.arg, ctx)


def sum_chebyshev_log_series(t, w, ctx=PrecisionCtx()):
    """The logarithmic Chebyshev series Sum_{n>=1} t^n (2/n) T_n(w).

    This is the l = 0 companion of sum_chebyshev_T_series; it converges to
    gen_chebyshev_log(t, w).
    """
    t = complex(t)
    if not cmath.isfinite(t) or abs(t) >= 1.0:
        raise DomainError(f"|t| must be < 1, got {t!r}")
    if not math.isfinite(float(w)):
        raise DomainError("non-finite w")
    return _evaluate(ChebyshevT(), 0, t, float(w), ctx)

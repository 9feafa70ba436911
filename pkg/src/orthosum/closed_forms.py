"""Closed-form sums of the binomially weighted series.

Every series of this kind sums to the product of three factors: the
generating function, the l-th power of a transformed variable, and the
degree-l polynomial of the family at a second transformed variable.  The
Chebyshev-T case stands out: its generating function is logarithmic and
drops out of the explicit formula.

The generalized Mehler sum is a finite expansion in products of pairs of
Laguerre polynomials of order -1/2 (equivalently, even-degree Hermite
polynomials), obtained from the factorization of the Mehler kernel into two
Laguerre generating functions.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, IllConditioned, InvalidParameter
from .generating_functions import (
    clog1p,
    gen_chebyshev_log,
    gen_gegenbauer,
    gen_hermite,
    gen_laguerre,
    gen_mehler,
    q_transform,
)
from .poly_kernels import (
    ChebyshevT,
    ChebyshevU,
    Gegenbauer,
    Hermite,
    Laguerre,
    Legendre,
    Mehler,
    eval_poly,
)

__all__ = [
    "MehlerPoint",
    "gegenbauer_sum",
    "legendre_sum",
    "chebyshev_T_sum",
    "chebyshev_U_sum",
    "laguerre_sum",
    "hermite_sum",
    "mehler_sum_laguerre_form",
    "mehler_sum_hermite_form",
    "mehler_sum_leibniz",
    "closed_sum",
]

_Q2_CONDITION_FLOOR = 1e-8
_MEHLER_BINOM_CAP = 64


@dataclass(frozen=True)
class MehlerPoint:
    """Evaluation point of the bilinear Hermite series: |z| < 1, real x, y."""

    z: complex
    x: float
    y: float

    def __post_init__(self):
        z = complex(self.z)
        if not cmath.isfinite(z):
            raise DomainError("non-finite z")
        if abs(z) >= 1.0:
            raise DomainError(f"|z| must be < 1, got {abs(z)}")
        if not (math.isfinite(float(self.x)) and math.isfinite(float(self.y))):
            raise DomainError("non-finite x or y")


def _check_l(l):
    if not isinstance(l, int) or l < 0:
        raise InvalidParameter(f"l must be a nonnegative integer, got {l!r}")


def _check_conditioning(t, w):
    q2 = 1.0 - 2.0 * float(w) * complex(t) + complex(t) ** 2
    if abs(q2) < _Q2_CONDITION_FLOOR:
        raise IllConditioned(f"1 - 2wt + t^2 = {q2!r} is too close to zero")


def gegenbauer_sum(lam, l, t, w):
    """Closed form of Sum binom(n,l) t^n C_n^lam(w): q^(-2 lam) (t/q)^l C_l^lam((w-t)/q)."""
    _check_l(l)
    g = gen_gegenbauer(lam, t, w)  # validates lam, t, w
    if l == 0:
        return g
    _check_conditioning(t, w)
    qt = q_transform(t, w)
    return g * (complex(t) * qt.xi_scale) ** l * eval_poly(Gegenbauer(lam), l, qt.eta)


def legendre_sum(l, t, w):
    """Legendre specialization (order 1/2) of gegenbauer_sum."""
    return gegenbauer_sum(0.5, l, t, w)


def chebyshev_T_sum(l, t, w):
    """Closed form of the weighted Chebyshev-T series, l >= 1: (t/q)^l (2/l) T_l((w-t)/q).

    The l = 0 object is the logarithmic series and is served by
    gen_chebyshev_log, not by this function.
    """
    if not isinstance(l, int) or l < 1:
        raise InvalidParameter(
            "chebyshev_T_sum requires l >= 1; use gen_chebyshev_log for l = 0"
        )
    gen_chebyshev_log(t, w)  # domain validation on (t, w)
    _check_conditioning(t, w)
    qt = q_transform(t, w)
    return (complex(t) * qt.xi_scale) ** l * (2.0 / l) * eval_poly(ChebyshevT(), l, qt.eta)


def chebyshev_U_sum(l, t, w):
    """Chebyshev-U specialization (order 1) of gegenbauer_sum."""
    return gegenbauer_sum(1.0, l, t, w)


def laguerre_sum(alpha, l, t, u):
    """Closed form of Sum binom(n,l) t^n L_n^alpha(u).

    Value: (1-t)^(-alpha-1) exp(-ut/(1-t)) (t/(1-t))^l L_l^alpha(u/(1-t)).
    """
    _check_l(l)
    g = gen_laguerre(alpha, t, u)  # validates alpha, t, u
    if l == 0:
        return g
    t = complex(t)
    r = 1.0 / (1.0 - t)
    return g * (t * r) ** l * eval_poly(Laguerre(alpha), l, float(u) * r)


def hermite_sum(l, z, x):
    """Closed form of Sum binom(n,l) z^n H_n(x)/n!: exp(2xz-z^2) (z^l/l!) H_l(x-z)."""
    _check_l(l)
    g = gen_hermite(z, x)
    if l == 0:
        return g
    z = complex(z)
    return g * z**l / math.factorial(l) * eval_poly(Hermite(), l, float(x) - z)


def _check_mehler_conditioning(z):
    if abs(1.0 - complex(z) ** 2) < _Q2_CONDITION_FLOOR:
        raise IllConditioned(f"1 - z^2 too close to zero at z = {z!r}")


def mehler_sum_laguerre_form(l, p):
    """Generalized Mehler sum as a finite expansion in Laguerre polynomials.

    (z/(1-z))^l M_0(z,x,y) Sum_{m=0}^{l} (-(1-z)/(1+z))^m
        L_{l-m}^{-1/2}((x-y)^2/(2(1-z))) L_m^{-1/2}((x+y)^2/(2(1+z))).
    """
    _check_l(l)
    m0 = gen_mehler(p.z, p.x, p.y)
    if l == 0:
        return m0
    _check_mehler_conditioning(p.z)
    z = complex(p.z)
    x, y = float(p.x), float(p.y)
    half = Laguerre(-0.5)
    u_minus = (x - y) ** 2 / (2.0 * (1.0 - z))
    u_plus = (x + y) ** 2 / (2.0 * (1.0 + z))
    ratio = -(1.0 - z) / (1.0 + z)
    total = 0.0 + 0.0j
    rp = 1.0 + 0.0j
    for m in range(l + 1):
        total += rp * eval_poly(half, l - m, u_minus) * eval_poly(half, m, u_plus)
        rp *= ratio
    return (z / (1.0 - z)) ** l * m0 * total


def mehler_sum_hermite_form(l, p):
    """Generalized Mehler sum expressed through even-degree Hermite polynomials.

    The square roots of 2(1 +- z) take the branch with positive real part,
    which is the principal branch on |z| < 1.
    """
    _check_l(l)
    m0 = gen_mehler(p.z, p.x, p.y)
    if l == 0:
        return m0
    if l > _MEHLER_BINOM_CAP:
        raise InvalidParameter(f"l exceeds the binomial cap {_MEHLER_BINOM_CAP}")
    _check_mehler_conditioning(p.z)
    z = complex(p.z)
    x, y = float(p.x), float(p.y)
    herm = Hermite()
    v_minus = (x - y) / cmath.sqrt(2.0 * (1.0 - z))
    v_plus = (x + y) / cmath.sqrt(2.0 * (1.0 + z))
    ratio = -(1.0 - z) / (1.0 + z)
    total = 0.0 + 0.0j
    rp = 1.0 + 0.0j
    for m in range(l + 1):
        total += (
            math.comb(l, m) * rp * eval_poly(herm, 2 * (l - m), v_minus) * eval_poly(herm, 2 * m, v_plus)
        )
        rp *= ratio
    scale = (-1.0) ** l / (math.factorial(l) * 4.0**l)
    return scale * (z / (1.0 - z)) ** l * m0 * total


def mehler_sum_leibniz(l, p):
    """Diagnostic route: the Leibniz expansion in Laguerre-series sums.

    Sum_{m=0}^{l} S_{l-m}(z, (x-y)^2/2) S_m(-z, (x+y)^2/2) with S the
    closed-form Laguerre sum of order -1/2.  Exists so the three Mehler
    routes can be cross-checked against each other.
    """
    _check_l(l)
    z = complex(p.z)
    x, y = float(p.x), float(p.y)
    u_minus = (x - y) ** 2 / 2.0
    u_plus = (x + y) ** 2 / 2.0
    total = 0.0 + 0.0j
    for m in range(l + 1):
        total += laguerre_sum(-0.5, l - m, z, u_minus) * laguerre_sum(-0.5, m, -z, u_plus)
    return total


def closed_sum(family, l, t, arg):
    """Dispatch the closed form for any series family at (l, t, argument)."""
    if isinstance(family, Gegenbauer):
        return gegenbauer_sum(family.lam, l, t, arg)
    if isinstance(family, Legendre):
        return legendre_sum(l, t, arg)
    if isinstance(family, ChebyshevT):
        if l == 0:
            return gen_chebyshev_log(t, arg)
        return chebyshev_T_sum(l, t, arg)
    if isinstance(family, ChebyshevU):
        return chebyshev_U_sum(l, t, arg)
    if isinstance(family, Laguerre):
        return laguerre_sum(family.alpha, l, t, arg)
    if isinstance(family, Hermite):
        return hermite_sum(l, t, arg)
    if isinstance(family, Mehler):
        x, y = arg
        return mehler_sum_laguerre_form(l, MehlerPoint(z=complex(t), x=x, y=y))
    raise InvalidParameter(f"unknown family: {family!r}")

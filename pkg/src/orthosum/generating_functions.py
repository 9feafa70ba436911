"""Generating functions of the polynomial families and the branch-correct
auxiliary square root q = (1 - 2wt + t^2)^(1/2), q(0) = 1.

All fractional powers are built from logarithms of the two factors
(1 - t*e^{i*theta}) and (1 - t*e^{-i*theta}) with w = cos(theta).  Each factor
stays in the open disk of radius |t| around 1, so it has positive real part
on |t| < 1 and its principal logarithm is continuous there.  No raw principal
power of 1 - 2wt + t^2 is ever taken.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, InvalidParameter
from .poly_kernels import (
    ChebyshevT,
    ChebyshevU,
    Gegenbauer,
    Hermite,
    Laguerre,
    Legendre,
    Mehler,
)

__all__ = [
    "QTransform",
    "q_transform",
    "gen_gegenbauer",
    "gen_chebyshev_log",
    "gen_laguerre",
    "gen_hermite",
    "gen_mehler",
    "generating_value",
]


@dataclass(frozen=True)
class QTransform:
    """Branch-resolved square root q plus the transformed argument eta=(w-t)/q."""

    q: complex
    eta: complex
    xi_scale: complex  # 1/q


def _check_point(t, w):
    t = complex(t)
    if not cmath.isfinite(t):
        raise DomainError(f"non-finite t: {t!r}")
    if abs(t) >= 1.0:
        raise DomainError(f"|t| must be < 1, got |t|={abs(t)}")
    w = float(w)
    if not math.isfinite(w):
        raise DomainError(f"non-finite w: {w!r}")
    if abs(w) > 1.0:
        raise DomainError(f"|w| must be <= 1, got w={w}")
    return t, w


def clog1p(z):
    """log(1+z) for complex z, accurate for small |z|.

    Kahan's correction: compute u = 1+z in working precision, then divide out
    the representation error of u-1 versus z.
    """
    z = complex(z)
    u = 1.0 + z
    if u == 1.0:
        return z
    d = u - 1.0
    if d == z:
        return cmath.log(u)
    return cmath.log(u) * (z / d)


def _log_q2(t, w):
    """Continuous branch of log(1 - 2wt + t^2) on |t|<1 (zero at t=0)."""
    s = math.sqrt(max(0.0, (1.0 - w) * (1.0 + w)))
    e = complex(w, s)  # e^{i*theta}
    return clog1p(-t * e) + clog1p(-t * e.conjugate())


def q_transform(t, w):
    """Branch-correct q, eta=(w-t)/q and 1/q for |t|<1, real w in [-1,1]."""
    t, w = _check_point(t, w)
    s = math.sqrt(max(0.0, (1.0 - w) * (1.0 + w)))
    e = complex(w, s)
    # both factors have positive real part, so principal roots compose safely
    q = cmath.sqrt(1.0 - t * e) * cmath.sqrt(1.0 - t * e.conjugate())
    return QTransform(q=q, eta=(w - t) / q, xi_scale=1.0 / q)


def gen_gegenbauer(lam, t, w):
    """Gegenbauer generating function q^(-2*lam) on the continuous branch."""
    Gegenbauer(lam)  # validates the order
    t, w = _check_point(t, w)
    return cmath.exp(-lam * _log_q2(t, w))


def gen_chebyshev_log(t, w):
    """Logarithmic Chebyshev-T generating function -log(1 - 2wt + t^2).

    Shares the q_transform branch: exp(result) * q^2 == 1.
    """
    t, w = _check_point(t, w)
    return -_log_q2(t, w)


def gen_laguerre(alpha, t, u):
    """Laguerre generating function (1-t)^(-alpha-1) exp(-ut/(1-t)).

    The two exponents are combined before exponentiating, which keeps the
    value finite even when the separate factors would overflow.
    """
    Laguerre(alpha)
    t = complex(t)
    if not cmath.isfinite(t):
        raise DomainError(f"non-finite t: {t!r}")
    if abs(t) >= 1.0:
        raise DomainError(f"|t| must be < 1, got |t|={abs(t)}")
    u = float(u)
    if not math.isfinite(u):
        raise DomainError(f"non-finite u: {u!r}")
    return cmath.exp(-(alpha + 1.0) * clog1p(-t) - u * t / (1.0 - t))


def gen_hermite(z, x):
    """Hermite generating function exp(2xz - z^2); entire in z."""
    z = complex(z)
    x = float(x)
    if not (cmath.isfinite(z) and math.isfinite(x)):
        raise DomainError("non-finite argument")
    return cmath.exp(2.0 * x * z - z * z)


def gen_mehler(z, x, y):
    """Bilinear Hermite (Mehler) generating function for |z|<1.

    (1-z^2)^(-1/2) exp{[2xyz - (x^2+y^2) z^2] / (1-z^2)} with the principal
    root of 1-z^2 (which has positive real part on the disk).
    """
    z = complex(z)
    if not cmath.isfinite(z):
        raise DomainError(f"non-finite z: {z!r}")
    if abs(z) >= 1.0:
        raise DomainError(f"|z| must be < 1, got |z|={abs(z)}")
    x = float(x)
    y = float(y)
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError("non-finite argument")
    z2 = z * z
    expo = (2.0 * x * y * z - (x * x + y * y) * z2) / (1.0 - z2)
    return cmath.exp(expo - 0.5 * clog1p(-z2))


def generating_value(family, t, arg):
    """Dispatch the generating function for a family at (t, argument).

    For Mehler, ``arg`` is the pair (x, y).  ChebyshevT maps to the
    logarithmic generating function.
    """
    if isinstance(family, Gegenbauer):
        return gen_gegenbauer(family.lam, t, arg)
    if isinstance(family, Legendre):
        return gen_gegenbauer(0.5, t, arg)
    if isinstance(family, ChebyshevU):
        return gen_gegenbauer(1.0, t, arg)
    if isinstance(family, ChebyshevT):
        return gen_chebyshev_log(t, arg)
    if isinstance(family, Laguerre):
        return gen_laguerre(family.alpha, t, arg)
    if isinstance(family, Hermite):
        return gen_hermite(t, arg)
    if isinstance(family, Mehler):
        x, y = arg
        return gen_mehler(t, x, y)
    raise InvalidParameter(f"unknown family: {family!r}")

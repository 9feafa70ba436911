"""Orthogonal polynomials of the five classical families at real or complex
arguments, evaluated by forward three-term recurrences.

The recurrence code is deliberately type generic: it only uses ``+ - * /`` on
the argument type, so the same loop serves Python complex numbers and mpmath
values (the extended-precision oracle reuses it).
"""

import cmath
import math
from dataclasses import dataclass

from .errors import DegreeCapExceeded, DomainError, InvalidParameter

__all__ = [
    "Gegenbauer",
    "Legendre",
    "ChebyshevT",
    "ChebyshevU",
    "Laguerre",
    "Hermite",
    "Mehler",
    "PolyFamily",
    "DEGREE_CAP_DEFAULT",
    "eval_poly",
    "eval_poly_sequence",
]

# Forward recurrences are the accuracy boundary of this module: they are
# stable for the |arg| = O(1) points the closed forms produce, not for
# asymptotically large arguments.
DEGREE_CAP_DEFAULT = 10_000


@dataclass(frozen=True)
class Gegenbauer:
    """Ultraspherical family of order lam (lam > -1/2, lam != 0)."""

    lam: float

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise InvalidParameter("Gegenbauer order must be finite")
        if self.lam <= -0.5:
            raise InvalidParameter(f"Gegenbauer order must exceed -1/2, got {self.lam}")
        if self.lam == 0.0:
            # The zero-order limit is a distinct series; use ChebyshevT.
            raise InvalidParameter("Gegenbauer order 0 is served by the Chebyshev-T path")


@dataclass(frozen=True)
class Legendre:
    pass


@dataclass(frozen=True)
class ChebyshevT:
    pass


@dataclass(frozen=True)
class ChebyshevU:
    pass


@dataclass(frozen=True)
class Laguerre:
    """Generalized Laguerre family of order alpha (alpha > -1)."""

    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise InvalidParameter("Laguerre order must be finite")
        if self.alpha <= -1.0:
            raise InvalidParameter(f"Laguerre order must exceed -1, got {self.alpha}")


@dataclass(frozen=True)
class Hermite:
    pass


@dataclass(frozen=True)
class Mehler:
    """Marker for the bilinear Hermite (Mehler) series; not a polynomial family."""


PolyFamily = Gegenbauer | Legendre | ChebyshevT | ChebyshevU | Laguerre | Hermite


def _require_finite(value, what="argument"):
    if isinstance(value, complex):
        ok = cmath.isfinite(value)
    else:
        ok = math.isfinite(value)
    if not ok:
        raise DomainError(f"non-finite {what}: {value!r}")


def recurrence_terms(family, arg, one=1.0):
    """Yield p_0(arg), p_1(arg), ... for the given family.

    ``one`` seeds the arithmetic type; pass an mpmath unit to run the same
    recurrence in extended precision.
    """
    x = arg * one
    if isinstance(family, Gegenbauer):
        lam = family.lam * one
        p_prev = one
        p_cur = 2 * lam * x
        yield p_prev
        yield p_cur
        n = 1
        while True:
            p_next = (2 * (n + lam) * x * p_cur - (n + 2 * lam - 1) * p_prev) / (n + 1)
            yield p_next
            p_prev, p_cur = p_cur, p_next
            n += 1
    elif isinstance(family, Legendre):
        p_prev = one
        p_cur = x
        yield p_prev
        yield p_cur
        n = 1
        while True:
            p_next = ((2 * n + 1) * x * p_cur - n * p_prev) / (n + 1)
            yield p_next
            p_prev, p_cur = p_cur, p_next
            n += 1
    elif isinstance(family, (ChebyshevT, ChebyshevU)):
        p_prev = one
        p_cur = x if isinstance(family, ChebyshevT) else 2 * x
        yield p_prev
        yield p_cur
        while True:
            p_next = 2 * x * p_cur - p_prev
            yield p_next
            p_prev, p_cur = p_cur, p_next
    elif isinstance(family, Laguerre):
        alpha = family.alpha * one
        p_prev = one
        p_cur = one + alpha - x
        yield p_prev
        yield p_cur
        n = 1
        while True:
            p_next = ((2 * n + 1 + alpha - x) * p_cur - (n + alpha) * p_prev) / (n + 1)
            yield p_next
            p_prev, p_cur = p_cur, p_next
            n += 1
    elif isinstance(family, Hermite):
        p_prev = one
        p_cur = 2 * x
        yield p_prev
        yield p_cur
        n = 1
        while True:
            p_next = 2 * x * p_cur - 2 * n * p_prev
            yield p_next
            p_prev, p_cur = p_cur, p_next
            n += 1
    else:
        raise InvalidParameter(f"not a polynomial family: {family!r}")


def eval_poly_sequence(family, n_max, arg, degree_cap=DEGREE_CAP_DEFAULT):
    """Values of degrees 0..n_max in one recurrence pass.

    Element k is bit-for-bit the value eval_poly(family, k, arg) returns.
    """
    if n_max < 0:
        raise InvalidParameter(f"n_max must be >= 0, got {n_max}")
    if n_max > degree_cap:
        raise DegreeCapExceeded(f"degree {n_max} exceeds cap {degree_cap}")
    arg = complex(arg)
    _require_finite(arg)
    out = []
    gen = recurrence_terms(family, arg, one=1.0 + 0j)
    for _ in range(n_max + 1):
        out.append(next(gen))
    return out


def eval_poly(family, n, arg, degree_cap=DEGREE_CAP_DEFAULT):
    """Value of the degree-n family member at a real or complex argument."""
    return eval_poly_sequence(family, n, arg, degree_cap=degree_cap)[-1]

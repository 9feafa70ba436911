"""Asymptotic recovery of the Hermite sums from the Gegenbauer and Laguerre
closed forms.

Both routes converge to hermite_sum as the order parameter grows; we verify
the convergence trend only, since no rate is claimed by the underlying
theory.  Observed rates are O(1/parameter) in practice and are logged by the
test suite, not asserted.
"""

import math

from .closed_forms import gegenbauer_sum, laguerre_sum
from .errors import DomainError, InvalidParameter

__all__ = ["hermite_from_gegenbauer", "hermite_from_laguerre"]


def hermite_from_gegenbauer(lam, l, z, x):
    """Gegenbauer sum at the scaled point (z/sqrt(lam), x/sqrt(lam)).

    Tends to hermite_sum(l, z, x) as lam grows; requires |z| < sqrt(lam).
    """
    if not (math.isfinite(lam) and lam > 0.0):
        raise InvalidParameter(f"need a positive order, got {lam!r}")
    scale = lam**-0.5
    t = scale * complex(z)
    if abs(t) >= 1.0:
        raise DomainError(f"scaled |t| = {abs(t)} is not inside the unit disk")
    return gegenbauer_sum(lam, l, t, scale * float(x))


def hermite_from_laguerre(alpha, l, z, x):
    """Laguerre sum at (sqrt(2/alpha) z, alpha (1 - sqrt(2/alpha) x)).

    Tends to hermite_sum(l, z, x) as alpha grows.
    """
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise InvalidParameter(f"need a positive order, got {alpha!r}")
    scale = math.sqrt(2.0 / alpha)
    t = scale * complex(z)
    if abs(t) >= 1.0:
        raise DomainError(f"scaled |t| = {abs(t)} is not inside the unit disk")
    return laguerre_sum(alpha, l, t, alpha * (1.0 - scale * float(x)))

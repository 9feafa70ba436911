"""Third, independent oracle: Cauchy-integral representations evaluated by
uniform trapezoid quadrature on circles.

For a function analytic in an annulus around the contour, the N-node
periodic trapezoid rule recovers Taylor coefficients with spectral accuracy;
the only aliasing term is (r/rho)^N where rho is the distance to the nearest
singularity.  Node evaluations are summed in fixed index order so results
are reproducible regardless of any parallel scheduling by callers.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, InvalidParameter, QuadratureDiverged
from .generating_functions import generating_value
from .poly_kernels import (
    ChebyshevT,
    ChebyshevU,
    Gegenbauer,
    Hermite,
    Laguerre,
    Legendre,
    Mehler,
)

__all__ = ["ContourSpec", "coefficient_by_contour", "derivative_series_by_contour", "default_radius"]

_IMAG_RESIDUE_TOL = 1e-8


@dataclass(frozen=True)
class ContourSpec:
    """Circle contour: radius strictly inside the singularity-free disk."""

    radius: float = 0.5
    nodes: int = 256

    def __post_init__(self):
        if not (0.0 < self.radius < 1.0) or not math.isfinite(self.radius):
            raise InvalidParameter(f"radius must lie in (0,1), got {self.radius}")
        if self.nodes < 16:
            raise InvalidParameter(f"need at least 16 nodes, got {self.nodes}")


def default_radius(t):
    """Default translated-contour radius: half the remaining analyticity gap."""
    return min(0.5, (1.0 - abs(complex(t))) / 2.0)


def _poly_scale(family, n):
    """Factor turning the n-th Taylor coefficient into the polynomial value."""
    if isinstance(family, (Gegenbauer, Legendre, ChebyshevU, Laguerre)):
        return 1.0
    if isinstance(family, Hermite):
        return math.factorial(n)
    if isinstance(family, ChebyshevT):
        if n == 0:
            raise InvalidParameter("the logarithmic series has no n = 0 coefficient")
        return n / 2.0
    raise InvalidParameter(f"no coefficient contour for family {family!r}")


def coefficient_by_contour(family, n, arg, c=ContourSpec()):
    """Degree-n polynomial value extracted as a Taylor coefficient.

    Averages G_0(r e^{i theta_k}, arg) (r e^{i theta_k})^{-n} over uniform
    nodes.  The imaginary part of the result is a quadrature diagnostic: the
    coefficient is real for the real arguments accepted here.
    """
    if not isinstance(n, int) or n < 0:
        raise InvalidParameter(f"n must be a nonnegative integer, got {n!r}")
    scale = _poly_scale(family, n)
    if isinstance(family, Mehler):
        raise InvalidParameter("Mehler has no single-polynomial coefficient")
    N = c.nodes
    r = c.radius
    total = 0.0 + 0.0j
    for k in range(N):
        theta = 2.0 * math.pi * k / N
        s = cmath.rect(r, theta)
        total += generating_value(family, s, arg) * cmath.exp(complex(0.0, -n * theta))
    value = scale * total / (N * r**n)
    ref = max(1.0, abs(value))
    if abs(value.imag) > _IMAG_RESIDUE_TOL * ref:
        raise QuadratureDiverged(
            f"imaginary residue {value.imag:.3e} exceeds {_IMAG_RESIDUE_TOL} at n={n}, r={r}"
        )
    return value


def derivative_series_by_contour(family, l, t, arg, c=None):
    """Weighted series value via the translated-contour derivative integral.

    t^l times the average of G_0(s_k + t, arg) s_k^{-l} over uniform nodes
    s_k on |s| = r; the contour must satisfy |t| + r < 1 so the translated
    points stay inside the analyticity disk (no restriction for Hermite,
    whose generating function is entire).
    """
    if not isinstance(l, int) or l < 0:
        raise InvalidParameter(f"l must be a nonnegative integer, got {l!r}")
    t = complex(t)
    if not cmath.isfinite(t):
        raise DomainError("non-finite t")
    if c is None:
        c = ContourSpec(radius=default_radius(t) if not isinstance(family, Hermite) else 0.5)
    if not isinstance(family, Hermite) and abs(t) + c.radius >= 1.0:
        raise DomainError(
            f"translated contour leaves the unit disk: |t| + r = {abs(t) + c.radius}"
        )
    if isinstance(family, ChebyshevT) and l < 1:
        raise InvalidParameter("the weighted Chebyshev-T series requires l >= 1")
    value, _ = _derivative_series_with_diag(family, l, t, arg, c)
    return value


def _derivative_series_with_diag(family, l, t, arg, c):
    """Same quadrature, also reporting max |G_0| over the nodes.

    The node maximum lets callers estimate the double-precision noise floor
    of the quadrature (relevant when the series value is exponentially
    smaller than the integrand).
    """
    N = c.nodes
    r = c.radius
    total = 0.0 + 0.0j
    node_max = 0.0
    for k in range(N):
        theta = 2.0 * math.pi * k / N
        s = cmath.rect(r, theta)
        g = generating_value(family, s + t, arg)
        node_max = max(node_max, abs(g))
        total += g * cmath.exp(complex(0.0, -l * theta))
    return t**l * total / (N * r**l), node_max

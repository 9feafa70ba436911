"""orthosum: closed-form sums of binomially weighted orthogonal-polynomial
series, cross-checked by independent series and contour oracles, plus the
harmonic-oscillator propagator application."""

from .closed_forms import (
    MehlerPoint,
    chebyshev_T_sum,
    chebyshev_U_sum,
    closed_sum,
    gegenbauer_sum,
    hermite_sum,
    laguerre_sum,
    legendre_sum,
    mehler_sum_hermite_form,
    mehler_sum_laguerre_form,
    mehler_sum_leibniz,
)
from .contour_verifier import ContourSpec, coefficient_by_contour, derivative_series_by_contour
from .errors import (
    DegreeCapExceeded,
    DomainError,
    IllConditioned,
    InvalidParameter,
    OrthosumError,
    QuadratureDiverged,
)
from .generating_functions import (
    QTransform,
    gen_chebyshev_log,
    gen_gegenbauer,
    gen_hermite,
    gen_laguerre,
    gen_mehler,
    generating_value,
    q_transform,
)
from .hermite_limits import hermite_from_gegenbauer, hermite_from_laguerre
from .oscillator_propagator import (
    OscillatorParams,
    SpacetimePoint,
    eigenfunction,
    propagator_expansion,
    propagator_explicit,
    propagator_grid,
    propagator_mehler,
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
    eval_poly_sequence,
)
from .series_oracle import (
    EvalReport,
    PrecisionCtx,
    SeriesSpec,
    sum_chebyshev_T_series,
    sum_chebyshev_log_series,
    sum_series,
)

__version__ = "0.1.0"

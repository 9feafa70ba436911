import math
from random import Random

import pytest

from orthosum.closed_forms import closed_sum, legendre_sum
from orthosum.errors import DomainError, InvalidParameter
from orthosum.generating_functions import (
    gen_gegenbauer,
    gen_hermite,
    gen_laguerre,
    gen_mehler,
    generating_value,
)
from orthosum.poly_kernels import (
    ChebyshevT,
    ChebyshevU,
    Gegenbauer,
    Hermite,
    Laguerre,
    Legendre,
    Mehler,
)
from orthosum.series_oracle import (
    ABS_FLOOR,
    EvalReport,
    PrecisionCtx,
    SeriesSpec,
    sum_chebyshev_T_series,
    sum_series,
)

from conftest import complex_step_derivative, rel_err, richardson_central, richardson_second


def test_geometric_legendre():
    rep = sum_series(SeriesSpec(Legendre(), 0, 0.5, 1.0))
    assert rep.converged
    assert rep.value == pytest.approx(2.0, rel=1e-13)


def test_geometric_chebyshev_u():
    rep = sum_series(SeriesSpec(ChebyshevU(), 0, 0.5, 1.0))
    assert rep.converged
    assert rep.value == pytest.approx(4.0, rel=1e-13)


def test_mehler_against_generating_function():
    rep = sum_series(SeriesSpec(Mehler(), 0, 0.4, (1.0, -0.5)))
    assert rep.converged
    assert abs(rep.value - gen_mehler(0.4, 1.0, -0.5)) <= 10 * rep.est_abs_error + 1e-13


def test_weighted_legendre_against_closed_form():
    rep = sum_series(SeriesSpec(Legendre(), 2, 0.3, 0.5))
    assert rel_err(rep.value, legendre_sum(2, 0.3, 0.5)) < 1e-12


def test_chebyshev_t_series_trivial():
    rep = sum_chebyshev_T_series(1, 0.5, 1.0)
    assert rep.converged
    assert rep.value == pytest.approx(2.0, rel=1e-13)


def test_chebyshev_t_series_rejects_l_zero():
    with pytest.raises(InvalidParameter):
        sum_chebyshev_T_series(0, 0.3, 0.5)


@pytest.mark.parametrize(
    "family,t,arg",
    [
        (Gegenbauer(0.8), 0.45, -0.3),
        (Legendre(), -0.6, 0.2),
        (ChebyshevU(), 0.3, 0.9),
        (Laguerre(-0.5), 0.35, 2.2),
        (Hermite(), 1.4, -0.8),
        (Mehler(), -0.5, (0.7, 1.9)),
    ],
)
def test_l_zero_reduces_to_generating_function(family, t, arg):
    rep = sum_series(SeriesSpec(family, 0, complex(t), arg))
    assert rep.converged
    target = generating_value(family, t, arg)
    assert abs(rep.value - target) <= 10 * (rep.est_abs_error + 1e-12 * abs(target))


def _gegenbauer_gen_real_path(t):
    # same function as gen_gegenbauer on the real interval, written so an
    # infinitesimal imaginary step propagates linearly (complex-step safe)
    import cmath

    lam, w = 0.7, 0.4
    return cmath.exp(-lam * cmath.log(1.0 - 2.0 * w * t + t * t))


class TestDerivativeConsistency:
    """The weighted sum equals (t^l/l!) d^l/dt^l of the generating function."""

    cases = [
        (Gegenbauer(0.7), 0.35, 0.4, _gegenbauer_gen_real_path),
        (Laguerre(0.3), 0.3, 1.8, lambda t: gen_laguerre(0.3, t, 1.8)),
        (Hermite(), 0.6, 0.9, lambda t: gen_hermite(t, 0.9)),
        (Mehler(), 0.4, (0.8, -0.6), lambda t: gen_mehler(t, 0.8, -0.6)),
    ]

    @pytest.mark.parametrize("family,t,arg,g0", cases)
    def test_l1(self, family, t, arg, g0):
        d1 = complex_step_derivative(g0, t)
        target = t * d1
        rep = sum_series(SeriesSpec(family, 1, complex(t), arg))
        assert abs(rep.value - target) < 1e-8 * max(1.0, abs(target))

    @pytest.mark.parametrize("family,t,arg,g0", cases)
    def test_l2(self, family, t, arg, g0):
        g1 = lambda s: complex_step_derivative(g0, s)
        d2 = richardson_central(g1, t, 2e-3)
        target = t**2 / 2.0 * d2
        rep = sum_series(SeriesSpec(family, 2, complex(t), arg))
        assert abs(rep.value - target) < 1e-8 * max(1.0, abs(target))

    @pytest.mark.parametrize("family,t,arg,g0", cases)
    def test_l3(self, family, t, arg, g0):
        g1 = lambda s: complex_step_derivative(g0, s)
        d3 = richardson_second(g1, t, 4e-3)
        target = t**3 / 6.0 * d3
        rep = sum_series(SeriesSpec(family, 3, complex(t), arg))
        assert abs(rep.value - target) < 1e-8 * max(1.0, abs(target))


def test_monotone_refinement():
    spec = SeriesSpec(Gegenbauer(1.3), 2, 0.55, -0.4)
    tols = [1e-6, 1e-8, 1e-10, 1e-12, 1e-14]
    previous = math.inf
    for tol in tols:
        rep = sum_series(spec, PrecisionCtx(rel_tol=tol))
        assert rep.converged
        assert rep.est_abs_error <= previous * (1.0 + 1e-9) + ABS_FLOOR
        previous = rep.est_abs_error


def test_extended_agrees_within_standard_bound():
    rng = Random(21)
    specs = []
    for _ in range(25):
        lam = 5.0 - 5.4 * rng.random() or 0.4
        specs.append(
            SeriesSpec(Gegenbauer(lam), rng.randint(0, 6), complex(rng.uniform(-0.85, 0.85)), rng.uniform(-1, 1))
        )
        specs.append(
            SeriesSpec(
                Laguerre(5.0 - 5.9 * rng.random()),
                rng.randint(0, 6),
                complex(rng.uniform(-0.85, 0.85)),
                rng.uniform(0, 10),
            )
        )
    for spec in specs:
        std = sum_series(spec, PrecisionCtx())
        ext = sum_series(spec, PrecisionCtx(mode="extended"))
        assert std.converged and ext.converged
        assert abs(std.value - ext.value) <= std.est_abs_error + 1e-300


def test_report_invariant_on_converged_reports():
    rng = Random(22)
    for _ in range(60):
        spec = SeriesSpec(
            Legendre(), rng.randint(0, 8), complex(rng.uniform(-0.9, 0.9)), rng.uniform(-1, 1)
        )
        ctx = PrecisionCtx(rel_tol=10.0 ** -rng.randint(6, 14))
        rep = sum_series(spec, ctx)
        if rep.converged:
            assert rep.est_abs_error <= ctx.rel_tol * abs(rep.value) + ABS_FLOOR


def test_not_converged_is_flagged_not_raised():
    rep = sum_series(SeriesSpec(Legendre(), 0, 0.95, 0.3), PrecisionCtx(max_terms=40))
    assert not rep.converged
    assert rep.terms_used == 40


def test_extinction_escalates_and_stays_accurate():
    # value ~ e^-90 below the largest term; plain double would return noise
    spec = SeriesSpec(Laguerre(1.3), 3, complex(0.88), 9.5)
    rep = sum_series(spec)
    assert rep.converged
    closed = closed_sum(spec.family, spec.l, spec.t, spec.arg)
    assert rel_err(rep.value, closed) < 1e-12


def test_domain_validation():
    with pytest.raises(DomainError):
        SeriesSpec(Legendre(), 0, 1.0, 0.5)
    with pytest.raises(DomainError):
        SeriesSpec(Mehler(), 0, 1.0, (0.5, 0.5))
    with pytest.raises(InvalidParameter):
        SeriesSpec(Legendre(), -1, 0.5, 0.5)
    with pytest.raises(InvalidParameter):
        PrecisionCtx(rel_tol=0.0)
    with pytest.raises(InvalidParameter):
        PrecisionCtx(tail_window=1)
    # Hermite is entire: large |z| is legal
    rep = sum_series(SeriesSpec(Hermite(), 0, 3.0, 0.5))
    assert rep.converged
    assert rel_err(rep.value, gen_hermite(3.0, 0.5)) < 1e-11


def test_t_zero_short_circuit():
    rep = sum_series(SeriesSpec(Legendre(), 0, 0.0, 0.4))
    assert rep.converged
    assert rep.value == 1.0
    rep = sum_series(SeriesSpec(Mehler(), 2, 0.0, (1.0, 1.0)))
    assert rep.converged
    assert rep.value == 0.0

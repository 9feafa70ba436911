import cmath
import math
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthosum.errors import DomainError, InvalidParameter
from orthosum.generating_functions import (
    gen_chebyshev_log,
    gen_gegenbauer,
    gen_hermite,
    gen_laguerre,
    gen_mehler,
    q_transform,
)
from orthosum.poly_kernels import Gegenbauer, Laguerre, Legendre, Mehler
from orthosum.series_oracle import PrecisionCtx, SeriesSpec, sum_chebyshev_log_series, sum_series

from conftest import rel_err


class TestQTransform:
    def test_t_zero_is_exact(self):
        qt = q_transform(0.0, 0.3)
        assert qt.q == 1.0
        assert qt.eta == 0.3
        assert qt.xi_scale == 1.0

    def test_w_one_collapses_to_one_minus_t(self):
        qt = q_transform(0.5, 1.0)
        assert qt.q == pytest.approx(0.5, rel=1e-15)
        assert qt.eta == pytest.approx(1.0, rel=1e-14)

    def test_complex_t_square_roundtrip(self):
        t = 0.3j
        qt = q_transform(t, 0.5)
        expected = 1.0 - 2 * 0.5 * t + t * t
        assert rel_err(qt.q**2, expected) < 1e-14

    @settings(max_examples=150, deadline=None)
    @given(
        r=st.floats(min_value=0.0, max_value=0.95),
        phi=st.floats(min_value=0.0, max_value=2 * math.pi),
        w=st.floats(min_value=-1.0, max_value=1.0),
    )
    def test_square_identity_property(self, r, phi, w):
        t = cmath.rect(r, phi)
        qt = q_transform(t, w)
        target = 1.0 - 2.0 * w * t + t * t
        assert abs(qt.q**2 - target) <= 1e-14 * max(1.0, abs(target))

    def test_eta_squared_at_most_one_for_real_t(self):
        rng = Random(9)
        for _ in range(200):
            t = rng.uniform(-0.999, 0.999)
            w = rng.uniform(-1.0, 1.0)
            eta = q_transform(t, w).eta
            assert abs(eta.imag) < 1e-15
            assert eta.real**2 <= 1.0 + 1e-12

    def test_continuity_along_arc(self):
        # the branch never jumps while t walks a circle inside the disk
        w = -0.35
        prev = q_transform(cmath.rect(0.9, 0.0), w).q
        for k in range(1, 721):
            cur = q_transform(cmath.rect(0.9, k * 2 * math.pi / 720), w).q
            assert abs(cur - prev) < 0.05
            prev = cur

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            q_transform(1.0, 0.5)
        with pytest.raises(DomainError):
            q_transform(0.5, 1.2)
        with pytest.raises(DomainError):
            q_transform(complex(float("nan"), 0), 0.5)


class TestGeneratingFunctions:
    def test_trivial_values(self):
        assert gen_gegenbauer(0.5, 0.0, 0.77) == 1.0
        assert gen_gegenbauer(1.0, 0.5, 1.0) == pytest.approx(4.0, rel=1e-14)
        assert gen_chebyshev_log(0.0, 0.4) == 0.0
        assert gen_chebyshev_log(0.5, 1.0) == pytest.approx(-2.0 * math.log(0.5), rel=1e-14)
        assert gen_laguerre(0.0, 0.0, 5.0) == 1.0
        assert gen_laguerre(0.0, 0.5, 0.0) == pytest.approx(2.0, rel=1e-14)
        assert gen_hermite(0.0, 1.23) == 1.0
        assert gen_hermite(1.1, 1.1) == pytest.approx(math.exp(1.1**2), rel=1e-14)
        assert gen_mehler(0.0, 1.0, -2.0) == 1.0
        assert gen_mehler(0.5, 0.0, 0.0) == pytest.approx(0.75**-0.5, rel=1e-14)

    def test_gegenbauer_series_oracle(self):
        got = gen_gegenbauer(0.5, 0.4, 0.6)
        rep = sum_series(SeriesSpec(Legendre(), 0, 0.4, 0.6))
        assert rep.converged
        assert rel_err(got, rep.value) < 1e-12

    def test_chebyshev_log_series_oracle(self):
        got = gen_chebyshev_log(0.3, 0.2)
        rep = sum_chebyshev_log_series(0.3, 0.2)
        assert rep.converged
        assert rel_err(got, rep.value) < 1e-12

    def test_laguerre_series_oracle(self):
        got = gen_laguerre(-0.5, 0.3, 1.7)
        rep = sum_series(SeriesSpec(Laguerre(-0.5), 0, 0.3, 1.7))
        assert rep.converged
        assert rel_err(got, rep.value) < 1e-12

    def test_hermite_series_oracle(self):
        from orthosum.poly_kernels import Hermite

        got = gen_hermite(0.7, 1.1)
        rep = sum_series(SeriesSpec(Hermite(), 0, 0.7, 1.1))
        assert rep.converged
        assert rel_err(got, rep.value) < 1e-12

    def test_mehler_series_oracle(self):
        got = gen_mehler(0.4, 1.0, -0.5)
        rep = sum_series(SeriesSpec(Mehler(), 0, 0.4, (1.0, -0.5)))
        assert rep.converged
        assert rel_err(got, rep.value) < 1e-11

    def test_mehler_factorization(self):
        rng = Random(3)
        for _ in range(60):
            z = rng.uniform(-0.85, 0.85)
            x = rng.uniform(-3, 3)
            y = rng.uniform(-3, 3)
            lhs = gen_mehler(z, x, y)
            rhs = gen_laguerre(-0.5, z, 0.5 * (x - y) ** 2) * gen_laguerre(
                -0.5, -z, 0.5 * (x + y) ** 2
            )
            assert rel_err(lhs, rhs) < 1e-13

    def test_branch_consistency_log_vs_root(self):
        rng = Random(4)
        for _ in range(100):
            t = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.4, 0.4))
            if abs(t) >= 0.95:
                continue
            w = rng.uniform(-1, 1)
            q = q_transform(t, w).q
            residual = cmath.exp(gen_chebyshev_log(t, w)) * q * q
            assert abs(residual - 1.0) < 1e-13

    def test_parameter_validation(self):
        with pytest.raises(InvalidParameter):
            gen_gegenbauer(0.0, 0.3, 0.5)
        with pytest.raises(InvalidParameter):
            gen_laguerre(-1.2, 0.3, 1.0)
        with pytest.raises(DomainError):
            gen_mehler(1.0, 0.0, 0.0)
        with pytest.raises(DomainError):
            gen_laguerre(0.5, 1.01, 1.0)


class TestFunctionalEquations:
    def test_gegenbauer_functional_equation(self):
        rng = Random(11)
        for _ in range(60):
            lam = 5.0 - 5.4 * rng.random() or 0.3
            s = rng.uniform(-0.45, 0.45)
            t = rng.uniform(-0.44, 0.44)
            w = rng.uniform(-1, 1)
            qt = q_transform(t, w)
            lhs = gen_gegenbauer(lam, s + t, w)
            rhs = gen_gegenbauer(lam, t, w) * gen_gegenbauer(
                lam, s * qt.xi_scale, qt.eta.real
            )
            assert rel_err(lhs, rhs) < 1e-12

    def test_laguerre_functional_equation(self):
        rng = Random(12)
        for _ in range(60):
            alpha = 5.0 - 5.9 * rng.random()
            s = rng.uniform(-0.45, 0.45)
            t = rng.uniform(-0.44, 0.44)
            u = rng.uniform(0.0, 10.0)
            lhs = gen_laguerre(alpha, s + t, u)
            rhs = gen_laguerre(alpha, t, u) * gen_laguerre(alpha, s / (1 - t), u / (1 - t))
            assert rel_err(lhs, rhs) < 1e-12

    def test_hermite_functional_equation(self):
        rng = Random(13)
        for _ in range(60):
            v = rng.uniform(-2, 2)
            z = rng.uniform(-2, 2)
            x = rng.uniform(-3, 3)
            lhs = gen_hermite(v + z, x)
            rhs = gen_hermite(z, x) * gen_hermite(v, x - z)
            assert rel_err(lhs, rhs) < 1e-13

    def test_hermite_functional_equation_complex_shift(self):
        # same identity with a complex first slot; the shifted second slot
        # is inlined because the public API keeps it real
        rng = Random(14)
        for _ in range(40):
            v = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            x = rng.uniform(-3, 3)
            lhs = gen_hermite(v + z, x)
            rhs = gen_hermite(z, x) * cmath.exp(2 * (x - z) * v - v * v)
            assert rel_err(lhs, rhs) < 1e-13

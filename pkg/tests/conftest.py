import math

import mpmath as mp
import pytest

_REL_FLOOR = 1e-280


def rel_err(a, b):
    return abs(a - b) / max(abs(a), abs(b), _REL_FLOOR)


def gegenbauer_explicit_mp(lam, n, w, dps=40):
    """Independent finite-sum evaluation of C_n^lam(w) in extended precision."""
    with mp.mp.workdps(dps):
        lam = mp.mpf(lam)
        w = mp.mpf(w)
        total = mp.mpf(0)
        for k in range(n // 2 + 1):
            total += (
                (-1) ** k
                * mp.gamma(lam + n - k)
                / (mp.gamma(lam) * mp.factorial(k) * mp.factorial(n - 2 * k))
                * (2 * w) ** (n - 2 * k)
            )
        return float(total)


def complex_step_derivative(f, t, h=1e-100):
    """Exact-to-roundoff first derivative for functions real on the real line."""
    return f(complex(t, h)).imag / h


def richardson_central(g, t, d):
    """Fourth-order central difference of g via one Richardson sweep."""

    def central(step):
        return (g(t + step) - g(t - step)) / (2.0 * step)

    return (4.0 * central(d / 2.0) - central(d)) / 3.0


def richardson_second(g, t, d):
    """Fourth-order second difference of g via one Richardson sweep."""

    def second(step):
        return (g(t + step) - 2.0 * g(t) + g(t - step)) / step**2

    return (4.0 * second(d / 2.0) - second(d)) / 3.0


@pytest.fixture
def tight():
    """Shorthand for approx with a tight relative tolerance."""

    def _tight(value, tol=1e-13):
        return pytest.approx(value, rel=tol, abs=1e-300)

    return _tight


def assert_close(a, b, rel=0.0, abs_=0.0, label=""):
    err = abs(a - b)
    bound = rel * max(abs(a), abs(b)) + abs_
    assert err <= bound, f"{label} |{a} - {b}| = {err:.3e} > {bound:.3e}"


def uniform_disk(rng, radius):
    r = radius * math.sqrt(rng.random())
    phi = 2.0 * math.pi * rng.random()
    return complex(r * math.cos(phi), r * math.sin(phi))

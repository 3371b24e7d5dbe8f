import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from snapout.corpus import random_line
from snapout.errors import NonPositiveGamma, NonPositiveLambda
from snapout.function_space import EPS_ALG, Grid, LineFunction, eps_disc, reflect, sup_norm
from snapout.kernels import (
    cosh_line,
    dirac_limit_residual,
    exp_convolve,
    exp_line,
    improper_left,
    improper_right,
    kernel_moments,
    laplace_at,
    sinh_line,
)

from conftest import SMALL

ONE = LineFunction.constant(SMALL, 1.0)


def at(f, x):
    return float(f.evaluate(x))


def window(f, g, x_max=5.0):
    keep = np.abs(SMALL.nodes) <= x_max + 1e-12
    return float(np.max(np.abs((f - g).samples[keep])))


class TestMoments:
    @pytest.mark.parametrize("h", [0.01, 0.5])
    def test_series_matches_closed_form_at_cutoff(self, h):
        z = 0.1
        below = kernel_moments(z / h * (1 - 1e-9), h)
        above = kernel_moments(z / h * (1 + 1e-9), h)
        np.testing.assert_allclose(below, above, rtol=1e-7)

    def test_zero_rate_is_trapezoid(self):
        m0, m1 = kernel_moments(0.0, 0.2)
        assert m0 == pytest.approx(0.1) and m1 == pytest.approx(0.1)


class TestExpConvolve:
    def test_constant_right(self):
        out = exp_convolve(1.0, ONE)
        assert at(out, 0.0) == 0.0
        assert at(out, 1.0) == pytest.approx(1 - math.exp(-1), abs=1e-12)

    def test_constant_left_is_signed(self):
        out = exp_convolve(1.0, ONE)
        assert at(out, -1.0) == pytest.approx(1 - math.e, abs=1e-12)

    def test_exponential_pair(self):
        out = exp_convolve(1.0, exp_line(SMALL, 2.0))
        x = SMALL.nodes
        exact = np.exp(-x) - np.exp(-2 * x)
        keep = x >= 0
        assert np.max(np.abs(out.samples - exact)[keep]) <= eps_disc(SMALL)

    @pytest.mark.parametrize("a,b", [(1.0, 2.0), (-0.5, 0.7), (0.3, -1.2), (0.0, 1.0)])
    def test_hilbert_equation(self, a, b):
        lhs = exp_line(SMALL, a) - exp_line(SMALL, b)
        rhs = (b - a) * exp_convolve(a, exp_line(SMALL, b))
        # the exponentials grow like e^{5|b|} on the window, so compare relative to that
        scale = max(1.0, math.exp(5 * max(abs(a), abs(b))))
        assert window(lhs, rhs) / scale <= eps_disc(SMALL)

    @settings(max_examples=20, deadline=None)
    @given(st.floats(-3, 3), st.integers(0, 2**32 - 1))
    def test_sign_symmetry(self, a, seed):
        g = random_line(np.random.default_rng(seed), SMALL)
        lhs = -reflect(exp_convolve(a, g))
        rhs = exp_convolve(-a, reflect(g))
        assert np.max(np.abs(lhs.samples - rhs.samples)) <= EPS_ALG

    def test_decaying_limit(self):
        out = exp_convolve(2.0, ONE)
        assert out.limit_pos == 0.5
        assert math.isnan(out.limit_neg)


@pytest.mark.parametrize("gamma", [0.5, 1.7])
def test_hyperbolic_identities(gamma):
    a = 1.1
    s, c = sinh_line(SMALL, gamma), cosh_line(SMALL, gamma)
    # both sides solve y' + a y = g with y(0) = 0, for any gamma
    first = exp_convolve(a, a * s + gamma * c)
    second = exp_convolve(a, gamma * s + a * c)
    keep = np.abs(SMALL.nodes) <= 5
    exact_first = np.sinh(gamma * SMALL.nodes)
    exact_second = np.cosh(gamma * SMALL.nodes) - np.exp(-a * SMALL.nodes)
    scale = np.cosh(gamma * 5)
    assert np.max(np.abs(first.samples - exact_first)[keep]) / scale <= eps_disc(SMALL)
    assert np.max(np.abs(second.samples - exact_second)[keep]) / scale <= eps_disc(SMALL)


class TestLaplace:
    def test_constant(self):
        assert laplace_at(ONE, 2.0) == pytest.approx(0.5, abs=1e-12)

    def test_exponential(self):
        assert laplace_at(exp_line(SMALL, 1.0), 1.0) == pytest.approx(0.5, abs=1e-5)

    def test_parity_linearity(self, rng):
        f = random_line(rng, SMALL)
        even = 0.5 * (f + reflect(f))
        lam = 0.8
        total = laplace_at(f, lam) + laplace_at(reflect(f), lam)
        assert total == pytest.approx(2 * laplace_at(even, lam), rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(NonPositiveLambda):
            laplace_at(ONE, 0.0)


class TestImproper:
    @pytest.mark.parametrize("gamma,c", [(0.5, 1.0), (2.0, -3.0)])
    def test_constant(self, gamma, c):
        out = improper_left(gamma, LineFunction.constant(SMALL, c))
        np.testing.assert_allclose(out.samples, c / gamma, rtol=1e-12)

    def test_limit(self, rng):
        psi = random_line(rng, SMALL)
        out = improper_left(1.5, psi)
        assert out.limit_pos == psi.limit_pos / 1.5

    def test_growing_exponential(self):
        gamma = 1.0
        out = improper_left(gamma, exp_line(SMALL, -gamma))
        x = SMALL.nodes
        keep = (x <= 0) & (x >= -5)
        exact = np.exp(gamma * x) / (2 * gamma)
        assert np.max(np.abs(out.samples - exact)[keep]) <= eps_disc(SMALL)

    def test_right_is_mirror(self, rng):
        psi = random_line(rng, SMALL)
        out = improper_right(0.9, psi)
        np.testing.assert_array_equal(out.samples, reflect(improper_left(0.9, reflect(psi))).samples)

    def test_rejects_nonpositive(self):
        with pytest.raises(NonPositiveGamma):
            improper_left(-1.0, ONE)


class TestDiracResidual:
    @pytest.mark.parametrize("variant", ["a", "b", "c"])
    @pytest.mark.parametrize("n", [1, 16])
    def test_constant(self, variant, n):
        assert dirac_limit_residual(0.7, n, ONE, variant) <= EPS_ALG

    def test_decreases(self):
        phi = LineFunction.from_callable(SMALL, lambda x: x / (1 + np.abs(x)))
        assert dirac_limit_residual(1.0, 64, phi) < dirac_limit_residual(1.0, 1, phi)

    def test_variant_c_matches_zero_extension(self):
        fn = lambda x: x / (1 + np.abs(x))
        phi = LineFunction.from_callable(SMALL, fn)
        zero_ext = LineFunction.from_callable(SMALL, lambda x: np.where(x >= 0, fn(x), 0.0))
        for n in (1, 8):
            c = dirac_limit_residual(0.5, n, phi, "c")
            a = dirac_limit_residual(0.5, n, zero_ext, "a")
            assert c == pytest.approx(a, abs=1e-9)

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            dirac_limit_residual(1.0, 1, ONE, "d")

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from snapout.corpus import random_line, random_opposite, random_pair, random_params, random_sharp
from snapout.extensions import SubspaceKind, extend_perp, extend_snapping, membership
from snapout.function_space import (
    EPS_ALG,
    FunctionPair,
    LineFunction,
    MembraneParams,
    eps_disc,
    even_part,
    odd_part,
    reflect,
    sup_norm,
)
from snapout.kernels import improper_left, improper_right
from snapout.projections import (
    project_C,
    project_C_hyperbolic,
    project_C_skew,
    project_D,
    project_D_weks,
    projection_inputs,
)

from conftest import PARAMS, STANDARD as GRID

TOL = 3 * eps_disc(GRID)


def even_pair(rng):
    f = even_part(random_line(rng, GRID))
    return FunctionPair(f, f)


def skew_member(params, rng):
    e, o = even_part(random_line(rng, GRID)), odd_part(random_line(rng, GRID))
    return FunctionPair(e + params.alpha * o, e + params.beta * o)


def weks_member(params, rng):
    e, o = even_part(random_line(rng, GRID)), odd_part(random_line(rng, GRID))
    return FunctionPair(e + params.beta * o, -e - params.alpha * o)


class TestInputs:
    def test_even_equal_pair(self, rng):
        q = projection_inputs(MembraneParams(1.0, 2.0), even_pair(rng))
        assert sup_norm(q.k1) == 0.0 and sup_norm(q.k2) == 0.0 and q.c == 0.0

    def test_laplace_oracle(self):
        params = MembraneParams(0.4, 1.1)
        g = params.gamma
        f1 = LineFunction.from_callable(GRID, lambda x: np.exp(-np.abs(x)), limits=(0.0, 0.0))
        q = projection_inputs(params, FunctionPair(f1, LineFunction.zeros(GRID)))
        assert sup_norm(q.k1) == 0.0
        np.testing.assert_array_equal(q.k2.samples, f1.samples)
        assert q.c == pytest.approx((g / 2) / (g + 1), abs=1e-5)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_parities_exact(self, seed):
        rng = np.random.default_rng(seed)
        q = projection_inputs(random_params(rng), random_pair(rng, GRID))
        np.testing.assert_array_equal(reflect(q.k1).samples, -q.k1.samples)
        np.testing.assert_array_equal(reflect(q.k2).samples, q.k2.samples)


class TestSnappingPair:
    @pytest.mark.parametrize("params", PARAMS, ids=str)
    def test_fixes_snapping_members(self, params, rng):
        p = extend_snapping(params, random_sharp(rng, GRID))
        assert sup_norm(project_C(params, p) - p) <= TOL

    @pytest.mark.parametrize("params", PARAMS, ids=str)
    def test_fixes_perp_members(self, params, rng):
        p = extend_perp(params, random_opposite(rng, GRID))
        assert sup_norm(project_D(params, p) - p) <= TOL

    def test_even_equal_pair(self, rng):
        params = MembraneParams(1.0, 3.0)
        p = even_pair(rng)
        assert sup_norm(project_C(params, p) - p) <= 1e-14
        assert sup_norm(project_D(params, p)) <= 1e-14

    def test_limits_match_improper_integrals(self, rng):
        params = MembraneParams(0.6, 1.3)
        p = random_pair(rng, GRID)
        out = project_C(params, p)
        assert np.isfinite([out.first.limit_neg, out.first.limit_pos,
                            out.second.limit_neg, out.second.limit_pos]).all()
        q = projection_inputs(params, p)
        g = params.gamma
        left = improper_left(g, (1 / g) * q.k1 - 0.5 * q.k2)
        right = improper_right(g, (1 / g) * q.k1 + 0.5 * q.k2)
        expected = (q.even_first.limit_pos + 0.5 * (g + 2 * params.alpha) * left.limit_pos
                    - 0.5 * (g - 2 * params.alpha) * right.limit_pos)
        assert out.first.limit_pos == pytest.approx(expected, rel=1e-12)

    def test_q_output_value_at_zero(self, rng):
        params = MembraneParams(0.8, 1.9)
        p = random_pair(rng, GRID)
        c = projection_inputs(params, p).c
        assert project_D(params, p).second.value_at_zero == pytest.approx(-c, abs=eps_disc(GRID))

    @pytest.mark.parametrize("params", PARAMS, ids=str)
    def test_idempotent_and_complementary(self, params, rng):
        p = random_pair(rng, GRID)
        c = project_C(params, p)
        assert sup_norm(project_C(params, c) - c) <= TOL
        assert sup_norm(project_C(params, project_D(params, p))) <= TOL
        d = project_D(params, p)
        np.testing.assert_array_equal(d.first.samples, (p - c).first.samples)
        np.testing.assert_array_equal(d.second.samples, (p - c).second.samples)

    @pytest.mark.parametrize("params", PARAMS, ids=str)
    def test_ranges(self, params, rng):
        p = random_pair(rng, GRID)
        assert membership(SubspaceKind.SnappingC, params, project_C(params, p), TOL).passed
        assert membership(SubspaceKind.PerpD, params, project_D(params, p), TOL).passed

    @pytest.mark.parametrize("params", [MembraneParams(0.5, 0.5), MembraneParams(0.2, 0.9)], ids=str)
    def test_hyperbolic_form_agrees(self, params, rng):
        p = random_pair(rng, GRID)
        stable = project_C(params, p)
        hyper = project_C_hyperbolic(params, p, x_max=5.0)
        sub = hyper.grid
        m, j = GRID.mid, sub.mid
        for a, b in ((stable.first, hyper.first), (stable.second, hyper.second)):
            diff = a.samples[m - j:m + j + 1] - b.samples
            assert np.max(np.abs(diff)) <= eps_disc(GRID)


class TestSkewPair:
    def test_equal_rates_fix_equal_pairs(self, rng):
        f = random_line(rng, GRID)
        p = FunctionPair(f, f)
        out = project_C_skew(MembraneParams(0.9, 0.9), p)
        assert sup_norm(out - p) <= 1e-14
        assert sup_norm(project_D_weks(MembraneParams(0.9, 0.9), p)) <= 1e-14

    def test_odd_opposite_pair_vanishes(self, rng):
        f = odd_part(random_line(rng, GRID))
        out = project_C_skew(MembraneParams(1.0, 1.0), FunctionPair(f, -f))
        assert sup_norm(out) <= 1e-15

    @pytest.mark.parametrize("params", PARAMS, ids=str)
    def test_fixes_members(self, params, rng):
        s, w = skew_member(params, rng), weks_member(params, rng)
        assert sup_norm(project_C_skew(params, s) - s) <= EPS_ALG
        assert sup_norm(project_D_weks(params, w) - w) <= EPS_ALG

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_complementary_and_idempotent(self, seed):
        rng = np.random.default_rng(seed)
        params, p = random_params(rng), random_pair(rng, GRID)
        c, d = project_C_skew(params, p), project_D_weks(params, p)
        np.testing.assert_array_equal(d.first.samples, (p - c).first.samples)
        assert sup_norm(project_C_skew(params, c) - c) <= EPS_ALG
        assert sup_norm(project_C_skew(params, d)) <= EPS_ALG

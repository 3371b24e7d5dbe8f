import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from snapout.corpus import (
    named_function,
    random_continuous,
    random_line,
    random_opposite,
    random_params,
    random_sharp,
)
from snapout.errors import GridTooCoarse, JumpAtZero, NonPositiveTime
from snapout.evolution import (
    EvolutionKind,
    cosine_basic,
    cosine_evolve,
    cosine_pair,
    gaussian_weights,
    generator_residual,
    heat_line,
    one_sided_derivatives,
    semigroup_evolve,
    transmission_residual,
    weks_by_conjugation,
)
from snapout.extensions import SubspaceKind, extend, membership
from snapout.function_space import (
    EPS_ALG,
    Grid,
    LineFunction,
    MembraneParams,
    SharpFunction,
    eps_disc,
    sup_norm,
)

from conftest import PARAMS, SMALL

KINDS = [EvolutionKind.Snapping, EvolutionKind.Perp, EvolutionKind.Skew, EvolutionKind.Weks]
TO_SUBSPACE = dict(zip(KINDS, SubspaceKind))


def admissible(kind, rng, grid=SMALL):
    if kind in (EvolutionKind.Snapping,):
        return random_sharp(rng, grid)
    if kind in (EvolutionKind.Skew, EvolutionKind.Free):
        return random_continuous(rng, grid)
    return random_opposite(rng, grid)


def snapping_profile(grid, params, jump=1.0, base=0.3):
    """Smooth branches with f'(0-) = alpha*jump and f'(0+) = beta*jump."""
    al, be = params.alpha, params.beta
    return SharpFunction.from_callables(
        grid,
        lambda x: (base + al * jump * x) * np.exp(-x * x),
        lambda x: (base + jump + be * jump * x) * np.exp(-x * x),
        limits=(0.0, 0.0),
    )


class TestBasicCosine:
    def test_time_zero(self, rng):
        f = random_line(rng, SMALL)
        np.testing.assert_array_equal(cosine_basic(0.0, f).samples, f.samples)

    def test_gaussian_average(self):
        f = LineFunction.from_callable(SMALL, lambda x: np.exp(-x * x), limits=(0.0, 0.0))
        x = SMALL.nodes
        exact = 0.5 * (np.exp(-(x + 1) ** 2) + np.exp(-(x - 1) ** 2))
        np.testing.assert_allclose(cosine_basic(1.0, f).samples, exact, atol=1e-15)

    @pytest.mark.parametrize("s,t", [(0.3, 0.7), (0.25, 1.1), (0.123, 0.456)])
    def test_dalembert(self, s, t, rng):
        f = random_line(rng, SMALL)
        lhs = cosine_basic(t + s, f) + cosine_basic(t - s, f)
        rhs = 2 * cosine_basic(s, cosine_basic(t, f))
        assert sup_norm(lhs - rhs) <= eps_disc(SMALL)


class TestCosineFamilies:
    def test_free_matches_basic(self, rng):
        f = random_continuous(rng, SMALL)
        out = cosine_evolve(EvolutionKind.Free, 0.8, f)
        ref = cosine_basic(0.8, f.to_line())
        np.testing.assert_array_equal(out.right, ref.samples[SMALL.mid:])

    def test_free_rejects_jump(self):
        with pytest.raises(JumpAtZero):
            cosine_evolve(EvolutionKind.Free, 0.5, named_function(SMALL, "step(0,1)"))

    def test_snapping_on_even_continuous(self):
        f = named_function(SMALL, "gauss")
        out = cosine_evolve(EvolutionKind.Snapping, 1.3, f, MembraneParams(0.8, 0.8))
        ref = cosine_basic(1.3, f.to_line())
        np.testing.assert_allclose(out.right, ref.samples[SMALL.mid:], atol=1e-15)
        np.testing.assert_allclose(out.left, ref.samples[:SMALL.mid + 1], atol=1e-15)

    def test_needs_params(self, rng):
        with pytest.raises(ValueError):
            cosine_evolve(EvolutionKind.Snapping, 1.0, random_sharp(rng, SMALL))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0.0, 6.0), st.sampled_from(KINDS))
    def test_norm_bound(self, seed, t, kind):
        rng = np.random.default_rng(seed)
        params, f = random_params(rng), admissible(kind, rng)
        assert sup_norm(cosine_evolve(kind, t, f, params)) <= 5 * sup_norm(f)

    @pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.value)
    def test_identity_and_evenness_in_time(self, kind, rng):
        params, f = MembraneParams(1.0, 3.0), admissible(kind, rng)
        start = cosine_evolve(kind, 0.0, f, params)
        np.testing.assert_array_equal(start.left, f.left)
        np.testing.assert_array_equal(start.right, f.right)
        fwd = cosine_evolve(kind, 0.9, f, params)
        back = cosine_evolve(kind, -0.9, f, params)
        np.testing.assert_array_equal(fwd.left, back.left)
        np.testing.assert_array_equal(fwd.right, back.right)

    @pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.value)
    def test_dalembert(self, kind, rng):
        params, f = MembraneParams(0.3, 2.2), admissible(kind, rng)
        for s in (0.3, 0.7, 1.1):
            for t in (0.3, 0.7, 1.1):
                lhs = cosine_evolve(kind, t + s, f, params) + cosine_evolve(kind, t - s, f, params)
                rhs = 2 * cosine_evolve(kind, s, cosine_evolve(kind, t, f, params), params)
                assert sup_norm(lhs - rhs) <= 3 * eps_disc(SMALL)

    @pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.value)
    @pytest.mark.parametrize("params", PARAMS, ids=str)
    def test_subspace_invariance(self, kind, params, rng):
        p = extend(TO_SUBSPACE[kind], params, admissible(kind, rng))
        moved = cosine_pair(1.7, p)
        assert membership(TO_SUBSPACE[kind], params, moved, 3 * eps_disc(SMALL)).passed

    @pytest.mark.parametrize("seed", range(5))
    def test_weks_is_conjugated_skew(self, seed):
        rng = np.random.default_rng(seed)
        params, f = random_params(rng), random_opposite(rng, SMALL)
        direct = cosine_evolve(EvolutionKind.Weks, 1.4, f, params)
        assert sup_norm(direct - weks_by_conjugation(1.4, f, params)) <= EPS_ALG


class TestHeat:
    def test_weights_normalized_and_symmetric(self):
        w = gaussian_weights(0.5, 0.01)
        assert w.sum() == pytest.approx(1.0, abs=1e-15)
        np.testing.assert_array_equal(w, w[::-1])

    def test_rejects_nonpositive_time(self, rng):
        with pytest.raises(NonPositiveTime):
            semigroup_evolve(EvolutionKind.Free, 0.0, random_continuous(rng, SMALL))

    @pytest.mark.parametrize("t", [0.1, 0.5, 2.0])
    def test_free_gaussian_closed_form(self, t):
        s0 = 0.5
        f = SharpFunction.from_callables(SMALL, lambda x: np.exp(-x * x / (4 * s0)),
                                         lambda x: np.exp(-x * x / (4 * s0)), limits=(0.0, 0.0))
        out = semigroup_evolve(EvolutionKind.Free, t, f)
        x = SMALL.half_nodes
        exact = math.sqrt(s0 / (s0 + t)) * np.exp(-x * x / (4 * (s0 + t)))
        assert np.max(np.abs(out.right - exact)) <= eps_disc(SMALL)

    def test_strong_continuity_trend(self, rng):
        f = random_continuous(rng, SMALL)
        gaps = [sup_norm(semigroup_evolve(EvolutionKind.Free, t, f) - f) for t in (0.4, 0.1, 0.025)]
        assert gaps[0] > gaps[1] > gaps[2]

    @pytest.mark.parametrize("params", PARAMS, ids=str)
    def test_constant_is_stationary(self, params):
        f = named_function(SMALL, "const(1)")
        out = semigroup_evolve(EvolutionKind.Snapping, 0.7, f, params)
        assert sup_norm(out - f) <= 1e-12

    def test_heat_line_keeps_limits(self, rng):
        f = random_line(rng, SMALL)
        out = heat_line(0.3, f)
        assert (out.limit_neg, out.limit_pos) == (f.limit_neg, f.limit_pos)


class TestDiagnostics:
    @pytest.mark.parametrize("kind", [EvolutionKind.Free] + KINDS, ids=lambda k: k.value)
    def test_constant_has_no_defect(self, kind):
        f = named_function(SMALL, "const(0)" if kind in (EvolutionKind.Perp, EvolutionKind.Weks)
                           else "const(2)")
        res = transmission_residual(kind, f, MembraneParams(1.0, 2.0))
        assert res.max_residual <= 1e-12

    @pytest.mark.parametrize("params", PARAMS, ids=str)
    def test_engineered_snapping_profile(self, params):
        f = snapping_profile(SMALL, params)
        res = transmission_residual(EvolutionKind.Snapping, f, params)
        assert res.max_residual <= 1e-3

    def test_heat_solution_satisfies_snapping_conditions(self):
        params = MembraneParams(1.0, 3.0)
        f = named_function(Grid(30.0, 6001), "step(-1,1)")
        u = semigroup_evolve(EvolutionKind.Snapping, 0.5, f, params)
        assert transmission_residual(EvolutionKind.Snapping, u, params).max_residual <= 5e-3

    def test_stencils_need_nodes(self):
        f = named_function(Grid(1.0, 7), "gauss")
        with pytest.raises(GridTooCoarse):
            one_sided_derivatives(f)

    def test_stencils_exact_on_quadratics(self):
        f = SharpFunction.from_callables(SMALL, lambda x: 1 + 2 * x + 3 * x * x,
                                         lambda x: -1 + 4 * x - x * x)
        d = one_sided_derivatives(f)
        assert d.d1_minus == pytest.approx(2.0, abs=1e-9) and d.d1_plus == pytest.approx(4.0, abs=1e-9)
        assert d.d2_minus == pytest.approx(6.0, abs=1e-6) and d.d2_plus == pytest.approx(-2.0, abs=1e-6)

    def test_generator_second_order_in_time(self):
        f = named_function(SMALL, "gauss")
        coarse = generator_residual(EvolutionKind.Free, 0.2, f)
        fine = generator_residual(EvolutionKind.Free, 0.1, f)
        assert 3.5 <= coarse / fine <= 4.5

    def test_generator_on_constant(self):
        f = named_function(SMALL, "const(3)")
        assert generator_residual(EvolutionKind.Free, 0.1, f) <= 1e-9

    def test_generator_separates_domain(self):
        # inside the domain the defect shrinks with t (first order, since the
        # profile's second derivative does not meet the interface conditions);
        # with the flux conditions broken it grows like 1/t
        params = MembraneParams(0.5, 1.5)
        inside = snapping_profile(SMALL, params)
        outside = snapping_profile(SMALL, params.swapped())
        times = (0.2, 0.1, 0.05)
        good = [generator_residual(EvolutionKind.Snapping, t, inside, params) for t in times]
        bad = [generator_residual(EvolutionKind.Snapping, t, outside, params) for t in times]
        assert good[0] > good[1] > good[2]
        assert bad[0] < bad[1] < bad[2]
        assert good[-1] < 0.01 * bad[-1]

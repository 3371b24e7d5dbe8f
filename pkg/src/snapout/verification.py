"""Named numerical verification suites.

Each suite returns a list of :class:`Check` records; a suite passes when every
check does. The same suites back ``snapout verify`` and the acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import corpus
from .evolution import (
    EvolutionKind,
    cosine_basic,
    cosine_evolve,
    cosine_pair,
    generator_residual,
    semigroup_evolve,
    transmission_residual,
    weks_by_conjugation,
)
from .extensions import (
    SubspaceKind,
    extend,
    extend_perp,
    extend_skew,
    extend_snapping,
    extend_weks,
    membership_residuals,
)
from .function_space import (
    EPS_ALG,
    SHARP_MATRIX,
    FunctionPair,
    Grid,
    LineFunction,
    MembraneParams,
    SharpFunction,
    eps_disc,
    flip_J,
    flip_J_inv,
    flip_Jpair,
    matrix_apply,
    matrix_solve,
    parity_parts,
    reflect,
    restrict,
    snapping_matrix,
    sup_norm,
)
from .kernels import (
    cosh_line,
    dirac_limit_residual,
    exp_convolve,
    exp_line,
    sinh_line,
)
from .projections import (
    project_C,
    project_C_hyperbolic,
    project_C_skew,
    project_D,
    project_D_weks,
    projection_inputs,
)
from .scaling import (
    converge_cosine,
    converge_perp,
    converge_projection,
    converge_semigroup,
    converging_rule,
    skew_reference,
)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float
    passed: bool

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark}  {self.name}: {self.value:.3e} (tol {self.tol:.1e})"


def at_most(name: str, value: float, tol: float) -> Check:
    value = float(value)
    return Check(name, value, tol, bool(value <= tol))


def holds(name: str, ok: bool) -> Check:
    return Check(name, 0.0 if ok else 1.0, 0.0, bool(ok))


@dataclass
class Context:
    grid: Grid = field(default_factory=Grid)
    seed: int = 20240607

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


@dataclass(frozen=True)
class Suite:
    name: str
    summary: str
    run: Callable[[Context], list[Check]]


SUITES: dict[str, Suite] = {}


def suite(name: str, summary: str):
    def register(fn):
        SUITES[name] = Suite(name, summary, fn)
        return fn
    return register


def run_suite(name: str, ctx: Context | None = None) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    return SUITES[name].run(ctx or Context())


# ---------------------------------------------------------------------------
# shared fixtures

FIXED_PARAMS = (
    MembraneParams(0.5, 0.5),
    MembraneParams(1.0, 3.0),
    MembraneParams(3.0, 1.0),
    MembraneParams(2.0, 0.0),
    MembraneParams(0.0, 1.5),
    MembraneParams(1.2, 1.2),
    MembraneParams(0.25, 2.5),
    MembraneParams(2.0, 2.0),
    MembraneParams(0.7, 0.3),
    MembraneParams(1.5, 0.5),
)

_GENERATORS = {
    SubspaceKind.SnappingC: corpus.random_sharp,
    SubspaceKind.PerpD: corpus.random_opposite,
    SubspaceKind.SkewC: corpus.random_continuous,
    SubspaceKind.WeksD: corpus.random_opposite,
}

_EVOLUTION_INPUTS = {
    EvolutionKind.Free: corpus.random_continuous,
    EvolutionKind.Snapping: corpus.random_sharp,
    EvolutionKind.Perp: corpus.random_opposite,
    EvolutionKind.Skew: corpus.random_continuous,
    EvolutionKind.Weks: corpus.random_opposite,
}


def ulp_scale(*objs) -> float:
    """A few units in the last place at the magnitude of the inputs."""
    return 8 * np.finfo(float).eps * max(1.0, *(sup_norm(o) for o in objs))


def _window_sup(values: np.ndarray, grid: Grid, x_max: float = 5.0) -> float:
    return float(np.max(np.abs(values[np.abs(grid.nodes) <= x_max + 1e-12])))


def _relative_window(residual: np.ndarray, scale: np.ndarray, grid: Grid) -> float:
    return _window_sup(residual, grid) / max(1.0, _window_sup(scale, grid))


def _end_limits(f: LineFunction) -> LineFunction:
    """Replace (possibly undefined) limits by the end samples, for windowed checks."""
    return LineFunction(f.grid, f.samples, f.samples[0], f.samples[-1])


# ---------------------------------------------------------------------------
# module-level invariants


@suite("function_space", "reflection, parity, flips and matrix operators")
def _function_space(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(1)
    inv = par = rec = comm = mat = iso = 0.0
    exact = True
    for i in range(10):
        f = corpus.random_line(rng, g)
        even, odd = parity_parts(f)
        exact &= np.array_equal(reflect(reflect(f)).samples, f.samples)
        exact &= np.array_equal(reflect(even).samples, even.samples)
        exact &= np.array_equal(reflect(odd).samples, -odd.samples)
        rec = max(rec, sup_norm(even + odd - f) / ulp_scale(f))
        for t in (0.5, 1.37):
            moved = cosine_basic(t, f)
            me, mo = parity_parts(moved)
            comm = max(comm, sup_norm(me - cosine_basic(t, even)), sup_norm(mo - cosine_basic(t, odd)),
                       sup_norm(reflect(moved) - cosine_basic(t, reflect(f))))
        p = corpus.random_pair(rng, g)
        params = FIXED_PARAMS[i]
        for M in (SHARP_MATRIX, snapping_matrix(params) if params.alpha != params.beta else np.eye(2)):
            for t in (0.5, 1.37):
                mat = max(mat, sup_norm(matrix_apply(M, cosine_pair(t, p)) - cosine_pair(t, matrix_apply(M, p))))
            mat = max(mat, sup_norm(matrix_solve(M, matrix_apply(M, p)) - p) / 1e6)
        s = corpus.random_opposite(rng, g)
        iso = max(iso, abs(sup_norm(flip_J(s)) - sup_norm(s)), abs(sup_norm(flip_Jpair(p)) - sup_norm(p)))
        exact &= np.array_equal(flip_Jpair(flip_Jpair(p)).first.samples, p.first.samples)
    return [
        holds("involution and exact parity symmetries", exact),
        at_most("parity reconstruction, in units of 8 ulp", rec, 1.0),
        at_most("parity and reflection commute with C(t)", comm, eps_disc(g)),
        at_most("matrix operators commute with C_D(t)", mat, eps_disc(g)),
        at_most("flip operators are isometries", iso, 0.0),
    ]


@suite("kernel_identities", "Hilbert equation, hyperbolic identities, sign symmetry and commutation formulas")
def _kernel_identities(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(2)
    hil = dod = sign = ab1 = gen2 = 0.0
    for a, b in [(1, 2), (-4, 4), (3, -2), (0.5, -0.5), (4, 3.5), (-1.5, 0.25)]:
        I = exp_convolve(a, exp_line(g, b))
        ref = exp_line(g, a).samples - exp_line(g, b).samples
        hil = max(hil, _relative_window(ref - (b - a) * I.samples, ref, g))
    for params in FIXED_PARAMS[:6]:
        a, gam = params.total, params.gamma
        sh, ch = sinh_line(g, gam), cosh_line(g, gam)
        lhs1 = exp_convolve(a, a * sh + gam * ch).samples
        lhs2 = exp_convolve(a, gam * sh + a * ch).samples
        rhs2 = ch.samples - exp_line(g, a).samples
        dod = max(dod, _relative_window(lhs1 - sh.samples, sh.samples, g),
                  _relative_window(lhs2 - rhs2, rhs2, g))
    for _ in range(5):
        phi = corpus.random_line(rng, g)
        for a in (0.8, -1.3, 2.5):
            lhs = -reflect(exp_convolve(a, phi)).samples
            sign = max(sign, float(np.max(np.abs(lhs - exp_convolve(-a, reflect(phi)).samples))))
        x = g.nodes
        for a in (0.7, -0.5):
            conv = _end_limits(exp_convolve(a, phi))
            ea = np.exp(-a * x)
            for t in (0.5, 1.3):
                j = g.shift_index(t)
                conv_even_t = 0.5 * (conv.samples[g.mid + j] + conv.samples[g.mid - j])
                lhs = cosine_basic(t, conv).samples
                rhs = exp_convolve(a, cosine_basic(t, phi)).samples + ea * conv_even_t
                ab1 = max(ab1, _relative_window(lhs - rhs, lhs, g))
                inner = a * conv.samples + phi.value_at_zero * ea
                inner_f = LineFunction(g, inner, inner[0], inner[-1])
                moved_phi = cosine_basic(t, phi)
                bracket = phi.samples - inner
                bracket_even_t = 0.5 * (bracket[g.mid + j] + bracket[g.mid - j])
                lhs = cosine_basic(t, inner_f).samples
                rhs = (a * exp_convolve(a, moved_phi).samples + moved_phi.value_at_zero * ea
                       - ea * bracket_even_t)
                gen2 = max(gen2, _relative_window(lhs - rhs, lhs, g))
    tol = eps_disc(g)
    return [
        at_most("Hilbert equation (relative on |x|<=5)", hil, tol),
        at_most("hyperbolic convolution identities (relative on |x|<=5)", dod, tol),
        at_most("sign symmetry of the signed convolution", sign, EPS_ALG),
        at_most("C(t) commutation with e_a* (relative on |x|<=5)", ab1, tol),
        at_most("C(t) commutation, generator counterpart (relative on |x|<=5)", gen2, tol),
    ]


@suite("extension_laws", "right/left inverse laws and the large-permeability limits of extensions")
def _extension_laws(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(3)
    right_exact = True
    left_inv = 0.0
    for kind, gen in _GENERATORS.items():
        for i in range(5):
            params = FIXED_PARAMS[(3 * i + 1) % len(FIXED_PARAMS)]
            f = gen(rng, g)
            r = restrict(extend(kind, params, f))
            right_exact &= np.array_equal(r.left, f.left) and np.array_equal(r.right, f.right)
    for params in FIXED_PARAMS[:5]:
        p = corpus.random_pair(rng, g)
        c = project_C(params, p)
        left_inv = max(left_inv, sup_norm(extend_snapping(params, restrict(c)) - c))
        d = project_D(params, p)
        left_inv = max(left_inv, sup_norm(extend_perp(params, restrict(d), tol=1e-6) - d))
        cs = project_C_skew(params, p)
        left_inv = max(left_inv, sup_norm(extend_skew(params, restrict(cs), tol=1e-9) - cs))
        dw = project_D_weks(params, p)
        left_inv = max(left_inv, sup_norm(extend_weks(params, restrict(dw), tol=1e-9) - dw))
    ladder = (1, 2, 4, 8, 16, 32, 64)
    snap_ok = perp_ok = True
    base = MembraneParams(0.5, 1.0)
    for _ in range(3):
        f = corpus.random_continuous(rng, g)
        errs = [sup_norm(extend_snapping(base.scaled(n), f) - extend_skew(base, f)) for n in ladder]
        snap_ok &= converging_rule(ladder, errs)
        f = corpus.random_opposite(rng, g)
        errs = [sup_norm(extend_perp(base.scaled(n), f) - extend_weks(base, f)) for n in ladder]
        perp_ok &= converging_rule(ladder, errs)
    return [
        holds("restrict o extend is the identity (bit-exact)", right_exact),
        at_most("extend o restrict is the identity on each range", left_inv, eps_disc(g)),
        holds("snapping extensions converge to the skew extension", snap_ok),
        holds("perp extensions converge to the weks extension", perp_ok),
    ]


@suite("projection_laws", "idempotence, ranges, closed-form agreement and structure of projections")
def _projection_laws(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(4)
    idem = rng_c = rng_d = fixed = agree = gzero = skew_idem = 0.0
    structure = True
    sub = g.restricted(5.0)
    j, m = sub.mid, g.mid
    for i in range(10):
        params = FIXED_PARAMS[i]
        p = corpus.random_pair(rng, g)
        c, d = project_C(params, p), project_D(params, p)
        idem = max(idem, sup_norm(project_C(params, c) - c))
        rng_c = max(rng_c, max(membership_residuals(SubspaceKind.SnappingC, params, c).values()))
        rng_d = max(rng_d, max(membership_residuals(SubspaceKind.PerpD, params, d).values()))
        e = extend_snapping(params, corpus.random_sharp(rng, g))
        fixed = max(fixed, sup_norm(project_C(params, e) - e))
        e = extend_perp(params, corpus.random_opposite(rng, g))
        fixed = max(fixed, sup_norm(project_D(params, e) - e))
        gzero = max(gzero, abs(d.second.value_at_zero + projection_inputs(params, p).c))
        if params.gamma <= 6.0:
            h = project_C_hyperbolic(params, p)
            agree = max(agree,
                        float(np.max(np.abs(h.first.samples - c.first.samples[m - j:m + j + 1]))),
                        float(np.max(np.abs(h.second.samples - c.second.samples[m - j:m + j + 1]))))
        cs = project_C_skew(params, p)
        skew_idem = max(skew_idem, sup_norm(project_C_skew(params, cs) - cs))
        e1, o1 = parity_parts(cs.first)
        e2, o2 = parity_parts(cs.second)
        structure &= sup_norm(e1 - e2) <= ulp_scale(p) and sup_norm(params.beta * o1 - params.alpha * o2) <= ulp_scale(p) * 4
    tol = eps_disc(g)
    return [
        at_most("project_C is idempotent", idem, 3 * tol),
        at_most("project_C lands in the snapping subspace", rng_c, tol),
        at_most("project_D lands in the perp subspace", rng_d, tol),
        at_most("projections fix their own subspaces", fixed, 3 * tol),
        at_most("second component of project_D at 0 equals -c", gzero, EPS_ALG),
        at_most("stable and hyperbolic forms agree on |x|<=5", agree, 10 * tol),
        at_most("project_C_skew is idempotent", skew_idem, EPS_ALG),
        holds("project_C_skew output has matched parity structure", structure),
    ]


@suite("semigroup_laws", "semigroup property, contraction, positivity and weks conjugation")
def _semigroup_laws(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(5)
    semi = contr = pos = conj = 0.0
    params = MembraneParams(1.0, 2.0)
    for kind in EvolutionKind:
        f = _EVOLUTION_INPUTS[kind](rng, g)
        for t in (0.2, 0.5):
            for s in (0.2, 0.5):
                once = semigroup_evolve(kind, t + s, f, params)
                inner = semigroup_evolve(kind, s, f, params)
                inner = _reenter(kind, inner)
                semi = max(semi, sup_norm(once - semigroup_evolve(kind, t, inner, params)))
        for t in (0.1, 1.0):
            u = semigroup_evolve(kind, t, f, params)
            contr = max(contr, sup_norm(u) - sup_norm(f))
    for name in ("step(0,1)", "step(2,0.5)", "gauss", "atan", "const(3)"):
        f = corpus.named_function(g, name)
        shift = -min(float(f.left.min()), float(f.right.min()), 0.0)
        f = f + SharpFunction.from_callables(g, lambda x: np.full_like(x, shift), lambda x: np.full_like(x, shift),
                                             limits=(shift, shift))
        for t in (0.1, 1.0):
            u = semigroup_evolve(EvolutionKind.Snapping, t, f, params)
            pos = max(pos, -min(float(u.left.min()), float(u.right.min())))
    for _ in range(5):
        f = corpus.random_opposite(rng, g)
        for t in (0.5, 1.5):
            conj = max(conj, sup_norm(cosine_evolve(EvolutionKind.Weks, t, f, params)
                                      - weks_by_conjugation(t, f, params)))
    return [
        at_most("semigroup property", semi, eps_disc(g)),
        at_most("contraction excess", contr, 1e-8),
        at_most("positivity defect", pos, 1e-8),
        at_most("weks family equals J-conjugated skew family", conj, EPS_ALG),
    ]


def _reenter(kind: EvolutionKind, u: SharpFunction) -> SharpFunction:
    """Clean rounding-level interface defects so ``u`` is admissible again."""
    if kind in (EvolutionKind.Skew, EvolutionKind.Free):
        return SharpFunction.from_line(u.to_line(tol=1e-9))
    if kind in (EvolutionKind.Perp, EvolutionKind.Weks):
        u.check_opposite_values()
    return u


@suite("generator", "second-difference generator residuals shrink with t")
def _generator(ctx: Context) -> list[Check]:
    g = ctx.grid
    gauss = corpus.named_function(g, "gauss")
    ts = (0.2, 0.1, 0.05)
    free = [generator_residual(EvolutionKind.Free, t, gauss) for t in ts]
    ratios = [a / b for a, b in zip(free, free[1:])]
    const = generator_residual(EvolutionKind.Free, 0.1, corpus.named_function(g, "const(2)"))
    params = MembraneParams(0.5, 0.5)
    snap = [generator_residual(EvolutionKind.Snapping, t, gauss, params) for t in ts]
    return [
        at_most("Free residual ratio per halving, distance from 4", max(abs(r - 4) for r in ratios), 0.5),
        at_most("constant function residual", const, 1e-9),
        at_most("Snapping residual vs Free residual, excess factor", max(s / f for s, f in zip(snap, free)), 1.5),
    ]


# ---------------------------------------------------------------------------
# acceptance criteria


@suite("norm_bounds", "extension and cosine-family sup-norm inflation at most 5")
def _norm_bounds(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(10)
    snap, perp, cos, sharp = [], [], [], 0.0
    for _ in range(100):
        params = corpus.random_params(rng)
        f = corpus.random_sharp(rng, g)
        nf = sup_norm(f)
        ratio = sup_norm(extend_snapping(params, f)) / nf
        snap.append(ratio)
        sharp = max(sharp, ratio - (1 + 4 * max(params.alpha, params.beta) / params.total))
        fo = corpus.random_opposite(rng, g)
        perp.append(sup_norm(extend_perp(params, fo)) / sup_norm(fo))
        for t in (0.5, 1.0, 3.0):
            cos.append(sup_norm(cosine_evolve(EvolutionKind.Snapping, t, f, params)) / nf)
    return [
        at_most("max ||E f|| / ||f|| (snapping)", max(snap), 5.0),
        at_most("snapping inflation above 1 + 4 max(a,b)/(a+b)", sharp, 1e-12),
        at_most("max ||E_perp f|| / ||f||", max(perp), 5.0),
        at_most("max ||Cos(t) f|| / ||f||, t in {0.5, 1, 3}", max(cos), 5.0),
    ]


@suite("complementarity", "P + Q = I and P Q = 0, P^2 = P over random pairs")
def _complementarity(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(11)
    pq = idem = sum_ulps = skew_ulps = 0.0
    literal = True
    for i in range(50):
        params = FIXED_PARAMS[i % len(FIXED_PARAMS)]
        p = corpus.random_pair(rng, g)
        c, d = project_C(params, p), project_D(params, p)
        literal &= np.array_equal(d.first.samples, (p - c).first.samples)
        literal &= np.array_equal(d.second.samples, (p - c).second.samples)
        sum_ulps = max(sum_ulps, sup_norm(c + d - p) / ulp_scale(p, c))
        pq = max(pq, sup_norm(project_C(params, d)))
        idem = max(idem, sup_norm(project_C(params, c) - c))
        cs, dw = project_C_skew(params, p), project_D_weks(params, p)
        literal &= np.array_equal(dw.first.samples, (p - cs).first.samples)
        skew_ulps = max(skew_ulps, sup_norm(cs + dw - p) / ulp_scale(p, cs))
    tol = 3 * eps_disc(g)
    return [
        holds("Q(p) is p - P(p) bit-exactly (both pairs)", literal),
        at_most("P(p) + Q(p) - p, in units of 8 ulp", sum_ulps, 1.0),
        at_most("P^skew(p) + Q^weks(p) - p, in units of 8 ulp", skew_ulps, 1.0),
        at_most("||P Q p||", pq, tol),
        at_most("||P^2 p - P p||", idem, tol),
    ]


@suite("membership", "extension and projection outputs satisfy their defining relations")
def _membership(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(12)
    worst = {k: 0.0 for k in SubspaceKind}
    proj = {k: 0.0 for k in SubspaceKind}
    projectors = {
        SubspaceKind.SnappingC: project_C,
        SubspaceKind.PerpD: project_D,
        SubspaceKind.SkewC: project_C_skew,
        SubspaceKind.WeksD: project_D_weks,
    }
    for i in range(20):
        params = FIXED_PARAMS[i % len(FIXED_PARAMS)] if i % 2 else corpus.random_params(rng)
        p = corpus.random_pair(rng, g)
        for kind, gen in _GENERATORS.items():
            res = membership_residuals(kind, params, extend(kind, params, gen(rng, g)))
            worst[kind] = max(worst[kind], *res.values())
            res = membership_residuals(kind, params, projectors[kind](params, p))
            proj[kind] = max(proj[kind], *res.values())
    checks = [at_most(f"extension residual, {k.value}", v, 1e-3) for k, v in worst.items()]
    checks += [at_most(f"projection residual, {k.value}", v, 1e-3) for k, v in proj.items()]
    return checks


@suite("invariance", "each subspace is invariant under C_D(t)")
def _invariance(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(13)
    worst = {k: 0.0 for k in SubspaceKind}
    for i in range(6):
        params = FIXED_PARAMS[i]
        for kind, gen in _GENERATORS.items():
            p = extend(kind, params, gen(rng, g))
            for t in (0.5, 1.5):
                res = membership_residuals(kind, params, cosine_pair(t, p))
                worst[kind] = max(worst[kind], *res.values())
    return [at_most(f"residual after C_D(t), {k.value}", v, 3 * eps_disc(g)) for k, v in worst.items()]


@suite("cosine_axioms", "Cos(0) = I, Cos(-t) = Cos(t) and the d'Alembert equation, all kinds")
def _cosine_axioms(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(14)
    checks = []
    exact = True
    for j, kind in enumerate(EvolutionKind):
        params = FIXED_PARAMS[j + 1]
        worst = 0.0
        inputs = [_EVOLUTION_INPUTS[kind](rng, g) for _ in range(2)]
        if kind in (EvolutionKind.Snapping,):
            inputs.append(corpus.named_function(g, "step(-1,2)"))
        if kind in (EvolutionKind.Perp, EvolutionKind.Weks):
            inputs += [corpus.named_function(g, "odd_step"), corpus.named_function(g, "ov_gauss")]
        if kind in (EvolutionKind.Skew, EvolutionKind.Free):
            inputs += [corpus.named_function(g, "gauss"), corpus.named_function(g, "atan")]
        for f in inputs:
            zero = cosine_evolve(kind, 0.0, f, params)
            exact &= np.array_equal(zero.left, f.left) and np.array_equal(zero.right, f.right)
            back, fwd = cosine_evolve(kind, -0.7, f, params), cosine_evolve(kind, 0.7, f, params)
            exact &= np.array_equal(back.left, fwd.left) and np.array_equal(back.right, fwd.right)
            for t in (0.3, 0.7, 1.1):
                inner = _reenter(kind, cosine_evolve(kind, t, f, params))
                for s in (0.3, 0.7, 1.1):
                    lhs = cosine_evolve(kind, t + s, f, params) + cosine_evolve(kind, t - s, f, params)
                    worst = max(worst, sup_norm(lhs - 2.0 * cosine_evolve(kind, s, inner, params)))
        checks.append(at_most(f"d'Alembert residual, {kind.value}", worst, 3 * eps_disc(g)))
    checks.insert(0, holds("Cos(0) = I and Cos(-t) = Cos(t) bit-exactly", exact))
    return checks


@suite("heat_kernel", "free semigroup on a Gaussian matches the heat-kernel formula")
def _heat_kernel(ctx: Context) -> list[Check]:
    g = ctx.grid
    x = g.nodes
    checks = []
    for s0 in (0.25, 1.0):
        line = LineFunction.from_callable(g, lambda x: np.exp(-x * x / (4 * s0)), limits=(0.0, 0.0))
        f = SharpFunction.from_line(line)
        for t in (0.1, 1.0):
            u = semigroup_evolve(EvolutionKind.Free, t, f).to_line()
            ref = math.sqrt(s0 / (s0 + t)) * np.exp(-x * x / (4 * (s0 + t)))
            checks.append(at_most(f"sup error, s0={s0:g}, t={t:g}", np.max(np.abs(u.samples - ref)), 1e-6))
    return checks


@suite("transmission", "semigroup outputs at t = 0.5 satisfy the interface conditions")
def _transmission(ctx: Context) -> list[Check]:
    g = ctx.grid
    plans = [
        (EvolutionKind.Snapping, ("step(-1,2)", "step(0.5,-1)", "step(0,1)", "odd_step")),
        (EvolutionKind.Perp, ("odd_step", "ov_gauss")),
        (EvolutionKind.Skew, ("gauss", "atan", "expabs", "const(1)")),
        (EvolutionKind.Weks, ("odd_step", "ov_gauss")),
    ]
    checks = []
    for kind, names in plans:
        worst = 0.0
        for params in FIXED_PARAMS[:6]:
            for name in names:
                u = semigroup_evolve(kind, 0.5, corpus.named_function(g, name), params)
                worst = max(worst, transmission_residual(kind, u, params).max_residual)
        checks.append(at_most(f"{kind.value} interface residual", worst, 5e-3))
    return checks


SKEW_PARAMS = MembraneParams(0.5, 1.0)


@suite("skew_convergence", "snapping cosines converge to the skew family iff f is continuous at 0")
def _skew_convergence(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(15)
    continuous = [corpus.named_function(g, n) for n in ("atan", "odd_rational", "gauss")]
    continuous += [corpus.random_continuous(rng, g) for _ in range(3)]
    jumps = [corpus.named_function(g, n) for n in ("step(-1,1)", "step(0,2)", "step(1,0.5)")]
    jumps += [corpus.random_sharp(rng, g) for _ in range(2)]
    ratio, ok_cont, ok_jump = 0.0, True, True
    for f in continuous:
        r = converge_cosine(SKEW_PARAMS, f)
        ratio = max(ratio, r.errors[-1] / r.errors[0] if r.errors[0] > 1e-12 else 0.0)
        ok_cont &= r.verdict == "converging"
    for f in jumps:
        r = converge_cosine(SKEW_PARAMS, f)
        ok_jump &= r.verdict == "diverging"
    return [
        at_most("continuous f: error(64) / error(1)", ratio, 0.05),
        holds("continuous f: verdict converging", ok_cont),
        holds("jump f: divergence witness found (error >= 5% of jump for n >= 4)", ok_jump),
    ]


IRREGULAR_GRID = Grid(30.0, 24001)


@suite("irregular_convergence", "snapping semigroups with a jump form a Cauchy sequence (fine grid)")
def _irregular_convergence(ctx: Context) -> list[Check]:
    g = IRREGULAR_GRID
    # unit jumps: the Cauchy differences scale linearly with the jump
    inputs = [corpus.named_function(g, n) for n in ("step(0,1)", "step(-0.5,0.5)")]
    inputs.append(SharpFunction.from_callables(
        g, lambda x: -0.5 * np.exp(-x * x), lambda x: 0.5 * np.exp(-x * x / 3), limits=(0.0, 0.0)))
    ladder = (1, 2, 4, 8, 16, 32)
    monotone, at32 = True, 0.0
    for f in inputs:
        r = converge_semigroup(SKEW_PARAMS, f, ladder=ladder, t_set=(0.25, 0.5, 1.0))
        for t, seq in r.cauchy_per_t.items():
            tail = [c for n, c in zip(ladder, seq) if n >= 4]
            monotone &= all(b < a for a, b in zip(tail, tail[1:]))
            at32 = max(at32, seq[ladder.index(32)])
    return [
        holds("Cauchy differences decrease from n = 4, each t", monotone),
        at_most("max_t ||u_64 - u_32||", at32, 1e-2),
    ]


@suite("projection_convergence", "snapping projections converge to the skew/weks pair")
def _projection_convergence(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(16)
    ratio, ok, ulps = 0.0, True, 0.0
    for _ in range(20):
        params = corpus.random_params(rng)
        p = corpus.random_pair(rng, g)
        r = converge_projection(params, p)
        ratio = max(ratio, r.errors[-1] / r.errors[0])
        ok &= r.verdict == "converging"
        cs, dw = project_C_skew(params, p), project_D_weks(params, p)
        ulps = max(ulps, sup_norm(cs + dw - p) / ulp_scale(p, cs))
    return [
        at_most("error(64) / error(1)", ratio, 0.05),
        holds("verdict converging for every pair", ok),
        at_most("P^skew + Q^weks - I, in units of 8 ulp", ulps, 1.0),
    ]


@suite("dirac_lemma", "exponential Dirac sequences reproduce Lipschitz functions")
def _dirac_lemma(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(17)
    phis = [corpus.named_function(g, n).to_line() for n in ("odd_rational", "atan", "gauss")]
    phis += [corpus.random_line(rng, g) for _ in range(3)]
    checks = []
    for variant in ("a", "b", "c"):
        worst = max(dirac_limit_residual(1.0, 64, phi, variant) / dirac_limit_residual(1.0, 1, phi, variant)
                    for phi in phis)
        checks.append(at_most(f"variant {variant}: residual(64) / residual(1)", worst, 0.1))
    const = dirac_limit_residual(1.0, 8, LineFunction.constant(g, 1.0), "a")
    checks.append(at_most("constant is reproduced", const, EPS_ALG))
    return checks


@suite("conjugation", "the three J-conjugation identities")
def _conjugation(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(18)
    e1 = e2 = e3 = 0.0
    m = g.mid
    for i in range(20):
        p = corpus.random_pair(rng, g)
        s1 = p.first.samples.copy()
        s1[m] = -p.second.samples[m]
        p = FunctionPair(LineFunction(g, s1, p.first.limit_neg, p.first.limit_pos), p.second)
        lhs = flip_J_inv(restrict(flip_Jpair(p)).to_line())
        e1 = max(e1, sup_norm(lhs - restrict(p)))
        for t in (0.4, 1.3):
            e2 = max(e2, sup_norm(flip_Jpair(cosine_pair(t, flip_Jpair(p))) - cosine_pair(t, p)))
        params = corpus.random_params(rng)
        f = corpus.random_opposite(rng, g)
        lhs = flip_Jpair(extend_skew(params.swapped(), SharpFunction.from_line(flip_J(f))))
        e3 = max(e3, sup_norm(lhs - extend_weks(params, f)))
    return [
        at_most("(i) J^-1 R JJ = R on pairs with f1(0) = -f2(0)", e1, EPS_ALG),
        at_most("(ii) JJ C_D(t) JJ = C_D(t)", e2, EPS_ALG),
        at_most("(iii) JJ E_skew(beta, alpha) J = E_weks(alpha, beta)", e3, EPS_ALG),
    ]


@suite("scaling_laws", "regularity dichotomy, weks limit of perp families and averaging bound")
def _scaling_laws(ctx: Context) -> list[Check]:
    g, rng = ctx.grid, ctx.rng(19)
    params = SKEW_PARAMS
    dichotomy = True
    for f in [corpus.random_continuous(rng, g), corpus.named_function(g, "atan"),
              corpus.random_sharp(rng, g), corpus.named_function(g, "step(0,1)")]:
        r = converge_cosine(params, f, t_set=(0.25, 1.0))
        dichotomy &= (r.verdict == "converging") == (abs(f.jump) <= EPS_ALG)
    perp_ok = True
    for f in [corpus.named_function(g, "ov_gauss"), corpus.random_opposite(rng, g)]:
        perp_ok &= converge_perp(params, f, t_set=(0.25, 1.0)).verdict == "converging"
    # semigroup error <= sup over s of the cosine error, for continuous f
    f = corpus.named_function(g, "atan")
    excess = -np.inf
    for n in (1, 4, 16):
        pn = params.scaled(n)
        s_grid = np.arange(0.0, 12.0, 0.05)
        cos_err = max(sup_norm(cosine_evolve(EvolutionKind.Snapping, s, f, pn) - skew_reference(params, s, f))
                      for s in s_grid)
        for t in (0.25, 1.0):
            semi_err = sup_norm(semigroup_evolve(EvolutionKind.Snapping, t, f, pn)
                                - semigroup_evolve(EvolutionKind.Skew, t, f, params))
            excess = max(excess, semi_err - cos_err)
    return [
        holds("converging verdict iff continuous at 0", dichotomy),
        holds("perp cosine families converge to the weks family", perp_ok),
        at_most("semigroup error minus sup cosine error", excess, 1e-8),
    ]


ACCEPTANCE = (
    "norm_bounds",
    "complementarity",
    "membership",
    "invariance",
    "cosine_axioms",
    "heat_kernel",
    "transmission",
    "skew_convergence",
    "irregular_convergence",
    "projection_convergence",
    "dirac_lemma",
    "conjugation",
)

"""Ladder experiments in the permeability scale ``n``.

Each experiment replaces ``(alpha, beta)`` by ``(n alpha, n beta)`` along a
ladder of ``n`` and records a sup-norm error against the large-``n`` limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ResolutionGuard
from .evolution import EvolutionKind, cosine_evolve, cosine_pair, semigroup_evolve
from .extensions import extend_skew
from .function_space import (
    FunctionPair,
    MembraneParams,
    SharpFunction,
    restrict,
    sup_norm,
)
from .projections import project_C, project_C_skew, project_D, project_D_weks

DEFAULT_LADDER = (1, 2, 4, 8, 16, 32, 64)
CONVERGENCE_RATIO = 0.05
WITNESS_FRACTION = 0.05
ERROR_FLOOR = 1e-12


@dataclass
class LadderReport:
    ladder: list[int]
    errors: list[float]
    uniform_over: str
    verdict: str
    per_t: dict[float, list[float]] = field(default_factory=dict)
    cauchy: list[float] | None = None
    cauchy_per_t: dict[float, list[float]] | None = None
    witness_t: float | None = None

    def rows(self):
        return list(zip(self.ladder, self.errors))


def _non_increasing(values: Sequence[float]) -> bool:
    return all(b <= a * (1 + 1e-9) + 1e-14 for a, b in zip(values, values[1:]))


def converging_rule(ladder: Sequence[int], errors: Sequence[float]) -> bool:
    """Last error at most 5% of the first, and no growth from ``n = 4`` on.

    Ladders whose errors all sit at rounding level (below ``ERROR_FLOOR``)
    count as converged.
    """
    if max(errors) <= ERROR_FLOOR:
        return True
    tail = [e for n, e in zip(ladder, errors) if n >= 4]
    return errors[-1] <= CONVERGENCE_RATIO * errors[0] and _non_increasing(tail)


def check_resolution(params: MembraneParams, n: int, h: float):
    """Raise if ``e_{n(alpha+beta)}`` would be under-resolved at spacing ``h``."""
    if n * params.total * h > 1.0 + 1e-12:
        raise ResolutionGuard(
            f"n*(alpha+beta)*h = {n * params.total * h:.3g} > 1; refine the grid or shorten the ladder"
        )


def _ladder_errors(ladder, t_set, error_at: Callable[[int, float], float]):
    per_t = {t: [error_at(n, t) for n in ladder] for t in t_set}
    errors = [max(per_t[t][i] for t in t_set) for i in range(len(ladder))]
    return per_t, errors


def _describe(t_set) -> str:
    return "t in {" + ", ".join(f"{t:g}" for t in t_set) + "}"


def skew_reference(params: MembraneParams, t: float, f: SharpFunction) -> SharpFunction:
    """Skew cosine family applied to ``f``, with the jump test switched off.

    For ``f`` continuous at 0 this is the limit family; for a jump it is the
    formal image of ``f`` under the limit formulas.
    """
    pair = extend_skew(params, f, tol=np.inf)
    return restrict(cosine_pair(t, pair))


def converge_cosine(params: MembraneParams, f: SharpFunction,
                    ladder: Sequence[int] = DEFAULT_LADDER,
                    t_set: Sequence[float] = (0.25, 0.5, 1.0, 2.0, 4.0)) -> LadderReport:
    """Snapping cosine families at ``(n alpha, n beta)`` against the skew family."""
    ladder = list(ladder)
    for n in ladder:
        check_resolution(params, n, f.grid.spacing)
    refs = {t: skew_reference(params, t, f) for t in t_set}

    def err(n, t):
        return sup_norm(cosine_evolve(EvolutionKind.Snapping, t, f, params.scaled(n)) - refs[t])

    per_t, errors = _ladder_errors(ladder, t_set, err)
    report = LadderReport(ladder, errors, _describe(t_set), "inconclusive", per_t)
    if converging_rule(ladder, errors):
        report.verdict = "converging"
        return report
    delta = WITNESS_FRACTION * abs(f.jump)
    for t in t_set:
        tail = [e for n, e in zip(ladder, per_t[t]) if n >= 4]
        if delta > 0 and tail and min(tail) >= delta:
            report.verdict, report.witness_t = "diverging", t
            break
    return report


def converge_semigroup(params: MembraneParams, f: SharpFunction,
                       ladder: Sequence[int] = DEFAULT_LADDER,
                       t_set: Sequence[float] = (0.25, 0.5, 1.0),
                       reference_n: int = 256) -> LadderReport:
    """Snapping semigroups along the ladder, judged by a Cauchy criterion.

    ``errors`` are distances to the ``reference_n`` rung; ``cauchy`` holds
    ``max_t ||u_{2n}(t) - u_n(t)||`` for every ``n`` in the ladder.
    """
    ladder = list(ladder)
    if any(t <= 0 for t in t_set):
        raise ValueError("semigroup ladders need t > 0")
    rungs = sorted(set(ladder) | {2 * n for n in ladder} | {reference_n})
    for n in rungs:
        check_resolution(params, n, f.grid.spacing)
    sol = {(n, t): semigroup_evolve(EvolutionKind.Snapping, t, f, params.scaled(n))
           for n in rungs for t in t_set}
    per_t, errors = _ladder_errors(ladder, t_set,
                                   lambda n, t: sup_norm(sol[n, t] - sol[reference_n, t]))
    cauchy_t = {t: [sup_norm(sol[2 * n, t] - sol[n, t]) for n in ladder] for t in t_set}
    cauchy = [max(cauchy_t[t][i] for t in t_set) for i in range(len(ladder))]
    tail = [c for n, c in zip(ladder, cauchy) if n >= 4]
    verdict = "converging" if _non_increasing(tail) and converging_rule(ladder, cauchy) else "inconclusive"
    return LadderReport(ladder, errors, _describe(t_set), verdict, per_t, cauchy, cauchy_t)


def converge_perp(params: MembraneParams, f: SharpFunction,
                  ladder: Sequence[int] = DEFAULT_LADDER,
                  t_set: Sequence[float] = (0.25, 0.5, 1.0, 2.0, 4.0)) -> LadderReport:
    """Perp cosine families at ``(n alpha, n beta)`` against the weks family."""
    f.check_opposite_values()
    ladder = list(ladder)
    for n in ladder:
        check_resolution(params, n, f.grid.spacing)
    refs = {t: cosine_evolve(EvolutionKind.Weks, t, f, params) for t in t_set}

    def err(n, t):
        return sup_norm(cosine_evolve(EvolutionKind.Perp, t, f, params.scaled(n)) - refs[t])

    per_t, errors = _ladder_errors(ladder, t_set, err)
    verdict = "converging" if converging_rule(ladder, errors) else "inconclusive"
    return LadderReport(ladder, errors, _describe(t_set), verdict, per_t)


def converge_projection(params: MembraneParams, p: FunctionPair,
                        ladder: Sequence[int] = DEFAULT_LADDER) -> LadderReport:
    """``project_C`` / ``project_D`` at ``(n alpha, n beta)`` against the skew/weks pair."""
    ladder = list(ladder)
    c_lim, d_lim = project_C_skew(params, p), project_D_weks(params, p)
    errors = []
    for n in ladder:
        pn = params.scaled(n)
        errors.append(max(sup_norm(project_C(pn, p) - c_lim),
                          sup_norm(project_D(pn, p) - d_lim)))
    verdict = "converging" if converging_rule(ladder, errors) else "inconclusive"
    return LadderReport(ladder, errors, "projection pair", verdict)

"""Cosine families and heat semigroups built by the method of images.

For each membrane kind the cosine family is ``restrict o C_D(t) o extend``:
extend ``f`` to a pair of whole-line functions, move both with the
d'Alembert family ``C(t) phi(x) = (phi(x+t) + phi(x-t))/2`` and read off the
left and right branches. The semigroup is the Gaussian average of the cosine
family over ``s``, which reduces to a discrete Gaussian filter applied to the
extended pair.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .errors import GridTooCoarse, NonPositiveTime
from .extensions import SubspaceKind, extend
from .function_space import (
    EPS_ALG,
    FunctionPair,
    LineFunction,
    MembraneParams,
    SharpFunction,
    flip_J,
    flip_J_inv,
    restrict,
)

GAUSS_TAIL = 1e-12


class EvolutionKind(enum.Enum):
    Free = "free"
    Snapping = "snapping"
    Perp = "perp"
    Skew = "skew"
    Weks = "weks"


_SUBSPACE = {
    EvolutionKind.Snapping: SubspaceKind.SnappingC,
    EvolutionKind.Perp: SubspaceKind.PerpD,
    EvolutionKind.Skew: SubspaceKind.SkewC,
    EvolutionKind.Weks: SubspaceKind.WeksD,
}


def _params_for(kind: EvolutionKind, params: MembraneParams | None) -> MembraneParams:
    if params is None:
        raise ValueError(f"kind {kind.value!r} needs membrane parameters")
    return params


# ---------------------------------------------------------------------------
# whole-line families


def cosine_basic(t: float, f: LineFunction) -> LineFunction:
    """``x -> (f(x + t) + f(x - t)) / 2``; limits are unchanged."""
    values = 0.5 * (f.translate(t) + f.translate(-t))
    return LineFunction(f.grid, values, f.limit_neg, f.limit_pos)


def cosine_pair(t: float, p: FunctionPair) -> FunctionPair:
    return FunctionPair(cosine_basic(t, p.first), cosine_basic(t, p.second))


def gaussian_weights(t: float, h: float) -> np.ndarray:
    """Normalized weights of the heat kernel ``(4 pi t)^{-1/2} e^{-s^2/4t}`` at ``s = j h``.

    The support ``|s| <= 2 sqrt(t ln 1e12) + h`` drops less than ``1e-12`` of
    the mass. The nodes ``jh`` line up with the grid, so the rule is the
    trapezoid rule (end weights are negligible).
    """
    if not t > 0:
        raise NonPositiveTime(f"time must be positive, got {t}")
    reach = 2.0 * math.sqrt(t * math.log(1.0 / GAUSS_TAIL)) + h
    j = np.arange(-int(math.ceil(reach / h)), int(math.ceil(reach / h)) + 1)
    w = np.exp(-((j * h) ** 2) / (4.0 * t))
    return w / w.sum()


def heat_line(t: float, f: LineFunction) -> LineFunction:
    """Free heat semigroup on the line, by discrete Gaussian filtering."""
    w = gaussian_weights(t, f.grid.spacing)
    r = (w.size - 1) // 2
    padded = np.concatenate([np.full(r, f.limit_neg), f.samples, np.full(r, f.limit_pos)])
    values = fftconvolve(padded, w, mode="valid")
    return LineFunction(f.grid, values, f.limit_neg, f.limit_pos)


def heat_pair(t: float, p: FunctionPair) -> FunctionPair:
    return FunctionPair(heat_line(t, p.first), heat_line(t, p.second))


# ---------------------------------------------------------------------------
# families on the two half-lines


def _extended(kind: EvolutionKind, f: SharpFunction, params) -> FunctionPair:
    kind = EvolutionKind(kind)
    if kind is EvolutionKind.Free:
        line = f.to_line()
        return FunctionPair(line, line)
    return extend(_SUBSPACE[kind], _params_for(kind, params), f)


def cosine_evolve(kind: EvolutionKind, t: float, f: SharpFunction,
                  params: MembraneParams | None = None) -> SharpFunction:
    """Cosine family of ``kind`` at time ``t`` applied to ``f``."""
    return restrict(cosine_pair(t, _extended(kind, f, params)))


def semigroup_evolve(kind: EvolutionKind, t: float, f: SharpFunction,
                     params: MembraneParams | None = None) -> SharpFunction:
    """Heat semigroup of ``kind`` at time ``t > 0``, as a Gaussian average of the cosine family."""
    if not t > 0:
        raise NonPositiveTime(f"time must be positive, got {t}")
    return restrict(heat_pair(t, _extended(kind, f, params)))


def weks_by_conjugation(t: float, f: SharpFunction, params: MembraneParams,
                        tol: float = EPS_ALG) -> SharpFunction:
    """``J^{-1} Cos_skew(beta, alpha)(t) J f``, the conjugated form of the weks family."""
    g = SharpFunction.from_line(flip_J(f, tol))
    moved = cosine_evolve(EvolutionKind.Skew, t, g, params.swapped())
    return flip_J_inv(moved.to_line(tol=max(tol, 1e-6)))


# ---------------------------------------------------------------------------
# residual diagnostics


@dataclass(frozen=True)
class OneSided:
    """One-sided values and finite-difference derivatives at 0."""

    value_minus: float
    value_plus: float
    d1_minus: float
    d1_plus: float
    d2_minus: float
    d2_plus: float


def one_sided_derivatives(f: SharpFunction) -> OneSided:
    """Second-order one-sided stencils for ``f'`` and ``f''`` at ``0-`` and ``0+``."""
    if f.grid.n_points < 9:
        raise GridTooCoarse(f"need at least 9 nodes, got {f.grid.n_points}")
    h = f.grid.spacing
    r = f.right[:4]
    l = f.left[::-1][:4]  # f(0-), f(-h), f(-2h), f(-3h)
    return OneSided(
        value_minus=float(l[0]),
        value_plus=float(r[0]),
        d1_minus=(3 * l[0] - 4 * l[1] + l[2]) / (2 * h),
        d1_plus=(-3 * r[0] + 4 * r[1] - r[2]) / (2 * h),
        d2_minus=(2 * l[0] - 5 * l[1] + 4 * l[2] - l[3]) / h**2,
        d2_plus=(2 * r[0] - 5 * r[1] + 4 * r[2] - r[3]) / h**2,
    )


@dataclass(frozen=True)
class TransmissionResidual:
    residuals: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max(abs(v) for v in self.residuals.values())


def transmission_residual(kind: EvolutionKind, f: SharpFunction,
                          params: MembraneParams | None = None) -> TransmissionResidual:
    """Defects of the interface conditions at 0 that define the domain of ``kind``."""
    kind = EvolutionKind(kind)
    d = one_sided_derivatives(f)
    jump = d.value_plus - d.value_minus
    if kind is EvolutionKind.Free:
        return TransmissionResidual({
            "continuity": jump,
            "slope_match": d.d1_plus - d.d1_minus,
        })
    p = _params_for(kind, params)
    al, be = p.alpha, p.beta
    if kind is EvolutionKind.Snapping:
        res = {
            "left_flux": d.d1_minus - al * jump,
            "right_flux": d.d1_plus - be * jump,
        }
    elif kind is EvolutionKind.Perp:
        res = {
            "opposite_values": d.value_minus + d.value_plus,
            "curvature_flux": d.d2_plus - al * d.d1_minus - be * d.d1_plus,
            "opposite_curvature": d.d2_plus + d.d2_minus,
        }
    elif kind is EvolutionKind.Skew:
        res = {
            "continuity": jump,
            "slope_ratio": al * d.d1_plus - be * d.d1_minus,
            "curvature_match": d.d2_plus - d.d2_minus,
        }
    else:
        res = {
            "opposite_values": d.value_minus + d.value_plus,
            "slope_ratio": be * d.d1_plus + al * d.d1_minus,
            "opposite_curvature": d.d2_plus + d.d2_minus,
        }
    return TransmissionResidual(res)


def generator_residual(kind: EvolutionKind, t_small: float, f: SharpFunction,
                       params: MembraneParams | None = None) -> float:
    """Sup of ``|2 t^{-2} (Cos(t) f - f) - f''|`` over interior nodes off 0.

    ``f''`` is the centered second difference on each branch; nodes within
    ``t + h`` of ``+-L`` are skipped because ``Cos(t)`` reaches past the grid there.
    """
    moved = cosine_evolve(kind, t_small, f, params)
    grid = f.grid
    h = grid.spacing
    keep = grid.half_nodes[1:-1] <= grid.half_width - t_small - h
    worst = 0.0
    for before, after in ((f.right, moved.right), (f.left[::-1], moved.left[::-1])):
        d2 = (before[2:] - 2 * before[1:-1] + before[:-2]) / h**2
        approx = 2.0 / t_small**2 * (after[1:-1] - before[1:-1])
        worst = max(worst, float(np.max(np.abs(approx - d2)[keep])))
    return worst

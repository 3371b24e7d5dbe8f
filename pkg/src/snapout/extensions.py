"""Extension operators from two-sided functions to pairs, and subspace membership.

Each extension keeps ``f`` on its own half-line (the first component agrees
with ``f`` on ``(-inf, 0]``, the second on ``[0, inf)``) and fills the other
half so that the pair lies in one of four subspaces of pairs:

========== ============================= ===================================
kind       extension                     defining relations on ``[0, inf)``
========== ============================= ===================================
SnappingC  :func:`extend_snapping`       odd parts driven by ``psi2 - psi1^T``
PerpD      :func:`extend_perp`           even parts opposite, see below
SkewC      :func:`extend_skew`           ``g1e = g2e``, ``beta g1o = alpha g2o``
WeksD      :func:`extend_weks`           ``g1e = -g2e``, ``alpha g1o = -beta g2o``
========== ============================= ===================================
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .function_space import (
    EPS_ALG,
    FunctionPair,
    LineFunction,
    MembraneParams,
    SharpFunction,
)
from .kernels import halfline_convolve


class SubspaceKind(enum.Enum):
    SnappingC = "snapping"
    PerpD = "perp"
    SkewC = "skew"
    WeksD = "weks"


@dataclass(frozen=True)
class MembershipReport:
    residuals: dict[str, float]
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def _assemble(f: SharpFunction, left_tail: np.ndarray, right_tail: np.ndarray,
              first_pos: float, second_neg: float) -> FunctionPair:
    """Build the pair from ``f`` and the values it needs on the far half-lines.

    ``left_tail[k]`` is the first component at ``+x_k`` and ``right_tail[k]``
    the second component at ``-x_k`` for ``x_k = k*h``; entry 0 is unused.
    """
    grid = f.grid
    first = LineFunction(grid, np.concatenate([f.left, left_tail[1:]]),
                         f.limit_neg, first_pos)
    second = LineFunction(grid, np.concatenate([right_tail[:0:-1], f.right]),
                          second_neg, f.limit_pos)
    return FunctionPair(first, second)


def extend_snapping(params: MembraneParams, f: SharpFunction) -> FunctionPair:
    """Extension whose pair lies in the snapping subspace."""
    a, al, be = params.total, params.alpha, params.beta
    fx, fmx = f.right, f.mirrored_left()
    conv = halfline_convolve(a, f.grid.spacing, fx - fmx)
    first_pos = (2 * al * f.limit_pos + (be - al) * f.limit_neg) / a
    second_neg = ((al - be) * f.limit_pos + 2 * be * f.limit_neg) / a
    return _assemble(f, fmx + 2 * al * conv, fx - 2 * be * conv, first_pos, second_neg)


def extend_perp(params: MembraneParams, f: SharpFunction, tol: float = EPS_ALG) -> FunctionPair:
    """Extension of an opposite-values function into the perpendicular subspace."""
    f.check_opposite_values(tol)
    a, al, be = params.total, params.alpha, params.beta
    fx, fmx = f.right, f.mirrored_left()
    x = f.grid.half_nodes
    conv = halfline_convolve(a, f.grid.spacing, be * fx - al * fmx)
    bump = 2 * f.value_plus * np.exp(-a * x)
    first_pos = ((al - be) * f.limit_neg - 2 * be * f.limit_pos) / a
    second_neg = ((be - al) * f.limit_pos - 2 * al * f.limit_neg) / a
    return _assemble(f, -fmx - bump - 2 * conv, -fx + bump + 2 * conv, first_pos, second_neg)


def extend_skew(params: MembraneParams, f: SharpFunction, tol: float = EPS_ALG) -> FunctionPair:
    """Closed-form extension of a function continuous at 0 into the skew subspace."""
    f.check_continuous(tol)
    a, al, be = params.total, params.alpha, params.beta
    fx, fmx = f.right, f.mirrored_left()
    first_pos = ((be - al) * f.limit_neg + 2 * al * f.limit_pos) / a
    second_neg = (2 * be * f.limit_neg + (al - be) * f.limit_pos) / a
    return _assemble(f, ((be - al) * fmx + 2 * al * fx) / a,
                     (2 * be * fmx + (al - be) * fx) / a, first_pos, second_neg)


def extend_weks(params: MembraneParams, f: SharpFunction, tol: float = EPS_ALG) -> FunctionPair:
    """Closed-form extension of an opposite-values function into the weks subspace."""
    f.check_opposite_values(tol)
    a, al, be = params.total, params.alpha, params.beta
    fx, fmx = f.right, f.mirrored_left()
    first_pos = ((al - be) * f.limit_neg - 2 * be * f.limit_pos) / a
    second_neg = (-2 * al * f.limit_neg + (be - al) * f.limit_pos) / a
    return _assemble(f, ((al - be) * fmx - 2 * be * fx) / a,
                     (-2 * al * fmx + (be - al) * fx) / a, first_pos, second_neg)


EXTENSIONS = {
    SubspaceKind.SnappingC: extend_snapping,
    SubspaceKind.PerpD: extend_perp,
    SubspaceKind.SkewC: extend_skew,
    SubspaceKind.WeksD: extend_weks,
}


def extend(kind: SubspaceKind, params: MembraneParams, f: SharpFunction) -> FunctionPair:
    return EXTENSIONS[SubspaceKind(kind)](params, f)


def _halves(p: FunctionPair):
    """Even/odd parts of both components, and ``psi1^T``, sampled on ``[0, L]``."""
    m = p.grid.mid
    u, v = p.first.samples, p.second.samples
    u_pos, u_neg = u[m:], u[:m + 1][::-1]
    v_pos, v_neg = v[m:], v[:m + 1][::-1]
    return (0.5 * (u_pos + u_neg), 0.5 * (u_pos - u_neg),
            0.5 * (v_pos + v_neg), 0.5 * (v_pos - v_neg), u_neg, v_pos)


def membership_residuals(kind: SubspaceKind, params: MembraneParams,
                         p: FunctionPair) -> dict[str, float]:
    """Sup-norm defects, over nodes in ``[0, L]``, of the relations defining ``kind``."""
    kind = SubspaceKind(kind)
    al, be, a = params.alpha, params.beta, params.total
    h = p.grid.spacing
    e1, o1, e2, o2, first_T, second = _halves(p)

    def sup(r):
        return float(np.max(np.abs(r)))

    if kind is SubspaceKind.SnappingC:
        conv = halfline_convolve(a, h, second - first_T)
        return {"odd_first": sup(o1 - al * conv), "odd_second": sup(o2 - be * conv)}
    if kind is SubspaceKind.PerpD:
        x = p.grid.half_nodes
        conv = halfline_convolve(a, h, be * second - al * first_T)
        return {
            "even_second": sup(e2 - conv - second[0] * np.exp(-a * x)),
            "even_sum": sup(e2 + e1),
        }
    if kind is SubspaceKind.SkewC:
        return {"even_match": sup(e1 - e2), "odd_ratio": sup(be * o1 - al * o2)}
    return {"even_sum": sup(e1 + e2), "odd_ratio": sup(al * o1 + be * o2)}


def membership(kind: SubspaceKind, params: MembraneParams, p: FunctionPair,
               tol: float) -> MembershipReport:
    res = membership_residuals(kind, params, p)
    return MembershipReport(res, max(res.values()), tol)

"""Complementary projections onto the snapping/perp and skew/weks subspaces.

The snapping projection is evaluated through two improper one-sided
exponential integrals, which stay bounded on the whole grid. The equivalent
``sinh``/``cosh`` form grows like ``exp(gamma*|x|)`` and is only provided as a
cross-check on a small window (:func:`project_C_hyperbolic`).
"""

from __future__ import annotations

from dataclasses import dataclass

from .function_space import (
    FunctionPair,
    Grid,
    LineFunction,
    MembraneParams,
    parity_parts,
)
from .kernels import (
    cosh_line,
    exp_convolve,
    improper_left,
    improper_right,
    laplace_at,
    sinh_line,
)


@dataclass(frozen=True)
class ProjectionInputs:
    """``k1`` (odd), ``k2`` (even) and the matching constant ``c``."""

    k1: LineFunction
    k2: LineFunction
    c: float
    even_first: LineFunction
    even_second: LineFunction


def projection_inputs(params: MembraneParams, p: FunctionPair) -> ProjectionInputs:
    e1, o1 = parity_parts(p.first)
    e2, o2 = parity_parts(p.second)
    k1 = params.alpha * o1 + params.beta * o2
    k2 = e1 - e2
    g = params.gamma
    c = laplace_at(k1, g) + 0.5 * g * laplace_at(k2, g)
    return ProjectionInputs(k1, k2, c, e1, e2)


def project_C(params: MembraneParams, p: FunctionPair) -> FunctionPair:
    """Projection onto the snapping subspace along the perp subspace."""
    q = projection_inputs(params, p)
    g, al, be = params.gamma, params.alpha, params.beta
    from_left = improper_left(g, (1 / g) * q.k1 - 0.5 * q.k2)
    from_right = improper_right(g, (1 / g) * q.k1 + 0.5 * q.k2)
    g1 = q.even_first + 0.5 * (g + 2 * al) * from_left - 0.5 * (g - 2 * al) * from_right
    g2 = q.even_second + 0.5 * (g + 2 * be) * from_right - 0.5 * (g - 2 * be) * from_left
    return FunctionPair(g1, g2)


def project_D(params: MembraneParams, p: FunctionPair) -> FunctionPair:
    """Complementary projection ``I - project_C``."""
    return p - project_C(params, p)


def project_C_skew(params: MembraneParams, p: FunctionPair) -> FunctionPair:
    """Closed-form limit of ``project_C`` under ``(n alpha, n beta)``, ``n -> inf``."""
    q = projection_inputs(params, p)
    g2 = params.gamma ** 2
    return FunctionPair(
        q.even_first + (2 * params.alpha / g2) * q.k1 - 0.5 * q.k2,
        q.even_second + (2 * params.beta / g2) * q.k1 + 0.5 * q.k2,
    )


def project_D_weks(params: MembraneParams, p: FunctionPair) -> FunctionPair:
    return p - project_C_skew(params, p)


def _window(f: LineFunction, sub: Grid) -> LineFunction:
    m, j = f.grid.mid, sub.mid
    return LineFunction(sub, f.samples[m - j:m + j + 1], float("nan"), float("nan"))


def project_C_hyperbolic(params: MembraneParams, p: FunctionPair,
                         x_max: float = 5.0) -> FunctionPair:
    """The ``sinh``/``cosh`` form of ``project_C`` on the nodes with ``|x| <= x_max``.

    Overflows for large ``gamma * x_max``; intended for consistency checks only.
    """
    q = projection_inputs(params, p)
    g, al, be, c = params.gamma, params.alpha, params.beta, q.c
    sub = p.grid.restricted(x_max)
    k1, k2 = _window(q.k1, sub), _window(q.k2, sub)
    e1, e2 = _window(q.even_first, sub), _window(q.even_second, sub)
    sh, ch = sinh_line(sub, g), cosh_line(sub, g)

    def conv_sinh(k):
        return 0.5 * (exp_convolve(-g, k) - exp_convolve(g, k))

    def conv_cosh(k):
        return 0.5 * (exp_convolve(-g, k) + exp_convolve(g, k))

    g1 = (e1 + c * ((2 * al / g) * sh - ch)
          - conv_sinh((2 * al / g) * k1 - (g / 2) * k2) + conv_cosh(k1 - al * k2))
    g2 = (e2 + c * ((2 * be / g) * sh + ch)
          - conv_sinh((2 * be / g) * k1 + (g / 2) * k2) - conv_cosh(k1 + be * k2))
    return FunctionPair(g1, g2)

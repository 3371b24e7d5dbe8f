"""Exponential-kernel quadrature on the piecewise-linear interpolant.

Every integral here has the form ``int exp(-a*(x - y)) phi(y) dy`` with ``phi``
linear between nodes, so each grid cell contributes exactly
``m0 * phi(x_{k+1}) + m1 * phi(x_k)`` where ``m0, m1`` are the kernel moments
below. The cell-to-cell recurrence is a first-order linear filter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import NonPositiveGamma, NonPositiveLambda
from .function_space import Grid, LineFunction, reflect, sup_norm

_SERIES_CUTOFF = 0.1
_SERIES_TERMS = 14


def kernel_moments(a: float, h: float) -> tuple[float, float]:
    """Moments of ``exp(-a*s)`` against the hat pieces on ``[0, h]``.

    Returns ``(m0, m1)`` with ``m0 = int_0^h e^{-as} (1 - s/h) ds`` and
    ``m1 = int_0^h e^{-as} (s/h) ds``.
    """
    z = a * h
    if abs(z) < _SERIES_CUTOFF:
        # cancellation-free Taylor series in z
        j = np.arange(_SERIES_TERMS)
        fact = np.array([math.factorial(k + 2) for k in j], dtype=float)
        powers = (-z) ** j
        m0 = float(np.sum(powers / fact))
        m1 = float(np.sum(powers * (j + 1) / fact))
    else:
        ez = math.exp(-z)
        m0 = (z - 1.0 + ez) / (z * z)
        m1 = (1.0 - (1.0 + z) * ez) / (z * z)
    return h * m0, h * m1


def _run(a: float, h: float, v: np.ndarray, start: float) -> np.ndarray:
    """``out[0] = start``; ``out[k+1] = e^{-ah} out[k] + m0 v[k+1] + m1 v[k]``."""
    m0, m1 = kernel_moments(a, h)
    drive = np.empty(v.size)
    drive[0] = start
    drive[1:] = m1 * v[:-1] + m0 * v[1:]
    return lfilter([1.0], [1.0, -math.exp(-a * h)], drive)


def halfline_convolve(a: float, h: float, v: np.ndarray) -> np.ndarray:
    """``x_k -> int_0^{x_k} e^{-a(x_k - y)} v(y) dy`` for nodes ``x_k = k*h``."""
    return _run(a, h, np.asarray(v, dtype=float), 0.0)


@dataclass(frozen=True)
class ExpKernel:
    """The function ``e_a(x) = exp(-a*x)``."""

    rate: float

    def __call__(self, x):
        return np.exp(-self.rate * np.asarray(x, dtype=float))

    def on_grid(self, grid: Grid) -> LineFunction:
        a = self.rate
        if a > 0:
            limits = (math.nan, 0.0)
        elif a < 0:
            limits = (0.0, math.nan)
        else:
            limits = (1.0, 1.0)
        return LineFunction(grid, self(grid.nodes), *limits)


def exp_line(grid: Grid, a: float) -> LineFunction:
    return ExpKernel(a).on_grid(grid)


def sinh_line(grid: Grid, a: float) -> LineFunction:
    """``x -> sinh(a*x)``; unbounded, so both limits are ``nan`` unless ``a == 0``."""
    lim = 0.0 if a == 0 else math.nan
    return LineFunction(grid, np.sinh(a * grid.nodes), -lim, lim)


def cosh_line(grid: Grid, a: float) -> LineFunction:
    lim = 1.0 if a == 0 else math.nan
    return LineFunction(grid, np.cosh(a * grid.nodes), lim, lim)


def exp_convolve(a: float, phi: LineFunction) -> LineFunction:
    """Signed convolution ``(e_a * phi)(x) = int_0^x e^{-a(x-y)} phi(y) dy``.

    For ``x < 0`` the mirror identity ``(e_a*phi)(-x) = -(e_{-a}*phi^T)(x)``
    is used, so the left half runs the same recurrence with rate ``-a``.
    The limit on the decaying side is ``phi(+-inf)/a``; the other is ``nan``.
    """
    grid = phi.grid
    h, m = grid.spacing, grid.mid
    right = halfline_convolve(a, h, phi.samples[m:])
    left = -halfline_convolve(-a, h, phi.samples[:m + 1][::-1])
    values = np.concatenate([left[:0:-1], right])
    lim_neg = phi.limit_neg / a if a < 0 else math.nan
    lim_pos = phi.limit_pos / a if a > 0 else math.nan
    return LineFunction(grid, values, lim_neg, lim_pos)


def laplace_at(phi: LineFunction, lam: float) -> float:
    """``int_0^inf e^{-lam x} phi(x) dx`` with the constant tail beyond ``L``."""
    if not lam > 0:
        raise NonPositiveLambda(f"lambda must be positive, got {lam}")
    grid = phi.grid
    h, m = grid.spacing, grid.mid
    v = phi.samples[m:]
    x = grid.half_nodes
    # on [x_k, x_k + h]: e^{-lam x_k} int_0^h e^{-lam s} (v_k (1-s/h) + v_{k+1} s/h) ds
    m0, m1 = kernel_moments(lam, h)
    body = np.sum(np.exp(-lam * x[:-1]) * (m0 * v[:-1] + m1 * v[1:]))
    tail = phi.limit_pos * math.exp(-lam * grid.half_width) / lam
    return float(body + tail)


def improper_left(gamma: float, psi: LineFunction) -> LineFunction:
    """``x -> int_{-inf}^x e^{-gamma(x-y)} psi(y) dy``."""
    if not gamma > 0:
        raise NonPositiveGamma(f"gamma must be positive, got {gamma}")
    h = psi.grid.spacing
    # the constant tail below -L contributes psi(-inf)/gamma at x = -L
    values = _run(gamma, h, psi.samples, psi.limit_neg / gamma)
    return LineFunction(psi.grid, values, psi.limit_neg / gamma, psi.limit_pos / gamma)


def improper_right(gamma: float, psi: LineFunction) -> LineFunction:
    """``x -> int_x^inf e^{gamma(x-y)} psi(y) dy``."""
    return reflect(improper_left(gamma, reflect(psi)))


def dirac_limit_residual(a: float, n: int, phi: LineFunction, variant: str = "a") -> float:
    """Sup distance between ``phi`` and its smoothing by the kernel ``n a e^{-n a s}``.

    ``variant`` selects the one-sided form: ``"a"`` integrates from the left,
    ``"b"`` from the right, and ``"c"`` works on ``[0, L]`` with the boundary
    term ``e^{-n a x} phi(0)``.
    """
    if not a > 0 or n < 1:
        raise ValueError(f"need a > 0 and n >= 1, got a={a}, n={n}")
    rate = n * a
    if variant == "a":
        return sup_norm(rate * improper_left(rate, phi) - phi)
    if variant == "b":
        return sup_norm(rate * improper_right(rate, phi) - phi)
    if variant == "c":
        grid = phi.grid
        x = grid.half_nodes
        v = phi.samples[grid.mid:]
        smooth = rate * halfline_convolve(rate, grid.spacing, v) + np.exp(-rate * x) * v[0]
        return float(np.max(np.abs(smooth - v)))
    raise ValueError(f"unknown variant {variant!r}; expected 'a', 'b' or 'c'")

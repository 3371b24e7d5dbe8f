"""Sampled function spaces on a symmetric grid.

Three kinds of objects live here:

* :class:`LineFunction` -- a continuous function on the line with finite
  limits at both infinities, stored as node samples plus the two limits.
* :class:`SharpFunction` -- a function on two half-lines glued at a membrane,
  with independent one-sided values at ``0-`` and ``0+``.
* :class:`FunctionPair` -- two line functions on a common grid.

Beyond ``[-L, L]`` every function is modelled as constant, equal to its stored
limit. Between nodes, evaluation is linear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Union

import numpy as np

from .errors import (
    DegenerateMembrane,
    GridMismatch,
    JumpAtZero,
    OppositeValuesViolated,
)

EPS_ALG = 1e-9


def eps_disc(grid: "Grid") -> float:
    """Tolerance for identities limited by second-order discretization."""
    return 10.0 * grid.spacing**2


@dataclass(frozen=True)
class Grid:
    """Uniform grid on ``[-half_width, half_width]`` with an odd node count."""

    half_width: float = 30.0
    n_points: int = 6001

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.n_points < 3 or self.n_points % 2 == 0:
            raise ValueError(f"n_points must be odd and >= 3, got {self.n_points}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.n_points - 1)

    @property
    def mid(self) -> int:
        """Index of the node at 0."""
        return (self.n_points - 1) // 2

    @cached_property
    def nodes(self) -> np.ndarray:
        # built as h*(k - mid) so the grid is exactly symmetric and 0 is a node
        x = self.spacing * np.arange(-self.mid, self.mid + 1, dtype=float)
        x.flags.writeable = False
        return x

    @cached_property
    def half_nodes(self) -> np.ndarray:
        """Nodes in ``[0, L]``."""
        return self.nodes[self.mid:]

    def matches(self, other: "Grid") -> bool:
        return self.n_points == other.n_points and math.isclose(
            self.half_width, other.half_width, rel_tol=1e-12
        )

    def shift_index(self, t: float) -> int | None:
        """Return ``t/h`` if it is (numerically) an integer, else ``None``."""
        q = t / self.spacing
        j = round(q)
        if abs(q - j) <= 1e-9 * max(1.0, abs(q)):
            return int(j)
        return None

    def restricted(self, x_max: float) -> "Grid":
        """Sub-grid made of the nodes with ``|x| <= x_max``."""
        j = int(math.floor(x_max / self.spacing + 1e-9))
        j = min(max(j, 1), self.mid)
        return Grid(j * self.spacing, 2 * j + 1)


def _check_same(a: Grid, b: Grid):
    if not a.matches(b):
        raise GridMismatch(f"grids differ: {a} vs {b}")


def _readonly(values, size: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.shape != (size,):
        raise ValueError(f"{name}: expected shape ({size},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: samples must be finite")
    arr.flags.writeable = False
    return arr


def _pad_shift(values: np.ndarray, lo: float, hi: float, j: int) -> np.ndarray:
    """``out[k] = values[k + j]`` with the constant tails ``lo``/``hi`` outside."""
    n = values.size
    out = np.empty(n)
    if j >= 0:
        k = max(n - j, 0)
        out[:k] = values[j:j + k]
        out[k:] = hi
    else:
        k = min(-j, n)
        out[:k] = lo
        out[k:] = values[:n - k]
    return out


@dataclass(frozen=True, eq=False)
class LineFunction:
    """Element of C[-inf, inf]: node samples plus the limits at -inf and +inf.

    Limits may be ``nan`` for unbounded helper functions such as growing
    exponentials; those are only meant for evaluation away from the tails.
    """

    grid: Grid
    samples: np.ndarray
    limit_neg: float
    limit_pos: float

    def __post_init__(self):
        object.__setattr__(
            self, "samples", _readonly(self.samples, self.grid.n_points, "samples")
        )
        object.__setattr__(self, "limit_neg", float(self.limit_neg))
        object.__setattr__(self, "limit_pos", float(self.limit_pos))

    @classmethod
    def from_callable(cls, grid: Grid, fn: Callable, limits=None) -> "LineFunction":
        """Sample ``fn`` at the nodes.

        Without explicit ``limits`` the end samples are used, which keeps the
        constant-tail model continuous at ``+-L``.
        """
        values = np.asarray(fn(grid.nodes), dtype=float) * np.ones(grid.n_points)
        if limits is None:
            limits = (values[0], values[-1])
        return cls(grid, values, *limits)

    @classmethod
    def constant(cls, grid: Grid, c: float) -> "LineFunction":
        return cls(grid, np.full(grid.n_points, float(c)), c, c)

    @classmethod
    def zeros(cls, grid: Grid) -> "LineFunction":
        return cls.constant(grid, 0.0)

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        L = self.grid.half_width
        out = np.interp(x, self.grid.nodes, self.samples)
        out = np.where(x < -L, self.limit_neg, out)
        out = np.where(x > L, self.limit_pos, out)
        return out

    def shifted(self, j: int) -> np.ndarray:
        """Values at ``x_k + j*h`` for every node, using the tails outside."""
        return _pad_shift(self.samples, self.limit_neg, self.limit_pos, j)

    def translate(self, t: float) -> np.ndarray:
        """Values of ``x -> f(x + t)`` at the nodes."""
        j = self.grid.shift_index(t)
        if j is not None:
            return self.shifted(j)
        return self.evaluate(self.grid.nodes + t)

    @property
    def value_at_zero(self) -> float:
        return float(self.samples[self.grid.mid])

    def _combine(self, other, op) -> "LineFunction":
        if isinstance(other, LineFunction):
            _check_same(self.grid, other.grid)
            return LineFunction(
                self.grid,
                op(self.samples, other.samples),
                op(self.limit_neg, other.limit_neg),
                op(self.limit_pos, other.limit_pos),
            )
        return NotImplemented

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, c):
        if isinstance(c, (LineFunction, SharpFunction, FunctionPair)):
            return NotImplemented
        c = float(c)
        return LineFunction(self.grid, c * self.samples, c * self.limit_neg, c * self.limit_pos)

    __rmul__ = __mul__

    def __neg__(self):
        return LineFunction(self.grid, -self.samples, -self.limit_neg, -self.limit_pos)

    def allclose(self, other: "LineFunction", atol: float = 0.0) -> bool:
        return sup_norm(self - other) <= atol


@dataclass(frozen=True, eq=False)
class SharpFunction:
    """Element of C(R#): two branches meeting at the membrane.

    ``left`` holds values on the nodes of ``[-L, 0]``; its last entry is
    ``f(0-)``. ``right`` holds values on ``[0, L]``; its first entry is
    ``f(0+)``.
    """

    grid: Grid
    left: np.ndarray
    right: np.ndarray
    limit_neg: float
    limit_pos: float

    def __post_init__(self):
        m = self.grid.mid + 1
        object.__setattr__(self, "left", _readonly(self.left, m, "left"))
        object.__setattr__(self, "right", _readonly(self.right, m, "right"))
        object.__setattr__(self, "limit_neg", float(self.limit_neg))
        object.__setattr__(self, "limit_pos", float(self.limit_pos))

    @classmethod
    def from_callables(cls, grid: Grid, left_fn: Callable, right_fn: Callable,
                       limits=None) -> "SharpFunction":
        m = grid.mid
        ones = np.ones(m + 1)
        left = np.asarray(left_fn(grid.nodes[:m + 1]), dtype=float) * ones
        right = np.asarray(right_fn(grid.nodes[m:]), dtype=float) * ones
        if limits is None:
            limits = (left[0], right[-1])
        return cls(grid, left, right, *limits)

    @classmethod
    def from_line(cls, f: LineFunction) -> "SharpFunction":
        m = f.grid.mid
        return cls(f.grid, f.samples[:m + 1], f.samples[m:], f.limit_neg, f.limit_pos)

    @property
    def value_minus(self) -> float:
        return float(self.left[-1])

    @property
    def value_plus(self) -> float:
        return float(self.right[0])

    @property
    def jump(self) -> float:
        return self.value_plus - self.value_minus

    def right_of_zero(self) -> np.ndarray:
        """``x -> f(x)`` on ``[0, L]`` (first entry ``f(0+)``)."""
        return self.right

    def mirrored_left(self) -> np.ndarray:
        """``x -> f(-x)`` on ``[0, L]`` (first entry ``f(0-)``)."""
        return self.left[::-1]

    def to_line(self, tol: float = EPS_ALG) -> LineFunction:
        """View a function continuous at 0 as a line function (value ``f(0+)``)."""
        if abs(self.jump) > tol:
            raise JumpAtZero(f"|f(0+) - f(0-)| = {abs(self.jump):.3e} exceeds {tol:g}")
        values = np.concatenate([self.left[:-1], self.right])
        return LineFunction(self.grid, values, self.limit_neg, self.limit_pos)

    def check_opposite_values(self, tol: float = EPS_ALG):
        gap = abs(self.value_minus + self.value_plus)
        if gap > tol:
            raise OppositeValuesViolated(f"|f(0-) + f(0+)| = {gap:.3e} exceeds {tol:g}")

    def check_continuous(self, tol: float = EPS_ALG):
        if abs(self.jump) > tol:
            raise JumpAtZero(f"|f(0+) - f(0-)| = {abs(self.jump):.3e} exceeds {tol:g}")

    def _combine(self, other, op) -> "SharpFunction":
        if isinstance(other, SharpFunction):
            _check_same(self.grid, other.grid)
            return SharpFunction(
                self.grid,
                op(self.left, other.left),
                op(self.right, other.right),
                op(self.limit_neg, other.limit_neg),
                op(self.limit_pos, other.limit_pos),
            )
        return NotImplemented

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, c):
        if isinstance(c, (LineFunction, SharpFunction, FunctionPair)):
            return NotImplemented
        c = float(c)
        return SharpFunction(self.grid, c * self.left, c * self.right,
                             c * self.limit_neg, c * self.limit_pos)

    __rmul__ = __mul__

    def __neg__(self):
        return -1.0 * self


@dataclass(frozen=True, eq=False)
class FunctionPair:
    """Element of the product space (C[-inf, inf])^2."""

    first: LineFunction
    second: LineFunction

    def __post_init__(self):
        _check_same(self.first.grid, self.second.grid)

    @property
    def grid(self) -> Grid:
        return self.first.grid

    @classmethod
    def zeros(cls, grid: Grid) -> "FunctionPair":
        z = LineFunction.zeros(grid)
        return cls(z, z)

    def __add__(self, other):
        if not isinstance(other, FunctionPair):
            return NotImplemented
        return FunctionPair(self.first + other.first, self.second + other.second)

    def __sub__(self, other):
        if not isinstance(other, FunctionPair):
            return NotImplemented
        return FunctionPair(self.first - other.first, self.second - other.second)

    def __mul__(self, c):
        if isinstance(c, (LineFunction, SharpFunction, FunctionPair)):
            return NotImplemented
        return FunctionPair(c * self.first, c * self.second)

    __rmul__ = __mul__

    def __neg__(self):
        return FunctionPair(-self.first, -self.second)


AnyFunction = Union[LineFunction, SharpFunction, FunctionPair]


@dataclass(frozen=True)
class MembraneParams:
    """Permeabilities ``alpha`` (left to right) and ``beta`` (right to left)."""

    alpha: float
    beta: float
    total: float = field(init=False, repr=False)
    gamma: float = field(init=False, repr=False)

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if a < 0 or b < 0 or not (a + b > 0) or not math.isfinite(a + b):
            raise DegenerateMembrane(f"need alpha, beta >= 0 and alpha + beta > 0, got {a}, {b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "total", a + b)
        object.__setattr__(self, "gamma", math.sqrt(2.0 * (a * a + b * b)))

    def scaled(self, n: float) -> "MembraneParams":
        return MembraneParams(n * self.alpha, n * self.beta)

    def swapped(self) -> "MembraneParams":
        return MembraneParams(self.beta, self.alpha)


# ---------------------------------------------------------------------------
# structural operations


def reflect(f):
    """``x -> f(-x)``; limits are swapped."""
    if isinstance(f, LineFunction):
        return LineFunction(f.grid, f.samples[::-1], f.limit_pos, f.limit_neg)
    if isinstance(f, SharpFunction):
        return SharpFunction(f.grid, f.right[::-1], f.left[::-1], f.limit_pos, f.limit_neg)
    raise TypeError(f"cannot reflect {type(f).__name__}")


def parity_parts(f: LineFunction) -> tuple[LineFunction, LineFunction]:
    """Even and odd parts ``(f + f^T)/2`` and ``(f - f^T)/2``.

    Symmetry of each part is exact; ``even + odd`` reproduces ``f`` up to
    rounding of the two half-sums.
    """
    r = reflect(f)
    return 0.5 * (f + r), 0.5 * (f - r)


def even_part(f: LineFunction) -> LineFunction:
    return 0.5 * (f + reflect(f))


def odd_part(f: LineFunction) -> LineFunction:
    return 0.5 * (f - reflect(f))


def restrict(p: FunctionPair) -> SharpFunction:
    """Left branch from ``p.first``, right branch from ``p.second``."""
    m = p.grid.mid
    return SharpFunction(p.grid, p.first.samples[:m + 1], p.second.samples[m:],
                         p.first.limit_neg, p.second.limit_pos)


def matrix_apply(M, p: FunctionPair) -> FunctionPair:
    """``(m11 f1^T + m12 f2^T, m21 f1 + m22 f2)``."""
    (m11, m12), (m21, m22) = np.asarray(M, dtype=float)
    first = m11 * reflect(p.first) + m12 * reflect(p.second)
    second = m21 * p.first + m22 * p.second
    return FunctionPair(first, second)


def matrix_solve(M, p: FunctionPair) -> FunctionPair:
    """Inverse of :func:`matrix_apply` for an invertible ``M``."""
    A = np.linalg.inv(np.asarray(M, dtype=float))
    u = reflect(p.first)
    return FunctionPair(A[0, 0] * u + A[0, 1] * p.second, A[1, 0] * u + A[1, 1] * p.second)


def snapping_matrix(params: MembraneParams) -> np.ndarray:
    """``(1/(alpha-beta)) [[beta, -1], [alpha, -1]]``; requires alpha != beta."""
    a, b = params.alpha, params.beta
    if a == b:
        raise ValueError("snapping_matrix is undefined for alpha == beta; use SHARP_MATRIX")
    return np.array([[b, -1.0], [a, -1.0]]) / (a - b)


SHARP_MATRIX = np.array([[-0.5, 0.5], [0.5, 0.5]])


def flip_J(f: SharpFunction, tol: float = EPS_ALG) -> LineFunction:
    """Isometry from opposite-value functions onto C[-inf, inf]."""
    f.check_opposite_values(tol)
    values = np.concatenate([-f.left[:-1], f.right])
    return LineFunction(f.grid, values, -f.limit_neg, f.limit_pos)


def flip_J_inv(g: LineFunction) -> SharpFunction:
    m = g.grid.mid
    return SharpFunction(g.grid, -g.samples[:m + 1], g.samples[m:], -g.limit_neg, g.limit_pos)


def flip_Jpair(p: FunctionPair) -> FunctionPair:
    return FunctionPair(-p.first, p.second)


# ---------------------------------------------------------------------------
# linear algebra


def sup_norm(f) -> float:
    """Sup norm over nodes and stored limits (pairs: max over components)."""
    if isinstance(f, FunctionPair):
        return max(sup_norm(f.first), sup_norm(f.second))
    if isinstance(f, LineFunction):
        parts = (f.samples, [f.limit_neg, f.limit_pos])
    elif isinstance(f, SharpFunction):
        parts = (f.left, f.right, [f.limit_neg, f.limit_pos])
    else:
        raise TypeError(f"no sup norm for {type(f).__name__}")
    return float(np.max(np.abs(np.concatenate([np.asarray(q, dtype=float) for q in parts]))))


def add(x, y):
    return x + y


def scale(c: float, x):
    return c * x


def axpy(a: float, x, y):
    """``a*x + y``."""
    return a * x + y

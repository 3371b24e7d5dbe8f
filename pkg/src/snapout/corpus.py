"""Named and randomized test functions.

Named functions are addressed by strings such as ``"gauss"``, ``"step(-1,2)"``
or ``"const(0.5)"``. Random generators take a ``numpy.random.Generator`` so
that runs are reproducible from a seed.

Functions that keep changing out to ``+-L`` (``atan``, the random ones) use
their end samples as limits, i.e. they are treated as constant beyond the grid.
"""

from __future__ import annotations

import re

import numpy as np

from .function_space import (
    FunctionPair,
    Grid,
    LineFunction,
    MembraneParams,
    SharpFunction,
)

_CALL = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$")


def _const(c):
    return lambda x: np.full_like(x, c)


def _named_sharp(grid: Grid, name: str, args: list[float]) -> SharpFunction:
    if name == "gauss":
        fn = lambda x: np.exp(-x * x)
        return SharpFunction.from_callables(grid, fn, fn, limits=(0.0, 0.0))
    if name == "expabs":
        fn = lambda x: np.exp(-np.abs(x))
        return SharpFunction.from_callables(grid, fn, fn, limits=(0.0, 0.0))
    if name == "atan":
        return SharpFunction.from_callables(grid, np.arctan, np.arctan)
    if name == "step":
        jl, jr = args if args else (0.0, 1.0)
        return SharpFunction.from_callables(grid, _const(jl), _const(jr), limits=(jl, jr))
    if name == "odd_step":
        return SharpFunction.from_callables(grid, _const(-1.0), _const(1.0), limits=(-1.0, 1.0))
    if name == "const":
        (c,) = args if args else (1.0,)
        return SharpFunction.from_callables(grid, _const(c), _const(c), limits=(c, c))
    if name == "ov_gauss":
        # opposite values at 0 with different shapes on each side
        return SharpFunction.from_callables(
            grid, lambda x: -np.exp(-x * x), lambda x: np.exp(-x * x / 2), limits=(0.0, 0.0)
        )
    if name == "odd_rational":
        fn = lambda x: x / (1 + np.abs(x))
        return SharpFunction.from_callables(grid, fn, fn)
    raise KeyError(name)


NAMED = ("gauss", "step(jL,jR)", "expabs", "atan", "odd_step", "const(c)",
         "ov_gauss", "odd_rational")


def named_function(grid: Grid, text: str) -> SharpFunction:
    """Look up a named corpus function, e.g. ``"step(-1,1)"``."""
    m = _CALL.match(text)
    if not m:
        raise ValueError(f"malformed corpus name {text!r}")
    name, raw = m.group(1), m.group(2)
    try:
        args = [float(t) for t in raw.split(",")] if raw and raw.strip() else []
    except ValueError:
        raise ValueError(f"non-numeric arguments in {text!r}") from None
    expected = {"step": (0, 2), "const": (0, 1)}.get(name, (0,))
    if len(args) not in expected:
        raise ValueError(f"wrong number of arguments in {text!r}")
    try:
        return _named_sharp(grid, name, args)
    except KeyError:
        raise ValueError(f"unknown corpus function {name!r}; known: {', '.join(NAMED)}") from None


# ---------------------------------------------------------------------------
# random generators


def _random_profile(rng: np.random.Generator, x: np.ndarray) -> np.ndarray:
    values = np.full_like(x, rng.uniform(-1, 1))
    for _ in range(3):
        amp, mu, sigma = rng.uniform(-1, 1), rng.uniform(-5, 5), rng.uniform(0.5, 3)
        values += amp * np.exp(-0.5 * ((x - mu) / sigma) ** 2)
    b, mu, w = rng.uniform(-1, 1), rng.uniform(-3, 3), rng.uniform(0.5, 4)
    return values + b * np.tanh((x - mu) / w)


def random_line(rng: np.random.Generator, grid: Grid) -> LineFunction:
    """Smooth random function: a constant, three bumps and a sigmoid."""
    values = _random_profile(rng, grid.nodes)
    return LineFunction(grid, values, values[0], values[-1])


def random_sharp(rng: np.random.Generator, grid: Grid) -> SharpFunction:
    """Independent smooth branches, so the jump at 0 is generic."""
    left, right = random_line(rng, grid), random_line(rng, grid)
    m = grid.mid
    return SharpFunction(grid, left.samples[:m + 1], right.samples[m:],
                         left.limit_neg, right.limit_pos)


def random_continuous(rng: np.random.Generator, grid: Grid) -> SharpFunction:
    return SharpFunction.from_line(random_line(rng, grid))


def random_opposite(rng: np.random.Generator, grid: Grid) -> SharpFunction:
    """Random function with ``f(0-) = -f(0+)`` exactly."""
    f = random_sharp(rng, grid)
    shift = f.value_minus + f.value_plus
    left = f.left - shift
    left[-1] = -f.value_plus
    return SharpFunction(grid, left, f.right, f.limit_neg - shift, f.limit_pos)


def random_pair(rng: np.random.Generator, grid: Grid) -> FunctionPair:
    return FunctionPair(random_line(rng, grid), random_line(rng, grid))


def random_params(rng: np.random.Generator, low_total: float = 0.5,
                  high: float = 3.0) -> MembraneParams:
    """Random permeabilities with occasional ties and zeros."""
    roll = rng.uniform()
    if roll < 0.15:
        a = rng.uniform(low_total / 2, high)
        return MembraneParams(a, a)
    if roll < 0.3:
        a = rng.uniform(low_total, high)
        return MembraneParams(a, 0.0) if rng.uniform() < 0.5 else MembraneParams(0.0, a)
    while True:
        a, b = rng.uniform(0, high, size=2)
        if a + b >= low_total:
            return MembraneParams(a, b)

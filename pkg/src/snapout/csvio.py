"""CSV exchange for sampled functions.

Layouts (values written with 17 significant digits, so reading back is exact):

* line function: header ``x,value``; a ``-inf`` row first and a ``+inf`` row last
  carry the limits.
* sharp function: header ``x,side,value`` with ``side`` in ``{L, R}``; the
  node ``x = 0`` appears once per side.
* pair: header ``x,f1,f2``, with the same ``-inf``/``+inf`` limit rows.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import TextIO

import numpy as np

from .function_space import FunctionPair, Grid, LineFunction, SharpFunction


def _fmt(v: float) -> str:
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "+inf" if v > 0 else "-inf"
    return format(float(v), ".17g")


def _grid_from_nodes(x: np.ndarray) -> Grid:
    if x.size < 3 or x.size % 2 == 0:
        raise ValueError(f"expected an odd number (>= 3) of nodes, got {x.size}")
    half = float(x[-1])
    if not math.isclose(-float(x[0]), half, rel_tol=1e-12):
        raise ValueError("nodes are not symmetric about 0")
    grid = Grid(half, x.size)
    if not np.allclose(grid.nodes, x, rtol=0, atol=1e-9 * half):
        raise ValueError("nodes are not uniformly spaced")
    return grid


def _rows(stream: TextIO, header: list[str]) -> list[list[str]]:
    reader = csv.reader(line for line in stream if line.strip())
    try:
        first = [c.strip() for c in next(reader)]
    except StopIteration:
        raise ValueError("empty CSV input") from None
    if first != header:
        raise ValueError(f"expected header {','.join(header)!r}, got {','.join(first)!r}")
    rows = [[c.strip() for c in r] for r in reader]
    for r in rows:
        if len(r) != len(header):
            raise ValueError(f"malformed row {r!r}")
    return rows


def _floats(col) -> np.ndarray:
    try:
        return np.array([float(c) for c in col])
    except ValueError as exc:
        raise ValueError(f"non-numeric value: {exc}") from None


def _split_limits(rows):
    if len(rows) < 5 or rows[0][0] != "-inf" or rows[-1][0] not in ("+inf", "inf"):
        raise ValueError("first and last rows must be the -inf and +inf limits")
    return rows[0], rows[1:-1], rows[-1]


def write_line(f: LineFunction, stream: TextIO):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["x", "value"])
    w.writerow(["-inf", _fmt(f.limit_neg)])
    for x, v in zip(f.grid.nodes, f.samples):
        w.writerow([_fmt(x), _fmt(v)])
    w.writerow(["+inf", _fmt(f.limit_pos)])


def read_line(stream: TextIO) -> LineFunction:
    lo, body, hi = _split_limits(_rows(stream, ["x", "value"]))
    x = _floats(r[0] for r in body)
    grid = _grid_from_nodes(x)
    return LineFunction(grid, _floats(r[1] for r in body), float(lo[1]), float(hi[1]))


def write_sharp(f: SharpFunction, stream: TextIO):
    m = f.grid.mid
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["x", "side", "value"])
    w.writerow(["-inf", "L", _fmt(f.limit_neg)])
    for x, v in zip(f.grid.nodes[:m + 1], f.left):
        w.writerow([_fmt(x), "L", _fmt(v)])
    for x, v in zip(f.grid.nodes[m:], f.right):
        w.writerow([_fmt(x), "R", _fmt(v)])
    w.writerow(["+inf", "R", _fmt(f.limit_pos)])


def read_sharp(stream: TextIO) -> SharpFunction:
    rows = _rows(stream, ["x", "side", "value"])
    if rows and rows[0][0] == "-inf":
        lo, rows = rows[0], rows[1:]
    else:
        lo = None
    if rows and rows[-1][0] in ("+inf", "inf"):
        hi, rows = rows[-1], rows[:-1]
    else:
        hi = None
    left = [r for r in rows if r[1] == "L"]
    right = [r for r in rows if r[1] == "R"]
    if len(left) + len(right) != len(rows):
        raise ValueError("side must be L or R")
    if len(left) != len(right) or not left:
        raise ValueError("left and right branches must have the same number of nodes")
    xl, xr = _floats(r[0] for r in left), _floats(r[0] for r in right)
    if xl[-1] != 0.0 or xr[0] != 0.0:
        raise ValueError("both branches must include the node x = 0")
    grid = _grid_from_nodes(np.concatenate([xl[:-1], xr]))
    vl, vr = _floats(r[2] for r in left), _floats(r[2] for r in right)
    limit_neg = float(lo[2]) if lo else vl[0]
    limit_pos = float(hi[2]) if hi else vr[-1]
    return SharpFunction(grid, vl, vr, limit_neg, limit_pos)


def write_pair(p: FunctionPair, stream: TextIO):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["x", "f1", "f2"])
    w.writerow(["-inf", _fmt(p.first.limit_neg), _fmt(p.second.limit_neg)])
    for x, a, b in zip(p.grid.nodes, p.first.samples, p.second.samples):
        w.writerow([_fmt(x), _fmt(a), _fmt(b)])
    w.writerow(["+inf", _fmt(p.first.limit_pos), _fmt(p.second.limit_pos)])


def read_pair(stream: TextIO) -> FunctionPair:
    lo, body, hi = _split_limits(_rows(stream, ["x", "f1", "f2"]))
    grid = _grid_from_nodes(_floats(r[0] for r in body))
    first = LineFunction(grid, _floats(r[1] for r in body), float(lo[1]), float(hi[1]))
    second = LineFunction(grid, _floats(r[2] for r in body), float(lo[2]), float(hi[2]))
    return FunctionPair(first, second)


def write_table(header: list[str], rows, stream: TextIO):
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in r])


_WRITERS = {LineFunction: write_line, SharpFunction: write_sharp, FunctionPair: write_pair}


def dumps(obj) -> str:
    buf = io.StringIO()
    _WRITERS[type(obj)](obj, buf)
    return buf.getvalue()


def sniff_header(path: Path) -> str:
    with open(path, newline="") as fh:
        return fh.readline().strip().replace(" ", "")


def load_function(path: Path):
    """Read a line, sharp or pair CSV, chosen by its header."""
    header = sniff_header(path)
    reader = {"x,value": read_line, "x,side,value": read_sharp, "x,f1,f2": read_pair}.get(header)
    if reader is None:
        raise ValueError(f"{path}: unrecognized header {header!r}")
    with open(path, newline="") as fh:
        return reader(fh)

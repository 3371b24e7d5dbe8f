import io
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from snapout import csvio
from snapout.corpus import random_line, random_pair, random_sharp
from snapout.function_space import Grid, LineFunction

GRID = Grid(2.0, 41)


def round_trip(obj, writer, reader):
    buf = io.StringIO()
    writer(obj, buf)
    buf.seek(0)
    return reader(buf)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_line_round_trip_bit_exact(seed):
    f = random_line(np.random.default_rng(seed), GRID)
    back = round_trip(f, csvio.write_line, csvio.read_line)
    np.testing.assert_array_equal(back.samples, f.samples)
    assert (back.limit_neg, back.limit_pos) == (f.limit_neg, f.limit_pos)
    assert back.grid.matches(GRID)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_sharp_round_trip_bit_exact(seed):
    f = random_sharp(np.random.default_rng(seed), GRID)
    back = round_trip(f, csvio.write_sharp, csvio.read_sharp)
    np.testing.assert_array_equal(back.left, f.left)
    np.testing.assert_array_equal(back.right, f.right)


def test_pair_round_trip(rng):
    p = random_pair(rng, GRID)
    back = round_trip(p, csvio.write_pair, csvio.read_pair)
    np.testing.assert_array_equal(back.first.samples, p.first.samples)
    np.testing.assert_array_equal(back.second.samples, p.second.samples)


def test_nan_limits_survive():
    f = LineFunction(GRID, np.exp(GRID.nodes), math.nan, 2.0)
    back = round_trip(f, csvio.write_line, csvio.read_line)
    assert math.isnan(back.limit_neg) and back.limit_pos == 2.0


def test_sharp_without_limit_rows_uses_end_samples():
    text = "x,side,value\n-1,L,3\n0,L,4\n0,R,5\n1,R,6\n"
    f = csvio.read_sharp(io.StringIO(text))
    assert (f.limit_neg, f.limit_pos) == (3.0, 6.0)
    assert f.jump == 1.0


@pytest.mark.parametrize("text,message", [
    ("", "empty"),
    ("x,val\n", "header"),
    ("x,value\n-inf,0\n-1,0\n0,0\n1,0\n+inf,0\n", None),
    ("x,value\n-inf,0\n-1,0\n0,zz\n1,0\n+inf,0\n", "non-numeric"),
    ("x,value\n-inf,0\n-1,0\n0,0\n2,0\n+inf,0\n", "symmetric"),
    ("x,value\n-inf,0\n-2,0\n-1.5,0\n0,0\n1.5,0\n2,0\n+inf,0\n", "uniformly"),
    ("x,value\n-inf,0\n-1,0\n-0.5,0\n0.5,0\n1,0\n+inf,0\n", "odd number"),
])
def test_line_reader_validation(text, message):
    if message is None:
        assert csvio.read_line(io.StringIO(text)).grid.n_points == 3
        return
    with pytest.raises(ValueError, match=message):
        csvio.read_line(io.StringIO(text))


def test_load_function_dispatches_on_header(tmp_path, rng):
    for obj in (random_line(rng, GRID), random_sharp(rng, GRID), random_pair(rng, GRID)):
        path = tmp_path / "f.csv"
        path.write_text(csvio.dumps(obj))
        assert type(csvio.load_function(path)) is type(obj)
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError, match="unrecognized header"):
        csvio.load_function(path)

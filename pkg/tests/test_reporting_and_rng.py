import itertools
import math

import numpy as np
import pytest

from confheat.harmonic import elementary_symmetric
from confheat.kernel import HeatKernelParams, density, density_at_distance
from confheat.reporting import format_cell, jsonable, render_csv, render_json
from confheat.rng import chunk_sizes, map_chunks, substream


def test_elementary_symmetric_against_enumeration():
    rng = substream(3, 3)
    vals = rng.uniform(-1.5, 1.5, size=7)
    e = elementary_symmetric(vals, 4)
    for k in range(5):
        direct = sum(math.prod(c) for c in itertools.combinations(vals, k))
        assert e[k] == pytest.approx(direct, rel=1e-12, abs=1e-12)
    batch = elementary_symmetric(np.stack([vals, 2 * vals]), 3)
    assert batch.shape == (2, 4)
    assert batch[1, 2] == pytest.approx(4 * e[2], rel=1e-12)


def test_density_at_distance_matches_density():
    p = HeatKernelParams(3, 0.7)
    x = np.array([0.3, -0.2, 1.0])
    y = np.array([-0.5, 0.4, 0.1])
    r = float(np.linalg.norm(x - y))
    assert density_at_distance(p, r) == pytest.approx(density(p, x, y), rel=1e-14)


def test_chunk_sizes():
    assert chunk_sizes(10, 4) == [4, 4, 2]
    assert chunk_sizes(8, 4) == [4, 4]
    assert chunk_sizes(0, 4) == []
    assert chunk_sizes(3, 10) == [3]
    with pytest.raises(ValueError):
        chunk_sizes(-1, 4)
    with pytest.raises(ValueError):
        chunk_sizes(5, 0)


def test_map_chunks_order_stable_under_threads():
    def worker(i):
        return i * i

    assert map_chunks(worker, 7, threads=1) == map_chunks(worker, 7, threads=4)
    assert map_chunks(worker, 0, threads=4) == []


def test_substream_independence_and_determinism():
    a = substream(5, 1, 2).standard_normal(4)
    b = substream(5, 1, 2).standard_normal(4)
    c = substream(5, 1, 3).standard_normal(4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert not np.array_equal(substream(6, 1, 2).standard_normal(4), a)


def test_format_cell_and_jsonable_nonfinite():
    assert format_cell(math.inf) == "inf"
    assert format_cell(-math.inf) == "-inf"
    assert format_cell(math.nan) == "nan"
    assert format_cell(0.1) == "0.1"
    assert format_cell(None) == ""
    out = jsonable({"a": math.inf, "b": [np.float64(1.5), np.int64(2)], "c": np.arange(2)})
    assert out == {"a": "inf", "b": [1.5, 2], "c": [0, 1]}


def test_render_csv_rfc4180_quoting():
    rows = [{"measurement": "m,1", "value": 1.25, "note": 'says "hi", twice'}]
    text = render_csv("exp", rows, "pass")
    lines = text.split("\r\n")
    assert lines[0] == "experiment,measurement,value,std_error,bound,verdict,note"
    assert lines[1] == 'exp,"m,1",1.25,,,pass,"says ""hi"", twice"'


def test_render_json_sorted_and_stable():
    a = render_json({"b": 1, "a": {"z": 2.0, "y": math.inf}})
    b = render_json({"a": {"y": math.inf, "z": 2.0}, "b": 1})
    assert a == b
    assert a.index('"a"') < a.index('"b"')

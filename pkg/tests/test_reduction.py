import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apcp.reduction import (
    Moments,
    StreamingMoments,
    StreamingSums,
    block_moments,
    merge_moments,
)


def two_pass(values):
    """Independent oracle: fsum-based naive mean, then naive population variance."""
    values = [float(v) for v in values]
    n = len(values)
    mean = math.fsum(values) / n
    var = math.fsum((v - mean) ** 2 for v in values) / n
    return mean, var


def test_single_block_matches_two_pass(rng):
    x = rng.normal(size=(1, 1000))
    m = block_moments(x)
    mean, var = two_pass(x[0])
    assert m.count == 1000
    assert abs(m.mean[0] - mean) < 1e-12
    assert abs(m.variance[0] - var) < 1e-12


def test_chunked_stream_matches_two_pass(rng):
    x = rng.normal(scale=0.5, size=50_000)
    acc = StreamingMoments(1)
    for start in range(0, x.size, 777):
        acc.update(x[None, start : start + 777])
    mean, var = two_pass(x)
    assert abs(acc.result.mean[0] - mean) < 1e-12
    assert abs(acc.result.variance[0] - var) < 1e-12


def test_chunking_is_immaterial(rng):
    x = rng.normal(size=(3, 10_000))
    results = []
    for chunk in (1, 7, 100, 10_000):
        acc = StreamingMoments(3)
        for start in range(0, x.shape[1], chunk):
            acc.update(x[:, start : start + chunk])
        results.append(acc.result)
    for r in results[1:]:
        assert np.allclose(r.mean, results[0].mean, atol=1e-13)
        assert np.allclose(r.variance, results[0].variance, atol=1e-13)
        assert r.count == results[0].count


def test_merge_equals_concatenation(rng):
    a = rng.normal(size=(2, 400))
    b = rng.normal(loc=3.0, size=(2, 73))
    merged = merge_moments(block_moments(a), block_moments(b))
    whole = block_moments(np.concatenate([a, b], axis=1))
    assert merged.count == whole.count
    assert np.allclose(merged.mean, whole.mean, atol=1e-13)
    assert np.allclose(merged.m2, whole.m2, atol=1e-10)


def test_merge_with_empty_is_identity(rng):
    x = rng.normal(size=(2, 10))
    m = block_moments(x)
    assert merge_moments(m, Moments.empty(2)) is m
    assert merge_moments(Moments.empty(2), m) is m


def test_float32_blocks_accumulate_in_float64(rng):
    x32 = rng.normal(size=30_000).astype(np.float32)
    acc = StreamingMoments(1)
    for start in range(0, x32.size, 999):
        acc.update(x32[None, start : start + 999])
    mean, var = two_pass(x32)  # oracle over the same float32 values
    assert abs(acc.result.mean[0] - mean) < 1e-9
    assert abs(acc.result.variance[0] - var) < 1e-9


def test_variance_of_empty_stream_raises():
    with pytest.raises(ValueError):
        _ = Moments.empty(1).variance


def test_streaming_sums_mean(rng):
    x = rng.normal(size=(2, 3_000))
    s = StreamingSums(2)
    for start in range(0, x.shape[1], 170):
        s.update(x[:, start : start + 170])
    assert np.allclose(s.mean, x.mean(axis=1), atol=1e-13)
    assert s.count == 3_000


@settings(deadline=None, max_examples=50)
@given(
    st.lists(st.floats(min_value=-1e3, max_value=1e3), min_size=1, max_size=300),
    st.integers(min_value=1, max_value=64),
)
def test_streaming_matches_two_pass_property(values, chunk):
    x = np.array(values)
    acc = StreamingMoments(1)
    for start in range(0, x.size, chunk):
        acc.update(x[None, start : start + chunk])
    mean, var = two_pass(x)
    assert acc.result.count == x.size
    assert abs(acc.result.mean[0] - mean) < 1e-9
    assert abs(acc.result.variance[0] - var) < 1e-9
    assert acc.result.variance[0] >= -1e-15

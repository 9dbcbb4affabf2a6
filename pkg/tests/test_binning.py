import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apcp.binning import (
    MAX_BINS,
    BinRule,
    BrushSet,
    bin_count,
    bin_indices,
    build_pair_histogram,
    member_histograms,
)

from test_analytics import make_ns


def oracle_histogram(matrix, pair, k_left, k_right, brush_intervals):
    """Naive per-point double loop: filter on every brushed variable, then bin."""
    counts = [[0] * k_right for _ in range(k_left)]
    active = 0
    for row in matrix:
        ok = True
        for var, (lo, hi) in brush_intervals.items():
            if not (lo <= row[var] <= hi):
                ok = False
                break
        if not ok:
            continue
        active += 1
        bl = min(int(row[pair] * k_left), k_left - 1)
        br = min(int(row[pair + 1] * k_right), k_right - 1)
        counts[bl][br] += 1
    return np.array(counts), active


# ---- bin_count ------------------------------------------------------------------

def test_sturges_100_is_8():
    assert bin_count(BinRule("sturges"), np.arange(100)) == 8


def test_fd_hand_example():
    # values 1..8: type-7 quartiles 2.75/6.25, IQR 3.5, h = 3.5, k = ceil(7/3.5) = 2
    assert bin_count(BinRule("fd"), np.arange(1, 9)) == 2


@pytest.mark.parametrize("kind", ["sturges", "doane", "scott", "fd"])
def test_constant_data_falls_back_to_one(kind):
    assert bin_count(BinRule(kind), np.full(50, 3.25)) == 1


def test_fixed_rule():
    assert bin_count(BinRule("fixed", 32), np.arange(10)) == 32
    assert bin_count(BinRule("fixed", 10_000), np.arange(10)) == MAX_BINS


def test_scott_matches_hand_computation(rng):
    values = rng.normal(size=1000)
    sigma = values.std()
    h = 3.49 * sigma / np.cbrt(1000)
    expected = int(np.ceil((values.max() - values.min()) / h))
    assert bin_count(BinRule("scott"), values) == expected


def test_doane_matches_hand_computation(rng):
    values = rng.gamma(2.0, size=500)
    n = values.size
    sigma = values.std()
    g1 = ((values - values.mean()) ** 3).mean() / sigma**3
    sigma_g1 = np.sqrt(6 * (n - 2) / ((n + 1) * (n + 3)))
    expected = int(np.ceil(1 + np.log2(n) + np.log2(1 + abs(g1) / sigma_g1)))
    assert bin_count(BinRule("doane"), values) == expected


def test_doane_tiny_n():
    assert bin_count(BinRule("doane"), np.array([1.0])) == 1  # constant fallback
    assert bin_count(BinRule("doane"), np.array([1.0, 2.0])) == 2  # ceil(1+log2 2)


def test_empty_values_rejected():
    with pytest.raises(ValueError):
        bin_count(BinRule("sturges"), np.array([]))


def test_rule_parsing():
    assert BinRule.parse("fd") == BinRule("fd")
    assert BinRule.parse("fixed:16") == BinRule("fixed", 16)
    assert BinRule.parse("24") == BinRule("fixed", 24)
    with pytest.raises(ValueError):
        BinRule.parse("bogus")
    with pytest.raises(ValueError):
        BinRule("fixed", 0)


@settings(deadline=None, max_examples=100)
@given(st.lists(st.floats(min_value=-1e6, max_value=1e6), min_size=1, max_size=200),
       st.sampled_from(["sturges", "doane", "scott", "fd"]))
def test_bin_count_always_in_range(values, kind):
    k = bin_count(BinRule(kind), np.array(values))
    assert 1 <= k <= MAX_BINS


# ---- bin indices / brush ----------------------------------------------------------

def test_bin_edges_half_open_final_closed():
    idx = bin_indices(np.array([0.0, 0.4999, 0.5, 0.9999, 1.0]), 2)
    assert list(idx) == [0, 0, 1, 1, 1]


def test_brush_validation():
    with pytest.raises(ValueError):
        BrushSet({0: (0.6, 0.4)})
    with pytest.raises(ValueError):
        BrushSet({0: (-0.1, 0.4)})
    b = BrushSet({1: (0.25, 0.75)})
    values = np.array([[0.0, 0.2], [0.0, 0.5], [0.0, 0.75], [0.0, 0.8]])
    assert list(b.active_mask(values)) == [False, True, True, False]


# ---- pair histograms ----------------------------------------------------------------

def test_conservation_without_brush(small_ns):
    hist = build_pair_histogram(small_ns, 0, 0)
    assert hist.total == small_ns.n_points


def test_single_point_histogram():
    # a single grid point makes both columns constant: one bin per axis
    values = np.array([[[0.3, 0.9]]])
    ns = make_ns(values)
    hist = build_pair_histogram(ns, 0, 0, rule=BinRule("fixed", 4))
    assert hist.total == 1
    assert len(hist.draw_order) == 1
    assert hist.cells() == [(0, 0, 1)]


def test_histogram_matches_oracle(rng):
    values = rng.random((1, 5000, 3))
    ns = make_ns(values)
    brush = BrushSet({0: (0.0, 0.5), 2: (0.25, 1.0)})
    for pair in (0, 1):
        for rule in (BinRule("fixed", 7), BinRule("sturges"), BinRule("fd")):
            hist = build_pair_histogram(ns, 0, pair, brush=brush, rule=rule)
            matrix = np.asarray(ns.values[0], dtype=np.float64)
            oracle_counts, active = oracle_histogram(
                matrix, pair, hist.bins_left, hist.bins_right, brush.intervals
            )
            assert np.array_equal(hist.counts, oracle_counts)
            assert hist.total == active


def test_uniform_half_brush(rng):
    values = rng.random((1, 20_000, 2))
    ns = make_ns(values)
    brush = BrushSet({0: (0.0, 0.5)})
    hist = build_pair_histogram(ns, 0, 0, brush=brush, rule=BinRule("fixed", 8))
    matrix = np.asarray(ns.values[0], dtype=np.float64)
    oracle_counts, active = oracle_histogram(matrix, 0, 8, 8, brush.intervals)
    assert hist.total == active
    assert abs(active - 10_000) < 500  # roughly half of a uniform column
    assert np.array_equal(hist.counts, oracle_counts)


def test_fully_brushed_out_yields_zero(small_ns):
    # brush that excludes everything: empty [0,0] on a variable with no zeros
    col = np.asarray(small_ns.values[0, :, 0])
    assert (col > 0).any()
    brush = BrushSet({0: (0.0, 0.0)}) if (col != 0).all() else BrushSet({0: (1.0, 1.0)})
    hist = build_pair_histogram(small_ns, 0, 0, brush=brush)
    assert hist.total == 0
    assert len(hist.draw_order) == 0


def test_draw_order_sorted_and_nonempty(rng):
    values = rng.random((1, 3000, 2))
    ns = make_ns(values)
    hist = build_pair_histogram(ns, 0, 0, rule=BinRule("fixed", 6))
    flat = hist.counts.ravel()
    counts_in_order = [flat[i] for i in hist.draw_order]
    assert all(c > 0 for c in counts_in_order)
    assert all(a <= b for a, b in zip(counts_in_order, counts_in_order[1:]))
    assert set(hist.draw_order) == set(np.flatnonzero(flat))
    # the largest band is drawn last (frontmost)
    assert counts_in_order[-1] == flat.max()


def test_brush_monotonicity(rng):
    values = rng.random((1, 4000, 3))
    ns = make_ns(values)
    wide = BrushSet({1: (0.1, 0.9)})
    narrow = BrushSet({1: (0.2, 0.8), 2: (0.0, 0.7)})
    for pair in (0, 1):
        h_wide = build_pair_histogram(ns, 0, pair, brush=wide, rule=BinRule("fixed", 5))
        h_narrow = build_pair_histogram(ns, 0, pair, brush=narrow, rule=BinRule("fixed", 5))
        assert (h_narrow.counts <= h_wide.counts).all()


def test_bins_do_not_change_under_brush(rng):
    # rules see the unbrushed member values, so bin geometry is stable
    values = rng.random((1, 2000, 2))
    ns = make_ns(values)
    free = build_pair_histogram(ns, 0, 0, rule=BinRule("fd"))
    brushed = build_pair_histogram(
        ns, 0, 0, brush=BrushSet({0: (0.4, 0.6)}), rule=BinRule("fd")
    )
    assert (free.bins_left, free.bins_right) == (brushed.bins_left, brushed.bins_right)


def test_member_histograms_share_active_count(small_ns, rng):
    brush = BrushSet({0: (0.2, 0.9)})
    histograms, active = member_histograms(small_ns, 1, brush=brush)
    assert len(histograms) == small_ns.n_pairs
    for h in histograms:
        assert h.total == active

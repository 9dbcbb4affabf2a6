"""Bin-count estimators, brushing, and per-pair 2D histograms.

Histograms cover one member's normalized values. Bins are uniform over the
full [0, 1] axis (so bands line up with the shared axes); the bin count per
axis comes from the selected rule applied to the member's unbrushed values,
and brushing then only filters which grid points are tallied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .analytics import NormalizedSlice
from .validation import check_index

MAX_BINS = 512
RULE_NAMES = ("sturges", "doane", "scott", "fd")


@dataclass(frozen=True)
class BinRule:
    """Either a named estimator or a fixed bin count."""

    kind: str
    k: int | None = None

    def __post_init__(self):
        if self.kind == "fixed":
            if self.k is None or self.k < 1:
                raise ValueError(f"fixed rule needs k >= 1, got {self.k}")
        elif self.kind not in RULE_NAMES:
            raise ValueError(f"unknown bin rule {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "BinRule":
        """Parse 'sturges' | 'doane' | 'scott' | 'fd' | 'fixed:K' | 'K'."""
        text = text.strip().lower()
        if text in RULE_NAMES:
            return cls(text)
        if text.startswith("fixed:"):
            return cls("fixed", int(text.split(":", 1)[1]))
        if text.isdigit():
            return cls("fixed", int(text))
        raise ValueError(f"cannot parse bin rule {text!r}")

    def __str__(self) -> str:
        return f"fixed:{self.k}" if self.kind == "fixed" else self.kind


DEFAULT_RULE = BinRule("fixed", 32)


def _clamp(k: float) -> int:
    if not math.isfinite(k):
        return MAX_BINS
    return int(min(max(math.ceil(k), 1), MAX_BINS))


def bin_count(rule: BinRule, values) -> int:
    """Number of bins for one variable's values under ``rule``.

    Any rule sees constant data as a single bin; width-based rules also fall
    back to k=1 on zero sigma/IQR. Results clamp to [1, 512].
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    n = values.size
    if n == 0:
        raise ValueError("bin_count needs at least one value")
    span = float(values.max() - values.min())
    if span == 0.0:
        return 1
    if rule.kind == "fixed":
        return _clamp(rule.k)
    if rule.kind == "sturges":
        return _clamp(math.ceil(math.log2(n)) + 1)
    if rule.kind == "doane":
        sigma = float(values.std())
        if sigma == 0.0 or sigma**3 == 0.0:  # cube may underflow
            return 1
        if n < 3:
            return _clamp(1 + math.log2(n))
        dev = values - values.mean()
        g1 = float((dev**3).mean()) / sigma**3
        sigma_g1 = math.sqrt(6.0 * (n - 2) / ((n + 1) * (n + 3)))
        return _clamp(1 + math.log2(n) + math.log2(1 + abs(g1) / sigma_g1))
    if rule.kind == "scott":
        sigma = float(values.std())
        if sigma == 0.0:
            return 1
        h = 3.49 * sigma / float(np.cbrt(n))
        return _clamp(span / h) if h > 0.0 else MAX_BINS
    if rule.kind == "fd":
        q25, q75 = np.percentile(values, [25.0, 75.0])
        iqr = float(q75 - q25)
        if iqr == 0.0:
            return 1
        h = 2.0 * iqr / float(np.cbrt(n))
        return _clamp(span / h) if h > 0.0 else MAX_BINS
    raise ValueError(f"unknown bin rule {rule.kind!r}")


@dataclass(frozen=True)
class BrushSet:
    """Optional normalized [lo, hi] interval per variable index; conjunctive."""

    intervals: Mapping[int, tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for var, (lo, hi) in dict(self.intervals).items():
            lo, hi = float(lo), float(hi)
            if not (0.0 <= lo <= hi <= 1.0):
                raise ValueError(
                    f"brush interval for variable {var} must satisfy 0 <= lo <= hi <= 1, "
                    f"got [{lo}, {hi}]"
                )
            clean[int(var)] = (lo, hi)
        object.__setattr__(self, "intervals", clean)

    def active_mask(self, values: np.ndarray) -> np.ndarray:
        """Boolean mask of rows whose every brushed variable is in range."""
        mask = np.ones(values.shape[0], dtype=bool)
        for var, (lo, hi) in self.intervals.items():
            col = values[:, var]
            mask &= (col >= lo) & (col <= hi)
        return mask


def bin_indices(values: np.ndarray, k: int) -> np.ndarray:
    """Half-open uniform bins over [0, 1]; the last bin is closed at 1."""
    idx = np.floor(values * k).astype(np.int64)
    return np.clip(idx, 0, k - 1)


@dataclass(frozen=True)
class PairHistogram:
    """2D counts of active grid points for one adjacent-axis pair."""

    pair: int
    bins_left: int
    bins_right: int
    counts: np.ndarray        # (bins_left, bins_right) int64
    draw_order: np.ndarray    # flat indices of non-empty cells, count ascending

    def __post_init__(self):
        self.counts.setflags(write=False)
        self.draw_order.setflags(write=False)

    @property
    def edges_left(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.bins_left + 1)

    @property
    def edges_right(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.bins_right + 1)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def cells(self) -> list[tuple[int, int, int]]:
        """(left bin, right bin, count) triples in draw order (largest last)."""
        flat = self.counts.ravel()
        return [
            (int(i // self.bins_right), int(i % self.bins_right), int(flat[i]))
            for i in self.draw_order
        ]


def build_pair_histogram(
    ns: NormalizedSlice,
    member: int,
    pair: int,
    brush: BrushSet | None = None,
    rule: BinRule = DEFAULT_RULE,
) -> PairHistogram:
    """Histogram the member's active points into (bin_j, bin_j+1) cells.

    A point is active iff every brushed variable interval (across ALL
    variables, not just this pair) contains its value. A fully brushed-out
    selection yields all-zero counts, not an error.
    """
    member = check_index(member, ns.n_members, "member")
    pair = check_index(pair, ns.n_pairs, "pair")
    matrix = ns.values[member]
    k_left = bin_count(rule, matrix[:, pair])
    k_right = bin_count(rule, matrix[:, pair + 1])
    mask = brush.active_mask(matrix) if brush is not None else None
    active = matrix if mask is None else matrix[mask]
    il = bin_indices(np.asarray(active[:, pair], dtype=np.float64), k_left)
    ir = bin_indices(np.asarray(active[:, pair + 1], dtype=np.float64), k_right)
    flat = np.bincount(il * k_right + ir, minlength=k_left * k_right)
    counts = flat.reshape(k_left, k_right).astype(np.int64)
    nonempty = np.flatnonzero(flat)
    order = nonempty[np.argsort(flat[nonempty], kind="stable")]
    return PairHistogram(
        pair=pair,
        bins_left=k_left,
        bins_right=k_right,
        counts=counts,
        draw_order=order,
    )


def member_histograms(
    ns: NormalizedSlice,
    member: int,
    brush: BrushSet | None = None,
    rule: BinRule = DEFAULT_RULE,
) -> tuple[list[PairHistogram], int]:
    """Histograms for every adjacent pair plus the shared active-point count."""
    member = check_index(member, ns.n_members, "member")
    mask = brush.active_mask(ns.values[member]) if brush is not None else None
    active_count = int(mask.sum()) if mask is not None else ns.n_points
    histograms = [
        build_pair_histogram(ns, member, pair, brush=brush, rule=rule)
        for pair in range(ns.n_pairs)
    ]
    return histograms, active_count

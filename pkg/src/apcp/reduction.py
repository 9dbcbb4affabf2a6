"""Streaming single-pass reductions with chunked pairwise merging.

All accumulation is float64 regardless of the input dtype. Each incoming
block is reduced with numpy's pairwise summation, then folded into the
running state with the parallel mean/M2 merge, so results are independent
of how the stream is chunked up to ~1e-15 relative error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_CHUNK = 1 << 16


@dataclass
class Moments:
    """Count, mean and centered second moment (M2) for k parallel streams."""

    count: int
    mean: np.ndarray  # (k,) float64
    m2: np.ndarray    # (k,) float64

    @property
    def variance(self) -> np.ndarray:
        """Population variance (divide by count)."""
        if self.count == 0:
            raise ValueError("variance of an empty stream")
        return self.m2 / self.count

    @classmethod
    def empty(cls, k: int) -> "Moments":
        return cls(0, np.zeros(k), np.zeros(k))


def block_moments(block: np.ndarray) -> Moments:
    """Moments of one (k, n) block, reducing along axis 1 in float64."""
    k, n = block.shape
    if n == 0:
        return Moments.empty(k)
    total = block.sum(axis=1, dtype=np.float64)
    mean = total / n
    # deviations upcast to float64; einsum keeps the dot in float64
    dev = block - mean[:, None]
    m2 = np.einsum("ij,ij->i", dev, dev, dtype=np.float64, casting="same_kind")
    return Moments(n, mean, m2)


def merge_moments(a: Moments, b: Moments) -> Moments:
    """Combine two disjoint streams (Chan et al. parallel update)."""
    if a.count == 0:
        return b
    if b.count == 0:
        return a
    n = a.count + b.count
    delta = b.mean - a.mean
    mean = a.mean + delta * (b.count / n)
    m2 = a.m2 + b.m2 + delta * delta * (a.count * b.count / n)
    return Moments(n, mean, m2)


class StreamingMoments:
    """Accumulates Moments for k streams from (k, n) blocks."""

    def __init__(self, k: int):
        self.k = k
        self._state = Moments.empty(k)

    def update(self, block: np.ndarray) -> None:
        if block.ndim != 2 or block.shape[0] != self.k:
            raise ValueError(f"expected block of shape ({self.k}, n), got {block.shape}")
        self._state = merge_moments(self._state, block_moments(block))

    def merge(self, other: "StreamingMoments") -> None:
        if other.k != self.k:
            raise ValueError("stream widths differ")
        self._state = merge_moments(self._state, other._state)

    @property
    def result(self) -> Moments:
        return self._state


class StreamingSums:
    """Running float64 sums and count over (k, n) blocks."""

    def __init__(self, k: int):
        self.k = k
        self.total = np.zeros(k)
        self.count = 0

    def update(self, block: np.ndarray) -> None:
        self.total += block.sum(axis=1, dtype=np.float64)
        self.count += block.shape[1]

    def merge(self, other: "StreamingSums") -> None:
        self.total += other.total
        self.count += other.count

    @property
    def mean(self) -> np.ndarray:
        if self.count == 0:
            raise ValueError("mean of an empty stream")
        return self.total / self.count

"""Batch computation of the full bundled-plot geometry for one time step.

Runs in two streaming passes over the member bricks (per-variable bounds,
then normalized means + per-pair angle moments), so a slice is never
materialized whole: memory stays at a few bricks regardless of member
count. Members are processed in parallel worker threads; every per-member
reduction is a fixed-order chunk stream, so results do not depend on the
worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analytics import (
    AngleStats,
    PatternClassifier,
    RepresentativeLine,
    normalize_columns,
)
from .bundling import AdpLayout, BundledPath, build_path, layout_adp
from .dataset import EnsembleDataset, TimeSliceView
from .reduction import StreamingMoments, StreamingSums

PIPELINE_CHUNK = 1 << 16


@dataclass(frozen=True)
class ApcpResult:
    """Per-member means and per-pair angle stats, in axis order."""

    order: tuple[int, ...]          # variable indices, left-to-right axes
    var_lo: np.ndarray              # (n_vars,) bounds in natural variable space
    var_hi: np.ndarray
    line_means: np.ndarray          # (n_members, n_axes) float64
    angle_mean: np.ndarray          # (n_members, n_axes - 1) float64
    angle_var: np.ndarray           # (n_members, n_axes - 1) float64
    n_points: int
    time_index: int

    @property
    def n_members(self) -> int:
        return self.line_means.shape[0]

    @property
    def n_pairs(self) -> int:
        return self.angle_mean.shape[1]

    def pair_stats(self, pair: int) -> list[AngleStats]:
        return [
            AngleStats(
                member=m,
                pair=pair,
                mean=float(self.angle_mean[m, pair]),
                variance=float(self.angle_var[m, pair]),
                count=self.n_points,
            )
            for m in range(self.n_members)
        ]

    def member_line(self, member: int) -> RepresentativeLine:
        return RepresentativeLine(member=member, values=self.line_means[member])


def _resolve_order(order, n_vars: int) -> tuple[int, ...]:
    if order is None:
        return tuple(range(n_vars))
    order = tuple(int(j) for j in order)
    if sorted(order) != list(range(n_vars)):
        raise ValueError(f"order {order} is not a permutation of 0..{n_vars - 1}")
    return order


def _member_bounds(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return (
        matrix.min(axis=0).astype(np.float64),
        matrix.max(axis=0).astype(np.float64),
    )


def _member_stats(
    matrix: np.ndarray,
    order: Sequence[int],
    lo: np.ndarray,
    hi: np.ndarray,
    chunk: int,
) -> tuple[StreamingSums, StreamingMoments]:
    """Normalized-value sums and per-pair angle moments for one member."""
    k = len(order)
    order_idx = np.asarray(order, dtype=np.intp)
    identity = tuple(order) == tuple(range(k))
    lo_o = lo[order_idx]
    hi_o = hi[order_idx]
    sums = StreamingSums(k)
    moments = StreamingMoments(k - 1)
    n = matrix.shape[0]
    for start in range(0, n, chunk):
        rows = matrix[start : start + chunk]
        block = rows if identity else rows[:, order_idx]
        norm = normalize_columns(block, lo_o, hi_o)
        nt = np.ascontiguousarray(norm.T)  # (k, c): per-axis rows stream well
        sums.update(nt)
        theta = np.arctan(nt[1:] - nt[:-1])
        moments.update(theta)
    return sums, moments


def compute_apcp(
    source: EnsembleDataset | TimeSliceView,
    time: int = 0,
    order: Sequence[int] | None = None,
    workers: int | None = None,
    chunk: int = PIPELINE_CHUNK,
) -> ApcpResult:
    """Representative-line means and angle stats for every member and pair.

    ``source`` may be a dataset (bricks are streamed lazily, twice: once for
    bounds, once for stats) or an already materialized slice (its stored
    bounds are reused).
    """
    if isinstance(source, TimeSliceView):
        view = source
        n_members, n_vars = view.n_members, view.n_vars
        time = view.time_index

        def member_matrix(m: int) -> np.ndarray:
            return view.values[m]

        lo, hi = np.asarray(view.var_lo, dtype=np.float64), np.asarray(
            view.var_hi, dtype=np.float64
        )
    else:
        ds = source
        n_members, n_vars = ds.n_members, ds.n_vars

        def member_matrix(m: int) -> np.ndarray:
            return ds.brick(m, time)

        lo = hi = None

    order = _resolve_order(order, n_vars)
    max_workers = workers if workers is not None else min(8, os.cpu_count() or 1)
    max_workers = max(1, min(max_workers, n_members))

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        if lo is None:
            bounds = list(pool.map(lambda m: _member_bounds(member_matrix(m)), range(n_members)))
            lo = np.minimum.reduce([b[0] for b in bounds])
            hi = np.maximum.reduce([b[1] for b in bounds])
        per_member = list(
            pool.map(
                lambda m: _member_stats(member_matrix(m), order, lo, hi, chunk),
                range(n_members),
            )
        )

    k = len(order)
    line_means = np.empty((n_members, k))
    angle_mean = np.empty((n_members, k - 1))
    angle_var = np.empty((n_members, k - 1))
    n_points = per_member[0][0].count if per_member else 0
    for m, (sums, moments) in enumerate(per_member):
        line_means[m] = sums.mean
        result = moments.result
        angle_mean[m] = result.mean
        angle_var[m] = result.variance
    return ApcpResult(
        order=order,
        var_lo=lo,
        var_hi=hi,
        line_means=line_means,
        angle_mean=angle_mean,
        angle_var=angle_var,
        n_points=n_points,
        time_index=time,
    )


def adp_layouts(
    result: ApcpResult,
    rescale: bool = False,
    members: Sequence[int] | None = None,
) -> list[AdpLayout]:
    """One layout per interaxis pair, covering ``members`` (default: all)."""
    wanted = list(range(result.n_members)) if members is None else list(members)
    layouts = []
    for pair in range(result.n_pairs):
        stats = [s for s in result.pair_stats(pair) if s.member in set(wanted)]
        layouts.append(layout_adp(stats, rescale=rescale))
    return layouts


def bundled_paths(result: ApcpResult, layouts: Sequence[AdpLayout]) -> list[BundledPath]:
    """One composite path per member through the given layouts."""
    return [build_path(result.member_line(m), layouts) for m in range(result.n_members)]


def classify_result(result: ApcpResult, classifier: PatternClassifier | None = None):
    """Pattern labels per (member, pair) as an object array of strings."""
    clf = classifier if classifier is not None else PatternClassifier()
    return clf.predict(result.angle_var)

"""Normalized values, representative lines, and segment-angle statistics.

The angle between parallel axes j and j+1 for one grid point is
``arctan(v'[j+1] - v'[j])`` with unit axis spacing, where v' is the value
min-max normalized per variable over every member of the time slice. Angles
therefore live in [-pi/4, pi/4] and their per-member population variance is
bounded by (pi/4)^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import BaseEstimator
from .dataset import TimeSliceView
from .reduction import DEFAULT_CHUNK, Moments, StreamingMoments
from .validation import as_float_array, check_index, check_unit_interval

ANGLE_MAX = np.pi / 4.0
VARIANCE_MAX = ANGLE_MAX * ANGLE_MAX


class EmptySelectionError(ValueError):
    """Raised when every grid point has been brushed out of a computation."""


def normalize_columns(values: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Min-max normalize the trailing axis of ``values`` per column.

    Output dtype follows the input. Uses true division so a value equal to
    its column max maps to exactly 1.0; constant columns (hi == lo) map to
    0.5 everywhere.
    """
    dt = values.dtype if values.dtype in (np.float32, np.float64) else np.float64
    lo = np.asarray(lo, dtype=dt)
    hi = np.asarray(hi, dtype=dt)
    span = hi - lo
    degenerate = span == 0
    safe_span = np.where(degenerate, 1.0, span)
    out = (values.astype(dt, copy=False) - lo) / safe_span
    if degenerate.any():
        out[..., degenerate] = 0.5
    return out


class SliceNormalizer(BaseEstimator):
    """Per-variable min-max scaler with bounds shared across all members.

    fit(X) learns ``data_min_``/``data_max_`` per variable from the trailing
    axis of X (any leading shape: a member matrix or a whole member cube);
    transform maps into [0, 1], sending constant variables to 0.5.
    """

    def fit(self, X, y=None):
        X = as_float_array(X, "X")
        if X.ndim < 2:
            raise ValueError("X must have at least 2 dims (..., n_vars)")
        flat = X.reshape(-1, X.shape[-1])
        self.data_min_ = flat.min(axis=0).astype(np.float64)
        self.data_max_ = flat.max(axis=0).astype(np.float64)
        return self

    def transform(self, X) -> np.ndarray:
        X = as_float_array(X, "X")
        return normalize_columns(X, self.data_min_, self.data_max_)

    def fit_transform(self, X, y=None) -> np.ndarray:
        return self.fit(X, y).transform(X)


@dataclass(frozen=True)
class NormalizedSlice:
    """A time slice after per-variable normalization; values in [0, 1]."""

    time_index: int
    values: np.ndarray  # (n_members, n_points, n_vars), read-only
    var_lo: np.ndarray
    var_hi: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def n_members(self) -> int:
        return self.values.shape[0]

    @property
    def n_points(self) -> int:
        return self.values.shape[1]

    @property
    def n_vars(self) -> int:
        return self.values.shape[2]

    @property
    def n_pairs(self) -> int:
        return self.values.shape[2] - 1


def normalize_slice(view: TimeSliceView) -> NormalizedSlice:
    """Normalize every member of the slice with the slice-wide bounds."""
    values = normalize_columns(view.values, view.var_lo, view.var_hi)
    return NormalizedSlice(
        time_index=view.time_index,
        values=values,
        var_lo=np.array(view.var_lo, dtype=np.float64),
        var_hi=np.array(view.var_hi, dtype=np.float64),
    )


@dataclass(frozen=True)
class RepresentativeLine:
    """Per-variable means of one member's normalized values."""

    member: int
    values: np.ndarray  # (n_vars,) float64


def _active_rows(matrix: np.ndarray, mask) -> np.ndarray:
    if mask is None:
        return matrix
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != (matrix.shape[0],):
        raise ValueError(f"mask shape {mask.shape} does not match {matrix.shape[0]} points")
    if not mask.any():
        raise EmptySelectionError("selection is empty: every grid point is brushed out")
    return matrix[mask]


def representative_line(ns: NormalizedSlice, member: int, mask=None) -> RepresentativeLine:
    """Mean of each variable's normalized values over the active grid points."""
    member = check_index(member, ns.n_members, "member")
    rows = _active_rows(ns.values[member], mask)
    means = rows.mean(axis=0, dtype=np.float64)
    return RepresentativeLine(member=member, values=means)


def segment_angle(v_left, v_right):
    """Angle of the segment joining two normalized axis values (unit spacing)."""
    check_unit_interval(v_left, "v_left")
    check_unit_interval(v_right, "v_right")
    return np.arctan(np.subtract(v_right, v_left))


@dataclass(frozen=True)
class AngleStats:
    """Population mean/variance of segment angles for one member and pair."""

    member: int
    pair: int
    mean: float
    variance: float
    count: int


def pair_angle_moments(
    matrix: np.ndarray,
    pairs: list[tuple[int, int]],
    chunk: int = DEFAULT_CHUNK,
) -> Moments:
    """Streaming angle moments over rows of a normalized (n, k) matrix.

    Angles are evaluated at the matrix dtype; accumulation is float64.
    One moment stream per (left, right) column pair.
    """
    n = matrix.shape[0]
    acc = StreamingMoments(len(pairs))
    left = np.array([p[0] for p in pairs])
    right = np.array([p[1] for p in pairs])
    used = np.unique(np.concatenate([left, right]))
    remap = {int(c): i for i, c in enumerate(used)}
    l_idx = np.array([remap[int(c)] for c in left])
    r_idx = np.array([remap[int(c)] for c in right])
    for start in range(0, n, chunk):
        block = matrix[start : start + chunk, used]
        # (k, c) contiguous so per-pair rows stream well
        bt = np.ascontiguousarray(block.T)
        theta = np.arctan(bt[r_idx] - bt[l_idx])
        acc.update(theta)
    return acc.result


def angle_stats(
    ns: NormalizedSlice,
    member: int,
    pair: int,
    mask=None,
    chunk: int = DEFAULT_CHUNK,
) -> AngleStats:
    """Angle mean/variance for one member's interaxis pair (population form)."""
    member = check_index(member, ns.n_members, "member")
    pair = check_index(pair, ns.n_pairs, "pair")
    rows = _active_rows(ns.values[member], mask)
    moments = pair_angle_moments(rows, [(pair, pair + 1)], chunk=chunk)
    return AngleStats(
        member=member,
        pair=pair,
        mean=float(moments.mean[0]),
        variance=float(moments.variance[0]),
        count=moments.count,
    )


class AngularStatistics(BaseEstimator):
    """Streaming per-pair angle moments for normalized member data.

    fit(X) accepts one member matrix (n_points, n_vars) or a member cube
    (n_members, n_points, n_vars) of normalized values and exposes ``mean_``,
    ``variance_`` (population) and ``count_`` for each adjacent pair.
    """

    def __init__(self, chunk_size: int = DEFAULT_CHUNK):
        self.chunk_size = chunk_size

    def fit(self, X, y=None):
        X = as_float_array(X, "X")
        if X.ndim == 2:
            matrices = X[None, ...]
        elif X.ndim == 3:
            matrices = X
        else:
            raise ValueError(f"X must be 2- or 3-dimensional, got shape {X.shape}")
        n_pairs = matrices.shape[-1] - 1
        if n_pairs < 1:
            raise ValueError("X needs at least two variable columns")
        pairs = [(j, j + 1) for j in range(n_pairs)]
        means = np.empty((matrices.shape[0], n_pairs))
        variances = np.empty_like(means)
        for m, matrix in enumerate(matrices):
            moments = pair_angle_moments(matrix, pairs, chunk=self.chunk_size)
            means[m] = moments.mean
            variances[m] = moments.variance
        self.count_ = matrices.shape[1]
        if X.ndim == 2:
            self.mean_, self.variance_ = means[0], variances[0]
        else:
            self.mean_, self.variance_ = means, variances
        return self


PATTERN_POSITIVE = "positive"
PATTERN_NEGATIVE = "negative"
PATTERN_NONE = "none"


class PatternClassifier(BaseEstimator):
    """Correlation-pattern labels from angular variance.

    Low variance means few segment crossings (positive association); high
    variance means heavy central crossing (negative association). Thresholds
    are advisory and tunable.
    """

    def __init__(self, positive_max: float = 0.05, negative_min: float = 0.30):
        self.positive_max = positive_max
        self.negative_min = negative_min

    def _check_thresholds(self):
        if not 0.0 <= self.positive_max <= self.negative_min:
            raise ValueError(
                f"need 0 <= positive_max <= negative_min, got "
                f"({self.positive_max}, {self.negative_min})"
            )

    def fit(self, X=None, y=None):
        self._check_thresholds()
        return self

    def predict(self, variance):
        self._check_thresholds()
        v = np.asarray(variance, dtype=np.float64)
        labels = np.where(
            v < self.positive_max,
            PATTERN_POSITIVE,
            np.where(v > self.negative_min, PATTERN_NEGATIVE, PATTERN_NONE),
        )
        return labels[()] if np.isscalar(variance) or v.ndim == 0 else labels


def classify_pattern(stats: AngleStats, classifier: PatternClassifier | None = None) -> str:
    """Advisory correlation-pattern label for one AngleStats."""
    clf = classifier if classifier is not None else PatternClassifier()
    return str(clf.predict(stats.variance))

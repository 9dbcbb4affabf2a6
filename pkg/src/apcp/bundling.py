"""Scatter-band layout and composite Bézier paths for the bundled plot.

Plot space is axis-gap normalized: axis j sits at x = j, values span y in
[0, 1]. The band between axes j and j+1 hosts a scatter of per-member
(angle mean, angle variance) points; each member's curve runs from its
axis-j mean through that scatter point to its axis-j+1 mean as two cubic
Bézier segments sharing a tangent at the junction (C1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analytics import ANGLE_MAX, VARIANCE_MAX, AngleStats, RepresentativeLine

BAND_MARGIN = 0.05  # fraction of the interaxis gap, inset on every side


@dataclass(frozen=True)
class Rect:
    x0: float
    y0: float
    x1: float
    y1: float

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0


def pair_band(pair: int, margin: float = BAND_MARGIN) -> Rect:
    """Default scatter band for the gap between axes ``pair`` and ``pair+1``."""
    return Rect(pair + margin, margin, pair + 1 - margin, 1.0 - margin)


def _lerp(a, b, t):
    # convex form: exact at t=0 and t=1
    return (1.0 - t) * a + t * b


def _unit_positions(values: np.ndarray, lo: float, hi: float) -> np.ndarray:
    if hi == lo:
        return np.full(values.shape, 0.5)
    return (values - lo) / (hi - lo)


@dataclass(frozen=True)
class AdpLayout:
    """Plot-space embedding of per-member angle stats for one interaxis pair."""

    pair: int
    band: Rect
    mean_range: tuple[float, float]
    var_range: tuple[float, float]
    members: tuple[int, ...]
    points: np.ndarray  # (n_members, 2), read-only

    def __post_init__(self):
        self.points.setflags(write=False)

    def point_of(self, member: int) -> np.ndarray:
        try:
            row = self.members.index(member)
        except ValueError:
            raise KeyError(f"member {member} not present in layout for pair {self.pair}")
        return self.points[row]


def layout_adp(
    stats: Sequence[AngleStats],
    band: Rect | None = None,
    rescale: bool = False,
) -> AdpLayout:
    """Place one point per member inside the band.

    Fixed mode maps mean over [-pi/4, pi/4] and variance over [0, (pi/4)^2];
    rescale mode maps over the present members' own min/max (a degenerate
    span collapses to that axis midpoint). Variance 0 sits at the band
    bottom, mean 0 at the horizontal center.
    """
    if not stats:
        raise ValueError("layout needs at least one member's stats")
    pair = stats[0].pair
    if any(s.pair != pair for s in stats):
        raise ValueError("all stats must describe the same interaxis pair")
    if band is None:
        band = pair_band(pair)
    means = np.array([s.mean for s in stats], dtype=np.float64)
    variances = np.array([s.variance for s in stats], dtype=np.float64)
    if rescale:
        mean_range = (float(means.min()), float(means.max()))
        var_range = (float(variances.min()), float(variances.max()))
    else:
        mean_range = (-ANGLE_MAX, ANGLE_MAX)
        var_range = (0.0, VARIANCE_MAX)
    tx = _unit_positions(means, *mean_range)
    ty = _unit_positions(variances, *var_range)
    points = np.column_stack((_lerp(band.x0, band.x1, tx), _lerp(band.y0, band.y1, ty)))
    return AdpLayout(
        pair=pair,
        band=band,
        mean_range=mean_range,
        var_range=var_range,
        members=tuple(s.member for s in stats),
        points=points,
    )


@dataclass(frozen=True)
class CubicBezier:
    """Cubic segment; control points are (2,) float64 arrays."""

    p0: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    p3: np.ndarray

    def point_at(self, t):
        """De Casteljau evaluation; t may be a scalar or an array."""
        t = np.asarray(t, dtype=np.float64)
        ts = t[..., None]
        a = _lerp(self.p0, self.p1, ts)
        b = _lerp(self.p1, self.p2, ts)
        c = _lerp(self.p2, self.p3, ts)
        ab = _lerp(a, b, ts)
        bc = _lerp(b, c, ts)
        return _lerp(ab, bc, ts)

    @property
    def control_points(self) -> np.ndarray:
        return np.array([self.p0, self.p1, self.p2, self.p3])


@dataclass(frozen=True)
class BundledPath:
    """Per-member composite curve: two cubics per interaxis pair."""

    member: int
    segments: tuple[CubicBezier, ...]

    @property
    def n_pairs(self) -> int:
        return len(self.segments) // 2

    def pair_segments(self, pair: int) -> tuple[CubicBezier, CubicBezier]:
        return self.segments[2 * pair], self.segments[2 * pair + 1]

    def pair_control_points(self, pair: int) -> np.ndarray:
        """The 7 distinct control points of one pair's composite curve."""
        left, right = self.pair_segments(pair)
        return np.array(
            [left.p0, left.p1, left.p2, left.p3, right.p1, right.p2, right.p3]
        )


def connect_through(e0, mid, e1) -> tuple[CubicBezier, CubicBezier]:
    """Two cubics from e0 through mid to e1, meeting C1 at mid.

    The shared tangent points along the chord e0->e1 with magnitude
    (|mid-e0| + |e1-mid|)/6; when mid lies on the chord the curve collapses
    onto the straight segment. A fully coincident triple degenerates to a
    point. If e0 == e1 but mid differs (unreachable from real layouts) the
    tangent is zero, which still satisfies C1.
    """
    e0 = np.asarray(e0, dtype=np.float64)
    mid = np.asarray(mid, dtype=np.float64)
    e1 = np.asarray(e1, dtype=np.float64)
    chord = e1 - e0
    length = float(np.hypot(*chord))
    if length == 0.0:
        direction = np.zeros(2)
    else:
        direction = chord / length
    lam = (float(np.hypot(*(mid - e0))) + float(np.hypot(*(e1 - mid)))) / 6.0
    tangent = lam * direction
    left = CubicBezier(e0, e0 + (mid - e0) / 3.0, mid - tangent, mid)
    right = CubicBezier(mid, mid + tangent, e1 - (e1 - mid) / 3.0, e1)
    return left, right


def build_path(line: RepresentativeLine, layouts: Sequence[AdpLayout]) -> BundledPath:
    """Composite path through the member's axis means and scatter points.

    The shared junction tangent points along the chord E0->E1 with magnitude
    (|M-E0| + |E1-M|)/6, which makes the two cubics meet with equal
    derivatives and collapse onto the chord whenever M lies on it.
    """
    n_pairs = len(line.values) - 1
    if len(layouts) != n_pairs:
        raise ValueError(f"need {n_pairs} layouts, got {len(layouts)}")
    segments: list[CubicBezier] = []
    for a, layout in enumerate(layouts):
        if layout.pair != a:
            raise ValueError(f"layout at position {a} describes pair {layout.pair}")
        e0 = np.array([float(a), float(line.values[a])])
        e1 = np.array([float(a + 1), float(line.values[a + 1])])
        mid = np.asarray(layout.point_of(line.member), dtype=np.float64)
        segments.extend(connect_through(e0, mid, e1))
    return BundledPath(member=line.member, segments=tuple(segments))


def sample_path(path: BundledPath, samples_per_segment: int) -> np.ndarray:
    """Uniform-parameter polyline; pairs*(2n-1) points (junction deduplicated)."""
    n = int(samples_per_segment)
    if n < 2:
        raise ValueError(f"samples_per_segment must be >= 2, got {samples_per_segment}")
    t = np.linspace(0.0, 1.0, n)
    chunks = []
    for pair in range(path.n_pairs):
        left, right = path.pair_segments(pair)
        chunks.append(left.point_at(t))
        chunks.append(right.point_at(t)[1:])
    return np.vstack(chunks)

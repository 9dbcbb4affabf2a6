"""Horizontal cross sections of one member's volume, plus the color map.

Sections are normalized with the slice-wide per-variable bounds (the same
bounds the parallel-coordinates views use), so colors are comparable across
members and layers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytics import normalize_columns
from .dataset import GridDims, TimeSliceView
from .validation import check_index

# low -> high: purple, blue, green, yellow, red
PALETTE_POSITIONS = (0.0, 0.25, 0.5, 0.75, 1.0)
PALETTE_COLORS = (
    (128, 0, 128),
    (0, 0, 255),
    (0, 255, 0),
    (255, 255, 0),
    (255, 0, 0),
)


def colormap(normalized) -> np.ndarray:
    """Map values in [0, 1] (clamped) to RGB bytes, piecewise-linear.

    Control colors sit at PALETTE_POSITIONS; endpoints and interior nodes
    map exactly to their control colors.
    """
    x = np.clip(np.asarray(normalized, dtype=np.float64), 0.0, 1.0)
    positions = np.asarray(PALETTE_POSITIONS)
    colors = np.asarray(PALETTE_COLORS, dtype=np.float64)
    out = np.empty(x.shape + (3,), dtype=np.float64)
    for c in range(3):
        out[..., c] = np.interp(x, positions, colors[:, c])
    return np.rint(out).astype(np.uint8)


@dataclass(frozen=True)
class CrossSection:
    """One z layer of one member's volume for one variable."""

    member: int
    variable: int
    z_index: int
    values: np.ndarray      # (ny, nx) raw scalars
    normalized: np.ndarray  # (ny, nx) in [0, 1], slice-wide bounds
    altitude: float | None = None

    def __post_init__(self):
        self.values.setflags(write=False)
        self.normalized.setflags(write=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def rgb(self) -> np.ndarray:
        return colormap(self.normalized)


def extract_section(
    view: TimeSliceView,
    grid: GridDims,
    member: int,
    variable: int,
    z_index: int,
    altitudes=None,
) -> CrossSection:
    """Copy layer ``z_index`` of one member/variable out of the slice.

    Grid points are (z, y, x)-major, so layer k occupies rows
    [k*ny*nx, (k+1)*ny*nx) of the flattened grid axis.
    """
    member = check_index(member, view.n_members, "member")
    variable = check_index(variable, view.n_vars, "variable")
    z_index = check_index(z_index, grid.nz, "z_index")
    if grid.n_points != view.n_points:
        raise ValueError(
            f"grid has {grid.n_points} points but slice holds {view.n_points}"
        )
    layer_size = grid.ny * grid.nx
    start = z_index * layer_size
    flat = view.values[member, start : start + layer_size, variable]
    values = flat.reshape(grid.ny, grid.nx).copy()
    normalized = normalize_columns(
        values[..., None],
        view.var_lo[variable : variable + 1],
        view.var_hi[variable : variable + 1],
    )[..., 0].astype(np.float64)
    altitude = None
    if altitudes is not None:
        altitude = float(altitudes[z_index])
    return CrossSection(
        member=member,
        variable=variable,
        z_index=z_index,
        values=values,
        normalized=normalized,
        altitude=altitude,
    )

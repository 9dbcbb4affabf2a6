"""Ensemble dataset store: manifest + raw float32 bricks, lazy loading, time slicing.

A dataset is a collection of members (simulation runs), each holding one
"brick" of values per time step. A brick is a raw little-endian float32
file with ``nz*ny*nx*n_vars`` values in (z, y, x, variable)-major order,
i.e. shape ``(n_points, n_vars)`` once the grid is flattened.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np

from .validation import check_index

MANIFEST_NAME = "manifest.json"
BYTES_PER_VALUE = 4  # f32le on disk


class DatasetError(Exception):
    """Base error for dataset loading and validation."""


class ManifestError(DatasetError):
    """Manifest missing, unparseable, or structurally invalid."""


class BrickError(DatasetError):
    """A brick file is missing, mis-sized, or holds non-finite values."""


@dataclass(frozen=True)
class GridDims:
    nx: int
    ny: int
    nz: int

    def __post_init__(self):
        if min(self.nx, self.ny, self.nz) < 1:
            raise ValueError(f"grid dims must be positive, got {self}")

    @property
    def n_points(self) -> int:
        return self.nx * self.ny * self.nz

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.nx, self.ny, self.nz)


@dataclass(frozen=True)
class VariableMeta:
    name: str
    unit: str = ""
    index: int = 0


@dataclass(frozen=True)
class MemberMeta:
    id: str
    true_state: bool = False


class BrickSource(Protocol):
    """Resolves (member index, time index) to a (n_points, n_vars) array."""

    def read(self, member: int, time: int) -> np.ndarray: ...


@dataclass
class RawBrickFiles:
    """Bricks stored as headerless f32le files under a root directory."""

    root: Path
    template: str
    member_ids: Sequence[str]
    n_points: int
    n_vars: int

    def path(self, member: int, time: int) -> Path:
        try:
            rel = self.template.format(member=self.member_ids[member], time=time)
        except (KeyError, IndexError, ValueError) as exc:
            raise ManifestError(f"bad brick_path_template {self.template!r}: {exc}") from exc
        return self.root / rel

    def read(self, member: int, time: int) -> np.ndarray:
        path = self.path(member, time)
        expected = self.n_points * self.n_vars * BYTES_PER_VALUE
        try:
            actual = path.stat().st_size
        except FileNotFoundError:
            raise BrickError(f"missing brick file {path}") from None
        if actual != expected:
            raise BrickError(
                f"brick {path} has {actual} bytes, expected {expected} "
                f"({self.n_points} points x {self.n_vars} variables x {BYTES_PER_VALUE} bytes)"
            )
        values = np.fromfile(path, dtype="<f4")
        return values.reshape(self.n_points, self.n_vars)


@dataclass
class ArrayBricks:
    """In-memory brick source; cube shape (n_members, n_times, n_points, n_vars)."""

    cube: np.ndarray

    def read(self, member: int, time: int) -> np.ndarray:
        return self.cube[member, time]


@dataclass(frozen=True)
class TimeSliceView:
    """All members' values at one time step, plus per-variable bounds.

    ``values`` has shape (n_members, n_points, n_vars) and is read-only;
    ``var_lo``/``var_hi`` are min/max per variable over every member and
    grid point of the slice.
    """

    time_index: int
    values: np.ndarray
    var_lo: np.ndarray
    var_hi: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)
        self.var_lo.setflags(write=False)
        self.var_hi.setflags(write=False)

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
    def var_bounds(self) -> list[tuple[float, float]]:
        return [(float(lo), float(hi)) for lo, hi in zip(self.var_lo, self.var_hi)]


@dataclass
class EnsembleDataset:
    """Members x grid x times x variables, with lazily readable bricks."""

    grid: GridDims
    variables: tuple[VariableMeta, ...]
    members: tuple[MemberMeta, ...]
    times: tuple[float, ...]
    source: BrickSource
    altitudes: tuple[float, ...] | None = None

    def __post_init__(self):
        if len(self.members) < 1:
            raise ValueError("dataset needs at least one member")
        if len(self.times) < 1:
            raise ValueError("dataset needs at least one time step")
        if len(self.variables) < 2:
            raise ValueError("dataset needs at least two variables")
        names = [v.name for v in self.variables]
        if len(set(names)) != len(names):
            raise ValueError(f"variable names not unique: {names}")
        for j, v in enumerate(self.variables):
            if v.index != j:
                raise ValueError(f"variable {v.name!r} has index {v.index}, expected {j}")
        ids = [m.id for m in self.members]
        if len(set(ids)) != len(ids):
            raise ValueError("member ids not unique")
        if sum(m.true_state for m in self.members) > 1:
            raise ValueError("at most one member may be flagged true_state")
        if self.altitudes is not None and len(self.altitudes) != self.grid.nz:
            raise ValueError(
                f"altitude table has {len(self.altitudes)} entries, grid has {self.grid.nz} layers"
            )

    @property
    def n_members(self) -> int:
        return len(self.members)

    @property
    def n_times(self) -> int:
        return len(self.times)

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    @property
    def n_points(self) -> int:
        return self.grid.n_points

    @property
    def variable_names(self) -> list[str]:
        return [v.name for v in self.variables]

    def member_index(self, member_id: str) -> int:
        for i, m in enumerate(self.members):
            if m.id == member_id:
                return i
        raise KeyError(f"unknown member id {member_id!r}")

    def brick(self, member: int, time: int) -> np.ndarray:
        """Read and validate one (n_points, n_vars) brick."""
        member = check_index(member, self.n_members, "member")
        time = check_index(time, self.n_times, "time")
        values = self.source.read(member, time)
        if values.shape != (self.n_points, self.n_vars):
            raise BrickError(
                f"brick for member {self.members[member].id!r} t={time} has shape "
                f"{values.shape}, expected {(self.n_points, self.n_vars)}"
            )
        finite = np.isfinite(values)
        if not finite.all():
            offset = int(np.argmin(finite.ravel()))
            raise BrickError(
                f"non-finite value in brick for member {self.members[member].id!r} "
                f"t={time} at value offset {offset}"
            )
        values.setflags(write=False)
        return values

    def slice_time(self, time: int) -> TimeSliceView:
        """Materialize the slice at one time step (member-major layout)."""
        time = check_index(time, self.n_times, "time")
        first = self.brick(0, time)
        values = np.empty((self.n_members, self.n_points, self.n_vars), dtype=first.dtype)
        values[0] = first
        for m in range(1, self.n_members):
            values[m] = self.brick(m, time)
        flat = values.reshape(-1, self.n_vars)
        var_lo = flat.min(axis=0).astype(np.float64)
        var_hi = flat.max(axis=0).astype(np.float64)
        return TimeSliceView(time_index=time, values=values, var_lo=var_lo, var_hi=var_hi)


def _require(manifest: dict, key: str):
    if key not in manifest:
        raise ManifestError(f"manifest missing required key {key!r}")
    return manifest[key]


def load_dataset(manifest_path) -> EnsembleDataset:
    """Load a dataset from its manifest, validating every referenced brick.

    ``manifest_path`` may be the manifest file itself or its directory.
    All bricks must exist with exactly ``n_points * n_vars * 4`` bytes;
    values are read lazily afterwards via ``EnsembleDataset.brick``.
    """
    path = Path(manifest_path)
    if path.is_dir():
        path = path / MANIFEST_NAME
    if not path.is_file():
        raise ManifestError(f"manifest not found: {path}")
    try:
        manifest = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ManifestError(f"cannot parse manifest {path}: {exc}") from exc
    if not isinstance(manifest, dict):
        raise ManifestError(f"manifest {path} must be a JSON object")

    value_type = _require(manifest, "value_type")
    if value_type != "f32le":
        raise ManifestError(f"unsupported value_type {value_type!r} (expected 'f32le')")
    layout = _require(manifest, "layout")
    if layout != "zyxv":
        raise ManifestError(f"unsupported layout {layout!r} (expected 'zyxv')")

    dims = _require(manifest, "grid_dims")
    if not (isinstance(dims, (list, tuple)) and len(dims) == 3):
        raise ManifestError(f"grid_dims must be [nx, ny, nz], got {dims!r}")
    try:
        grid = GridDims(*(int(d) for d in dims))
    except (TypeError, ValueError) as exc:
        raise ManifestError(f"bad grid_dims {dims!r}: {exc}") from exc

    try:
        variables = tuple(
            VariableMeta(name=str(v["name"]), unit=str(v.get("unit", "")), index=j)
            for j, v in enumerate(_require(manifest, "variables"))
        )
        members = tuple(
            MemberMeta(id=str(m["id"]), true_state=bool(m.get("true_state", False)))
            for m in _require(manifest, "members")
        )
    except (TypeError, KeyError) as exc:
        raise ManifestError(f"bad variables/members entry in {path}: {exc}") from exc
    times = tuple(float(t) for t in _require(manifest, "times"))
    template = str(_require(manifest, "brick_path_template"))
    altitudes = manifest.get("altitudes")
    if altitudes is not None:
        altitudes = tuple(float(a) for a in altitudes)

    source = RawBrickFiles(
        root=path.parent,
        template=template,
        member_ids=[m.id for m in members],
        n_points=grid.n_points,
        n_vars=len(variables),
    )
    try:
        ds = EnsembleDataset(
            grid=grid,
            variables=variables,
            members=members,
            times=times,
            source=source,
            altitudes=altitudes,
        )
    except ValueError as exc:
        raise ManifestError(f"invalid manifest {path}: {exc}") from exc

    expected = grid.n_points * len(variables) * BYTES_PER_VALUE
    for m in range(ds.n_members):
        for t in range(ds.n_times):
            brick_path = source.path(m, t)
            if not brick_path.is_file():
                raise BrickError(f"missing brick file {brick_path}")
            actual = brick_path.stat().st_size
            if actual != expected:
                raise BrickError(
                    f"brick {brick_path} has {actual} bytes, expected {expected}"
                )
    return ds


def write_dataset(
    ds: EnsembleDataset,
    out_dir,
    template: str = "bricks/{member}_t{time:04d}.f32",
) -> Path:
    """Write manifest + f32le bricks under ``out_dir``; returns the manifest path.

    Sources holding float64 values are truncated to float32 on disk.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for m in range(ds.n_members):
        for t in range(ds.n_times):
            rel = template.format(member=ds.members[m].id, time=t)
            brick_path = out / rel
            brick_path.parent.mkdir(parents=True, exist_ok=True)
            values = np.ascontiguousarray(ds.brick(m, t), dtype="<f4")
            values.tofile(brick_path)
    manifest = {
        "grid_dims": list(ds.grid.as_tuple()),
        "variables": [{"name": v.name, "unit": v.unit} for v in ds.variables],
        "members": [{"id": m.id, "true_state": m.true_state} for m in ds.members],
        "times": list(ds.times),
        "brick_path_template": template,
        "value_type": "f32le",
        "layout": "zyxv",
    }
    if ds.altitudes is not None:
        manifest["altitudes"] = list(ds.altitudes)
    manifest_path = out / MANIFEST_NAME
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest_path

"""Synthetic ensemble datasets with controlled adjacent-pair correlations.

Each member's first variable is drawn from an arcsine marginal on [0, 1]
(U-shaped, so pair angles spread over their full range); variable j+1 copies
variable j with probability p_j = (1 + rho_j)/2 and mirrors it (x -> 1-x)
otherwise. For a symmetric marginal this yields Pearson correlation exactly
2*p_j - 1 = rho_j between adjacent variables, and degenerates to exactly
(anti)collinear pairs at rho = ±1. Each variable is then mapped through its
own positive affine range so raw values differ per axis.

Bricks are produced procedurally per (member, time) from child seeds, so a
dataset is deterministic for a fixed spec and never materialized whole.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import EnsembleDataset, GridDims, MemberMeta, VariableMeta

_BRICK_TAG = 0x5EED
_RANGE_TAG = 0xAFF1


@dataclass(frozen=True)
class SyntheticSpec:
    grid: GridDims
    n_members: int
    rho: tuple[float, ...]
    seed: int
    variable_names: tuple[str, ...] | None = None
    n_times: int = 1
    dtype: str = "float32"
    true_state_index: int | None = None

    def __post_init__(self):
        if isinstance(self.grid, (tuple, list)):
            object.__setattr__(self, "grid", GridDims(*self.grid))
        object.__setattr__(self, "rho", tuple(float(r) for r in self.rho))
        if self.n_members < 1:
            raise ValueError("n_members must be >= 1")
        if self.n_times < 1:
            raise ValueError("n_times must be >= 1")
        if len(self.rho) < 1:
            raise ValueError("need at least one adjacent-pair correlation (two variables)")
        for r in self.rho:
            if not -1.0 <= r <= 1.0:
                raise ValueError(f"pair correlation {r} outside [-1, 1]")
        if self.dtype not in ("float32", "float64"):
            raise ValueError(f"dtype must be float32 or float64, got {self.dtype!r}")
        names = self.variable_names
        if names is None:
            names = tuple(f"v{j}" for j in range(self.n_vars))
            object.__setattr__(self, "variable_names", names)
        if len(names) != self.n_vars:
            raise ValueError(
                f"{len(names)} variable names for {self.n_vars} variables "
                f"(len(rho)+1)"
            )
        if self.true_state_index is not None and not (
            0 <= self.true_state_index < self.n_members
        ):
            raise ValueError(f"true_state_index {self.true_state_index} out of range")

    @property
    def n_vars(self) -> int:
        return len(self.rho) + 1


@dataclass
class SyntheticBricks:
    """Procedural brick source; deterministic per (spec.seed, member, time)."""

    spec: SyntheticSpec
    var_lo: np.ndarray = field(init=False)
    var_span: np.ndarray = field(init=False)

    def __post_init__(self):
        rng = np.random.default_rng(np.random.SeedSequence((self.spec.seed, _RANGE_TAG)))
        k = self.spec.n_vars
        self.var_lo = rng.uniform(-5.0, 5.0, size=k)
        self.var_span = rng.uniform(0.5, 10.0, size=k)

    def read(self, member: int, time: int) -> np.ndarray:
        spec = self.spec
        n = spec.grid.n_points
        rng = np.random.default_rng(
            np.random.SeedSequence((spec.seed, _BRICK_TAG, member, time))
        )
        u = rng.random(n)
        # arcsine marginal: dense near 0 and 1
        cur = np.square(np.sin(0.5 * np.pi * u))
        out = np.empty((n, spec.n_vars), dtype=spec.dtype)
        out[:, 0] = self.var_lo[0] + self.var_span[0] * cur
        for j, rho in enumerate(spec.rho):
            p = 0.5 * (1.0 + rho)
            mirror = rng.random(n) >= p
            cur = np.where(mirror, 1.0 - cur, cur)
            out[:, j + 1] = self.var_lo[j + 1] + self.var_span[j + 1] * cur
        return out


def generate_synthetic(spec: SyntheticSpec) -> EnsembleDataset:
    """Build a lazily evaluated dataset matching ``spec``."""
    variables = tuple(
        VariableMeta(name=name, unit="a.u.", index=j)
        for j, name in enumerate(spec.variable_names)
    )
    width = max(3, len(str(spec.n_members - 1)))
    members = tuple(
        MemberMeta(id=f"m{m:0{width}d}", true_state=(m == spec.true_state_index))
        for m in range(spec.n_members)
    )
    times = tuple(float(t) for t in range(spec.n_times))
    return EnsembleDataset(
        grid=spec.grid,
        variables=variables,
        members=members,
        times=times,
        source=SyntheticBricks(spec),
    )

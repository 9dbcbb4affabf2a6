import numpy as np
import pytest

from apcp.dataset import ArrayBricks, EnsembleDataset, GridDims, MemberMeta, VariableMeta
from apcp.synthetic import SyntheticSpec, generate_synthetic


def dataset_from_values(values, grid=None, true_state=None):
    """Wrap a (n_members, n_points, n_vars) array as an in-memory dataset."""
    values = np.asarray(values)
    n_members, n_points, n_vars = values.shape
    if grid is None:
        grid = GridDims(n_points, 1, 1)
    elif isinstance(grid, tuple):
        grid = GridDims(*grid)
    assert grid.n_points == n_points
    return EnsembleDataset(
        grid=grid,
        variables=tuple(VariableMeta(f"v{j}", "a.u.", j) for j in range(n_vars)),
        members=tuple(
            MemberMeta(f"m{m:03d}", true_state=(m == true_state)) for m in range(n_members)
        ),
        times=(0.0,),
        source=ArrayBricks(values[:, None, :, :]),
    )


@pytest.fixture
def small_spec():
    return SyntheticSpec(grid=(5, 4, 2), n_members=3, rho=(0.8, -0.8), seed=42)


@pytest.fixture
def small_ds(small_spec):
    return generate_synthetic(small_spec)


@pytest.fixture
def small_view(small_ds):
    return small_ds.slice_time(0)


@pytest.fixture
def small_ns(small_view):
    from apcp.analytics import normalize_slice

    return normalize_slice(small_view)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

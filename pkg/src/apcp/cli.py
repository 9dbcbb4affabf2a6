"""Command line: synthetic data generation, batch stats, SVG render, API server."""

from __future__ import annotations

import json
from pathlib import Path

import click

from .binning import BinRule
from .dataset import DatasetError, load_dataset, write_dataset
from .pipeline import adp_layouts, bundled_paths, classify_result, compute_apcp
from .server import SessionConfig
from .synthetic import SyntheticSpec, generate_synthetic
from .svg import render_apcp_svg


def _parse_grid(text: str) -> tuple[int, int, int]:
    parts = text.lower().split("x")
    if len(parts) != 3:
        raise click.BadParameter(f"grid must be NXxNYxNZ, got {text!r}")
    return tuple(int(p) for p in parts)


def _parse_rho(text: str, n_vars: int) -> tuple[float, ...]:
    if not text:
        return tuple(0.0 for _ in range(n_vars - 1))
    rho = tuple(float(p) for p in text.split(","))
    if len(rho) != n_vars - 1:
        raise click.BadParameter(
            f"--rho needs {n_vars - 1} values for {n_vars} variables, got {len(rho)}"
        )
    return rho


def _resolve_order(names_csv: str | None, dataset) -> tuple[int, ...] | None:
    if not names_csv:
        return None
    names = [n.strip() for n in names_csv.split(",") if n.strip()]
    known = {v.name: v.index for v in dataset.variables}
    if sorted(names) != sorted(known):
        raise click.ClickException(
            f"--order must be a permutation of {sorted(known)}, got {names}"
        )
    return tuple(known[n] for n in names)


@click.group()
def main():
    """Ensemble bundled-parallel-coordinates toolkit."""


@main.command()
@click.option("--out", required=True, type=click.Path(path_type=Path), help="output dataset directory")
@click.option("--members", default=8, show_default=True, help="number of ensemble members")
@click.option("--grid", default="8x8x4", show_default=True, help="grid dims NXxNYxNZ")
@click.option("--vars", "n_vars", default=3, show_default=True, help="number of variables")
@click.option("--rho", default="", help="comma list of adjacent-pair correlations (default all 0)")
@click.option("--seed", default=7, show_default=True, help="RNG seed")
@click.option("--times", default=1, show_default=True, help="number of time steps")
@click.option("--true-state/--no-true-state", default=True, show_default=True,
              help="flag the last member as the true state")
def gen(out, members, grid, n_vars, rho, seed, times, true_state):
    """Generate a synthetic dataset and write it to --out."""
    try:
        spec = SyntheticSpec(
            grid=_parse_grid(grid),
            n_members=members,
            rho=_parse_rho(rho, n_vars),
            seed=seed,
            n_times=times,
            true_state_index=members - 1 if true_state else None,
        )
        ds = generate_synthetic(spec)
        manifest = write_dataset(ds, out)
    except (ValueError, OSError) as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {manifest}")


def _load(manifest: Path):
    try:
        return load_dataset(manifest)
    except DatasetError as exc:
        raise click.ClickException(str(exc))


@main.command()
@click.option("--manifest", required=True, type=click.Path(path_type=Path))
@click.option("--time", "time_index", default=0, show_default=True)
@click.option("--order", default=None, help="comma list of variable names (axis order)")
@click.option("--workers", default=None, type=int, help="worker threads (default: cpu count)")
@click.option("--out", default=None, type=click.Path(path_type=Path), help="output file (default: stdout)")
def stats(manifest, time_index, order, workers, out):
    """Write representative lines + angle stats for every member as JSON."""
    ds = _load(manifest)
    try:
        result = compute_apcp(
            ds, time=time_index, order=_resolve_order(order, ds), workers=workers
        )
    except (DatasetError, ValueError, IndexError) as exc:
        raise click.ClickException(str(exc))
    labels = classify_result(result)
    doc = {
        "time_index": result.time_index,
        "order": [ds.variables[j].name for j in result.order],
        "n_points": result.n_points,
        "members": [
            {
                "id": ds.members[m].id,
                "true_state": ds.members[m].true_state,
                "means": [float(v) for v in result.line_means[m]],
                "pairs": [
                    {
                        "pair": p,
                        "mean": float(result.angle_mean[m, p]),
                        "variance": float(result.angle_var[m, p]),
                        "label": str(labels[m, p]),
                    }
                    for p in range(result.n_pairs)
                ],
            }
            for m in range(ds.n_members)
        ],
    }
    text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text)
        click.echo(f"wrote {out}", err=True)


@main.command()
@click.option("--manifest", required=True, type=click.Path(path_type=Path))
@click.option("--time", "time_index", default=0, show_default=True)
@click.option("--order", default=None, help="comma list of variable names (axis order)")
@click.option("--out", required=True, type=click.Path(path_type=Path), help="output SVG file")
@click.option("--samples", default=24, show_default=True, help="samples per curve segment")
@click.option("--rescale", is_flag=True, default=False, help="rescale scatter-band axes to the data")
@click.option("--workers", default=None, type=int)
def render(manifest, time_index, order, out, samples, rescale, workers):
    """Render the bundled plot as a static SVG."""
    ds = _load(manifest)
    try:
        result = compute_apcp(
            ds, time=time_index, order=_resolve_order(order, ds), workers=workers
        )
        layouts = adp_layouts(result, rescale=rescale)
        paths = bundled_paths(result, layouts)
        svg_text = render_apcp_svg(
            result,
            layouts,
            paths,
            variable_names=[ds.variables[j].name for j in result.order],
            true_state=[m.true_state for m in ds.members],
            samples_per_segment=samples,
        )
        Path(out).write_text(svg_text)
    except (DatasetError, ValueError, IndexError, OSError) as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {out}")


@main.command()
@click.option("--manifest", required=True, type=click.Path(path_type=Path))
@click.option("--time", "time_index", default=0, show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--bins", default=None, type=int, help="fixed bin count for histograms")
@click.option("--rule", default=None, help="bin rule: sturges|doane|scott|fd|fixed:K")
@click.option("--workers", default=None, type=int)
@click.option("--ui", default=None, type=click.Path(path_type=Path),
              help="directory with the built web client, served at /")
def serve(manifest, time_index, port, host, bins, rule, workers, ui):
    """Serve the analytics API (and optionally the web client)."""
    from .server import serve as run_server

    if rule is None:
        rule = f"fixed:{bins}" if bins is not None else "fixed:32"
    try:
        BinRule.parse(rule)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    if ui is not None and not Path(ui).is_dir():
        raise click.ClickException(f"--ui directory not found: {ui}")
    config = SessionConfig(
        manifest=manifest, time_index=time_index, rule=rule, workers=workers
    )
    run_server(config, host=host, port=port, ui_dir=ui)


if __name__ == "__main__":
    main()

"""HTTP/JSON API over one immutable (dataset, time step) session.

All endpoints are GET and pure: the session never mutates after load, so
identical requests return identical bodies. Selection and brushing state
live entirely in the client; axis order and brushes arrive as query
parameters and heavy recomputations are memoized behind an LRU.
"""

from __future__ import annotations

import base64
import threading
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .analytics import NormalizedSlice, PatternClassifier, normalize_slice
from .binning import BinRule, BrushSet, member_histograms
from .dataset import EnsembleDataset, load_dataset
from .pipeline import ApcpResult, adp_layouts, bundled_paths, compute_apcp
from .sections import PALETTE_COLORS, PALETTE_POSITIONS, extract_section


@dataclass
class SessionConfig:
    manifest: Path
    time_index: int = 0
    rule: str = "fixed:32"
    positive_max: float = 0.05
    negative_min: float = 0.30
    workers: int | None = None


class _LruCache:
    """Small thread-safe LRU; values are computed outside the lock."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                return self._data[key]
        return None

    def put(self, key, value):
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.capacity:
                self._data.popitem(last=False)


class Session:
    """Owns the loaded dataset, its normalized slice, and response caches."""

    def __init__(self, config: SessionConfig):
        self.config = config
        self.dataset: EnsembleDataset | None = None
        self.view = None
        self.normalized: NormalizedSlice | None = None
        self.classifier = PatternClassifier(config.positive_max, config.negative_min)
        self.default_rule = BinRule.parse(config.rule)
        self._apcp_cache = _LruCache(16)
        self._bpcp_cache = _LruCache(64)
        self._load_lock = threading.Lock()

    @property
    def loaded(self) -> bool:
        return self.normalized is not None

    def load(self) -> None:
        with self._load_lock:
            if self.loaded:
                return
            dataset = load_dataset(self.config.manifest)
            t = self.config.time_index
            if not 0 <= t < dataset.n_times:
                raise IndexError(f"time index {t} out of range [0, {dataset.n_times})")
            view = dataset.slice_time(t)
            self.dataset = dataset
            self.view = view
            self.normalized = normalize_slice(view)

    def require(self) -> EnsembleDataset:
        if not self.loaded:
            raise HTTPException(status_code=503, detail="dataset still loading")
        return self.dataset

    # ---- parameter parsing -------------------------------------------------

    def resolve_order(self, order_text: str | None) -> tuple[int, ...]:
        ds = self.require()
        if not order_text:
            return tuple(range(ds.n_vars))
        names = [n.strip() for n in order_text.split(",") if n.strip()]
        known = {v.name: v.index for v in ds.variables}
        if sorted(names) != sorted(known):
            raise HTTPException(
                status_code=400,
                detail=f"order must be a permutation of {sorted(known)}, got {names}",
            )
        return tuple(known[n] for n in names)

    def resolve_member(self, member_id: str) -> int:
        ds = self.require()
        try:
            return ds.member_index(member_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown member {member_id!r}")

    def resolve_variable(self, var: str) -> int:
        ds = self.require()
        for v in ds.variables:
            if v.name == var:
                return v.index
        if var.isdigit() and int(var) < ds.n_vars:
            return int(var)
        raise HTTPException(status_code=404, detail=f"unknown variable {var!r}")

    def resolve_brush(self, brush_parts: list[str]) -> BrushSet:
        ds = self.require()
        triples = []
        for part in brush_parts:
            triples.extend(p for p in part.split(",") if p)
        intervals = {}
        for triple in triples:
            fields = triple.split(":")
            if len(fields) != 3:
                raise HTTPException(
                    status_code=400, detail=f"brush must be var:lo:hi, got {triple!r}"
                )
            name, lo_s, hi_s = fields
            known = {v.name: v.index for v in ds.variables}
            if name not in known:
                raise HTTPException(status_code=400, detail=f"unknown brush variable {name!r}")
            try:
                lo, hi = float(lo_s), float(hi_s)
            except ValueError:
                raise HTTPException(
                    status_code=400, detail=f"non-numeric brush bounds in {triple!r}"
                )
            intervals[known[name]] = (lo, hi)
        try:
            return BrushSet(intervals)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    def resolve_rule(self, rule_text: str | None) -> BinRule:
        if not rule_text:
            return self.default_rule
        try:
            return BinRule.parse(rule_text)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    # ---- payload builders --------------------------------------------------

    def apcp_payload(self, order: tuple[int, ...], rescale: bool) -> dict:
        key = (order, rescale)
        cached = self._apcp_cache.get(key)
        if cached is not None:
            return cached
        ds = self.dataset
        result = compute_apcp(
            self.view, order=order, workers=self.config.workers
        )
        layouts = adp_layouts(result, rescale=rescale)
        paths = bundled_paths(result, layouts)
        members_payload = []
        for m, meta in enumerate(ds.members):
            members_payload.append(
                {
                    "id": meta.id,
                    "index": m,
                    "true_state": meta.true_state,
                    "means": [float(v) for v in result.line_means[m]],
                    "paths": [
                        {
                            "pair": pair,
                            "control_points": [
                                [float(x), float(y)]
                                for x, y in paths[m].pair_control_points(pair)
                            ],
                        }
                        for pair in range(result.n_pairs)
                    ],
                }
            )
        payload = {
            "time_index": result.time_index,
            "order": [ds.variables[j].name for j in order],
            "rescale": rescale,
            "n_points": result.n_points,
            "members": members_payload,
            "layouts": [
                self._layout_payload(result, layouts[pair], pair)
                for pair in range(result.n_pairs)
            ],
        }
        self._apcp_cache.put(key, payload)
        return payload

    def _layout_payload(self, result: ApcpResult, layout, pair: int) -> dict:
        ds = self.dataset
        labels = self.classifier.predict(result.angle_var[:, pair])
        points = []
        for row, m in enumerate(layout.members):
            points.append(
                {
                    "member": ds.members[m].id,
                    "index": m,
                    "true_state": ds.members[m].true_state,
                    "x": float(layout.points[row, 0]),
                    "y": float(layout.points[row, 1]),
                    "mean": float(result.angle_mean[m, pair]),
                    "variance": float(result.angle_var[m, pair]),
                    "label": str(labels[m]),
                }
            )
        return {
            "pair": pair,
            "axes": [
                ds.variables[result.order[pair]].name,
                ds.variables[result.order[pair + 1]].name,
            ],
            "band": {
                "x0": layout.band.x0,
                "y0": layout.band.y0,
                "x1": layout.band.x1,
                "y1": layout.band.y1,
            },
            "mean_range": [float(layout.mean_range[0]), float(layout.mean_range[1])],
            "var_range": [float(layout.var_range[0]), float(layout.var_range[1])],
            "points": points,
        }

    def bpcp_payload(self, member: int, brush: BrushSet, rule: BinRule) -> dict:
        brush_key = tuple(sorted(brush.intervals.items()))
        key = (member, str(rule), brush_key)
        cached = self._bpcp_cache.get(key)
        if cached is not None:
            return cached
        ds = self.dataset
        histograms, active = member_histograms(
            self.normalized, member, brush=brush, rule=rule
        )
        payload = {
            "member": ds.members[member].id,
            "index": member,
            "rule": str(rule),
            "active_count": active,
            "n_points": self.normalized.n_points,
            "brush": {
                ds.variables[j].name: [lo, hi]
                for j, (lo, hi) in sorted(brush.intervals.items())
            },
            "pairs": [
                {
                    "pair": h.pair,
                    "axes": [ds.variables[h.pair].name, ds.variables[h.pair + 1].name],
                    "bins_left": h.bins_left,
                    "bins_right": h.bins_right,
                    "bin_edges_left": [float(e) for e in h.edges_left],
                    "bin_edges_right": [float(e) for e in h.edges_right],
                    "cells": [
                        {"bl": bl, "br": br, "count": count}
                        for bl, br, count in h.cells()
                    ],
                }
                for h in histograms
            ],
        }
        self._bpcp_cache.put(key, payload)
        return payload

    def section_payload(self, member: int, variable: int, z: int) -> dict:
        ds = self.dataset
        try:
            section = extract_section(
                self.view, ds.grid, member, variable, z, altitudes=ds.altitudes
            )
        except IndexError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        rgb = section.rgb()
        return {
            "member": ds.members[member].id,
            "index": member,
            "variable": ds.variables[variable].name,
            "var_index": variable,
            "z": z,
            "nx": ds.grid.nx,
            "ny": ds.grid.ny,
            "altitude": section.altitude,
            "values": [[float(v) for v in row] for row in section.values],
            "normalized": [[float(v) for v in row] for row in section.normalized],
            "rgb_base64": base64.b64encode(rgb.tobytes()).decode("ascii"),
        }

    def meta_payload(self) -> dict:
        ds = self.require()
        return {
            "grid_dims": {"nx": ds.grid.nx, "ny": ds.grid.ny, "nz": ds.grid.nz},
            "n_points": ds.n_points,
            "time_index": self.config.time_index,
            "n_times": ds.n_times,
            "times": [float(t) for t in ds.times],
            "variables": [
                {"name": v.name, "unit": v.unit, "index": v.index} for v in ds.variables
            ],
            "members": [
                {"id": m.id, "index": i, "true_state": m.true_state}
                for i, m in enumerate(ds.members)
            ],
            "palette": {
                "positions": list(PALETTE_POSITIONS),
                "colors": [list(c) for c in PALETTE_COLORS],
            },
            "altitudes": list(ds.altitudes) if ds.altitudes is not None else None,
            "rule": str(self.default_rule),
            "thresholds": {
                "positive_max": self.classifier.positive_max,
                "negative_min": self.classifier.negative_min,
            },
        }


def _parse_bool(text: str | None, default: bool = False) -> bool:
    if text is None or text == "":
        return default
    return text.lower() in ("1", "true", "yes", "on")


def create_app(session: Session, ui_dir: Path | None = None) -> FastAPI:
    """Wire the session into a FastAPI app (no state beyond the session).

    With ``ui_dir`` set, the directory is served at / (static client on the
    same origin as the API).
    """
    app = FastAPI(title="ensemble bundled-coordinates API", docs_url=None, redoc_url=None)

    @app.get("/api/meta")
    def meta():
        return JSONResponse(session.meta_payload())

    @app.get("/api/apcp")
    def apcp(order: str | None = None, rescale: str | None = None):
        session.require()
        resolved = session.resolve_order(order)
        return JSONResponse(session.apcp_payload(resolved, _parse_bool(rescale)))

    @app.get("/api/adp")
    def adp(pair: int, rescale: str | None = None, order: str | None = None):
        session.require()
        resolved = session.resolve_order(order)
        n_pairs = len(resolved) - 1
        if not 0 <= pair < n_pairs:
            raise HTTPException(
                status_code=400, detail=f"pair {pair} out of range [0, {n_pairs})"
            )
        payload = session.apcp_payload(resolved, _parse_bool(rescale))
        body = dict(payload["layouts"][pair])
        body["order"] = payload["order"]
        body["rescale"] = payload["rescale"]
        return JSONResponse(body)

    @app.get("/api/bpcp")
    def bpcp(member: str, brush: str | None = None, rule: str | None = None):
        session.require()
        m = session.resolve_member(member)
        brush_set = session.resolve_brush([brush] if brush else [])
        bin_rule = session.resolve_rule(rule)
        return JSONResponse(session.bpcp_payload(m, brush_set, bin_rule))

    @app.get("/api/section")
    def section(member: str, var: str, z: int):
        session.require()
        m = session.resolve_member(member)
        j = session.resolve_variable(var)
        return JSONResponse(session.section_payload(m, j, z))

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def serve(
    config: SessionConfig,
    host: str = "127.0.0.1",
    port: int = 8000,
    ui_dir: Path | None = None,
) -> None:
    """Run the API; the dataset loads in the background (503 until ready)."""
    import uvicorn

    session = Session(config)
    app = create_app(session, ui_dir=ui_dir)
    loader = threading.Thread(target=session.load, daemon=True)
    loader.start()
    uvicorn.run(app, host=host, port=port, log_level="info")

import base64

import numpy as np
import pytest
from fastapi.testclient import TestClient

from apcp.dataset import write_dataset
from apcp.server import Session, SessionConfig, create_app
from apcp.synthetic import SyntheticSpec, generate_synthetic


@pytest.fixture(scope="module")
def served(tmp_path_factory):
    root = tmp_path_factory.mktemp("ds")
    spec = SyntheticSpec(
        grid=(6, 5, 4),
        n_members=3,
        rho=(0.9, -0.9),
        seed=17,
        variable_names=("w", "qc", "pt"),
        true_state_index=2,
    )
    manifest = write_dataset(generate_synthetic(spec), root)
    session = Session(SessionConfig(manifest=manifest, time_index=0))
    session.load()
    return TestClient(create_app(session)), session


def test_meta(served):
    client, session = served
    r = client.get("/api/meta")
    assert r.status_code == 200
    meta = r.json()
    assert len(meta["members"]) == 3
    assert [v["name"] for v in meta["variables"]] == ["w", "qc", "pt"]
    assert meta["grid_dims"] == {"nx": 6, "ny": 5, "nz": 4}
    assert meta["members"][2]["true_state"] is True
    assert meta["palette"]["colors"][0] == [128, 0, 128]
    assert meta["time_index"] == 0


def test_503_before_load(tmp_path):
    session = Session(SessionConfig(manifest=tmp_path / "nope.json"))
    client = TestClient(create_app(session))
    for url in ("/api/meta", "/api/apcp", "/api/bpcp?member=x", "/api/section?member=x&var=w&z=0"):
        assert client.get(url).status_code == 503


def test_unknown_route(served):
    client, _ = served
    assert client.get("/api/bogus").status_code == 404


def test_apcp_identity_order(served):
    client, _ = served
    r = client.get("/api/apcp")
    assert r.status_code == 200
    doc = r.json()
    assert doc["order"] == ["w", "qc", "pt"]
    assert len(doc["members"]) == 3
    member = doc["members"][0]
    assert len(member["means"]) == 3
    assert len(member["paths"]) == 2
    assert len(member["paths"][0]["control_points"]) == 7
    assert len(doc["layouts"]) == 2
    assert len(doc["layouts"][0]["points"]) == 3


def test_apcp_two_variable_reversal(tmp_path):
    spec = SyntheticSpec(grid=(4, 4, 4), n_members=2, rho=(0.7,), seed=3,
                         variable_names=("a", "b"))
    manifest = write_dataset(generate_synthetic(spec), tmp_path)
    session = Session(SessionConfig(manifest=manifest))
    session.load()
    client = TestClient(create_app(session))
    fwd = client.get("/api/apcp", params={"order": "a,b"}).json()
    rev = client.get("/api/apcp", params={"order": "b,a"}).json()
    assert len(fwd["layouts"]) == 1  # one pair for two variables
    for p_fwd, p_rev in zip(fwd["layouts"][0]["points"], rev["layouts"][0]["points"]):
        assert abs(p_fwd["mean"] + p_rev["mean"]) < 1e-12
        assert abs(p_fwd["variance"] - p_rev["variance"]) < 1e-12


def test_apcp_rejects_bad_order(served):
    client, _ = served
    assert client.get("/api/apcp", params={"order": "w,qc,qc"}).status_code == 400
    assert client.get("/api/apcp", params={"order": "w,qc"}).status_code == 400
    assert client.get("/api/apcp", params={"order": "w,qc,nope"}).status_code == 400


def test_apcp_deterministic(served):
    client, _ = served
    a = client.get("/api/apcp", params={"order": "qc,w,pt"})
    b = client.get("/api/apcp", params={"order": "qc,w,pt"})
    assert a.content == b.content


def test_adp_endpoint(served):
    client, _ = served
    r = client.get("/api/adp", params={"pair": 1})
    assert r.status_code == 200
    doc = r.json()
    assert doc["pair"] == 1
    assert doc["axes"] == ["qc", "pt"]
    assert len(doc["points"]) == 3
    assert doc["var_range"][0] == 0.0
    assert client.get("/api/adp", params={"pair": 5}).status_code == 400
    assert client.get("/api/adp", params={"pair": -1}).status_code == 400


def test_adp_rescale(served):
    client, _ = served
    fixed = client.get("/api/adp", params={"pair": 0}).json()
    rescaled = client.get("/api/adp", params={"pair": 0, "rescale": "true"}).json()
    variances = [p["variance"] for p in rescaled["points"]]
    assert rescaled["var_range"] == [min(variances), max(variances)]
    assert fixed["var_range"] != rescaled["var_range"]


def test_bpcp_conservation(served):
    client, session = served
    r = client.get("/api/bpcp", params={"member": "m000"})
    assert r.status_code == 200
    doc = r.json()
    n_points = session.dataset.n_points
    assert doc["active_count"] == n_points
    for pair in doc["pairs"]:
        assert sum(c["count"] for c in pair["cells"]) == doc["active_count"]


def test_bpcp_brush_filters(served):
    client, _ = served
    full = client.get("/api/bpcp", params={"member": "m001"}).json()
    brushed = client.get(
        "/api/bpcp", params={"member": "m001", "brush": "w:0:0.5"}
    ).json()
    assert brushed["active_count"] <= full["active_count"]
    # oracle: count rows whose normalized w value is in [0, 0.5]
    from apcp.analytics import normalize_slice

    _, session = served
    ns = session.normalized
    col = np.asarray(ns.values[1, :, 0], dtype=np.float64)
    assert brushed["active_count"] == int(((col >= 0.0) & (col <= 0.5)).sum())
    for pair in brushed["pairs"]:
        assert sum(c["count"] for c in pair["cells"]) == brushed["active_count"]


def test_bpcp_brush_malformed(served):
    client, _ = served
    assert client.get("/api/bpcp", params={"member": "m000", "brush": "w:0.5"}).status_code == 400
    assert client.get("/api/bpcp", params={"member": "m000", "brush": "nope:0:1"}).status_code == 400
    assert client.get("/api/bpcp", params={"member": "m000", "brush": "w:0.9:0.1"}).status_code == 400
    assert client.get("/api/bpcp", params={"member": "m000", "brush": "w:a:b"}).status_code == 400


def test_bpcp_unknown_member(served):
    client, _ = served
    assert client.get("/api/bpcp", params={"member": "m999"}).status_code == 404


def test_bpcp_rules(served):
    client, _ = served
    fixed = client.get("/api/bpcp", params={"member": "m000", "rule": "fixed:8"}).json()
    assert fixed["pairs"][0]["bins_left"] == 8
    fd = client.get("/api/bpcp", params={"member": "m000", "rule": "fd"}).json()
    assert fd["rule"] == "fd"
    assert client.get("/api/bpcp", params={"member": "m000", "rule": "husk"}).status_code == 400


def test_section_payload(served):
    client, session = served
    r = client.get("/api/section", params={"member": "m000", "var": "qc", "z": 2})
    assert r.status_code == 200
    doc = r.json()
    assert doc["nx"] == 6 and doc["ny"] == 5
    assert len(doc["values"]) == 5 and len(doc["values"][0]) == 6
    rgb = base64.b64decode(doc["rgb_base64"])
    assert len(rgb) == 5 * 6 * 3
    # normalized values consistent with raw via the slice bounds
    view = session.view
    lo = view.var_lo[1]
    hi = view.var_hi[1]
    norm00 = (doc["values"][0][0] - lo) / (hi - lo)
    assert abs(doc["normalized"][0][0] - norm00) < 1e-6


def test_section_bad_indices(served):
    client, _ = served
    assert client.get("/api/section", params={"member": "m000", "var": "qc", "z": 99}).status_code == 400
    assert client.get("/api/section", params={"member": "zzz", "var": "qc", "z": 0}).status_code == 404
    assert client.get("/api/section", params={"member": "m000", "var": "zz", "z": 0}).status_code == 404


def test_section_deterministic(served):
    client, _ = served
    params = {"member": "m002", "var": "w", "z": 1}
    assert client.get("/api/section", params=params).content == client.get(
        "/api/section", params=params
    ).content


def test_load_rejects_bad_time(tmp_path):
    spec = SyntheticSpec(grid=(2, 2, 2), n_members=1, rho=(0.0,), seed=1)
    manifest = write_dataset(generate_synthetic(spec), tmp_path)
    session = Session(SessionConfig(manifest=manifest, time_index=5))
    with pytest.raises(IndexError):
        session.load()


def test_static_ui_mount(tmp_path):
    spec = SyntheticSpec(grid=(2, 2, 2), n_members=1, rho=(0.0,), seed=2)
    manifest = write_dataset(generate_synthetic(spec), tmp_path / "ds")
    ui = tmp_path / "ui"
    ui.mkdir()
    (ui / "index.html").write_text("<html><body>client</body></html>")
    session = Session(SessionConfig(manifest=manifest))
    session.load()
    client = TestClient(create_app(session, ui_dir=ui))
    assert client.get("/").status_code == 200
    assert "client" in client.get("/").text
    assert client.get("/api/meta").status_code == 200  # API routes still win

#!/usr/bin/env python3
"""Regenerate the frontend test fixtures from the real analytics server.

Each fixture is the exact JSON body the server returns for one request; an
index maps (path, query) pairs to fixture files so the node fixture server
can replay them byte-faithfully.
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from apcp.dataset import write_dataset
from apcp.server import Session, SessionConfig, create_app
from apcp.synthetic import SyntheticSpec, generate_synthetic

HERE = Path(__file__).resolve().parent
FIXTURES = HERE.parent / "tests" / "fixtures"

ORDER = "w,qc,pt"

REQUESTS = [
    ("meta", "/api/meta", {}),
    ("apcp", "/api/apcp", {}),
    ("apcp_ordered", "/api/apcp", {"order": ORDER}),
    ("adp_0", "/api/adp", {"pair": "0"}),
    ("adp_0_ordered", "/api/adp", {"pair": "0", "order": ORDER}),
    ("adp_1_ordered", "/api/adp", {"pair": "1", "order": ORDER}),
    ("adp_0_rescale", "/api/adp", {"pair": "0", "rescale": "true"}),
    ("adp_0_rescale_ordered", "/api/adp", {"pair": "0", "rescale": "true", "order": ORDER}),
    ("bpcp_m000", "/api/bpcp", {"member": "m000"}),
    ("bpcp_m000_full", "/api/bpcp", {"member": "m000", "brush": "w:0:1"}),
    ("bpcp_m000_half", "/api/bpcp", {"member": "m000", "brush": "w:0:0.5"}),
    ("bpcp_m000_narrow", "/api/bpcp", {"member": "m000", "brush": "w:0:0.25"}),
    ("bpcp_m000_empty", "/api/bpcp", {"member": "m000", "brush": "w:0:0,qc:1:1"}),
    ("bpcp_m001", "/api/bpcp", {"member": "m001"}),
    ("section_m000_w_0", "/api/section", {"member": "m000", "var": "w", "z": "0"}),
    ("section_m000_w_1", "/api/section", {"member": "m000", "var": "w", "z": "1"}),
    ("section_m000_w_2", "/api/section", {"member": "m000", "var": "w", "z": "2"}),
    ("section_m000_w_3", "/api/section", {"member": "m000", "var": "w", "z": "3"}),
    ("section_m001_w_0", "/api/section", {"member": "m001", "var": "w", "z": "0"}),
    ("section_m000_qc_0", "/api/section", {"member": "m000", "var": "qc", "z": "0"}),
]


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    spec = SyntheticSpec(
        grid=(6, 5, 4),
        n_members=3,
        rho=(0.9, -0.9),
        seed=17,
        variable_names=("w", "qc", "pt"),
        true_state_index=2,
    )
    with tempfile.TemporaryDirectory() as tmp:
        manifest = write_dataset(generate_synthetic(spec), tmp)
        session = Session(SessionConfig(manifest=manifest))
        session.load()
        client = TestClient(create_app(session))
        index = []
        for name, path, params in REQUESTS:
            response = client.get(path, params=params)
            response.raise_for_status()
            out = FIXTURES / f"{name}.json"
            out.write_bytes(response.content)
            index.append({"path": path, "query": params, "file": out.name})
            print(f"wrote {out.relative_to(HERE.parent)}")
        (FIXTURES / "index.json").write_text(json.dumps(index, indent=2) + "\n")


if __name__ == "__main__":
    main()

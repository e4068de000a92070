"""
Serve the book over HTTP
========================

Builds the sample book into snapshot + content bundle files and starts the
read-only service. While it runs, try:

    curl -s localhost:8000/api/toc | python3 -m json.tool
    curl -s localhost:8000/api/node/dsc:binary_system | python3 -m json.tool
    curl -s -X POST localhost:8000/api/query \
         -H 'content-type: application/json' \
         -d '{"seeds": ["dsc:hexadecimal_system", "dsc:binary_system"],
              "target_kind": "QuestionContainer", "k": 5}'

With the reader frontend built (see frontend/ at the repo root), pass its
dist directory via --ui-dir to get the browsable book at the root URL;
equivalently use the CLI:

    bookwalk serve --snapshot snap.tsv --bundle bundle.tsv --ui-dir frontend/dist
"""

import tempfile
from pathlib import Path

import uvicorn

from bookwalk.gateway import BuildManifest, run_build
from bookwalk.service import create_app

HERE = Path(__file__).parent
BOOK = sorted((HERE / "sample_book").glob("*.html"))

workdir = Path(tempfile.mkdtemp(prefix="bookwalk_demo_"))
manifest = BuildManifest(
    files=BOOK,
    snapshot=workdir / "snapshot.tsv",
    bundle=workdir / "bundle.tsv",
)
result = run_build(manifest)
print(f"built {result.graph.node_count} nodes / {result.graph.triple_count} triples -> {workdir}")

ui_dir = HERE.parent / "frontend" / "dist"
app = create_app(
    snapshot=manifest.snapshot,
    bundle=manifest.bundle,
    ui_dir=ui_dir if (ui_dir / "index.html").is_file() else None,
)
uvicorn.run(app, host="127.0.0.1", port=8000)

"""Read-only HTTP service over a built snapshot: book content, node lookups,
typed similarity queries, and the static reader UI.

The chain is built once at startup; every request reads immutable data, so
concurrent identical requests return identical bodies.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import HTMLResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .gateway import Bundle, load_bundle
from .graph import (
    AUTHORED,
    SUB_CLASS_OF,
    KnowledgeGraph,
    NodeRef,
    NodeRefError,
    kind_of,
    load_snapshot,
    parse_container_kind,
)
from .ingest import text_content
from .walk import WalkChain, WalkParams, build_chain, seed_from_nodes, typed_query

PREVIEW_CHARS = 80

_BLOCK_KINDS = {"topic": "topic", "dsc": "description", "q": "question"}

_FALLBACK_INDEX = """<!doctype html>
<html><head><title>bookwalk</title></head>
<body>
<h1>bookwalk service</h1>
<p>No reader UI is installed. API endpoints:</p>
<ul>
<li>GET /api/toc</li>
<li>GET /api/book</li>
<li>GET /api/node/{id}</li>
<li>POST /api/query</li>
</ul>
</body></html>
"""


class QueryRequest(BaseModel):
    seeds: list[str] = Field(min_length=1)
    target_kind: str
    k: int = 10
    gamma: float | None = None
    d_max: int | None = None


def _topic_label(bundle: Bundle, ref: NodeRef) -> str:
    value = bundle.value_of(ref)
    return value if value else ref.local_id


def _toc_tree(g: KnowledgeGraph, bundle: Bundle) -> list[dict]:
    """Topic tree from authored subClassOf edges, ordered by book appearance."""
    topics = [n for n in g.nodes if n.namespace == "topic"]
    order: dict[NodeRef, int] = {}
    for i, (ref, _anchor, _payload) in enumerate(bundle.records):
        if ref.namespace == "topic" and ref not in order:
            order[ref] = i
    topics.sort(key=lambda r: (order.get(r, len(bundle.records)), r))

    def authored_parents(ref: NodeRef) -> list[NodeRef]:
        return [
            p
            for p in g.neighbors(ref, SUB_CLASS_OF)
            if g.provenance_of(ref, SUB_CLASS_OF, p) == AUTHORED
        ]

    children: dict[NodeRef, list[NodeRef]] = {t: [] for t in topics}
    roots: list[NodeRef] = []
    for t in topics:
        parents = authored_parents(t)
        if parents:
            for p in parents:
                children.setdefault(p, []).append(t)
        else:
            roots.append(t)

    def node_json(ref: NodeRef, depth: int) -> dict:
        return {
            "id": str(ref),
            "label": _topic_label(bundle, ref),
            "depth": depth,
            "children": [node_json(c, depth + 1) for c in children.get(ref, [])],
        }

    return [node_json(r, 1) for r in roots]


def _preview(ref: NodeRef, payload: str) -> str:
    text = text_content(payload) if ref.namespace in ("dsc", "q") else payload
    return text[:PREVIEW_CHARS]


def create_app(
    snapshot: str | Path,
    bundle: str | Path,
    ui_dir: str | Path | None = None,
    params: WalkParams = WalkParams(),
) -> FastAPI:
    graph = load_snapshot(snapshot)
    graph.freeze()
    content = load_bundle(bundle)
    chain: WalkChain = build_chain(graph)
    toc = _toc_tree(graph, content)

    app = FastAPI(title="bookwalk", docs_url=None, redoc_url=None)

    @app.get("/api/toc")
    def get_toc():
        return {"roots": toc}

    @app.get("/api/book")
    def get_book():
        blocks = []
        for ref, anchor, payload in content.records:
            entry: dict = {"id": str(ref), "kind": _BLOCK_KINDS[ref.namespace], "anchor": anchor}
            if ref.namespace == "topic":
                entry["text"] = payload
            else:
                entry["html"] = payload
                entry["topics"] = [str(t) for t in graph.neighbors(ref, "typeOf")]
            blocks.append(entry)
        return {"blocks": blocks}

    @app.get("/api/node/{node_id}")
    def get_node(node_id: str):
        try:
            ref = NodeRef.parse(node_id)
        except NodeRefError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        if ref not in graph:
            raise HTTPException(status_code=404, detail=f"unknown node {node_id}")
        edges = {
            label: [str(y) for y in graph.neighbors(ref, label)]
            for label in sorted(graph.out_labels(ref))
        }
        return {
            "id": str(ref),
            "kind": kind_of(ref),
            "value": content.value_of(ref),
            "anchor": content.anchor_of(ref),
            "edges": edges,
        }

    @app.post("/api/query")
    def post_query(request: QueryRequest):
        try:
            target = parse_container_kind(request.target_kind)
            refs = [NodeRef.parse(s) for s in request.seeds]
            query_params = WalkParams(
                gamma=request.gamma if request.gamma is not None else params.gamma,
                d_max=request.d_max if request.d_max is not None else params.d_max,
            )
            if request.k < 1:
                raise ValueError(f"k must be >= 1, got {request.k}")
        except (NodeRefError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        warnings = [f"unknown seed {r}" for r in refs if r not in chain]
        present = [r for r in refs if r in chain]
        if not present:
            raise HTTPException(status_code=400, detail="no seed node is present in the graph")
        result = typed_query(chain, seed_from_nodes(present), target, request.k, query_params)
        entries = []
        for ref, score in result.entries:
            entry = {"id": str(ref), "score": score}
            payload = content.value_of(ref)
            if payload is not None:
                entry["anchor"] = content.anchor_of(ref)
                entry["preview"] = _preview(ref, payload)
            entries.append(entry)
        return {"target_kind": target, "entries": entries, "warnings": warnings}

    index_file = Path(ui_dir) / "index.html" if ui_dir else None
    if index_file and index_file.is_file():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:
        @app.get("/", response_class=HTMLResponse)
        def index():
            return _FALLBACK_INDEX

    return app

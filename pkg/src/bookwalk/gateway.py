"""Command line entry points tying the pipeline together.

Subcommands:

* ``build``  -- compile annotated HTML files into a snapshot (and content bundle)
* ``query``  -- typed similarity query against a snapshot
* ``serve``  -- HTTP service over a snapshot + bundle, plus the reader UI
* ``eval``   -- four-variant ablation report from a judgment file

Persistence is file-backed: the triple snapshot is the interchange format
between build and the other commands, and the content bundle maps block nodes
to their HTML fragments and anchors (one percent-encoded record per line).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import quote, unquote

from .graph import (
    KnowledgeGraph,
    NodeRef,
    NodeRefError,
    load_snapshot,
    parse_container_kind,
    write_snapshot,
)
from .ingest import CorpusDocument, IngestError, compile_documents, description_texts, parse_sources, text_content
from .lexicon import link_terms, load_stopwords
from .reasoner import SubclassCycleError, saturate
from .walk import DEFAULT_D_MAX, DEFAULT_GAMMA, WalkParams, build_chain, seed_from_nodes, typed_query

PREVIEW_CHARS = 80


@dataclass
class BuildManifest:
    """Everything that determines a build; equal manifests give byte-identical outputs."""

    files: list[Path]
    snapshot: Path
    bundle: Path | None = None
    inference: bool = True
    lexical: bool = True
    stopwords: Path | None = None

    @classmethod
    def from_json(cls, path: str | Path) -> "BuildManifest":
        base = Path(path).parent
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        def resolve(p: str) -> Path:
            candidate = Path(p)
            return candidate if candidate.is_absolute() else base / candidate
        return cls(
            files=[resolve(f) for f in data["files"]],
            snapshot=resolve(data["snapshot"]),
            bundle=resolve(data["bundle"]) if data.get("bundle") else None,
            inference=bool(data.get("inference", True)),
            lexical=bool(data.get("lexical", True)),
            stopwords=resolve(data["stopwords"]) if data.get("stopwords") else None,
        )


@dataclass
class BuildResult:
    graph: KnowledgeGraph
    documents: list[CorpusDocument]


def run_build(manifest: BuildManifest) -> BuildResult:
    """Ingest, optionally saturate, optionally link terms; write the artifacts."""
    if not manifest.files:
        raise IngestError("empty corpus: no input files")
    docs = parse_sources([str(f) for f in manifest.files])
    g = compile_documents(docs)
    if manifest.inference:
        g = saturate(g)
    if manifest.lexical:
        stopwords = load_stopwords(manifest.stopwords) if manifest.stopwords else None
        g = link_terms(g, description_texts(docs), stopwords)
    g.freeze()
    write_snapshot(g, manifest.snapshot)
    if manifest.bundle is not None:
        write_bundle(docs, manifest.bundle)
    return BuildResult(g, docs)


# -- content bundle ----------------------------------------------------------


@dataclass
class Bundle:
    """Reading-order records of (node ref, source anchor, payload text).

    Payload is the raw HTML fragment for description/question nodes and the
    display text for topic nodes.
    """

    records: list[tuple[NodeRef, str, str]] = field(default_factory=list)

    def __post_init__(self):
        self.by_ref: dict[NodeRef, tuple[str, str]] = {}
        for ref, anchor, payload in self.records:
            self.by_ref.setdefault(ref, (anchor, payload))

    def value_of(self, ref: NodeRef) -> str | None:
        entry = self.by_ref.get(ref)
        return entry[1] if entry else None

    def anchor_of(self, ref: NodeRef) -> str | None:
        entry = self.by_ref.get(ref)
        return entry[0] if entry else None


def bundle_records(docs: list[CorpusDocument]) -> list[tuple[NodeRef, str, str]]:
    records: list[tuple[NodeRef, str, str]] = []
    for doc in docs:
        for kind, item in doc.reading_order():
            if kind == "topic":
                records.append((item.ref, "", item.text))
            else:
                records.append((item.block_id, item.anchor, item.html_value))
    return records


def write_bundle(docs: list[CorpusDocument], path: str | Path) -> None:
    lines = [
        f"{ref}\t{anchor}\t{quote(payload, safe='')}"
        for ref, anchor, payload in bundle_records(docs)
    ]
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def load_bundle(path: str | Path) -> Bundle:
    records = []
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 3:
            raise ValueError(f"bundle line {line_no}: expected 3 fields, got {len(fields)}")
        ref_text, anchor, payload = fields
        records.append((NodeRef.parse(ref_text), anchor, unquote(payload)))
    return Bundle(records)


# -- CLI ----------------------------------------------------------------------


def _add_walk_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gamma", type=float, default=DEFAULT_GAMMA,
                        help="stopping probability (default %(default)s)")
    parser.add_argument("--d-max", type=int, default=DEFAULT_D_MAX,
                        help="maximum walk steps (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bookwalk",
        description="Knowledge-graph compiler and typed similarity queries for e-textbooks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="compile HTML corpus into snapshot + bundle")
    p_build.add_argument("files", nargs="*", type=Path, help="annotated HTML files in reading order")
    p_build.add_argument("--manifest", type=Path, help="JSON build manifest (overrides other options)")
    p_build.add_argument("--out", type=Path, help="snapshot TSV output path")
    p_build.add_argument("--bundle", type=Path, help="content bundle output path")
    p_build.add_argument("--no-inference", action="store_true", help="skip fact generation")
    p_build.add_argument("--no-lexical", action="store_true", help="skip word linkages")
    p_build.add_argument("--stopwords", type=Path, help="override the built-in stopword list")

    p_query = sub.add_parser("query", help="rank nodes of one kind from seed nodes")
    p_query.add_argument("seeds", nargs="+", help="seed node ids, e.g. dsc:binary_system")
    p_query.add_argument("--snapshot", type=Path, required=True)
    p_query.add_argument("--bundle", type=Path, help="content bundle for result previews")
    p_query.add_argument("--target", required=True, help="container kind of the results")
    p_query.add_argument("-k", type=int, default=10, help="result count (default %(default)s)")
    _add_walk_args(p_query)

    p_serve = sub.add_parser("serve", help="serve the reader UI and query API")
    p_serve.add_argument("--snapshot", type=Path, required=True)
    p_serve.add_argument("--bundle", type=Path, required=True)
    p_serve.add_argument("--ui-dir", type=Path, help="static assets of the reader UI")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    _add_walk_args(p_serve)

    p_eval = sub.add_parser("eval", help="four-variant ablation report")
    p_eval.add_argument("--snapshot", type=Path, required=True)
    p_eval.add_argument("--judgments", type=Path, required=True)
    p_eval.add_argument("-k", type=int, default=10, help="retrieval depth (default %(default)s)")
    p_eval.add_argument("--cutoff", type=int, default=10, help="AP cutoff (default %(default)s)")
    _add_walk_args(p_eval)

    return parser


def cmd_build(args: argparse.Namespace) -> int:
    if args.manifest:
        if args.files or args.out or args.bundle:
            print("error: --manifest replaces positional files/--out/--bundle", file=sys.stderr)
            return 2
        manifest = BuildManifest.from_json(args.manifest)
    else:
        if not args.files or not args.out:
            print("error: build needs input files and --out (or --manifest)", file=sys.stderr)
            return 2
        manifest = BuildManifest(
            files=list(args.files),
            snapshot=args.out,
            bundle=args.bundle,
            inference=not args.no_inference,
            lexical=not args.no_lexical,
            stopwords=args.stopwords,
        )
    result = run_build(manifest)
    counts = result.graph.provenance_counts()
    print(f"nodes: {result.graph.node_count}")
    print(f"triples: {result.graph.triple_count}")
    for prov in ("authored", "inferred", "lexical"):
        print(f"  {prov}: {counts[prov]}")
    print(f"snapshot: {manifest.snapshot}")
    if manifest.bundle is not None:
        print(f"bundle: {manifest.bundle}")
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    g = load_snapshot(args.snapshot)
    bundle = load_bundle(args.bundle) if args.bundle else None
    target = parse_container_kind(args.target)
    params = WalkParams(gamma=args.gamma, d_max=args.d_max)
    seeds = []
    for text in args.seeds:
        ref = NodeRef.parse(text)
        if ref in g:
            seeds.append(ref)
        else:
            print(f"warning: unknown seed {ref}", file=sys.stderr)
    if not seeds:
        print("error: no seed node is present in the snapshot", file=sys.stderr)
        return 1
    chain = build_chain(g)
    result = typed_query(chain, seed_from_nodes(seeds), target, args.k, params)
    for rank, (ref, score) in enumerate(result.entries, start=1):
        line = f"{rank}\t{ref}\t{score:.9f}"
        value = bundle.value_of(ref) if bundle else None
        if value is not None:
            preview = text_content(value) if ref.namespace in ("dsc", "q") else value
            if preview:
                line += f"\t{preview[:PREVIEW_CHARS]}"
        print(line)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        snapshot=args.snapshot,
        bundle=args.bundle,
        ui_dir=args.ui_dir,
        params=WalkParams(gamma=args.gamma, d_max=args.d_max),
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    from .evaluation import format_report, read_judgments, run_ablation

    g = load_snapshot(args.snapshot)
    judgments = read_judgments(args.judgments)
    params = WalkParams(gamma=args.gamma, d_max=args.d_max)
    report = run_ablation(g, judgments, params, k=args.k, cutoff=args.cutoff)
    sys.stdout.write(format_report(report))
    return 0


_COMMANDS = {
    "build": cmd_build,
    "query": cmd_query,
    "serve": cmd_serve,
    "eval": cmd_eval,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (IngestError, SubclassCycleError, NodeRefError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

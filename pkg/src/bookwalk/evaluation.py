"""Ranked-retrieval evaluation (MAP over top-10) and the graph-variant ablation.

The ablation compares four constructions of the same corpus, selected by
triple provenance: authored facts alone, plus word linkages, plus inferred
facts, and all three together.  Each variant rebuilds the walk chain and runs
every judgment query; the report carries MAP and the relative MAP change
against the authored baseline.

Relevance judgments come from files, one query per line:

    query_id<TAB>seed1,seed2,...<TAB>target_kind<TAB>rel1,rel2,...
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .graph import (
    AUTHORED,
    INFERRED,
    LEXICAL,
    KnowledgeGraph,
    NodeRef,
    NodeRefError,
    kind_of,
    parse_container_kind,
)
from .walk import RankedResult, WalkParams, build_chain, seed_from_nodes, typed_query

AUTHORED_ONLY = "authored"
AUTHORED_PLUS_LEXICAL = "authored+lexical"
AUTHORED_PLUS_INFERRED = "authored+inferred"
AUTHORED_PLUS_INFERRED_PLUS_LEXICAL = "authored+inferred+lexical"

ABLATION_VARIANTS: tuple[tuple[str, frozenset[str]], ...] = (
    (AUTHORED_ONLY, frozenset({AUTHORED})),
    (AUTHORED_PLUS_LEXICAL, frozenset({AUTHORED, LEXICAL})),
    (AUTHORED_PLUS_INFERRED, frozenset({AUTHORED, INFERRED})),
    (AUTHORED_PLUS_INFERRED_PLUS_LEXICAL, frozenset({AUTHORED, INFERRED, LEXICAL})),
)


def average_precision(result: RankedResult, relevant: set[NodeRef], cutoff: int = 10) -> float:
    """Average precision of the top ``cutoff`` entries.

    Precision at each relevant hit is summed and normalized by
    ``min(|relevant|, cutoff)``, so queries with fewer relevant items than the
    cutoff are not penalized for the exhausted pool.  Zero when ``relevant``
    is empty.
    """
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    if not relevant:
        return 0.0
    hits = 0
    precision_sum = 0.0
    for i, (ref, _score) in enumerate(result.entries[:cutoff], start=1):
        if ref in relevant:
            hits += 1
            precision_sum += hits / i
    return precision_sum / min(len(relevant), cutoff)


def mean_average_precision(
    results: Sequence[tuple[RankedResult, set[NodeRef]]], cutoff: int = 10
) -> float:
    """Mean of per-query APs as a percentage, rounded to two decimals."""
    if not results:
        raise ValueError("mean average precision of an empty query set")
    total = sum(average_precision(result, relevant, cutoff) for result, relevant in results)
    return round(100.0 * total / len(results), 2)


def delta_map(base: float, variant: float) -> float:
    """Relative MAP change in percent, rounded to two decimals."""
    if base <= 0:
        raise ValueError(f"baseline MAP must be positive, got {base}")
    return round(100.0 * (variant - base) / base, 2)


@dataclass(frozen=True)
class Judgment:
    """One judged query: seeds, target kind, and the relevant node set."""

    query_id: str
    seeds: tuple[NodeRef, ...]
    target_kind: str
    relevant: frozenset[NodeRef]

    def __post_init__(self):
        bad = [r for r in self.relevant if kind_of(r) != self.target_kind]
        if bad:
            listing = ", ".join(str(r) for r in sorted(bad))
            raise ValueError(
                f"judgment {self.query_id!r}: relevant nodes not of kind "
                f"{self.target_kind}: {listing}"
            )


@dataclass(frozen=True)
class JudgmentSet:
    entries: tuple[Judgment, ...]

    def __len__(self) -> int:
        return len(self.entries)


class JudgmentFormatError(ValueError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"judgment line {line_no}: {reason}")
        self.line_no = line_no


def parse_judgments(text: str) -> JudgmentSet:
    entries = []
    seen_ids: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise JudgmentFormatError(line_no, f"expected 4 tab-separated fields, got {len(fields)}")
        query_id, seeds_text, kind_text, rel_text = fields
        if not query_id:
            raise JudgmentFormatError(line_no, "empty query id")
        if query_id in seen_ids:
            raise JudgmentFormatError(line_no, f"duplicate query id {query_id!r}")
        seen_ids.add(query_id)
        try:
            seeds = tuple(NodeRef.parse(s.strip()) for s in seeds_text.split(",") if s.strip())
            relevant = frozenset(NodeRef.parse(r.strip()) for r in rel_text.split(",") if r.strip())
        except NodeRefError as exc:
            raise JudgmentFormatError(line_no, str(exc)) from exc
        if not seeds:
            raise JudgmentFormatError(line_no, "no seed nodes")
        try:
            kind = parse_container_kind(kind_text.strip())
            entries.append(Judgment(query_id, seeds, kind, relevant))
        except ValueError as exc:
            raise JudgmentFormatError(line_no, str(exc)) from exc
    return JudgmentSet(tuple(entries))


def read_judgments(path: str | Path) -> JudgmentSet:
    return parse_judgments(Path(path).read_text(encoding="utf-8"))


@dataclass
class VariantReport:
    """One ablation row: graph size, MAP, change vs baseline, flagged queries."""

    name: str
    nodes: int
    triples: int
    map_pct: float
    delta_pct: float | None
    flagged: list[str] = field(default_factory=list)


@dataclass
class AblationReport:
    rows: list[VariantReport]
    query_count: int


def run_ablation(
    g: KnowledgeGraph,
    judgments: JudgmentSet,
    params: WalkParams = WalkParams(),
    k: int = 10,
    cutoff: int = 10,
) -> AblationReport:
    """Evaluate every judgment query on all four provenance variants.

    Seeds missing from a variant are dropped and the rest renormalized; a
    query whose seeds are all missing scores zero and is flagged on that row.
    """
    if not judgments.entries:
        raise ValueError("no judgment queries")
    rows: list[VariantReport] = []
    base_map: float | None = None
    for name, provenances in ABLATION_VARIANTS:
        sub = g.filter_provenance(provenances)
        chain = build_chain(sub)
        pairs: list[tuple[RankedResult, set[NodeRef]]] = []
        flagged: list[str] = []
        for j in judgments.entries:
            present = [s for s in j.seeds if s in chain]
            if not present:
                flagged.append(j.query_id)
                pairs.append((RankedResult([], j.target_kind), set(j.relevant)))
                continue
            result = typed_query(chain, seed_from_nodes(present), j.target_kind, k, params)
            pairs.append((result, set(j.relevant)))
        map_pct = mean_average_precision(pairs, cutoff)
        if base_map is None:
            base_map = map_pct
            delta = None
        else:
            delta = delta_map(base_map, map_pct) if base_map > 0 else None
        rows.append(VariantReport(name, sub.node_count, sub.triple_count, map_pct, delta, flagged))
    return AblationReport(rows, len(judgments.entries))


def format_report(report: AblationReport) -> str:
    """Human-readable table followed by machine-readable TSV rows."""
    headers = ("variant", "nodes", "triples", "MAP", "dMAP%")
    table: list[tuple[str, str, str, str, str]] = [headers]
    for row in report.rows:
        table.append(
            (
                row.name,
                str(row.nodes),
                str(row.triples),
                f"{row.map_pct:.2f}",
                "-" if row.delta_pct is None else f"{row.delta_pct:.2f}",
            )
        )
    widths = [max(len(r[c]) for r in table) for c in range(len(headers))]
    lines = []
    for i, r in enumerate(table):
        lines.append("  ".join(cell.ljust(widths[c]) for c, cell in enumerate(r)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * widths[c] for c in range(len(headers))))
    for row in report.rows:
        if row.flagged:
            lines.append(f"note: {row.name}: no seeds present for {', '.join(row.flagged)}")
    lines.append("")
    for row in report.rows:
        delta = "-" if row.delta_pct is None else f"{row.delta_pct:.2f}"
        lines.append(f"{row.name}\t{row.nodes}\t{row.triples}\t{row.map_pct:.2f}\t{delta}")
    return "\n".join(lines) + "\n"

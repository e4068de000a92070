"""Typed knowledge-graph core: node identifiers, labeled triples, indexed store.

Nodes live in one of six namespaces (``topic``, ``dsc``, ``q``, ``name``,
``concept``, ``term``) and every namespace maps to a container kind used to
filter typed query output.  Edges carry one of fourteen labels; the label
vocabulary is closed under inversion.  The store is a set of provenance-tagged
triples with exact out/in adjacency indexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator

NAMESPACES = ("topic", "dsc", "q", "name", "concept", "term")

BOOK_CONTAINER = "BookContainer"
QUESTION_CONTAINER = "QuestionContainer"
NAME_CONTAINER = "NameContainer"
CONCEPT_CONTAINER = "ConceptContainer"
TERM_CONTAINER = "TermContainer"

CONTAINER_KINDS = (
    BOOK_CONTAINER,
    QUESTION_CONTAINER,
    NAME_CONTAINER,
    CONCEPT_CONTAINER,
    TERM_CONTAINER,
)

_KIND_BY_NAMESPACE = {
    "topic": BOOK_CONTAINER,
    "dsc": BOOK_CONTAINER,
    "q": QUESTION_CONTAINER,
    "name": NAME_CONTAINER,
    "concept": CONCEPT_CONTAINER,
    "term": TERM_CONTAINER,
}

# Edge vocabulary, inverse pairs listed forward/backward.
SUB_CLASS_OF = "subClassOf"
SUPER_CLASS_OF = "superClassOf"
TYPE_OF = "typeOf"
HAS_INSTANCE = "hasInstance"
NEXT_PAGE = "nextPage"
PREV_PAGE = "prevPage"
IS_QUESTION_OF = "isQuestionOf"
HAS_QUESTION = "hasQuestion"
FROM_DESCRIPTION = "fromDescription"
HAS_NAME = "hasName"
IS_RELATED_TO = "isRelatedTo"
RELATED_FROM = "relatedFrom"
DIC_TERM_FOR = "dicTermFor"
HAS_DIC_TERM = "hasDicTerm"

_INVERSE_PAIRS = (
    (SUB_CLASS_OF, SUPER_CLASS_OF),
    (TYPE_OF, HAS_INSTANCE),
    (NEXT_PAGE, PREV_PAGE),
    (IS_QUESTION_OF, HAS_QUESTION),
    (FROM_DESCRIPTION, HAS_NAME),
    (IS_RELATED_TO, RELATED_FROM),
    (DIC_TERM_FOR, HAS_DIC_TERM),
)

INVERSE: dict[str, str] = {}
for _fwd, _bwd in _INVERSE_PAIRS:
    INVERSE[_fwd] = _bwd
    INVERSE[_bwd] = _fwd

EDGE_LABELS = tuple(INVERSE)

AUTHORED = "authored"
INFERRED = "inferred"
LEXICAL = "lexical"
PROVENANCES = (AUTHORED, INFERRED, LEXICAL)


def inverse(label: str) -> str:
    """Return the inverse edge label; total involution over the vocabulary."""
    try:
        return INVERSE[label]
    except KeyError:
        raise ValueError(f"unknown edge label: {label!r}") from None


class NodeRefError(ValueError):
    """Malformed node reference string, with the offending character position."""

    def __init__(self, text: str, position: int, reason: str):
        super().__init__(f"invalid node ref {text!r} at position {position}: {reason}")
        self.text = text
        self.position = position
        self.reason = reason


@dataclass(frozen=True, order=True)
class NodeRef:
    """Namespaced identifier of a graph node, e.g. ``dsc:Turing_model``.

    Ordering follows the canonical string form, which downstream code relies
    on for deterministic iteration and tie-breaking.
    """

    namespace: str
    local_id: str

    def __post_init__(self):
        if self.namespace not in _KIND_BY_NAMESPACE:
            raise ValueError(f"unknown namespace: {self.namespace!r}")
        if not self.local_id:
            raise ValueError("empty local id")
        for ch in self.local_id:
            if ch == ":" or ch.isspace():
                raise ValueError(f"forbidden character {ch!r} in local id {self.local_id!r}")

    @classmethod
    def parse(cls, text: str) -> "NodeRef":
        """Parse the canonical ``<namespace>:<local_id>`` form.

        Raises :class:`NodeRefError` carrying the position of the offending
        character (the expected-colon position when the separator is missing).
        """
        if not text:
            raise NodeRefError(text, 0, "empty string")
        sep = text.find(":")
        if sep < 0:
            raise NodeRefError(text, len(text), "missing ':' separator")
        namespace = text[:sep]
        if namespace not in _KIND_BY_NAMESPACE:
            raise NodeRefError(text, 0, f"unknown namespace {namespace!r}")
        local = text[sep + 1 :]
        if not local:
            raise NodeRefError(text, sep + 1, "empty local id")
        for i, ch in enumerate(local):
            if ch == ":" or ch.isspace():
                raise NodeRefError(text, sep + 1 + i, f"forbidden character {ch!r}")
        return cls(namespace, local)

    def canonical(self) -> str:
        return f"{self.namespace}:{self.local_id}"

    def __str__(self) -> str:
        return self.canonical()


def kind_of(ref: NodeRef) -> str:
    """Container kind of a node; total deterministic mapping from namespace."""
    return _KIND_BY_NAMESPACE[ref.namespace]


_KIND_ALIASES = {
    "book": BOOK_CONTAINER,
    "question": QUESTION_CONTAINER,
    "name": NAME_CONTAINER,
    "concept": CONCEPT_CONTAINER,
    "term": TERM_CONTAINER,
}


def parse_container_kind(text: str) -> str:
    """Container kind from its canonical name or short alias (e.g. ``question``)."""
    if text in CONTAINER_KINDS:
        return text
    kind = _KIND_ALIASES.get(text.lower())
    if kind is None:
        raise ValueError(
            f"unknown container kind {text!r}; expected one of "
            f"{', '.join(CONTAINER_KINDS)} or {', '.join(_KIND_ALIASES)}"
        )
    return kind


@dataclass(frozen=True)
class Triple:
    """One unit of graph knowledge: (subject, predicate, object) + provenance."""

    subject: NodeRef
    predicate: str
    object: NodeRef
    provenance: str = AUTHORED

    def __post_init__(self):
        if self.predicate not in INVERSE:
            raise ValueError(f"unknown edge label: {self.predicate!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance: {self.provenance!r}")
        if self.predicate == SUB_CLASS_OF and self.subject == self.object:
            raise ValueError(f"subClassOf self-loop on {self.subject}")

    def key(self) -> tuple[NodeRef, str, NodeRef]:
        return (self.subject, self.predicate, self.object)


class GraphFrozenError(RuntimeError):
    """Mutation attempted on a frozen graph."""


class KnowledgeGraph:
    """Set of nodes plus labeled directed multigraph with exact dual indexes.

    Insertion is idempotent on (subject, predicate, object); the first
    provenance wins.  After :meth:`freeze` the graph rejects mutation and may
    be shared across threads.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        self._nodes: set[NodeRef] = set()
        self._spo: dict[tuple[NodeRef, str, NodeRef], str] = {}
        self._out: dict[NodeRef, dict[str, set[NodeRef]]] = {}
        self._in: dict[NodeRef, dict[str, set[NodeRef]]] = {}
        self._frozen = False
        for t in triples:
            self.add(t)

    # -- construction -----------------------------------------------------

    def add(self, t: Triple) -> None:
        """Insert a triple; both endpoints join the node set. Idempotent."""
        if self._frozen:
            raise GraphFrozenError("graph is frozen")
        key = t.key()
        if key in self._spo:
            return
        self._spo[key] = t.provenance
        self._nodes.add(t.subject)
        self._nodes.add(t.object)
        self._out.setdefault(t.subject, {}).setdefault(t.predicate, set()).add(t.object)
        self._in.setdefault(t.object, {}).setdefault(t.predicate, set()).add(t.subject)

    def add_node(self, ref: NodeRef) -> None:
        """Insert a node without edges (may become a dangling chain state)."""
        if self._frozen:
            raise GraphFrozenError("graph is frozen")
        self._nodes.add(ref)

    def freeze(self) -> "KnowledgeGraph":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    def copy(self) -> "KnowledgeGraph":
        """Unfrozen deep-enough copy (indexes rebuilt from shared refs)."""
        g = KnowledgeGraph()
        g._nodes = set(self._nodes)
        g._spo = dict(self._spo)
        g._out = {s: {p: set(objs) for p, objs in by_p.items()} for s, by_p in self._out.items()}
        g._in = {o: {p: set(subs) for p, subs in by_p.items()} for o, by_p in self._in.items()}
        return g

    # -- queries ----------------------------------------------------------

    @property
    def nodes(self) -> frozenset[NodeRef]:
        return frozenset(self._nodes)

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def triple_count(self) -> int:
        return len(self._spo)

    def __contains__(self, ref: NodeRef) -> bool:
        return ref in self._nodes

    def has_triple(self, s: NodeRef, p: str, o: NodeRef) -> bool:
        return (s, p, o) in self._spo

    def provenance_of(self, s: NodeRef, p: str, o: NodeRef) -> str | None:
        return self._spo.get((s, p, o))

    def triples(self) -> Iterator[Triple]:
        """All triples in deterministic (canonical subject, predicate, object) order."""
        for s, p, o in sorted(self._spo, key=lambda k: (k[0], k[1], k[2])):
            yield Triple(s, p, o, self._spo[(s, p, o)])

    def out_labels(self, x: NodeRef) -> set[str]:
        """Labels with at least one edge out of ``x``; empty for unknown nodes."""
        return set(self._out.get(x, ()))

    def neighbors(self, x: NodeRef, label: str) -> list[NodeRef]:
        """Objects of ``(x, label, ·)`` edges in canonical order; empty when none."""
        return sorted(self._out.get(x, {}).get(label, ()))

    def in_neighbors(self, x: NodeRef, label: str) -> list[NodeRef]:
        """Subjects of ``(·, label, x)`` edges in canonical order."""
        return sorted(self._in.get(x, {}).get(label, ()))

    def nodes_of_kind(self, kind: str) -> list[NodeRef]:
        return sorted(n for n in self._nodes if kind_of(n) == kind)

    def filter_provenance(self, keep: Iterable[str]) -> "KnowledgeGraph":
        """New graph holding only triples whose provenance is in ``keep``.

        Nodes are the endpoints of the kept triples; isolated nodes drop out.
        """
        kept = set(keep)
        g = KnowledgeGraph()
        for (s, p, o), prov in self._spo.items():
            if prov in kept:
                g.add(Triple(s, p, o, prov))
        return g

    def provenance_counts(self) -> dict[str, int]:
        counts = {prov: 0 for prov in PROVENANCES}
        for prov in self._spo.values():
            counts[prov] += 1
        return counts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return self._nodes == other._nodes and self._spo == other._spo

    def __repr__(self) -> str:
        return f"KnowledgeGraph(nodes={len(self._nodes)}, triples={len(self._spo)})"


# -- snapshot interchange --------------------------------------------------
#
# One triple per line, "subject<TAB>predicate<TAB>object<TAB>provenance",
# lines sorted lexicographically; '#'-prefixed comment lines are ignored.


class SnapshotFormatError(ValueError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"snapshot line {line_no}: {reason}")
        self.line_no = line_no


def dump_snapshot(g: KnowledgeGraph) -> str:
    lines = [
        f"{s}\t{p}\t{o}\t{prov}"
        for (s, p, o), prov in ((k, v) for k, v in g._spo.items())
    ]
    return "".join(line + "\n" for line in sorted(lines))


def write_snapshot(g: KnowledgeGraph, dest: str | Path | IO[str]) -> None:
    text = dump_snapshot(g)
    if hasattr(dest, "write"):
        dest.write(text)  # type: ignore[union-attr]
    else:
        Path(dest).write_text(text, encoding="utf-8")


def load_snapshot(source: str | Path | IO[str]) -> KnowledgeGraph:
    if hasattr(source, "read"):
        text = source.read()  # type: ignore[union-attr]
    else:
        text = Path(source).read_text(encoding="utf-8")
    return parse_snapshot(text)


def parse_snapshot(text: str) -> KnowledgeGraph:
    g = KnowledgeGraph()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise SnapshotFormatError(line_no, f"expected 4 tab-separated fields, got {len(fields)}")
        s_text, predicate, o_text, provenance = fields
        try:
            s = NodeRef.parse(s_text)
            o = NodeRef.parse(o_text)
        except NodeRefError as exc:
            raise SnapshotFormatError(line_no, str(exc)) from exc
        if predicate not in INVERSE:
            raise SnapshotFormatError(line_no, f"unknown edge label {predicate!r}")
        if provenance not in PROVENANCES:
            raise SnapshotFormatError(line_no, f"unknown provenance {provenance!r}")
        try:
            g.add(Triple(s, predicate, o, provenance))
        except ValueError as exc:
            raise SnapshotFormatError(line_no, str(exc)) from exc
    return g

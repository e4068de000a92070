"""Parse annotated HTML teaching material into authored triples.

Annotation syntax
-----------------
* Descriptions are elements whose ``id`` starts with ``o:descp:``; the rest of
  the id is the description's local id.
* Questions are elements whose ``id`` starts with ``o:q:``; they must carry a
  ``data-question-of`` attribute listing the target description element ids
  (comma separated, ``o:descp:...`` form).
* Headings ``h1``..``h6`` declare topics; the topic id is the slugged heading
  text (lowercase, whitespace runs to ``_``, colons dropped) unless a
  ``data-topic-id`` attribute overrides it.
* ``data-topics`` on a description adds extra topics (comma-separated topic
  ids that must be declared by headings in the same file).
* Inline elements with ``data-name-id`` inside a description mark name spans.
* ``data-concept`` on a description or name span links it to concept nodes.

The parser is tolerant: unclosed tags are repaired the way browsers repair
them (an end tag closes everything above its match; a new heading closes an
open one; stray end tags are ignored).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser
from pathlib import Path
from typing import Iterable, Sequence

from .graph import (
    AUTHORED,
    FROM_DESCRIPTION,
    IS_QUESTION_OF,
    IS_RELATED_TO,
    NEXT_PAGE,
    SUB_CLASS_OF,
    TYPE_OF,
    KnowledgeGraph,
    NodeRef,
    Triple,
)

DESCRIPTION_ID_PREFIX = "o:descp:"
QUESTION_ID_PREFIX = "o:q:"

_HEADING_TAGS = {"h1": 1, "h2": 2, "h3": 3, "h4": 4, "h5": 5, "h6": 6}
_VOID_ELEMENTS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)


class IngestError(ValueError):
    """Any failure while turning HTML into triples; message carries context."""


def slug_topic(text: str) -> str:
    """Topic local id from heading text: lowercase, whitespace to ``_``, no colons."""
    return "_".join(text.lower().split()).replace(":", "")


def collapse_whitespace(text: str) -> str:
    return " ".join(text.split())


@dataclass
class TopicHeading:
    """One heading occurrence: its topic node, display text, depth and parent."""

    ref: NodeRef
    text: str
    depth: int
    parent: NodeRef | None
    order: int = 0


@dataclass
class ContentBlock:
    """A description or question block in document order."""

    block_id: NodeRef
    enclosing_topics: list[NodeRef]
    html_value: str
    anchor: str
    source: str
    offset: int
    question_targets: list[NodeRef] = field(default_factory=list)
    name_spans: list[tuple[NodeRef, str]] = field(default_factory=list)
    concept_refs: list[tuple[NodeRef, NodeRef]] = field(default_factory=list)

    @property
    def is_question(self) -> bool:
        return self.block_id.namespace == "q"


@dataclass
class CorpusDocument:
    """Parsed view of one HTML file: title, heading outline, ordered blocks."""

    title: str
    source: str
    topics: list[TopicHeading]
    blocks: list[ContentBlock]

    def topic_refs(self) -> set[NodeRef]:
        return {t.ref for t in self.topics}

    def description_blocks(self) -> list[ContentBlock]:
        return [b for b in self.blocks if not b.is_question]

    def question_blocks(self) -> list[ContentBlock]:
        return [b for b in self.blocks if b.is_question]

    def reading_order(self) -> list[tuple[str, object]]:
        """Headings and blocks interleaved in document order.

        Yields ``("topic", TopicHeading)`` and ``("block", ContentBlock)``
        pairs; used to emit the content bundle in book order.
        """
        merged: list[tuple[int, str, object]] = [
            (t.order, "topic", t) for t in self.topics
        ]
        merged.extend((b.offset, "block", b) for b in self.blocks)
        merged.sort(key=lambda item: item[0])
        return [(kind, obj) for _, kind, obj in merged]


def _attr_list(value: str) -> list[str]:
    return [part.strip() for part in value.split(",") if part.strip()]


class _Frame:
    __slots__ = ("tag", "role", "content_start", "start", "payload")

    def __init__(self, tag: str, role: str | None, content_start: int, start: int, payload: dict):
        self.tag = tag
        self.role = role  # None | "heading" | "block" | "namespan" | "title"
        self.content_start = content_start
        self.start = start
        self.payload = payload


class _DocumentBuilder(HTMLParser):
    """Tolerant single-pass builder tracking heading scope and block extents."""

    def __init__(self, text: str, source: str):
        super().__init__(convert_charrefs=True)
        self.text = text
        self.source = source
        self.line_starts = [0]
        for i, ch in enumerate(text):
            if ch == "\n":
                self.line_starts.append(i + 1)
        self.stack: list[_Frame] = []
        self.scope: list[tuple[int, NodeRef]] = []  # (depth, topic ref)
        self.topics: list[TopicHeading] = []
        self.blocks: list[ContentBlock] = []
        self.block_offsets: dict[str, int] = {}  # element id -> char offset
        self.title: str | None = None
        self._order = 0

    # -- helpers -----------------------------------------------------------

    def _pos(self) -> int:
        line, col = self.getpos()
        return self.line_starts[line - 1] + col

    def _byte_offset(self, char_offset: int) -> int:
        return len(self.text[:char_offset].encode("utf-8"))

    def _fail(self, message: str, char_offset: int | None = None) -> None:
        where = self.source
        if char_offset is not None:
            where += f" (byte {self._byte_offset(char_offset)})"
        raise IngestError(f"{where}: {message}")

    def _frame_with_role(self, role: str) -> _Frame | None:
        for frame in reversed(self.stack):
            if frame.role == role:
                return frame
        return None

    def _parse_ref(self, namespace: str, local: str, pos: int, what: str) -> NodeRef:
        try:
            return NodeRef(namespace, local)
        except ValueError as exc:
            self._fail(f"bad {what} {local!r}: {exc}", pos)
            raise AssertionError  # unreachable

    # -- tag handling --------------------------------------------------------

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]):
        pos = self._pos()
        raw = self.get_starttag_text() or ""
        attr: dict[str, str] = {}
        for k, v in attrs:
            attr.setdefault(k, v or "")
        self._open(tag, attr, pos, content_start=pos + len(raw))

    def handle_startendtag(self, tag: str, attrs: list[tuple[str, str | None]]):
        pos = self._pos()
        raw = self.get_starttag_text() or ""
        attr: dict[str, str] = {}
        for k, v in attrs:
            attr.setdefault(k, v or "")
        content_start = pos + len(raw)
        self._open(tag, attr, pos, content_start)
        if tag not in _VOID_ELEMENTS:
            self._close_through(len(self.stack) - 1, content_start)

    def _open(self, tag: str, attr: dict[str, str], pos: int, content_start: int):
        element_id = attr.get("id", "")
        is_dsc = element_id.startswith(DESCRIPTION_ID_PREFIX)
        is_q = element_id.startswith(QUESTION_ID_PREFIX)
        in_block = self._frame_with_role("block")
        in_heading = self._frame_with_role("heading")

        if tag in _VOID_ELEMENTS:
            if is_dsc or is_q:
                self._fail(f"block id {element_id!r} on void element <{tag}>", pos)
            return

        role: str | None = None
        payload: dict = {}

        if is_dsc or is_q:
            if tag in _HEADING_TAGS:
                self._fail(f"block id {element_id!r} on heading element", pos)
            if "data-name-id" in attr:
                self._fail(f"block {element_id!r} also carries data-name-id", pos)
            if in_heading is not None:
                self._fail(f"block {element_id!r} inside a heading", pos)
            if in_block is not None:
                self._fail(
                    f"nested block {element_id!r} inside {in_block.payload['anchor']!r}", pos
                )
            if element_id in self.block_offsets:
                first = self._byte_offset(self.block_offsets[element_id])
                here = self._byte_offset(pos)
                raise IngestError(
                    f"{self.source}: duplicate block id {element_id!r} at bytes {first} and {here}"
                )
            self.block_offsets[element_id] = pos
            role = "block"
            payload["anchor"] = element_id
            payload["offset"] = pos
            payload["name_spans"] = []
            payload["concept_refs"] = []
            if is_dsc:
                ref = self._parse_ref("dsc", element_id[len(DESCRIPTION_ID_PREFIX):], pos, "description id")
                if "data-question-of" in attr:
                    self._fail(f"description {element_id!r} carries data-question-of", pos)
                extras = [
                    self._parse_ref("topic", t, pos, "topic id in data-topics")
                    for t in _attr_list(attr.get("data-topics", ""))
                ]
                if not self.scope and not extras:
                    self._fail(f"orphan block {element_id!r}: no heading in scope", pos)
                topics = ([self.scope[-1][1]] if self.scope else []) + extras
                payload["targets"] = []
            else:
                ref = self._parse_ref("q", element_id[len(QUESTION_ID_PREFIX):], pos, "question id")
                if "data-topics" in attr:
                    self._fail(f"question {element_id!r} carries data-topics", pos)
                raw_targets = _attr_list(attr.get("data-question-of", ""))
                if not raw_targets:
                    self._fail(f"question {element_id!r} has no data-question-of targets", pos)
                targets = []
                for t in raw_targets:
                    if not t.startswith(DESCRIPTION_ID_PREFIX):
                        self._fail(
                            f"question {element_id!r} target {t!r} is not a description id", pos
                        )
                    targets.append(
                        self._parse_ref("dsc", t[len(DESCRIPTION_ID_PREFIX):], pos, "question target")
                    )
                if not self.scope:
                    self._fail(f"orphan block {element_id!r}: no heading in scope", pos)
                topics = [self.scope[-1][1]]
                payload["targets"] = targets
            payload["ref"] = ref
            payload["topics"] = topics
            for c in _attr_list(attr.get("data-concept", "")):
                payload["concept_refs"].append(
                    (ref, self._parse_ref("concept", c, pos, "concept id"))
                )
        elif "data-name-id" in attr:
            if in_block is None:
                self._fail("name annotation outside any description block", pos)
            if in_block.payload["ref"].namespace != "dsc":
                self._fail("name annotation inside a question block", pos)
            if self._frame_with_role("namespan") is not None:
                self._fail("nested name annotation", pos)
            role = "namespan"
            ref = self._parse_ref("name", attr["data-name-id"], pos, "name id")
            payload["ref"] = ref
            payload["text"] = []
            for c in _attr_list(attr.get("data-concept", "")):
                in_block.payload["concept_refs"].append(
                    (ref, self._parse_ref("concept", c, pos, "concept id"))
                )
        elif tag in _HEADING_TAGS and in_block is None:
            if in_heading is not None:
                # Browsers close an open heading when a new one starts.
                self._close_through(self.stack.index(in_heading), pos)
            role = "heading"
            payload["depth"] = _HEADING_TAGS[tag]
            payload["text"] = []
            payload["topic_id"] = attr.get("data-topic-id")
            payload["pos"] = pos
        elif tag == "title" and self.title is None and in_block is None:
            role = "title"
            payload["text"] = []

        self.stack.append(_Frame(tag, role, content_start, pos, payload))

    def handle_endtag(self, tag: str):
        if tag in _VOID_ELEMENTS:
            return
        for i in range(len(self.stack) - 1, -1, -1):
            if self.stack[i].tag == tag:
                self._close_through(i, self._pos())
                return
        # Stray end tag: ignore.

    def _close_through(self, index: int, content_end: int):
        while len(self.stack) > index:
            frame = self.stack.pop()
            self._finalize(frame, content_end)

    def _finalize(self, frame: _Frame, content_end: int):
        if frame.role == "heading":
            text = collapse_whitespace("".join(frame.payload["text"]))
            topic_id = frame.payload["topic_id"]
            if topic_id is None:
                if not text:
                    self._fail("heading without text or data-topic-id", frame.start)
                topic_id = slug_topic(text)
            ref = self._parse_ref("topic", topic_id, frame.start, "topic id")
            while self.scope and self.scope[-1][0] >= frame.payload["depth"]:
                self.scope.pop()
            parent = self.scope[-1][1] if self.scope else None
            self.scope.append((frame.payload["depth"], ref))
            self.topics.append(
                TopicHeading(ref, text, frame.payload["depth"], parent, order=frame.start)
            )
        elif frame.role == "block":
            value = self.text[frame.content_start:max(frame.content_start, content_end)]
            self.blocks.append(
                ContentBlock(
                    block_id=frame.payload["ref"],
                    enclosing_topics=frame.payload["topics"],
                    html_value=value,
                    anchor=frame.payload["anchor"],
                    source=self.source,
                    offset=frame.payload["offset"],
                    question_targets=frame.payload["targets"],
                    name_spans=frame.payload["name_spans"],
                    concept_refs=frame.payload["concept_refs"],
                )
            )
        elif frame.role == "namespan":
            block = self._frame_with_role("block")
            assert block is not None
            text = collapse_whitespace("".join(frame.payload["text"]))
            block.payload["name_spans"].append((frame.payload["ref"], text))
        elif frame.role == "title":
            self.title = collapse_whitespace("".join(frame.payload["text"]))

    def handle_data(self, data: str):
        for frame in reversed(self.stack):
            if frame.role in ("heading", "namespan", "title"):
                frame.payload["text"].append(data)
                break
            if frame.role == "block":
                break

    def finish(self) -> CorpusDocument:
        self.close()
        self._close_through(0, len(self.text))
        title = self.title
        if not title:
            title = self.topics[0].text if self.topics else self.source
        return CorpusDocument(title=title, source=self.source, topics=self.topics, blocks=self.blocks)


def parse_document(data: bytes | str, source: str = "<input>") -> CorpusDocument:
    """Parse one annotated HTML file into its document structure."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise IngestError(f"{source}: not valid UTF-8 ({exc})") from exc
    else:
        text = data
    builder = _DocumentBuilder(text, source)
    builder.feed(text)
    return builder.finish()


# -- extraction (the three authoring procedures + annotations) ---------------


def extract_topic_hierarchy(doc: CorpusDocument) -> list[Triple]:
    """Child-to-parent subClassOf triples from the heading outline."""
    seen: set[tuple[NodeRef, NodeRef]] = set()
    edges: list[tuple[NodeRef, NodeRef]] = []
    for heading in doc.topics:
        if heading.parent is None:
            continue
        pair = (heading.ref, heading.parent)
        if pair[0] == pair[1]:
            raise IngestError(f"{doc.source}: topic {pair[0]} nested under itself")
        if pair not in seen:
            seen.add(pair)
            edges.append(pair)
    cycle = _hierarchy_cycle(edges)
    if cycle:
        listing = " -> ".join(str(r) for r in cycle)
        raise IngestError(f"{doc.source}: topic hierarchy cycle: {listing}")
    return [Triple(child, SUB_CLASS_OF, parent, AUTHORED) for child, parent in edges]


def _hierarchy_cycle(edges: Iterable[tuple[NodeRef, NodeRef]]) -> list[NodeRef] | None:
    succ: dict[NodeRef, list[NodeRef]] = {}
    for child, parent in edges:
        succ.setdefault(child, []).append(parent)
    WHITE, GREY, BLACK = 0, 1, 2
    color: dict[NodeRef, int] = {}
    for root in succ:
        if color.get(root, WHITE) != WHITE:
            continue
        path = [root]
        stack = [(root, 0)]
        color[root] = GREY
        while stack:
            node, i = stack[-1]
            nxt_list = succ.get(node, [])
            if i < len(nxt_list):
                stack[-1] = (node, i + 1)
                nxt = nxt_list[i]
                c = color.get(nxt, WHITE)
                if c == GREY:
                    return path[path.index(nxt):]
                if c == WHITE:
                    color[nxt] = GREY
                    path.append(nxt)
                    stack.append((nxt, 0))
            else:
                color[node] = BLACK
                path.pop()
                stack.pop()
    return None


def extract_descriptions(doc: CorpusDocument) -> list[Triple]:
    """nextPage chain over consecutive descriptions; questions do not break it."""
    chain = doc.description_blocks()
    return [
        Triple(a.block_id, NEXT_PAGE, b.block_id, AUTHORED)
        for a, b in zip(chain, chain[1:])
    ]


def link_topics(doc: CorpusDocument) -> list[Triple]:
    """typeOf triples binding each description to its enclosing topics."""
    declared = doc.topic_refs()
    triples: list[Triple] = []
    for block in doc.description_blocks():
        emitted: set[NodeRef] = set()
        for topic in block.enclosing_topics:
            if topic not in declared:
                raise IngestError(
                    f"{doc.source}: description {block.block_id} references "
                    f"undeclared topic {topic}"
                )
            if topic not in emitted:
                emitted.add(topic)
                triples.append(Triple(block.block_id, TYPE_OF, topic, AUTHORED))
    return triples


def extract_questions(
    doc: CorpusDocument, known_descriptions: set[NodeRef] | None = None
) -> list[Triple]:
    """isQuestionOf triples; targets are validated when ``known_descriptions``
    is given (cross-file targets are resolved at corpus level)."""
    triples = []
    for block in doc.question_blocks():
        for target in block.question_targets:
            if known_descriptions is not None and target not in known_descriptions:
                raise IngestError(
                    f"{doc.source}: question {block.block_id} targets missing "
                    f"description {target}"
                )
            triples.append(Triple(block.block_id, IS_QUESTION_OF, target, AUTHORED))
    return triples


def extract_annotations(doc: CorpusDocument) -> list[Triple]:
    """fromDescription triples for name spans, isRelatedTo for concept refs."""
    triples = []
    for block in doc.blocks:
        for name_ref, _text in block.name_spans:
            triples.append(Triple(name_ref, FROM_DESCRIPTION, block.block_id, AUTHORED))
        for subject, concept in block.concept_refs:
            if subject.namespace not in ("dsc", "name"):
                raise IngestError(
                    f"{doc.source}: concept ref subject {subject} is neither a "
                    f"description nor a name"
                )
            triples.append(Triple(subject, IS_RELATED_TO, concept, AUTHORED))
    return triples


def compile_documents(docs: Sequence[CorpusDocument]) -> KnowledgeGraph:
    """Merge all extraction outputs into one authored graph.

    Description ids must be unique corpus-wide; question targets may point
    into any file; description chains never cross file boundaries.
    """
    seen_blocks: dict[NodeRef, str] = {}
    for doc in docs:
        for block in doc.blocks:
            if block.block_id in seen_blocks:
                raise IngestError(
                    f"duplicate block id {block.block_id} in {seen_blocks[block.block_id]} "
                    f"and {doc.source}"
                )
            seen_blocks[block.block_id] = doc.source
    corpus_descriptions = {b.block_id for d in docs for b in d.description_blocks()}
    g = KnowledgeGraph()
    for doc in docs:
        for t in extract_topic_hierarchy(doc):
            g.add(t)
        for t in extract_descriptions(doc):
            g.add(t)
        for t in link_topics(doc):
            g.add(t)
        for t in extract_questions(doc, corpus_descriptions):
            g.add(t)
        for t in extract_annotations(doc):
            g.add(t)
    from .reasoner import find_subclass_cycle  # local import avoids a cycle

    merged_cycle = find_subclass_cycle(g)
    if merged_cycle:
        listing = " -> ".join(str(r) for r in merged_cycle)
        raise IngestError(f"topic hierarchy cycle across files: {listing}")
    return g


def compile_corpus(sources: Sequence[str | Path | tuple[str, bytes]]) -> KnowledgeGraph:
    """Parse and merge a corpus given file paths or (name, bytes) pairs."""
    if not sources:
        raise IngestError("empty corpus: no input files")
    return compile_documents(parse_sources(sources))


def parse_sources(sources: Sequence[str | Path | tuple[str, bytes]]) -> list[CorpusDocument]:
    docs = []
    for src in sources:
        if isinstance(src, tuple):
            name, data = src
        else:
            name = str(src)
            data = Path(src).read_bytes()
        docs.append(parse_document(data, source=name))
    return docs


# -- plain-text extraction ---------------------------------------------------


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in ("script", "style"):
            self._skip_depth += 1

    def handle_endtag(self, tag):
        if tag in ("script", "style") and self._skip_depth:
            self._skip_depth -= 1

    def handle_data(self, data):
        if not self._skip_depth:
            self.parts.append(data)


def text_content(html: str) -> str:
    """Markup-stripped, whitespace-collapsed text of an HTML fragment."""
    extractor = _TextExtractor()
    extractor.feed(html)
    extractor.close()
    return collapse_whitespace("".join(extractor.parts))


def description_texts(docs: Iterable[CorpusDocument]) -> dict[NodeRef, str]:
    """Stripped text per description, the input to term extraction."""
    return {
        block.block_id: text_content(block.html_value)
        for doc in docs
        for block in doc.description_blocks()
    }

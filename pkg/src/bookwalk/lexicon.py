"""Automatic term extraction and word-linkage generation.

Words are pulled out of description text and attached to their descriptions
with ``dicTermFor`` edges, densifying the graph and making free-text seeds
possible.  One term node exists per distinct token corpus-wide.

Tokenization is fixed so triple counts are reproducible: lowercase, split on
non-alphanumerics with hyphens kept word-internal, drop tokens shorter than
three characters and stopwords, dedupe keeping first occurrence.  The bundled
stopword list (one word per line) is normative; callers may override it.
"""

from __future__ import annotations

import re
from importlib import resources
from pathlib import Path
from typing import Mapping

from .graph import DIC_TERM_FOR, LEXICAL, KnowledgeGraph, NodeRef, Triple

_TOKEN_RE = re.compile(r"[a-z0-9]+(?:-[a-z0-9]+)*")
_MIN_TOKEN_LEN = 3

_default_stopwords: frozenset[str] | None = None


def default_stopwords() -> frozenset[str]:
    """The bundled stopword list, loaded once."""
    global _default_stopwords
    if _default_stopwords is None:
        text = resources.files(__package__).joinpath("stopwords.txt").read_text("utf-8")
        _default_stopwords = _parse_stopwords(text)
    return _default_stopwords


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Stopwords from a one-word-per-line UTF-8 file."""
    return _parse_stopwords(Path(path).read_text(encoding="utf-8"))


def _parse_stopwords(text: str) -> frozenset[str]:
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def tokenize(text: str, stopwords: frozenset[str] | None = None) -> list[str]:
    """Distinct term surfaces of a stripped description text, in first-occurrence order."""
    if stopwords is None:
        stopwords = default_stopwords()
    seen: set[str] = set()
    out: list[str] = []
    for token in _TOKEN_RE.findall(text.lower()):
        if len(token) < _MIN_TOKEN_LEN or token in stopwords or token in seen:
            continue
        seen.add(token)
        out.append(token)
    return out


def term_ref(surface: str) -> NodeRef:
    return NodeRef("term", surface)


def link_terms(
    g: KnowledgeGraph,
    values: Mapping[NodeRef, str],
    stopwords: frozenset[str] | None = None,
) -> KnowledgeGraph:
    """Graph extended with ``(term:t, dicTermFor, d)`` for every token of every
    description text; provenance ``lexical``.  Idempotent.

    The reverse ``hasDicTerm`` edges appear only if inverse materialization is
    run (or re-run) afterwards.
    """
    out = g.copy()
    for dsc in sorted(values):
        for surface in tokenize(values[dsc], stopwords):
            out.add(Triple(term_ref(surface), DIC_TERM_FOR, dsc, LEXICAL))
    return out

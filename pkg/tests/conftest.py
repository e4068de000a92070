from __future__ import annotations

from pathlib import Path

import pytest

from bookwalk.graph import KnowledgeGraph, NodeRef, Triple

FIXTURES = Path(__file__).parent / "fixtures"

# The worked five-topic/five-description chapter: 14 authored triples,
# 11 distinct nodes.  Kept as plain string tuples so the tests stay
# independent of the ingest path.
WORKED_TRIPLES: tuple[tuple[str, str, str], ...] = (
    ("topic:Turing_model", "subClassOf", "topic:Chapter_1"),
    ("topic:Von_Neumann_model", "subClassOf", "topic:Chapter_1"),
    ("topic:Data_processors", "subClassOf", "topic:Turing_model"),
    ("topic:Universal_machine", "subClassOf", "topic:Turing_model"),
    ("topic:Subsystems", "subClassOf", "topic:Von_Neumann_model"),
    ("dsc:Turing_model", "nextPage", "dsc:Data_processors"),
    ("dsc:Data_processors", "nextPage", "dsc:Universalturingmachine"),
    ("dsc:Universalturingmachine", "nextPage", "dsc:VonNeumannmodel"),
    ("dsc:VonNeumannmodel", "nextPage", "dsc:FourSubsystems"),
    ("dsc:Turing_model", "typeOf", "topic:Turing_model"),
    ("dsc:Data_processors", "typeOf", "topic:Data_processors"),
    ("dsc:Universalturingmachine", "typeOf", "topic:Universal_machine"),
    ("dsc:VonNeumannmodel", "typeOf", "topic:Von_Neumann_model"),
    ("dsc:FourSubsystems", "typeOf", "topic:Subsystems"),
)


def triple(s: str, p: str, o: str, provenance: str = "authored") -> Triple:
    return Triple(NodeRef.parse(s), p, NodeRef.parse(o), provenance)


def graph_from(triples) -> KnowledgeGraph:
    g = KnowledgeGraph()
    for s, p, o in triples:
        g.add(triple(s, p, o))
    return g


@pytest.fixture
def worked_graph() -> KnowledgeGraph:
    return graph_from(WORKED_TRIPLES)


@pytest.fixture
def worked_html_path() -> Path:
    return FIXTURES / "worked_example.html"


@pytest.fixture
def corpus_paths() -> list[Path]:
    return [FIXTURES / "book1.html", FIXTURES / "book2.html"]


@pytest.fixture
def judgments_path() -> Path:
    return FIXTURES / "judgments.tsv"

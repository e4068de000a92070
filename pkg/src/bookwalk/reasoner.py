"""Forward-chaining fact generation over the knowledge graph.

Three monotone rules are applied to a least fixpoint:

* subclass transitivity   -- (A subClassOf B), (B subClassOf C) => (A subClassOf C)
* type propagation        -- (d typeOf B), (B subClassOf C)     => (d typeOf C)
* inverse materialization -- (s, p, o)                          => (o, inverse(p), s)

Generated triples carry ``inferred`` provenance.  Reflexive subClassOf/typeOf
triples are never emitted; a subClassOf cycle is a hard error since topic
hierarchies are expected to be trees or DAGs.
"""

from __future__ import annotations

from .graph import (
    INFERRED,
    SUB_CLASS_OF,
    TYPE_OF,
    KnowledgeGraph,
    NodeRef,
    Triple,
    inverse,
)


class SubclassCycleError(ValueError):
    """A subClassOf cycle was found; lists the participating nodes."""

    def __init__(self, members: list[NodeRef]):
        listing = ", ".join(str(m) for m in sorted(members))
        super().__init__(f"subClassOf cycle: {listing}")
        self.members = sorted(members)


def _subclass_edges(g: KnowledgeGraph) -> dict[NodeRef, list[NodeRef]]:
    return {
        x: g.neighbors(x, SUB_CLASS_OF)
        for x in sorted(g.nodes)
        if SUB_CLASS_OF in g.out_labels(x)
    }


def find_subclass_cycle(g: KnowledgeGraph) -> list[NodeRef] | None:
    """Members of one subClassOf cycle, or None when the relation is acyclic."""
    edges = _subclass_edges(g)
    WHITE, GREY, BLACK = 0, 1, 2
    color: dict[NodeRef, int] = {}
    for root in edges:
        if color.get(root, WHITE) != WHITE:
            continue
        stack: list[tuple[NodeRef, int]] = [(root, 0)]
        path: list[NodeRef] = []
        color[root] = GREY
        path.append(root)
        while stack:
            node, i = stack[-1]
            succs = edges.get(node, [])
            if i < len(succs):
                stack[-1] = (node, i + 1)
                nxt = succs[i]
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


def _apply_subclass_closure(g: KnowledgeGraph) -> int:
    """Add one round of full transitive closure in place. Returns triples added."""
    cycle = find_subclass_cycle(g)
    if cycle is not None:
        raise SubclassCycleError(cycle)
    edges = _subclass_edges(g)
    added = 0
    for start in edges:
        # DFS over current edges collects all strict ancestors of `start`.
        seen: set[NodeRef] = set()
        frontier = list(edges.get(start, []))
        while frontier:
            node = frontier.pop()
            if node in seen:
                continue
            seen.add(node)
            frontier.extend(edges.get(node, []))
        for anc in seen:
            if anc != start and not g.has_triple(start, SUB_CLASS_OF, anc):
                g.add(Triple(start, SUB_CLASS_OF, anc, INFERRED))
                added += 1
    return added


def _apply_type_propagation(g: KnowledgeGraph) -> int:
    added = 0
    for d in sorted(g.nodes):
        if TYPE_OF not in g.out_labels(d):
            continue
        for b in g.neighbors(d, TYPE_OF):
            for c in g.neighbors(b, SUB_CLASS_OF):
                if c != d and not g.has_triple(d, TYPE_OF, c):
                    g.add(Triple(d, TYPE_OF, c, INFERRED))
                    added += 1
    return added


def _apply_inverses(g: KnowledgeGraph) -> int:
    added = 0
    for t in list(g.triples()):
        inv = inverse(t.predicate)
        if not g.has_triple(t.object, inv, t.subject):
            g.add(Triple(t.object, inv, t.subject, INFERRED))
            added += 1
    return added


def subclass_closure(g: KnowledgeGraph) -> KnowledgeGraph:
    """Graph extended with the transitive closure of subClassOf.

    Raises :class:`SubclassCycleError` when the authored hierarchy is cyclic.
    """
    out = g.copy()
    _apply_subclass_closure(out)
    return out


def type_propagation(g: KnowledgeGraph) -> KnowledgeGraph:
    """Graph extended with typeOf lifted along subClassOf edges.

    Intended to run after :func:`subclass_closure`; with the closure in place
    a single join reaches every ancestor.
    """
    out = g.copy()
    _apply_type_propagation(out)
    return out


def materialize_inverses(g: KnowledgeGraph) -> KnowledgeGraph:
    """Graph extended with (o, inverse(p), s) for every triple (s, p, o)."""
    out = g.copy()
    _apply_inverses(out)
    return out


def saturate(g: KnowledgeGraph) -> KnowledgeGraph:
    """Least fixpoint of all three rules; the input graph is left untouched.

    The rule order inside one round is irrelevant for the result (rules are
    monotone), rounds repeat until nothing new is derivable.
    """
    out = g.copy()
    while True:
        added = _apply_subclass_closure(out)
        added += _apply_type_propagation(out)
        added += _apply_inverses(out)
        if added == 0:
            return out

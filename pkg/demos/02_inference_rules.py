"""
Enrich the graph with inferred facts
====================================

Three forward-chaining rules run to a fixpoint: subclass transitivity,
type propagation along the class hierarchy, and inverse materialization for
every edge label. Authored facts stay marked ``authored``; everything new is
``inferred``, which is what the evaluation demo later switches on and off.
"""

from bookwalk import KnowledgeGraph, NodeRef, Triple, materialize_inverses, saturate

# A miniature hierarchy: one chapter, one section, one page, one question.
chapter = NodeRef.parse("topic:numbers")
section = NodeRef.parse("topic:binary")
page = NodeRef.parse("dsc:binary_intro")
question = NodeRef.parse("q:read_binary")

g = KnowledgeGraph()
g.add(Triple(section, "subClassOf", chapter))
g.add(Triple(page, "typeOf", section))
g.add(Triple(question, "isQuestionOf", page))

print(f"authored: {g.triple_count} triples")

def show(refs):
    return ", ".join(str(r) for r in refs)


# Inverses alone: every edge becomes walkable in both directions.
both_ways = materialize_inverses(g)
print(f"with inverses: {both_ways.triple_count} triples")
print(f"  chapter now lists its sections: {show(both_ways.neighbors(chapter, 'superClassOf'))}")
print(f"  page now lists its questions:   {show(both_ways.neighbors(page, 'hasQuestion'))}")

# Full saturation: the page is also an instance of the chapter.
saturated = saturate(g)
print(f"\nsaturated: {saturated.triple_count} triples")
print(f"  page types: {show(saturated.neighbors(page, 'typeOf'))}")
print(f"  chapter instances: {show(saturated.neighbors(chapter, 'hasInstance'))}")

# The fixpoint is stable: saturating again changes nothing.
assert saturate(saturated) == saturated
print("\nsaturate(saturate(g)) == saturate(g)")

for t in saturated.triples():
    print(f"  [{t.provenance:8}] {t.subject} {t.predicate} {t.object}")

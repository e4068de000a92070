"""
Typed similarity queries by lazy random walk
============================================

The saturated graph becomes a Markov chain: leaving a node means first picking
one of its outgoing edge labels uniformly, then a target of that label
uniformly. A walker stops with probability 0.5 at every step; ranking nodes by
their stop probability (truncated at ten steps) answers queries like
"questions related to these two paragraphs".

The classic demonstration: record the hexadecimal paragraph and the binary
paragraph -- neither mentions conversion -- and ask for related questions.
The conversion question comes back first, because many short labeled paths
(shared topics, shared terms, question links) funnel the walker there.
"""

from pathlib import Path

from bookwalk import (
    NodeRef,
    build_chain,
    compile_corpus,
    description_texts,
    link_terms,
    parse_document,
    saturate,
    seed_from_nodes,
    transition,
    typed_query,
)

HERE = Path(__file__).parent
BOOK = sorted((HERE / "sample_book").glob("*.html"))

docs = [parse_document(p.read_bytes(), source=p.name) for p in BOOK]
graph = link_terms(saturate(compile_corpus(BOOK)), description_texts(docs))
chain = build_chain(graph)
print(f"chain over {chain.size} nodes")

# One-step transition out of the binary description, for intuition.
binary = NodeRef.parse("dsc:binary_system")
print(f"\none step out of {binary}:")
for ref, p in sorted(transition(chain, binary).items(), key=lambda kv: -kv[1])[:6]:
    print(f"  {p:.4f}  {ref}")

# The recorded-paragraphs query.
seeds = seed_from_nodes([NodeRef.parse("dsc:hexadecimal_system"), binary])
print("\nquestions related to the hexadecimal + binary paragraphs:")
for rank, (ref, score) in enumerate(typed_query(chain, seeds, "QuestionContainer", k=5).entries, 1):
    print(f"  {rank}. {score:.9f}  {ref}")

# Words work as seeds too, thanks to the automatic term linkage.
term = seed_from_nodes([NodeRef.parse("term:octal")])
print("\ndescriptions related to the word 'octal':")
for rank, (ref, score) in enumerate(typed_query(chain, term, "BookContainer", k=5).entries, 1):
    print(f"  {rank}. {score:.9f}  {ref}")

"""bookwalk: knowledge-graph compilation and typed similarity queries for e-textbooks.

Pipeline: annotated HTML -> authored triples -> rule saturation -> word
linkages -> Markov chain -> truncated lazy-walk queries, with a MAP-based
ablation harness, a CLI and an HTTP service on top.
"""

from .graph import (
    AUTHORED,
    BOOK_CONTAINER,
    CONCEPT_CONTAINER,
    CONTAINER_KINDS,
    EDGE_LABELS,
    INFERRED,
    LEXICAL,
    NAME_CONTAINER,
    QUESTION_CONTAINER,
    TERM_CONTAINER,
    KnowledgeGraph,
    NodeRef,
    NodeRefError,
    Triple,
    dump_snapshot,
    inverse,
    kind_of,
    load_snapshot,
    parse_container_kind,
    parse_snapshot,
    write_snapshot,
)
from .ingest import (
    ContentBlock,
    CorpusDocument,
    IngestError,
    compile_corpus,
    compile_documents,
    description_texts,
    extract_annotations,
    extract_descriptions,
    extract_questions,
    extract_topic_hierarchy,
    link_topics,
    parse_document,
    text_content,
)
from .lexicon import default_stopwords, link_terms, load_stopwords, tokenize
from .reasoner import (
    SubclassCycleError,
    materialize_inverses,
    saturate,
    subclass_closure,
    type_propagation,
)
from .walk import (
    RankedResult,
    SeedDistribution,
    StopDistribution,
    WalkChain,
    WalkParams,
    build_chain,
    lazy_walk,
    seed_from_nodes,
    step_distribution,
    transition,
    typed_query,
)
from .evaluation import (
    AblationReport,
    Judgment,
    JudgmentSet,
    average_precision,
    delta_map,
    format_report,
    mean_average_precision,
    read_judgments,
    run_ablation,
)

__version__ = "0.1.0"

from __future__ import annotations

import pytest

from bookwalk.evaluation import (
    ABLATION_VARIANTS,
    Judgment,
    JudgmentFormatError,
    average_precision,
    delta_map,
    format_report,
    mean_average_precision,
    parse_judgments,
    read_judgments,
    run_ablation,
)
from bookwalk.graph import NodeRef
from bookwalk.ingest import compile_corpus, description_texts, parse_sources
from bookwalk.lexicon import link_terms
from bookwalk.reasoner import saturate
from bookwalk.walk import RankedResult


def ranked(*ids: str) -> RankedResult:
    entries = [(NodeRef.parse(i), 1.0 - 0.01 * n) for n, i in enumerate(ids)]
    return RankedResult(entries, "QuestionContainer")


def refs(*ids: str) -> set[NodeRef]:
    return {NodeRef.parse(i) for i in ids}


# -- average precision ------------------------------------------------------------


def test_ap_hand_computed():
    result = ranked("q:r1", "q:x", "q:r2")
    assert average_precision(result, refs("q:r1", "q:r2")) == pytest.approx((1 / 1 + 2 / 3) / 2)


def test_ap_perfect_ranking():
    assert average_precision(ranked("q:a", "q:b"), refs("q:a", "q:b")) == 1.0


def test_ap_nothing_relevant_retrieved():
    assert average_precision(ranked("q:x", "q:y"), refs("q:r")) == 0.0


def test_ap_empty_relevant_set():
    assert average_precision(ranked("q:x"), set()) == 0.0


def test_ap_cutoff_limits_hits():
    result = ranked(*(f"q:x{i}" for i in range(10)), "q:r")
    assert average_precision(result, refs("q:r"), cutoff=10) == 0.0
    assert average_precision(result, refs("q:r"), cutoff=11) == pytest.approx(1 / 11)


def test_ap_normalizer_is_min_of_pool_and_cutoff():
    # 15 relevant but only 10 can ever appear in the top 10
    relevant = refs(*(f"q:r{i}" for i in range(15)))
    result = ranked(*(f"q:r{i}" for i in range(10)))
    assert average_precision(result, relevant, cutoff=10) == 1.0


def test_ap_invariant_to_nonrelevant_reshuffling_below_cutoff():
    relevant = refs("q:r")
    a = average_precision(ranked("q:x", "q:r", "q:y", "q:z"), relevant)
    b = average_precision(ranked("q:x", "q:r", "q:z", "q:y"), relevant)
    assert a == b


def test_ap_bounds():
    result = ranked("q:r1", "q:x", "q:r2")
    assert 0.0 <= average_precision(result, refs("q:r1", "q:r2")) <= 1.0


# -- MAP and delta ------------------------------------------------------------------


def test_map_single_query():
    result = ranked("q:r1", "q:x", "q:r2", "q:r3")
    # AP = (1 + 2/3 + 3/4)/3 = 0.805555... -> 80.56
    assert mean_average_precision([(result, refs("q:r1", "q:r2", "q:r3"))]) == 80.56


def test_map_two_queries_mean():
    perfect = (ranked("q:a"), refs("q:a"))
    zero = (ranked("q:x"), refs("q:r"))
    assert mean_average_precision([perfect, zero]) == 50.00


def test_map_all_zero():
    zero = (ranked("q:x"), refs("q:r"))
    assert mean_average_precision([zero, zero]) == 0.00


def test_map_empty_rejected():
    with pytest.raises(ValueError):
        mean_average_precision([])


def test_delta_map_known_roundings():
    assert delta_map(41.78, 43.27) == pytest.approx(3.57, abs=0.01)
    assert delta_map(41.78, 67.87) == pytest.approx(62.45, abs=0.01)
    assert delta_map(41.78, 68.62) == pytest.approx(64.24, abs=0.01)


def test_delta_map_identity_and_errors():
    assert delta_map(41.78, 41.78) == 0.0
    with pytest.raises(ValueError):
        delta_map(0.0, 10.0)


# -- judgment files -------------------------------------------------------------------


def test_parse_judgments_round_trip(judgments_path):
    js = read_judgments(judgments_path)
    assert len(js) == 5
    j1 = js.entries[0]
    assert j1.query_id == "j1"
    assert j1.seeds == (NodeRef.parse("dsc:hexadecimal"), NodeRef.parse("dsc:binary"))
    assert j1.target_kind == "QuestionContainer"
    assert j1.relevant == frozenset(refs("q:conv_hex_bin", "q:binary_place"))


@pytest.mark.parametrize(
    "line,fragment",
    [
        ("j1\tdsc:a\tQuestionContainer", "expected 4"),
        ("j1\t\tQuestionContainer\tq:a", "no seed nodes"),
        ("j1\tdsc:a\tMysteryContainer\tq:a", "unknown container kind"),
        ("j1\tdsc a\tQuestionContainer\tq:a", "invalid node ref"),
        ("\tdsc:a\tQuestionContainer\tq:a", "empty query id"),
    ],
)
def test_parse_judgments_rejects_malformed(line, fragment):
    with pytest.raises(JudgmentFormatError) as err:
        parse_judgments("# comment\n" + line + "\n")
    assert err.value.line_no == 2
    assert fragment in str(err.value)


def test_judgment_relevant_kind_mismatch():
    with pytest.raises(ValueError) as err:
        Judgment("j", (NodeRef.parse("dsc:a"),), "QuestionContainer", frozenset(refs("dsc:b")))
    assert "not of kind" in str(err.value)


def test_duplicate_query_id():
    text = "j1\tdsc:a\tquestion\tq:x\nj1\tdsc:b\tquestion\tq:y\n"
    with pytest.raises(JudgmentFormatError):
        parse_judgments(text)


# -- ablation harness -------------------------------------------------------------------


@pytest.fixture(scope="module")
def full_fixture_graph(request):
    fixtures = request.path.parent / "fixtures"
    paths = [fixtures / "book1.html", fixtures / "book2.html"]
    docs = parse_sources([str(p) for p in paths])
    g = compile_corpus(paths)
    g = saturate(g)
    return link_terms(g, description_texts(docs))


@pytest.fixture(scope="module")
def fixture_report(full_fixture_graph, request):
    judgments = read_judgments(request.path.parent / "fixtures" / "judgments.tsv")
    return run_ablation(full_fixture_graph, judgments)


def test_ablation_has_four_rows_in_table_order(fixture_report):
    assert [row.name for row in fixture_report.rows] == [name for name, _ in ABLATION_VARIANTS]


def test_ablation_triple_counts_monotone(fixture_report):
    base = fixture_report.rows[0]
    for row in fixture_report.rows[1:]:
        assert row.triples >= base.triples
        assert row.nodes >= base.nodes


def test_ablation_frozen_regression_values(fixture_report):
    # Frozen from one full-pipeline oracle run over the fixture corpus.
    got = [
        (row.name, row.nodes, row.triples, row.map_pct, row.delta_pct, row.flagged)
        for row in fixture_report.rows
    ]
    assert got == [
        ("authored", 21, 27, 3.33, None, ["j4"]),
        ("authored+lexical", 62, 89, 3.33, 0.0, []),
        ("authored+inferred", 21, 68, 55.0, 1551.65, ["j4"]),
        ("authored+inferred+lexical", 62, 130, 71.67, 2052.25, []),
    ]


def test_ablation_full_variant_beats_baseline(fixture_report):
    assert fixture_report.rows[-1].map_pct >= fixture_report.rows[0].map_pct


def test_ablation_deterministic(full_fixture_graph, judgments_path):
    judgments = read_judgments(judgments_path)
    a = run_ablation(full_fixture_graph, judgments)
    b = run_ablation(full_fixture_graph, judgments)
    assert format_report(a) == format_report(b)


def test_ablation_flags_absent_seed_queries(fixture_report):
    # term seeds exist only in the lexical variants
    assert "j4" in fixture_report.rows[0].flagged
    assert "j4" in fixture_report.rows[2].flagged
    assert "j4" not in fixture_report.rows[1].flagged
    assert "j4" not in fixture_report.rows[3].flagged


def test_report_formatting(fixture_report):
    text = format_report(fixture_report)
    lines = text.splitlines()
    assert lines[0].startswith("variant")
    machine = [l for l in lines if l.startswith("authored\t")]
    assert machine == ["authored\t21\t27\t3.33\t-"]

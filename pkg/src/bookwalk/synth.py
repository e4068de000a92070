"""Deterministic synthetic corpus generator.

Produces annotated HTML chapters shaped like real teaching material (chapter,
section and subsection headings, description chains, questions, name spans and
concept refs) with pseudo-word text.  Identical arguments produce identical
bytes, so builds over generated corpora are reproducible.  The default sizing
comfortably exceeds 1600 nodes and 14,000 triples after a full build.
"""

from __future__ import annotations

import random
from pathlib import Path

from .lexicon import default_stopwords

_CONSONANTS = "bcdfgklmnprstvz"
_VOWELS = "aeiou"


def _make_vocabulary(rng: random.Random, size: int) -> list[str]:
    stop = default_stopwords()
    words: list[str] = []
    seen: set[str] = set()
    while len(words) < size:
        syllables = rng.randint(2, 4)
        word = "".join(
            rng.choice(_CONSONANTS) + rng.choice(_VOWELS) for _ in range(syllables)
        )
        if len(word) < 4 or word in stop or word in seen:
            continue
        seen.add(word)
        words.append(word)
    return words


def generate_corpus(
    out_dir: str | Path,
    chapters: int = 16,
    sections_per_chapter: int = 5,
    subsections_per_section: int = 2,
    descriptions_per_subsection: int = 3,
    questions_per_section: int = 2,
    words_per_description: int = 28,
    vocabulary_size: int = 600,
    seed: int = 0,
) -> list[Path]:
    """Write one HTML file per chapter; returns the paths in reading order."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    vocab = _make_vocabulary(rng, vocabulary_size)
    fillers = ("the", "of", "a", "is", "in", "and", "for", "with")
    concepts = [f"c_{w}" for w in vocab[:40]]
    paths: list[Path] = []
    dsc_counter = 0
    q_counter = 0
    name_counter = 0

    def sentence(n: int) -> str:
        parts = []
        for i in range(n):
            if i and i % 4 == 0:
                parts.append(rng.choice(fillers))
            parts.append(rng.choice(vocab))
        return " ".join(parts)

    for ch in range(1, chapters + 1):
        lines: list[str] = []
        lines.append("<!doctype html>")
        lines.append(f"<html><head><title>Chapter {ch}</title></head><body>")
        chapter_word = vocab[(ch * 7) % len(vocab)]
        lines.append(f'<h1 data-topic-id="ch{ch}">Chapter {ch} {chapter_word}</h1>')
        section_ids = [f"ch{ch}_s{s}" for s in range(1, sections_per_chapter + 1)]
        for s in range(1, sections_per_chapter + 1):
            section_dscs: list[str] = []
            lines.append(
                f'<h2 data-topic-id="ch{ch}_s{s}">Section {ch}.{s} {rng.choice(vocab)}</h2>'
            )
            for sub in range(1, subsections_per_section + 1):
                lines.append(
                    f'<h3 data-topic-id="ch{ch}_s{s}_{sub}">Part {ch}.{s}.{sub} '
                    f"{rng.choice(vocab)}</h3>"
                )
                for _ in range(descriptions_per_subsection):
                    dsc_counter += 1
                    dsc_id = f"d{dsc_counter}"
                    section_dscs.append(dsc_id)
                    extras = ""
                    if dsc_counter % 7 == 0:
                        other = rng.choice([x for x in section_ids if x != f"ch{ch}_s{s}"])
                        extras = f' data-topics="{other}"'
                    concept_attr = ""
                    if dsc_counter % 3 == 0:
                        concept_attr = f' data-concept="{rng.choice(concepts)}"'
                    body = sentence(words_per_description)
                    if dsc_counter % 2 == 0:
                        name_counter += 1
                        span_word = rng.choice(vocab)
                        body += (
                            f' <span data-name-id="n{name_counter}">{span_word}</span>'
                            f" {sentence(4)}"
                        )
                    lines.append(
                        f'<div id="o:descp:{dsc_id}"{extras}{concept_attr}>'
                        f"<p>{body}</p></div>"
                    )
            for _ in range(questions_per_section):
                q_counter += 1
                targets = rng.sample(section_dscs, k=min(2, len(section_dscs)))
                target_attr = ",".join(f"o:descp:{t}" for t in targets)
                lines.append(
                    f'<div id="o:q:q{q_counter}" data-question-of="{target_attr}">'
                    f"<p>What is {rng.choice(vocab)} {rng.choice(vocab)}?</p></div>"
                )
        lines.append("</body></html>")
        path = out / f"chapter_{ch:02d}.html"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        paths.append(path)
    return paths


def generate_judgments(
    out_path: str | Path,
    corpus_paths: list[Path],
    queries: int = 8,
    seed: int = 0,
) -> Path:
    """Synthetic judgment file: seeds are the targets of a question, the
    relevant set is every question sharing at least one of those targets."""
    from .ingest import parse_sources

    rng = random.Random(seed)
    docs = parse_sources([str(p) for p in corpus_paths])
    target_map: dict[str, list[str]] = {}
    for doc in docs:
        for block in doc.question_blocks():
            for t in block.question_targets:
                target_map.setdefault(str(t), []).append(str(block.block_id))
    questions = sorted({q for qs in target_map.values() for q in qs})
    lines = []
    for i in range(queries):
        q = questions[(i * 31) % len(questions)]
        seeds = sorted(t for t, qs in target_map.items() if q in qs)
        relevant = sorted({peer for s in seeds for peer in target_map[s]})
        rng.shuffle(seeds)
        lines.append(f"syn{i + 1}\t{','.join(seeds)}\tQuestionContainer\t{','.join(relevant)}")
    path = Path(out_path)
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    return path

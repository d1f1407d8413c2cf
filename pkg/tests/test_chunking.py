import math
import random

import pytest

from kg2data.errors import ChunkingError
from kg2data.kg.chunking import chunk_corpus, chunk_document, count_tokens, reassemble


def make_doc(n_tokens, tag="w"):
    return " ".join(f"{tag}{i}" for i in range(n_tokens))


def expected_chunks(total, target, overlap):
    if total <= target:
        return 1
    return math.ceil((total - overlap) / (target - overlap))


def test_thousand_token_doc_with_300_50_gives_four_chunks():
    # closed form: ceil((1000-50)/(300-50)) = 4, cross-checked by reassembly below
    chunks = chunk_document("d", make_doc(1000), 300, 50)
    assert len(chunks) == 4
    assert reassemble(chunks)["d"] == make_doc(1000).split()


def test_short_doc_is_one_chunk_identical_to_doc():
    doc = make_doc(80)
    chunks = chunk_document("d", doc, 300, 50)
    assert len(chunks) == 1
    assert chunks[0].text == doc
    assert chunks[0].span == (0, 80)


def test_overlap_equal_to_target_is_an_error():
    with pytest.raises(ChunkingError):
        chunk_document("d", make_doc(10), 300, 300)
    with pytest.raises(ChunkingError):
        chunk_document("d", make_doc(10), 300, -1)


def test_consecutive_chunks_overlap_exactly():
    chunks = chunk_document("d", make_doc(1000), 300, 50)
    for left, right in zip(chunks, chunks[1:]):
        assert left.span[1] - right.span[0] == 50
        assert left.text.split()[-50:] == right.text.split()[:50]


def test_chunk_counts_match_closed_form_on_random_shapes():
    rng = random.Random(20240601)
    for _ in range(100):
        total = rng.randint(0, 2000)
        target = rng.randint(2, 400)
        overlap = rng.randint(0, target - 1)
        doc = make_doc(total)
        chunks = chunk_document("d", doc, target, overlap)
        assert len(chunks) == expected_chunks(total, target, overlap), (total, target, overlap)
        assert reassemble(chunks)["d"] == doc.split()
        for c in chunks:
            assert c.token_count == c.span[1] - c.span[0]
            assert c.token_count <= target


def test_corpus_chunking_is_per_document():
    docs = [("a.txt", make_doc(700, "a")), ("b.txt", make_doc(10, "b"))]
    chunks = chunk_corpus(docs, 300, 50)
    assert [c.source_doc for c in chunks].count("a.txt") == expected_chunks(700, 300, 50)
    assert [c.source_doc for c in chunks].count("b.txt") == 1
    assert len({c.id for c in chunks}) == len(chunks)


def test_count_tokens_is_whitespace_words():
    assert count_tokens("") == 0
    assert count_tokens("one  two\nthree\t four") == 4

"""Corpus chunking over whitespace tokens with a fixed overlap window."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import ChunkingError


def tokenize(text: str) -> list[str]:
    return text.split()


def count_tokens(text: str) -> int:
    return len(text.split())


@dataclass(frozen=True)
class Chunk:
    id: str
    source_doc: str
    text: str
    token_count: int
    span: tuple[int, int]  # [start, end) token offsets in the source document


def chunk_document(doc_id: str, text: str, target_tokens: int, overlap: int) -> list[Chunk]:
    if overlap < 0 or target_tokens <= overlap:
        raise ChunkingError(f"need target_tokens > overlap >= 0, got target={target_tokens} overlap={overlap}")
    tokens = tokenize(text)
    total = len(tokens)
    if total <= target_tokens:
        return [Chunk(id=f"{doc_id}#0", source_doc=doc_id, text=" ".join(tokens), token_count=total, span=(0, total))]
    stride = target_tokens - overlap
    chunks: list[Chunk] = []
    start = 0
    index = 0
    while start < total:
        end = min(start + target_tokens, total)
        chunks.append(
            Chunk(
                id=f"{doc_id}#{index}",
                source_doc=doc_id,
                text=" ".join(tokens[start:end]),
                token_count=end - start,
                span=(start, end),
            )
        )
        if end == total:
            break
        start += stride
        index += 1
    return chunks


def chunk_corpus(
    docs: Sequence[tuple[str, str]], target_tokens: int = 300, overlap: int = 50
) -> list[Chunk]:
    """Chunk (doc_id, text) pairs; per-doc count = ceil((T-overlap)/(target-overlap)) for T > target."""
    out: list[Chunk] = []
    for doc_id, text in docs:
        out.extend(chunk_document(doc_id, text, target_tokens, overlap))
    return out


def reassemble(chunks: Iterable[Chunk]) -> dict[str, list[str]]:
    """Rebuild each document's token stream from its chunks (overlap-aware)."""
    streams: dict[str, list[str]] = {}
    by_doc: dict[str, list[Chunk]] = {}
    for c in chunks:
        by_doc.setdefault(c.source_doc, []).append(c)
    for doc_id, doc_chunks in by_doc.items():
        doc_chunks.sort(key=lambda c: c.span[0])
        tokens: list[str] = []
        for c in doc_chunks:
            c_tokens = c.text.split()
            skip = len(tokens) - c.span[0]
            tokens.extend(c_tokens[skip:])
        streams[doc_id] = tokens
    return streams

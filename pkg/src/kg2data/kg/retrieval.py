"""k-hop context retrieval: alias linking, BFS triple collection, budgeted rendering."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .chunking import count_tokens
from .graph import KnowledgeGraph, normalize_name


@dataclass
class ContextBundle:
    triples: list[str] = field(default_factory=list)
    summaries: list[str] = field(default_factory=list)
    token_budget: int = 0
    rendered: str = ""


def _lookup_phrase(graph: KnowledgeGraph, phrase: str) -> str | None:
    eid = graph.alias_index.get(phrase)
    if eid is not None:
        return eid
    canonical = graph.alias_table.get(phrase)
    if canonical is not None:
        eid = graph.alias_index.get(normalize_name(canonical))
        if eid is not None:
            return eid
    return None


def link_entities(graph: KnowledgeGraph, query: str) -> list[str]:
    """Case-insensitive longest alias match over the punctuation-stripped query."""
    tokens = normalize_name(query).split()
    if not tokens:
        return []
    max_len = 1
    for alias in list(graph.alias_index) + list(graph.alias_table):
        max_len = max(max_len, len(alias.split()))
    linked: list[str] = []
    seen: set[str] = set()
    i = 0
    while i < len(tokens):
        match = None
        match_len = 0
        for n in range(min(max_len, len(tokens) - i), 0, -1):
            phrase = " ".join(tokens[i : i + n])
            eid = _lookup_phrase(graph, phrase)
            if eid is not None:
                match, match_len = eid, n
                break
        if match is not None:
            if match not in seen:
                seen.add(match)
                linked.append(match)
            i += match_len
        else:
            i += 1
    return linked


def render_triple(graph: KnowledgeGraph, triple) -> str:
    subj = graph.entities[triple.subject].canonical_name
    obj = graph.entities[triple.object].canonical_name
    return f"{subj} {triple.predicate} {obj}."


def _bfs_triples(graph: KnowledgeGraph, roots: list[str], hops: int) -> list[str]:
    """Triples reachable within `hops` edge traversals, BFS order, heavier edges first."""
    adjacency = graph.adjacency()
    dist = {r: 0 for r in roots}
    frontier = deque(roots)
    lines: list[str] = []
    seen_edges: set[tuple[str, str, str]] = set()
    while frontier:
        u = frontier.popleft()
        d = dist[u]
        if d >= hops:
            continue
        neighbors = sorted(
            adjacency.get(u, ()),
            key=lambda pair: (-pair[1].weight, pair[1].key),
        )
        for v, triple in neighbors:
            if triple.key not in seen_edges:
                seen_edges.add(triple.key)
                lines.append(render_triple(graph, triple))
            if v not in dist:
                dist[v] = d + 1
                frontier.append(v)
    return lines


def _summaries_for(graph: KnowledgeGraph, linked: list[str]) -> list[str]:
    hierarchy = graph.hierarchy
    if hierarchy is None:
        return []
    out: list[str] = []
    seen: set[str] = set()
    for level in range(hierarchy.num_levels):
        for eid in linked:
            cid = hierarchy.community_of(level, eid)
            if cid is None:
                continue
            text = hierarchy.summaries.get((level, cid), "")
            if text and text not in seen:
                seen.add(text)
                out.append(text)
    return out


def _top_level_summaries(graph: KnowledgeGraph) -> list[str]:
    hierarchy = graph.hierarchy
    if hierarchy is None:
        return []
    top = hierarchy.top_level()
    out: list[str] = []
    for cid in sorted(hierarchy.communities(top)):
        text = hierarchy.summaries.get((top, cid), "")
        if text:
            out.append(text)
    return out


def retrieve_context(graph: KnowledgeGraph, query: str, hops: int = 2, token_budget: int = 600) -> ContextBundle:
    """Deterministic bundle of nearby triples plus community summaries, within budget."""
    linked = link_entities(graph, query)
    if linked:
        triple_lines = _bfs_triples(graph, linked, hops)
        summary_lines = _summaries_for(graph, linked)
    else:
        triple_lines = []
        summary_lines = _top_level_summaries(graph)

    bundle = ContextBundle(token_budget=token_budget)
    used = 0
    rendered_parts: list[str] = []

    def fits(line: str) -> bool:
        return used + count_tokens(line) <= token_budget

    for line in triple_lines:
        if not fits(line):
            break
        bundle.triples.append(line)
        rendered_parts.append(line)
        used += count_tokens(line)
    for line in summary_lines:
        if not fits(line):
            break
        bundle.summaries.append(line)
        rendered_parts.append(line)
        used += count_tokens(line)
    bundle.rendered = "\n".join(rendered_parts)
    return bundle

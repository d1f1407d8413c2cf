"""Community summarization; singleton communities reuse the entity description."""
from __future__ import annotations

from ..errors import SummaryError
from ..gateway import ChatMessage, CompletionRequest
from .graph import KnowledgeGraph
from .leiden import CommunityHierarchy

SUMMARY_SYSTEM_PROMPT = (
    "You write one-paragraph summaries of groups of related meteorological concepts. "
    "Summarize what binds the group together and what data it concerns. Output the paragraph only."
)


def community_summary_request(graph: KnowledgeGraph, members: list[str]) -> CompletionRequest:
    member_set = set(members)
    lines = []
    for eid in members:
        e = graph.entities[eid]
        lines.append(f"- {e.canonical_name} ({e.type}): {e.description}")
    triple_lines = []
    for key in sorted(graph.triples):
        t = graph.triples[key]
        if t.subject in member_set and t.object in member_set:
            triple_lines.append(
                f"- {graph.entities[t.subject].canonical_name} {t.predicate} "
                f"{graph.entities[t.object].canonical_name}"
            )
    body = "Entities:\n" + "\n".join(lines)
    if triple_lines:
        body += "\nRelations:\n" + "\n".join(triple_lines[:40])
    return CompletionRequest(
        messages=(ChatMessage("system", SUMMARY_SYSTEM_PROMPT), ChatMessage("user", body)),
        temperature=0.0,
        max_tokens=300,
    )


def summarize_communities(graph: KnowledgeGraph, hierarchy: CommunityHierarchy, gateway) -> CommunityHierarchy:
    for level in range(hierarchy.num_levels):
        for cid, members in hierarchy.communities(level).items():
            if (level, cid) in hierarchy.summaries:
                continue
            if len(members) == 1:
                hierarchy.summaries[(level, cid)] = graph.entities[members[0]].description
                continue
            try:
                text = gateway.complete(community_summary_request(graph, members))
            except Exception as e:
                raise SummaryError(level, cid, e) from e
            hierarchy.summaries[(level, cid)] = text.strip()
    return hierarchy

"""Leiden community detection: local moving, refinement, aggregation.

Quality is weighted modularity with a resolution parameter. Guarantees kept on
every run: recorded quality is non-decreasing across passes, every community at
every level is connected, and levels nest (each level's communities are unions
of the previous level's).
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..errors import LeidenError

_EPS = 1e-12


@dataclass
class CommunityHierarchy:
    levels: list[dict[str, int]]  # level 0 is the finest partition
    summaries: dict[tuple[int, int], str] = field(default_factory=dict)
    quality_by_pass: list[float] = field(default_factory=list)

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    def communities(self, level: int) -> dict[int, list[str]]:
        grouped: dict[int, list[str]] = {}
        for node, cid in self.levels[level].items():
            grouped.setdefault(cid, []).append(node)
        return {cid: sorted(members) for cid, members in sorted(grouped.items())}

    def community_of(self, level: int, node: str) -> int | None:
        return self.levels[level].get(node)

    def top_level(self) -> int:
        return len(self.levels) - 1


def modularity(
    edges: Iterable[tuple[str, str, float]], membership: Mapping[str, int], resolution: float = 1.0
) -> float:
    """Weighted modularity of a flat partition (self-loops ignored)."""
    tot: dict[int, float] = {}
    inner: dict[int, float] = {}
    m2 = 0.0
    for u, v, w in edges:
        if u == v:
            continue
        cu, cv = membership[u], membership[v]
        tot[cu] = tot.get(cu, 0.0) + w
        tot[cv] = tot.get(cv, 0.0) + w
        m2 += 2.0 * w
        if cu == cv:
            inner[cu] = inner.get(cu, 0.0) + 2.0 * w
    if m2 == 0.0:
        return 0.0
    q = 0.0
    for cid, t in tot.items():
        q += inner.get(cid, 0.0) / m2 - resolution * (t / m2) ** 2
    return q


def _move_nodes(adj, strength, membership, comm_tot, resolution, m2, order):
    """Queue-based greedy local moving; mutates membership/comm_tot in place."""
    queue = deque(order)
    in_queue = [True] * len(adj)
    moved_any = False
    gamma_over_m2 = resolution / m2 if m2 else 0.0
    while queue:
        i = queue.popleft()
        in_queue[i] = False
        a = membership[i]
        k_i = strength[i]
        comm_tot[a] -= k_i
        gains: dict[int, float] = {}
        for j, w in adj[i]:
            c = membership[j]
            gains[c] = gains.get(c, 0.0) + w
        best_c = a
        best_score = gains.get(a, 0.0) - gamma_over_m2 * k_i * comm_tot[a]
        for c, k_in in gains.items():
            if c == a:
                continue
            score = k_in - gamma_over_m2 * k_i * comm_tot[c]
            if score > best_score + _EPS:
                best_c, best_score = c, score
        comm_tot[best_c] = comm_tot.get(best_c, 0.0) + k_i
        membership[i] = best_c
        if best_c != a:
            moved_any = True
            for j, _ in adj[i]:
                if membership[j] != best_c and not in_queue[j]:
                    queue.append(j)
                    in_queue[j] = True
    return moved_any


def _split_disconnected(adj, membership):
    """Split any disconnected community into its components (never lowers quality)."""
    n = len(adj)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(membership[i], []).append(i)
    next_id = max(membership) + 1 if membership else 0
    for cid in sorted(groups):
        nodes = groups[cid]
        if len(nodes) <= 1:
            continue
        unseen = set(nodes)
        first = True
        while unseen:
            start = min(unseen)
            comp = [start]
            unseen.discard(start)
            frontier = deque([start])
            while frontier:
                u = frontier.popleft()
                for v, _ in adj[u]:
                    if v in unseen:
                        unseen.discard(v)
                        comp.append(v)
                        frontier.append(v)
            if first:
                first = False
                continue
            for u in comp:
                membership[u] = next_id
            next_id += 1
    return membership


def _refine(adj, strength, membership, resolution, m2, rng):
    """Greedy singleton merging restricted to each community; connected by construction."""
    n = len(adj)
    ref = list(range(n))
    ref_tot = list(strength)
    ref_size = [1] * n
    gamma_over_m2 = resolution / m2 if m2 else 0.0
    order = list(range(n))
    rng.shuffle(order)
    for i in order:
        if ref_size[ref[i]] != 1:
            continue
        a = membership[i]
        k_i = strength[i]
        gains: dict[int, float] = {}
        for j, w in adj[i]:
            if membership[j] == a:
                r = ref[j]
                gains[r] = gains.get(r, 0.0) + w
        best_r = ref[i]
        best_score = 0.0  # staying alone
        for r, k_in in gains.items():
            if r == ref[i]:
                continue
            score = k_in - gamma_over_m2 * k_i * ref_tot[r]
            if score > best_score + _EPS:
                best_r, best_score = r, score
        if best_r != ref[i]:
            ref_tot[best_r] += k_i
            ref_tot[ref[i]] -= k_i
            ref_size[best_r] += 1
            ref_size[ref[i]] -= 1
            ref[i] = best_r
    return ref


def _canonical_labels(assignment: Sequence[int]) -> list[int]:
    remap: dict[int, int] = {}
    out = []
    for value in assignment:
        if value not in remap:
            remap[value] = len(remap)
        out.append(remap[value])
    return out


def partition_nodes(
    node_ids: Sequence[str],
    edges: Iterable[tuple[str, str, float]],
    resolution: float = 1.0,
    seed: int = 0,
    max_levels: int = 10,
) -> CommunityHierarchy:
    """Run Leiden over an explicit node/edge list; nodes are kept in given order."""
    if not node_ids:
        raise LeidenError("graph is empty")
    if resolution <= 0:
        raise LeidenError("resolution must be positive")
    index = {node: i for i, node in enumerate(node_ids)}
    n = len(node_ids)

    # undirected simple graph: parallel edges summed, self-loops dropped
    pair_w: dict[tuple[int, int], float] = {}
    for u, v, w in edges:
        iu, iv = index[u], index[v]
        if iu == iv:
            continue
        key = (iu, iv) if iu < iv else (iv, iu)
        pair_w[key] = pair_w.get(key, 0.0) + w
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (iu, iv), w in sorted(pair_w.items()):
        adj[iu].append((iv, w))
        adj[iv].append((iu, w))
    strength = [sum(w for _, w in nbrs) for nbrs in adj]
    m2 = sum(strength)

    rng = random.Random(seed)
    edge_list = [(node_ids[iu], node_ids[iv], w) for (iu, iv), w in sorted(pair_w.items())]

    # aggregate-graph state
    agg_adj = adj
    agg_strength = strength
    members: list[list[int]] = [[i] for i in range(n)]
    membership = list(range(n))

    levels_raw: list[list[int]] = []  # original-node assignments, one per recorded level
    quality_by_pass: list[float] = []
    prev_q: float | None = None

    def project(assignment: Sequence[int]) -> list[int]:
        flat = [0] * n
        for agg_node, label in enumerate(assignment):
            for orig in members[agg_node]:
                flat[orig] = label
        return flat

    for _pass in range(max_levels):
        order = list(range(len(agg_adj)))
        rng.shuffle(order)
        _move_nodes(agg_adj, agg_strength, membership, _totals(agg_strength, membership), resolution, m2, order)
        _split_disconnected(agg_adj, membership)
        flat = project(membership)
        q = modularity(edge_list, {node_ids[i]: flat[i] for i in range(n)}, resolution)
        if prev_q is not None and q < prev_q - 1e-9:
            raise AssertionError(f"quality decreased across passes: {prev_q} -> {q}")
        quality_by_pass.append(q)
        prev_q = q

        refined = _refine(agg_adj, agg_strength, membership, resolution, m2, rng)
        levels_raw.append(project(refined))

        remap: dict[int, int] = {}
        for i in range(len(agg_adj)):
            if refined[i] not in remap:
                remap[refined[i]] = len(remap)
        n_ref = len(remap)
        if n_ref == len(agg_adj):
            break  # no coarsening possible; partition is stable

        new_members: list[list[int]] = [[] for _ in range(n_ref)]
        new_strength = [0.0] * n_ref
        new_membership = [0] * n_ref
        for i in range(len(agg_adj)):
            ri = remap[refined[i]]
            new_members[ri].extend(members[i])
            new_strength[ri] += agg_strength[i]
            new_membership[ri] = membership[i]
        agg_pairs: dict[tuple[int, int], float] = {}
        for i in range(len(agg_adj)):
            ri = remap[refined[i]]
            for j, w in agg_adj[i]:
                rj = remap[refined[j]]
                if ri < rj:
                    agg_pairs[(ri, rj)] = agg_pairs.get((ri, rj), 0.0) + w
        new_adj: list[list[tuple[int, float]]] = [[] for _ in range(n_ref)]
        for (ri, rj), w in sorted(agg_pairs.items()):
            new_adj[ri].append((rj, w))
            new_adj[rj].append((ri, w))

        agg_adj = new_adj
        agg_strength = new_strength
        members = new_members
        membership = _canonical_labels(new_membership)

    final_flat = project(membership)
    if not levels_raw or levels_raw[-1] != final_flat:
        levels_raw.append(final_flat)

    # drop consecutive duplicate levels, canonicalize labels
    levels: list[dict[str, int]] = []
    previous: list[int] | None = None
    for raw in levels_raw:
        canon = _canonical_labels(raw)
        if previous is not None and canon == previous:
            continue
        levels.append({node_ids[i]: canon[i] for i in range(n)})
        previous = canon
    return CommunityHierarchy(levels=levels, quality_by_pass=quality_by_pass)


def _totals(strength: Sequence[float], membership: Sequence[int]) -> dict[int, float]:
    tot: dict[int, float] = {}
    for i, c in enumerate(membership):
        tot[c] = tot.get(c, 0.0) + strength[i]
    return tot


def leiden_partition(graph, resolution: float = 1.0, seed: int = 0, max_levels: int = 10) -> CommunityHierarchy:
    """Partition a KnowledgeGraph; triple weights between the same pair are summed."""
    if graph.node_count() == 0:
        raise LeidenError("graph is empty")
    node_ids = sorted(graph.entities)
    edges = [
        (t.subject, t.object, t.weight)
        for _, t in sorted(graph.triples.items())
        if t.subject != t.object
    ]
    hierarchy = partition_nodes(node_ids, edges, resolution=resolution, seed=seed, max_levels=max_levels)
    graph.hierarchy = hierarchy
    return hierarchy

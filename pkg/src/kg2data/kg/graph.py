"""Knowledge graph store: alias-aware entity merging, weighted triples, pruning, snapshots."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

ENTITY_TYPES = (
    "meteorological_element",
    "instrument",
    "event",
    "dataset",
    "api",
    "location",
    "other",
)

# Predicates allowed to connect an entity to itself.
REFLEXIVE_PREDICATES = frozenset({"related_to"})

_WORD_RE = re.compile(r"[^\w\s]+", re.UNICODE)


def normalize_name(text: str) -> str:
    """Lowercase, punctuation stripped, whitespace collapsed."""
    return " ".join(_WORD_RE.sub(" ", text.lower()).split())


def entity_id_for(name: str) -> str:
    return normalize_name(name).replace(" ", "_")


def normalize_predicate(text: str) -> str:
    return "_".join(re.sub(r"[^\w]+", " ", text.lower()).split())


@dataclass
class Entity:
    id: str
    canonical_name: str
    type: str = "other"
    aliases: set[str] = field(default_factory=set)
    description: str = ""


@dataclass
class Triple:
    subject: str
    predicate: str
    object: str
    weight: float = 1.0
    provenance: set[str] = field(default_factory=set)
    confidence: float = 1.0

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate, self.object)


def load_alias_table(path: str | Path) -> dict[str, str]:
    """Two-column TSV: variant<TAB>canonical entity name."""
    table: dict[str, str] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        variant, canonical = line.split("\t")
        table[normalize_name(variant)] = canonical
    return table


def load_synonym_table(path: str | Path) -> dict[str, tuple[str, bool]]:
    """Two-column TSV: predicate variant<TAB>canonical; a leading '^' on the
    canonical marks an inverse mapping (subject and object swap)."""
    table: dict[str, tuple[str, bool]] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        variant, canonical = line.split("\t")
        inverted = canonical.startswith("^")
        table[normalize_predicate(variant)] = (normalize_predicate(canonical.lstrip("^")), inverted)
    return table


class KnowledgeGraph:
    def __init__(self, alias_table: Mapping[str, str] | None = None):
        self.entities: dict[str, Entity] = {}
        self.triples: dict[tuple[str, str, str], Triple] = {}
        self.alias_table: dict[str, str] = dict(alias_table or {})
        self.alias_index: dict[str, str] = {}  # normalized alias -> entity id
        self.corpus_hash: str = ""
        self.hierarchy = None  # set after community detection

    # -- entity handling -------------------------------------------------

    def resolve_name(self, name: str) -> str:
        """Map a surface name to its canonical entity id (alias table applied)."""
        norm = normalize_name(name)
        canonical = self.alias_table.get(norm)
        if canonical is not None:
            return entity_id_for(canonical)
        existing = self.alias_index.get(norm)
        if existing is not None:
            return existing
        return norm.replace(" ", "_")

    def add_entity(self, entity: Entity) -> Entity:
        eid = self.resolve_name(entity.canonical_name)
        current = self.entities.get(eid)
        norm_name = normalize_name(entity.canonical_name)
        if current is None:
            canonical_name = self.alias_table.get(norm_name, entity.canonical_name)
            current = Entity(
                id=eid,
                canonical_name=canonical_name,
                type=entity.type,
                aliases=set(),
                description=entity.description,
            )
            self.entities[eid] = current
            self.alias_index[normalize_name(canonical_name)] = eid
        else:
            # order-independent merge rules: specific type wins, longest description wins
            current.type = min((current.type, entity.type), key=lambda t: (t == "other", t))
            current.description = max(
                (current.description, entity.description), key=lambda d: (len(d), d)
            )
        if norm_name and norm_name != normalize_name(current.canonical_name):
            current.aliases.add(norm_name)
            self.alias_index[norm_name] = eid
        for alias in entity.aliases:
            norm_alias = normalize_name(alias)
            if norm_alias and norm_alias != normalize_name(current.canonical_name):
                current.aliases.add(norm_alias)
                self.alias_index[norm_alias] = eid
        return current

    def ensure_entity(self, name: str) -> Entity:
        eid = self.resolve_name(name)
        if eid in self.entities:
            return self.entities[eid]
        return self.add_entity(Entity(id=eid, canonical_name=name))

    # -- triple handling -------------------------------------------------

    def add_triple(self, triple: Triple) -> Triple | None:
        subject = self.resolve_name(triple.subject) if triple.subject not in self.entities else triple.subject
        obj = self.resolve_name(triple.object) if triple.object not in self.entities else triple.object
        predicate = normalize_predicate(triple.predicate)
        if subject == obj and predicate not in REFLEXIVE_PREDICATES:
            return None
        for eid in (subject, obj):
            if eid not in self.entities:
                self.entities[eid] = Entity(id=eid, canonical_name=eid.replace("_", " "))
                self.alias_index[eid.replace("_", " ")] = eid
        key = (subject, predicate, obj)
        current = self.triples.get(key)
        if current is None:
            current = Triple(
                subject=subject,
                predicate=predicate,
                object=obj,
                weight=triple.weight,
                provenance=set(triple.provenance),
                confidence=triple.confidence,
            )
            self.triples[key] = current
        else:
            current.weight += triple.weight
            current.provenance |= set(triple.provenance)
            current.confidence = max(current.confidence, triple.confidence)
        return current

    # -- views -----------------------------------------------------------

    def node_count(self) -> int:
        return len(self.entities)

    def edge_count(self) -> int:
        return len(self.triples)

    def neighbors(self, entity_id: str) -> list[tuple[str, Triple]]:
        out: list[tuple[str, Triple]] = []
        for t in self.triples.values():
            if t.subject == entity_id:
                out.append((t.object, t))
            elif t.object == entity_id:
                out.append((t.subject, t))
        return out

    def adjacency(self) -> dict[str, list[tuple[str, Triple]]]:
        adj: dict[str, list[tuple[str, Triple]]] = {eid: [] for eid in self.entities}
        for t in self.triples.values():
            adj[t.subject].append((t.object, t))
            if t.object != t.subject:
                adj[t.object].append((t.subject, t))
        return adj


def merge_graph(
    graph: KnowledgeGraph, entities: Iterable[Entity], triples: Iterable[Triple]
) -> KnowledgeGraph:
    """Accumulate one extraction batch; identical triples merge, never duplicate."""
    for entity in entities:
        graph.add_entity(entity)
    for triple in triples:
        graph.add_triple(triple)
    return graph


def prune_redundant(
    graph: KnowledgeGraph, synonym_table: Mapping[str, tuple[str, bool]] | None = None
) -> KnowledgeGraph:
    """Collapse synonym/inverse predicates so no two edges share (s, predicate, o)."""
    table = dict(synonym_table or {})
    rebuilt: dict[tuple[str, str, str], Triple] = {}
    for triple in graph.triples.values():
        predicate = triple.predicate
        subject, obj = triple.subject, triple.object
        mapped = table.get(predicate)
        if mapped is not None:
            predicate, inverted = mapped
            if inverted:
                subject, obj = obj, subject
        key = (subject, predicate, obj)
        survivor = rebuilt.get(key)
        if survivor is None:
            rebuilt[key] = Triple(
                subject=subject,
                predicate=predicate,
                object=obj,
                weight=triple.weight,
                provenance=set(triple.provenance),
                confidence=triple.confidence,
            )
        else:
            survivor.weight += triple.weight
            survivor.provenance |= triple.provenance
            survivor.confidence = max(survivor.confidence, triple.confidence)
    graph.triples = rebuilt
    return graph


# -- snapshot persistence ---------------------------------------------------


def save_snapshot(graph: KnowledgeGraph, path: str | Path, hierarchy=None) -> None:
    hierarchy = hierarchy if hierarchy is not None else graph.hierarchy
    lines: list[str] = []
    meta = {"t": "meta", "corpus_hash": graph.corpus_hash}
    lines.append(json.dumps(meta, sort_keys=True, separators=(",", ":")))
    for eid in sorted(graph.entities):
        e = graph.entities[eid]
        lines.append(
            json.dumps(
                {
                    "t": "entity",
                    "id": e.id,
                    "canonical_name": e.canonical_name,
                    "type": e.type,
                    "aliases": sorted(e.aliases),
                    "description": e.description,
                },
                sort_keys=True,
                separators=(",", ":"),
            )
        )
    for key in sorted(graph.triples):
        t = graph.triples[key]
        lines.append(
            json.dumps(
                {
                    "t": "triple",
                    "subject": t.subject,
                    "predicate": t.predicate,
                    "object": t.object,
                    "weight": t.weight,
                    "provenance": sorted(t.provenance),
                    "confidence": t.confidence,
                },
                sort_keys=True,
                separators=(",", ":"),
            )
        )
    if hierarchy is not None:
        for level, partition in enumerate(hierarchy.levels):
            members: dict[int, list[str]] = {}
            for eid, cid in partition.items():
                members.setdefault(cid, []).append(eid)
            for cid in sorted(members):
                lines.append(
                    json.dumps(
                        {
                            "t": "community",
                            "level": level,
                            "community": cid,
                            "members": sorted(members[cid]),
                            "summary": hierarchy.summaries.get((level, cid), ""),
                        },
                        sort_keys=True,
                        separators=(",", ":"),
                    )
                )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_snapshot(path: str | Path, alias_table: Mapping[str, str] | None = None):
    """Returns (graph, hierarchy_or_None); see save_snapshot for the record shapes."""
    from .leiden import CommunityHierarchy  # local import to avoid a cycle

    graph = KnowledgeGraph(alias_table=alias_table)
    levels: dict[int, dict[str, int]] = {}
    summaries: dict[tuple[int, int], str] = {}
    saw_community = False
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        doc = json.loads(line)
        tag = doc.get("t")
        if tag == "meta":
            graph.corpus_hash = doc.get("corpus_hash", "")
        elif tag == "entity":
            entity = Entity(
                id=doc["id"],
                canonical_name=doc["canonical_name"],
                type=doc["type"],
                aliases=set(doc["aliases"]),
                description=doc["description"],
            )
            graph.entities[entity.id] = entity
            graph.alias_index[normalize_name(entity.canonical_name)] = entity.id
            for alias in entity.aliases:
                graph.alias_index[alias] = entity.id
        elif tag == "triple":
            triple = Triple(
                subject=doc["subject"],
                predicate=doc["predicate"],
                object=doc["object"],
                weight=doc["weight"],
                provenance=set(doc["provenance"]),
                confidence=doc["confidence"],
            )
            graph.triples[triple.key] = triple
        elif tag == "community":
            saw_community = True
            level = doc["level"]
            for member in doc["members"]:
                levels.setdefault(level, {})[member] = doc["community"]
            if doc.get("summary"):
                summaries[(level, doc["community"])] = doc["summary"]
    hierarchy = None
    if saw_community:
        hierarchy = CommunityHierarchy(
            levels=[levels[k] for k in sorted(levels)], summaries=summaries, quality_by_pass=[]
        )
        graph.hierarchy = hierarchy
    return graph, hierarchy

"""LLM-backed entity/relation extraction under a line-oriented record grammar.

Model output format, one record per line:
    ENTITY<TAB>name<TAB>type<TAB>description
    REL<TAB>subject<TAB>predicate<TAB>object<TAB>confidence
"""
from __future__ import annotations

from ..errors import ExtractionFormatError
from ..gateway import ChatMessage, CompletionRequest
from .chunking import Chunk
from .graph import ENTITY_TYPES, Entity, Triple, entity_id_for, normalize_predicate

EXTRACTION_SYSTEM_PROMPT = """You extract a knowledge graph from meteorological text.
Output one record per line and nothing else. Two record shapes are allowed:
ENTITY\tname\ttype\tshort description
REL\tsubject name\tpredicate\tobject name\tconfidence between 0 and 1
Entity types: meteorological_element, instrument, event, dataset, api, location, other.
Predicates are short snake_case verbs such as measured_by, affects, part_of.

Example input:
Precipitation is measured by rain gauges at surface stations.
Example output:
ENTITY\tprecipitation\tmeteorological_element\tWater falling from the atmosphere to the surface.
ENTITY\train gauge\tinstrument\tInstrument that collects and measures liquid precipitation.
REL\tprecipitation\tmeasured_by\train gauge\t0.95
"""


def extraction_request(chunk_text: str) -> CompletionRequest:
    return CompletionRequest(
        messages=(
            ChatMessage("system", EXTRACTION_SYSTEM_PROMPT),
            ChatMessage("user", f"Extract entities and relations from this text:\n{chunk_text}"),
        ),
        temperature=0.0,
        max_tokens=800,
    )


def parse_extraction(text: str, chunk_id: str) -> tuple[list[Entity], list[Triple]]:
    """Parse the record grammar; prose lines are skipped, malformed records fail."""
    entities: list[Entity] = []
    triples: list[Triple] = []
    names_seen: set[str] = set()
    for line in text.splitlines():
        stripped = line.strip("\r")
        if stripped.startswith("ENTITY\t"):
            parts = stripped.split("\t")
            if len(parts) != 4:
                raise ExtractionFormatError(
                    f"ENTITY record needs 4 tab-separated fields, got {len(parts)}", text
                )
            _, name, etype, description = parts
            if etype not in ENTITY_TYPES:
                raise ExtractionFormatError(f"unknown entity type {etype!r}", text)
            entities.append(
                Entity(id=entity_id_for(name), canonical_name=name, type=etype, description=description)
            )
            names_seen.add(entity_id_for(name))
        elif stripped.startswith("REL\t"):
            parts = stripped.split("\t")
            if len(parts) != 5:
                raise ExtractionFormatError(
                    f"REL record needs 5 tab-separated fields, got {len(parts)}", text
                )
            _, subject, predicate, obj, conf_text = parts
            try:
                confidence = float(conf_text)
            except ValueError:
                raise ExtractionFormatError(f"confidence {conf_text!r} is not a number", text) from None
            if not 0.0 <= confidence <= 1.0:
                raise ExtractionFormatError(f"confidence {confidence} outside [0,1]", text)
            for endpoint in (subject, obj):
                eid = entity_id_for(endpoint)
                if eid not in names_seen:
                    entities.append(Entity(id=eid, canonical_name=endpoint, type="other"))
                    names_seen.add(eid)
            triples.append(
                Triple(
                    subject=entity_id_for(subject),
                    predicate=normalize_predicate(predicate),
                    object=entity_id_for(obj),
                    weight=1.0,
                    provenance={chunk_id},
                    confidence=confidence,
                )
            )
    if not entities and not triples:
        raise ExtractionFormatError("no ENTITY/REL records found in model output", text)
    return entities, triples


def extract_graph(chunk: Chunk, gateway) -> tuple[list[Entity], list[Triple]]:
    if not chunk.text.strip():
        return [], []
    response = gateway.complete(extraction_request(chunk.text))
    return parse_extraction(response, chunk.id)

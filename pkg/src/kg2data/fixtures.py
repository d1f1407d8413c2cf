"""Deterministic scripted model backends for the shipped fixtures.

These stand in for a live model when recording the packaged cassettes: a
curated fact table drives extraction, summaries are composed from community
members, and pair generation replays the curated dataset.
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable

from .evaluation.cases import InstructionCase
from .evaluation.gold import GoldScriptedBackend
from .gateway import CompletionRequest
from .kg.extraction import EXTRACTION_SYSTEM_PROMPT
from .kg.summaries import SUMMARY_SYSTEM_PROMPT
from .evaluation.cases import PAIR_SYSTEM_PROMPT
from .resources import FACTS_FILE


def load_facts(path: str | Path = FACTS_FILE) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


class ScriptedExtractionBackend:
    """Emits curated ENTITY/REL records for whichever fact markers the chunk contains."""

    def __init__(self, facts: dict):
        self.entities = facts["entities"]
        self.docs = facts["docs"]

    def complete(self, request: CompletionRequest) -> str:
        text = request.messages[-1].content
        chunk_text = text.split(":\n", 1)[1] if ":\n" in text else text
        entity_order: list[str] = []
        rel_lines: list[str] = []

        def note_entity(name: str) -> None:
            if name not in entity_order:
                entity_order.append(name)

        for doc in self.docs.values():
            for mention in doc.get("mentions", []):
                if mention["marker"] in chunk_text:
                    note_entity(mention["name"])
            for triple in doc.get("triples", []):
                if triple["marker"] in chunk_text:
                    note_entity(triple["subject"])
                    note_entity(triple["object"])
                    rel_lines.append(
                        "REL\t{subject}\t{predicate}\t{object}\t{confidence}".format(**triple)
                    )
        lines = []
        for name in entity_order:
            meta = self.entities.get(name, {"type": "other", "description": ""})
            lines.append(f"ENTITY\t{name}\t{meta['type']}\t{meta['description']}")
        lines.extend(rel_lines)
        if not lines:
            return "ENTITY\tweather\tother\tGeneral weather context."
        return "\n".join(lines)


class ScriptedSummaryBackend:
    """Composes a deterministic summary from the listed member entities."""

    _NAME_RE = re.compile(r"^- (.*?) \((\w+)\): ", re.MULTILINE)

    def complete(self, request: CompletionRequest) -> str:
        body = request.messages[-1].content
        found = self._NAME_RE.findall(body)
        names = [name for name, _ in found]
        types = sorted({etype for _, etype in found})
        if not names:
            return "A small group of related meteorological concepts."
        return (
            f"This community groups {', '.join(names)} — related {' and '.join(types)} "
            "concepts that appear together in meteorological observation and analysis."
        )


class ScriptedPairBackend:
    """Replays the curated instruction dataset for self-instruct requests."""

    def __init__(self, cases: Iterable[InstructionCase]):
        self.by_key = {(c.gold_tool, c.style): c for c in cases}

    def complete(self, request: CompletionRequest) -> str:
        body = request.messages[-1].content
        name_match = re.search(r"^Name: (\S+)$", body, re.MULTILINE)
        style_match = re.search(r"Write one (explicit|implicit) question", body)
        if not name_match or not style_match:
            raise ValueError("unrecognized pair-generation request")
        case = self.by_key.get((name_match.group(1), style_match.group(1)))
        if case is None:
            raise ValueError(f"no curated pair for {name_match.group(1)}/{style_match.group(1)}")
        return "CASE\t{}\t{}\t{}\t{}".format(
            case.instruction,
            json.dumps(case.gold_params, sort_keys=True),
            ",".join(case.intent_tags),
            ",".join(case.answer_fields),
        )


class FixtureOracle:
    """Single backend that dispatches by system prompt; used to record all cassettes."""

    def __init__(self, facts: dict, cases: Iterable[InstructionCase]):
        cases = list(cases)
        self.extraction = ScriptedExtractionBackend(facts)
        self.summary = ScriptedSummaryBackend()
        self.pairs = ScriptedPairBackend(cases)
        self.gold = GoldScriptedBackend(cases)

    def complete(self, request: CompletionRequest) -> str:
        system = request.messages[0].content
        if system == EXTRACTION_SYSTEM_PROMPT:
            return self.extraction.complete(request)
        if system == SUMMARY_SYSTEM_PROMPT:
            return self.summary.complete(request)
        if system == PAIR_SYSTEM_PROMPT:
            return self.pairs.complete(request)
        return self.gold.complete(request)

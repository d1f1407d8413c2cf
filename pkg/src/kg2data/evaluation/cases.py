"""Instruction-answer pair dataset: loading, validation, self-instruct generation."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ..catalog import Catalog
from ..errors import CaseLoadError, GenerationExhaustedError
from ..gateway import ChatMessage, CompletionRequest
from ..tools import ToolRegistry

STYLES = ("explicit", "implicit")


@dataclass(frozen=True)
class InstructionCase:
    id: str
    instruction: str
    style: str
    gold_tool: str
    gold_params: dict
    intent_tags: tuple[str, ...]
    answer_fields: tuple[str, ...]


def _squash(text: str) -> str:
    """Lowercased with every separator removed; used for the no-API-name filter."""
    return re.sub(r"[^a-z0-9]+", "", text.lower())


def instruction_mentions_tool(instruction: str, tool_name: str, api_name: str) -> bool:
    squashed = _squash(instruction)
    return _squash(tool_name) in squashed or _squash(api_name) in squashed


def case_from_dict(doc: Mapping[str, Any]) -> InstructionCase:
    try:
        return InstructionCase(
            id=doc["id"],
            instruction=doc["instruction"],
            style=doc["style"],
            gold_tool=doc["gold_tool"],
            gold_params=dict(doc["gold_params"]),
            intent_tags=tuple(doc["intent_tags"]),
            answer_fields=tuple(doc["answer_fields"]),
        )
    except KeyError as e:
        raise CaseLoadError(f"case record missing field {e.args[0]!r}") from e


def case_to_dict(case: InstructionCase) -> dict:
    return {
        "id": case.id,
        "instruction": case.instruction,
        "style": case.style,
        "gold_tool": case.gold_tool,
        "gold_params": case.gold_params,
        "intent_tags": list(case.intent_tags),
        "answer_fields": list(case.answer_fields),
    }


def validate_case(case: InstructionCase, registry: ToolRegistry) -> None:
    if case.style not in STYLES:
        raise CaseLoadError(f"case {case.id}: style must be one of {STYLES}, got {case.style!r}")
    tool = registry.get(case.gold_tool)
    if tool is None:
        raise CaseLoadError(f"case {case.id}: unknown gold_tool {case.gold_tool}")
    if instruction_mentions_tool(case.instruction, case.gold_tool, tool.bound_api):
        raise CaseLoadError(f"case {case.id}: instruction contains the tool/API name")


def load_cases(path: str | Path, registry: ToolRegistry) -> list[InstructionCase]:
    cases: list[InstructionCase] = []
    seen_ids: set[str] = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        case = case_from_dict(json.loads(line))
        if case.id in seen_ids:
            raise CaseLoadError(f"duplicate case id {case.id}")
        seen_ids.add(case.id)
        validate_case(case, registry)
        cases.append(case)
    return cases


def save_cases(cases: list[InstructionCase], path: str | Path) -> None:
    lines = [json.dumps(case_to_dict(c), sort_keys=True, separators=(",", ":")) for c in cases]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


PAIR_SYSTEM_PROMPT = """You write evaluation questions for a meteorological data assistant.
Given one API's documentation, produce a question a user could ask whose answer requires that API,
without ever naming the API or any tool. Also choose the exact parameter values the call would need.

Reply with exactly one line in this tab-separated form:
CASE\tquestion text\tparameters as a JSON object\tcomma-separated intent keywords\tcomma-separated answer field names

An "explicit" question states the quantity plainly; an "implicit" question uses specialist phrasing
that never names the quantity directly."""


def pair_request(api_doc: str, style: str, attempt: int) -> CompletionRequest:
    user = f"API documentation:\n{api_doc}\n\nWrite one {style} question (attempt {attempt})."
    return CompletionRequest(
        messages=(ChatMessage("system", PAIR_SYSTEM_PROMPT), ChatMessage("user", user)),
        temperature=0.0,
        max_tokens=300,
    )


def _parse_pair_line(text: str) -> tuple[str, dict, tuple[str, ...], tuple[str, ...]]:
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("CASE\t"):
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise ValueError(f"CASE record needs 5 fields, got {len(parts)}")
        _, instruction, params_json, tags_csv, fields_csv = parts
        params = json.loads(params_json)
        if not isinstance(params, dict):
            raise ValueError("parameters must be a JSON object")
        tags = tuple(t.strip() for t in tags_csv.split(",") if t.strip())
        fields = tuple(f.strip() for f in fields_csv.split(",") if f.strip())
        return instruction, params, tags, fields
    raise ValueError("no CASE record in model output")


def _api_doc(api) -> str:
    lines = [f"Name: {api.name}", f"Category: {api.category}", f"Description: {api.description}", "Params:"]
    for p in api.params:
        req = "required" if p.required else "optional"
        lines.append(f"  - {p.name} ({p.kind}, {req})")
    lines.append("Output fields: " + ", ".join(f.name for f in api.output_fields))
    return "\n".join(lines)


def generate_pairs(catalog: Catalog, gateway, per_api: int = 2) -> list[InstructionCase]:
    """Self-instruct generation: per API, alternating explicit/implicit cases.

    Instructions that leak the API name are rejected and regenerated (3 attempts).
    """
    cases: list[InstructionCase] = []
    for api in catalog.apis:
        for i in range(per_api):
            style = STYLES[i % 2]
            case = None
            for attempt in range(1, 4):
                response = gateway.complete(pair_request(_api_doc(api), style, attempt))
                try:
                    instruction, params, tags, fields = _parse_pair_line(response)
                except (ValueError, json.JSONDecodeError):
                    continue
                if instruction_mentions_tool(instruction, api.name, api.name):
                    continue
                suffix = "" if per_api <= 2 else f"_{i // 2}"
                case = InstructionCase(
                    id=f"{api.name}_{style}{suffix}",
                    instruction=instruction,
                    style=style,
                    gold_tool=api.name,
                    gold_params=params,
                    intent_tags=tags,
                    answer_fields=fields,
                )
                break
            if case is None:
                raise GenerationExhaustedError(api.name)
            cases.append(case)
    return cases

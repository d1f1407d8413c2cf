"""Scripted completion backend that plays the gold trajectory for every case.

Used with a record-mode cassette to produce deterministic replay fixtures
without any live model.
"""
from __future__ import annotations

import json
import re
from typing import Iterable

from ..catalog import canonicalize_value
from ..gateway import CompletionRequest
from .cases import InstructionCase
from .classify import render_answer_value

_QUESTION_RE = re.compile(r"^Question: (.*)$", re.MULTILINE)


class GoldScriptedBackend:
    """Emits the gold Action for any known question, then a grounded Final Answer."""

    def __init__(self, cases: Iterable[InstructionCase]):
        self.by_instruction = {case.instruction: case for case in cases}

    def complete(self, request: CompletionRequest) -> str:
        prompt = request.messages[-1].content
        matches = _QUESTION_RE.findall(prompt)
        if not matches:
            raise ValueError("prompt has no Question line")
        query = matches[-1]
        case = self.by_instruction.get(query)
        if case is None:
            raise ValueError(f"no gold case for question {query!r}")
        tail = prompt[prompt.rfind("Question: ") :]
        observations = [
            line[len("Observation: ") :]
            for line in tail.splitlines()
            if line.startswith("Observation: ")
        ]
        if not observations:
            topic = ", ".join(case.intent_tags) if case.intent_tags else "the requested data"
            thought = (
                f"The question concerns {topic}; the bound data tool can provide it."
            )
            params = json.dumps(canonicalize_value(case.gold_params), sort_keys=True)
            return f"Thought: {thought}\nAction: {case.gold_tool}\nAction Input: {params}"
        doc = json.loads(observations[-1])
        data = doc.get("data", {})
        parts = []
        for name in case.answer_fields:
            if name in data:
                parts.append(f"{name} = {render_answer_value(data[name])}")
        answer = "; ".join(parts) if parts else "the call returned no requested fields"
        return f"Thought: The tool returned the data needed to answer.\nFinal Answer: {answer}."

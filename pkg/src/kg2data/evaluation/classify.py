"""Trace classification against gold labels: the five failure/accuracy signals."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from datetime import date
from typing import Any

from ..agent import Action, ActionInput, FinalAnswer, Observation, Thought, Trace
from ..errors import ClassificationError
from ..tools import ToolRegistry
from .cases import InstructionCase

_DATE_LIKE = re.compile(r"^\d{1,4}-\d{1,2}-\d{1,2}$")


def _normalize_value(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, str):
        trimmed = value.strip()
        if _DATE_LIKE.match(trimmed):
            try:
                parts = [int(p) for p in trimmed.split("-")]
                return date(*parts).isoformat()
            except ValueError:
                return trimmed
        return trimmed
    if isinstance(value, dict):
        return {k: _normalize_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_normalize_value(v) for v in value]
    return value


def normalize_params(params: dict | None) -> dict:
    """Key order ignored, numbers by value, strings trimmed, dates canonicalized."""
    return {k: _normalize_value(v) for k, v in (params or {}).items()}


def params_match(a: dict | None, b: dict | None) -> bool:
    return normalize_params(a) == normalize_params(b)


_SUFFIXES = ("ing", "est", "ied", "ies", "ed", "es", "s")


def stem(word: str) -> str:
    w = re.sub(r"[^a-z0-9]", "", word.lower())
    for suffix in _SUFFIXES:
        if w.endswith(suffix) and len(w) - len(suffix) >= 3:
            return w[: -len(suffix)]
    return w


def _stems_equal(a: str, b: str) -> bool:
    if a == b:
        return True
    # inflection tolerance: one stem extending the other (saturat ~ saturation)
    shorter, longer = (a, b) if len(a) <= len(b) else (b, a)
    return len(shorter) >= 4 and longer.startswith(shorter)


def intent_hit(thought_text: str, tags: tuple[str, ...]) -> bool:
    """True when the thought mentions at least one tag (stemmed phrase match)."""
    if not tags:
        return True
    thought_stems = [stem(t) for t in thought_text.split()]
    for tag in tags:
        tag_stems = [stem(t) for t in tag.split()]
        if not tag_stems:
            continue
        width = len(tag_stems)
        for i in range(len(thought_stems) - width + 1):
            if all(_stems_equal(thought_stems[i + j], tag_stems[j]) for j in range(width)):
                return True
    return False


def render_answer_value(value: Any) -> str:
    """Canonical textual form an answer must quote for a payload value."""
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


@dataclass
class CaseResult:
    case_id: str
    intent_fail: bool = False
    name_fail: bool = False
    param_fail: bool = False
    hallucination: bool = False
    answer_fail: bool = False
    correct_call: bool = False

    @property
    def outcome(self) -> str:
        return "correct" if self.correct_call and not self.answer_fail else "failed"


def _first_action_group(trace: Trace) -> tuple[Action | None, ActionInput | None, Observation | None]:
    action = None
    action_input = None
    observation = None
    for i, step in enumerate(trace.steps):
        if isinstance(step, Action):
            action = step
            for later in trace.steps[i + 1 :]:
                if isinstance(later, ActionInput) and action_input is None:
                    action_input = later
                elif isinstance(later, Observation):
                    observation = later
                    break
                elif isinstance(later, Action):
                    break
            break
    return action, action_input, observation


def classify_case(trace: Trace, case: InstructionCase, registry: ToolRegistry) -> CaseResult:
    """Score the FIRST Action/Action Input pair of the trace against the gold labels."""
    if trace.query != case.instruction:
        raise ClassificationError(f"trace query does not match case {case.id}")
    result = CaseResult(case_id=case.id)

    thought1 = ""
    for step in trace.steps:
        if isinstance(step, Thought):
            thought1 = step.text
            break
    result.intent_fail = not intent_hit(thought1, case.intent_tags)

    action, action_input, observation = _first_action_group(trace)
    if action is None:
        result.name_fail = True  # failed to invoke any tool at all
        return result

    if action.tool_name not in registry:
        result.hallucination = True  # fictitious tool, distinct from real-but-wrong
        return result

    if action.tool_name != case.gold_tool:
        result.name_fail = True
        return result

    supplied = action_input.parsed if action_input is not None else None
    result.param_fail = not params_match(supplied, case.gold_params)

    obs_ok = False
    obs_data: dict = {}
    if observation is not None:
        try:
            doc = json.loads(observation.text)
            obs_ok = doc.get("status") == "ok"
            obs_data = doc.get("data", {}) if isinstance(doc, dict) else {}
        except json.JSONDecodeError:
            obs_ok = False
    result.correct_call = (not result.param_fail) and obs_ok

    if result.correct_call:
        answer = trace.final_answer() or ""
        for field in case.answer_fields:
            if field not in obs_data or render_answer_value(obs_data[field]) not in answer:
                result.answer_fail = True
                break
    return result

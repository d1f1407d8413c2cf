"""ReAct agent: prompt rendering, strict step grammar, episode loop, trace logs."""
from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

from .errors import AgentConfigError, AmbiguousOutputError, GatewayError, NoStepError, OutputParseError
from .gateway import ChatMessage, CompletionRequest
from .kg.retrieval import ContextBundle
from .tools import ToolRegistry, describe_tools, invoke


@dataclass(frozen=True)
class Thought:
    index: int
    text: str


@dataclass(frozen=True)
class Action:
    tool_name: str


@dataclass(frozen=True)
class ActionInput:
    params_text: str
    parsed: dict | None = None


@dataclass(frozen=True)
class Observation:
    text: str


@dataclass(frozen=True)
class FinalAnswer:
    text: str


TraceStep = Thought | Action | ActionInput | Observation | FinalAnswer

_STEP_KINDS = {
    Thought: "thought",
    Action: "action",
    ActionInput: "action_input",
    Observation: "observation",
    FinalAnswer: "final_answer",
}

_LABELS = ("Thought", "Action Input", "Action", "Observation", "Final Answer")
_LABEL_RE = re.compile(r"^\s*(Thought|Action Input|Action|Observation|Final Answer):\s?(.*)$")


def step_kind(step: TraceStep) -> str:
    return _STEP_KINDS[type(step)]


def step_payload(step: TraceStep) -> dict:
    if isinstance(step, Thought):
        return {"index": step.index, "text": step.text}
    if isinstance(step, Action):
        return {"tool_name": step.tool_name}
    if isinstance(step, ActionInput):
        return {"params_text": step.params_text, "parsed": step.parsed}
    if isinstance(step, Observation):
        return {"text": step.text}
    return {"text": step.text}


def step_from_record(kind: str, payload: dict) -> TraceStep:
    if kind == "thought":
        return Thought(index=payload["index"], text=payload["text"])
    if kind == "action":
        return Action(tool_name=payload["tool_name"])
    if kind == "action_input":
        parsed = payload.get("parsed")
        return ActionInput(params_text=payload["params_text"], parsed=parsed)
    if kind == "observation":
        return Observation(text=payload["text"])
    if kind == "final_answer":
        return FinalAnswer(text=payload["text"])
    raise ValueError(f"unknown step kind {kind!r}")


def serialize_steps(steps: Sequence[TraceStep]) -> str:
    lines = []
    for step in steps:
        if isinstance(step, Thought):
            lines.append(f"Thought: {step.text}")
        elif isinstance(step, Action):
            lines.append(f"Action: {step.tool_name}")
        elif isinstance(step, ActionInput):
            lines.append(f"Action Input: {step.params_text}")
        elif isinstance(step, Observation):
            lines.append(f"Observation: {step.text}")
        elif isinstance(step, FinalAnswer):
            lines.append(f"Final Answer: {step.text}")
    return "\n".join(lines)


def parse_model_output(text: str) -> list[TraceStep]:
    """Parse line-prefixed step labels; total over arbitrary input (raises typed errors only)."""
    if not isinstance(text, str):
        raise NoStepError("model output is not text")
    segments: list[tuple[str, list[str]]] = []
    for line in text.splitlines():
        m = _LABEL_RE.match(line)
        if m:
            segments.append((m.group(1), [m.group(2)]))
        elif segments:
            segments[-1][1].append(line)
    if not segments:
        raise NoStepError("model output contains no step label")
    # Acting and finishing in the same decision is ambiguous: a Final Answer may
    # only follow an Action once that Action's Observation has been seen. Model
    # outputs never contain Observations (stop sequence), so any Action + Final
    # Answer in one completion is rejected; serialized full traces parse fine.
    open_action = False
    final_seen = False
    for label, _ in segments:
        if label == "Action":
            if final_seen:
                raise AmbiguousOutputError("output contains an Action after a Final Answer")
            open_action = True
        elif label == "Observation":
            open_action = False
        elif label == "Final Answer":
            if open_action:
                raise AmbiguousOutputError("output contains both Action and Final Answer")
            final_seen = True
    steps: list[TraceStep] = []
    thought_index = 0
    for label, body_lines in segments:
        body = "\n".join(body_lines).strip()
        if label == "Thought":
            thought_index += 1
            steps.append(Thought(index=thought_index, text=body))
        elif label == "Action":
            steps.append(Action(tool_name=body))
        elif label == "Action Input":
            parsed: dict | None
            try:
                candidate = json.loads(body)
                parsed = candidate if isinstance(candidate, dict) else None
            except json.JSONDecodeError:
                parsed = None
            steps.append(ActionInput(params_text=body, parsed=parsed))
        elif label == "Observation":
            steps.append(Observation(text=body))
        else:
            steps.append(FinalAnswer(text=body))
    return steps


def steps_satisfy_grammar(steps: Sequence[TraceStep]) -> bool:
    """(Thought, Action, ActionInput, Observation)*, Thought?, FinalAnswer — indices 1..n."""
    i = 0
    thought_no = 0
    n = len(steps)
    while i + 3 < n and isinstance(steps[i], Thought):
        if not (
            isinstance(steps[i + 1], Action)
            and isinstance(steps[i + 2], ActionInput)
            and isinstance(steps[i + 3], Observation)
        ):
            break
        thought_no += 1
        if steps[i].index != thought_no:
            return False
        i += 4
    if i < n and isinstance(steps[i], Thought):
        thought_no += 1
        if steps[i].index != thought_no:
            return False
        i += 1
    if i != n - 1 or not isinstance(steps[i], FinalAnswer):
        return False
    return True


@dataclass
class AgentConfig:
    max_steps: int = 6
    context_budget: int = 600
    prompt_template: str = ""

    def __post_init__(self):
        if not self.prompt_template:
            self.prompt_template = DEFAULT_PROMPT_TEMPLATE
        if self.max_steps < 1:
            raise AgentConfigError("max_steps must be >= 1")
        for placeholder in ("{context}", "{tools}", "{query}", "{scratchpad}"):
            if placeholder not in self.prompt_template:
                raise AgentConfigError(f"prompt template missing placeholder {placeholder}")


DEFAULT_PROMPT_TEMPLATE = """You are a meteorological data assistant. Answer the question by calling the available data tools.
{context}Available tools:
{tools}

Respond using exactly this format:
Thought: your reasoning about what the question needs and which tool fits
Action: the tool name to call
Action Input: a JSON object with the tool parameters
Observation: the tool result (the system appends this; never write it yourself)
... (Thought/Action/Action Input/Observation can repeat)
Thought: your reasoning once you have the data
Final Answer: the answer, quoting the returned values

Question: {query}
{scratchpad}"""


def render_prompt(
    config: AgentConfig,
    query: str,
    context: ContextBundle | None,
    tools_text: str,
    scratchpad: str,
) -> tuple[ChatMessage, ...]:
    """System message from the template; empty context omits the knowledge section."""
    knowledge = ""
    if context is not None and context.rendered:
        knowledge = f"Knowledge:\n{context.rendered}\n\n"
    try:
        content = config.prompt_template.format(
            context=knowledge, tools=tools_text, query=query, scratchpad=scratchpad
        )
    except (KeyError, IndexError) as e:
        raise AgentConfigError(f"prompt template has an unknown placeholder: {e}") from e
    return (ChatMessage("system", content),)


@dataclass
class Trace:
    id: str
    query: str
    memory_kind: str
    steps: list[TraceStep] = field(default_factory=list)
    status: str = "completed"  # completed | step_limit | parse_error | gateway_error
    timings_ms: list[float] = field(default_factory=list)

    def final_answer(self) -> str | None:
        for step in reversed(self.steps):
            if isinstance(step, FinalAnswer):
                return step.text
        return None

    def header_record(self) -> dict:
        return {
            "trace_id": self.id,
            "kind": "header",
            "query": self.query,
            "memory_kind": self.memory_kind,
            "status": self.status,
        }

    def step_records(self) -> list[dict]:
        records = []
        for seq, step in enumerate(self.steps, start=1):
            duration = self.timings_ms[seq - 1] if seq - 1 < len(self.timings_ms) else 0.0
            records.append(
                {
                    "trace_id": self.id,
                    "seq": seq,
                    "kind": step_kind(step),
                    "payload": step_payload(step),
                    "duration_ms": duration,
                }
            )
        return records

    def to_json_lines(self) -> str:
        records = [self.header_record()] + self.step_records()
        return "\n".join(json.dumps(r, sort_keys=True, separators=(",", ":")) for r in records) + "\n"


def write_trace_log(trace: Trace, path: str | Path) -> None:
    Path(path).write_text(trace.to_json_lines(), encoding="utf-8")


def read_trace_log(path: str | Path) -> Trace:
    lines = [json.loads(l) for l in Path(path).read_text(encoding="utf-8").splitlines() if l.strip()]
    header = lines[0]
    trace = Trace(
        id=header["trace_id"],
        query=header["query"],
        memory_kind=header["memory_kind"],
        status=header["status"],
    )
    for record in lines[1:]:
        trace.steps.append(step_from_record(record["kind"], record["payload"]))
        trace.timings_ms.append(record["duration_ms"])
    return trace


def default_trace_id(query: str, memory_kind: str) -> str:
    return hashlib.sha256(f"{memory_kind}\n{query}".encode("utf-8")).hexdigest()[:16]


def _null_clock() -> float:
    return 0.0


def run_episode(
    query: str,
    memory,
    registry: ToolRegistry,
    gateway,
    config: AgentConfig,
    api_client,
    trace_id: str | None = None,
    clock: Callable[[], float] | None = None,
    on_step: Callable[[TraceStep, float], None] | None = None,
) -> Trace:
    """Drive one ReAct episode; every failure mode lands in Trace.status, never raises.

    With a replay-mode gateway the default clock is constant, so trace
    serialization is byte-identical across runs.
    """
    if clock is None:
        replaying = getattr(getattr(gateway, "cassette", None), "mode", "") in (
            "replay_strict",
            "replay_fallthrough",
        )
        clock = _null_clock if replaying else time.monotonic
    trace = Trace(
        id=trace_id or default_trace_id(query, memory.kind),
        query=query,
        memory_kind=memory.kind,
        status="step_limit",
    )

    def emit(step: TraceStep, duration_ms: float) -> None:
        trace.steps.append(step)
        trace.timings_ms.append(duration_ms)
        if on_step is not None:
            on_step(step, duration_ms)

    context = memory.retrieve(query, config.context_budget)
    tools_text = describe_tools(registry)
    thought_counter = 0

    for _ in range(config.max_steps):
        scratchpad = serialize_steps(trace.steps)
        messages = render_prompt(config, query, context, tools_text, scratchpad)
        request = CompletionRequest(messages=messages, temperature=0.0, max_tokens=512, stop=("Observation:",))
        started = clock()
        try:
            output = gateway.complete(request)
        except GatewayError:
            trace.status = "gateway_error"
            return trace
        elapsed_ms = (clock() - started) * 1000.0
        try:
            parsed = parse_model_output(output)
        except OutputParseError:
            trace.status = "parse_error"
            return trace

        # keep at most one action group; discard rambling past the first Action Input
        kept: list[TraceStep] = []
        action_seen = False
        for step in parsed:
            if isinstance(step, Observation):
                continue  # the model must not write observations; drop if it does
            if isinstance(step, ActionInput) and not action_seen:
                continue  # stray input with no action
            if isinstance(step, Action):
                if action_seen:
                    break
                action_seen = True
                kept.append(step)
                continue
            if isinstance(step, ActionInput) and action_seen:
                kept.append(step)
                break
            kept.append(step)

        final: FinalAnswer | None = None
        action: Action | None = None
        action_input: ActionInput | None = None
        for step in kept:
            if isinstance(step, Thought):
                thought_counter += 1
                step = Thought(index=thought_counter, text=step.text)
            emit(step, elapsed_ms)
            elapsed_ms = 0.0
            if isinstance(step, FinalAnswer):
                final = step
            elif isinstance(step, Action):
                action = step
            elif isinstance(step, ActionInput):
                action_input = step

        if final is not None:
            trace.status = "completed"
            return trace
        if action is not None:
            if action_input is None:
                action_input = ActionInput(params_text="", parsed=None)
                emit(action_input, 0.0)
            started = clock()
            try:
                invocation = invoke(registry, action.tool_name, action_input.parsed, api_client)
            except Exception:
                trace.status = "gateway_error"
                return trace
            emit(Observation(text=invocation.observation), (clock() - started) * 1000.0)

    trace.status = "step_limit"
    return trace

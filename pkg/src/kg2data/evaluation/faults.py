"""Cassette fault injection for the exactness checks on the failure metrics."""
from __future__ import annotations

import json
from pathlib import Path

FICTITIOUS_TOOL = "get_rainfall_magic"
FAULT_KINDS = ("fictitious", "wrong_tool", "bad_params")


def inject_fault(cassette_path: str | Path, kind: str, wrong_tool: str | None = None) -> None:
    """Rewrite the first Action-bearing response of a cassette file in place.

    fictitious  -> Action names an unregistered tool (hallucination)
    wrong_tool  -> Action names a real but wrong tool (name failure)
    bad_params  -> Action Input is a valid JSON object with wrong params (param failure)
    """
    if kind not in FAULT_KINDS:
        raise ValueError(f"unknown fault kind {kind!r}")
    if kind == "wrong_tool" and not wrong_tool:
        raise ValueError("wrong_tool fault needs a replacement tool name")
    path = Path(cassette_path)
    entries = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]
    mutated = False
    for entry in entries:
        lines = entry["response"].splitlines()
        if not any(line.startswith("Action: ") for line in lines):
            continue
        new_lines = []
        for line in lines:
            if kind == "fictitious" and line.startswith("Action: "):
                line = f"Action: {FICTITIOUS_TOOL}"
            elif kind == "wrong_tool" and line.startswith("Action: "):
                line = f"Action: {wrong_tool}"
            elif kind == "bad_params" and line.startswith("Action Input: "):
                line = 'Action Input: {"bogus_param": "injected"}'
            new_lines.append(line)
        entry["response"] = "\n".join(new_lines)
        mutated = True
        break
    if not mutated:
        raise ValueError(f"no Action-bearing entry found in {path}")
    path.write_text(
        "\n".join(json.dumps(e, sort_keys=True, separators=(",", ":")) for e in entries) + "\n",
        encoding="utf-8",
    )

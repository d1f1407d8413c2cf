"""Three-system ablation runner over per-(system, case) cassettes."""
from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

from ..agent import AgentConfig, Trace, default_trace_id, run_episode
from ..errors import AblationError
from ..gateway import Cassette, Gateway
from ..tools import ToolRegistry
from .cases import InstructionCase
from .classify import classify_case
from .metrics import SYSTEM_BY_MEMORY, EvalReport, compute_metrics


def cassette_path(root: str | Path, memory_kind: str, case_id: str) -> Path:
    return Path(root) / memory_kind / f"{case_id}.jsonl"


def run_case(
    case: InstructionCase,
    memory,
    registry: ToolRegistry,
    api_client,
    cassette_dir: str | Path,
    mode: str = "replay_strict",
    config: AgentConfig | None = None,
    backend=None,
) -> Trace:
    path = cassette_path(cassette_dir, memory.kind, case.id)
    if mode == "record":
        cassette = Cassette("record", path=path)
    elif path.exists():
        cassette = Cassette.load(path, mode)
    elif mode == "replay_strict":
        raise AblationError(f"missing cassette for system={memory.kind} case={case.id}: {path}")
    else:
        cassette = Cassette(mode)
    gateway = Gateway(backend=backend, cassette=cassette)
    return run_episode(
        query=case.instruction,
        memory=memory,
        registry=registry,
        gateway=gateway,
        config=config or AgentConfig(),
        api_client=api_client,
        trace_id=default_trace_id(case.instruction, memory.kind),
        clock=(None if mode != "record" else (lambda: 0.0)),
    )


def run_ablation(
    cases: Sequence[InstructionCase],
    systems: Sequence[str],
    backends: Mapping[str, object],
    registry: ToolRegistry,
    api_client,
    cassette_dir: str | Path,
    mode: str = "replay_strict",
    seed: int = 0,
    config: AgentConfig | None = None,
    record_backend=None,
    keep_traces: bool = False,
) -> tuple[dict[str, EvalReport], dict[str, list[Trace]]]:
    """One episode per (system, case); classify and aggregate into per-system reports.

    All requested backends must have been built from the same corpus; the
    harness refuses cross-corpus comparisons.
    """
    hashes = {backends[kind].corpus_hash for kind in systems}
    if len(hashes) > 1:
        raise AblationError(f"backends built from different corpora: {sorted(hashes)}")
    corpus_digest = next(iter(hashes)) if hashes else ""

    reports: dict[str, EvalReport] = {}
    traces: dict[str, list[Trace]] = {}
    for kind in systems:
        if kind not in SYSTEM_BY_MEMORY:
            raise AblationError(f"unknown system kind {kind!r}")
        memory = backends[kind]
        results = []
        system_traces = []
        for case in cases:
            trace = run_case(
                case,
                memory,
                registry,
                api_client,
                cassette_dir,
                mode=mode,
                config=config,
                backend=record_backend if mode == "record" else None,
            )
            results.append(classify_case(trace, case, registry))
            if keep_traces:
                system_traces.append(trace)
        reports[kind] = compute_metrics(
            results,
            system=SYSTEM_BY_MEMORY[kind],
            corpus_hash=corpus_digest,
            seed=seed,
        )
        traces[kind] = system_traces
    return reports, traces

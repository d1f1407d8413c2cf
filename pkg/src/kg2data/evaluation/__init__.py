"""Evaluation harness: dataset, classification, metrics, significance, ablation."""
from .ablation import cassette_path, run_ablation, run_case
from .cases import InstructionCase, generate_pairs, load_cases, save_cases
from .classify import CaseResult, classify_case, intent_hit, normalize_params, params_match
from .faults import FAULT_KINDS, FICTITIOUS_TOOL, inject_fault
from .gold import GoldScriptedBackend
from .metrics import (
    METRIC_ORDER,
    SYSTEM_BY_MEMORY,
    SYSTEM_LABELS,
    SYSTEMS,
    EvalReport,
    compute_metrics,
    format_pct,
    render_report,
    report_document,
)
from .significance import SignificanceMark, fisher_exact_two_sided, mark_for, significance

__all__ = [
    "cassette_path",
    "run_ablation",
    "run_case",
    "InstructionCase",
    "generate_pairs",
    "load_cases",
    "save_cases",
    "CaseResult",
    "classify_case",
    "intent_hit",
    "normalize_params",
    "params_match",
    "FAULT_KINDS",
    "FICTITIOUS_TOOL",
    "inject_fault",
    "GoldScriptedBackend",
    "METRIC_ORDER",
    "SYSTEM_BY_MEMORY",
    "SYSTEM_LABELS",
    "SYSTEMS",
    "EvalReport",
    "compute_metrics",
    "format_pct",
    "render_report",
    "report_document",
    "SignificanceMark",
    "fisher_exact_two_sided",
    "mark_for",
    "significance",
]

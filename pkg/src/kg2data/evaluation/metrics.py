"""Five-metric aggregation with exact rational arithmetic and table rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal, getcontext
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .classify import CaseResult

getcontext().prec = 50

SYSTEMS = ("kg2data", "rag2data", "chat2data")
SYSTEM_BY_MEMORY = {"kg": "kg2data", "vector": "rag2data", "null": "chat2data"}
SYSTEM_LABELS = {"kg2data": "KG2data", "rag2data": "RAG2data", "chat2data": "chat2data"}

METRIC_ORDER = ("FRIR", "FRNR", "FRPR", "FRHR", "ACAR")
_COUNT_KEYS = {
    "FRIR": "intent_fail",
    "FRNR": "name_fail",
    "FRPR": "param_fail",
    "FRHR": "hallucination",
    "ACAR": "correct",
}


def format_pct(rate: Fraction) -> str:
    """Percentage rendering: round-half-up to 2 decimals."""
    value = Decimal(rate.numerator * 100) / Decimal(rate.denominator)
    return f"{value.quantize(Decimal('0.01'), rounding=ROUND_HALF_UP)}%"


@dataclass
class EvalReport:
    system: str
    n: int
    counts: dict[str, int]  # keys: intent_fail, name_fail, param_fail, hallucination, correct, answer_fail
    corpus_hash: str = ""
    seed: int = 0

    def rate(self, metric: str) -> Fraction:
        return Fraction(self.counts[_COUNT_KEYS[metric]], self.n)

    def rates(self) -> dict[str, Fraction]:
        return {m: self.rate(m) for m in METRIC_ORDER}

    def pct(self, metric: str) -> str:
        return format_pct(self.rate(metric))

    def rendered_row(self) -> str:
        return " ".join(self.pct(m) for m in METRIC_ORDER)

    def to_doc(self) -> dict:
        return {
            "system": self.system,
            "n": self.n,
            "counts": dict(self.counts),
            "rates": {
                m: {
                    "numerator": self.rate(m).numerator,
                    "denominator": self.rate(m).denominator,
                    "pct": self.pct(m),
                }
                for m in METRIC_ORDER
            },
            "corpus_hash": self.corpus_hash,
            "seed": self.seed,
        }

    @classmethod
    def from_doc(cls, doc: Mapping) -> "EvalReport":
        return cls(
            system=doc["system"],
            n=doc["n"],
            counts=dict(doc["counts"]),
            corpus_hash=doc.get("corpus_hash", ""),
            seed=doc.get("seed", 0),
        )


def compute_metrics(
    results: Sequence[CaseResult] | None,
    n: int | None = None,
    counts: Mapping[str, int] | None = None,
    system: str = "kg2data",
    corpus_hash: str = "",
    seed: int = 0,
) -> EvalReport:
    """Aggregate flags into the five rates; counts may be given directly."""
    if counts is None:
        if not results:
            raise ValueError("cannot compute metrics over zero results")
        counts = {
            "intent_fail": sum(r.intent_fail for r in results),
            "name_fail": sum(r.name_fail for r in results),
            "param_fail": sum(r.param_fail for r in results),
            "hallucination": sum(r.hallucination for r in results),
            "answer_fail": sum(r.answer_fail for r in results),
            "correct": sum(r.outcome == "correct" for r in results),
        }
        if n is None:
            n = len(results)
    if n is None or n <= 0:
        raise ValueError("n must be a positive total of API calls")
    counts = dict(counts)
    counts.setdefault("answer_fail", 0)
    report = EvalReport(system=system, n=n, counts=counts, corpus_hash=corpus_hash, seed=seed)
    # metric identities hold on every run: a hallucinated or wrong-name first
    # action can never be a correct call
    assert report.rate("ACAR") <= 1 - report.rate("FRHR")
    assert report.rate("ACAR") <= 1 - report.rate("FRNR")
    return report


def render_report(reports: Sequence[EvalReport], marks: Mapping[str, Sequence] | None = None) -> str:
    """Aligned comparison table; significance rows sit beneath compared systems."""
    marks = marks or {}
    widths = [10] + [8] * len(METRIC_ORDER)
    rows: list[list[str]] = [[""] + list(METRIC_ORDER)]
    for report in reports:
        rows.append([SYSTEM_LABELS.get(report.system, report.system)] + [report.pct(m) for m in METRIC_ORDER])
        system_marks = marks.get(report.system)
        if system_marks:
            by_metric = {mk.metric: mk.mark for mk in system_marks}
            rows.append([""] + [by_metric.get(m, "") for m in METRIC_ORDER])
    lines = []
    for row in rows:
        lines.append("".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


def report_document(reports: Sequence[EvalReport], marks: Mapping[str, Sequence] | None = None) -> str:
    """Machine-readable JSON with exact rational counts; byte-stable for fixed inputs."""
    doc = {
        "reports": [r.to_doc() for r in reports],
        "significance": {
            system: [
                {"metric": mk.metric, "p_value": str(mk.p_value), "mark": mk.mark}
                for mk in system_marks
            ]
            for system, system_marks in (marks or {}).items()
        },
        "table": render_report(reports, marks),
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"

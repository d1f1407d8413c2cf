"""Two-sided Fisher exact test with exact rational p-values and comparison marks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .metrics import METRIC_ORDER, EvalReport

_P_STRONG = Fraction(1, 20)  # 0.05
_P_WEAK = Fraction(1, 10)  # 0.1


@dataclass(frozen=True)
class SignificanceMark:
    metric: str
    p_value: Fraction
    mark: str  # "**" | "*" | ""


def fisher_exact_two_sided(a: int, b: int, c: int, d: int) -> Fraction:
    """p-value for the 2x2 table [[a, b], [c, d]]: sum of hypergeometric
    probabilities no larger than the observed table's, margins fixed."""
    for value in (a, b, c, d):
        if value < 0:
            raise ValueError("table counts must be non-negative")
    r1, r2 = a + b, c + d
    k = a + c
    n = r1 + r2
    if n == 0 or r1 == 0 or r2 == 0 or k == 0 or k == n:
        return Fraction(1)
    denom = comb(n, k)

    def prob(x: int) -> Fraction:
        return Fraction(comb(r1, x) * comb(r2, k - x), denom)

    observed = prob(a)
    lo = max(0, k - r2)
    hi = min(k, r1)
    total = Fraction(0)
    for x in range(lo, hi + 1):
        p = prob(x)
        if p <= observed:
            total += p
    return min(total, Fraction(1))


def mark_for(p: Fraction) -> str:
    if p <= _P_STRONG:
        return "**"
    if p <= _P_WEAK:
        return "*"
    return ""


def significance(report_a: EvalReport, report_b: EvalReport) -> list[SignificanceMark]:
    """Per-metric Fisher exact comparison of two reports (n may differ)."""
    out: list[SignificanceMark] = []
    for metric in METRIC_ORDER:
        count_a = int(report_a.rate(metric) * report_a.n)
        count_b = int(report_b.rate(metric) * report_b.n)
        p = fisher_exact_two_sided(count_a, report_a.n - count_a, count_b, report_b.n - count_b)
        out.append(SignificanceMark(metric=metric, p_value=p, mark=mark_for(p)))
    return out

import json
from fractions import Fraction

import pytest

from kg2data.evaluation.classify import CaseResult
from kg2data.evaluation.metrics import (
    EvalReport,
    compute_metrics,
    format_pct,
    render_report,
    report_document,
)
from kg2data.evaluation.significance import significance


def counts(intent=0, name=0, param=0, halluc=0, correct=0, answer=0):
    return {
        "intent_fail": intent,
        "name_fail": name,
        "param_fail": param,
        "hallucination": halluc,
        "correct": correct,
        "answer_fail": answer,
    }


def test_reference_row_rendered_exactly():
    # counts (0,1,2,0,62) over n=70 must render the frozen reference row
    report = compute_metrics(None, n=70, counts=counts(name=1, param=2, correct=62), system="kg2data")
    assert report.rendered_row() == "0.00% 1.43% 2.86% 0.00% 88.57%"


def test_rates_are_exact_rationals():
    report = compute_metrics(None, n=70, counts=counts(name=1, param=2, correct=62))
    assert report.rate("FRNR") == Fraction(1, 70)
    assert report.rate("FRPR") == Fraction(1, 35)
    assert report.rate("ACAR") == Fraction(31, 35)
    for metric in ("FRIR", "FRNR", "FRPR", "FRHR", "ACAR"):
        assert report.rate(metric) * report.n == int(report.rate(metric) * report.n)


def test_all_correct_and_all_hallucinated_edges():
    perfect = compute_metrics(None, n=70, counts=counts(correct=70))
    assert perfect.rendered_row() == "0.00% 0.00% 0.00% 0.00% 100.00%"
    broken = compute_metrics(None, n=70, counts=counts(halluc=70))
    assert broken.pct("FRHR") == "100.00%"
    assert broken.pct("ACAR") == "0.00%"


def test_round_half_up_rendering():
    assert format_pct(Fraction(1, 8)) == "12.50%"
    assert format_pct(Fraction(1, 1000)) == "0.10%"
    assert format_pct(Fraction(25, 10000)) == "0.25%"
    assert format_pct(Fraction(125, 100000)) == "0.13%"  # 0.125% rounds half up
    assert format_pct(Fraction(0)) == "0.00%"
    assert format_pct(Fraction(1)) == "100.00%"


def test_zero_n_is_an_error():
    with pytest.raises(ValueError):
        compute_metrics([], n=None)
    with pytest.raises(ValueError):
        compute_metrics(None, n=0, counts=counts())


def test_aggregation_from_case_results():
    results = [
        CaseResult("a", correct_call=True),
        CaseResult("b", correct_call=True, answer_fail=True),
        CaseResult("c", hallucination=True),
        CaseResult("d", name_fail=True, intent_fail=True),
    ]
    report = compute_metrics(results)
    assert report.n == 4
    assert report.counts["correct"] == 1  # answer_fail excludes case b
    assert report.counts["hallucination"] == 1
    assert report.counts["intent_fail"] == 1
    assert report.counts["answer_fail"] == 1


def test_metric_identities_assert_on_violation():
    with pytest.raises(AssertionError):
        compute_metrics(None, n=70, counts=counts(halluc=20, correct=60))


def test_render_report_matches_table_layout():
    kg = compute_metrics(None, n=70, counts=counts(name=1, param=2, correct=62), system="kg2data")
    rag = compute_metrics(
        None, n=70, counts=counts(intent=6, name=11, param=7, halluc=7, correct=50), system="rag2data"
    )
    chat = compute_metrics(
        None, n=70, counts=counts(intent=1, name=5, param=5, halluc=6, correct=50), system="chat2data"
    )
    marks = {"rag2data": significance(kg, rag), "chat2data": significance(kg, chat)}
    table = render_report([kg, rag, chat], marks)
    lines = table.splitlines()
    assert lines[0].split() == ["FRIR", "FRNR", "FRPR", "FRHR", "ACAR"]
    assert lines[1].split() == ["KG2data", "0.00%", "1.43%", "2.86%", "0.00%", "88.57%"]
    assert lines[2].split()[0] == "RAG2data"
    assert lines[3].strip()  # significance row beneath the compared system
    assert lines[4].split()[0] == "chat2data"
    assert len(lines) == 6


def test_single_report_has_no_significance_rows():
    kg = compute_metrics(None, n=70, counts=counts(correct=70), system="kg2data")
    table = render_report([kg])
    assert len(table.splitlines()) == 2


def test_report_document_is_machine_readable_and_stable():
    kg = compute_metrics(None, n=70, counts=counts(name=1, param=2, correct=62), system="kg2data")
    doc_text = report_document([kg])
    assert doc_text == report_document([kg])
    doc = json.loads(doc_text)
    rates = doc["reports"][0]["rates"]
    assert rates["FRNR"] == {"numerator": 1, "denominator": 70, "pct": "1.43%"}
    assert doc["reports"][0]["counts"]["correct"] == 62


def test_report_doc_round_trip():
    report = compute_metrics(None, n=70, counts=counts(name=1, correct=62), system="kg2data", seed=7)
    again = EvalReport.from_doc(report.to_doc())
    assert again == report

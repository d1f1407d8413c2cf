import io
import json

import pytest

from kg2data import resources
from kg2data.interface.cli import cli_dispatch


def test_unknown_subcommand_is_usage_error(capsys):
    assert cli_dispatch(["frobnicate"]) == 1
    assert "usage" in capsys.readouterr().err


def test_missing_required_flag_is_usage_error(capsys):
    assert cli_dispatch(["build-kg", "--out", "x.jsonl"]) == 1
    err = capsys.readouterr().err
    assert "usage" in err and "--corpus" in err


def test_no_subcommand_prints_usage(capsys):
    assert cli_dispatch([]) == 1


def test_eval_twice_is_byte_identical(tmp_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    for out in (out_a, out_b):
        code = cli_dispatch(
            ["eval", "--systems", "kg,vector,null", "--seed", "7", "--out", str(out)]
        )
        assert code == 0
    assert (out_a / "eval_report.json").read_bytes() == (out_b / "eval_report.json").read_bytes()


def test_eval_report_content(tmp_path, capsys):
    out = tmp_path / "reports"
    assert cli_dispatch(["eval", "--systems", "kg", "--seed", "0", "--out", str(out)]) == 0
    doc = json.loads((out / "eval_report.json").read_text())
    assert doc["reports"][0]["system"] == "kg2data"
    assert doc["reports"][0]["rates"]["ACAR"]["pct"] == "100.00%"
    table = capsys.readouterr().out
    assert "KG2data" in table


def test_report_command_prints_latest_table(tmp_path, capsys):
    out = tmp_path / "reports"
    cli_dispatch(["eval", "--systems", "kg", "--seed", "0", "--out", str(out)])
    capsys.readouterr()
    assert cli_dispatch(["report", "--reports", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "KG2data" in printed and "100.00%" in printed


def test_report_without_file_is_runtime_error(tmp_path, capsys):
    assert cli_dispatch(["report", "--reports", str(tmp_path / "nothing")]) == 2


def test_eval_missing_cassettes_is_runtime_error(tmp_path, capsys):
    code = cli_dispatch(
        ["eval", "--systems", "kg", "--cassettes", str(tmp_path / "none"), "--out", str(tmp_path / "r")]
    )
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_build_kg_from_shipped_cassette(tmp_path, capsys):
    out = tmp_path / "snapshot.jsonl"
    code = cli_dispatch(
        ["build-kg", "--corpus", str(resources.CORPUS_DIR), "--out", str(out), "--seed", "0"]
    )
    assert code == 0
    lines = [json.loads(l) for l in out.read_text().splitlines()]
    tags = {l["t"] for l in lines}
    assert tags == {"meta", "entity", "triple", "community"}
    # built snapshot matches the shipped one exactly (same cassette, same seed)
    assert out.read_bytes() == resources.SNAPSHOT_FILE.read_bytes()


def test_gen_pairs_reproduces_shipped_dataset(tmp_path):
    out = tmp_path / "cases.jsonl"
    assert cli_dispatch(["gen-pairs", "--out", str(out)]) == 0
    assert out.read_bytes() == resources.CASES_FILE.read_bytes()


def test_record_gold_then_eval_round_trip(tmp_path):
    gold = tmp_path / "gold"
    assert cli_dispatch(["record-gold", "--out", str(gold), "--systems", "kg", "--seed", "0"]) == 0
    out = tmp_path / "reports"
    assert cli_dispatch(
        ["eval", "--systems", "kg", "--cassettes", str(gold), "--seed", "0", "--out", str(out)]
    ) == 0
    doc = json.loads((out / "eval_report.json").read_text())
    assert doc["reports"][0]["rates"]["ACAR"]["pct"] == "100.00%"


def test_chat_null_memory_prints_steps_without_knowledge(monkeypatch, capsys):
    lines = iter(["Report the dew point at station S77 on 2024-05-20.", ""])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(lines))
    assert cli_dispatch(["chat", "--memory", "null"]) == 0
    out = capsys.readouterr().out
    assert "Thought: " in out and "Final Answer: " in out
    assert "Knowledge" not in out
    assert "[status: completed]" in out


def test_chat_unscripted_query_falls_back(monkeypatch, capsys):
    lines = iter(["something nobody recorded", ""])
    monkeypatch.setattr("builtins.input", lambda prompt="": next(lines))
    assert cli_dispatch(["chat", "--memory", "kg"]) == 0
    out = capsys.readouterr().out
    assert "Final Answer: " in out  # deterministic fallback answer


def test_bad_config_file_is_runtime_error(tmp_path, capsys):
    bad = tmp_path / "config.json"
    bad.write_text("{not json", encoding="utf-8")
    assert cli_dispatch(["--config", str(bad), "report"]) == 2

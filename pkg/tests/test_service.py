import json
import time
import urllib.error
import urllib.request

import pytest

from kg2data.agent import run_episode, step_kind, step_payload
from kg2data.interface.config import AppConfig
from kg2data.interface.context import AppContext, build_context
from kg2data.interface.service import serve_sessions


@pytest.fixture(scope="module")
def context(tmp_path_factory):
    config = AppConfig()
    config.reports_dir = tmp_path_factory.mktemp("reports")
    return build_context(config)


@pytest.fixture(scope="module")
def service(context):
    srv = serve_sessions(context, port=0)
    yield srv
    srv.stop()


def _post(base, path, doc):
    req = urllib.request.Request(
        f"{base}{path}",
        data=json.dumps(doc).encode("utf-8"),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req, timeout=15) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as e:
        return e.code, json.loads(e.read())


def _get(base, path, accept="application/json", timeout=20):
    req = urllib.request.Request(f"{base}{path}", headers={"Accept": accept})
    try:
        with urllib.request.urlopen(req, timeout=timeout) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as e:
        return e.code, e.read()


def _drain_events(base, session_id, after=0):
    events = []
    for _ in range(50):
        status, body = _get(base, f"/v1/sessions/{session_id}/events?after={after}")
        assert status == 200
        doc = json.loads(body)
        events.extend(doc["events"])
        if any(e["step"]["kind"] in ("final", "error") for e in doc["events"]):
            break
        if doc.get("done") and not doc["events"]:
            break
        if doc["events"]:
            after = doc["events"][-1]["seq"]
    return events


GOLD_QUERY = "Report the dew point at station S77 on 2024-05-20."


def test_create_session_and_run_gold_episode(service, cases):
    status, doc = _post(service.base_url, "/v1/sessions", {"memory_kind": "kg"})
    assert status == 200
    session_id = doc["id"]
    status, doc = _post(service.base_url, f"/v1/sessions/{session_id}/messages", {"text": GOLD_QUERY})
    assert status == 200
    trace_id = doc["trace_id"]
    events = _drain_events(service.base_url, session_id)
    kinds = [e["step"]["kind"] for e in events]
    assert kinds == [
        "thought",
        "action",
        "action_input",
        "observation",
        "thought",
        "final_answer",
        "final",
    ]
    assert [e["seq"] for e in events] == list(range(1, len(events) + 1))
    final = events[-1]
    assert final["step"]["payload"]["status"] == "completed"
    assert "dew_point_c" in final["step"]["payload"]["answer"]
    assert all(e["trace_id"] == trace_id for e in events)


def test_unknown_session_is_404(service):
    status, _ = _get(service.base_url, "/v1/sessions/nope/events")
    assert status == 404
    status, _ = _post(service.base_url, "/v1/sessions/nope/messages", {"text": "hi"})
    assert status == 404


def test_malformed_body_is_400(service):
    req = urllib.request.Request(
        f"{service.base_url}/v1/sessions",
        data=b"{broken",
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    with pytest.raises(urllib.error.HTTPError) as err:
        urllib.request.urlopen(req, timeout=10)
    assert err.value.code == 400
    status, _ = _post(service.base_url, "/v1/sessions", {"memory_kind": "psychic"})
    assert status == 400


def test_message_while_running_is_409(service, monkeypatch):
    status, doc = _post(service.base_url, "/v1/sessions", {"memory_kind": "null"})
    session_id = doc["id"]
    session = service.hub.sessions[session_id]
    with session.lock:
        session.running = True
    try:
        status, _ = _post(service.base_url, f"/v1/sessions/{session_id}/messages", {"text": "hello"})
        assert status == 409
    finally:
        with session.lock:
            session.running = False


def test_resume_after_seq_returns_suffix_without_duplicates(service):
    _, doc = _post(service.base_url, "/v1/sessions", {"memory_kind": "kg"})
    session_id = doc["id"]
    _post(service.base_url, f"/v1/sessions/{session_id}/messages", {"text": GOLD_QUERY})
    all_events = _drain_events(service.base_url, session_id)
    suffix = _drain_events(service.base_url, session_id, after=3)
    assert [e["seq"] for e in suffix] == [e["seq"] for e in all_events if e["seq"] > 3]
    assert suffix == all_events[3:]


def test_sse_stream_delivers_frames_with_ids(service):
    _, doc = _post(service.base_url, "/v1/sessions", {"memory_kind": "vector"})
    session_id = doc["id"]
    _post(service.base_url, f"/v1/sessions/{session_id}/messages", {"text": GOLD_QUERY})
    status, raw = _get(
        service.base_url, f"/v1/sessions/{session_id}/events?after=0", accept="text/event-stream"
    )
    assert status == 200
    frames = [f for f in raw.decode("utf-8").split("\n\n") if f.strip()]
    ids = []
    payloads = []
    for frame in frames:
        lines = frame.splitlines()
        ids.append(int(lines[0].removeprefix("id: ")))
        payloads.append(json.loads(lines[1].removeprefix("data: ")))
    assert ids == sorted(ids) and len(set(ids)) == len(ids)
    assert payloads[-1]["step"]["kind"] == "final"


def test_trace_endpoint_reconstructs_episode_exactly(service, context, cases):
    _, doc = _post(service.base_url, "/v1/sessions", {"memory_kind": "kg"})
    session_id = doc["id"]
    _, doc = _post(service.base_url, f"/v1/sessions/{session_id}/messages", {"text": GOLD_QUERY})
    trace_id = doc["trace_id"]
    events = _drain_events(service.base_url, session_id)
    status, raw = _get(service.base_url, f"/v1/traces/{trace_id}")
    assert status == 200
    trace_doc = json.loads(raw)

    # event completeness: step events reconstruct the persisted trace exactly
    step_events = [e for e in events if e["step"]["kind"] not in ("final", "error")]
    assert [(e["step"]["kind"], e["step"]["payload"]) for e in step_events] == [
        (r["kind"], r["payload"]) for r in trace_doc["steps"]
    ]
    assert trace_doc["header"]["status"] == "completed"

    # the HTTP episode equals a direct in-process episode on the same cassettes
    direct = run_episode(
        query=GOLD_QUERY,
        memory=context.backends["kg"],
        registry=context.registry,
        gateway=context.gateway_for("kg", GOLD_QUERY),
        config=context.agent_config,
        api_client=context.api_client,
    )
    assert [(step_kind(s), step_payload(s)) for s in direct.steps] == [
        (r["kind"], r["payload"]) for r in trace_doc["steps"]
    ]


def test_reports_endpoint_serves_latest_json(service, context):
    status, _ = _get(service.base_url, "/v1/reports/latest")
    assert status == 404
    payload = b'{"reports": [], "significance": {}, "table": ""}\n'
    (context.config.reports_dir / "eval_report.json").write_bytes(payload)
    status, raw = _get(service.base_url, "/v1/reports/latest")
    assert status == 200
    assert raw == payload


def test_episode_persists_a_trace_log(service, context):
    _, doc = _post(service.base_url, "/v1/sessions", {"memory_kind": "null"})
    session_id = doc["id"]
    _, doc = _post(service.base_url, f"/v1/sessions/{session_id}/messages", {"text": GOLD_QUERY})
    trace_id = doc["trace_id"]
    _drain_events(service.base_url, session_id)
    log = context.config.reports_dir / "traces" / f"{trace_id}.jsonl"
    assert log.exists()
    from kg2data.agent import read_trace_log

    trace = read_trace_log(log)
    assert trace.query == GOLD_QUERY
    assert trace.id == trace_id

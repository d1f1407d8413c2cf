"""HTTP session service: sessions, messages, live trace-event stream, reports."""
from __future__ import annotations

import json
import threading
import time
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from ..agent import Trace, default_trace_id, run_episode, step_kind, step_payload, write_trace_log
from .context import MEMORY_KINDS, AppContext

LONG_POLL_SECONDS = 10.0


class TraceFeed:
    """Ordered event buffer for one trace; seq strictly increasing, terminal last."""

    def __init__(self, session_id: str, trace_id: str):
        self.session_id = session_id
        self.trace_id = trace_id
        self.events: list[dict] = []
        self.done = False
        self.cond = threading.Condition()

    def append_step(self, step, duration_ms: float) -> None:
        with self.cond:
            self.events.append(
                {
                    "session_id": self.session_id,
                    "trace_id": self.trace_id,
                    "seq": len(self.events) + 1,
                    "step": {"kind": step_kind(step), "payload": step_payload(step)},
                    "duration_ms": duration_ms,
                }
            )
            self.cond.notify_all()

    def append_terminal(self, trace: Trace) -> None:
        kind = "final" if trace.status == "completed" else "error"
        payload = {"status": trace.status, "answer": trace.final_answer() or ""}
        with self.cond:
            self.events.append(
                {
                    "session_id": self.session_id,
                    "trace_id": self.trace_id,
                    "seq": len(self.events) + 1,
                    "step": {"kind": kind, "payload": payload},
                    "duration_ms": 0.0,
                }
            )
            self.done = True
            self.cond.notify_all()

    def wait_for(self, after: int, timeout: float) -> list[dict]:
        deadline = time.monotonic() + timeout
        with self.cond:
            while True:
                fresh = [e for e in self.events if e["seq"] > after]
                if fresh or self.done:
                    return fresh
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    return []
                self.cond.wait(remaining)


class Session:
    def __init__(self, memory_kind: str):
        self.id = uuid.uuid4().hex[:12]
        self.memory_kind = memory_kind
        self.created_at = time.time()
        self.trace_ids: list[str] = []
        self.running = False
        self.lock = threading.Lock()


class SessionHub:
    def __init__(self, context: AppContext):
        self.context = context
        self.sessions: dict[str, Session] = {}
        self.feeds: dict[str, TraceFeed] = {}  # by trace id
        self.traces: dict[str, Trace] = {}
        self.lock = threading.Lock()

    def create_session(self, memory_kind: str) -> Session:
        session = Session(memory_kind)
        with self.lock:
            self.sessions[session.id] = session
        return session

    def start_episode(self, session: Session, text: str) -> str:
        trace_id = default_trace_id(text, session.memory_kind) + f"-{len(session.trace_ids)}"
        feed = TraceFeed(session.id, trace_id)
        with self.lock:
            self.feeds[trace_id] = feed
        session.trace_ids.append(trace_id)

        def work():
            try:
                trace = run_episode(
                    query=text,
                    memory=self.context.backends[session.memory_kind],
                    registry=self.context.registry,
                    gateway=self.context.gateway_for(session.memory_kind, text),
                    config=self.context.agent_config,
                    api_client=self.context.api_client,
                    trace_id=trace_id,
                    on_step=feed.append_step,
                )
            except Exception as e:  # defensive: surface as an error event
                trace = Trace(id=trace_id, query=text, memory_kind=session.memory_kind, status="gateway_error")
                trace.steps = []
                feed.append_terminal(trace)
                with session.lock:
                    session.running = False
                raise e
            with self.lock:
                self.traces[trace_id] = trace
            trace_dir = Path(self.context.config.reports_dir) / "traces"
            trace_dir.mkdir(parents=True, exist_ok=True)
            write_trace_log(trace, trace_dir / f"{trace_id}.jsonl")
            feed.append_terminal(trace)
            with session.lock:
                session.running = False

        threading.Thread(target=work, daemon=True).start()
        return trace_id

    def latest_feed(self, session: Session) -> TraceFeed | None:
        if not session.trace_ids:
            return None
        return self.feeds.get(session.trace_ids[-1])


class _ServiceHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):
        pass

    # -- helpers ----------------------------------------------------------

    def _json(self, code: int, doc: dict) -> None:
        data = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def _body(self) -> dict | None:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        try:
            doc = json.loads(raw.decode("utf-8")) if raw else {}
        except (json.JSONDecodeError, UnicodeDecodeError):
            return None
        return doc if isinstance(doc, dict) else None

    # -- routing ----------------------------------------------------------

    def do_POST(self):
        hub: SessionHub = self.server.hub
        parsed = urlparse(self.path)
        parts = [p for p in parsed.path.split("/") if p]
        if parts == ["v1", "sessions"]:
            body = self._body()
            if body is None:
                self._json(400, {"error": "malformed JSON body"})
                return
            kind = body.get("memory_kind", "kg")
            if kind not in MEMORY_KINDS:
                self._json(400, {"error": f"memory_kind must be one of {list(MEMORY_KINDS)}"})
                return
            session = hub.create_session(kind)
            self._json(200, {"id": session.id, "memory_kind": kind})
            return
        if len(parts) == 4 and parts[:2] == ["v1", "sessions"] and parts[3] == "messages":
            session = hub.sessions.get(parts[2])
            if session is None:
                self._json(404, {"error": "unknown session"})
                return
            body = self._body()
            if body is None or not isinstance(body.get("text"), str) or not body["text"].strip():
                self._json(400, {"error": "body must carry a non-empty 'text'"})
                return
            with session.lock:
                if session.running:
                    self._json(409, {"error": "an episode is already running for this session"})
                    return
                session.running = True
            trace_id = hub.start_episode(session, body["text"])
            self._json(200, {"trace_id": trace_id})
            return
        self._json(404, {"error": f"unknown path {parsed.path}"})

    def do_GET(self):
        hub: SessionHub = self.server.hub
        parsed = urlparse(self.path)
        parts = [p for p in parsed.path.split("/") if p]
        query = parse_qs(parsed.query)
        if len(parts) == 4 and parts[:2] == ["v1", "sessions"] and parts[3] == "events":
            session = hub.sessions.get(parts[2])
            if session is None:
                self._json(404, {"error": "unknown session"})
                return
            after = int(query.get("after", ["0"])[0])
            last_event_id = self.headers.get("Last-Event-ID")
            if last_event_id is not None:
                after = max(after, int(last_event_id))
            trace_id = query.get("trace", [None])[0]
            feed = hub.feeds.get(trace_id) if trace_id else hub.latest_feed(session)
            if feed is None:
                self._json(404, {"error": "session has no trace yet"})
                return
            accept = self.headers.get("Accept", "")
            if "text/event-stream" in accept:
                self._stream_events(feed, after)
            else:
                events = feed.wait_for(after, LONG_POLL_SECONDS)
                self._json(200, {"events": events, "done": feed.done and not events})
            return
        if len(parts) == 3 and parts[:2] == ["v1", "traces"]:
            trace = hub.traces.get(parts[2])
            if trace is None:
                self._json(404, {"error": "unknown trace"})
                return
            self._json(
                200,
                {
                    "header": trace.header_record(),
                    "steps": trace.step_records(),
                },
            )
            return
        if parts == ["v1", "reports", "latest"]:
            path = Path(self.server.reports_dir) / "eval_report.json"
            if not path.exists():
                self._json(404, {"error": "no report available"})
                return
            data = path.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)
            return
        self._json(404, {"error": f"unknown path {parsed.path}"})

    def _stream_events(self, feed: TraceFeed, after: int) -> None:
        self.send_response(200)
        self.send_header("Content-Type", "text/event-stream")
        self.send_header("Cache-Control", "no-cache")
        self.send_header("Connection", "close")
        self.end_headers()
        cursor = after
        try:
            while True:
                events = feed.wait_for(cursor, LONG_POLL_SECONDS)
                for event in events:
                    frame = f"id: {event['seq']}\ndata: {json.dumps(event, sort_keys=True, separators=(',', ':'))}\n\n"
                    self.wfile.write(frame.encode("utf-8"))
                    cursor = event["seq"]
                self.wfile.flush()
                if feed.done and not feed.wait_for(cursor, 0):
                    break
        except (BrokenPipeError, ConnectionResetError):
            pass


class SessionService(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, context: AppContext, host: str = "127.0.0.1", port: int = 0):
        super().__init__((host, port), _ServiceHandler)
        self.hub = SessionHub(context)
        self.reports_dir = context.config.reports_dir
        self._thread: threading.Thread | None = None

    @property
    def base_url(self) -> str:
        host, port = self.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "SessionService":
        self._thread = threading.Thread(target=self.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self.shutdown()
        self.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)


def serve_sessions(context: AppContext, host: str = "127.0.0.1", port: int = 0) -> SessionService:
    return SessionService(context, host, port).start()

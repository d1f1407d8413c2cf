"""Single choke-point for model calls: remote chat completions plus record/replay cassettes."""
from __future__ import annotations

import hashlib
import json
import threading
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path

from .errors import CassetteMissError, CassetteModeError, GatewayError

CASSETTE_MODES = ("record", "replay_strict", "replay_fallthrough")

# Returned by fallthrough replay when no recorded response and no live backend exist.
FALLBACK_RESPONSE = "Final Answer: no recorded response is available for this request."


@dataclass(frozen=True)
class ChatMessage:
    role: str  # system | user | assistant
    content: str

    def __post_init__(self):
        if self.role not in ("system", "user", "assistant"):
            raise ValueError(f"unknown role {self.role!r}")
        if self.role in ("system", "user") and not self.content:
            raise ValueError(f"{self.role} message content must be non-empty")


@dataclass(frozen=True)
class CompletionRequest:
    messages: tuple[ChatMessage, ...]
    temperature: float = 0.0
    max_tokens: int = 512
    stop: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.messages:
            raise ValueError("messages must be non-empty")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")


def canonical_request(request: CompletionRequest) -> dict:
    """Sorted-field form with per-message trailing whitespace trimmed."""
    return {
        "max_tokens": request.max_tokens,
        "messages": [{"content": m.content.rstrip(), "role": m.role} for m in request.messages],
        "stop": list(request.stop),
        "temperature": int(request.temperature) if float(request.temperature).is_integer() else request.temperature,
    }


def request_key(request: CompletionRequest) -> str:
    blob = json.dumps(canonical_request(request), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _digest_hint(request: CompletionRequest) -> str:
    text = " ".join(request.messages[-1].content.split())
    return text[:80]


class Cassette:
    """Recorded request-key -> response mapping, one JSON line per entry."""

    def __init__(self, mode: str, entries: dict[str, str] | None = None, path: str | Path | None = None):
        if mode not in CASSETTE_MODES:
            raise CassetteModeError(f"unknown cassette mode {mode!r}")
        self.mode = mode
        self.entries: dict[str, str] = dict(entries or {})
        self.path = Path(path) if path is not None else None
        self._digests: dict[str, str] = {}

    @classmethod
    def load(cls, path: str | Path, mode: str) -> "Cassette":
        cassette = cls(mode, path=path)
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                doc = json.loads(line)
                cassette.entries[doc["key"]] = doc["response"]
                cassette._digests[doc["key"]] = doc.get("request_digest", "")
        return cassette

    def save(self, path: str | Path | None = None) -> None:
        target = Path(path) if path is not None else self.path
        if target is None:
            raise CassetteModeError("cassette has no path to save to")
        target.parent.mkdir(parents=True, exist_ok=True)
        lines = [
            json.dumps(
                {"key": k, "request_digest": self._digests.get(k, ""), "response": v},
                sort_keys=True,
                separators=(",", ":"),
            )
            for k, v in self.entries.items()
        ]
        target.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")

    def record(self, request: CompletionRequest, response: str) -> "Cassette":
        if self.mode != "record":
            raise CassetteModeError(f"cannot record in mode {self.mode}")
        key = request_key(request)
        self.entries[key] = response
        self._digests[key] = _digest_hint(request)
        return self

    def lookup(self, request: CompletionRequest) -> str | None:
        return self.entries.get(request_key(request))


class RemoteBackend:
    """Chat-completion JSON over HTTP; shape follows the common wire format."""

    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key: str | None = None,
        timeout: float = 60.0,
        retries: int = 3,
        backoff: float = 0.5,
    ):
        self.endpoint = endpoint
        self.model = model
        self.api_key = api_key
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff

    def complete(self, request: CompletionRequest) -> str:
        body = {
            "model": self.model,
            "messages": [{"role": m.role, "content": m.content} for m in request.messages],
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }
        if request.stop:
            body["stop"] = list(request.stop)
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        data = json.dumps(body).encode("utf-8")
        last_error: Exception | None = None
        for attempt in range(self.retries):
            req = urllib.request.Request(self.endpoint, data=data, headers=headers, method="POST")
            try:
                with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                    doc = json.loads(resp.read().decode("utf-8"))
                return doc["choices"][0]["message"]["content"]
            except urllib.error.HTTPError as e:
                raise GatewayError(f"completion endpoint returned status {e.code}") from e
            except (urllib.error.URLError, OSError, KeyError, json.JSONDecodeError) as e:
                last_error = e
                if attempt + 1 < self.retries:
                    time.sleep(self.backoff * (2 ** attempt))
        raise GatewayError(f"transport failure after {self.retries} attempts: {last_error}")


class ScriptedBackend:
    """Test/fixture backend: delegates to a plain function of the request."""

    def __init__(self, fn):
        self._fn = fn

    def complete(self, request: CompletionRequest) -> str:
        return self._fn(request)


class Gateway:
    """Routes complete() through a cassette and/or a live backend."""

    def __init__(self, backend=None, cassette: Cassette | None = None, autosave: bool = True):
        self.backend = backend
        self.cassette = cassette
        self.autosave = autosave
        self._lock = threading.Lock()

    def complete(self, request: CompletionRequest) -> str:
        if self.cassette is None:
            if self.backend is None:
                raise GatewayError("gateway has neither a backend nor a cassette")
            return self.backend.complete(request)
        mode = self.cassette.mode
        if mode == "record":
            if self.backend is None:
                raise GatewayError("record mode requires a live backend")
            text = self.backend.complete(request)
            with self._lock:
                self.cassette.record(request, text)
                if self.autosave and self.cassette.path is not None:
                    self.cassette.save()
            return text
        recorded = self.cassette.lookup(request)
        if recorded is not None:
            return recorded
        if mode == "replay_strict":
            raise CassetteMissError(request_key(request))
        if self.backend is not None:
            return self.backend.complete(request)
        return FALLBACK_RESPONSE

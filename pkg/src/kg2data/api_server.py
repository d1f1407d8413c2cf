"""HTTP front for the virtual API catalog (the mock data provider)."""
from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .catalog import Catalog, spec_to_dict


class _CatalogHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # keep test output quiet
        pass

    def _send(self, code: int, body: str) -> None:
        data = body.encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def do_GET(self):
        if self.path == "/apis":
            doc = {"apis": [spec_to_dict(s) for s in self.server.catalog.apis]}
            self._send(200, json.dumps(doc, sort_keys=True, separators=(",", ":")))
        else:
            self._send(404, json.dumps({"error": f"unknown path {self.path}"}))

    def do_POST(self):
        if not self.path.startswith("/apis/"):
            self._send(404, json.dumps({"error": f"unknown path {self.path}"}))
            return
        name = self.path[len("/apis/"):]
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        try:
            params = json.loads(raw.decode("utf-8")) if raw else {}
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            self._send(400, json.dumps({"error": f"malformed JSON body: {e}"}))
            return
        if not isinstance(params, dict):
            self._send(400, json.dumps({"error": "body must be a JSON object of params"}))
            return
        seed = self.server.default_seed
        header_seed = self.headers.get("X-Seed")
        if header_seed is not None:
            try:
                seed = int(header_seed)
            except ValueError:
                self._send(400, json.dumps({"error": f"X-Seed must be an integer, got {header_seed!r}"}))
                return
        response = self.server.catalog.call(name, params, seed)
        code = {"ok": 200, "invalid_params": 400, "not_found": 404}[response.status]
        self._send(code, response.to_json())


class ApiServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, catalog: Catalog, host: str = "127.0.0.1", port: int = 0, default_seed: int = 0):
        super().__init__((host, port), _CatalogHandler)
        self.catalog = catalog
        self.default_seed = default_seed
        self._thread: threading.Thread | None = None

    @property
    def base_url(self) -> str:
        host, port = self.server_address[:2]
        return f"http://{host}:{port}"

    def start(self) -> "ApiServer":
        self._thread = threading.Thread(target=self.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self) -> None:
        self.shutdown()
        self.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)


def serve_catalog(catalog: Catalog, host: str = "127.0.0.1", port: int = 0, default_seed: int = 0) -> ApiServer:
    """Bind and start the catalog server; caller is responsible for stop()."""
    return ApiServer(catalog, host, port, default_seed).start()

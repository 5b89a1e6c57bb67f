"""Read-only JSON-over-HTTP view of a loaded deployment.

Every endpoint recomputes from the immutable deployment snapshot, so
concurrent requests need no locking and equal queries return equal bytes.
Static files (the design console) are served from an optional directory at /.
"""

from __future__ import annotations

import json
import os
import posixpath
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .errors import TrapnetError
from .geo import Deployment
from .simulate import BEHAVIORS, SimConfig, run_simulation
from .sweep import SweepRow, classify_regime, range_sweep
from .topology import WindField, build_radio_graph, build_wind_graph, network_metrics

DEFAULT_PORT_ENV = "TRAPNET_PORT"

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json; charset=utf-8",
    ".geojson": "application/json; charset=utf-8",
    ".map": "application/json; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
    ".txt": "text/plain; charset=utf-8",
}


class _BadQuery(Exception):
    """Malformed query string; maps to HTTP 400."""


def _single(qs: dict[str, list[str]], name: str) -> str | None:
    values = qs.get(name)
    if not values:
        return None
    if len(values) > 1:
        raise _BadQuery(f"parameter {name!r} given more than once")
    return values[0]


def _q_float(qs, name: str, required: bool = False, default: float | None = None) -> float | None:
    raw = _single(qs, name)
    if raw is None:
        if required:
            raise _BadQuery(f"missing required parameter {name!r}")
        return default
    try:
        return float(raw)
    except ValueError:
        raise _BadQuery(f"parameter {name!r} must be a number, got {raw!r}") from None


def _q_gateway(qs) -> int | str:
    raw = _single(qs, "gateway")
    if raw is None or raw == "auto":
        return "auto"
    try:
        return int(raw)
    except ValueError:
        raise _BadQuery(f"parameter 'gateway' must be 'auto' or an integer id, got {raw!r}") from None


def _q_capacity(qs) -> int | None:
    raw = _single(qs, "capacity")
    if raw is None:
        return 1
    if raw in ("unlimited", "inf"):
        return None
    try:
        return int(raw)
    except ValueError:
        raise _BadQuery(f"parameter 'capacity' must be an integer or 'unlimited', got {raw!r}") from None


def _q_wind(qs) -> WindField | None:
    raw_v = _single(qs, "wind_v")
    raw_t = _single(qs, "wind_t")
    raw_b = _single(qs, "wind_bearing")
    given = [raw for raw in (raw_v, raw_t, raw_b) if raw is not None]
    if not given:
        return None
    if len(given) != 3:
        raise _BadQuery("wind_v, wind_t and wind_bearing must be given together")
    try:
        return WindField(float(raw_v), float(raw_t), float(raw_b))
    except ValueError:
        raise _BadQuery("wind parameters must be numbers") from None


class _Handler(BaseHTTPRequestHandler):
    deployment: Deployment
    static_dir: str | None

    server_version = "trapnet"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # keep test output clean
        pass

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload) -> None:
        body = (json.dumps(payload, indent=2) + "\n").encode("utf-8")
        self._send(status, body, "application/json; charset=utf-8")

    def _send_error_json(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    def do_GET(self):  # noqa: N802 (http.server API)
        parsed = urlsplit(self.path)
        qs = parse_qs(parsed.query, keep_blank_values=True)
        try:
            handler = {
                "/api/deployment": self._api_deployment,
                "/api/graph": self._api_graph,
                "/api/metrics": self._api_metrics,
                "/api/sweep": self._api_sweep,
                "/api/simulate": self._api_simulate,
            }.get(parsed.path)
            if handler is not None:
                handler(qs)
            elif parsed.path.startswith("/api/"):
                self._send_error_json(404, f"unknown endpoint {parsed.path}")
            else:
                self._static(parsed.path)
        except _BadQuery as exc:
            self._send_error_json(400, str(exc))
        except TrapnetError as exc:
            self._send_error_json(422, str(exc))

    def _api_deployment(self, qs) -> None:
        d = self.deployment
        xs = [s.x for s in d]
        ys = [s.y for s in d]
        self._send_json(200, {
            "coordinate_mode": d.mode,
            "total_nodes": len(d),
            "bbox": [min(xs), min(ys), max(xs), max(ys)] if xs else None,
            "nodes": [{"id": s.id, "label": s.label, "x": s.x, "y": s.y} for s in d],
        })

    def _api_graph(self, qs) -> None:
        range_km = _q_float(qs, "range_km", required=True)
        wind = _q_wind(qs)
        if wind is None:
            payload = build_radio_graph(self.deployment, range_km).to_json_dict()
        else:
            payload = build_wind_graph(self.deployment, wind).to_json_dict()
        self._send_json(200, payload)

    def _api_metrics(self, qs) -> None:
        range_km = _q_float(qs, "range_km", required=True)
        gateway = _q_gateway(qs)
        g = build_radio_graph(self.deployment, range_km)
        m = network_metrics(g, leader=gateway)
        payload = SweepRow(range_km, m, classify_regime(m)).as_dict()
        payload["leader_id"] = m.leader_id
        self._send_json(200, payload)

    def _api_sweep(self, qs) -> None:
        raw = _single(qs, "ranges")
        if raw is None or raw == "":
            raise _BadQuery("missing required parameter 'ranges'")
        try:
            ranges = [float(p) for p in raw.split(",")]
        except ValueError:
            raise _BadQuery(f"parameter 'ranges' must be comma-separated numbers, got {raw!r}") from None
        rows = range_sweep(self.deployment, ranges)
        self._send_json(200, [row.as_dict() for row in rows])

    def _api_simulate(self, qs) -> None:
        range_km = _q_float(qs, "range_km", required=True)
        behavior = _single(qs, "behavior")
        if behavior is None:
            raise _BadQuery("missing required parameter 'behavior'")
        if behavior not in BEHAVIORS:
            raise _BadQuery(f"parameter 'behavior' must be one of {', '.join(BEHAVIORS)}, got {behavior!r}")
        cfg = SimConfig(
            link_capacity=_q_capacity(qs),
            sleep_minutes=_q_float(qs, "sleep_min", default=5.0),
            gateway=_q_gateway(qs),
        )
        g = build_radio_graph(self.deployment, range_km)
        self._send_json(200, run_simulation(g, behavior, cfg).to_json_dict())

    def _static(self, path: str) -> None:
        if self.static_dir is None:
            self._send_error_json(404, f"unknown path {path}")
            return
        clean = posixpath.normpath(path.lstrip("/")) if path not in ("", "/") else "index.html"
        target = os.path.realpath(os.path.join(self.static_dir, clean))
        root = os.path.realpath(self.static_dir)
        if not (target == root or target.startswith(root + os.sep)) or not os.path.isfile(target):
            self._send_error_json(404, f"unknown path {path}")
            return
        ext = os.path.splitext(target)[1].lower()
        with open(target, "rb") as fh:
            body = fh.read()
        self._send(200, body, _CONTENT_TYPES.get(ext, "application/octet-stream"))


def make_server(deployment: Deployment, host: str = "127.0.0.1", port: int = 0,
                static_dir: str | None = None) -> ThreadingHTTPServer:
    """Bind a threaded server over an immutable deployment; port 0 picks a free one."""
    handler = type("_BoundHandler", (_Handler,), {
        "deployment": deployment,
        "static_dir": static_dir,
    })
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    return server


def default_port() -> int:
    raw = os.environ.get(DEFAULT_PORT_ENV, "")
    try:
        return int(raw) if raw else 8000
    except ValueError:
        return 8000

"""Stateless JSON API over the analysis core, plus optional static file serving.

Endpoints (all bodies and responses JSON; see docs/api.md):

    GET  /api/presets
    GET  /api/presets/{name}
    POST /api/analyze
    POST /api/size
    POST /api/timeline
    POST /api/reverse

Every request is computed from scratch against immutable shared state
(presets, calibration), so concurrent requests need no locking.
"""

from __future__ import annotations

import json
import mimetypes
import os
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import configio, hwmodel, netmodel, roofline, timeline
from .errors import ParseError, SizingError, ValidationError

MAX_BODY = 4 * 1024 * 1024


class ApiError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _analyze(body: dict) -> dict:
    network = _network_from_body(body)
    if "hardware" not in body:
        raise ApiError(400, "missing 'hardware'")
    hw, mem = configio.hardware_from_dict(body["hardware"])
    if "memory" in body:
        mem = configio.memory_from_dict(body["memory"], where="memory")
    if mem is None:
        raise ApiError(400, "missing 'memory' (or hardware.mem)")
    array = body.get("array")
    if array is not None:
        array = (int(array[0]), int(array[1]))
    report = roofline.build_report(
        network,
        hw,
        mem,
        array=array,
        spill=body.get("spill", roofline.ONCHIP),
        borderline_tol=float(body.get("borderline_tol", 0.05)),
    )
    return report.to_dict()


def _network_from_body(body: dict) -> netmodel.Network:
    if "network" in body:
        return netmodel.network_from_dict(body["network"])
    if "network_preset" in body:
        return configio.resolve_network(body["network_preset"])
    raise ApiError(400, "missing 'network' or 'network_preset'")


def _size(body: dict) -> dict:
    hw, _ = configio.hardware_from_dict(body)
    return hwmodel.size_pe_array(hw).to_dict()


def _timeline(body: dict) -> dict:
    network = _network_from_body(body)
    layer_name = body.get("layer")
    layer = network.layer(layer_name) if layer_name else network.layers[0]
    if "bits" in body:
        layer = layer.with_bits(int(body["bits"]), int(body["bits"]))
    if "bus_bits" not in body:
        raise ApiError(400, "missing 'bus_bits'")
    trace = timeline.simulate(
        layer,
        int(body["bus_bits"]),
        per_feature=bool(body.get("per_feature", True)),
        batch=int(body.get("batch", 1)),
    )
    return trace.to_dict()


def _reverse(body: dict) -> dict:
    network = _network_from_body(body)
    if "area_um2" in body:
        area = float(body["area_um2"])
    elif "area_mm2" in body:
        area = float(body["area_mm2"]) * 1e6
    else:
        raise ApiError(400, "missing 'area_um2' or 'area_mm2'")
    if "memory" not in body:
        raise ApiError(400, "missing 'memory'")
    mem = configio.memory_from_dict(body["memory"], where="memory")
    result = roofline.reverse_design(
        network,
        area,
        (int(body.get("b_w", 8)), int(body.get("b_a", 8))),
        mem,
        profile=configio.resolve_profile(body.get("calibration")),
        k=int(body.get("k", 3)),
        spill=body.get("spill", roofline.ONCHIP),
        frequency_hz=float(body["frequency_hz"]) if "frequency_hz" in body else None,
    )
    return result.to_dict()


_POST_ROUTES = {
    "/api/analyze": _analyze,
    "/api/size": _size,
    "/api/timeline": _timeline,
    "/api/reverse": _reverse,
}


class ApiHandler(BaseHTTPRequestHandler):
    server_version = "accelscope/0.1"
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # keep test output quiet
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    def _send_json(self, status: int, payload: dict):
        body = json.dumps(payload, indent=2).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        path = self.path.split("?", 1)[0]
        if path == "/api/presets":
            self._send_json(200, configio.list_presets())
            return
        if path.startswith("/api/presets/"):
            name = path[len("/api/presets/"):]
            try:
                self._send_json(200, configio.read_preset(name))
            except FileNotFoundError as exc:
                self._send_json(404, {"error": str(exc)})
            return
        if path.startswith("/api/"):
            self._send_json(404, {"error": f"unknown endpoint {path}"})
            return
        self._serve_static(path)

    def do_POST(self):
        path = self.path.split("?", 1)[0]
        handler = _POST_ROUTES.get(path)
        if handler is None:
            self._send_json(404, {"error": f"unknown endpoint {path}"})
            return
        try:
            length = int(self.headers.get("Content-Length", 0))
            if length > MAX_BODY:
                raise ApiError(413, "request body too large")
            try:
                body = json.loads(self.rfile.read(length) or b"{}")
            except json.JSONDecodeError as exc:
                raise ApiError(400, f"invalid JSON body: {exc.msg}") from exc
            if not isinstance(body, dict):
                raise ApiError(400, "request body must be a JSON object")
            self._send_json(200, handler(body))
        except ApiError as exc:
            self._send_json(exc.status, {"error": str(exc)})
        except (ParseError, ValidationError, FileNotFoundError, SizingError,
                TypeError, ValueError, KeyError) as exc:
            self._send_json(400, {"error": f"{type(exc).__name__}: {exc}"})

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _serve_static(self, path: str):
        static_dir = getattr(self.server, "static_dir", None)
        if static_dir is None:
            self._send_json(404, {"error": "no static assets configured"})
            return
        rel = path.lstrip("/") or "index.html"
        full = os.path.realpath(os.path.join(static_dir, rel))
        if not full.startswith(os.path.realpath(static_dir)) or not os.path.isfile(full):
            self._send_json(404, {"error": f"not found: {path}"})
            return
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            data = fh.read()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def create_server(host: str = "127.0.0.1", port: int = 8008, static_dir: str | None = None,
                  verbose: bool = False) -> ThreadingHTTPServer:
    httpd = ThreadingHTTPServer((host, port), ApiHandler)
    httpd.static_dir = static_dir
    httpd.verbose = verbose
    return httpd


def serve_in_thread(host: str = "127.0.0.1", port: int = 0, static_dir: str | None = None):
    """Start a server on a background thread; returns (server, thread)."""
    httpd = create_server(host, port, static_dir)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    return httpd, thread

"""Read-only HTTP JSON API over a catalog document.

Serves list, detail, scheme, and stats endpoints under `/api`; responses
are plain JSON over an immutable catalog snapshot, so the service never
mutates anything and is safe for concurrent requests. SIGHUP reloads the
catalog file and atomically swaps the snapshot; in-flight requests finish
on the old one.

The payload builders here are also used by `catalog export`, which keeps
the offline bundle and the live API byte-compatible.
"""

from __future__ import annotations

import hashlib
import json
import logging
import signal
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import naming
from .authn_schemas import TechniqueEntry
from .catalog_store import CatalogDocument, entry_json, load_path, save, scheme_json
from .query_engine import (
    QueryError,
    TARGET_AUTHENTICATORS,
    TARGET_TECHNIQUES,
    catalog_groups,
    group_count,
    run_query,
)

log = logging.getLogger(__name__)


class ApiError(Exception):
    def __init__(self, status: int, payload: dict):
        super().__init__(payload.get("error", ""))
        self.status = status
        self.payload = payload


def _names(entry, scheme) -> dict:
    return {
        "classification_name": naming.classification_name(entry.assignment, scheme),
        "readable_name": naming.readable_name(
            entry.assignment, scheme, omit_multi=True
        ),
        "slug": naming.slug(entry.assignment, scheme, entry.id),
    }


def entry_payload(document: CatalogDocument, entry) -> dict:
    scheme = (
        document.technique_scheme
        if isinstance(entry, TechniqueEntry)
        else document.authenticator_scheme
    )
    payload = entry_json(entry, scheme)
    payload.update(_names(entry, scheme))
    return payload


def names_payload(document: CatalogDocument) -> dict:
    """id -> naming record for every entry; ids and slugs must be unique
    across both entry lists."""
    out: dict[str, dict] = {}
    slugs: set[str] = set()
    for kind, entries, scheme in (
        ("authenticator", document.authenticators, document.authenticator_scheme),
        ("technique", document.techniques, document.technique_scheme),
    ):
        for entry in sorted(entries, key=lambda e: e.id):
            if entry.id in out:
                raise ValueError(f"entry id {entry.id!r} is used by both entry kinds")
            record = {"kind": kind, "name": entry.name, **_names(entry, scheme)}
            if record["slug"] in slugs:
                raise ValueError(f"duplicate slug {record['slug']!r}")
            slugs.add(record["slug"])
            out[entry.id] = record
    return out


def stats_payload(document: CatalogDocument) -> dict:
    return {
        "totals": {
            "authenticators": len(document.authenticators),
            "techniques": len(document.techniques),
        },
        "techniques": {
            "authenticator-employment": group_count(
                document, TARGET_TECHNIQUES, "authenticator-employment", 3
            ),
            "factor": group_count(document, TARGET_TECHNIQUES, "factor", 1),
            "groups": catalog_groups(document),
        },
        "authenticators": {
            "authentication-factor": group_count(
                document, TARGET_AUTHENTICATORS, "authentication-factor", 2
            ),
            "authentication-factor-roots": group_count(
                document, TARGET_AUTHENTICATORS, "authentication-factor", 1
            ),
        },
    }


def schemes_payload(document: CatalogDocument) -> dict:
    return {
        "authenticator": scheme_json(document.authenticator_scheme),
        "technique": scheme_json(document.technique_scheme),
    }


def _technique_detail(document: CatalogDocument, entry: TechniqueEntry) -> dict:
    payload = entry_payload(document, entry)
    for employment_json in payload["employments"]:
        auth = document.authenticator(employment_json["authenticator_id"])
        if auth is not None:
            employment_json["authenticator"] = entry_payload(document, auth)
    return payload


def _authenticator_detail(document: CatalogDocument, entry) -> dict:
    payload = entry_payload(document, entry)
    payload["employed_by"] = [
        {
            "id": technique.id,
            "name": technique.name,
            "position": next(
                e.position
                for e in technique.employments
                if e.authenticator_id == entry.id
            ),
        }
        for technique in document.employing(entry.id)
    ]
    return payload


def _int_param(params: dict, key: str, default: int) -> int:
    values = params.get(key)
    if not values:
        return default
    try:
        value = int(values[0])
    except ValueError:
        raise ApiError(400, {"error": f"parameter {key!r} must be an integer"})
    if value < 0:
        raise ApiError(400, {"error": f"parameter {key!r} must be >= 0"})
    return value


def _list_endpoint(document: CatalogDocument, target: str, params: dict) -> dict:
    query_text = params.get("q", [""])[0]
    try:
        entries = run_query(document, target, query_text)
    except QueryError as exc:
        raise ApiError(400, {"error": str(exc), "position": exc.position})
    offset = _int_param(params, "offset", 0)
    limit = _int_param(params, "limit", len(entries))
    return {
        "total": len(entries),
        "items": [
            entry_payload(document, e) for e in entries[offset : offset + limit]
        ],
    }


def handle_api(document: CatalogDocument, path: str, query_string: str = "") -> tuple[int, dict]:
    """Pure request router: (status, JSON payload) for one GET request."""
    params = parse_qs(query_string, keep_blank_values=True)
    parts = [p for p in path.split("/") if p]
    try:
        if len(parts) >= 1 and parts[0] == "api":
            if parts[1:] == ["stats"]:
                return 200, stats_payload(document)
            if parts[1:] == ["schemes"]:
                return 200, schemes_payload(document)
            if parts[1:] == [TARGET_TECHNIQUES]:
                return 200, _list_endpoint(document, TARGET_TECHNIQUES, params)
            if parts[1:] == [TARGET_AUTHENTICATORS]:
                return 200, _list_endpoint(document, TARGET_AUTHENTICATORS, params)
            if len(parts) == 3 and parts[1] == TARGET_TECHNIQUES:
                technique = document.technique(parts[2])
                if technique is None:
                    return 404, {"error": f"unknown technique {parts[2]!r}"}
                return 200, _technique_detail(document, technique)
            if len(parts) == 3 and parts[1] == TARGET_AUTHENTICATORS:
                auth = document.authenticator(parts[2])
                if auth is None:
                    return 404, {"error": f"unknown authenticator {parts[2]!r}"}
                return 200, _authenticator_detail(document, auth)
        return 404, {"error": f"no such endpoint {path!r}"}
    except ApiError as exc:
        return exc.status, exc.payload


class _Snapshot:
    def __init__(self, document: CatalogDocument):
        self.document = document
        self.etag = '"' + hashlib.sha256(save(document)).hexdigest()[:32] + '"'


class CatalogServer(ThreadingHTTPServer):
    """Read-only catalog API server over an atomically swappable snapshot."""

    daemon_threads = True

    def __init__(self, address: tuple[str, int], document: CatalogDocument,
                 catalog_path=None):
        super().__init__(address, _Handler)
        self._snapshot = _Snapshot(document)
        self._lock = threading.Lock()
        self.catalog_path = catalog_path

    @property
    def snapshot(self) -> _Snapshot:
        with self._lock:
            return self._snapshot

    def reload(self) -> None:
        """Re-read the catalog file and swap the snapshot; keep the old
        snapshot when the new file does not load."""
        if self.catalog_path is None:
            return
        try:
            document, _ = load_path(self.catalog_path)
        except Exception as exc:
            log.error("reload of %s failed: %s", self.catalog_path, exc)
            return
        with self._lock:
            self._snapshot = _Snapshot(document)
        log.info("reloaded catalog from %s", self.catalog_path)


class _Handler(BaseHTTPRequestHandler):
    server: CatalogServer

    def do_GET(self):
        snapshot = self.server.snapshot
        url = urlparse(self.path)
        status, payload = handle_api(snapshot.document, url.path, url.query)
        if status == 200 and self.headers.get("If-None-Match") == snapshot.etag:
            self.send_response(304)
            self.send_header("ETag", snapshot.etag)
            self.end_headers()
            return
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        if status == 200:
            self.send_header("ETag", snapshot.etag)
            self.send_header("Cache-Control", "public, max-age=60")
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, fmt, *args):
        log.debug("%s - %s", self.address_string(), fmt % args)


def make_server(document: CatalogDocument, address: str = "127.0.0.1:0",
                catalog_path=None) -> CatalogServer:
    host, _, port = address.partition(":")
    return CatalogServer((host, int(port or 0)), document, catalog_path)


def serve(catalog_path, address: str = "127.0.0.1:8080") -> None:
    """Run the API server until interrupted; SIGHUP reloads the catalog."""
    document, warnings = load_path(catalog_path)
    server = make_server(document, address, catalog_path)
    if threading.current_thread() is threading.main_thread():
        signal.signal(signal.SIGHUP, lambda *_: server.reload())
    host, port = server.server_address[:2]
    print(f"serving catalog on http://{host}:{port}/api "
          f"({len(document.techniques)} techniques, "
          f"{len(document.authenticators)} authenticators, "
          f"{len(warnings)} lint warning(s))",
          flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()

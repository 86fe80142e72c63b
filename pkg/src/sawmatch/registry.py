"""Service/ontology registry with upload-time indexing and the HTTP API.

Documents are kept verbatim on disk; collection metadata and the operation
index live in an embedded sqlite database, but the index is only a cache
and can always be rebuilt from the stored documents. Uploads serialize on
a lock while match requests run against immutable index/graph snapshots
swapped in atomically after each write.
"""

from __future__ import annotations

import hashlib
import json
import sqlite3
import threading
import urllib.error
import urllib.request
import uuid
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import documents, ontology
from .engine import MatchConfig, Query, Strategy, match
from .errors import InvalidQueryError, ParseError, SawmatchError
from .similarity import SimAlgorithm, unfold

__all__ = [
    "RegistryStore",
    "NotFoundError",
    "DuplicateServiceError",
    "FetchError",
    "create_app",
]

FETCH_TIMEOUT_S = 30
FETCH_SIZE_CAP = 16 * 1024 * 1024

API_RANGE_MIN = 0.1
API_RANGE_MAX = 0.9


class NotFoundError(SawmatchError):
    pass


class DuplicateServiceError(SawmatchError):
    pass


class FetchError(SawmatchError):
    pass


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _new_id() -> str:
    return uuid.uuid4().hex[:12]


def fetch_url(url: str, timeout: float = FETCH_TIMEOUT_S, size_cap: int = FETCH_SIZE_CAP) -> bytes:
    """Retrieve an http(s) URL with a timeout and a hard size cap."""
    if not url.startswith(("http://", "https://")):
        raise FetchError(f"unsupported URL scheme: {url}")
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            data = response.read(size_cap + 1)
    except (urllib.error.URLError, OSError) as exc:
        raise FetchError(f"could not fetch {url}: {exc}") from exc
    if len(data) > size_cap:
        raise FetchError(f"{url} exceeds the {size_cap} byte limit")
    return data


class RegistryStore:
    """File-backed store; all mutation goes through one lock, reads work on
    snapshots."""

    def __init__(self, data_dir):
        self.data_dir = Path(data_dir)
        self.services_dir = self.data_dir / "services"
        self.ontologies_dir = self.data_dir / "ontologies"
        for d in (self.data_dir, self.services_dir, self.ontologies_dir):
            d.mkdir(parents=True, exist_ok=True)
        self._lock = threading.RLock()
        self._db = sqlite3.connect(self.data_dir / "registry.db", check_same_thread=False)
        self._db.execute("PRAGMA journal_mode=WAL")
        self._init_schema()
        self._graph = ontology.ClassGraph.empty()
        self._indexes: dict[str, list[documents.OperationIndexEntry]] = {}
        self._load_state()

    def _init_schema(self):
        with self._lock, self._db:
            self._db.executescript(
                """
                CREATE TABLE IF NOT EXISTS collections(
                    id TEXT PRIMARY KEY, name TEXT NOT NULL, description TEXT,
                    uploader TEXT, created TEXT);
                CREATE TABLE IF NOT EXISTS services(
                    id TEXT PRIMARY KEY, collection_id TEXT NOT NULL, name TEXT,
                    filename TEXT, digest TEXT, created TEXT);
                CREATE TABLE IF NOT EXISTS ontologies(
                    id TEXT PRIMARY KEY, name TEXT, filename TEXT, digest TEXT,
                    created TEXT);
                CREATE TABLE IF NOT EXISTS operation_index(
                    service_id TEXT, collection_id TEXT, service_name TEXT,
                    interface_name TEXT, operation_name TEXT,
                    input_items TEXT, output_items TEXT);
                """
            )

    # -- state reconstruction -------------------------------------------------

    def _load_state(self):
        with self._lock:
            graph = ontology.ClassGraph.empty()
            for row in self._db.execute("SELECT id FROM ontologies ORDER BY id"):
                path = self.ontologies_dir / f"{row[0]}.xml"
                if path.exists():
                    graph = ontology.merge(graph, ontology.load_ontology(path.read_bytes()))
            indexes: dict[str, list[documents.OperationIndexEntry]] = {}
            rows = self._db.execute(
                "SELECT collection_id, service_id, service_name, interface_name,"
                " operation_name, input_items, output_items FROM operation_index"
                " ORDER BY service_id, interface_name, operation_name"
            )
            for coll, sid, sname, iname, oname, in_items, out_items in rows:
                indexes.setdefault(coll, []).append(
                    documents.OperationIndexEntry(
                        service_id=sid,
                        service_name=sname,
                        interface_name=iname,
                        operation_name=oname,
                        input_items=_items_from_json(in_items),
                        output_items=_items_from_json(out_items),
                    )
                )
            self._graph = graph
            self._indexes = indexes

    def rebuild_index(self) -> None:
        """Re-derive every index entry from the stored documents."""
        with self._lock, self._db:
            self._db.execute("DELETE FROM operation_index")
            rows = self._db.execute(
                "SELECT id, collection_id, filename FROM services ORDER BY id"
            ).fetchall()
            for sid, coll, filename in rows:
                data = (self.services_dir / f"{sid}.xml").read_bytes()
                desc = documents.parse_document(data, source_id=filename or sid)
                self._insert_index_rows(coll, sid, desc)
        self._load_state()

    def _insert_index_rows(self, collection_id, service_id, desc):
        for entry in documents.build_index_entries(desc):
            self._db.execute(
                "INSERT INTO operation_index VALUES(?,?,?,?,?,?,?)",
                (
                    service_id,
                    collection_id,
                    entry.service_name,
                    entry.interface_name,
                    entry.operation_name,
                    _items_to_json(entry.input_items),
                    _items_to_json(entry.output_items),
                ),
            )

    # -- collections -----------------------------------------------------------

    def create_collection(self, name: str, description: str = "", uploader: str = "") -> str:
        if not name.strip():
            raise ValueError("collection name must be non-empty")
        cid = _new_id()
        with self._lock, self._db:
            self._db.execute(
                "INSERT INTO collections VALUES(?,?,?,?,?)",
                (cid, name.strip(), description, uploader, _now()),
            )
        return cid

    def list_collections(self) -> list[dict]:
        rows = self._db.execute(
            "SELECT c.id, c.name, c.description, c.uploader, c.created,"
            " (SELECT COUNT(*) FROM services s WHERE s.collection_id = c.id)"
            " FROM collections c ORDER BY c.created, c.id"
        ).fetchall()
        return [
            {
                "id": r[0],
                "name": r[1],
                "description": r[2],
                "uploader": r[3],
                "created": r[4],
                "service_count": r[5],
            }
            for r in rows
        ]

    def get_collection(self, collection_id: str) -> dict:
        row = self._db.execute(
            "SELECT id, name, description, uploader, created FROM collections WHERE id=?",
            (collection_id,),
        ).fetchone()
        if row is None:
            raise NotFoundError(f"collection '{collection_id}' not found")
        return {
            "id": row[0],
            "name": row[1],
            "description": row[2],
            "uploader": row[3],
            "created": row[4],
        }

    # -- services ----------------------------------------------------------------

    def upload_service(
        self,
        collection_id: str,
        data: bytes | None = None,
        url: str | None = None,
        filename: str = "",
    ) -> str:
        self.get_collection(collection_id)
        if data is None:
            if not url:
                raise ValueError("either file data or a url is required")
            data = fetch_url(url)
            filename = filename or url.rsplit("/", 1)[-1]
        digest = hashlib.sha256(data).hexdigest()
        with self._lock:
            dup = self._db.execute(
                "SELECT id FROM services WHERE collection_id=? AND digest=?",
                (collection_id, digest),
            ).fetchone()
            if dup:
                raise DuplicateServiceError(
                    f"identical document already uploaded as service '{dup[0]}'"
                )
            sid = _new_id()
            source_id = filename or sid
            desc = documents.parse_document(data, source_id=source_id)
            (self.services_dir / f"{sid}.xml").write_bytes(data)
            with self._db:
                self._db.execute(
                    "INSERT INTO services VALUES(?,?,?,?,?,?)",
                    (sid, collection_id, desc.service_name, source_id, digest, _now()),
                )
                # the index keys results by the stable service id
                indexed = documents.ServiceDescription(
                    source_id=sid,
                    service_name=desc.service_name,
                    interfaces=desc.interfaces,
                    warnings=desc.warnings,
                )
                self._insert_index_rows(collection_id, sid, indexed)
            entries = self._indexes.get(collection_id, []) + documents.build_index_entries(indexed)
            entries.sort(key=lambda e: (e.service_id, e.interface_name, e.operation_name))
            new_indexes = dict(self._indexes)
            new_indexes[collection_id] = entries
            self._indexes = new_indexes
        return sid

    def list_services(self, collection_id: str) -> list[dict]:
        self.get_collection(collection_id)
        rows = self._db.execute(
            "SELECT id, name, filename, created FROM services WHERE collection_id=?"
            " ORDER BY created, id",
            (collection_id,),
        ).fetchall()
        index = {e.service_id for e in self._indexes.get(collection_id, [])}
        counts = {
            sid: sum(1 for e in self._indexes.get(collection_id, []) if e.service_id == sid)
            for sid in index
        }
        return [
            {
                "id": r[0],
                "name": r[1],
                "filename": r[2],
                "created": r[3],
                "operation_count": counts.get(r[0], 0),
            }
            for r in rows
        ]

    def get_service_bytes(self, service_id: str) -> bytes:
        path = self.services_dir / f"{service_id}.xml"
        if not path.exists():
            raise NotFoundError(f"service '{service_id}' not found")
        return path.read_bytes()

    def get_service_tree(self, service_id: str) -> dict:
        row = self._db.execute(
            "SELECT filename FROM services WHERE id=?", (service_id,)
        ).fetchone()
        if row is None:
            raise NotFoundError(f"service '{service_id}' not found")
        desc = documents.parse_document(self.get_service_bytes(service_id), source_id=row[0])
        return {
            "id": service_id,
            "service_name": desc.service_name,
            "warnings": list(desc.warnings),
            "interfaces": [
                {
                    "name": itf.name,
                    "operations": [
                        {
                            "name": op.name,
                            "input_tree": [_node_json(n) for n in op.input_tree.nodes],
                            "output_tree": [_node_json(n) for n in op.output_tree.nodes],
                        }
                        for op in itf.operations
                    ],
                }
                for itf in desc.interfaces
            ],
        }

    # -- ontologies -----------------------------------------------------------

    def upload_ontology(
        self, data: bytes | None = None, url: str | None = None, filename: str = ""
    ) -> str:
        if data is None:
            if not url:
                raise ValueError("either file data or a url is required")
            data = fetch_url(url)
            filename = filename or url.rsplit("/", 1)[-1]
        digest = hashlib.sha256(data).hexdigest()
        with self._lock:
            existing = self._db.execute(
                "SELECT id FROM ontologies WHERE digest=?", (digest,)
            ).fetchone()
            if existing:
                return existing[0]  # merge would change nothing
            axioms = ontology.load_ontology(data)
            oid = _new_id()
            (self.ontologies_dir / f"{oid}.xml").write_bytes(data)
            with self._db:
                self._db.execute(
                    "INSERT INTO ontologies VALUES(?,?,?,?,?)",
                    (oid, filename or oid, filename or oid, digest, _now()),
                )
            self._graph = ontology.merge(self._graph, axioms)
        return oid

    def list_ontologies(self) -> list[dict]:
        rows = self._db.execute(
            "SELECT id, name, filename, created FROM ontologies ORDER BY created, id"
        ).fetchall()
        out = []
        for r in rows:
            axioms = self._ontology_axioms(r[0])
            class_count = len({a[1] for a in axioms if a[0] == "class"})
            out.append(
                {"id": r[0], "name": r[1], "filename": r[2], "created": r[3], "class_count": class_count}
            )
        return out

    def _ontology_axioms(self, ontology_id: str):
        path = self.ontologies_dir / f"{ontology_id}.xml"
        if not path.exists():
            raise NotFoundError(f"ontology '{ontology_id}' not found")
        return ontology.load_ontology(path.read_bytes())

    def ontology_class_tree(self, ontology_id: str) -> list[dict]:
        """Nested {iri, name, children} forest of one ontology's own classes."""
        axioms = self._ontology_axioms(ontology_id)
        classes = sorted({a[1] for a in axioms if a[0] == "class"})
        children: dict[str, list[str]] = {c: [] for c in classes}
        has_parent: set[str] = set()
        for kind, *args in sorted(axioms):
            if kind == "sub":
                child, parent = args
                if parent in children and child not in children[parent]:
                    children[parent].append(child)
                    has_parent.add(child)

        def node(iri: str, path: frozenset) -> dict:
            kids = [c for c in children.get(iri, []) if c not in path]
            return {
                "iri": iri,
                "name": unfold(iri),
                "children": [node(c, path | {iri}) for c in sorted(kids)],
            }

        return [node(c, frozenset()) for c in classes if c not in has_parent]

    # -- matching ----------------------------------------------------------------

    @property
    def graph(self) -> ontology.ClassGraph:
        return self._graph

    def collection_index(self, collection_id: str) -> list[documents.OperationIndexEntry]:
        self.get_collection(collection_id)
        return self._indexes.get(collection_id, [])

    def match(self, collection_id: str, query: Query, cfg: MatchConfig):
        return match(query, self.collection_index(collection_id), self._graph, cfg)

    def close(self):
        self._db.close()


def _node_json(node: documents.ElementNode) -> dict:
    return {
        "local_name": node.local_name,
        "node_kind": node.node_kind,
        "annotations": list(node.annotations),
        "depth": node.depth,
    }


def _items_to_json(items) -> str:
    return json.dumps([[i.annotation, i.name, i.kind] for i in items])


def _items_from_json(raw: str):
    return tuple(documents.IoItem(annotation=a, name=n, kind=k) for a, n, k in json.loads(raw))


# -- HTTP layer -------------------------------------------------------------------


class CollectionCreate(BaseModel):
    name: str = Field(min_length=1)
    description: str = ""
    uploader: str = ""


class MatchRequest(BaseModel):
    collection_id: str
    strategy: str = "hybrid"
    sim_algorithm: str = "monge-elkan"
    inputs: list[str] = Field(default_factory=list)
    outputs: list[str] = Field(default_factory=list)
    weight: float = 0.5
    rating_threshold: float = API_RANGE_MIN
    query_name: str | None = None


def _error_response(status: int, field: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status, content={"errors": [{"field": field, "message": message}]}
    )


def _clamp(value: float) -> float:
    return min(max(value, API_RANGE_MIN), API_RANGE_MAX)


async def _read_upload(request: Request) -> tuple[bytes | None, str | None, str]:
    """Accept either a multipart file upload or a JSON body with a url."""
    content_type = request.headers.get("content-type", "")
    if content_type.startswith("multipart/"):
        form = await request.form()
        upload = form.get("file")
        if upload is None:
            raise ValueError("multipart body must contain a 'file' part")
        return await upload.read(), None, upload.filename or ""
    body = await request.json()
    url = body.get("url") if isinstance(body, dict) else None
    if not url:
        raise ValueError("JSON body must contain a 'url'")
    return None, url, ""


def create_app(store: RegistryStore, ui_dir=None) -> FastAPI:
    app = FastAPI(title="sawmatch registry")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request, exc):
        errors = [
            {
                "field": ".".join(str(p) for p in err.get("loc", ()) if p != "body"),
                "message": err.get("msg", "invalid value"),
            }
            for err in exc.errors()
        ]
        return JSONResponse(status_code=422, content={"errors": errors})

    @app.exception_handler(NotFoundError)
    async def not_found_handler(request, exc):
        return _error_response(404, "id", str(exc))

    @app.exception_handler(DuplicateServiceError)
    async def duplicate_handler(request, exc):
        return _error_response(409, "file", str(exc))

    @app.exception_handler(ParseError)
    async def parse_handler(request, exc):
        return _error_response(422, "file", str(exc))

    @app.exception_handler(FetchError)
    async def fetch_handler(request, exc):
        return _error_response(502, "url", str(exc))

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/collections", status_code=201)
    def create_collection(body: CollectionCreate):
        return {"id": store.create_collection(body.name, body.description, body.uploader)}

    @app.get("/collections")
    def list_collections():
        return store.list_collections()

    @app.get("/collections/{collection_id}/services")
    def list_services(collection_id: str):
        return store.list_services(collection_id)

    @app.post("/collections/{collection_id}/services", status_code=201)
    async def upload_service(collection_id: str, request: Request):
        try:
            data, url, filename = await _read_upload(request)
        except ValueError as exc:
            return _error_response(422, "file", str(exc))
        sid = store.upload_service(collection_id, data=data, url=url, filename=filename)
        return {"id": sid}

    @app.get("/services/{service_id}")
    def get_service(service_id: str):
        return store.get_service_tree(service_id)

    @app.post("/ontologies", status_code=201)
    async def upload_ontology(request: Request):
        try:
            data, url, filename = await _read_upload(request)
        except ValueError as exc:
            return _error_response(422, "file", str(exc))
        return {"id": store.upload_ontology(data=data, url=url, filename=filename)}

    @app.get("/ontologies")
    def list_ontologies():
        return store.list_ontologies()

    @app.get("/ontologies/{ontology_id}/classes")
    def ontology_classes(ontology_id: str):
        return store.ontology_class_tree(ontology_id)

    @app.post("/match")
    def run_match(body: MatchRequest):
        try:
            strategy = Strategy(body.strategy.strip().lower())
        except ValueError:
            return _error_response(422, "strategy", f"unknown strategy '{body.strategy}'")
        try:
            sim = SimAlgorithm.of(body.sim_algorithm)
        except (ValueError, KeyError):
            return _error_response(
                422, "sim_algorithm", f"unknown similarity algorithm '{body.sim_algorithm}'"
            )
        try:
            query = Query(
                inputs=tuple(body.inputs),
                outputs=tuple(body.outputs),
                query_name=body.query_name,
            )
        except InvalidQueryError as exc:
            return _error_response(422, "inputs", str(exc))
        cfg = MatchConfig(
            strategy=strategy,
            sim=sim,
            weight=_clamp(body.weight),
            rating_threshold=_clamp(body.rating_threshold),
        )
        results = store.match(body.collection_id, query, cfg)
        return [
            {
                "service": r.service_id,
                "service_name": r.service_name,
                "interface": r.interface_name,
                "operation": r.operation_name,
                "rating": r.rating,
                "tier": r.tier.label,
                "justifications": [
                    {
                        "requested_concept": j.requested_concept,
                        "side": j.side,
                        "matched_element_name": j.matched_element_name,
                        "matched_element_kind": j.matched_element_kind,
                        "matched_annotation": j.matched_annotation,
                        "pair_rating": j.pair_rating,
                        "match_case": j.match_case.value,
                    }
                    for j in r.justifications
                ],
            }
            for r in results
        ]

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app

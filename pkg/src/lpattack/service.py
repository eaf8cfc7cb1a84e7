"""HTTP/JSON facade over the core operations, backing the editor UI.

All bodies use the corpus file schemas.  Scheme diagnostics are data: a
structurally well-formed annotation that breaks scheme rules still gets a
200 with its validation report.  Transport-level problems return a
structured ``{code, message, pointer}`` body: E_BAD_JSON (unparseable
body), E_BAD_REQUEST (missing or ill-typed request fields), E_SCHEMA
(annotation fails the interchange schema, pointer included), E_NOT_FOUND,
E_INVALID_ANNOTATION (operation needs a structurally sane or valid
annotation), E_NO_COMMON_DEBATES.

Persistence is one JSON file per annotator under ``<corpus_dir>/
annotations/``, merged on read; writes take a per-annotator lock and
replace the file atomically.
"""

from __future__ import annotations

import os
import re
import threading
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .agreement import AgreementConfig, AgreementError, agreement_report
from .canonical import InvalidAnnotationError, canonicalize
from .corpus import (
    SchemaViolation,
    annotation_from_dict,
    annotation_object_schema,
    annotation_to_dict,
    check_schema,
    debate_to_dict,
    load_annotations,
    load_debates,
    save_annotations,
)
from .model import Annotation, Debate
from .stats import build_stats_report
from .textform import RenderError, render_text_form
from .validation import validate

_ANNOTATOR_ID_RE = re.compile(r"[A-Za-z0-9_.-]+")


class ServiceError(Exception):
    def __init__(self, status_code: int, code: str, message: str, pointer: str | None = None):
        self.status_code = status_code
        self.code = code
        self.message = message
        self.pointer = pointer
        super().__init__(message)


class AnnotationStore:
    """File-backed store, one annotations file per annotator."""

    def __init__(self, root: Path):
        self.root = root
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, annotator_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(annotator_id, threading.Lock())

    def _path(self, annotator_id: str) -> Path:
        return self.root / f"{annotator_id}.json"

    def annotators(self) -> list[str]:
        return sorted(path.stem for path in self.root.glob("*.json"))

    def load(self, annotator_id: str) -> list[Annotation]:
        path = self._path(annotator_id)
        if not path.exists():
            return []
        return load_annotations(path)

    def put(self, annotation: Annotation) -> str:
        annotator_id = annotation.annotator_id
        with self._lock_for(annotator_id):
            existing = self.load(annotator_id)
            merged = [a for a in existing if a.debate_id != annotation.debate_id]
            merged.append(annotation)
            merged.sort(key=lambda a: a.debate_id)
            save_annotations(self._path(annotator_id), merged)
        return f"{annotator_id}/{annotation.debate_id}"

    def all_annotations(self) -> list[Annotation]:
        out: list[Annotation] = []
        for annotator_id in self.annotators():
            out.extend(self.load(annotator_id))
        return out


def _error_response(exc: ServiceError) -> JSONResponse:
    return JSONResponse(
        status_code=exc.status_code,
        content={"code": exc.code, "message": exc.message, "pointer": exc.pointer},
    )


async def _json_body(request: Request) -> dict[str, Any]:
    try:
        body = await request.json()
    except Exception as exc:
        raise ServiceError(400, "E_BAD_JSON", f"request body is not valid JSON: {exc}")
    if not isinstance(body, dict):
        raise ServiceError(400, "E_BAD_REQUEST", "request body must be a JSON object")
    return body


def _decode_annotation(body: dict[str, Any]) -> Annotation:
    obj = body.get("annotation")
    if not isinstance(obj, dict):
        raise ServiceError(400, "E_BAD_REQUEST", "body requires an 'annotation' object")
    try:
        check_schema(obj, annotation_object_schema())
        return annotation_from_dict(obj)
    except SchemaViolation as exc:
        raise ServiceError(422, "E_SCHEMA", exc.message, pointer=exc.pointer or None)


def create_app(corpus_dir: Path | str, ui_dir: Path | str | None = None) -> FastAPI:
    corpus_dir = Path(corpus_dir)
    debates_path = corpus_dir / "debates.json"
    if not debates_path.exists():
        raise FileNotFoundError(f"corpus directory {corpus_dir} has no debates.json")
    debates: dict[str, Debate] = {d.id: d for d in load_debates(debates_path)}
    store = AnnotationStore(corpus_dir / "annotations")

    app = FastAPI(title="lpattack annotation service", version="1")

    @app.exception_handler(ServiceError)
    async def _handle_service_error(_request: Request, exc: ServiceError) -> JSONResponse:
        return _error_response(exc)

    def _debate_for(annotation: Annotation) -> Debate:
        debate = debates.get(annotation.debate_id)
        if debate is None:
            raise ServiceError(
                404, "E_NOT_FOUND", f"unknown debate id {annotation.debate_id!r}"
            )
        return debate

    @app.get("/debates")
    def list_debates() -> dict[str, Any]:
        return {
            "debates": [
                {"id": d.id, "topic": d.topic} for d in sorted(debates.values(), key=lambda d: d.id)
            ]
        }

    @app.get("/debates/{debate_id}")
    def get_debate(debate_id: str) -> Any:
        debate = debates.get(debate_id)
        if debate is None:
            raise ServiceError(404, "E_NOT_FOUND", f"unknown debate id {debate_id!r}")
        return debate_to_dict(debate)

    @app.post("/validate")
    async def post_validate(request: Request) -> Any:
        annotation = _decode_annotation(await _json_body(request))
        report = validate(annotation, _debate_for(annotation))
        return report.to_json_dict()

    @app.post("/canonicalize")
    async def post_canonicalize(request: Request) -> Any:
        body = await _json_body(request)
        annotation = _decode_annotation(body)
        drop = bool(body.get("drop_aux_rationale", False))
        try:
            canonical = canonicalize(annotation, drop_aux_rationale=drop)
        except InvalidAnnotationError as exc:
            raise ServiceError(422, "E_INVALID_ANNOTATION", str(exc))
        return {"annotation": annotation_to_dict(canonical)}

    @app.post("/render")
    async def post_render(request: Request) -> Any:
        body = await _json_body(request)
        annotation = _decode_annotation(body)
        require_valid = bool(body.get("require_valid", False))
        try:
            text = render_text_form(
                annotation, _debate_for(annotation), require_valid=require_valid
            )
        except RenderError as exc:
            raise ServiceError(422, "E_INVALID_ANNOTATION", str(exc))
        return {"text_form": text}

    @app.post("/annotations")
    async def post_annotation(request: Request) -> Any:
        annotation = _decode_annotation(await _json_body(request))
        if not _ANNOTATOR_ID_RE.fullmatch(annotation.annotator_id):
            raise ServiceError(
                422,
                "E_BAD_REQUEST",
                "annotator_id must match [A-Za-z0-9_.-]+ to be storable",
            )
        _debate_for(annotation)
        stored_id = store.put(annotation)
        return {"id": stored_id}

    @app.get("/annotations")
    def get_annotations(debate_id: str | None = None, annotator_id: str | None = None) -> Any:
        if annotator_id is not None:
            annotations = store.load(annotator_id)
        else:
            annotations = store.all_annotations()
        if debate_id is not None:
            annotations = [a for a in annotations if a.debate_id == debate_id]
        return {"annotations": [annotation_to_dict(a) for a in annotations]}

    @app.post("/agreement")
    async def post_agreement(request: Request) -> Any:
        body = await _json_body(request)
        annotator_a = body.get("annotator_a")
        annotator_b = body.get("annotator_b")
        if not isinstance(annotator_a, str) or not isinstance(annotator_b, str):
            raise ServiceError(400, "E_BAD_REQUEST", "body requires annotator_a and annotator_b")
        config_obj = body.get("config") or {}
        config = AgreementConfig(
            drop_aux_rationale=bool(config_obj.get("drop_aux_rationale", False)),
            lenient_threshold=float(config_obj.get("lenient_threshold", 0.5)),
        )
        corpus_a = {a.debate_id: a for a in store.load(annotator_a)}
        corpus_b = {a.debate_id: a for a in store.load(annotator_b)}
        common = sorted(set(corpus_a) & set(corpus_b))
        if not common:
            raise ServiceError(
                422,
                "E_NO_COMMON_DEBATES",
                f"annotators {annotator_a!r} and {annotator_b!r} share no annotated debates",
            )
        try:
            report = agreement_report(
                [corpus_a[d] for d in common], [corpus_b[d] for d in common], config
            )
        except (AgreementError, InvalidAnnotationError) as exc:
            raise ServiceError(422, "E_INVALID_ANNOTATION", str(exc))
        return report.to_json_dict()

    @app.get("/stats")
    def get_stats() -> Any:
        annotations = store.all_annotations()
        if not annotations:
            return {
                "report_type": "stats",
                "format_version": "1",
                "n_annotations": 0,
                "n_not_applicable": 0,
                "coverage": 0.0,
                "relation_counts": {},
                "attribute_counts": {},
                "motif_counts": {},
            }
        return build_stats_report(annotations).to_json_dict()

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=Path(ui_dir), html=True), name="ui")

    return app


def serve(
    port: int = 8040,
    host: str = "127.0.0.1",
    corpus_dir: Path | str | None = None,
    ui_dir: Path | str | None = None,
) -> None:
    """Run the service with uvicorn; corpus directory comes from the
    argument or the LPATTACK_CORPUS environment variable."""
    import uvicorn

    if corpus_dir is None:
        corpus_dir = os.environ.get("LPATTACK_CORPUS")
    if corpus_dir is None:
        raise FileNotFoundError("no corpus directory given (flag --corpus or LPATTACK_CORPUS)")
    app = create_app(corpus_dir, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")

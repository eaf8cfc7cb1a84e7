"""On-disk JSON formats and canonical (de)serialization.

Both corpus files are versioned objects (``"format_version": "1"``); any
``1.x`` minor version loads.  Saving is canonical: sorted keys, two-space
indent, UTF-8, LF line endings and a trailing newline, so saving the same
value twice yields byte-identical files.  Unknown fields on annotation
objects are preserved opaquely across load/save; unknown fields on nested
objects are tolerated and dropped.

Structural file validation is delegated to JSON Schema (the schema
documents shipped under ``lpattack/schemas`` are the interchange
contract); violations surface as SchemaViolation carrying a JSON pointer.
"""

from __future__ import annotations

import json
import os
import tempfile
import warnings
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Sequence

import jsonschema

from .model import (
    Annotation,
    BasePattern,
    Debate,
    Node,
    Polarity,
    Ref,
    RefType,
    Region,
    RelationInstance,
    RelationKind,
    Source,
    Span,
    Status,
)

FORMAT_VERSION = "1"

_ANNOTATION_KEYS = frozenset(
    {
        "debate_id",
        "annotator_id",
        "status",
        "base_pattern",
        "central_concept",
        "nodes",
        "relations",
        "text_form",
    }
)


class CorpusError(Exception):
    """File-level problem: unreadable, unparseable, wrong version,
    duplicate ids, references that cannot hold."""


class SchemaViolation(CorpusError):
    """The document does not match the interchange schema."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        self.message = message
        super().__init__(f"{pointer or '/'}: {message}")


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict[str, Any]:
    """Load one of the shipped schema documents by stem, e.g. "debates"
    or "report-agreement"."""
    text = resources.files("lpattack.schemas").joinpath(f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def annotation_object_schema() -> dict[str, Any]:
    """Schema for a single annotation object (used for request bodies)."""
    file_schema = load_schema("annotations")
    return {"$ref": "#/$defs/annotation", "$defs": file_schema["$defs"]}


def check_schema(instance: Any, schema: dict[str, Any]) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    error = jsonschema.exceptions.best_match(validator.iter_errors(instance))
    if error is not None:
        pointer = "/" + "/".join(str(part) for part in error.absolute_path)
        raise SchemaViolation(pointer if pointer != "/" else "", error.message)


def canonical_json_bytes(obj: Any) -> bytes:
    """Canonical UTF-8 encoding: sorted keys, 2-space indent, LF endings,
    trailing newline."""
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def _read_json(path: Path | str) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8-sig")  # tolerates a BOM
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _check_version(document: Any, path: Path | str) -> None:
    version = document.get("format_version") if isinstance(document, dict) else None
    if not isinstance(version, str) or not (version == "1" or version.startswith("1.")):
        raise CorpusError(f"{path}: unsupported format_version {version!r} (need 1 or 1.x)")


def _atomic_write(path: Path | str, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


# ---------------------------------------------------------------- debates


def debate_to_dict(debate: Debate) -> dict[str, Any]:
    return {
        "id": debate.id,
        "topic": debate.topic,
        "ia_text": debate.ia_text,
        "ca_text": debate.ca_text,
    }


def debate_from_dict(obj: dict[str, Any]) -> Debate:
    return Debate(
        id=obj["id"], topic=obj["topic"], ia_text=obj["ia_text"], ca_text=obj["ca_text"]
    )


def load_debates(path: Path | str) -> list[Debate]:
    """Load a debates file, enforcing unique ids and non-empty texts."""
    document = _read_json(path)
    _check_version(document, path)
    check_schema(document, load_schema("debates"))
    debates = [debate_from_dict(obj) for obj in document["debates"]]
    seen: set[str] = set()
    for debate in debates:
        if debate.id in seen:
            raise CorpusError(f"{path}: duplicate debate id {debate.id!r}")
        seen.add(debate.id)
    return debates


def save_debates(path: Path | str, debates: Sequence[Debate]) -> None:
    document = {
        "format_version": FORMAT_VERSION,
        "debates": [debate_to_dict(d) for d in debates],
    }
    _atomic_write(path, canonical_json_bytes(document))


# ------------------------------------------------------------ annotations


def span_to_dict(span: Span | None) -> dict[str, Any] | None:
    if span is None:
        return None
    return {
        "source": span.source.value,
        "start": span.start,
        "end": span.end,
        "text": span.text,
    }


def span_from_dict(obj: dict[str, Any] | None) -> Span | None:
    if obj is None:
        return None
    return Span(
        source=Source(obj["source"]), start=obj["start"], end=obj["end"], text=obj["text"]
    )


def _ref_to_dict(ref: Ref) -> dict[str, Any]:
    return {"ref_type": ref.ref_type.value, "ref_id": ref.ref_id}


def _ref_from_dict(obj: dict[str, Any]) -> Ref:
    return Ref(ref_type=RefType(obj["ref_type"]), ref_id=obj.get("ref_id"))


def _node_to_dict(node: Node) -> dict[str, Any]:
    return {
        "id": node.id,
        "central": node.central,
        "span": span_to_dict(node.span),
        "polarity": node.polarity.value,
        "negated": node.negated,
    }


def _node_from_dict(obj: dict[str, Any]) -> Node:
    return Node(
        id=obj["id"],
        central=obj.get("central", False),
        span=span_from_dict(obj.get("span")),
        polarity=Polarity(obj.get("polarity", "none")),
        negated=obj.get("negated", False),
    )


def _relation_to_dict(rel: RelationInstance) -> dict[str, Any]:
    return {
        "id": rel.id,
        "kind": rel.kind.value,
        "args": [_ref_to_dict(ref) for ref in rel.args],
        "region": rel.region.value,
        "negated": rel.negated,
        "mitigated": rel.mitigated,
    }


def _relation_from_dict(obj: dict[str, Any]) -> RelationInstance:
    return RelationInstance(
        id=obj["id"],
        kind=RelationKind(obj["kind"]),
        args=tuple(_ref_from_dict(ref) for ref in obj["args"]),
        region=Region(obj["region"]),
        negated=obj.get("negated", False),
        mitigated=obj.get("mitigated", False),
    )


def annotation_to_dict(annotation: Annotation) -> dict[str, Any]:
    """JSON form of one annotation; ``extra`` keys are merged back in and
    must not collide with the schema's own field names."""
    out: dict[str, Any] = {
        "debate_id": annotation.debate_id,
        "annotator_id": annotation.annotator_id,
        "status": annotation.status.value,
        "base_pattern": annotation.base_pattern.value if annotation.base_pattern else None,
        "central_concept": span_to_dict(annotation.central_concept),
        "nodes": [_node_to_dict(n) for n in annotation.nodes],
        "relations": [_relation_to_dict(r) for r in annotation.relations],
        "text_form": annotation.text_form,
    }
    for key, value in annotation.extra.items():
        if key in _ANNOTATION_KEYS:
            raise ValueError(f"extra field {key!r} collides with a schema field")
        out[key] = value
    return out


def annotation_from_dict(obj: dict[str, Any], pointer: str = "") -> Annotation:
    """Decode one schema-valid annotation object.  Model-level invariant
    violations (degenerate spans, duplicate ids, NA with content) surface
    as SchemaViolation at the given pointer."""
    extra = {key: value for key, value in obj.items() if key not in _ANNOTATION_KEYS}
    base_pattern = obj.get("base_pattern")
    try:
        return Annotation(
            debate_id=obj["debate_id"],
            annotator_id=obj["annotator_id"],
            status=Status(obj["status"]),
            base_pattern=BasePattern(base_pattern) if base_pattern else None,
            central_concept=span_from_dict(obj.get("central_concept")),
            nodes=tuple(_node_from_dict(n) for n in obj.get("nodes", [])),
            relations=tuple(_relation_from_dict(r) for r in obj.get("relations", [])),
            text_form=obj.get("text_form"),
            extra=extra,
        )
    except ValueError as exc:
        raise SchemaViolation(pointer, str(exc)) from exc


def load_annotations(
    path: Path | str,
    *,
    known_debate_ids: Iterable[str] | None = None,
) -> list[Annotation]:
    """Load an annotations file.  When ``known_debate_ids`` is given,
    annotations referencing unknown debates trigger a warning (they remain
    loadable; the validator settles the matter against the actual debate)."""
    document = _read_json(path)
    _check_version(document, path)
    check_schema(document, load_schema("annotations"))
    annotations = [
        annotation_from_dict(obj, pointer=f"/annotations/{index}")
        for index, obj in enumerate(document["annotations"])
    ]
    if known_debate_ids is not None:
        known = set(known_debate_ids)
        for annotation in annotations:
            if annotation.debate_id not in known:
                warnings.warn(
                    f"{path}: annotation references unknown debate id {annotation.debate_id!r}",
                    stacklevel=2,
                )
    return annotations


def dumps_annotations(annotations: Sequence[Annotation]) -> bytes:
    document = {
        "format_version": FORMAT_VERSION,
        "annotations": [annotation_to_dict(a) for a in annotations],
    }
    return canonical_json_bytes(document)


def loads_annotations(data: bytes | str) -> list[Annotation]:
    """In-memory counterpart of load_annotations (same checks, no file)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        document = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    _check_version(document, "<memory>")
    check_schema(document, load_schema("annotations"))
    return [
        annotation_from_dict(obj, pointer=f"/annotations/{index}")
        for index, obj in enumerate(document["annotations"])
    ]


def save_annotations(path: Path | str, annotations: Sequence[Annotation]) -> None:
    """Write annotations canonically (atomic replace).  Round trip holds:
    ``load_annotations(path)`` returns the same values field for field."""
    _atomic_write(path, dumps_annotations(annotations))

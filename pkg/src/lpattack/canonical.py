"""Canonical form and span-free structural signatures.

Equivalent representations are rewritten into one normal form before any
comparison.  The rule registry is versioned: adding a rule later must bump
RULESET_VERSION so previously published signature labels stay attributable
to the rule set that produced them.

Ruleset "1" implements two rewrites:

* causal-antecedent-negation (both directions): a promote/suppress whose
  antecedent node is negated becomes the opposite kind with the negation
  cleared ("no X promote Y" == "X suppress Y").  Relation-level negation
  ("X doesn't promote Y") is never rewritten; the absence of causation is
  not inverse causation.
* auxiliary-rationale (applied only when requested): a rationale/condition
  whose supported argument also appears as an argument of a more-important
  relation is auxiliary and is dropped.  Instances that are their region's
  only relation, or that are referenced by another relation, are kept.

Label syntax (stable, appears in agreement reports): nodes serialize as
``X`` (central concept) or ``N`` with flags in brackets (``N[good]``,
``N[neg,bad]``); relations as ``Kind(arg, arg)`` with ``[neg]``/``[mit]``
flags; conclusion anchors as ``IAConcl``/``CAConcl``; a relation argument
living in another region as ``@Kind``.  A region label joins its top-level
relations, sorted, with `` ; ``; an empty region is ``-`` and a
not-applicable annotation is ``NA`` for every markable.  Span text never
enters a label.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .model import (
    Annotation,
    CAUSAL_KINDS,
    Node,
    Polarity,
    Ref,
    RefType,
    Region,
    RelationInstance,
    RelationKind,
    Status,
    find_reference_cycle,
    referenced_ids,
)

RULESET_VERSION = "1"

NA_LABEL = "NA"
EMPTY_REGION_LABEL = "-"

_KIND_LABELS = {
    RelationKind.PROMOTE: "Promote",
    RelationKind.SUPPRESS: "Suppress",
    RelationKind.MORE_IMPORTANT: "MoreImportant",
    RelationKind.CONTRADICTION: "Contradiction",
    RelationKind.RATIONALE_CONDITION: "RationaleCondition",
    RelationKind.ACKNOWLEDGEMENT: "Acknowledgement",
    RelationKind.NULLIFY: "Nullify",
    RelationKind.LIMIT: "Limit",
    RelationKind.FUNCTION: "Function",
}

_ANCHOR_LABELS = {RefType.IA_CONCLUSION: "IAConcl", RefType.CA_CONCLUSION: "CAConcl"}

_FLIPPED = {RelationKind.PROMOTE: RelationKind.SUPPRESS, RelationKind.SUPPRESS: RelationKind.PROMOTE}


class InvalidAnnotationError(ValueError):
    """The annotation is structurally broken (dangling reference or
    reference cycle) and cannot be rewritten or serialized."""


@dataclass(frozen=True)
class MarkableSignature:
    """Canonical structural label of one markable; the agreement label."""

    markable: Region
    label: str


def _check_structure(annotation: Annotation) -> None:
    node_ids = {n.id for n in annotation.nodes}
    rel_ids = {r.id for r in annotation.relations}
    for rel in annotation.relations:
        for ref in rel.args:
            if ref.ref_type is RefType.NODE and ref.ref_id not in node_ids:
                raise InvalidAnnotationError(f"relation {rel.id!r} references unknown node {ref.ref_id!r}")
            if ref.ref_type is RefType.RELATION and ref.ref_id not in rel_ids:
                raise InvalidAnnotationError(f"relation {rel.id!r} references unknown relation {ref.ref_id!r}")
    cycle = find_reference_cycle(annotation)
    if cycle:
        raise InvalidAnnotationError(f"relation references form a cycle: {', '.join(cycle)}")


def _rewrite_causal_negation(annotation: Annotation) -> Annotation:
    negated_node_ids = {n.id for n in annotation.nodes if n.negated}
    flips: set[str] = set()
    cleared: set[str] = set()
    for rel in annotation.relations:
        if rel.kind in CAUSAL_KINDS and len(rel.args) == 2:
            antecedent = rel.args[0]
            if antecedent.ref_type is RefType.NODE and antecedent.ref_id in negated_node_ids:
                flips.add(rel.id)
                cleared.add(antecedent.ref_id)
    if not flips:
        return annotation
    relations = tuple(
        replace(rel, kind=_FLIPPED[rel.kind]) if rel.id in flips else rel
        for rel in annotation.relations
    )
    nodes = tuple(
        replace(node, negated=False) if node.id in cleared else node for node in annotation.nodes
    )
    return replace(annotation, nodes=nodes, relations=relations)


def _drop_auxiliary_rationale(annotation: Annotation) -> Annotation:
    mi_args = {
        ref
        for rel in annotation.relations
        if rel.kind is RelationKind.MORE_IMPORTANT
        for ref in rel.args
    }
    if not mi_args:
        return annotation
    referenced = referenced_ids(annotation.relations)
    remaining: dict[Region, int] = {}
    for rel in annotation.relations:
        remaining[rel.region] = remaining.get(rel.region, 0) + 1
    drop: set[str] = set()
    for rel in annotation.relations:
        if rel.kind is not RelationKind.RATIONALE_CONDITION or len(rel.args) != 2:
            continue
        if rel.args[0] not in mi_args:
            continue
        if remaining[rel.region] <= 1:
            continue  # never empty a region of its only relation
        if rel.id in referenced:
            continue  # removal would dangle another relation's argument
        drop.add(rel.id)
        remaining[rel.region] -= 1
    if not drop:
        return annotation
    relations = tuple(rel for rel in annotation.relations if rel.id not in drop)
    return replace(annotation, relations=relations)


#: name -> (always applied, rewrite); ordered.  Extending this registry
#: requires bumping RULESET_VERSION.
RULES: tuple[tuple[str, bool, Callable[[Annotation], Annotation]], ...] = (
    ("causal-antecedent-negation", True, _rewrite_causal_negation),
    ("auxiliary-rationale", False, _drop_auxiliary_rationale),
)


def canonicalize(annotation: Annotation, drop_aux_rationale: bool = False) -> Annotation:
    """Rewrite an annotation into the canonical form for comparison.

    Idempotent; preserves validity; returns not-applicable input unchanged.
    Raises InvalidAnnotationError on structurally broken input.
    """
    if annotation.status is Status.NOT_APPLICABLE:
        return annotation
    _check_structure(annotation)
    for _name, always, rule in RULES:
        if always or drop_aux_rationale:
            annotation = rule(annotation)
    return annotation


def _node_label(node: Node) -> str:
    base = "X" if node.central else "N"
    flags = []
    if node.negated:
        flags.append("neg")
    if node.polarity is not Polarity.NONE:
        flags.append(node.polarity.value)
    return f"{base}[{','.join(flags)}]" if flags else base


def _relation_flags(rel: RelationInstance) -> str:
    flags = []
    if rel.negated:
        flags.append("neg")
    if rel.mitigated:
        flags.append("mit")
    return f"[{','.join(flags)}]" if flags else ""


def _serialize_ref(
    annotation: Annotation,
    ref: Ref,
    region: Region,
    spans: list[str],
) -> str:
    if ref.is_anchor:
        return _ANCHOR_LABELS[ref.ref_type]
    if ref.ref_type is RefType.NODE:
        node = annotation.node_map()[ref.ref_id]
        span = annotation.node_span(node)
        spans.append(span.text if span is not None else "")
        return _node_label(node)
    target = annotation.relation_map()[ref.ref_id]
    if target.region is not region:
        # cross-region arguments stay opaque so each markable's label
        # depends only on its own structure
        return f"@{_KIND_LABELS[target.kind]}"
    return _serialize_relation(annotation, target, region, spans)


def _serialize_relation(
    annotation: Annotation,
    rel: RelationInstance,
    region: Region,
    spans: list[str],
) -> str:
    args = ", ".join(_serialize_ref(annotation, ref, region, spans) for ref in rel.args)
    return f"{_KIND_LABELS[rel.kind]}({args}){_relation_flags(rel)}"


def serialize_region(annotation: Annotation, region: Region) -> tuple[str, tuple[str, ...]]:
    """Deterministic (label, span texts) for one region of a canonicalized
    annotation.  Span texts are collected in label traversal order so two
    annotations with equal labels pair their spans positionally."""
    rels = annotation.relations_in(region)
    internal_refs = referenced_ids(rels) & {r.id for r in rels}
    entries: list[tuple[str, tuple[str, ...]]] = []
    for rel in rels:
        if rel.id in internal_refs:
            continue
        spans: list[str] = []
        label = _serialize_relation(annotation, rel, region, spans)
        entries.append((label, tuple(spans)))
    entries.sort()
    if not entries:
        return EMPTY_REGION_LABEL, ()
    label = " ; ".join(label for label, _ in entries)
    span_texts = tuple(text for _, texts in entries for text in texts)
    return label, span_texts


def signature(
    annotation: Annotation,
    markable: Region,
    *,
    drop_aux_rationale: bool = False,
) -> MarkableSignature:
    """Canonical label of one markable; "NA" for not-applicable annotations.
    Independent of node/relation ids and of declaration order."""
    if annotation.status is Status.NOT_APPLICABLE:
        return MarkableSignature(markable, NA_LABEL)
    canonical = canonicalize(annotation, drop_aux_rationale=drop_aux_rationale)
    label, _spans = serialize_region(canonical, markable)
    return MarkableSignature(markable, label)


def region_span_texts(
    annotation: Annotation,
    markable: Region,
    *,
    drop_aux_rationale: bool = False,
) -> tuple[str, ...]:
    """Span texts of one markable in canonical traversal order (empty for
    not-applicable annotations)."""
    if annotation.status is Status.NOT_APPLICABLE:
        return ()
    canonical = canonicalize(annotation, drop_aux_rationale=drop_aux_rationale)
    _label, spans = serialize_region(canonical, markable)
    return spans

"""Scheme validation with a stable diagnostic-code vocabulary.

The codes below are the public contract consumed by the CLI, the HTTP
service and the editor UI; messages are free to change, codes are not.

Budget accounting: a region's budget is the number of relation instances
in the region, plus one per good/bad polarity mark on the region's nodes,
plus one per mitigation flag on the region's relations.  Node negation is
free.  A node belongs to every region whose premise relations reference it
directly; attack-pattern relations never count against the IA/CA budgets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .model import (
    ATTACK_PATTERN_KINDS,
    ATTACKING_KINDS,
    Annotation,
    CAUSAL_KINDS,
    Debate,
    Polarity,
    Ref,
    RefType,
    Region,
    RelationInstance,
    RelationKind,
    Status,
    find_reference_cycle,
    node_regions,
    resolve_span,
    SpanOutOfBounds,
    SpanTextMismatch,
)

#: code -> short description; the keys are the stable vocabulary.
CODES: dict[str, str] = {
    "E_BASE_MISSING": "annotated but missing base pattern or central concept",
    "E_SPAN_MISMATCH": "span does not resolve against the debate text",
    "E_DANGLING_REF": "argument references an unknown node or relation id",
    "E_ARITY": "relation has the wrong number of arguments",
    "E_ARG_KIND": "relation argument (or attribute flag) has a disallowed kind",
    "E_REGION": "attack relation does not point from the CA side to the IA side",
    "E_IA_NO_CAUSAL": "IA pattern contains no promote/suppress relation",
    "E_IA_BUDGET": "IA pattern exceeds its relation/attribute budget",
    "E_CA_BUDGET": "CA pattern exceeds its relation/attribute budget",
    "E_ATTACK_MISSING": "attack pattern contains neither nullify nor limit",
    "E_CYCLE": "relation references form a cycle",
    "W_SPAN_LONG": "span text exceeds the configured length guidance",
    "W_NO_POLARITY": "markable uses no good/bad mark",
}


@dataclass(frozen=True)
class Diagnostic:
    code: str
    subject_id: str
    message: str

    def to_json_dict(self) -> dict[str, str]:
        return {"code": self.code, "subject_id": self.subject_id, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Diagnostic, ...] = ()
    warnings: tuple[Diagnostic, ...] = ()

    @property
    def is_valid(self) -> bool:
        return not self.errors

    def codes(self) -> list[str]:
        return [d.code for d in self.errors] + [d.code for d in self.warnings]

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "report_type": "validation",
            "is_valid": self.is_valid,
            "errors": [d.to_json_dict() for d in self.errors],
            "warnings": [d.to_json_dict() for d in self.warnings],
        }


@dataclass(frozen=True)
class ValidatorConfig:
    ia_budget: int = 2
    ca_budget: int = 3
    #: character-length proxy for "up to two small sentences"
    span_length_limit: int = 240
    count_polarity_in_budget: bool = True
    count_mitigation_in_budget: bool = True


DEFAULT_CONFIG = ValidatorConfig()

_BINARY_KINDS = frozenset(RelationKind) - {RelationKind.FUNCTION}


class _Collector:
    def __init__(self) -> None:
        self.errors: list[Diagnostic] = []
        self.warnings: list[Diagnostic] = []

    def error(self, code: str, subject_id: str, message: str) -> None:
        self.errors.append(Diagnostic(code, subject_id, message))

    def warn(self, code: str, subject_id: str, message: str) -> None:
        self.warnings.append(Diagnostic(code, subject_id, message))


def validate(
    annotation: Annotation,
    debate: Debate,
    config: ValidatorConfig = DEFAULT_CONFIG,
) -> ValidationReport:
    """Check one annotation against the scheme grammar and task constraints.

    Pure and deterministic: identical inputs produce identical reports.
    Not-applicable annotations validate vacuously.
    """
    if annotation.status is Status.NOT_APPLICABLE:
        return ValidationReport()

    out = _Collector()
    _check_base(annotation, out)
    _check_spans(annotation, debate, out)
    resolvable = _check_references(annotation, out)
    for rel in annotation.relations:
        _check_arity_and_kinds(annotation, rel, resolvable, out)
    _check_attack_regions(annotation, resolvable, out)
    _check_ia_causal(annotation, out)
    _check_budgets(annotation, config, out)
    _check_attack_presence(annotation, out)
    _check_cycle(annotation, out)
    _warn_long_spans(annotation, config, out)
    _warn_missing_polarity(annotation, out)
    return ValidationReport(errors=tuple(out.errors), warnings=tuple(out.warnings))


def _check_base(annotation: Annotation, out: _Collector) -> None:
    missing = []
    if annotation.base_pattern is None:
        missing.append("base pattern")
    if annotation.central_concept is None:
        missing.append("central concept")
    if missing:
        out.error("E_BASE_MISSING", "annotation", f"annotated but {' and '.join(missing)} not set")


def _check_spans(annotation: Annotation, debate: Debate, out: _Collector) -> None:
    if annotation.central_concept is not None:
        _try_resolve(debate, annotation.central_concept, "central_concept", out)
    for node in annotation.nodes:
        if node.span is not None:
            _try_resolve(debate, node.span, node.id, out)


def _try_resolve(debate: Debate, span, subject_id: str, out: _Collector) -> None:
    try:
        resolve_span(debate, span)
    except (SpanOutOfBounds, SpanTextMismatch) as exc:
        out.error("E_SPAN_MISMATCH", subject_id, str(exc))


def _check_references(annotation: Annotation, out: _Collector) -> dict[str, set[str]]:
    """Report dangling references; return the resolvable id sets so later
    checks can skip arguments that were already reported."""
    node_ids = {n.id for n in annotation.nodes}
    rel_ids = {r.id for r in annotation.relations}
    for rel in annotation.relations:
        for ref in rel.args:
            if ref.ref_type is RefType.NODE and ref.ref_id not in node_ids:
                out.error("E_DANGLING_REF", rel.id, f"unknown node id {ref.ref_id!r}")
            elif ref.ref_type is RefType.RELATION and ref.ref_id not in rel_ids:
                out.error("E_DANGLING_REF", rel.id, f"unknown relation id {ref.ref_id!r}")
    return {"nodes": node_ids, "relations": rel_ids}


def _arg_resolves(ref: Ref, resolvable: dict[str, set[str]]) -> bool:
    if ref.ref_type is RefType.NODE:
        return ref.ref_id in resolvable["nodes"]
    if ref.ref_type is RefType.RELATION:
        return ref.ref_id in resolvable["relations"]
    return True


def _check_arity_and_kinds(
    annotation: Annotation,
    rel: RelationInstance,
    resolvable: dict[str, set[str]],
    out: _Collector,
) -> None:
    if rel.kind in _BINARY_KINDS:
        if len(rel.args) != 2:
            out.error("E_ARITY", rel.id, f"{rel.kind.value} takes exactly 2 arguments, got {len(rel.args)}")
            return
    elif len(rel.args) < 2:
        out.error("E_ARITY", rel.id, f"function takes at least 2 arguments, got {len(rel.args)}")
        return

    kinds = [ref.ref_type for ref in rel.args]
    if rel.kind in CAUSAL_KINDS:
        if any(k is not RefType.NODE for k in kinds):
            out.error("E_ARG_KIND", rel.id, "promote/suppress arguments must both be nodes")
    elif rel.kind is RelationKind.MORE_IMPORTANT:
        if not (
            all(k is RefType.NODE for k in kinds)
            or all(k is RefType.RELATION for k in kinds)
        ):
            out.error("E_ARG_KIND", rel.id, "more-important compares two nodes or two relations")
    elif rel.kind is RelationKind.CONTRADICTION:
        if any(k is not RefType.RELATION for k in kinds):
            out.error("E_ARG_KIND", rel.id, "contradiction arguments must both be relations")
    elif rel.kind is RelationKind.RATIONALE_CONDITION:
        if kinds[0] not in (RefType.NODE, RefType.RELATION):
            out.error("E_ARG_KIND", rel.id, "rationale/condition supports a node or relation")
        elif kinds[1] is not RefType.NODE:
            out.error("E_ARG_KIND", rel.id, "the rationale argument must be a node")
    elif rel.kind is RelationKind.FUNCTION:
        rel_map = annotation.relation_map()
        for ref in rel.args:
            if ref.ref_type is not RefType.RELATION:
                out.error("E_ARG_KIND", rel.id, "function joins relation instances only")
                break
            if _arg_resolves(ref, resolvable) and rel_map[ref.ref_id].kind not in CAUSAL_KINDS:
                out.error("E_ARG_KIND", rel.id, f"function argument {ref.ref_id!r} is not causal")
                break
    if rel.mitigated and rel.kind not in CAUSAL_KINDS:
        out.error("E_ARG_KIND", rel.id, "mitigation applies to promote/suppress only")


def _on_side(
    annotation: Annotation,
    ref: Ref,
    side: Region,
    regions_by_node: dict[str, frozenset[Region]],
) -> bool:
    """Whether a reference lives on the given premise side.  A node shared
    by both premise regions counts on either side."""
    if ref.ref_type is RefType.IA_CONCLUSION:
        return side is Region.IA_PATTERN
    if ref.ref_type is RefType.CA_CONCLUSION:
        return side is Region.CA_PATTERN
    if ref.ref_type is RefType.RELATION:
        return annotation.relation_map()[ref.ref_id].region is side
    return side in regions_by_node.get(ref.ref_id, frozenset())


def _check_attack_regions(
    annotation: Annotation,
    resolvable: dict[str, set[str]],
    out: _Collector,
) -> None:
    regions_by_node = node_regions(annotation)
    for rel in annotation.relations:
        if rel.kind not in ATTACK_PATTERN_KINDS or len(rel.args) != 2:
            continue
        arg0, arg1 = rel.args
        if not (_arg_resolves(arg0, resolvable) and _arg_resolves(arg1, resolvable)):
            continue
        if not _on_side(annotation, arg0, Region.CA_PATTERN, regions_by_node):
            out.error("E_REGION", rel.id, f"{rel.kind.value} must attack from the CA side")
        elif not _on_side(annotation, arg1, Region.IA_PATTERN, regions_by_node):
            out.error("E_REGION", rel.id, f"{rel.kind.value} must target the IA side or IA conclusion")
        elif rel.region is not Region.ATTACK_PATTERN:
            out.error("E_REGION", rel.id, f"{rel.kind.value} belongs to the attack pattern region")


def _check_ia_causal(annotation: Annotation, out: _Collector) -> None:
    ia_rels = annotation.relations_in(Region.IA_PATTERN)
    if not any(r.kind in CAUSAL_KINDS for r in ia_rels):
        out.error("E_IA_NO_CAUSAL", Region.IA_PATTERN.value, "IA pattern requires a base causal relation")


def region_budget(annotation: Annotation, region: Region, config: ValidatorConfig = DEFAULT_CONFIG) -> int:
    """The budget consumed by one premise region under the configured policy."""
    rels = annotation.relations_in(region)
    budget = len(rels)
    if config.count_mitigation_in_budget:
        budget += sum(1 for r in rels if r.mitigated)
    if config.count_polarity_in_budget:
        regions_by_node = node_regions(annotation)
        for node in annotation.nodes:
            if node.polarity is not Polarity.NONE and region in regions_by_node[node.id]:
                budget += 1
    return budget


def _check_budgets(annotation: Annotation, config: ValidatorConfig, out: _Collector) -> None:
    for region, limit, code in (
        (Region.IA_PATTERN, config.ia_budget, "E_IA_BUDGET"),
        (Region.CA_PATTERN, config.ca_budget, "E_CA_BUDGET"),
    ):
        used = region_budget(annotation, region, config)
        if used > limit:
            out.error(code, region.value, f"budget {used} exceeds the limit of {limit}")


def _check_attack_presence(annotation: Annotation, out: _Collector) -> None:
    attack_rels = annotation.relations_in(Region.ATTACK_PATTERN)
    if not any(r.kind in ATTACKING_KINDS for r in attack_rels):
        out.error(
            "E_ATTACK_MISSING",
            Region.ATTACK_PATTERN.value,
            "at least one attacking relation (nullify or limit) is mandatory",
        )


def _check_cycle(annotation: Annotation, out: _Collector) -> None:
    cycle = find_reference_cycle(annotation)
    if cycle:
        out.error("E_CYCLE", cycle[0], f"relation references form a cycle: {', '.join(cycle)}")


def _warn_long_spans(annotation: Annotation, config: ValidatorConfig, out: _Collector) -> None:
    spans = []
    if annotation.central_concept is not None:
        spans.append(("central_concept", annotation.central_concept))
    spans.extend((n.id, n.span) for n in annotation.nodes if n.span is not None)
    for subject_id, span in spans:
        if len(span.text) > config.span_length_limit:
            out.warn(
                "W_SPAN_LONG",
                subject_id,
                f"span is {len(span.text)} characters; prefer at most {config.span_length_limit}",
            )


def _warn_missing_polarity(annotation: Annotation, out: _Collector) -> None:
    regions_by_node = node_regions(annotation)
    for region in (Region.IA_PATTERN, Region.CA_PATTERN):
        marked = any(
            node.polarity is not Polarity.NONE and region in regions_by_node[node.id]
            for node in annotation.nodes
        )
        if not marked:
            out.warn("W_NO_POLARITY", region.value, "good/bad attributes are prioritized")

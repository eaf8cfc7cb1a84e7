"""Deterministic verbalization of an annotation into its text form.

The output is a golden-file contract: wording changes here are deliberate
and must update the stored goldens.  One block per line:

    IA: {<conclusion>} because {<premise>}
    CA: {<conclusion>} because {<premise>}
    Attack: CA-pattern <verb> IA-pattern; ...

Conventions: span texts are double-quoted; a node with a good/bad mark is
parenthesized («("free time" which is good)»); node negation prefixes
«no » inside the quotes' wrapper; relation arguments nested inside another
relation are braced; multiple top-level premise relations are joined with
"; " in declaration order.  Polarity is always rendered outside the
quotes, and attack relations always use the fixed
CA-pattern/CA-conclusion ... IA-pattern/IA-conclusion template.
"""

from __future__ import annotations

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
    Status,
    find_reference_cycle,
    referenced_ids,
)
from .validation import ValidatorConfig, DEFAULT_CONFIG, validate


class RenderError(ValueError):
    """The annotation is not renderable (invalid or not annotated)."""


_ATTACK_VERBS = {
    RelationKind.ACKNOWLEDGEMENT: "acknowledge",
    RelationKind.NULLIFY: "nullify",
    RelationKind.LIMIT: "limit",
}


def render_text_form(
    annotation: Annotation,
    debate: Debate,
    config: ValidatorConfig = DEFAULT_CONFIG,
    *,
    require_valid: bool = True,
) -> str:
    """Render the text form of a valid, annotated annotation.

    Raises RenderError when validation fails, quoting the failing codes.
    With ``require_valid=False`` only structural renderability is needed
    (base pattern, central concept, resolvable references, no cycles), so
    in-progress editor drafts still get a live preview.
    """
    if annotation.status is not Status.ANNOTATED:
        raise RenderError("not-applicable annotations have no text form")
    if require_valid:
        report = validate(annotation, debate, config)
        if not report.is_valid:
            codes = ", ".join(sorted({d.code for d in report.errors}))
            raise RenderError(f"annotation does not validate ({codes})")
    else:
        _check_renderable(annotation)

    x_text = annotation.central_concept.text
    blocks = [
        _premise_block("IA", _conclusion(annotation.base_pattern, x_text, ia_side=True),
                       annotation, Region.IA_PATTERN),
        _premise_block("CA", _conclusion(annotation.base_pattern, x_text, ia_side=False),
                       annotation, Region.CA_PATTERN),
    ]
    attack = _attack_block(annotation)
    if attack:
        blocks.append(attack)
    return "\n".join(blocks)


def _check_renderable(annotation: Annotation) -> None:
    if annotation.base_pattern is None or annotation.central_concept is None:
        raise RenderError("rendering requires a base pattern and a central concept")
    node_ids = {n.id for n in annotation.nodes}
    rel_ids = {r.id for r in annotation.relations}
    for rel in annotation.relations:
        for ref in rel.args:
            if ref.ref_type is RefType.NODE and ref.ref_id not in node_ids:
                raise RenderError(f"relation {rel.id!r} references unknown node {ref.ref_id!r}")
            if ref.ref_type is RefType.RELATION and ref.ref_id not in rel_ids:
                raise RenderError(f"relation {rel.id!r} references unknown relation {ref.ref_id!r}")
    if find_reference_cycle(annotation):
        raise RenderError("relation references form a cycle")


def _conclusion(base_pattern: BasePattern, x_text: str, ia_side: bool) -> str:
    sentiment = "negative" if base_pattern is BasePattern.PATTERN1 else "positive"
    verb = "is" if ia_side else "is not"
    return f'"{x_text}" {verb} {sentiment}'


def _premise_block(tag: str, conclusion: str, annotation: Annotation, region: Region) -> str:
    rels = annotation.relations_in(region)
    nested = referenced_ids(rels) & {r.id for r in rels}
    top = [r for r in rels if r.id not in nested]
    if not top:
        return f"{tag}: {{{conclusion}}}"
    premise = "; ".join(_render_relation(annotation, r) for r in top)
    return f"{tag}: {{{conclusion}}} because {{{premise}}}"


def _render_node(annotation: Annotation, node: Node) -> str:
    span = annotation.node_span(node)
    quoted = f'"{span.text}"'
    if node.negated:
        quoted = f"no {quoted}"
    if node.polarity is not Polarity.NONE:
        return f"({quoted} which is {node.polarity.value})"
    return quoted


def _render_ref(annotation: Annotation, ref: Ref) -> str:
    if ref.ref_type is RefType.IA_CONCLUSION:
        return "IA-conclusion"
    if ref.ref_type is RefType.CA_CONCLUSION:
        return "CA-conclusion"
    if ref.ref_type is RefType.NODE:
        return _render_node(annotation, annotation.node_map()[ref.ref_id])
    return f"{{{_render_relation(annotation, annotation.relation_map()[ref.ref_id])}}}"


def _render_relation(annotation: Annotation, rel: RelationInstance) -> str:
    args = [_render_ref(annotation, ref) for ref in rel.args]
    kind = rel.kind
    if kind in (RelationKind.PROMOTE, RelationKind.SUPPRESS):
        verb = kind.value if not rel.negated else f"doesn't {kind.value}"
        phrase = f"{args[0]} {verb} {args[1]}"
        if rel.mitigated:
            phrase += " can be mitigated"
        return phrase
    if kind is RelationKind.MORE_IMPORTANT:
        verb = "is more important/severe/has greater weight than"
        if rel.negated:
            verb = "is not more important/severe/has greater weight than"
        return f"{args[0]} {verb} {args[1]}"
    if kind is RelationKind.RATIONALE_CONDITION:
        connective = "given the rationale/condition that"
        if rel.negated:
            connective = f"not {connective}"
        return f"{args[0]} {connective} {args[1]}"
    if kind is RelationKind.CONTRADICTION:
        verb = "contradicts" if not rel.negated else "doesn't contradict"
        return f"{args[0]} {verb} {args[1]}"
    if kind is RelationKind.FUNCTION:
        joined = " joined with ".join(args)
        return joined if not rel.negated else f"not ({joined})"
    # attack relations nested as arguments (unusual but representable)
    verb = _ATTACK_VERBS[kind] if not rel.negated else f"doesn't {_ATTACK_VERBS[kind]}"
    return f"{args[0]} {verb} {args[1]}"


def _attack_block(annotation: Annotation) -> str | None:
    rels = annotation.relations_in(Region.ATTACK_PATTERN)
    if not rels:
        return None
    # acknowledgements first, then document order
    ordered = sorted(
        enumerate(rels),
        key=lambda item: (0 if item[1].kind is RelationKind.ACKNOWLEDGEMENT else 1, item[0]),
    )
    clauses = []
    for _idx, rel in ordered:
        verb = _ATTACK_VERBS[rel.kind]
        if rel.negated:
            verb = f"doesn't {verb}"
        arg0 = "CA-conclusion" if rel.args[0].ref_type is RefType.CA_CONCLUSION else "CA-pattern"
        arg1 = "IA-conclusion" if rel.args[1].ref_type is RefType.IA_CONCLUSION else "IA-pattern"
        clauses.append(f"{arg0} {verb} {arg1}")
    return "Attack: " + "; ".join(clauses)

"""Corpus-level descriptive statistics: coverage, relation/attribute
distribution and the attack-motif histogram.

Motif detectors run on canonicalized annotations and live in an ordered
registry so further recurring strategies can be added without touching the
counting code.  VALUE_JUDGE_OVER_RELATIONS is not a motif of its own: it
flags the sub-case of VALUE_JUDGE_DENY_CONCLUSION where the value
judgement compares two causal relations rather than two concepts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from .canonical import canonicalize
from .model import (
    Annotation,
    CAUSAL_KINDS,
    Polarity,
    RefType,
    Region,
    RelationInstance,
    RelationKind,
    Status,
)

ATTRIBUTE_KEYS = ("negation", "mitigation", "good", "bad")


class EmptyCorpusError(ValueError):
    pass


def coverage(corpus: Sequence[Annotation]) -> float:
    """Fraction of debates the scheme could represent (non-NA share)."""
    if not corpus:
        raise EmptyCorpusError("coverage is undefined for an empty corpus")
    return sum(1 for a in corpus if a.status is Status.ANNOTATED) / len(corpus)


def relation_distribution(corpus: Iterable[Annotation]) -> dict[str, int]:
    """Occurrence counts for all nine relation kinds plus the negation,
    mitigation, good and bad attributes.  Node and relation negations both
    count toward "negation"; not-applicable annotations contribute zero."""
    counts: dict[str, int] = {kind.value: 0 for kind in RelationKind}
    counts.update({key: 0 for key in ATTRIBUTE_KEYS})
    for annotation in corpus:
        if annotation.status is not Status.ANNOTATED:
            continue
        for rel in annotation.relations:
            counts[rel.kind.value] += 1
            if rel.negated:
                counts["negation"] += 1
            if rel.mitigated:
                counts["mitigation"] += 1
        for node in annotation.nodes:
            if node.negated:
                counts["negation"] += 1
            if node.polarity is Polarity.GOOD:
                counts["good"] += 1
            elif node.polarity is Polarity.BAD:
                counts["bad"] += 1
    return counts


def _ia_causals(annotation: Annotation) -> list[RelationInstance]:
    return [r for r in annotation.relations_in(Region.IA_PATTERN) if r.kind in CAUSAL_KINDS]


def _nullify_targets(annotation: Annotation) -> list[tuple[RelationInstance, RelationInstance | None, bool]]:
    """(nullify, targeted relation or None, targets the IA conclusion) triples."""
    rel_map = annotation.relation_map()
    out = []
    for rel in annotation.relations_in(Region.ATTACK_PATTERN):
        if rel.kind is not RelationKind.NULLIFY or len(rel.args) != 2:
            continue
        target = rel.args[1]
        if target.ref_type is RefType.IA_CONCLUSION:
            out.append((rel, None, True))
        elif target.ref_type is RefType.RELATION and target.ref_id in rel_map:
            out.append((rel, rel_map[target.ref_id], False))
    return out


def _detect_negate_premise(annotation: Annotation) -> bool:
    """A nullify targets an IA causal and the CA pattern contains a
    relation-negated causal counterpart of the same kind."""
    attacked_kinds = {
        target.kind
        for _rel, target, to_conclusion in _nullify_targets(annotation)
        if not to_conclusion and target is not None and target.kind in CAUSAL_KINDS
        and target.region is Region.IA_PATTERN
    }
    if not attacked_kinds:
        return False
    return any(
        rel.kind in attacked_kinds and rel.negated
        for rel in annotation.relations_in(Region.CA_PATTERN)
        if rel.kind in CAUSAL_KINDS
    )


def _ca_more_important(annotation: Annotation) -> list[RelationInstance]:
    return [
        r
        for r in annotation.relations_in(Region.CA_PATTERN)
        if r.kind is RelationKind.MORE_IMPORTANT
    ]


def _detect_value_judge_deny_conclusion(annotation: Annotation) -> bool:
    """A value judgement in the CA pattern, attacking the IA either via an
    acknowledgement of the IA pattern or a direct nullify of its conclusion."""
    if not _ca_more_important(annotation):
        return False
    acknowledges_ia = any(
        rel.kind is RelationKind.ACKNOWLEDGEMENT
        and len(rel.args) == 2
        and rel.args[1].ref_type in (RefType.NODE, RefType.RELATION)
        for rel in annotation.relations_in(Region.ATTACK_PATTERN)
    )
    nullifies_conclusion = any(
        to_conclusion for _rel, _target, to_conclusion in _nullify_targets(annotation)
    )
    return acknowledges_ia or nullifies_conclusion


def _detect_value_judge_over_relations(annotation: Annotation) -> bool:
    if not _detect_value_judge_deny_conclusion(annotation):
        return False
    return any(
        all(ref.ref_type is RefType.RELATION for ref in rel.args)
        for rel in _ca_more_important(annotation)
    )


def _detect_mitigate_limit(annotation: Annotation) -> bool:
    """A mitigated causal in the CA pattern combined with a limit."""
    has_limit = any(
        rel.kind is RelationKind.LIMIT
        for rel in annotation.relations_in(Region.ATTACK_PATTERN)
    )
    if not has_limit:
        return False
    return any(
        rel.mitigated
        for rel in annotation.relations_in(Region.CA_PATTERN)
        if rel.kind in CAUSAL_KINDS
    )


def _detect_contradict_deny(annotation: Annotation) -> bool:
    """A contradiction in the CA pattern plus a nullify of the IA
    conclusion or of an IA causal."""
    has_contradiction = any(
        rel.kind is RelationKind.CONTRADICTION
        for rel in annotation.relations_in(Region.CA_PATTERN)
    )
    if not has_contradiction:
        return False
    for _rel, target, to_conclusion in _nullify_targets(annotation):
        if to_conclusion:
            return True
        if target is not None and target.kind in CAUSAL_KINDS and target.region is Region.IA_PATTERN:
            return True
    return False


#: ordered registry; keys are the stable motif names used in reports.
MOTIF_DETECTORS: dict[str, Callable[[Annotation], bool]] = {
    "NEGATE_PREMISE": _detect_negate_premise,
    "VALUE_JUDGE_DENY_CONCLUSION": _detect_value_judge_deny_conclusion,
    "VALUE_JUDGE_OVER_RELATIONS": _detect_value_judge_over_relations,
    "MITIGATE_LIMIT": _detect_mitigate_limit,
    "CONTRADICT_DENY": _detect_contradict_deny,
}


def motif_histogram(corpus: Iterable[Annotation]) -> dict[str, int]:
    """Count named attack motifs across a corpus.  Detection happens on the
    canonicalized form, so equivalent representations count alike; one
    annotation may match several motifs."""
    counts = {name: 0 for name in MOTIF_DETECTORS}
    for annotation in corpus:
        if annotation.status is not Status.ANNOTATED:
            continue
        canonical = canonicalize(annotation)
        for name, detector in MOTIF_DETECTORS.items():
            if detector(canonical):
                counts[name] += 1
    return counts


@dataclass(frozen=True)
class StatsReport:
    n_annotations: int
    n_not_applicable: int
    coverage: float
    distribution: dict[str, int]
    motifs: dict[str, int]

    def to_json_dict(self) -> dict[str, Any]:
        relation_counts = {kind.value: self.distribution[kind.value] for kind in RelationKind}
        attribute_counts = {key: self.distribution[key] for key in ATTRIBUTE_KEYS}
        return {
            "report_type": "stats",
            "format_version": "1",
            "n_annotations": self.n_annotations,
            "n_not_applicable": self.n_not_applicable,
            "coverage": self.coverage,
            "relation_counts": relation_counts,
            "attribute_counts": attribute_counts,
            "motif_counts": dict(self.motifs),
        }


def build_stats_report(corpus: Sequence[Annotation]) -> StatsReport:
    return StatsReport(
        n_annotations=len(corpus),
        n_not_applicable=sum(1 for a in corpus if a.status is Status.NOT_APPLICABLE),
        coverage=coverage(corpus),
        distribution=relation_distribution(corpus),
        motifs=motif_histogram(corpus),
    )

"""Inter-annotator agreement over canonical markable signatures.

Two strategies are computed side by side: per-markable (one label pair per
markable, three per debate) and concatenated (one label pair per debate,
the three markable labels joined as IA|CA|Attack).  Not-applicable
annotations contribute the first-class label "NA", so disagreement about
applicability depresses kappa.

Text spans are compared only where the structural labels already agree,
and only for the IA and CA markables (the attack pattern connects the two
patterns and carries no spans of its own).  Spans are paired positionally
in canonical traversal order rather than by bipartite matching.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Sequence

from .canonical import NA_LABEL, RULESET_VERSION, region_span_texts, signature
from .model import Annotation, Region, Status

MARKABLES = (Region.IA_PATTERN, Region.CA_PATTERN, Region.ATTACK_PATTERN)
SPAN_BEARING_MARKABLES = (Region.IA_PATTERN, Region.CA_PATTERN)


class AgreementError(ValueError):
    """Inputs violate the pairing preconditions (length or debate-set
    mismatch, empty corpus)."""


class Mode(str, Enum):
    PER_MARKABLE = "per_markable"
    CONCATENATED = "concatenated"


class MatchLevel(str, Enum):
    EXACT = "exact"
    LENIENT = "lenient"
    MISMATCH = "mismatch"


@dataclass(frozen=True)
class AgreementConfig:
    drop_aux_rationale: bool = False
    lenient_threshold: float = 0.5

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "drop_aux_rationale": self.drop_aux_rationale,
            "lenient_threshold": self.lenient_threshold,
            "ruleset_version": RULESET_VERSION,
        }


DEFAULT_CONFIG = AgreementConfig()


@dataclass(frozen=True)
class ComparisonItem:
    """One kappa observation: a label pair for a markable or whole debate."""

    debate_id: str
    unit: str  # markable region value, or "debate" in concatenated mode
    label_a: str
    label_b: str

    @property
    def agreed(self) -> bool:
        return self.label_a == self.label_b


def cohen_kappa(labels_a: Sequence[str], labels_b: Sequence[str]) -> float:
    """Cohen's kappa between two positionally paired label sequences.

    kappa = (p_o - p_e) / (1 - p_e) with p_o the observed agreement rate
    and p_e the dot product of the marginal label distributions.  The
    degenerate single-label case (p_e = 1, necessarily p_o = 1) yields 1.0.
    """
    if len(labels_a) != len(labels_b):
        raise AgreementError(f"label lists differ in length: {len(labels_a)} vs {len(labels_b)}")
    if not labels_a:
        raise AgreementError("kappa is undefined for empty label lists")
    n = len(labels_a)
    p_o = sum(1 for a, b in zip(labels_a, labels_b) if a == b) / n
    counts_a: dict[str, int] = {}
    counts_b: dict[str, int] = {}
    for a in labels_a:
        counts_a[a] = counts_a.get(a, 0) + 1
    for b in labels_b:
        counts_b[b] = counts_b.get(b, 0) + 1
    p_e = sum(counts_a[label] * counts_b.get(label, 0) for label in counts_a) / (n * n)
    if p_e == 1.0:
        return 1.0
    return (p_o - p_e) / (1.0 - p_e)


def markable_labels(
    annotation: Annotation, config: AgreementConfig = DEFAULT_CONFIG
) -> dict[Region, str]:
    return {
        markable: signature(
            annotation, markable, drop_aux_rationale=config.drop_aux_rationale
        ).label
        for markable in MARKABLES
    }


def concatenated_label(annotation: Annotation, config: AgreementConfig = DEFAULT_CONFIG) -> str:
    """The whole-debate label: the three markable labels joined in fixed
    IA|CA|Attack order ("NA" for not-applicable annotations)."""
    if annotation.status is Status.NOT_APPLICABLE:
        return NA_LABEL
    labels = markable_labels(annotation, config)
    return "|".join(labels[m] for m in MARKABLES)


def compare_markables(
    a: Annotation,
    b: Annotation,
    mode: Mode,
    config: AgreementConfig = DEFAULT_CONFIG,
) -> list[ComparisonItem]:
    """Label pairs for one dual-annotated debate in the requested mode."""
    if a.debate_id != b.debate_id:
        raise AgreementError(f"annotations reference different debates: {a.debate_id!r} vs {b.debate_id!r}")
    if mode is Mode.CONCATENATED:
        return [
            ComparisonItem(
                a.debate_id, "debate", concatenated_label(a, config), concatenated_label(b, config)
            )
        ]
    labels_a = markable_labels(a, config)
    labels_b = markable_labels(b, config)
    return [
        ComparisonItem(a.debate_id, markable.value, labels_a[markable], labels_b[markable])
        for markable in MARKABLES
    ]


_TERMINAL_PUNCT = ".,;:!?…"


def normalize_span(text: str) -> str:
    """Comparison normal form: lowercase, collapsed whitespace, terminal
    punctuation stripped."""
    collapsed = " ".join(text.lower().split())
    return collapsed.rstrip(_TERMINAL_PUNCT).rstrip()


def _contains(longer: list[str], shorter: list[str]) -> bool:
    if not shorter:
        return True
    for start in range(len(longer) - len(shorter) + 1):
        if longer[start : start + len(shorter)] == shorter:
            return True
    return False


def span_pair_lenient(a: str, b: str, threshold: float = 0.5) -> bool:
    """Whether two span texts at least leniently match: equal after
    normalization, one token sequence contained in the other, or token-set
    Jaccard at or above the threshold."""
    na, nb = normalize_span(a), normalize_span(b)
    if na == nb:
        return True
    ta, tb = na.split(), nb.split()
    if _contains(ta, tb) or _contains(tb, ta):
        return True
    sa, sb = set(ta), set(tb)
    union = sa | sb
    if not union:
        return True
    return len(sa & sb) / len(union) >= threshold


def span_match(
    spans_a: Sequence[str],
    spans_b: Sequence[str],
    threshold: float = 0.5,
) -> MatchLevel:
    """Classify positionally paired span lists: exact when every pair is
    equal after normalization; lenient when every pair at least leniently
    matches and at least one is not exact; mismatch otherwise (including
    unequal lengths)."""
    if len(spans_a) != len(spans_b):
        return MatchLevel.MISMATCH
    exact = all(normalize_span(a) == normalize_span(b) for a, b in zip(spans_a, spans_b))
    if exact:
        return MatchLevel.EXACT
    if all(span_pair_lenient(a, b, threshold) for a, b in zip(spans_a, spans_b)):
        return MatchLevel.LENIENT
    return MatchLevel.MISMATCH


@dataclass(frozen=True)
class SpanTally:
    exact: int = 0
    lenient: int = 0
    mismatch: int = 0

    @property
    def total(self) -> int:
        return self.exact + self.lenient + self.mismatch

    def to_json_dict(self) -> dict[str, int]:
        return {"exact": self.exact, "lenient": self.lenient, "mismatch": self.mismatch}


@dataclass(frozen=True)
class AgreementReport:
    n_debates: int
    coverage_a: float
    coverage_b: float
    kappa_per_markable: float
    kappa_concatenated: float
    agreed_markables: tuple[tuple[str, str], ...]  # (debate_id, markable)
    agreed_debates: tuple[str, ...]
    span_match_per_markable: SpanTally
    span_match_concatenated: SpanTally
    config: AgreementConfig = field(default_factory=AgreementConfig)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "report_type": "agreement",
            "format_version": "1",
            "n_debates": self.n_debates,
            "coverage_a": self.coverage_a,
            "coverage_b": self.coverage_b,
            "kappa_per_markable": self.kappa_per_markable,
            "kappa_concatenated": self.kappa_concatenated,
            "agreed_markables": {
                "count": len(self.agreed_markables),
                "items": [
                    {"debate_id": debate_id, "markable": markable}
                    for debate_id, markable in self.agreed_markables
                ],
            },
            "agreed_debates": {
                "count": len(self.agreed_debates),
                "items": list(self.agreed_debates),
            },
            "span_match_per_markable": self.span_match_per_markable.to_json_dict(),
            "span_match_concatenated": self.span_match_concatenated.to_json_dict(),
            "config": self.config.to_json_dict(),
        }


def _index_corpus(corpus: Iterable[Annotation], which: str) -> dict[str, Annotation]:
    indexed: dict[str, Annotation] = {}
    for annotation in corpus:
        if annotation.debate_id in indexed:
            raise AgreementError(
                f"corpus {which} annotates debate {annotation.debate_id!r} more than once"
            )
        indexed[annotation.debate_id] = annotation
    if not indexed:
        raise AgreementError(f"corpus {which} is empty")
    return indexed


def _coverage(corpus: Iterable[Annotation]) -> float:
    annotations = list(corpus)
    return sum(1 for a in annotations if a.status is Status.ANNOTATED) / len(annotations)


def _tally(levels: Iterable[MatchLevel]) -> SpanTally:
    counts = {level: 0 for level in MatchLevel}
    for level in levels:
        counts[level] += 1
    return SpanTally(
        exact=counts[MatchLevel.EXACT],
        lenient=counts[MatchLevel.LENIENT],
        mismatch=counts[MatchLevel.MISMATCH],
    )


def agreement_report(
    corpus_a: Sequence[Annotation],
    corpus_b: Sequence[Annotation],
    config: AgreementConfig = DEFAULT_CONFIG,
) -> AgreementReport:
    """Full agreement report for two corpora covering the same debates,
    one annotation per debate and annotator."""
    by_a = _index_corpus(corpus_a, "a")
    by_b = _index_corpus(corpus_b, "b")
    if set(by_a) != set(by_b):
        only_a = sorted(set(by_a) - set(by_b))
        only_b = sorted(set(by_b) - set(by_a))
        raise AgreementError(
            f"corpora cover different debates (only in a: {only_a}, only in b: {only_b})"
        )
    debate_ids = sorted(by_a)

    per_markable_items: list[ComparisonItem] = []
    concatenated_items: list[ComparisonItem] = []
    for debate_id in debate_ids:
        per_markable_items.extend(
            compare_markables(by_a[debate_id], by_b[debate_id], Mode.PER_MARKABLE, config)
        )
        concatenated_items.extend(
            compare_markables(by_a[debate_id], by_b[debate_id], Mode.CONCATENATED, config)
        )

    kappa_i = cohen_kappa(
        [item.label_a for item in per_markable_items],
        [item.label_b for item in per_markable_items],
    )
    kappa_ii = cohen_kappa(
        [item.label_a for item in concatenated_items],
        [item.label_b for item in concatenated_items],
    )

    agreed_markables = tuple(
        (item.debate_id, item.unit) for item in per_markable_items if item.agreed
    )
    agreed_debates = tuple(item.debate_id for item in concatenated_items if item.agreed)

    def spans_of(annotation: Annotation, markable: Region) -> tuple[str, ...]:
        return region_span_texts(
            annotation, markable, drop_aux_rationale=config.drop_aux_rationale
        )

    per_markable_levels: list[MatchLevel] = []
    for item in per_markable_items:
        if item.unit == Region.ATTACK_PATTERN.value or not item.agreed:
            continue
        a, b = by_a[item.debate_id], by_b[item.debate_id]
        if not (a.is_annotated and b.is_annotated):
            continue  # both NA: agreed but span-free
        markable = Region(item.unit)
        per_markable_levels.append(
            span_match(spans_of(a, markable), spans_of(b, markable), config.lenient_threshold)
        )

    concatenated_levels: list[MatchLevel] = []
    for item in concatenated_items:
        if not item.agreed:
            continue
        a, b = by_a[item.debate_id], by_b[item.debate_id]
        if not (a.is_annotated and b.is_annotated):
            continue
        spans_a = spans_of(a, Region.IA_PATTERN) + spans_of(a, Region.CA_PATTERN)
        spans_b = spans_of(b, Region.IA_PATTERN) + spans_of(b, Region.CA_PATTERN)
        concatenated_levels.append(span_match(spans_a, spans_b, config.lenient_threshold))

    return AgreementReport(
        n_debates=len(debate_ids),
        coverage_a=_coverage(corpus_a),
        coverage_b=_coverage(corpus_b),
        kappa_per_markable=kappa_i,
        kappa_concatenated=kappa_ii,
        agreed_markables=agreed_markables,
        agreed_debates=agreed_debates,
        span_match_per_markable=_tally(per_markable_levels),
        span_match_concatenated=_tally(concatenated_levels),
        config=config,
    )

"""Typed hypergraph model for attack-logic annotations of debate pairs.

A debate pairs an initial argument (IA) with a counterargument (CA).  An
annotation captures the logic pattern of the attack as three regions: the
IA premise pattern, the CA premise pattern, and the attack pattern that
connects them.  Relation instances are (possibly higher-order) edges whose
arguments reference nodes, other relation instances, or the two synthetic
conclusion anchors implied by the base pattern.

All values are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping, Sequence


class Source(str, Enum):
    """Which debate speech a text span is taken from."""

    IA = "ia"
    CA = "ca"


class Polarity(str, Enum):
    """Arguer sentiment mark on a concept: good (positive), bad (negative)."""

    GOOD = "good"
    BAD = "bad"
    NONE = "none"


class Status(str, Enum):
    ANNOTATED = "annotated"
    NOT_APPLICABLE = "not_applicable"


class BasePattern(str, Enum):
    """Stance template fixing the two conclusions.

    PATTERN1: IA argues against X ("X is negative" / CA: "X is not negative").
    PATTERN2: IA argues for X ("X is positive" / CA: "X is not positive").
    """

    PATTERN1 = "pattern1"
    PATTERN2 = "pattern2"


class RelationKind(str, Enum):
    PROMOTE = "promote"
    SUPPRESS = "suppress"
    MORE_IMPORTANT = "more_important"
    CONTRADICTION = "contradiction"
    RATIONALE_CONDITION = "rationale_condition"
    ACKNOWLEDGEMENT = "acknowledgement"
    NULLIFY = "nullify"
    LIMIT = "limit"
    FUNCTION = "function"


CAUSAL_KINDS = frozenset({RelationKind.PROMOTE, RelationKind.SUPPRESS})
#: Relations that live in the attack pattern.
ATTACK_PATTERN_KINDS = frozenset(
    {RelationKind.ACKNOWLEDGEMENT, RelationKind.NULLIFY, RelationKind.LIMIT}
)
#: The mandatory "attacking relations" proper (acknowledgement only agrees).
ATTACKING_KINDS = frozenset({RelationKind.NULLIFY, RelationKind.LIMIT})


class Region(str, Enum):
    IA_PATTERN = "ia_pattern"
    CA_PATTERN = "ca_pattern"
    ATTACK_PATTERN = "attack_pattern"


class RefType(str, Enum):
    NODE = "node"
    RELATION = "relation"
    IA_CONCLUSION = "ia_conclusion"
    CA_CONCLUSION = "ca_conclusion"


class SpanOutOfBounds(ValueError):
    """Span offsets do not fit the referenced debate text."""


class SpanTextMismatch(ValueError):
    """Stored span text differs from the debate substring (corpus drift)."""


class ChainBroken(ValueError):
    """Causal chain endpoints do not connect."""


class NonCausalArgument(ValueError):
    """A function argument is not a promote/suppress relation."""


@dataclass(frozen=True)
class Debate:
    """One debate: a topic plus the full IA and CA speeches."""

    id: str
    topic: str
    ia_text: str
    ca_text: str

    def __post_init__(self) -> None:
        if not self.ia_text or not self.ca_text:
            raise ValueError(f"debate {self.id!r}: ia_text and ca_text must be non-empty")

    def text(self, source: Source) -> str:
        return self.ia_text if source is Source.IA else self.ca_text


@dataclass(frozen=True)
class Span:
    """Character span into one debate speech; offsets are Unicode scalars,
    start inclusive, end exclusive."""

    source: Source
    start: int
    end: int
    text: str

    def __post_init__(self) -> None:
        if self.start < 0 or self.end <= self.start:
            raise SpanOutOfBounds(
                f"degenerate span [{self.start}, {self.end}) in {self.source.value}"
            )


@dataclass(frozen=True)
class Ref:
    """Typed argument reference: a node, a relation instance, or one of the
    two synthetic conclusion anchors."""

    ref_type: RefType
    ref_id: str | None = None

    def __post_init__(self) -> None:
        if self.ref_type in (RefType.NODE, RefType.RELATION):
            if not self.ref_id:
                raise ValueError(f"{self.ref_type.value} reference requires ref_id")
        elif self.ref_id is not None:
            raise ValueError("conclusion anchors carry no ref_id")

    @staticmethod
    def node(node_id: str) -> "Ref":
        return Ref(RefType.NODE, node_id)

    @staticmethod
    def relation(relation_id: str) -> "Ref":
        return Ref(RefType.RELATION, relation_id)

    @staticmethod
    def ia_conclusion() -> "Ref":
        return Ref(RefType.IA_CONCLUSION)

    @staticmethod
    def ca_conclusion() -> "Ref":
        return Ref(RefType.CA_CONCLUSION)

    @property
    def is_anchor(self) -> bool:
        return self.ref_type in (RefType.IA_CONCLUSION, RefType.CA_CONCLUSION)


@dataclass(frozen=True)
class Node:
    """A concept slot.  Either the shared central concept X (``central=True``,
    resolving to the annotation-level central span) or a text span chosen
    from one of the two speeches."""

    id: str
    span: Span | None = None
    central: bool = False
    polarity: Polarity = Polarity.NONE
    negated: bool = False

    def __post_init__(self) -> None:
        if self.central and self.span is not None:
            raise ValueError(f"node {self.id!r}: central nodes carry no own span")
        if not self.central and self.span is None:
            raise ValueError(f"node {self.id!r}: non-central nodes require a span")


@dataclass(frozen=True)
class RelationInstance:
    """A typed, possibly higher-order edge.  Argument order is semantic
    (e.g. antecedent/consequent for causal relations).  Scheme-level
    constraints (arity, argument kinds, regions) are reported by the
    validator, not enforced here, so that draft states remain representable."""

    id: str
    kind: RelationKind
    args: tuple[Ref, ...]
    region: Region
    negated: bool = False
    mitigated: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))

    @property
    def is_causal(self) -> bool:
        return self.kind in CAUSAL_KINDS


@dataclass(frozen=True)
class Annotation:
    """One annotator's logic pattern for one debate, or an explicit
    Not-Applicable mark.

    ``extra`` preserves unknown optional fields from newer file formats
    opaquely across load/save round trips; it takes no part in the scheme.
    """

    debate_id: str
    annotator_id: str
    status: Status
    base_pattern: BasePattern | None = None
    central_concept: Span | None = None
    nodes: tuple[Node, ...] = ()
    relations: tuple[RelationInstance, ...] = ()
    text_form: str | None = None
    extra: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.status is Status.NOT_APPLICABLE:
            if self.nodes or self.relations:
                raise ValueError("not-applicable annotations carry no nodes or relations")
            if self.base_pattern is not None or self.central_concept is not None:
                raise ValueError("not-applicable annotations carry no base pattern or central concept")
        seen: set[str] = set()
        for node in self.nodes:
            if node.id in seen:
                raise ValueError(f"duplicate node id {node.id!r}")
            seen.add(node.id)
        seen.clear()
        for rel in self.relations:
            if rel.id in seen:
                raise ValueError(f"duplicate relation id {rel.id!r}")
            seen.add(rel.id)

    @property
    def is_annotated(self) -> bool:
        return self.status is Status.ANNOTATED

    def node_map(self) -> dict[str, Node]:
        return {n.id: n for n in self.nodes}

    def relation_map(self) -> dict[str, RelationInstance]:
        return {r.id: r for r in self.relations}

    def relations_in(self, region: Region) -> tuple[RelationInstance, ...]:
        return tuple(r for r in self.relations if r.region is region)

    def node_span(self, node: Node) -> Span | None:
        """The span a node resolves to (central nodes use the annotation's
        central concept)."""
        return self.central_concept if node.central else node.span


@dataclass(frozen=True)
class ComposedCausal:
    """Result of joining a causal chain: derived kind plus the endpoint
    references (first antecedent, last consequent)."""

    kind: RelationKind
    antecedent: Ref
    consequent: Ref


def resolve_span(debate: Debate, span: Span) -> str:
    """Return the debate substring a span points at.

    Raises SpanOutOfBounds when offsets fall outside the referenced speech
    and SpanTextMismatch when the stored text no longer equals the
    substring, which signals drift between corpus and annotation.
    """
    text = debate.text(span.source)
    if span.end > len(text):
        raise SpanOutOfBounds(
            f"span [{span.start}, {span.end}) exceeds {span.source.value} text "
            f"of debate {debate.id!r} (length {len(text)})"
        )
    actual = text[span.start : span.end]
    if actual != span.text:
        raise SpanTextMismatch(
            f"span [{span.start}, {span.end}) of debate {debate.id!r} reads "
            f"{actual!r}, annotation stored {span.text!r}"
        )
    return actual


def new_annotation(
    debate: Debate,
    annotator: str,
    base_pattern: BasePattern,
    central: Span,
) -> Annotation:
    """Start an annotation: pick the base pattern and fill the X slot.

    The two conclusion anchors ("X is negative" / "X is not negative" for
    pattern 1, the positive duals for pattern 2) are implied by the base
    pattern and never stored as user nodes.
    """
    resolve_span(debate, central)
    return Annotation(
        debate_id=debate.id,
        annotator_id=annotator,
        status=Status.ANNOTATED,
        base_pattern=base_pattern,
        central_concept=central,
    )


def compose_function(chain: Sequence[RelationInstance]) -> ComposedCausal:
    """Join two or more causal relations into one derived causal statement.

    The consequent of each link must be the antecedent node of the next.
    The derived kind is the sign product: suppress counts as negative, so
    an odd number of suppress links yields suppress, an even number yields
    promote.  Endpoints are the first antecedent and the last consequent.
    """
    if len(chain) < 2:
        raise ValueError("function composition requires at least two relations")
    for rel in chain:
        if not rel.is_causal:
            raise NonCausalArgument(
                f"relation {rel.id!r} has kind {rel.kind.value}; only promote/suppress compose"
            )
        if len(rel.args) != 2:
            raise NonCausalArgument(f"relation {rel.id!r} is not a binary causal relation")
    for prev, nxt in zip(chain, chain[1:]):
        if prev.args[1] != nxt.args[0]:
            raise ChainBroken(
                f"consequent of {prev.id!r} does not connect to antecedent of {nxt.id!r}"
            )
    suppress_count = sum(1 for rel in chain if rel.kind is RelationKind.SUPPRESS)
    kind = RelationKind.SUPPRESS if suppress_count % 2 else RelationKind.PROMOTE
    return ComposedCausal(kind=kind, antecedent=chain[0].args[0], consequent=chain[-1].args[1])


def node_regions(annotation: Annotation) -> dict[str, frozenset[Region]]:
    """Region membership of each node, derived from the premise relations
    that reference it directly.  A node shared by IA and CA relations
    belongs to both markables."""
    regions: dict[str, set[Region]] = {n.id: set() for n in annotation.nodes}
    for rel in annotation.relations:
        if rel.region is Region.ATTACK_PATTERN:
            continue
        for ref in rel.args:
            if ref.ref_type is RefType.NODE and ref.ref_id in regions:
                regions[ref.ref_id].add(rel.region)
    return {node_id: frozenset(found) for node_id, found in regions.items()}


def find_reference_cycle(annotation: Annotation) -> list[str] | None:
    """Return relation ids forming a reference cycle, or None when the
    relation graph is a DAG (Kahn's algorithm; deterministic order)."""
    rel_ids = [r.id for r in annotation.relations]
    edges: dict[str, list[str]] = {rid: [] for rid in rel_ids}
    indegree: dict[str, int] = {rid: 0 for rid in rel_ids}
    for rel in annotation.relations:
        for ref in rel.args:
            if ref.ref_type is RefType.RELATION and ref.ref_id in edges:
                edges[rel.id].append(ref.ref_id)
                indegree[ref.ref_id] += 1
    queue = sorted(rid for rid, deg in indegree.items() if deg == 0)
    remaining = dict(indegree)
    seen = 0
    while queue:
        current = queue.pop(0)
        seen += 1
        for target in edges[current]:
            remaining[target] -= 1
            if remaining[target] == 0:
                queue.append(target)
        queue.sort()
    if seen == len(rel_ids):
        return None
    return sorted(rid for rid, deg in remaining.items() if deg > 0)


def referenced_ids(relations: Iterable[RelationInstance]) -> set[str]:
    """Ids of relations referenced as arguments by any of the given relations."""
    out: set[str] = set()
    for rel in relations:
        for ref in rel.args:
            if ref.ref_type is RefType.RELATION and ref.ref_id is not None:
                out.add(ref.ref_id)
    return out

from __future__ import annotations

import itertools
import random

import pytest

from lpattack.model import (
    Annotation,
    BasePattern,
    ChainBroken,
    Debate,
    Node,
    NonCausalArgument,
    Ref,
    RefType,
    Region,
    RelationInstance,
    RelationKind,
    Source,
    Span,
    SpanOutOfBounds,
    SpanTextMismatch,
    Status,
    compose_function,
    find_reference_cycle,
    new_annotation,
    node_regions,
    resolve_span,
)
from lpattack.validation import validate

from conftest import span_in
from genutil import random_debate, random_valid_annotation


def make_debate() -> Debate:
    return Debate(
        id="hw-01",
        topic="Homework should be abolished",
        ia_text="Homework should be abolished because homework suppresses free time for students.",
        ca_text="Homework should not be abolished because free time promotes unproductive activities.",
    )


class TestSpanResolution:
    def test_resolves_identity(self):
        debate = make_debate()
        span = span_in(debate, Source.IA, "free time")
        assert resolve_span(debate, span) == "free time"

    def test_out_of_bounds(self):
        debate = make_debate()
        span = Span(Source.IA, 0, len(debate.ia_text) + 10, debate.ia_text + "x" * 10)
        with pytest.raises(SpanOutOfBounds):
            resolve_span(debate, span)

    def test_degenerate_span_rejected_at_construction(self):
        with pytest.raises(SpanOutOfBounds):
            Span(Source.IA, 5, 5, "")
        with pytest.raises(SpanOutOfBounds):
            Span(Source.IA, 7, 3, "oops")

    def test_stale_text_is_mismatch(self):
        # simulate corpus drift: debate text edited after annotation
        debate = make_debate()
        span = span_in(debate, Source.IA, "homework suppresses")
        edited = Debate(
            id=debate.id,
            topic=debate.topic,
            ia_text=debate.ia_text.replace("suppresses", "restricts "),
            ca_text=debate.ca_text,
        )
        with pytest.raises(SpanTextMismatch):
            resolve_span(edited, span)

    def test_ca_source_reads_ca_text(self):
        debate = make_debate()
        span = span_in(debate, Source.CA, "unproductive activities")
        assert resolve_span(debate, span) == "unproductive activities"


class TestNewAnnotation:
    def test_creates_empty_annotated(self):
        debate = make_debate()
        central = span_in(debate, Source.IA, "homework")
        annotation = new_annotation(debate, "ann_a", BasePattern.PATTERN1, central)
        assert annotation.status is Status.ANNOTATED
        assert annotation.base_pattern is BasePattern.PATTERN1
        assert annotation.central_concept == central
        assert annotation.nodes == ()
        assert annotation.relations == ()

    def test_rejects_unresolvable_central(self):
        debate = make_debate()
        bad = Span(Source.IA, 0, 8, "HOMEWORK")
        with pytest.raises(SpanTextMismatch):
            new_annotation(debate, "ann_a", BasePattern.PATTERN1, bad)


def causal(rel_id, kind, a, b):
    return RelationInstance(
        id=rel_id, kind=kind, args=(Ref.node(a), Ref.node(b)), region=Region.CA_PATTERN
    )


class TestComposeFunction:
    def test_table_example_suppress_then_promote(self):
        # homework suppress free time + free time promote unproductive
        # activities == homework suppress unproductive activities
        chain = [
            causal("c1", RelationKind.SUPPRESS, "homework", "free_time"),
            causal("c2", RelationKind.PROMOTE, "free_time", "unproductive"),
        ]
        derived = compose_function(chain)
        assert derived.kind is RelationKind.SUPPRESS
        assert derived.antecedent == Ref.node("homework")
        assert derived.consequent == Ref.node("unproductive")

    def test_all_two_step_sign_combinations(self):
        # truth-table oracle: suppress is -1, promote +1, kind is the product
        sign = {RelationKind.PROMOTE: 1, RelationKind.SUPPRESS: -1}
        for k1, k2 in itertools.product(sign, repeat=2):
            chain = [causal("c1", k1, "a", "b"), causal("c2", k2, "b", "c")]
            expected = RelationKind.PROMOTE if sign[k1] * sign[k2] > 0 else RelationKind.SUPPRESS
            assert compose_function(chain).kind is expected, (k1, k2)

    def test_equals_left_fold_up_to_length_four(self):
        # associativity: composing n links equals folding pairwise
        sign = {RelationKind.PROMOTE: 1, RelationKind.SUPPRESS: -1}
        for n in (2, 3, 4):
            for kinds in itertools.product(sign, repeat=n):
                nodes = [f"v{i}" for i in range(n + 1)]
                chain = [
                    causal(f"c{i}", kind, nodes[i], nodes[i + 1])
                    for i, kind in enumerate(kinds)
                ]
                derived = compose_function(chain)
                folded_sign = 1
                for kind in kinds:
                    folded_sign *= sign[kind]
                expected = RelationKind.PROMOTE if folded_sign > 0 else RelationKind.SUPPRESS
                assert derived.kind is expected
                assert derived.antecedent == Ref.node(nodes[0])
                assert derived.consequent == Ref.node(nodes[-1])

    def test_broken_chain(self):
        chain = [
            causal("c1", RelationKind.PROMOTE, "a", "b"),
            causal("c2", RelationKind.PROMOTE, "z", "c"),
        ]
        with pytest.raises(ChainBroken):
            compose_function(chain)

    def test_non_causal_argument(self):
        mi = RelationInstance(
            id="m1",
            kind=RelationKind.MORE_IMPORTANT,
            args=(Ref.node("a"), Ref.node("b")),
            region=Region.CA_PATTERN,
        )
        with pytest.raises(NonCausalArgument):
            compose_function([causal("c1", RelationKind.PROMOTE, "a", "b"), mi])

    def test_too_short(self):
        with pytest.raises(ValueError):
            compose_function([causal("c1", RelationKind.PROMOTE, "a", "b")])


class TestModelInvariants:
    def test_na_annotation_must_be_empty(self):
        with pytest.raises(ValueError):
            Annotation(
                debate_id="d",
                annotator_id="a",
                status=Status.NOT_APPLICABLE,
                nodes=(Node(id="n", span=Span(Source.IA, 0, 4, "Home")),),
            )

    def test_central_node_carries_no_span(self):
        with pytest.raises(ValueError):
            Node(id="x", central=True, span=Span(Source.IA, 0, 4, "Home"))
        with pytest.raises(ValueError):
            Node(id="n")

    def test_duplicate_ids_rejected(self):
        debate = make_debate()
        span = span_in(debate, Source.IA, "homework")
        with pytest.raises(ValueError):
            Annotation(
                debate_id="d",
                annotator_id="a",
                status=Status.ANNOTATED,
                nodes=(Node(id="n", span=span), Node(id="n", span=span)),
            )

    def test_anchor_refs_carry_no_id(self):
        with pytest.raises(ValueError):
            Ref(RefType.IA_CONCLUSION, "x")
        with pytest.raises(ValueError):
            Ref(RefType.NODE, None)

    def test_node_regions_shared_node(self, dp_debate, reference_annotation):
        regions = node_regions(reference_annotation)
        assert regions["x"] == frozenset({Region.IA_PATTERN, Region.CA_PATTERN})
        assert regions["rehab_ia"] == frozenset({Region.IA_PATTERN})
        assert regions["rehab_ca"] == frozenset({Region.CA_PATTERN})

    def test_cycle_detection(self):
        rels = (
            RelationInstance(
                id="r1",
                kind=RelationKind.MORE_IMPORTANT,
                args=(Ref.relation("r2"), Ref.relation("r2")),
                region=Region.CA_PATTERN,
            ),
            RelationInstance(
                id="r2",
                kind=RelationKind.MORE_IMPORTANT,
                args=(Ref.relation("r1"), Ref.relation("r1")),
                region=Region.CA_PATTERN,
            ),
        )
        annotation = Annotation(
            debate_id="d", annotator_id="a", status=Status.ANNOTATED, relations=rels
        )
        assert find_reference_cycle(annotation) == ["r1", "r2"]

    def test_generated_spans_round_trip(self):
        # every stored span resolves against its debate without error
        rng = random.Random(7)
        for idx in range(25):
            debate = random_debate(rng, idx)
            annotation = random_valid_annotation(rng, debate)
            if annotation.central_concept is not None:
                resolve_span(debate, annotation.central_concept)
            for node in annotation.nodes:
                if node.span is not None:
                    resolve_span(debate, node.span)

    def test_generator_produces_valid_annotations(self):
        rng = random.Random(11)
        for idx in range(50):
            debate = random_debate(rng, idx)
            annotation = random_valid_annotation(rng, debate)
            report = validate(annotation, debate)
            assert report.is_valid, (idx, report.errors)

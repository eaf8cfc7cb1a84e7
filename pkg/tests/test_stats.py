from __future__ import annotations

import random
from dataclasses import replace

import pytest

from lpattack.model import (
    Annotation,
    BasePattern,
    Node,
    Polarity,
    Ref,
    Region,
    RelationInstance,
    RelationKind,
    Source,
    Status,
)
from lpattack.stats import (
    EmptyCorpusError,
    build_stats_report,
    coverage,
    motif_histogram,
    relation_distribution,
)

from conftest import span_in
from genutil import random_debate, random_valid_annotation


def na(debate_id="d", annotator="a"):
    return Annotation(debate_id=debate_id, annotator_id=annotator, status=Status.NOT_APPLICABLE)


class TestCoverage:
    def test_45_of_50(self):
        corpus = [na(f"d{i}") for i in range(5)]
        rng = random.Random(71)
        for i in range(45):
            debate = random_debate(rng, i)
            corpus.append(random_valid_annotation(rng, debate))
        assert coverage(corpus) == pytest.approx(0.90, abs=1e-12)

    def test_all_annotated(self, dp_debate, reference_annotation):
        assert coverage([reference_annotation]) == 1.0

    def test_all_na(self):
        assert coverage([na(), na("d2")]) == 0.0

    def test_empty_corpus_rejected(self):
        with pytest.raises(EmptyCorpusError):
            coverage([])


class TestDistribution:
    def test_reference_annotation_counts(self, reference_annotation):
        counts = relation_distribution([reference_annotation])
        expected_nonzero = {
            "suppress": 1,
            "more_important": 1,
            "rationale_condition": 1,
            "acknowledgement": 1,
            "nullify": 1,
            "good": 2,
        }
        for key, value in expected_nonzero.items():
            assert counts[key] == value, key
        for key, value in counts.items():
            if key not in expected_nonzero:
                assert value == 0, key

    def test_empty_corpus_all_zeros(self):
        counts = relation_distribution([])
        assert set(counts) == {k.value for k in RelationKind} | {"negation", "mitigation", "good", "bad"}
        assert all(v == 0 for v in counts.values())

    def test_linearity_under_duplication(self, reference_annotation):
        once = relation_distribution([reference_annotation])
        twice = relation_distribution([reference_annotation, reference_annotation])
        assert twice == {k: 2 * v for k, v in once.items()}

    def test_additivity_over_concatenation(self):
        rng = random.Random(73)
        part_a = [
            random_valid_annotation(rng, random_debate(rng, i), "a") for i in range(10)
        ]
        part_b = [
            random_valid_annotation(rng, random_debate(rng, 100 + i), "b") for i in range(10)
        ]
        combined = relation_distribution(part_a + part_b)
        left = relation_distribution(part_a)
        right = relation_distribution(part_b)
        assert combined == {k: left[k] + right[k] for k in left}

    def test_na_contributes_zero(self, reference_annotation):
        with_na = relation_distribution([reference_annotation, na()])
        without = relation_distribution([reference_annotation])
        assert with_na == without

    def test_negation_counts_nodes_and_relations(self, reference_annotation):
        nodes = tuple(
            replace(n, negated=True) if n.id == "rationale" else n
            for n in reference_annotation.nodes
        )
        rels = tuple(
            replace(r, negated=True) if r.id == "r_mi" else r
            for r in reference_annotation.relations
        )
        mutated = replace(reference_annotation, nodes=nodes, relations=rels)
        assert relation_distribution([mutated])["negation"] == 2


def limit_motif_annotation(dp_debate):
    """Mitigated CA causal restated from the IA, limited by the attack."""
    x = span_in(dp_debate, Source.IA, "death penalty")
    rehab = span_in(dp_debate, Source.IA, "chance of rehabilitation of the criminals")
    nodes = (
        Node(id="x", central=True),
        Node(id="loss_ia", span=rehab, polarity=Polarity.GOOD),
        Node(id="loss_ca", span=rehab),
    )
    relations = (
        RelationInstance(
            id="ia_c",
            kind=RelationKind.SUPPRESS,
            args=(Ref.node("x"), Ref.node("loss_ia")),
            region=Region.IA_PATTERN,
        ),
        RelationInstance(
            id="ca_c",
            kind=RelationKind.SUPPRESS,
            args=(Ref.node("x"), Ref.node("loss_ca")),
            region=Region.CA_PATTERN,
            mitigated=True,
        ),
        RelationInstance(
            id="att",
            kind=RelationKind.LIMIT,
            args=(Ref.relation("ca_c"), Ref.relation("ia_c")),
            region=Region.ATTACK_PATTERN,
        ),
    )
    return Annotation(
        debate_id=dp_debate.id,
        annotator_id="a",
        status=Status.ANNOTATED,
        base_pattern=BasePattern.PATTERN1,
        central_concept=x,
        nodes=nodes,
        relations=relations,
    )


class TestMotifs:
    def test_reference_annotation_is_value_judgement(self, reference_annotation):
        counts = motif_histogram([reference_annotation])
        assert counts["VALUE_JUDGE_DENY_CONCLUSION"] == 1
        assert counts["VALUE_JUDGE_OVER_RELATIONS"] == 0
        assert counts["NEGATE_PREMISE"] == 0
        assert counts["MITIGATE_LIMIT"] == 0
        assert counts["CONTRADICT_DENY"] == 0

    def test_limit_structure(self, dp_debate):
        counts = motif_histogram([limit_motif_annotation(dp_debate)])
        assert counts["MITIGATE_LIMIT"] == 1
        assert counts["VALUE_JUDGE_DENY_CONCLUSION"] == 0

    def test_negate_premise_counts_canonically(self, dp_debate):
        # CA states "no X promote benefit" (canonically: X suppress benefit,
        # relation-negated) and nullifies the IA causal of the same kind
        x = span_in(dp_debate, Source.IA, "death penalty")
        rehab = span_in(dp_debate, Source.IA, "chance of rehabilitation of the criminals")
        nodes = (
            Node(id="x", central=True),
            # the CA restates the concept negated: its own central reference
            Node(id="x_ca", central=True, negated=True),
            Node(id="ben_ia", span=rehab, polarity=Polarity.GOOD),
            Node(id="ben_ca", span=rehab),
        )
        relations = (
            RelationInstance(
                id="ia_c",
                kind=RelationKind.SUPPRESS,
                args=(Ref.node("x"), Ref.node("ben_ia")),
                region=Region.IA_PATTERN,
            ),
            RelationInstance(
                id="ca_c",
                kind=RelationKind.PROMOTE,
                args=(Ref.node("x_ca"), Ref.node("ben_ca")),
                region=Region.CA_PATTERN,
                negated=True,
            ),
            RelationInstance(
                id="att",
                kind=RelationKind.NULLIFY,
                args=(Ref.relation("ca_c"), Ref.relation("ia_c")),
                region=Region.ATTACK_PATTERN,
            ),
        )
        annotation = Annotation(
            debate_id=dp_debate.id,
            annotator_id="a",
            status=Status.ANNOTATED,
            base_pattern=BasePattern.PATTERN1,
            central_concept=x,
            nodes=nodes,
            relations=relations,
        )
        counts = motif_histogram([annotation])
        assert counts["NEGATE_PREMISE"] == 1

    def test_bare_nullify_without_ca_negation_is_no_motif(self, dp_debate):
        annotation = limit_motif_annotation(dp_debate)
        relations = tuple(
            replace(r, kind=RelationKind.NULLIFY) if r.id == "att" else
            replace(r, mitigated=False) if r.id == "ca_c" else r
            for r in annotation.relations
        )
        annotation = replace(annotation, relations=relations)
        counts = motif_histogram([annotation])
        assert all(v == 0 for v in counts.values())

    def test_value_judgement_over_relations_subcase(self, dp_debate):
        x = span_in(dp_debate, Source.IA, "death penalty")
        rehab = span_in(dp_debate, Source.IA, "chance of rehabilitation of the criminals")
        protect = span_in(dp_debate, Source.IA, "society must protect")
        nodes = (
            Node(id="x", central=True),
            Node(id="ben_ia", span=rehab, polarity=Polarity.GOOD),
            Node(id="keep", span=protect),
            Node(id="lose", span=rehab),
        )
        relations = (
            RelationInstance(
                id="ia_c",
                kind=RelationKind.SUPPRESS,
                args=(Ref.node("x"), Ref.node("ben_ia")),
                region=Region.IA_PATTERN,
            ),
            RelationInstance(
                id="c1",
                kind=RelationKind.PROMOTE,
                args=(Ref.node("x"), Ref.node("keep")),
                region=Region.CA_PATTERN,
            ),
            RelationInstance(
                id="c2",
                kind=RelationKind.SUPPRESS,
                args=(Ref.node("x"), Ref.node("lose")),
                region=Region.CA_PATTERN,
            ),
            RelationInstance(
                id="mi",
                kind=RelationKind.MORE_IMPORTANT,
                args=(Ref.relation("c1"), Ref.relation("c2")),
                region=Region.CA_PATTERN,
            ),
            RelationInstance(
                id="nul",
                kind=RelationKind.NULLIFY,
                args=(Ref.relation("mi"), Ref.ia_conclusion()),
                region=Region.ATTACK_PATTERN,
            ),
        )
        annotation = Annotation(
            debate_id=dp_debate.id,
            annotator_id="a",
            status=Status.ANNOTATED,
            base_pattern=BasePattern.PATTERN1,
            central_concept=x,
            nodes=nodes,
            relations=relations,
        )
        counts = motif_histogram([annotation])
        assert counts["VALUE_JUDGE_DENY_CONCLUSION"] == 1
        assert counts["VALUE_JUDGE_OVER_RELATIONS"] == 1

    def test_contradict_deny(self, dp_debate):
        annotation = limit_motif_annotation(dp_debate)
        extra = RelationInstance(
            id="con",
            kind=RelationKind.CONTRADICTION,
            args=(Ref.relation("ca_c"), Ref.relation("ia_c")),
            region=Region.CA_PATTERN,
        )
        relations = tuple(
            replace(r, kind=RelationKind.NULLIFY, args=(r.args[0], Ref.ia_conclusion()))
            if r.id == "att"
            else r
            for r in annotation.relations
        ) + (extra,)
        annotation = replace(annotation, relations=relations)
        counts = motif_histogram([annotation])
        assert counts["CONTRADICT_DENY"] == 1

    def test_na_contributes_no_motifs(self):
        assert all(v == 0 for v in motif_histogram([na()]).values())


class TestReportBundle:
    def test_report_schema(self, reference_annotation):
        import jsonschema

        from lpattack.corpus import load_schema

        report = build_stats_report([reference_annotation, na("d2")])
        payload = report.to_json_dict()
        jsonschema.validate(payload, load_schema("report-stats"))
        assert payload["coverage"] == 0.5
        assert payload["n_annotations"] == 2

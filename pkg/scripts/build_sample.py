#!/usr/bin/env python3
"""Regenerate the sample corpus under sample/ (canonical bytes).

Three debates, two annotators: ann_a and ann_b agree on the death-penalty
debate, represent the homework debate with different structures, and
ann_b marks the zoo debate as not applicable.
"""

from __future__ import annotations

from pathlib import Path

from lpattack.model import (
    Annotation,
    BasePattern,
    Debate,
    Node,
    Polarity,
    Ref,
    Region,
    RelationInstance,
    RelationKind,
    Source,
    Span,
    Status,
)
from lpattack.corpus import save_annotations, save_debates
from lpattack.textform import render_text_form
from lpattack.validation import validate

ROOT = Path(__file__).resolve().parent.parent
SAMPLE = ROOT / "sample"

DEBATES = [
    Debate(
        id="dp-01",
        topic="Death penalty should be abolished",
        ia_text=(
            "Death penalty should be abolished. We believe this because death "
            "penalty deprives the chance of rehabilitation of the criminals, and "
            "that chance is something society must protect."
        ),
        ca_text=(
            "Death penalty should not be abolished. Even if death penalty deprives "
            "the chance of rehabilitation of the criminals, the death penalty "
            "matters more, because while executing prisoners is completely "
            "effective in ensuring that those criminals never commit a crime "
            "again, life imprisonment is not."
        ),
    ),
    Debate(
        id="hw-01",
        topic="Homework should be abolished",
        ia_text=(
            "Homework should be abolished. If homework were gone we could keep "
            "our free time, and free time lets us do what we truly want."
        ),
        ca_text=(
            "Homework should not be abolished. Homework promotes learning the "
            "importance of scheduling, and that matters more than free time, "
            "because the way to succeed is by making schedule."
        ),
    ),
    Debate(
        id="zoo-01",
        topic="Zoos should be abolished",
        ia_text=(
            "Zoos should be abolished. A zoo suppresses animal freedom, and "
            "animal freedom is precious."
        ),
        ca_text=(
            "Zoos should not be abolished. A just society can fund sanctuaries, "
            "and only well-run zoos teach children to care."
        ),
    ),
]


def _span(debate: Debate, source: Source, needle: str) -> Span:
    text = debate.text(source)
    start = text.index(needle)
    return Span(source=source, start=start, end=start + len(needle), text=needle)


def death_penalty_annotation(debate: Debate, annotator: str) -> Annotation:
    x = _span(debate, Source.IA, "death penalty")
    rehab = _span(debate, Source.IA, "chance of rehabilitation of the criminals")
    rationale = _span(
        debate,
        Source.CA,
        "while executing prisoners is completely effective in ensuring that "
        "those criminals never commit a crime again",
    )
    nodes = (
        Node(id="x", central=True),
        Node(id="rehab_ia", span=rehab, polarity=Polarity.GOOD),
        Node(id="rehab_ca", span=rehab, polarity=Polarity.GOOD),
        Node(id="rationale", span=rationale),
    )
    relations = (
        RelationInstance(
            id="sup",
            kind=RelationKind.SUPPRESS,
            args=(Ref.node("x"), Ref.node("rehab_ia")),
            region=Region.IA_PATTERN,
        ),
        RelationInstance(
            id="mi",
            kind=RelationKind.MORE_IMPORTANT,
            args=(Ref.node("x"), Ref.node("rehab_ca")),
            region=Region.CA_PATTERN,
        ),
        RelationInstance(
            id="rc",
            kind=RelationKind.RATIONALE_CONDITION,
            args=(Ref.relation("mi"), Ref.node("rationale")),
            region=Region.CA_PATTERN,
        ),
        RelationInstance(
            id="ack",
            kind=RelationKind.ACKNOWLEDGEMENT,
            args=(Ref.relation("mi"), Ref.relation("sup")),
            region=Region.ATTACK_PATTERN,
        ),
        RelationInstance(
            id="nul",
            kind=RelationKind.NULLIFY,
            args=(Ref.relation("mi"), Ref.ia_conclusion()),
            region=Region.ATTACK_PATTERN,
        ),
    )
    return Annotation(
        debate_id=debate.id,
        annotator_id=annotator,
        status=Status.ANNOTATED,
        base_pattern=BasePattern.PATTERN1,
        central_concept=x,
        nodes=nodes,
        relations=relations,
    )


def homework_concepts_annotation(debate: Debate, annotator: str) -> Annotation:
    """Value judgement over two concepts, with a rationale."""
    x = _span(debate, Source.IA, "homework")
    free_time = _span(debate, Source.IA, "free time")
    scheduling = _span(debate, Source.CA, "learning the importance of scheduling")
    rationale = _span(debate, Source.CA, "the way to succeed is by making schedule")
    nodes = (
        Node(id="x", central=True),
        Node(id="free_ia", span=free_time, polarity=Polarity.GOOD),
        Node(id="free_ca", span=free_time),
        Node(id="sched", span=scheduling, polarity=Polarity.GOOD),
        Node(id="why", span=rationale),
    )
    relations = (
        RelationInstance(
            id="sup",
            kind=RelationKind.SUPPRESS,
            args=(Ref.node("x"), Ref.node("free_ia")),
            region=Region.IA_PATTERN,
        ),
        RelationInstance(
            id="mi",
            kind=RelationKind.MORE_IMPORTANT,
            args=(Ref.node("sched"), Ref.node("free_ca")),
            region=Region.CA_PATTERN,
        ),
        RelationInstance(
            id="rc",
            kind=RelationKind.RATIONALE_CONDITION,
            args=(Ref.relation("mi"), Ref.node("why")),
            region=Region.CA_PATTERN,
        ),
        RelationInstance(
            id="nul",
            kind=RelationKind.NULLIFY,
            args=(Ref.relation("mi"), Ref.ia_conclusion()),
            region=Region.ATTACK_PATTERN,
        ),
    )
    return Annotation(
        debate_id=debate.id,
        annotator_id=annotator,
        status=Status.ANNOTATED,
        base_pattern=BasePattern.PATTERN1,
        central_concept=x,
        nodes=nodes,
        relations=relations,
    )


def homework_relations_annotation(debate: Debate, annotator: str) -> Annotation:
    """Same interpretation, different structure: value judgement over two
    causal relations."""
    x = _span(debate, Source.IA, "homework")
    free_time = _span(debate, Source.IA, "free time")
    scheduling = _span(debate, Source.CA, "learning the importance of scheduling")
    nodes = (
        Node(id="x", central=True),
        Node(id="free_ia", span=free_time, polarity=Polarity.GOOD),
        Node(id="free_ca", span=free_time),
        Node(id="sched", span=scheduling),
    )
    relations = (
        RelationInstance(
            id="sup",
            kind=RelationKind.SUPPRESS,
            args=(Ref.node("x"), Ref.node("free_ia")),
            region=Region.IA_PATTERN,
        ),
        RelationInstance(
            id="c1",
            kind=RelationKind.PROMOTE,
            args=(Ref.node("x"), Ref.node("sched")),
            region=Region.CA_PATTERN,
        ),
        RelationInstance(
            id="c2",
            kind=RelationKind.SUPPRESS,
            args=(Ref.node("x"), Ref.node("free_ca")),
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
    return Annotation(
        debate_id=debate.id,
        annotator_id=annotator,
        status=Status.ANNOTATED,
        base_pattern=BasePattern.PATTERN1,
        central_concept=x,
        nodes=nodes,
        relations=relations,
    )


def zoo_annotation(debate: Debate, annotator: str) -> Annotation:
    x = _span(debate, Source.IA, "zoo")
    freedom = _span(debate, Source.IA, "animal freedom")
    care = _span(debate, Source.CA, "teach children to care")
    nodes = (
        Node(id="x", central=True),
        Node(id="freedom_ia", span=freedom, polarity=Polarity.GOOD),
        Node(id="freedom_ca", span=freedom),
        Node(id="care", span=care, polarity=Polarity.GOOD),
    )
    relations = (
        RelationInstance(
            id="sup",
            kind=RelationKind.SUPPRESS,
            args=(Ref.node("x"), Ref.node("freedom_ia")),
            region=Region.IA_PATTERN,
        ),
        RelationInstance(
            id="ca_c",
            kind=RelationKind.PROMOTE,
            args=(Ref.node("x"), Ref.node("care")),
            region=Region.CA_PATTERN,
        ),
        RelationInstance(
            id="mi",
            kind=RelationKind.MORE_IMPORTANT,
            args=(Ref.node("care"), Ref.node("freedom_ca")),
            region=Region.CA_PATTERN,
        ),
        RelationInstance(
            id="nul",
            kind=RelationKind.NULLIFY,
            args=(Ref.relation("mi"), Ref.ia_conclusion()),
            region=Region.ATTACK_PATTERN,
        ),
    )
    return Annotation(
        debate_id=debate.id,
        annotator_id=annotator,
        status=Status.ANNOTATED,
        base_pattern=BasePattern.PATTERN1,
        central_concept=x,
        nodes=nodes,
        relations=relations,
    )


def main() -> None:
    SAMPLE.mkdir(exist_ok=True)
    dp, hw, zoo = DEBATES
    corpus_a = [
        death_penalty_annotation(dp, "ann_a"),
        homework_concepts_annotation(hw, "ann_a"),
        zoo_annotation(zoo, "ann_a"),
    ]
    corpus_b = [
        death_penalty_annotation(dp, "ann_b"),
        homework_relations_annotation(hw, "ann_b"),
        Annotation(debate_id=zoo.id, annotator_id="ann_b", status=Status.NOT_APPLICABLE),
    ]
    by_id = {d.id: d for d in DEBATES}
    for annotation in corpus_a + corpus_b:
        if annotation.status is Status.ANNOTATED:
            debate = by_id[annotation.debate_id]
            report = validate(annotation, debate)
            assert report.is_valid, (annotation.debate_id, report.errors)
            render_text_form(annotation, debate)
    save_debates(SAMPLE / "debates.json", DEBATES)
    save_annotations(SAMPLE / "annotations_ann_a.json", corpus_a)
    save_annotations(SAMPLE / "annotations_ann_b.json", corpus_b)
    print(f"wrote sample corpus to {SAMPLE}")


if __name__ == "__main__":
    main()

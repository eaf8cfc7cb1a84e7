from __future__ import annotations

import pytest

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

DEATH_PENALTY_IA = (
    "Death penalty should be abolished. We believe this because death penalty "
    "deprives the chance of rehabilitation of the criminals, and that chance is "
    "something society must protect."
)
DEATH_PENALTY_CA = (
    "Death penalty should not be abolished. Even if death penalty deprives the "
    "chance of rehabilitation of the criminals, the death penalty matters more, "
    "because while executing prisoners is completely effective in ensuring that "
    "those criminals never commit a crime again, life imprisonment is not."
)


def span_in(debate: Debate, source: Source, needle: str) -> Span:
    """Span for the first occurrence of ``needle`` in the chosen speech."""
    text = debate.ia_text if source is Source.IA else debate.ca_text
    start = text.index(needle)
    return Span(source=source, start=start, end=start + len(needle), text=needle)


@pytest.fixture
def dp_debate() -> Debate:
    return Debate(
        id="dp-01",
        topic="Death penalty should be abolished",
        ia_text=DEATH_PENALTY_IA,
        ca_text=DEATH_PENALTY_CA,
    )


def build_reference_annotation(debate: Debate, annotator: str = "ann_a") -> Annotation:
    """The shipped golden annotation: the IA argues the death penalty is
    negative because it suppresses the (good) chance of rehabilitation; the
    CA values the death penalty higher, giving a rationale, acknowledging
    the IA's causal logic while nullifying its conclusion."""
    x = span_in(debate, Source.IA, "death penalty")
    rehab = span_in(debate, Source.IA, "chance of rehabilitation of the criminals")
    rationale = span_in(
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
            id="r_sup",
            kind=RelationKind.SUPPRESS,
            args=(Ref.node("x"), Ref.node("rehab_ia")),
            region=Region.IA_PATTERN,
        ),
        RelationInstance(
            id="r_mi",
            kind=RelationKind.MORE_IMPORTANT,
            args=(Ref.node("x"), Ref.node("rehab_ca")),
            region=Region.CA_PATTERN,
        ),
        RelationInstance(
            id="r_rc",
            kind=RelationKind.RATIONALE_CONDITION,
            args=(Ref.relation("r_mi"), Ref.node("rationale")),
            region=Region.CA_PATTERN,
        ),
        RelationInstance(
            id="r_ack",
            kind=RelationKind.ACKNOWLEDGEMENT,
            args=(Ref.relation("r_mi"), Ref.relation("r_sup")),
            region=Region.ATTACK_PATTERN,
        ),
        RelationInstance(
            id="r_nul",
            kind=RelationKind.NULLIFY,
            args=(Ref.relation("r_mi"), Ref.ia_conclusion()),
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


@pytest.fixture
def reference_annotation(dp_debate: Debate) -> Annotation:
    return build_reference_annotation(dp_debate)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" not in getattr(report, "nodeid", ""):
                continue
            name = report.nodeid.rsplit("::", 1)[-1]
            verdict = "PASS" if outcome == "passed" else "FAIL"
            lines.append(f"{verdict}  {name}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: s.split(None, 1)[1]):
            terminalreporter.write_line(line)

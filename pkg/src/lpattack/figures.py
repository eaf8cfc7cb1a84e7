"""Matplotlib renderings of the report bundles, written to image files
alongside the delimited CLI output.  Uses the Agg backend; importing this
module never requires a display."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .agreement import AgreementReport
from .stats import ATTRIBUTE_KEYS, StatsReport
from .model import RelationKind

_DPI = 150


def save_distribution_figure(report: StatsReport, path: Path | str) -> Path:
    """Horizontal bar chart of relation and attribute occurrence counts."""
    relation_items = [(kind.value, report.distribution[kind.value]) for kind in RelationKind]
    attribute_items = [(key, report.distribution[key]) for key in ATTRIBUTE_KEYS]
    labels = [name for name, _ in relation_items + attribute_items]
    values = [count for _, count in relation_items + attribute_items]
    colors = ["#4878a8"] * len(relation_items) + ["#c28e45"] * len(attribute_items)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    positions = range(len(labels))
    ax.barh(positions, values, color=colors)
    ax.set_yticks(positions, labels)
    ax.invert_yaxis()
    ax.set_xlabel("occurrences")
    ax.set_title("Relation and attribute distribution")
    ax.grid(axis="x", alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def save_motif_figure(report: StatsReport, path: Path | str) -> Path:
    """Bar chart of the attack-motif histogram."""
    names = list(report.motifs)
    values = [report.motifs[name] for name in names]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(range(len(names)), values, color="#5d8a66")
    ax.set_xticks(range(len(names)), names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("debates")
    ax.set_title("Attack motifs")
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def save_agreement_figure(report: AgreementReport, path: Path | str) -> Path:
    """Two panels: kappa for both strategies and the span-match breakdown."""
    fig, (ax_kappa, ax_spans) = plt.subplots(1, 2, figsize=(9, 4))

    kappas = [report.kappa_per_markable, report.kappa_concatenated]
    ax_kappa.bar(range(2), kappas, color=["#4878a8", "#c28e45"])
    ax_kappa.set_xticks(range(2), ["per markable", "concatenated"])
    ax_kappa.set_ylim(-1.0, 1.0)
    ax_kappa.axhline(0.0, color="black", linewidth=0.8)
    ax_kappa.set_ylabel("Cohen's kappa")
    ax_kappa.set_title("Agreement")
    ax_kappa.grid(axis="y", alpha=0.3)

    tallies = [report.span_match_per_markable, report.span_match_concatenated]
    bottoms = [0, 0]
    for level, color in (("exact", "#5d8a66"), ("lenient", "#c2b245"), ("mismatch", "#a85648")):
        values = [getattr(t, level) for t in tallies]
        ax_spans.bar(range(2), values, bottom=bottoms, label=level, color=color)
        bottoms = [b + v for b, v in zip(bottoms, values)]
    ax_spans.set_xticks(range(2), ["per markable", "concatenated"])
    ax_spans.set_ylabel("agreed units")
    ax_spans.set_title("Span matching on agreed structures")
    ax_spans.legend(fontsize=8)
    ax_spans.grid(axis="y", alpha=0.3)

    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path

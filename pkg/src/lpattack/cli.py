"""Batch command line over the library: validate, render, agree, stats,
serve.

Exit codes: 0 success (and, for ``validate``, every annotation valid);
1 validation failure; 2 I/O or usage error.  Data goes to stdout,
diagnostics to stderr.  Tables are tab-delimited; ``--json`` switches to
the canonical JSON report forms; ``--figures DIR`` additionally renders
the report as PNG files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .agreement import AgreementConfig, AgreementError, AgreementReport, agreement_report
from .canonical import InvalidAnnotationError
from .corpus import CorpusError, canonical_json_bytes, load_annotations, load_debates
from .model import Annotation, Debate, Status
from .stats import StatsReport, build_stats_report
from .textform import RenderError, render_text_form
from .validation import validate

#: diagnostics that break canonicalization; `agree` refuses corpora with
#: these, while scheme-level findings (budgets, missing relations) only warn
_STRUCTURAL_CODES = frozenset({"E_DANGLING_REF", "E_CYCLE", "E_ARITY", "E_ARG_KIND", "E_BASE_MISSING"})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpattack",
        description="Tools for attack-logic pattern annotations of debates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="check annotations against the scheme")
    p_validate.add_argument("--debates", required=True, type=Path)
    p_validate.add_argument("--annotations", required=True, type=Path)
    p_validate.add_argument("--strict", action="store_true", help="treat warnings as errors")
    p_validate.set_defaults(func=cmd_validate)

    p_render = sub.add_parser("render", help="print text forms")
    p_render.add_argument("--debates", required=True, type=Path)
    p_render.add_argument("--annotations", required=True, type=Path)
    p_render.set_defaults(func=cmd_render)

    p_agree = sub.add_parser("agree", help="inter-annotator agreement report")
    p_agree.add_argument("--debates", required=True, type=Path)
    p_agree.add_argument("--a", required=True, type=Path, dest="corpus_a")
    p_agree.add_argument("--b", required=True, type=Path, dest="corpus_b")
    p_agree.add_argument(
        "--mode",
        choices=("per-markable", "concatenated", "both"),
        default="both",
        help="which strategy to print (the JSON report always carries both)",
    )
    p_agree.add_argument("--drop-aux-rationale", action="store_true")
    p_agree.add_argument("--lenient-threshold", type=float, default=0.5)
    p_agree.add_argument("--json", action="store_true", dest="as_json")
    p_agree.add_argument("--figures", type=Path)
    p_agree.set_defaults(func=cmd_agree)

    p_stats = sub.add_parser("stats", help="corpus statistics report")
    p_stats.add_argument("--debates", required=True, type=Path)
    p_stats.add_argument("--annotations", required=True, type=Path)
    p_stats.add_argument("--json", action="store_true", dest="as_json")
    p_stats.add_argument("--figures", type=Path)
    p_stats.set_defaults(func=cmd_stats)

    p_serve = sub.add_parser("serve", help="run the annotation HTTP service")
    p_serve.add_argument("--port", type=int, default=8040)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--corpus", type=Path, default=None, help="corpus directory (or LPATTACK_CORPUS)")
    p_serve.add_argument("--ui", type=Path, default=None, help="static directory with the editor UI")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def _load_pair(debates_path: Path, annotations_path: Path) -> tuple[dict[str, Debate], list[Annotation]]:
    debates = {d.id: d for d in load_debates(debates_path)}
    annotations = load_annotations(annotations_path, known_debate_ids=set(debates))
    return debates, annotations


def _require_debate(debates: dict[str, Debate], annotation: Annotation) -> Debate:
    debate = debates.get(annotation.debate_id)
    if debate is None:
        raise CorpusError(f"annotation references unknown debate {annotation.debate_id!r}")
    return debate


def cmd_validate(args: argparse.Namespace) -> int:
    debates, annotations = _load_pair(args.debates, args.annotations)
    failures = 0
    for annotation in annotations:
        key = f"{annotation.debate_id}/{annotation.annotator_id}"
        if annotation.status is Status.NOT_APPLICABLE:
            print(f"{key}: OK (NA)")
            continue
        report = validate(annotation, _require_debate(debates, annotation))
        bad = bool(report.errors) or (args.strict and bool(report.warnings))
        print(f"{key}: {'INVALID' if bad else 'OK'}")
        for diag in report.errors + report.warnings:
            print(f"  {diag.code}\t{diag.subject_id}\t{diag.message}")
        if bad:
            failures += 1
    if failures:
        print(f"{failures} of {len(annotations)} annotations failed validation", file=sys.stderr)
        return 1
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    debates, annotations = _load_pair(args.debates, args.annotations)
    failures = 0
    for annotation in annotations:
        key = f"{annotation.debate_id}/{annotation.annotator_id}"
        if annotation.status is Status.NOT_APPLICABLE:
            print(f"{key}: skipped (NA)", file=sys.stderr)
            continue
        try:
            text = render_text_form(annotation, _require_debate(debates, annotation))
        except RenderError as exc:
            print(f"{key}: {exc}", file=sys.stderr)
            failures += 1
            continue
        print(f"# {key}")
        print(text)
        print()
    return 1 if failures else 0


def _check_corpus_for_agreement(
    debates: dict[str, Debate], annotations: list[Annotation], which: str
) -> None:
    for annotation in annotations:
        if annotation.status is Status.NOT_APPLICABLE:
            continue
        report = validate(annotation, _require_debate(debates, annotation))
        structural = [d for d in report.errors if d.code in _STRUCTURAL_CODES]
        if structural:
            raise CorpusError(
                f"corpus {which}, debate {annotation.debate_id!r}: annotation is "
                f"structurally broken ({structural[0].code}); run `lpattack validate`"
            )
        for diag in report.errors:
            print(
                f"warning: corpus {which}, debate {annotation.debate_id}: {diag.code}",
                file=sys.stderr,
            )


def _agree_table(report: AgreementReport, mode: str) -> str:
    rows: list[tuple[str, str]] = [
        ("n_debates", str(report.n_debates)),
        ("coverage_a", f"{report.coverage_a:.4f}"),
        ("coverage_b", f"{report.coverage_b:.4f}"),
    ]
    if mode in ("per-markable", "both"):
        tally = report.span_match_per_markable
        rows += [
            ("kappa_per_markable", f"{report.kappa_per_markable:.6f}"),
            ("agreed_markables", str(len(report.agreed_markables))),
            ("span_exact_per_markable", str(tally.exact)),
            ("span_lenient_per_markable", str(tally.lenient)),
            ("span_mismatch_per_markable", str(tally.mismatch)),
        ]
    if mode in ("concatenated", "both"):
        tally = report.span_match_concatenated
        rows += [
            ("kappa_concatenated", f"{report.kappa_concatenated:.6f}"),
            ("agreed_debates", str(len(report.agreed_debates))),
            ("span_exact_concatenated", str(tally.exact)),
            ("span_lenient_concatenated", str(tally.lenient)),
            ("span_mismatch_concatenated", str(tally.mismatch)),
        ]
    rows += [
        ("drop_aux_rationale", str(report.config.drop_aux_rationale).lower()),
        ("lenient_threshold", f"{report.config.lenient_threshold:g}"),
    ]
    return "\n".join(f"{key}\t{value}" for key, value in rows)


def cmd_agree(args: argparse.Namespace) -> int:
    debates = {d.id: d for d in load_debates(args.debates)}
    corpus_a = load_annotations(args.corpus_a, known_debate_ids=set(debates))
    corpus_b = load_annotations(args.corpus_b, known_debate_ids=set(debates))
    _check_corpus_for_agreement(debates, corpus_a, "a")
    _check_corpus_for_agreement(debates, corpus_b, "b")
    config = AgreementConfig(
        drop_aux_rationale=args.drop_aux_rationale,
        lenient_threshold=args.lenient_threshold,
    )
    report = agreement_report(corpus_a, corpus_b, config)
    if args.as_json:
        sys.stdout.write(canonical_json_bytes(report.to_json_dict()).decode("utf-8"))
    else:
        print(_agree_table(report, args.mode))
    if args.figures is not None:
        from .figures import save_agreement_figure

        args.figures.mkdir(parents=True, exist_ok=True)
        written = save_agreement_figure(report, args.figures / "agreement.png")
        print(f"wrote {written}", file=sys.stderr)
    return 0


def _stats_table(report: StatsReport) -> str:
    lines = [
        "section\tkey\tvalue",
        f"summary\tn_annotations\t{report.n_annotations}",
        f"summary\tn_not_applicable\t{report.n_not_applicable}",
        f"summary\tcoverage\t{report.coverage:.4f}",
    ]
    payload = report.to_json_dict()
    for key, value in payload["relation_counts"].items():
        lines.append(f"relation\t{key}\t{value}")
    for key, value in payload["attribute_counts"].items():
        lines.append(f"attribute\t{key}\t{value}")
    for key, value in payload["motif_counts"].items():
        lines.append(f"motif\t{key}\t{value}")
    return "\n".join(lines)


def cmd_stats(args: argparse.Namespace) -> int:
    debates, annotations = _load_pair(args.debates, args.annotations)
    report = build_stats_report(annotations)
    if args.as_json:
        sys.stdout.write(canonical_json_bytes(report.to_json_dict()).decode("utf-8"))
    else:
        print(_stats_table(report))
    if args.figures is not None:
        from .figures import save_distribution_figure, save_motif_figure

        args.figures.mkdir(parents=True, exist_ok=True)
        for written in (
            save_distribution_figure(report, args.figures / "relation_distribution.png"),
            save_motif_figure(report, args.figures / "motifs.png"),
        ):
            print(f"wrote {written}", file=sys.stderr)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import serve

    serve(port=args.port, host=args.host, corpus_dir=args.corpus, ui_dir=args.ui)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, AgreementError, InvalidAnnotationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

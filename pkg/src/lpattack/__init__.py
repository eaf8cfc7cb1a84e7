"""Toolkit for the LPAttack debate attack-logic annotation scheme.

Models annotations as typed hypergraphs, validates them against the
scheme's task constraints, canonicalizes equivalent representations,
renders text forms, and computes inter-annotator agreement and corpus
statistics.  A CLI (``lpattack``) and an HTTP service expose the same
operations for batch work and for the companion editor UI.
"""

from .model import (
    Annotation,
    BasePattern,
    ComposedCausal,
    Debate,
    Node,
    Polarity,
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
    new_annotation,
    resolve_span,
)
from .validation import (
    CODES,
    Diagnostic,
    ValidationReport,
    ValidatorConfig,
    validate,
)
from .canonical import (
    InvalidAnnotationError,
    MarkableSignature,
    RULESET_VERSION,
    canonicalize,
    signature,
)
from .textform import RenderError, render_text_form
from .agreement import (
    AgreementConfig,
    AgreementError,
    AgreementReport,
    MatchLevel,
    Mode,
    agreement_report,
    cohen_kappa,
    compare_markables,
    span_match,
)
from .stats import (
    StatsReport,
    build_stats_report,
    coverage,
    motif_histogram,
    relation_distribution,
)
from .corpus import (
    CorpusError,
    SchemaViolation,
    load_annotations,
    load_debates,
    save_annotations,
    save_debates,
)

__version__ = "0.1.0"

__all__ = [
    "Annotation",
    "AgreementConfig",
    "AgreementError",
    "AgreementReport",
    "BasePattern",
    "CODES",
    "ComposedCausal",
    "CorpusError",
    "Debate",
    "Diagnostic",
    "InvalidAnnotationError",
    "MarkableSignature",
    "MatchLevel",
    "Mode",
    "Node",
    "Polarity",
    "Ref",
    "RefType",
    "Region",
    "RelationInstance",
    "RelationKind",
    "RenderError",
    "RULESET_VERSION",
    "SchemaViolation",
    "Source",
    "Span",
    "SpanOutOfBounds",
    "SpanTextMismatch",
    "StatsReport",
    "Status",
    "ValidationReport",
    "ValidatorConfig",
    "agreement_report",
    "build_stats_report",
    "canonicalize",
    "cohen_kappa",
    "compare_markables",
    "compose_function",
    "coverage",
    "load_annotations",
    "load_debates",
    "motif_histogram",
    "new_annotation",
    "relation_distribution",
    "render_text_form",
    "resolve_span",
    "save_annotations",
    "save_debates",
    "signature",
    "span_match",
    "validate",
]

/** Mirrors of the service's JSON schemas (annotations file format "1"). */

export type SpanSource = "ia" | "ca";
export type Polarity = "good" | "bad" | "none";
export type Status = "annotated" | "not_applicable";
export type BasePattern = "pattern1" | "pattern2";
export type Region = "ia_pattern" | "ca_pattern" | "attack_pattern";
export type RefType = "node" | "relation" | "ia_conclusion" | "ca_conclusion";

export type RelationKind =
  | "promote"
  | "suppress"
  | "more_important"
  | "contradiction"
  | "rationale_condition"
  | "acknowledgement"
  | "nullify"
  | "limit"
  | "function";

export const RELATION_KINDS: RelationKind[] = [
  "promote",
  "suppress",
  "more_important",
  "contradiction",
  "rationale_condition",
  "acknowledgement",
  "nullify",
  "limit",
  "function",
];

/** Relations that live in the attack lane. */
export const ATTACK_KINDS: RelationKind[] = ["acknowledgement", "nullify", "limit"];
export const CAUSAL_KINDS: RelationKind[] = ["promote", "suppress"];

export interface Span {
  source: SpanSource;
  start: number;
  end: number;
  text: string;
}

export interface NodeObj {
  id: string;
  central: boolean;
  span: Span | null;
  polarity: Polarity;
  negated: boolean;
}

export interface Ref {
  ref_type: RefType;
  ref_id: string | null;
}

export interface RelationObj {
  id: string;
  kind: RelationKind;
  args: Ref[];
  region: Region;
  negated: boolean;
  mitigated: boolean;
}

export interface Annotation {
  debate_id: string;
  annotator_id: string;
  status: Status;
  base_pattern: BasePattern | null;
  central_concept: Span | null;
  nodes: NodeObj[];
  relations: RelationObj[];
  text_form: string | null;
}

export interface Debate {
  id: string;
  topic: string;
  ia_text: string;
  ca_text: string;
}

export interface DebateListing {
  id: string;
  topic: string;
}

export interface Diagnostic {
  code: string;
  subject_id: string;
  message: string;
}

export interface ValidationReport {
  report_type: "validation";
  is_valid: boolean;
  errors: Diagnostic[];
  warnings: Diagnostic[];
}

/** Human phrasings for the stable diagnostic codes (messages stay
 * server-authored; these caption the code chips). */
export const CODE_CAPTIONS: Record<string, string> = {
  E_BASE_MISSING: "base pattern / central concept missing",
  E_SPAN_MISMATCH: "span does not match the debate text",
  E_DANGLING_REF: "reference to a deleted element",
  E_ARITY: "wrong number of arguments",
  E_ARG_KIND: "argument kind not allowed",
  E_REGION: "attack must point CA-side to IA-side",
  E_IA_NO_CAUSAL: "IA pattern needs a causal relation",
  E_IA_BUDGET: "IA pattern over budget",
  E_CA_BUDGET: "CA pattern over budget",
  E_ATTACK_MISSING: "add a nullify or limit relation",
  E_CYCLE: "relations reference each other in a cycle",
  W_SPAN_LONG: "span is long; prefer a short phrase",
  W_NO_POLARITY: "consider a good/bad mark",
};

export function refLabel(ref: Ref): string {
  if (ref.ref_type === "ia_conclusion") return "IA-conclusion";
  if (ref.ref_type === "ca_conclusion") return "CA-conclusion";
  return ref.ref_id ?? "?";
}

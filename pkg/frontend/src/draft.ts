/** Pure draft-editing core.  Every operation returns a fresh draft; the
 * draft IS the annotation JSON object, so it always serializes
 * schema-structurally even while scheme-invalid (the service reports the
 * scheme diagnostics).  DOM code stays in view/app. */

import type {
  Annotation,
  BasePattern,
  Polarity,
  Ref,
  Region,
  RelationKind,
  RelationObj,
  Span,
} from "./types.js";
import { ATTACK_KINDS, CAUSAL_KINDS } from "./types.js";

export type Draft = Annotation;

export class DraftError extends Error {}

export function newDraft(debateId: string, annotatorId: string): Draft {
  return {
    debate_id: debateId,
    annotator_id: annotatorId,
    status: "annotated",
    base_pattern: null,
    central_concept: null,
    nodes: [],
    relations: [],
    text_form: null,
  };
}

function clone(draft: Draft): Draft {
  return JSON.parse(JSON.stringify(draft)) as Draft;
}

function freshId(prefix: string, taken: Set<string>): string {
  let i = 1;
  while (taken.has(`${prefix}${i}`)) i += 1;
  return `${prefix}${i}`;
}

function requireAnnotated(draft: Draft): void {
  if (draft.status !== "annotated") {
    throw new DraftError("the draft is marked not applicable; toggle NA off first");
  }
}

export function setBasePattern(draft: Draft, basePattern: BasePattern): Draft {
  requireAnnotated(draft);
  const next = clone(draft);
  next.base_pattern = basePattern;
  return next;
}

export function setCentralConcept(draft: Draft, span: Span): Draft {
  requireAnnotated(draft);
  const next = clone(draft);
  next.central_concept = span;
  return next;
}

export function addSpanNode(draft: Draft, span: Span): [Draft, string] {
  requireAnnotated(draft);
  const next = clone(draft);
  const id = freshId("n", new Set(next.nodes.map((n) => n.id)));
  next.nodes.push({ id, central: false, span, polarity: "none", negated: false });
  return [next, id];
}

/** A reference to the shared central concept slot X. */
export function addCentralNode(draft: Draft): [Draft, string] {
  requireAnnotated(draft);
  if (draft.central_concept === null) {
    throw new DraftError("set the central concept before referencing X");
  }
  const next = clone(draft);
  const id = freshId("x", new Set(next.nodes.map((n) => n.id)));
  next.nodes.push({ id, central: true, span: null, polarity: "none", negated: false });
  return [next, id];
}

function nodeIndex(draft: Draft, nodeId: string): number {
  const index = draft.nodes.findIndex((n) => n.id === nodeId);
  if (index < 0) throw new DraftError(`unknown node ${nodeId}`);
  return index;
}

export function setNodePolarity(draft: Draft, nodeId: string, polarity: Polarity): Draft {
  const next = clone(draft);
  next.nodes[nodeIndex(next, nodeId)].polarity = polarity;
  return next;
}

export function toggleNodeNegated(draft: Draft, nodeId: string): Draft {
  const next = clone(draft);
  const node = next.nodes[nodeIndex(next, nodeId)];
  node.negated = !node.negated;
  return next;
}

function referencesTo(draft: Draft, refType: "node" | "relation", id: string): RelationObj[] {
  return draft.relations.filter((rel) =>
    rel.args.some((arg) => arg.ref_type === refType && arg.ref_id === id)
  );
}

export function removeNode(draft: Draft, nodeId: string): Draft {
  nodeIndex(draft, nodeId);
  const used = referencesTo(draft, "node", nodeId);
  if (used.length > 0) {
    throw new DraftError(
      `node ${nodeId} is used by ${used.map((r) => r.id).join(", ")}; remove those first`
    );
  }
  const next = clone(draft);
  next.nodes = next.nodes.filter((n) => n.id !== nodeId);
  return next;
}

export function addRelation(
  draft: Draft,
  kind: RelationKind,
  args: Ref[],
  region: Region
): [Draft, string] {
  requireAnnotated(draft);
  for (const arg of args) {
    if (arg.ref_type === "node" && !draft.nodes.some((n) => n.id === arg.ref_id)) {
      throw new DraftError(`unknown node ${arg.ref_id}`);
    }
    if (arg.ref_type === "relation" && !draft.relations.some((r) => r.id === arg.ref_id)) {
      throw new DraftError(`unknown relation ${arg.ref_id}`);
    }
  }
  const next = clone(draft);
  const id = freshId("r", new Set(next.relations.map((r) => r.id)));
  next.relations.push({ id, kind, args, region, negated: false, mitigated: false });
  return [next, id];
}

function relationIndex(draft: Draft, relationId: string): number {
  const index = draft.relations.findIndex((r) => r.id === relationId);
  if (index < 0) throw new DraftError(`unknown relation ${relationId}`);
  return index;
}

export function toggleRelationNegated(draft: Draft, relationId: string): Draft {
  const next = clone(draft);
  const rel = next.relations[relationIndex(next, relationId)];
  rel.negated = !rel.negated;
  return next;
}

export function toggleRelationMitigated(draft: Draft, relationId: string): Draft {
  const next = clone(draft);
  const rel = next.relations[relationIndex(next, relationId)];
  rel.mitigated = !rel.mitigated;
  return next;
}

export function removeRelation(draft: Draft, relationId: string): Draft {
  relationIndex(draft, relationId);
  const used = referencesTo(draft, "relation", relationId);
  if (used.length > 0) {
    throw new DraftError(
      `relation ${relationId} is used by ${used.map((r) => r.id).join(", ")}; remove those first`
    );
  }
  const next = clone(draft);
  next.relations = next.relations.filter((r) => r.id !== relationId);
  return next;
}

/** NA on: content is cleared (returned separately so the caller can stash
 * it for an undo); NA off: restores the given stash if any. */
export function markNotApplicable(draft: Draft): [Draft, Draft] {
  const stash = clone(draft);
  const next = clone(draft);
  next.status = "not_applicable";
  next.base_pattern = null;
  next.central_concept = null;
  next.nodes = [];
  next.relations = [];
  next.text_form = null;
  return [next, stash];
}

export function markAnnotated(draft: Draft, stash: Draft | null): Draft {
  if (stash !== null) {
    const restored = clone(stash);
    restored.status = "annotated";
    return restored;
  }
  const next = clone(draft);
  next.status = "annotated";
  return next;
}

/** Default region for a relation kind (attack relations always live in
 * the attack lane; premise relations default by their first argument). */
export function defaultRegion(draft: Draft, kind: RelationKind, args: Ref[]): Region {
  if (ATTACK_KINDS.includes(kind)) return "attack_pattern";
  const first = args[0];
  if (first && first.ref_type === "relation") {
    const target = draft.relations.find((r) => r.id === first.ref_id);
    if (target && target.region !== "attack_pattern") return target.region;
  }
  if (first && first.ref_type === "node") {
    const target = draft.nodes.find((n) => n.id === first.ref_id);
    if (target && target.span) return target.span.source === "ia" ? "ia_pattern" : "ca_pattern";
  }
  return "ca_pattern";
}

/** Mirror of the server's budget policy: relations in the region, plus
 * good/bad marks on the region's nodes, plus mitigation flags; node
 * regions derive from the premise relations referencing them. */
export function budgets(draft: Draft): { ia: number; ca: number } {
  const nodeRegions = new Map<string, Set<Region>>();
  for (const node of draft.nodes) nodeRegions.set(node.id, new Set());
  for (const rel of draft.relations) {
    if (rel.region === "attack_pattern") continue;
    for (const arg of rel.args) {
      if (arg.ref_type === "node" && arg.ref_id !== null) {
        nodeRegions.get(arg.ref_id)?.add(rel.region);
      }
    }
  }
  const count = (region: Region): number => {
    let total = 0;
    for (const rel of draft.relations) {
      if (rel.region !== region) continue;
      total += 1;
      if (rel.mitigated) total += 1;
    }
    for (const node of draft.nodes) {
      if (node.polarity !== "none" && nodeRegions.get(node.id)?.has(region)) total += 1;
    }
    return total;
  };
  return { ia: count("ia_pattern"), ca: count("ca_pattern") };
}

export const BUDGET_LIMITS = { ia: 2, ca: 3 };

/** Arity the builder should offer for each kind. */
export function arity(kind: RelationKind): { min: number; max: number } {
  return kind === "function" ? { min: 2, max: 4 } : { min: 2, max: 2 };
}

export function isCausal(kind: RelationKind): boolean {
  return CAUSAL_KINDS.includes(kind);
}

export function toAnnotation(draft: Draft): Annotation {
  return clone(draft);
}

export function fromAnnotation(annotation: Annotation): Draft {
  return JSON.parse(JSON.stringify(annotation)) as Draft;
}

/** DOM builders for the editor panels.  Pure construction from state; all
 * event handling is injected by app.ts. */

import type { Draft } from "./draft.js";
import type { Diagnostic, NodeObj, Ref, Region, RelationObj } from "./types.js";
import { CODE_CAPTIONS, refLabel } from "./types.js";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = []
): HTMLElementTagNameMap[K] {
  const element = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) element.setAttribute(key, value);
  for (const child of children) element.append(child);
  return element;
}

export function nodePreview(draft: Draft, node: NodeObj): string {
  const text = node.central ? draft.central_concept?.text ?? "X (unset)" : node.span?.text ?? "";
  const shortened = text.length > 40 ? `${text.slice(0, 37)}...` : text;
  return node.central ? `X: ${shortened}` : shortened;
}

export interface NodeHandlers {
  onPolarity(nodeId: string): void;
  onNegate(nodeId: string): void;
  onRemove(nodeId: string): void;
}

export function nodeChip(draft: Draft, node: NodeObj, handlers: NodeHandlers): HTMLElement {
  const flags: string[] = [];
  if (node.negated) flags.push("no");
  if (node.polarity !== "none") flags.push(node.polarity);
  const chip = el("div", { class: `chip node-chip${node.central ? " central" : ""}`, "data-subject-id": node.id }, [
    el("span", { class: "chip-id" }, [node.id]),
    el("span", { class: "chip-text" }, [nodePreview(draft, node)]),
    el("span", { class: "chip-flags" }, [flags.join(" ")]),
  ]);
  const controls = el("span", { class: "chip-controls" });
  const polarity = el("button", { title: "cycle good/bad/none" }, [
    node.polarity === "none" ? "±" : node.polarity === "good" ? "+" : "-",
  ]);
  polarity.addEventListener("click", () => handlers.onPolarity(node.id));
  const negate = el("button", { title: "toggle negation" }, ["¬"]);
  negate.addEventListener("click", () => handlers.onNegate(node.id));
  const remove = el("button", { title: "remove node" }, ["×"]);
  remove.addEventListener("click", () => handlers.onRemove(node.id));
  controls.append(polarity, negate, remove);
  chip.append(controls);
  return chip;
}

export interface RelationHandlers {
  onNegate(relationId: string): void;
  onMitigate(relationId: string): void;
  onRemove(relationId: string): void;
}

export function relationCard(
  rel: RelationObj,
  handlers: RelationHandlers
): HTMLElement {
  const flags: string[] = [];
  if (rel.negated) flags.push("negated");
  if (rel.mitigated) flags.push("mitigated");
  const card = el("div", { class: "card relation-card", "data-subject-id": rel.id }, [
    el("div", { class: "card-head" }, [
      el("span", { class: "chip-id" }, [rel.id]),
      el("strong", {}, [rel.kind.replace("_", " ")]),
      el("span", { class: "chip-flags" }, [flags.join(" ")]),
    ]),
    el("div", { class: "card-args" }, [rel.args.map(refLabel).join(" → ")]),
  ]);
  const controls = el("div", { class: "chip-controls" });
  const negate = el("button", { title: "toggle negation" }, ["¬"]);
  negate.addEventListener("click", () => handlers.onNegate(rel.id));
  const mitigate = el("button", { title: "toggle mitigation" }, ["~"]);
  mitigate.addEventListener("click", () => handlers.onMitigate(rel.id));
  const remove = el("button", { title: "remove relation" }, ["×"]);
  remove.addEventListener("click", () => handlers.onRemove(rel.id));
  controls.append(negate, mitigate, remove);
  card.append(controls);
  return card;
}

export function diagnosticRow(diag: Diagnostic, isError: boolean, onClick: () => void): HTMLElement {
  const row = el("li", { class: `diag ${isError ? "diag-error" : "diag-warning"}` }, [
    el("code", {}, [diag.code]),
    el("span", { class: "diag-caption" }, [CODE_CAPTIONS[diag.code] ?? ""]),
    el("span", { class: "diag-message" }, [diag.message]),
  ]);
  row.addEventListener("click", onClick);
  return row;
}

/** Lane placement: relations go by region; nodes by derived region, or by
 * their span's source while unreferenced; the central X sits in the IA
 * lane until a relation pulls it elsewhere. */
export function nodeLane(draft: Draft, node: NodeObj): Region {
  const regions = new Set<Region>();
  for (const rel of draft.relations) {
    if (rel.region === "attack_pattern") continue;
    for (const arg of rel.args) {
      if (arg.ref_type === "node" && arg.ref_id === node.id) regions.add(rel.region);
    }
  }
  if (regions.size > 0) return regions.values().next().value as Region;
  if (node.span) return node.span.source === "ia" ? "ia_pattern" : "ca_pattern";
  return "ia_pattern";
}

/** Straight connector lines from each relation card to its arguments. */
export function drawEdges(svg: SVGSVGElement, container: HTMLElement, draft: Draft): void {
  svg.replaceChildren();
  const containerBox = container.getBoundingClientRect();
  svg.setAttribute("width", String(containerBox.width));
  svg.setAttribute("height", String(containerBox.height));
  const anchor = (subjectId: string): { x: number; y: number } | null => {
    const target = container.querySelector(`[data-subject-id="${subjectId}"]`);
    if (!target) return null;
    const box = target.getBoundingClientRect();
    return {
      x: box.left - containerBox.left + box.width / 2,
      y: box.top - containerBox.top + box.height / 2,
    };
  };
  const anchorForRef = (ref: Ref): { x: number; y: number } | null => {
    if (ref.ref_type === "ia_conclusion") return anchor("ia-conclusion-anchor");
    if (ref.ref_type === "ca_conclusion") return anchor("ca-conclusion-anchor");
    return ref.ref_id ? anchor(ref.ref_id) : null;
  };
  for (const rel of draft.relations) {
    const from = anchor(rel.id);
    if (!from) continue;
    for (const arg of rel.args) {
      const to = anchorForRef(arg);
      if (!to) continue;
      const line = document.createElementNS("http://www.w3.org/2000/svg", "line");
      line.setAttribute("x1", String(from.x));
      line.setAttribute("y1", String(from.y));
      line.setAttribute("x2", String(to.x));
      line.setAttribute("y2", String(to.y));
      line.setAttribute("class", `edge edge-${rel.region}`);
      svg.append(line);
    }
  }
}

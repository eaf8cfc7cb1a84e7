/** Editor wiring: state, service round trips, DOM events.
 *
 * Every edit goes through apply(), which re-renders and schedules a
 * validate+render round trip; diagnostics anchor back to their subject
 * elements, and budget meters mirror the server's counting policy.
 * Edits are kept locally when the service is unreachable. */

import { ApiError, ServiceClient, ServiceUnreachable } from "./api.js";
import * as draft_ops from "./draft.js";
import type { Draft } from "./draft.js";
import { selectionOffsets, spanFromOffsets } from "./selection.js";
import type {
  Debate,
  Ref,
  Region,
  RelationKind,
  SpanSource,
  ValidationReport,
} from "./types.js";
import { ATTACK_KINDS, RELATION_KINDS, refLabel } from "./types.js";
import { diagnosticRow, drawEdges, el, nodeChip, nodeLane, nodePreview, relationCard } from "./view.js";

const REFRESH_DELAY_MS = 250;

class EditorApp {
  private client = new ServiceClient("");
  private debate: Debate | null = null;
  private draft: Draft | null = null;
  private naStash: Draft | null = null;
  private report: ValidationReport | null = null;
  private preview = "";
  private dirty = false;
  private refreshTimer: number | null = null;

  private $ = (id: string): HTMLElement => {
    const element = document.getElementById(id);
    if (!element) throw new Error(`missing #${id}`);
    return element;
  };

  async start(): Promise<void> {
    this.$("base-pattern").addEventListener("change", () => {
      const value = (this.$("base-pattern") as HTMLSelectElement).value;
      if (this.draft && (value === "pattern1" || value === "pattern2")) {
        this.apply(draft_ops.setBasePattern(this.draft, value));
      }
    });
    this.$("na-toggle").addEventListener("change", () => this.onToggleNa());
    this.$("save").addEventListener("click", () => void this.onSave());
    this.$("set-central").addEventListener("click", () => this.onSpanButton("central"));
    this.$("add-node").addEventListener("click", () => this.onSpanButton("node"));
    this.$("add-x").addEventListener("click", () => this.onAddCentralNode());
    this.$("relation-kind").addEventListener("change", () => this.renderBuilder());
    this.$("add-relation").addEventListener("click", () => this.onAddRelation());
    this.$("annotator").addEventListener("change", () => void this.loadCurrent());
    this.$("debate-select").addEventListener("change", () => void this.loadCurrent());
    window.addEventListener("resize", () => this.renderEdges());

    await this.loadDebateList();
    await this.loadCurrent();
  }

  private annotatorId(): string {
    return (this.$("annotator") as HTMLInputElement).value.trim() || "ann_a";
  }

  private async loadDebateList(): Promise<void> {
    try {
      const listing = await this.client.getDebates();
      const select = this.$("debate-select") as HTMLSelectElement;
      select.replaceChildren(
        ...listing.debates.map((d) => el("option", { value: d.id }, [`${d.id} — ${d.topic}`]))
      );
      this.setBanner(null);
    } catch (error) {
      this.handleServiceError(error);
    }
  }

  private async loadCurrent(): Promise<void> {
    const select = this.$("debate-select") as HTMLSelectElement;
    if (!select.value) return;
    try {
      this.debate = await this.client.getDebate(select.value);
      const existing = await this.client.listAnnotations({
        debate_id: this.debate.id,
        annotator_id: this.annotatorId(),
      });
      if (existing.annotations.length > 0) {
        this.draft = draft_ops.fromAnnotation(existing.annotations[0]);
      } else {
        this.draft = draft_ops.newDraft(this.debate.id, this.annotatorId());
        this.draft = draft_ops.setBasePattern(this.draft, "pattern1");
      }
      this.naStash = null;
      this.dirty = false;
      this.setBanner(null);
      this.renderAll();
      this.scheduleRefresh();
    } catch (error) {
      this.handleServiceError(error);
    }
  }

  /** Single entry point for edits: swap the draft, mark dirty, rerender,
   * revalidate. */
  private apply(next: Draft): void {
    this.draft = next;
    this.dirty = true;
    this.renderAll();
    this.scheduleRefresh();
  }

  private scheduleRefresh(): void {
    if (this.refreshTimer !== null) window.clearTimeout(this.refreshTimer);
    this.refreshTimer = window.setTimeout(() => void this.refresh(), REFRESH_DELAY_MS);
  }

  private async refresh(): Promise<void> {
    if (!this.draft) return;
    const annotation = draft_ops.toAnnotation(this.draft);
    try {
      if (this.draft.status === "not_applicable") {
        this.report = { report_type: "validation", is_valid: true, errors: [], warnings: [] };
        this.preview = "(not applicable)";
      } else {
        this.report = await this.client.validate(annotation);
        try {
          const rendered = await this.client.render(annotation);
          this.preview = rendered.text_form;
        } catch (error) {
          if (error instanceof ApiError) this.preview = `(no preview: ${error.message})`;
          else throw error;
        }
      }
      this.setBanner(null);
      this.renderDiagnostics();
      this.renderPreview();
    } catch (error) {
      this.handleServiceError(error);
    }
  }

  private onSpanButton(target: "central" | "node"): void {
    if (!this.debate || !this.draft) return;
    const span = this.currentSelectionSpan();
    if (!span) {
      this.flashStatus("highlight text in a debate pane first");
      return;
    }
    if (target === "central") {
      this.apply(draft_ops.setCentralConcept(this.draft, span));
    } else {
      const [next] = draft_ops.addSpanNode(this.draft, span);
      this.apply(next);
    }
  }

  private currentSelectionSpan() {
    if (!this.debate) return null;
    for (const [paneId, source, text] of [
      ["ia-pane", "ia", this.debate.ia_text],
      ["ca-pane", "ca", this.debate.ca_text],
    ] as [string, SpanSource, string][]) {
      const offsets = selectionOffsets(this.$(paneId));
      if (offsets) return spanFromOffsets(text, source, offsets.start, offsets.end);
    }
    return null;
  }

  private onAddCentralNode(): void {
    if (!this.draft) return;
    try {
      const [next] = draft_ops.addCentralNode(this.draft);
      this.apply(next);
    } catch (error) {
      this.flashStatus(String((error as Error).message));
    }
  }

  private onToggleNa(): void {
    if (!this.draft) return;
    const checked = (this.$("na-toggle") as HTMLInputElement).checked;
    if (checked && this.draft.status === "annotated") {
      const [next, stash] = draft_ops.markNotApplicable(this.draft);
      this.naStash = stash;
      this.apply(next);
    } else if (!checked && this.draft.status === "not_applicable") {
      this.apply(draft_ops.markAnnotated(this.draft, this.naStash));
      this.naStash = null;
    }
  }

  private builderArgCount(): number {
    const kind = (this.$("relation-kind") as HTMLSelectElement).value as RelationKind;
    return draft_ops.arity(kind).max;
  }

  private onAddRelation(): void {
    if (!this.draft) return;
    const kind = (this.$("relation-kind") as HTMLSelectElement).value as RelationKind;
    const args: Ref[] = [];
    for (let i = 0; i < this.builderArgCount(); i += 1) {
      const select = document.getElementById(`arg-${i}`) as HTMLSelectElement | null;
      if (!select || !select.value) continue;
      const [refType, refId] = select.value.split(":", 2);
      args.push({
        ref_type: refType as Ref["ref_type"],
        ref_id: refId === "" ? null : refId,
      });
    }
    const minimum = draft_ops.arity(kind).min;
    if (args.length < minimum) {
      this.flashStatus(`${kind} needs at least ${minimum} arguments`);
      return;
    }
    const regionSelect = this.$("relation-region") as HTMLSelectElement;
    const region =
      regionSelect.value === "auto"
        ? draft_ops.defaultRegion(this.draft, kind, args)
        : (regionSelect.value as Region);
    try {
      const [next] = draft_ops.addRelation(this.draft, kind, args, region);
      this.apply(next);
    } catch (error) {
      this.flashStatus(String((error as Error).message));
    }
  }

  private async onSave(): Promise<void> {
    if (!this.draft) return;
    try {
      const saved = await this.client.saveAnnotation(draft_ops.toAnnotation(this.draft));
      this.dirty = false;
      this.setBanner(null);
      this.flashStatus(`saved as ${saved.id}`);
      this.renderHeader();
    } catch (error) {
      if (error instanceof ApiError) {
        this.flashStatus(`save rejected: ${error.code} ${error.message}`);
      } else {
        this.handleServiceError(error);
      }
    }
  }

  private handleServiceError(error: unknown): void {
    if (error instanceof ServiceUnreachable) {
      this.setBanner("service unreachable — edits are kept locally; retrying on next change");
      return;
    }
    if (error instanceof ApiError) {
      this.flashStatus(`${error.code}: ${error.message}`);
      return;
    }
    throw error;
  }

  private setBanner(message: string | null): void {
    const banner = this.$("banner");
    banner.textContent = message ?? "";
    banner.classList.toggle("hidden", message === null);
  }

  private flashStatus(message: string): void {
    const status = this.$("status");
    status.textContent = message;
    status.classList.remove("hidden");
    window.setTimeout(() => status.classList.add("hidden"), 2500);
  }

  // ------------------------------------------------------------- rendering

  private renderAll(): void {
    this.renderHeader();
    this.renderPanes();
    this.renderLanes();
    this.renderBuilder();
    this.renderMeters();
    this.renderDiagnostics();
    this.renderPreview();
  }

  private renderHeader(): void {
    if (!this.draft) return;
    (this.$("base-pattern") as HTMLSelectElement).value = this.draft.base_pattern ?? "pattern1";
    (this.$("na-toggle") as HTMLInputElement).checked = this.draft.status === "not_applicable";
    this.$("dirty-marker").textContent = this.dirty ? "unsaved changes" : "";
    const central = this.$("central-display");
    central.textContent = this.draft.central_concept
      ? `X = "${this.draft.central_concept.text}"`
      : "X not set";
  }

  private renderPanes(): void {
    if (!this.debate) return;
    this.$("debate-topic").textContent = this.debate.topic;
    this.$("ia-pane").textContent = this.debate.ia_text;
    this.$("ca-pane").textContent = this.debate.ca_text;
  }

  private renderLanes(): void {
    if (!this.draft) return;
    const lanes: Record<Region, HTMLElement> = {
      ia_pattern: this.$("lane-ia"),
      attack_pattern: this.$("lane-attack"),
      ca_pattern: this.$("lane-ca"),
    };
    for (const lane of Object.values(lanes)) lane.replaceChildren();
    lanes.ia_pattern.append(
      el("div", { class: "chip anchor", "data-subject-id": "ia-conclusion-anchor" }, [
        this.conclusionText(true),
      ])
    );
    lanes.ca_pattern.append(
      el("div", { class: "chip anchor", "data-subject-id": "ca-conclusion-anchor" }, [
        this.conclusionText(false),
      ])
    );
    const nodeHandlers = {
      onPolarity: (id: string) => {
        if (!this.draft) return;
        const node = this.draft.nodes.find((n) => n.id === id);
        if (!node) return;
        const nextPolarity =
          node.polarity === "none" ? "good" : node.polarity === "good" ? "bad" : "none";
        this.apply(draft_ops.setNodePolarity(this.draft, id, nextPolarity));
      },
      onNegate: (id: string) => this.draft && this.apply(draft_ops.toggleNodeNegated(this.draft, id)),
      onRemove: (id: string) => {
        try {
          if (this.draft) this.apply(draft_ops.removeNode(this.draft, id));
        } catch (error) {
          this.flashStatus(String((error as Error).message));
        }
      },
    };
    const relationHandlers = {
      onNegate: (id: string) =>
        this.draft && this.apply(draft_ops.toggleRelationNegated(this.draft, id)),
      onMitigate: (id: string) =>
        this.draft && this.apply(draft_ops.toggleRelationMitigated(this.draft, id)),
      onRemove: (id: string) => {
        try {
          if (this.draft) this.apply(draft_ops.removeRelation(this.draft, id));
        } catch (error) {
          this.flashStatus(String((error as Error).message));
        }
      },
    };
    for (const node of this.draft.nodes) {
      lanes[nodeLane(this.draft, node)].append(nodeChip(this.draft, node, nodeHandlers));
    }
    for (const rel of this.draft.relations) {
      lanes[rel.region].append(relationCard(rel, relationHandlers));
    }
    this.renderEdges();
  }

  private conclusionText(iaSide: boolean): string {
    if (!this.draft) return "";
    const x = this.draft.central_concept?.text ?? "X";
    const sentiment = this.draft.base_pattern === "pattern2" ? "positive" : "negative";
    return iaSide ? `"${x}" is ${sentiment}` : `"${x}" is not ${sentiment}`;
  }

  private renderEdges(): void {
    const svg = this.$("edges") as unknown as SVGSVGElement;
    if (this.draft) drawEdges(svg, this.$("lanes"), this.draft);
  }

  private renderBuilder(): void {
    if (!this.draft) return;
    const kindSelect = this.$("relation-kind") as HTMLSelectElement;
    if (kindSelect.options.length === 0) {
      kindSelect.replaceChildren(
        ...RELATION_KINDS.map((kind) => el("option", { value: kind }, [kind.replace("_", " ")]))
      );
    }
    const kind = kindSelect.value as RelationKind;
    const options: [string, string][] = [];
    for (const node of this.draft.nodes) {
      options.push([`node:${node.id}`, `${node.id} (${nodePreview(this.draft, node)})`]);
    }
    for (const rel of this.draft.relations) {
      options.push([
        `relation:${rel.id}`,
        `${rel.id} (${rel.kind} ${rel.args.map(refLabel).join(", ")})`,
      ]);
    }
    if (ATTACK_KINDS.includes(kind)) {
      options.push(["ca_conclusion:", "CA-conclusion"], ["ia_conclusion:", "IA-conclusion"]);
    }
    const holder = this.$("relation-args");
    holder.replaceChildren();
    for (let i = 0; i < this.builderArgCount(); i += 1) {
      const select = el("select", { id: `arg-${i}` });
      const optional = i >= draft_ops.arity(kind).min;
      if (optional) select.append(el("option", { value: "" }, ["(none)"]));
      select.append(...options.map(([value, label]) => el("option", { value }, [label])));
      holder.append(select);
    }
  }

  private renderMeters(): void {
    if (!this.draft) return;
    const { ia, ca } = draft_ops.budgets(this.draft);
    const iaMeter = this.$("meter-ia");
    const caMeter = this.$("meter-ca");
    iaMeter.textContent = `IA budget ${ia}/${draft_ops.BUDGET_LIMITS.ia}`;
    caMeter.textContent = `CA budget ${ca}/${draft_ops.BUDGET_LIMITS.ca}`;
    iaMeter.classList.toggle("over", ia > draft_ops.BUDGET_LIMITS.ia);
    caMeter.classList.toggle("over", ca > draft_ops.BUDGET_LIMITS.ca);
  }

  private renderDiagnostics(): void {
    const list = this.$("diagnostics");
    list.replaceChildren();
    if (!this.report) return;
    const attach = (diag: { code: string; subject_id: string; message: string }, isError: boolean) =>
      list.append(
        diagnosticRow(diag, isError, () => {
          const target = document.querySelector(`[data-subject-id="${diag.subject_id}"]`);
          if (target) {
            target.scrollIntoView({ block: "nearest" });
            target.classList.add("flash");
            window.setTimeout(() => target.classList.remove("flash"), 1200);
          }
        })
      );
    for (const diag of this.report.errors) attach(diag, true);
    for (const diag of this.report.warnings) attach(diag, false);
    this.$("validity").textContent = this.report.is_valid ? "valid" : "invalid";
    this.$("validity").className = this.report.is_valid ? "ok" : "bad";
  }

  private renderPreview(): void {
    this.$("preview").textContent = this.preview;
  }
}

new EditorApp().start().catch((error) => {
  document.body.append(el("pre", {}, [String(error)]));
});

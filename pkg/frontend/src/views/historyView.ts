/** Revision history with per-entity filtering, revert, and downloads. */

import { AppContext, View } from "../context.js";
import { clear, el, formatTime } from "../dom.js";
import { RevisionJson } from "../types.js";

export class HistoryView implements View {
  element: HTMLElement;
  private table: HTMLElement;
  private filterInput: HTMLInputElement;

  constructor(private readonly ctx: AppContext) {
    this.table = el("div", { class: "history" });
    this.filterInput = el("input", {
      type: "text",
      placeholder: "filter by entity IRI",
      class: "iri-filter",
    });
    this.filterInput.addEventListener("change", () => void this.refresh());
    const useSelection = el("button", {}, "Use selection");
    useSelection.addEventListener("click", () => {
      const selection = this.ctx.selection();
      if (selection) {
        this.filterInput.value = selection.entity.iri;
        void this.refresh();
      }
    });
    this.element = el(
      "section",
      { class: "view history-view" },
      el("header", {}, el("h3", {}, "History"), this.filterInput, useSelection),
      this.table,
    );
  }

  async refresh(): Promise<void> {
    const filter = this.filterInput.value.trim();
    const revisions = await this.ctx.api.revisions(
      this.ctx.projectId,
      filter ? filter : undefined,
    );
    this.render(revisions.slice().reverse());
  }

  private render(revisions: RevisionJson[]) {
    clear(this.table);
    if (revisions.length === 0) {
      this.table.append(el("p", { class: "empty" }, "No revisions."));
      return;
    }
    for (const revision of revisions) {
      this.table.append(this.renderRevision(revision));
    }
  }

  private renderRevision(revision: RevisionJson): HTMLElement {
    const revertButton = el("button", {}, "Revert");
    revertButton.addEventListener("click", async () => {
      if (!window.confirm(`Revert revision ${revision.number}?`)) return;
      try {
        await this.ctx.api.revert(this.ctx.projectId, revision.number);
        await this.refresh();
      } catch (error) {
        window.alert(`Revert failed: ${(error as Error).message}`);
      }
    });
    const downloadUrl =
      this.ctx.api.downloadUrl(this.ctx.projectId, revision.number) +
      `?token=${encodeURIComponent(this.ctx.urlToken)}`;
    const summary = el(
      "div",
      { class: "revision-row" },
      el("span", { class: "rev-number" }, `r${revision.number}`),
      el("span", { class: "rev-label" }, revision.label),
      el("span", { class: "rev-author" }, revision.author),
      el("span", { class: "rev-time" }, formatTime(revision.timestampMs)),
      revertButton,
      el("a", { href: downloadUrl, download: "" }, "Download"),
    );
    const details = el("ul", { class: "rev-changes" });
    for (const change of revision.changes) {
      details.append(el("li", {}, `${change.op === "add" ? "+" : "−"} ${change.axiom}`));
    }
    if (revision.commitMessage) {
      details.prepend(el("li", { class: "commit-message" }, revision.commitMessage));
    }
    const expander = el("details", {}, el("summary", {}, ""), details);
    expander.querySelector("summary")!.append(summary);
    return expander;
  }
}

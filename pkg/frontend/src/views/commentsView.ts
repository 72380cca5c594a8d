/** Threads grouped by entity, newest activity first. Comment bodies arrive
 * pre-rendered and sanitized from the server; the client never re-parses
 * Markdown. */

import { AppContext, View } from "../context.js";
import { clear, el, formatTime } from "../dom.js";
import { ThreadJson, entityKey } from "../types.js";

export class CommentsView implements View {
  element: HTMLElement;
  private list: HTMLElement;
  private filter: HTMLSelectElement;
  private threads: ThreadJson[] = [];

  constructor(private readonly ctx: AppContext) {
    this.list = el("div", { class: "thread-list" });
    this.filter = el("select", { class: "entity-filter" });
    this.filter.addEventListener("change", () => this.render());
    const composeButton = el("button", { class: "primary" }, "New thread on selection…");
    composeButton.addEventListener("click", () => void this.compose());
    this.element = el(
      "section",
      { class: "view comments-view" },
      el("header", {}, el("h3", {}, "Comments"), this.filter, composeButton),
      this.list,
    );
  }

  private async compose(): Promise<void> {
    const selection = this.ctx.selection();
    if (!selection) {
      window.alert("Select an entity first.");
      return;
    }
    const body = window.prompt(`Comment on ${selection.displayName} (Markdown, @mentions)`);
    if (!body || !body.trim()) return;
    try {
      await this.ctx.api.createThread(this.ctx.projectId, selection.entity, body);
      await this.refresh();
    } catch (error) {
      window.alert(`Could not post: ${(error as Error).message}`);
    }
  }

  async refresh(): Promise<void> {
    this.threads = await this.ctx.api.threads(this.ctx.projectId);
    const keys = new Map<string, string>();
    for (const thread of this.threads) {
      keys.set(entityKey(thread.entity), thread.entity.iri);
    }
    const current = this.filter.value;
    clear(this.filter);
    this.filter.append(el("option", { value: "" }, "all entities"));
    for (const [key, iri] of [...keys.entries()].sort()) {
      this.filter.append(el("option", { value: key }, iri));
    }
    this.filter.value = current;
    this.render();
  }

  private render() {
    clear(this.list);
    const wanted = this.filter.value;
    for (const thread of this.threads) {
      if (wanted && entityKey(thread.entity) !== wanted) continue;
      this.list.append(this.renderThread(thread));
    }
    if (!this.list.hasChildNodes()) {
      this.list.append(el("p", { class: "empty" }, "No comment threads yet."));
    }
  }

  private renderThread(thread: ThreadJson): HTMLElement {
    const statusButton = el(
      "button",
      { class: "status" },
      thread.status === "Open" ? "Close" : "Reopen",
    );
    statusButton.addEventListener("click", async () => {
      const next = thread.status === "Open" ? "Closed" : "Open";
      await this.ctx.api.setThreadStatus(thread.id, next);
      await this.refresh();
    });
    const replyButton = el("button", {}, "Reply…");
    replyButton.addEventListener("click", async () => {
      const body = window.prompt("Reply (Markdown, @mentions)");
      if (!body || !body.trim()) return;
      await this.ctx.api.addComment(thread.id, body);
      await this.refresh();
    });
    const header = el(
      "div",
      { class: `thread-header ${thread.status.toLowerCase()}` },
      el("span", { class: "thread-entity" }, thread.entity.iri),
      el("span", { class: `status-pill ${thread.status.toLowerCase()}` }, thread.status),
      statusButton,
      replyButton,
    );
    const card = el("article", { class: "thread" }, header);
    for (const comment of thread.comments) {
      const body = el("div", { class: "comment-body" });
      body.innerHTML = comment.renderedHtml; // server-rendered and escaped
      card.append(
        el(
          "div",
          { class: "comment" },
          el(
            "div",
            { class: "comment-meta" },
            el("strong", {}, comment.author),
            el("span", {}, " · ", formatTime(comment.timestampMs)),
          ),
          body,
        ),
      );
    }
    return card;
  }
}

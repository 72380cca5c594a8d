/** Live project feed straight from the event store. */

import { AppContext, View } from "../context.js";
import { clear, el, formatTime } from "../dom.js";
import { EventEnvelope } from "../types.js";

function describe(envelope: EventEnvelope): string {
  const who = envelope.userId;
  switch (envelope.event) {
    case "RevisionAppended":
      return `${who} committed revision ${envelope.revisionNumber}`;
    case "CommentPosted":
      return `${who} commented`;
    case "ThreadStatusChanged":
      return `${who} changed a thread's status`;
    default:
      return `${who}: ${envelope.event}`;
  }
}

export class FeedView implements View {
  element: HTMLElement;
  private list: HTMLElement;

  constructor(private readonly ctx: AppContext) {
    this.list = el("ul", { class: "feed" });
    this.element = el(
      "section",
      { class: "view feed-view" },
      el("header", {}, el("h3", {}, "Project Feed")),
      this.list,
    );
  }

  refresh(): void {
    clear(this.list);
    for (const envelope of this.ctx.store.feed.slice(0, 50)) {
      const item = el(
        "li", {},
        el("span", { class: "feed-time" }, formatTime(envelope.timestamp)),
        " ",
        describe(envelope),
      );
      if (envelope.entity) {
        const iri = envelope.entity.iri;
        const link = el("a", { href: "#" }, ` ${iri.split(/[#/]/).pop() ?? iri}`);
        link.addEventListener("click", (event) => {
          event.preventDefault();
          this.ctx.select({ entity: envelope.entity!, displayName: iri });
        });
        item.append(link);
      }
      this.list.append(item);
    }
    if (!this.list.hasChildNodes()) {
      this.list.append(el("li", { class: "empty" }, "Nothing has happened yet."));
    }
  }
}

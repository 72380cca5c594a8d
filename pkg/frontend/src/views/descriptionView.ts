/** Selected-entity summary: names, tags, and the one-hop relations the
 * server's graph endpoint reports. */

import { AppContext, View } from "../context.js";
import { clear, el } from "../dom.js";
import { entityKey } from "../types.js";

export class DescriptionView implements View {
  element: HTMLElement;
  private box: HTMLElement;

  constructor(private readonly ctx: AppContext) {
    this.box = el("div", { class: "description" });
    this.element = el(
      "section",
      { class: "view description-view" },
      el("header", {}, el("h3", {}, "Class Description")),
      this.box,
    );
  }

  async refresh(): Promise<void> {
    clear(this.box);
    const selection = this.ctx.selection();
    if (!selection) {
      this.box.append(el("p", { class: "empty" }, "Select an entity in the hierarchy."));
      return;
    }
    this.box.append(
      el("h4", {}, selection.displayName),
      el("p", { class: "iri" }, selection.entity.iri),
      el("p", { class: "kind" }, selection.entity.kind),
    );
    const badge = this.ctx.store.badgeCount(selection.entity);
    if (badge > 0) {
      this.box.append(el("p", {}, `${badge} open comment thread${badge === 1 ? "" : "s"}`));
    }
    try {
      const graph = await this.ctx.api.graph(this.ctx.projectId, selection.entity.iri, 1);
      const me = entityKey(selection.entity);
      const parents = graph.edges.filter(
        (edge) => edge.kind === "SubClassOf" && entityKey(edge.source) === me,
      );
      const children = graph.edges.filter(
        (edge) => edge.kind === "SubClassOf" && entityKey(edge.target) === me,
      );
      const relations = graph.edges.filter((edge) => edge.kind === "Property");
      const names = new Map(graph.nodes.map((n) => [entityKey(n.entity), n.displayName]));
      const section = (title: string, items: string[]) => {
        if (items.length === 0) return;
        this.box.append(
          el("h5", {}, title),
          el("ul", {}, ...items.map((item) => el("li", {}, item))),
        );
      };
      section("Parents", parents.map((e) => names.get(entityKey(e.target)) ?? e.target.iri));
      section("Subclasses", children.map((e) => names.get(entityKey(e.source)) ?? e.source.iri));
      section(
        "Relations",
        relations.map(
          (e) =>
            `${names.get(entityKey(e.source))} —${e.label}→ ` +
            `${names.get(entityKey(e.target))}`,
        ),
      );
    } catch {
      // entity may not appear in any axiom yet; the summary above suffices
    }
  }
}

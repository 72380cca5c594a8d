/** Class hierarchy tree with open-thread badges and tag chips. */

import { AppContext, View } from "../context.js";
import { clear, el } from "../dom.js";
import { HierarchyModel, HierarchyNode } from "../hierarchy.js";
import { entityKey } from "../types.js";

export class HierarchyView implements View {
  element: HTMLElement;
  private model: HierarchyModel;
  private list: HTMLElement;

  constructor(private readonly ctx: AppContext) {
    this.model = new HierarchyModel(ctx.api, ctx.store);
    this.list = el("div", { class: "tree" });
    const newClassButton = el("button", { class: "primary" }, "New class…");
    newClassButton.addEventListener("click", () => void this.createClass());
    this.element = el(
      "section",
      { class: "view hierarchy-view" },
      el("header", {}, el("h3", {}, "Class Hierarchy"), newClassButton),
      this.list,
    );
  }

  private async createClass(): Promise<void> {
    const selection = this.ctx.selection();
    const parent = selection?.entity.kind === "Class"
      ? selection.entity.iri
      : "http://www.w3.org/2002/07/owl#Thing";
    const name = window.prompt(
      `Name for the new class (a prefixed name like schema:Dataset links out)\nparent: ${parent}`,
    );
    if (!name || !name.trim()) return;
    try {
      await this.ctx.api.applyEdit(this.ctx.projectId, {
        type: "CreateClass",
        name: name.trim(),
        parent,
      });
    } catch (error) {
      window.alert(`Could not create the class: ${(error as Error).message}`);
    }
  }

  async refresh(): Promise<void> {
    await this.model.refreshTags();
    if (this.model.root.children === null || this.ctx.store.isStale(this.model.root.entity)) {
      await this.model.loadChildren(this.model.root);
      this.model.root.expanded = true;
    } else {
      await this.model.refreshStale();
    }
    this.render();
  }

  private render() {
    clear(this.list);
    this.list.append(this.renderNode(this.model.root));
  }

  private renderNode(node: HierarchyNode): HTMLElement {
    const row = el("div", { class: "tree-row" });
    const toggle = el("span", { class: "twisty" }, node.expanded ? "▾" : "▸");
    toggle.addEventListener("click", () => void this.toggle(node));
    const label = el("span", { class: "tree-label" }, node.displayName);
    const selected = this.ctx.selection();
    if (selected && entityKey(selected.entity) === entityKey(node.entity)) {
      label.classList.add("selected");
    }
    label.addEventListener("click", () => {
      this.ctx.select({ entity: node.entity, displayName: node.displayName });
      this.render();
    });
    row.append(toggle, label);
    const badge = this.model.badge(node.entity);
    if (badge > 0) {
      row.append(el("span", { class: "badge", title: "open comment threads" }, String(badge)));
    }
    for (const chip of this.model.chips(node.entity)) {
      row.append(el("span", { class: "chip", style: `background:${chip.color}` }, chip.label));
    }
    const container = el("div", { class: "tree-node" }, row);
    if (node.expanded && node.children) {
      const children = el("div", { class: "tree-children" });
      for (const child of node.children) {
        children.append(this.renderNode(child));
      }
      container.append(children);
    }
    return container;
  }

  private async toggle(node: HierarchyNode): Promise<void> {
    if (node.expanded) {
      this.model.collapse(node);
    } else {
      await this.model.expand(node);
    }
    this.render();
  }
}

/** Relation graph canvas. Layout positions come from the server; hovering a
 * node shows exactly the isolation subgraph the server returns - the client
 * does no path computation of its own. */

import { AppContext, View } from "../context.js";
import { clear, el } from "../dom.js";
import { GraphJson, entityKey } from "../types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const NODE_W = 200;
const NODE_H = 50;

export class GraphView implements View {
  element: HTMLElement;
  private canvasBox: HTMLElement;
  private status: HTMLElement;
  private graph: GraphJson | null = null;
  private hidden: string[] = [];
  private depth = 2;
  private rootIri: string | null = null;

  constructor(private readonly ctx: AppContext) {
    this.canvasBox = el("div", { class: "graph-canvas" });
    this.status = el("span", { class: "graph-status" });
    const depthInput = el("input", { type: "number", min: "1", max: "6", value: "2" });
    depthInput.addEventListener("change", () => {
      this.depth = Math.max(1, Number(depthInput.value) || 2);
      void this.load();
    });
    const showSelection = el("button", { class: "primary" }, "Graph selection");
    showSelection.addEventListener("click", () => {
      const selection = this.ctx.selection();
      if (!selection) return;
      this.rootIri = selection.entity.iri;
      this.hidden = [];
      void this.load();
    });
    const unhide = el("button", {}, "Unhide all");
    unhide.addEventListener("click", () => {
      this.hidden = [];
      void this.load();
    });
    const exportDot = el("a", { class: "export-link" }, "DOT");
    const exportSvg = el("a", { class: "export-link" }, "SVG");
    this.exportLinks = { dot: exportDot, svg: exportSvg };
    this.element = el(
      "section",
      { class: "view graph-view" },
      el(
        "header", {},
        el("h3", {}, "Graph"),
        showSelection,
        el("label", {}, "depth ", depthInput),
        unhide,
        exportDot,
        exportSvg,
        this.status,
      ),
      this.canvasBox,
    );
  }

  private exportLinks: { dot: HTMLAnchorElement; svg: HTMLAnchorElement };

  async refresh(): Promise<void> {
    if (this.rootIri === null) {
      const selection = this.ctx.selection();
      if (selection) this.rootIri = selection.entity.iri;
    }
    if (this.rootIri !== null) await this.load();
  }

  private async load(isolateIri?: string): Promise<void> {
    if (this.rootIri === null) return;
    try {
      const graph = await this.ctx.api.graph(
        this.ctx.projectId, this.rootIri, this.depth, isolateIri, this.hidden,
      );
      if (isolateIri === undefined) this.graph = graph;
      this.render(graph, isolateIri !== undefined);
      this.status.textContent = `${graph.nodes.length} nodes / ${graph.edges.length} edges`;
      for (const format of ["dot", "svg"] as const) {
        this.exportLinks[format].href =
          this.ctx.api.graphExportUrl(this.ctx.projectId, this.rootIri, format, this.depth, this.hidden) +
          `&token=${encodeURIComponent(this.ctx.urlToken)}`;
      }
    } catch (error) {
      this.status.textContent = (error as Error).message;
    }
  }

  private render(graph: GraphJson, isIsolation: boolean) {
    clear(this.canvasBox);
    const maxX = Math.max(...graph.nodes.map((n) => n.x), 0) + NODE_W + 40;
    const maxY = Math.max(...graph.nodes.map((n) => n.y), 0) + NODE_H + 40;
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `-20 -20 ${maxX} ${maxY}`);
    svg.setAttribute("width", String(maxX));
    svg.setAttribute("height", String(maxY));

    const positions = new Map(graph.nodes.map((n) => [entityKey(n.entity), n]));
    for (const edge of graph.edges) {
      const source = positions.get(entityKey(edge.source));
      const target = positions.get(entityKey(edge.target));
      if (!source || !target) continue;
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(source.x + NODE_W / 2));
      line.setAttribute("y1", String(source.y + NODE_H / 2));
      line.setAttribute("x2", String(target.x + NODE_W / 2));
      line.setAttribute("y2", String(target.y + NODE_H / 2));
      line.setAttribute("stroke", "#667");
      if (edge.kind === "InstanceOf") line.setAttribute("stroke-dasharray", "6,3");
      svg.append(line);
      if (edge.kind === "Property") {
        const text = document.createElementNS(SVG_NS, "text");
        text.setAttribute("x", String((source.x + target.x) / 2 + NODE_W / 2));
        text.setAttribute("y", String((source.y + target.y) / 2 + NODE_H / 2 - 4));
        text.setAttribute("text-anchor", "middle");
        text.setAttribute("class", "edge-label");
        text.textContent = edge.label;
        svg.append(text);
      }
    }

    for (const node of graph.nodes) {
      const group = document.createElementNS(SVG_NS, "g");
      group.setAttribute("class", "graph-node");
      const rect = document.createElementNS(SVG_NS, "rect");
      rect.setAttribute("x", String(node.x));
      rect.setAttribute("y", String(node.y));
      rect.setAttribute("width", String(NODE_W));
      rect.setAttribute("height", String(NODE_H));
      rect.setAttribute("rx", "6");
      const isRoot = entityKey(node.entity) === entityKey(graph.root);
      rect.setAttribute("fill", isRoot ? "#dbe9ff" : "#eef3fa");
      rect.setAttribute("stroke", "#4a6a96");
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(node.x + NODE_W / 2));
      text.setAttribute("y", String(node.y + NODE_H / 2 + 4));
      text.setAttribute("text-anchor", "middle");
      text.textContent = node.displayName;
      group.append(rect, text);
      if (!isIsolation) {
        group.addEventListener("mouseenter", () => void this.load(node.entity.iri));
        group.addEventListener("mouseleave", () => {
          if (this.graph) this.render(this.graph, false);
        });
        group.addEventListener("dblclick", () => {
          if (!isRoot) {
            this.hidden.push(node.entity.iri);
            void this.load();
          }
        });
        group.addEventListener("click", () =>
          this.ctx.select({ entity: node.entity, displayName: node.displayName }),
        );
      }
      svg.append(group);
    }
    this.canvasBox.append(svg);
    this.canvasBox.append(
      el("p", { class: "hint" },
         "hover: isolate paths to the hovered entity · double-click: hide node"),
    );
  }
}

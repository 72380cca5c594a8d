/** Interactive query builder: criteria rows plus a match-all/any toggle,
 * checked locally before any request leaves the page. */

import { AppContext, View } from "../context.js";
import { clear, el } from "../dom.js";
import {
  AtomType,
  buildQueryDocument,
  emptyRow,
  QueryFormState,
  QueryRow,
  RowError,
} from "../queryBuilder.js";
import { EntityKind, RDFS_LABEL } from "../types.js";

const ATOMS: { value: AtomType; label: string }[] = [
  { value: "IsSubClassOf", label: "is subclass of" },
  { value: "AnnotationContains", label: "annotation contains" },
  { value: "AnnotationMatchesRegex", label: "annotation matches regex" },
  { value: "HasAnnotationOn", label: "has annotation on" },
  { value: "LacksAnnotationOn", label: "lacks annotation on" },
  { value: "EntityKindIs", label: "entity kind is" },
  { value: "HasTag", label: "has tag" },
  { value: "IriContains", label: "IRI contains" },
];

const KINDS: EntityKind[] = [
  "Class", "ObjectProperty", "DataProperty",
  "AnnotationProperty", "NamedIndividual", "Datatype",
];

export class QueryView implements View {
  element: HTMLElement;
  private rows: QueryRow[] = [];
  private mode: "all" | "any" = "all";
  private rowsBox: HTMLElement;
  private results: HTMLElement;
  private errors: RowError[] = [];

  constructor(private readonly ctx: AppContext) {
    this.rowsBox = el("div", { class: "query-rows" });
    this.results = el("div", { class: "query-results" });
    const addRow = el("button", {}, "+ criteria");
    addRow.addEventListener("click", () => {
      this.rows.push({ ...emptyRow(), iri: RDFS_LABEL });
      this.render();
    });
    const run = el("button", { class: "primary" }, "Run query");
    run.addEventListener("click", () => void this.run());
    const modeAll = el("label", {}, this.radio("all"), " match all");
    const modeAny = el("label", {}, this.radio("any"), " match any");
    this.element = el(
      "section",
      { class: "view query-view" },
      el("header", {}, el("h3", {}, "Query"), modeAll, modeAny, addRow, run),
      this.rowsBox,
      this.results,
    );
    this.render();
  }

  private radio(value: "all" | "any"): HTMLInputElement {
    const input = el("input", { type: "radio", name: "match-mode" });
    input.checked = this.mode === value;
    input.addEventListener("change", () => (this.mode = value));
    return input;
  }

  refresh(): void {
    // query state is purely local; nothing to reload
  }

  private formState(): QueryFormState {
    return { mode: this.mode, rows: this.rows };
  }

  private async run(): Promise<void> {
    const built = buildQueryDocument(this.formState());
    if (!built.ok) {
      this.errors = built.errors;
      this.render();
      return;
    }
    this.errors = [];
    const { results } = await this.ctx.api.search(this.ctx.projectId, built.document);
    clear(this.results);
    const table = el("table", { class: "results-table" });
    table.append(el("tr", {}, el("th", {}, "entity"), el("th", {}, "IRI")));
    for (const result of results) {
      const nameCell = el("td", {}, result.displayName);
      nameCell.addEventListener("click", () =>
        this.ctx.select({ entity: result.entity, displayName: result.displayName }),
      );
      table.append(el("tr", { class: "result-row" }, nameCell, el("td", {}, result.entity.iri)));
    }
    this.results.append(
      el("p", {}, `${results.length} result${results.length === 1 ? "" : "s"}`),
      table,
    );
    this.render();
  }

  private render() {
    clear(this.rowsBox);
    this.rows.forEach((row, index) => this.rowsBox.append(this.renderRow(row, index)));
  }

  private errorFor(index: number, field: string): string | null {
    const hit = this.errors.find((e) => e.row === index && e.field === field);
    return hit ? hit.message : null;
  }

  private renderRow(row: QueryRow, index: number): HTMLElement {
    const box = el("div", { class: "query-row" });
    const atomSelect = el("select", {});
    atomSelect.append(el("option", { value: "" }, "choose…"));
    for (const atom of ATOMS) {
      const option = el("option", { value: atom.value }, atom.label);
      if (row.atom === atom.value) option.selected = true;
      atomSelect.append(option);
    }
    atomSelect.addEventListener("change", () => {
      row.atom = atomSelect.value as AtomType | "";
      this.render();
    });
    box.append(atomSelect);

    const text = (field: "iri" | "text" | "tagId", placeholder: string) => {
      const input = el("input", { type: "text", placeholder });
      input.value = row[field];
      input.addEventListener("input", () => (row[field] = input.value));
      box.append(input);
      const message = this.errorFor(index, field);
      if (message) box.append(el("span", { class: "row-error" }, message));
    };

    switch (row.atom) {
      case "IsSubClassOf": {
        text("iri", "class IRI");
        const modeSelect = el("select", {});
        for (const mode of ["direct", "transitive"] as const) {
          const option = el("option", { value: mode }, mode);
          if (row.mode === mode) option.selected = true;
          modeSelect.append(option);
        }
        modeSelect.addEventListener("change", () => (row.mode = modeSelect.value as "direct" | "transitive"));
        box.append(modeSelect);
        break;
      }
      case "AnnotationContains":
      case "AnnotationMatchesRegex": {
        const any = el("input", { type: "checkbox" });
        any.checked = row.anyProperty;
        any.addEventListener("change", () => {
          row.anyProperty = any.checked;
          this.render();
        });
        box.append(el("label", {}, any, " any property"));
        if (!row.anyProperty) text("iri", "annotation property IRI");
        text("text", row.atom === "AnnotationContains" ? "text" : "regex");
        if (row.atom === "AnnotationContains") {
          const ic = el("input", { type: "checkbox" });
          ic.checked = row.ignoreCase;
          ic.addEventListener("change", () => (row.ignoreCase = ic.checked));
          box.append(el("label", {}, ic, " ignore case"));
        }
        break;
      }
      case "HasAnnotationOn":
      case "LacksAnnotationOn":
        text("iri", "annotation property IRI");
        break;
      case "EntityKindIs": {
        const kindSelect = el("select", {});
        kindSelect.append(el("option", { value: "" }, "kind…"));
        for (const kind of KINDS) {
          const option = el("option", { value: kind }, kind);
          if (row.kind === kind) option.selected = true;
          kindSelect.append(option);
        }
        kindSelect.addEventListener("change", () => (row.kind = kindSelect.value as EntityKind | ""));
        box.append(kindSelect);
        const message = this.errorFor(index, "kind");
        if (message) box.append(el("span", { class: "row-error" }, message));
        break;
      }
      case "HasTag":
        text("tagId", "tag id");
        break;
      case "IriContains":
        text("text", "substring");
        break;
      default: {
        const message = this.errorFor(index, "atom");
        if (message) box.append(el("span", { class: "row-error" }, message));
      }
    }

    const remove = el("button", { class: "remove-row" }, "×");
    remove.addEventListener("click", () => {
      this.rows.splice(index, 1);
      this.render();
    });
    box.append(remove);
    return box;
  }
}

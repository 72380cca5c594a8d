/** Query builder form model: rows of atom criteria plus a match-all/any
 * toggle, serialized to the criteria JSON the search endpoint accepts.
 * Validation reports one error per incomplete row so the form can mark the
 * offending field inline and skip the request entirely. */

import { CriteriaJson, EntityKind } from "./types.js";

export type AtomType =
  | "IsSubClassOf"
  | "AnnotationContains"
  | "AnnotationMatchesRegex"
  | "HasAnnotationOn"
  | "LacksAnnotationOn"
  | "EntityKindIs"
  | "HasTag"
  | "IriContains";

export interface QueryRow {
  atom: AtomType | "";
  /** IRI-valued input: cls for subclass rows, property otherwise. */
  iri: string;
  /** "any property" checkbox for the annotation atoms. */
  anyProperty: boolean;
  text: string;
  ignoreCase: boolean;
  mode: "direct" | "transitive";
  kind: EntityKind | "";
  tagId: string;
}

export function emptyRow(): QueryRow {
  return {
    atom: "",
    iri: "",
    anyProperty: false,
    text: "",
    ignoreCase: false,
    mode: "transitive",
    kind: "",
    tagId: "",
  };
}

export interface QueryFormState {
  mode: "all" | "any";
  rows: QueryRow[];
}

export interface RowError {
  row: number;
  field: string;
  message: string;
}

export type BuildResult =
  | { ok: true; document: CriteriaJson }
  | { ok: false; errors: RowError[] };

const IRI_RE = /^[A-Za-z][A-Za-z0-9+.-]*:\S+$/;

function rowToCriteria(row: QueryRow, index: number, errors: RowError[]): CriteriaJson | null {
  const need = (field: string, ok: boolean, message: string): boolean => {
    if (!ok) errors.push({ row: index, field, message });
    return ok;
  };
  const iriOk = (field: string) =>
    need(field, IRI_RE.test(row.iri.trim()), "an absolute IRI is required");

  switch (row.atom) {
    case "IsSubClassOf":
      if (!iriOk("iri")) return null;
      return { type: "IsSubClassOf", cls: row.iri.trim(), mode: row.mode };
    case "AnnotationContains": {
      const textOk = need("text", row.text.trim().length > 0, "enter the text to search for");
      const propOk = row.anyProperty || iriOk("iri");
      if (!textOk || !propOk) return null;
      return {
        type: "AnnotationContains",
        property: row.anyProperty ? null : row.iri.trim(),
        text: row.text,
        ignoreCase: row.ignoreCase,
      };
    }
    case "AnnotationMatchesRegex": {
      const patternOk = need("text", row.text.trim().length > 0, "enter a pattern");
      const propOk = row.anyProperty || iriOk("iri");
      if (!patternOk || !propOk) return null;
      return {
        type: "AnnotationMatchesRegex",
        property: row.anyProperty ? null : row.iri.trim(),
        pattern: row.text,
      };
    }
    case "HasAnnotationOn":
      if (!iriOk("iri")) return null;
      return { type: "HasAnnotationOn", property: row.iri.trim() };
    case "LacksAnnotationOn":
      if (!iriOk("iri")) return null;
      return { type: "LacksAnnotationOn", property: row.iri.trim() };
    case "EntityKindIs":
      if (!need("kind", row.kind !== "", "pick an entity kind")) return null;
      return { type: "EntityKindIs", kind: row.kind as EntityKind };
    case "HasTag":
      if (!need("tagId", row.tagId.trim().length > 0, "pick a tag")) return null;
      return { type: "HasTag", tagId: row.tagId.trim() };
    case "IriContains":
      if (!need("text", row.text.trim().length > 0, "enter the text to search for")) return null;
      return { type: "IriContains", text: row.text };
    default:
      errors.push({ row: index, field: "atom", message: "pick a criteria type" });
      return null;
  }
}

export function buildQueryDocument(form: QueryFormState): BuildResult {
  const errors: RowError[] = [];
  const children: CriteriaJson[] = [];
  form.rows.forEach((row, index) => {
    const criteria = rowToCriteria(row, index, errors);
    if (criteria) children.push(criteria);
  });
  if (errors.length > 0) {
    return { ok: false, errors };
  }
  return {
    ok: true,
    document:
      form.mode === "all"
        ? { type: "MatchAll", criteria: children }
        : { type: "MatchAny", criteria: children },
  };
}

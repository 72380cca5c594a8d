/** Bookmarkable deep links, identical to the server's URL scheme. */

import { EntityKind, EntityRef } from "./types.js";

export const TABS = [
  "Classes",
  "Properties",
  "Individuals",
  "Comments",
  "History",
  "Query",
  "Graph",
] as const;

export type TabName = (typeof TABS)[number];

const KINDS: readonly string[] = [
  "Class",
  "ObjectProperty",
  "DataProperty",
  "AnnotationProperty",
  "NamedIndividual",
  "Datatype",
];

const URL_RE = /^\/#projects\/([^/?#]+)\/edit\/([^/?#]+)\?selection=([A-Za-z]+)\(([^()]*)\)$/;

export interface DeepLink {
  projectId: string;
  tab: TabName;
  entity: EntityRef;
}

export function buildEntityUrl(projectId: string, tab: TabName, entity: EntityRef): string {
  if (!TABS.includes(tab)) {
    throw new Error(`unknown tab ${tab}`);
  }
  const encoded = encodeURIComponent(entity.iri);
  return `/#projects/${projectId}/edit/${tab}?selection=${entity.kind}(${encoded})`;
}

export function parseEntityUrl(url: string): DeepLink | null {
  const match = URL_RE.exec(url);
  if (!match) return null;
  const [, projectId, tab, kind, encodedIri] = match;
  if (!TABS.includes(tab as TabName)) return null;
  if (!KINDS.includes(kind)) return null;
  return {
    projectId,
    tab: tab as TabName,
    entity: { kind: kind as EntityKind, iri: decodeURIComponent(encodedIri) },
  };
}

/** Hash-only variant for in-app navigation (location.hash keeps the "#"). */
export function parseLocationHash(hash: string): DeepLink | null {
  return parseEntityUrl("/" + hash);
}

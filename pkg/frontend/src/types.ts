/** Wire types mirroring the server's JSON API. The client never invents
 * state of its own: everything here is what the server sent. */

export type EntityKind =
  | "Class"
  | "ObjectProperty"
  | "DataProperty"
  | "AnnotationProperty"
  | "NamedIndividual"
  | "Datatype";

export interface EntityRef {
  kind: EntityKind;
  iri: string;
}

export function entityKey(entity: EntityRef): string {
  return `${entity.kind}(${entity.iri})`;
}

export interface ChangeOpJson {
  op: "add" | "remove";
  ontologyId: string;
  axiom: string;
}

export interface RevisionJson {
  number: number;
  author: string;
  timestampMs: number;
  label: string;
  commitMessage: string | null;
  changes: ChangeOpJson[];
}

export interface CommentJson {
  id: string;
  author: string;
  timestampMs: number;
  body: string;
  mentions: string[];
  entityLinks: EntityRef[];
  renderedHtml: string;
}

export interface ThreadJson {
  id: string;
  entity: EntityRef;
  status: "Open" | "Closed";
  comments: CommentJson[];
}

export interface TagJson {
  id: string;
  label: string;
  description: string;
  color: string;
}

export interface EntityTagsJson {
  entity: EntityRef;
  tagIds: string[];
}

export interface EventEnvelope {
  projectId: string;
  event: string;
  userId: string;
  timestamp: number;
  entity: EntityRef | null;
  revisionNumber: number | null;
}

export interface GraphNodeJson {
  entity: EntityRef;
  displayName: string;
  x: number;
  y: number;
}

export interface GraphEdgeJson {
  source: EntityRef;
  target: EntityRef;
  kind: "SubClassOf" | "InstanceOf" | "Property";
  label: string;
  propertyIri: string | null;
}

export interface GraphJson {
  root: EntityRef;
  nodes: GraphNodeJson[];
  edges: GraphEdgeJson[];
}

export interface SearchResultJson {
  entity: EntityRef;
  displayName: string;
}

export interface ProjectSummaryJson {
  id: string;
  name: string;
  owner: string;
  baseIri: string;
  ontologies: string[];
  headRevision: number;
  participants: { userId: string; role: string }[];
}

/** Criteria documents as the search endpoint accepts them. */
export type CriteriaJson =
  | { type: "MatchAll"; criteria: CriteriaJson[] }
  | { type: "MatchAny"; criteria: CriteriaJson[] }
  | { type: "IsSubClassOf"; cls: string; mode: "direct" | "transitive" }
  | { type: "AnnotationContains"; property: string | null; text: string; ignoreCase: boolean }
  | { type: "AnnotationMatchesRegex"; property: string | null; pattern: string }
  | { type: "HasAnnotationOn"; property: string }
  | { type: "LacksAnnotationOn"; property: string }
  | { type: "EntityKindIs"; kind: EntityKind }
  | { type: "HasTag"; tagId: string }
  | { type: "IriContains"; text: string };

export const RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label";
export const OWL_THING = "http://www.w3.org/2002/07/owl#Thing";

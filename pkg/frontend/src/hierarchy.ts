/** Class-hierarchy tree model: lazy children via the search endpoint.
 *
 * Children of a class are exactly the direct-subclass search results, so the
 * tree performs no reasoning of its own. Stale nodes (touched by a revision
 * envelope while collapsed) refetch on expand.
 */

import { ApiClient } from "./api.js";
import { ProjectStore } from "./store.js";
import { EntityRef, OWL_THING, TagJson, entityKey } from "./types.js";

export interface TagChip {
  label: string;
  color: string;
}

export interface HierarchyNode {
  entity: EntityRef;
  displayName: string;
  children: HierarchyNode[] | null; // null = never loaded
  expanded: boolean;
  loading: boolean;
}

export function rootNode(): HierarchyNode {
  return {
    entity: { kind: "Class", iri: OWL_THING },
    displayName: "owl:Thing",
    children: null,
    expanded: false,
    loading: false,
  };
}

export class HierarchyModel {
  root = rootNode();
  private tagsByEntity = new Map<string, string[]>();
  private tagsById = new Map<string, TagJson>();

  constructor(
    private readonly api: ApiClient,
    private readonly store: ProjectStore,
  ) {}

  /** Tag chips for a node, ordered by tag label. */
  chips(entity: EntityRef): TagChip[] {
    const ids = this.tagsByEntity.get(entityKey(entity)) ?? [];
    return ids
      .map((id) => this.tagsById.get(id))
      .filter((tag): tag is TagJson => tag !== undefined)
      .map((tag) => ({ label: tag.label, color: tag.color }))
      .sort((a, b) => a.label.localeCompare(b.label));
  }

  badge(entity: EntityRef): number {
    return this.store.badgeCount(entity);
  }

  async refreshTags(): Promise<void> {
    const [tags, assignments] = await Promise.all([
      this.api.tags(this.store.projectId),
      this.api.entityTags(this.store.projectId),
    ]);
    this.tagsById = new Map(tags.map((tag) => [tag.id, tag]));
    this.tagsByEntity = new Map(
      assignments.map((a) => [entityKey(a.entity), a.tagIds]),
    );
  }

  async loadChildren(node: HierarchyNode): Promise<HierarchyNode[]> {
    node.loading = true;
    try {
      const { results } = await this.api.search(this.store.projectId, {
        type: "IsSubClassOf",
        cls: node.entity.iri,
        mode: "direct",
      });
      node.children = results.map((result) => ({
        entity: result.entity,
        displayName: result.displayName,
        children: null,
        expanded: false,
        loading: false,
      }));
      this.store.clearStale(node.entity);
      return node.children;
    } finally {
      node.loading = false;
    }
  }

  /** Expand a node, refetching when never loaded or marked stale. */
  async expand(node: HierarchyNode): Promise<void> {
    node.expanded = true;
    if (node.children === null || this.store.isStale(node.entity)) {
      await this.loadChildren(node);
    }
  }

  collapse(node: HierarchyNode) {
    node.expanded = false;
  }

  /** Refresh expanded nodes whose entity a revision envelope touched. */
  async refreshStale(): Promise<void> {
    const walk = async (node: HierarchyNode): Promise<void> => {
      if (node.expanded && this.store.isStale(node.entity)) {
        await this.loadChildren(node);
      }
      for (const child of node.children ?? []) {
        await walk(child);
      }
    };
    await walk(this.root);
  }
}

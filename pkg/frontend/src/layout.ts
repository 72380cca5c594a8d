/** Tab layout model and the debounced persistence pipeline.
 *
 * The layout document is what GET/PUT /layout stores verbatim, so the shape
 * here is the persistence contract: saving and reloading must restore the
 * exact arrangement.
 */

import { TabName, TABS } from "./urls.js";

export const VIEW_KINDS = [
  "ClassHierarchy",
  "ClassDescription",
  "Comments",
  "ProjectFeed",
  "History",
  "QueryBuilder",
  "Graph",
] as const;

export type ViewKind = (typeof VIEW_KINDS)[number];

export interface ViewDescriptor {
  kind: ViewKind;
  /** Grid placement: column start and width in a 12-column grid. */
  col: number;
  span: number;
  /** Row height in grid rows. */
  rows: number;
}

export interface TabViews {
  name: TabName;
  views: ViewDescriptor[];
}

export interface TabLayout {
  tabs: TabViews[];
}

export function defaultLayout(): TabLayout {
  return {
    tabs: [
      {
        name: "Classes",
        views: [
          { kind: "ClassHierarchy", col: 1, span: 4, rows: 12 },
          { kind: "ClassDescription", col: 5, span: 4, rows: 12 },
          { kind: "Comments", col: 9, span: 4, rows: 6 },
          { kind: "ProjectFeed", col: 9, span: 4, rows: 6 },
        ],
      },
      { name: "Comments", views: [{ kind: "Comments", col: 1, span: 12, rows: 12 }] },
      { name: "History", views: [{ kind: "History", col: 1, span: 12, rows: 12 }] },
      { name: "Query", views: [{ kind: "QueryBuilder", col: 1, span: 12, rows: 12 }] },
      { name: "Graph", views: [{ kind: "Graph", col: 1, span: 12, rows: 12 }] },
    ],
  };
}

export function serializeLayout(layout: TabLayout): string {
  return JSON.stringify(layout);
}

export function parseLayout(text: string): TabLayout | null {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null || !Array.isArray((data as TabLayout).tabs)) {
    return null;
  }
  const layout = data as TabLayout;
  for (const tab of layout.tabs) {
    if (!TABS.includes(tab.name) || !Array.isArray(tab.views)) return null;
    for (const view of tab.views) {
      if (!VIEW_KINDS.includes(view.kind)) return null;
    }
  }
  return layout;
}

export const SAVE_QUIET_MS = 2000;
export const SAVE_BACKOFF_MS = [1000, 5000, 25000] as const;

/** Debounced writer: at most one PUT per quiet period, always carrying the
 * final state; failed PUTs retry with backoff while keeping the layout
 * locally so nothing is lost. */
export class LayoutSaver {
  private pending: TabLayout | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private retryAttempt = 0;
  private inFlight = false;
  putCount = 0;

  constructor(
    private readonly put: (document: string) => Promise<void>,
    private readonly quietMs: number = SAVE_QUIET_MS,
    private readonly backoffMs: readonly number[] = SAVE_BACKOFF_MS,
  ) {}

  /** Record a layout change; the save fires after a quiet period. */
  change(layout: TabLayout) {
    this.pending = layout;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => void this.fire(), this.quietMs);
  }

  private async fire(): Promise<void> {
    this.timer = null;
    if (this.pending === null || this.inFlight) return;
    const layout = this.pending;
    this.pending = null;
    this.inFlight = true;
    try {
      await this.put(serializeLayout(layout));
      this.putCount += 1;
      this.retryAttempt = 0;
    } catch {
      // keep the document; retry later with backoff
      if (this.pending === null) this.pending = layout;
      const backoff = this.backoffMs[Math.min(this.retryAttempt, this.backoffMs.length - 1)];
      this.retryAttempt += 1;
      this.timer = setTimeout(() => void this.fire(), backoff);
    } finally {
      this.inFlight = false;
      // a change arrived while the PUT was in flight: save it after
      // another quiet period so the final state always lands
      if (this.pending !== null && this.timer === null) {
        this.timer = setTimeout(() => void this.fire(), this.quietMs);
      }
    }
  }
}

/** Application shell: tab bar, view grid, layout persistence, deep links,
 * and the live event stream. */

import { ApiClient } from "./api.js";
import { AppContext, Selection, View } from "./context.js";
import { clear, el } from "./dom.js";
import { ProjectEventStream } from "./events.js";
import {
  defaultLayout,
  LayoutSaver,
  parseLayout,
  serializeLayout,
  TabLayout,
  ViewDescriptor,
  ViewKind,
} from "./layout.js";
import { ProjectStore } from "./store.js";
import { entityKey, EventEnvelope, ThreadJson } from "./types.js";
import { buildEntityUrl, parseLocationHash, TabName } from "./urls.js";
import { CommentsView } from "./views/commentsView.js";
import { DescriptionView } from "./views/descriptionView.js";
import { FeedView } from "./views/feedView.js";
import { GraphView } from "./views/graphView.js";
import { HierarchyView } from "./views/hierarchyView.js";
import { HistoryView } from "./views/historyView.js";
import { QueryView } from "./views/queryView.js";

export class App {
  private store!: ProjectStore;
  private layout: TabLayout = defaultLayout();
  private saver!: LayoutSaver;
  private stream!: ProjectEventStream;
  private activeTab: TabName = "Classes";
  private selected: Selection | null = null;
  private views = new Map<ViewKind, View>();
  private tabBar!: HTMLElement;
  private grid!: HTMLElement;

  constructor(
    private readonly api: ApiClient,
    private readonly projectId: string,
    private readonly token: string,
    private readonly rootElement: HTMLElement,
  ) {}

  private context(): AppContext {
    return {
      api: this.api,
      store: this.store,
      projectId: this.projectId,
      urlToken: this.token,
      selection: () => this.selected,
      select: (selection, navigate = true) => {
        this.selected = selection;
        if (navigate) {
          window.location.hash = buildEntityUrl(
            this.projectId, this.activeTab, selection.entity,
          ).slice(1);
        }
        void this.refreshViews(["ClassDescription", "ClassHierarchy"]);
      },
      openTab: (tab) => this.showTab(tab),
    };
  }

  async start(): Promise<void> {
    const summary = await this.api.getProject(this.projectId);
    this.store = new ProjectStore(this.projectId, summary.headRevision);
    const saved = await this.api.getLayout(this.projectId);
    this.layout = (saved && parseLayout(saved)) || defaultLayout();
    this.saver = new LayoutSaver((doc) => this.api.putLayout(this.projectId, doc));

    const ctx = this.context();
    this.views.set("ClassHierarchy", new HierarchyView(ctx));
    this.views.set("ClassDescription", new DescriptionView(ctx));
    this.views.set("Comments", new CommentsView(ctx));
    this.views.set("ProjectFeed", new FeedView(ctx));
    this.views.set("History", new HistoryView(ctx));
    this.views.set("QueryBuilder", new QueryView(ctx));
    this.views.set("Graph", new GraphView(ctx));

    this.tabBar = el("nav", { class: "tab-bar" });
    this.grid = el("main", { class: "view-grid" });
    clear(this.rootElement).append(
      el("header", { class: "top" },
         el("h1", {}, summary.name),
         el("span", { class: "project-id" }, this.projectId)),
      this.tabBar,
      this.grid,
    );

    await this.refreshThreadCounts();
    this.store.subscribe((_, envelope) => void this.onStoreChange(envelope));

    this.stream = new ProjectEventStream(
      (since) => this.api.eventsUrl(this.projectId, since),
      () => this.store.lastRevision,
      (envelope) => this.onEnvelope(envelope),
    );
    this.stream.start();

    window.addEventListener("hashchange", () => this.applyHash());
    const deepLink = parseLocationHash(window.location.hash);
    if (deepLink && deepLink.projectId === this.projectId) {
      this.applyHash();
    } else {
      this.showTab("Classes");
    }
  }

  stop() {
    this.stream?.close();
  }

  private applyHash() {
    const link = parseLocationHash(window.location.hash);
    if (!link || link.projectId !== this.projectId) return;
    this.selected = { entity: link.entity, displayName: link.entity.iri };
    this.showTab(link.tab);
  }

  private onEnvelope(envelope: EventEnvelope) {
    this.store.applyEvent(envelope);
  }

  private async onStoreChange(envelope: EventEnvelope | null): Promise<void> {
    if (envelope === null) {
      await this.refreshViews(["ClassHierarchy"]);
      return;
    }
    const affected: ViewKind[] = ["ProjectFeed"];
    if (envelope.event === "RevisionAppended") {
      affected.push("ClassHierarchy", "History", "ClassDescription", "Graph");
    } else if (envelope.event === "CommentPosted" || envelope.event === "ThreadStatusChanged") {
      affected.push("Comments", "ClassHierarchy");
    }
    await this.refreshViews(affected);
  }

  private async refreshThreadCounts(): Promise<void> {
    const threads: ThreadJson[] = await this.api.threads(this.projectId);
    const counts = new Map<string, number>();
    for (const thread of threads) {
      if (thread.status === "Open") {
        const key = entityKey(thread.entity);
        counts.set(key, (counts.get(key) ?? 0) + 1);
      }
    }
    this.store.setThreadCounts(counts);
  }

  private visibleKinds(): ViewKind[] {
    const tab = this.layout.tabs.find((t) => t.name === this.activeTab);
    return tab ? tab.views.map((view) => view.kind) : [];
  }

  private async refreshViews(kinds: ViewKind[]): Promise<void> {
    const visible = new Set(this.visibleKinds());
    for (const kind of kinds) {
      if (!visible.has(kind)) continue;
      const view = this.views.get(kind);
      if (view) await view.refresh();
    }
  }

  private showTab(tab: TabName) {
    this.activeTab = tab;
    this.renderTabBar();
    this.renderGrid();
    void this.refreshViews(this.visibleKinds());
  }

  private renderTabBar() {
    clear(this.tabBar);
    for (const tab of this.layout.tabs) {
      const button = el(
        "button",
        { class: tab.name === this.activeTab ? "tab active" : "tab" },
        tab.name,
      );
      button.addEventListener("click", () => this.showTab(tab.name));
      this.tabBar.append(button);
    }
  }

  private renderGrid() {
    clear(this.grid);
    const tab = this.layout.tabs.find((t) => t.name === this.activeTab);
    if (!tab) return;
    for (const descriptor of tab.views) {
      const view = this.views.get(descriptor.kind);
      if (!view) continue;
      const cell = el("div", {
        class: "grid-cell",
        style:
          `grid-column:${descriptor.col} / span ${descriptor.span};` +
          `grid-row:auto / span ${descriptor.rows};`,
      });
      cell.append(this.viewControls(tab.views, descriptor), view.element);
      this.grid.append(cell);
    }
  }

  /** Width buttons per view; any change is debounced into one layout PUT. */
  private viewControls(views: ViewDescriptor[], descriptor: ViewDescriptor): HTMLElement {
    const controls = el("div", { class: "cell-controls" });
    const adjust = (delta: number) => {
      descriptor.span = Math.min(12, Math.max(2, descriptor.span + delta));
      this.renderGrid();
      this.saver.change(this.layout);
    };
    const narrower = el("button", { title: "narrower" }, "−");
    narrower.addEventListener("click", () => adjust(-1));
    const wider = el("button", { title: "wider" }, "+");
    wider.addEventListener("click", () => adjust(1));
    const close = el("button", { title: "remove view" }, "×");
    close.addEventListener("click", () => {
      const index = views.indexOf(descriptor);
      if (index >= 0) views.splice(index, 1);
      this.renderGrid();
      this.saver.change(this.layout);
    });
    controls.append(narrower, wider, close);
    return controls;
  }

  /** Exposed for debugging in the console. */
  currentLayoutDocument(): string {
    return serializeLayout(this.layout);
  }
}

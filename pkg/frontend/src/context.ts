/** Shared wiring handed to every view. */

import { ApiClient } from "./api.js";
import { ProjectStore } from "./store.js";
import { EntityRef } from "./types.js";
import { TabName } from "./urls.js";

export interface Selection {
  entity: EntityRef;
  displayName: string;
}

export interface AppContext {
  api: ApiClient;
  store: ProjectStore;
  projectId: string;
  /** The token echoed into navigational URLs (downloads, exports). */
  urlToken: string;
  selection(): Selection | null;
  select(selection: Selection, navigate?: boolean): void;
  openTab(tab: TabName): void;
}

export interface View {
  element: HTMLElement;
  /** Called on activation and whenever the store signals a change. */
  refresh(): void | Promise<void>;
}

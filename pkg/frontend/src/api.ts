/** Typed client for the project-service HTTP API. Every mutation in the UI
 * goes through exactly one method here. */

import {
  CriteriaJson,
  EntityRef,
  EntityTagsJson,
  GraphJson,
  ProjectSummaryJson,
  RevisionJson,
  SearchResultJson,
  TagJson,
  ThreadJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export type EditAction =
  | { type: "CreateClass"; name: string; parent: string }
  | { type: "CreateEntity"; kind: string; name: string }
  | { type: "DeleteEntity"; entity: EntityRef }
  | { type: "AddParent"; cls: string; parent: string }
  | { type: "RemoveParent"; cls: string; parent: string }
  | {
      type: "SetAnnotation";
      subject: string;
      property: string;
      old: unknown | null;
      new: unknown;
    }
  | { type: "ApplyChanges"; changes: unknown[]; commitMessage?: string | null };

export class ApiClient {
  constructor(
    readonly base: string,
    private readonly token: string,
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    raw = false,
  ): Promise<T> {
    const headers: Record<string, string> = { Authorization: `Bearer ${this.token}` };
    let payload: string | undefined;
    if (body !== undefined) {
      headers["Content-Type"] = raw ? "text/plain" : "application/json";
      payload = raw ? (body as string) : JSON.stringify(body);
    }
    const response = await this.fetchFn(`${this.base}${path}`, {
      method,
      headers,
      body: payload,
    });
    if (!response.ok) {
      let message = response.statusText;
      try {
        const data = (await response.json()) as { error?: string };
        if (data.error) message = data.error;
      } catch {
        // non-JSON error body
      }
      throw new ApiError(response.status, message);
    }
    return (await response.json()) as T;
  }

  listProjects(): Promise<ProjectSummaryJson[]> {
    return this.request("GET", "/api/projects");
  }

  createProject(name: string): Promise<ProjectSummaryJson> {
    return this.request("POST", "/api/projects", { name });
  }

  getProject(projectId: string): Promise<ProjectSummaryJson> {
    return this.request("GET", `/api/projects/${projectId}`);
  }

  applyEdit(projectId: string, action: EditAction): Promise<RevisionJson> {
    return this.request("POST", `/api/projects/${projectId}/edits`, action);
  }

  revert(projectId: string, revisionNumber: number): Promise<RevisionJson> {
    return this.request("POST", `/api/projects/${projectId}/revisions/${revisionNumber}/revert`);
  }

  revisions(projectId: string, entityIri?: string): Promise<RevisionJson[]> {
    const query = entityIri ? `?entity=${encodeURIComponent(entityIri)}` : "";
    return this.request("GET", `/api/projects/${projectId}/revisions${query}`);
  }

  downloadUrl(projectId: string, revisionNumber: number): string {
    return `${this.base}/api/projects/${projectId}/revisions/${revisionNumber}/download`;
  }

  threads(projectId: string): Promise<ThreadJson[]> {
    return this.request("GET", `/api/projects/${projectId}/threads`);
  }

  createThread(projectId: string, entity: EntityRef, body: string): Promise<ThreadJson> {
    return this.request("POST", `/api/projects/${projectId}/threads`, { entity, body });
  }

  addComment(threadId: string, body: string): Promise<ThreadJson> {
    return this.request("POST", `/api/threads/${threadId}/comments`, { body });
  }

  setThreadStatus(threadId: string, status: "Open" | "Closed"): Promise<ThreadJson> {
    return this.request("POST", `/api/threads/${threadId}/status`, { status });
  }

  tags(projectId: string): Promise<TagJson[]> {
    return this.request("GET", `/api/projects/${projectId}/tags`);
  }

  entityTags(projectId: string): Promise<EntityTagsJson[]> {
    return this.request("GET", `/api/projects/${projectId}/entity-tags`);
  }

  search(
    projectId: string,
    criteria: CriteriaJson,
    limit = 200,
    offset = 0,
  ): Promise<{ results: SearchResultJson[] }> {
    return this.request(
      "POST",
      `/api/projects/${projectId}/search?limit=${limit}&offset=${offset}`,
      criteria,
    );
  }

  graph(
    projectId: string,
    rootIri: string,
    depth = 2,
    isolateIri?: string,
    hideIris: string[] = [],
  ): Promise<GraphJson> {
    const params = new URLSearchParams({ root: rootIri, depth: String(depth) });
    if (isolateIri) params.set("isolate", isolateIri);
    if (hideIris.length > 0) params.set("hide", hideIris.join(","));
    return this.request("GET", `/api/projects/${projectId}/graph?${params}`);
  }

  graphExportUrl(
    projectId: string,
    rootIri: string,
    format: "dot" | "svg",
    depth = 2,
    hideIris: string[] = [],
  ): string {
    const params = new URLSearchParams({
      root: rootIri,
      format,
      depth: String(depth),
    });
    if (hideIris.length > 0) params.set("hide", hideIris.join(","));
    return `${this.base}/api/projects/${projectId}/graph/export?${params}`;
  }

  async getLayout(projectId: string): Promise<string | null> {
    const data = await this.request<{ document: string | null }>(
      "GET",
      `/api/projects/${projectId}/layout`,
    );
    return data.document;
  }

  async putLayout(projectId: string, document: string): Promise<void> {
    await this.request("PUT", `/api/projects/${projectId}/layout`, document, true);
  }

  /** EventSource cannot send headers, so the stream URL carries the token. */
  eventsUrl(projectId: string, since: number): string {
    return `${this.base}/api/projects/${projectId}/events?since=${since}&token=${encodeURIComponent(this.token)}`;
  }
}

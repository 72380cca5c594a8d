/** Entry point: connection form, project picker, app boot. */

import { ApiClient } from "./api.js";
import { App } from "./app.js";
import { clear, el } from "./dom.js";
import { parseLocationHash } from "./urls.js";

const STORAGE_KEY = "ontoforge-session";

interface Session {
  base: string;
  token: string;
}

function savedSession(): Session | null {
  try {
    const raw = localStorage.getItem(STORAGE_KEY);
    return raw ? (JSON.parse(raw) as Session) : null;
  } catch {
    return null;
  }
}

function connectionForm(root: HTMLElement, onReady: (session: Session) => void) {
  const base = el("input", {
    type: "text",
    value: savedSession()?.base ?? window.location.origin,
    placeholder: "server URL",
  });
  const token = el("input", {
    type: "password",
    value: savedSession()?.token ?? "",
    placeholder: "access token",
  });
  const error = el("p", { class: "row-error" });
  const submit = el("button", { class: "primary" }, "Connect");
  submit.addEventListener("click", () => {
    const session = { base: base.value.replace(/\/$/, ""), token: token.value.trim() };
    if (!session.token) {
      error.textContent = "a token is required";
      return;
    }
    localStorage.setItem(STORAGE_KEY, JSON.stringify(session));
    onReady(session);
  });
  clear(root).append(
    el(
      "div",
      { class: "connect-card" },
      el("h1", {}, "ontoforge"),
      el("label", {}, "Server", base),
      el("label", {}, "Token", token),
      submit,
      error,
    ),
  );
}

async function projectPicker(root: HTMLElement, session: Session) {
  const api = new ApiClient(session.base, session.token);
  const open = (projectId: string) => {
    const app = new App(api, projectId, session.token, root);
    void app.start();
  };

  const deepLink = parseLocationHash(window.location.hash);
  if (deepLink) {
    open(deepLink.projectId);
    return;
  }

  let projects;
  try {
    projects = await api.listProjects();
  } catch (error) {
    connectionForm(root, (next) => void projectPicker(root, next));
    return;
  }
  const list = el("ul", { class: "project-list" });
  for (const project of projects) {
    const link = el("a", { href: "#" }, `${project.name} (r${project.headRevision})`);
    link.addEventListener("click", (event) => {
      event.preventDefault();
      open(project.id);
    });
    list.append(el("li", {}, link));
  }
  const nameInput = el("input", { type: "text", placeholder: "new project name" });
  const create = el("button", { class: "primary" }, "Create project");
  create.addEventListener("click", async () => {
    if (!nameInput.value.trim()) return;
    const project = await api.createProject(nameInput.value.trim());
    open(project.id);
  });
  clear(root).append(
    el(
      "div",
      { class: "connect-card" },
      el("h1", {}, "ontoforge"),
      el("h3", {}, "Your projects"),
      list,
      el("div", { class: "create-row" }, nameInput, create),
    ),
  );
}

const root = document.getElementById("app");
if (root) {
  const session = savedSession();
  if (session) {
    void projectPicker(root, session);
  } else {
    connectionForm(root, (next) => void projectPicker(root, next));
  }
}

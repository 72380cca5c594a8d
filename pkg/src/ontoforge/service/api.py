"""HTTP JSON API and the per-project server-sent event stream."""

from __future__ import annotations

import asyncio
import json
import logging
import queue
from typing import Any, Mapping, Optional

from fastapi import Body, Depends, FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse, StreamingResponse

from ..access import Action, PermissionDenied
from ..changes.model import (
    ChangeError,
    EmptyEdit,
    EmptyRevision,
    IneffectiveChange,
    NothingToRevert,
    UnknownEntity,
    UnknownOntology,
    UnknownRevision,
)
from ..collab.threads import EmptyBody, UnknownThread
from ..core.model import Iri, MalformedIri
from ..criteria.model import DuplicateTagLabel, InvalidRegex, SchemaError, UnknownTag
from ..criteria.wire import criteria_from_dict
from ..graph.build import CannotHideRoot, TooLarge
from ..graph.build import UnknownEntity as UnknownGraphEntity
from ..graph.export import DOT_MEDIA_TYPE, SVG_MEDIA_TYPE, export_graph
from ..graph.layout import layout_graph
from .project import (
    CannotModifyOwner,
    EmptyName,
    LayoutTooLarge,
    ProjectService,
    UnknownIri,
    UnknownProject,
)
from ..access import Role
from .urls import MalformedUrl, UnknownTab
from .wire import (
    WireError,
    edit_action_from_wire,
    entity_from_wire,
    entity_to_wire,
    revision_to_wire,
    tag_rule_from_wire,
    tag_rule_to_wire,
    tag_to_wire,
    thread_status_from_wire,
    thread_to_wire,
    webhook_to_wire,
)

logger = logging.getLogger(__name__)

_STATUS_BY_ERROR: tuple[tuple[type[Exception], int], ...] = (
    (PermissionDenied, 403),
    (UnknownProject, 404),
    (UnknownThread, 404),
    (UnknownRevision, 404),
    (UnknownTag, 404),
    (UnknownIri, 404),
    (UnknownGraphEntity, 404),
    (LayoutTooLarge, 413),
    (NothingToRevert, 409),
    (IneffectiveChange, 409),
    (DuplicateTagLabel, 409),
    (CannotModifyOwner, 409),
    (EmptyEdit, 400),
    (EmptyRevision, 400),
    (EmptyBody, 400),
    (EmptyName, 400),
    (UnknownEntity, 400),
    (UnknownOntology, 400),
    (SchemaError, 400),
    (InvalidRegex, 400),
    (WireError, 400),
    (MalformedIri, 400),
    (MalformedUrl, 400),
    (UnknownTab, 400),
    (CannotHideRoot, 400),
    (TooLarge, 400),
    (ChangeError, 400),
    (ValueError, 400),
)


class AuthError(Exception):
    pass


def _status_for(exc: Exception) -> int:
    for error_type, status in _STATUS_BY_ERROR:
        if isinstance(exc, error_type):
            return status
    return 500


def create_app(service: ProjectService, credentials: Mapping[str, str]) -> FastAPI:
    """Build the application. `credentials` maps bearer tokens to user ids."""
    app = FastAPI(title="ontoforge", docs_url=None, redoc_url=None)

    def current_user(request: Request) -> str:
        header = request.headers.get("authorization", "")
        if header.lower().startswith("bearer "):
            token = header[7:].strip()
            user = credentials.get(token)
            if user:
                return user
        raise AuthError("missing or invalid bearer token")

    def current_user_or_query_token(request: Request) -> str:
        # Browser EventSource cannot set headers; the stream alone accepts
        # the bearer token as a query parameter.
        token = request.query_params.get("token")
        if token:
            user = credentials.get(token)
            if user:
                return user
        return current_user(request)

    @app.exception_handler(AuthError)
    async def _auth_error(request: Request, exc: AuthError):
        return JSONResponse({"error": str(exc)}, status_code=401)

    async def _domain_error(request: Request, exc: Exception):
        return JSONResponse({"error": str(exc)}, status_code=_status_for(exc))

    for error_type, _status in _STATUS_BY_ERROR:
        app.add_exception_handler(error_type, _domain_error)

    def project_summary(project) -> dict[str, Any]:
        return {
            "id": project.id,
            "name": project.name,
            "owner": project.owner,
            "baseIri": project.base_iri.value,
            "ontologies": list(project.ontology_ids),
            "headRevision": project.log.head_number,
            "participants": [
                {"userId": user, "role": role.value}
                for user, role in sorted(project.participants.items())
            ],
        }

    # --- projects ---------------------------------------------------------

    @app.post("/api/projects", status_code=201)
    async def create_project(body: dict, user: str = Depends(current_user)):
        project = service.create_project(user, str(body.get("name", "")))
        return project_summary(project)

    @app.get("/api/projects")
    async def list_projects(user: str = Depends(current_user)):
        return [
            project_summary(project)
            for project in service.projects.values()
            if project.role_of(user) is not None
        ]

    @app.get("/api/projects/{project_id}")
    async def get_project(project_id: str, user: str = Depends(current_user)):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        return project_summary(project)

    # --- edits and history --------------------------------------------------

    @app.post("/api/projects/{project_id}/edits", status_code=201)
    async def post_edit(project_id: str, body: dict, user: str = Depends(current_user)):
        project = service.get_project(project_id)
        action = edit_action_from_wire(body, project.prefixes)
        revision = service.apply_edit(project_id, user, action)
        return revision_to_wire(revision)

    @app.post("/api/projects/{project_id}/revisions/{number}/revert", status_code=201)
    async def post_revert(project_id: str, number: int, user: str = Depends(current_user)):
        revision = service.revert_revision(project_id, user, number)
        return revision_to_wire(revision)

    @app.get("/api/projects/{project_id}/revisions")
    async def get_revisions(
        project_id: str,
        entity: Optional[str] = None,
        user: str = Depends(current_user),
    ):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        if entity is not None:
            revisions = project.log.iri_history(Iri(entity))
        else:
            revisions = list(project.log.revisions)
        return [revision_to_wire(revision) for revision in revisions]

    @app.get("/api/projects/{project_id}/revisions/{number}/download")
    async def download_revision(
        project_id: str, number: int,
        user: str = Depends(current_user_or_query_token),
    ):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        project.log.get(number) if number > 0 else None  # validates range below
        if number < 0 or number > project.log.head_number:
            raise UnknownRevision(number)
        filename, payload = service.export_revision_archive(project_id, number)
        return Response(
            content=payload,
            media_type="application/zip",
            headers={"Content-Disposition": f'attachment; filename="{filename}"'},
        )

    # --- threads and comments --------------------------------------------------

    @app.get("/api/projects/{project_id}/threads")
    async def get_threads(project_id: str, user: str = Depends(current_user)):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        threads = sorted(
            project.threads.all_threads(),
            key=lambda t: t.last_activity_ms,
            reverse=True,
        )
        return [thread_to_wire(thread) for thread in threads]

    @app.post("/api/projects/{project_id}/threads", status_code=201)
    async def post_thread(project_id: str, body: dict, user: str = Depends(current_user)):
        entity = entity_from_wire(body.get("entity"))
        thread = service.create_thread(project_id, user, entity, str(body.get("body", "")))
        return thread_to_wire(thread)

    @app.post("/api/threads/{thread_id}/comments", status_code=201)
    async def post_comment(thread_id: str, body: dict, user: str = Depends(current_user)):
        thread, comment = service.add_comment(thread_id, user, str(body.get("body", "")))
        return thread_to_wire(thread)

    @app.post("/api/threads/{thread_id}/status")
    async def post_thread_status(thread_id: str, body: dict, user: str = Depends(current_user)):
        status = thread_status_from_wire(body.get("status"))
        thread, _changed = service.set_thread_status(thread_id, user, status)
        return thread_to_wire(thread)

    # --- tags -----------------------------------------------------------------

    @app.get("/api/projects/{project_id}/tags")
    async def get_tags(project_id: str, user: str = Depends(current_user)):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        return [tag_to_wire(tag) for tag in project.tags.tags.values()]

    @app.post("/api/projects/{project_id}/tags", status_code=201)
    async def post_tag(project_id: str, body: dict, user: str = Depends(current_user)):
        tag = service.create_tag(
            project_id, user, str(body.get("label", "")),
            str(body.get("description", "")), str(body.get("color", "#d0d7de")),
        )
        return tag_to_wire(tag)

    @app.get("/api/projects/{project_id}/tag-rules")
    async def get_tag_rules(project_id: str, user: str = Depends(current_user)):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        return [tag_rule_to_wire(rule) for rule in project.tags.rules]

    @app.post("/api/projects/{project_id}/tag-rules")
    async def post_tag_rules(
        project_id: str,
        body: list = Body(...),
        user: str = Depends(current_user),
    ):
        rules = [tag_rule_from_wire(item) for item in body]
        service.set_tag_rules(project_id, user, rules)
        return [tag_rule_to_wire(rule) for rule in rules]

    @app.post("/api/projects/{project_id}/entity-tags")
    async def post_entity_tags(project_id: str, body: dict, user: str = Depends(current_user)):
        entity = entity_from_wire(body.get("entity"))
        displayed = service.set_entity_tags(project_id, user, entity, body.get("tagIds", []))
        return {"entity": entity_to_wire(entity), "tagIds": sorted(displayed)}

    @app.get("/api/projects/{project_id}/entity-tags")
    async def get_entity_tags(project_id: str, user: str = Depends(current_user)):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        doc = project.merged_document()
        out = []
        for entity in doc.entities:
            displayed = project.tags.displayed_tags(entity)
            if displayed:
                out.append({"entity": entity_to_wire(entity), "tagIds": sorted(displayed)})
        return out

    # --- membership and webhooks ---------------------------------------------------

    @app.get("/api/projects/{project_id}/participants")
    async def get_participants(project_id: str, user: str = Depends(current_user)):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        return [
            {"userId": uid, "role": role.value}
            for uid, role in sorted(project.participants.items())
        ]

    @app.post("/api/projects/{project_id}/participants")
    async def post_participant(project_id: str, body: dict, user: str = Depends(current_user)):
        role_name = body.get("role")
        role = None
        if role_name is not None:
            try:
                role = Role(role_name)
            except ValueError:
                raise WireError(f"unknown role {role_name!r}")
        project = service.set_participant_role(project_id, user, str(body.get("userId", "")), role)
        return [
            {"userId": uid, "role": r.value}
            for uid, r in sorted(project.participants.items())
        ]

    @app.get("/api/projects/{project_id}/webhooks")
    async def get_webhooks(project_id: str, user: str = Depends(current_user)):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        return [webhook_to_wire(hook) for hook in project.webhooks.values()]

    @app.post("/api/projects/{project_id}/webhooks", status_code=201)
    async def post_webhook(project_id: str, body: dict, user: str = Depends(current_user)):
        hook = service.add_webhook(
            project_id, user, body.get("kind"), str(body.get("url", "")),
            bool(body.get("enabled", True)),
        )
        return webhook_to_wire(hook)

    # --- search and graph -------------------------------------------------------

    @app.post("/api/projects/{project_id}/search")
    async def post_search(
        project_id: str,
        body: dict,
        limit: int = Query(50, ge=1),
        offset: int = Query(0, ge=0),
        user: str = Depends(current_user),
    ):
        criteria = criteria_from_dict(body)
        results = service.search(project_id, user, criteria, limit, offset)
        return {
            "results": [
                {"entity": entity_to_wire(entity), "displayName": name}
                for entity, name in results
            ]
        }

    def _graph_for(project_id: str, user: str, root: str, depth: int,
                   isolate: Optional[str], hide: Optional[str]):
        hide_iris = [Iri(h) for h in hide.split(",") if h] if hide else []
        return service.entity_graph(
            project_id, user, Iri(root), depth,
            isolate_iri=Iri(isolate) if isolate else None,
            hide_iris=hide_iris,
        )

    @app.get("/api/projects/{project_id}/graph")
    async def get_graph(
        project_id: str,
        root: str,
        depth: int = Query(2, ge=1),
        isolate: Optional[str] = None,
        hide: Optional[str] = None,
        user: str = Depends(current_user),
    ):
        graph = _graph_for(project_id, user, root, depth, isolate, hide)
        layout = layout_graph(graph)
        nodes = sorted(graph.nodes, key=lambda e: (graph.name_of(e), e.iri.value, e.kind.value))
        return {
            "root": entity_to_wire(graph.root),
            "nodes": [
                {
                    "entity": entity_to_wire(node),
                    "displayName": graph.name_of(node),
                    "x": layout[node][0],
                    "y": layout[node][1],
                }
                for node in nodes
            ],
            "edges": [
                {
                    "source": entity_to_wire(edge.source),
                    "target": entity_to_wire(edge.target),
                    "kind": edge.kind.value,
                    "label": edge.label,
                    "propertyIri": edge.property_iri.value if edge.property_iri else None,
                }
                for edge in sorted(
                    graph.edges,
                    key=lambda e: (e.source.iri.value, e.target.iri.value, e.kind.value, e.label),
                )
            ],
        }

    @app.get("/api/projects/{project_id}/graph/export")
    async def get_graph_export(
        project_id: str,
        root: str,
        format: str = "dot",
        depth: int = Query(2, ge=1),
        isolate: Optional[str] = None,
        hide: Optional[str] = None,
        user: str = Depends(current_user_or_query_token),
    ):
        graph = _graph_for(project_id, user, root, depth, isolate, hide)
        if format == "dot":
            return Response(content=export_graph(graph, format="dot"), media_type=DOT_MEDIA_TYPE)
        if format == "svg":
            return Response(
                content=export_graph(graph, layout_graph(graph), format="svg"),
                media_type=SVG_MEDIA_TYPE,
            )
        raise WireError(f"unknown export format {format!r}")

    # --- layout -----------------------------------------------------------------

    @app.get("/api/projects/{project_id}/layout")
    async def get_layout(project_id: str, user: str = Depends(current_user)):
        document = service.get_layout(project_id, user)
        return {"document": document}

    @app.put("/api/projects/{project_id}/layout")
    async def put_layout(project_id: str, request: Request, user: str = Depends(current_user)):
        raw = await request.body()
        service.set_layout(project_id, user, raw.decode("utf-8"))
        return {"document": service.get_layout(project_id, user)}

    # --- events ------------------------------------------------------------------

    @app.get("/api/projects/{project_id}/events")
    async def get_events(
        project_id: str,
        since: int = Query(0, ge=0),
        user: str = Depends(current_user_or_query_token),
    ):
        project = service.get_project(project_id)
        service.require_role(project, user, Action.READ)
        bus = project.bus
        replay, live = bus.subscribe(since)

        async def stream():
            # Polled rather than blocked on so a disconnect cancels promptly.
            try:
                for envelope in replay:
                    yield f"data: {json.dumps(envelope.to_json())}\n\n"
                idle = 0.0
                while True:
                    try:
                        envelope = live.get_nowait()
                    except queue.Empty:
                        await asyncio.sleep(0.05)
                        idle += 0.05
                        if idle >= 15.0:
                            yield ": keepalive\n\n"
                            idle = 0.0
                        continue
                    yield f"data: {json.dumps(envelope.to_json())}\n\n"
                    idle = 0.0
            finally:
                bus.unsubscribe(live)

        return StreamingResponse(
            stream(),
            media_type="text/event-stream",
            headers={"Cache-Control": "no-cache", "X-Accel-Buffering": "no"},
        )

    return app

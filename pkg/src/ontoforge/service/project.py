"""Project aggregate and the service composing every subsystem.

One logical writer per project: every mutating call runs under the project
lock, appends at least one persistence record and publishes exactly one event
envelope, or fails having done neither. Reads snapshot immutable values and
never block behind long operations.
"""

from __future__ import annotations

import io
import logging
import threading
import uuid
import zipfile
from pathlib import Path
from typing import Any, Callable, Iterable

from ..access import Action, Role, require
from ..changes.compile import compile_edit, default_minter, focal_entity, generate_label
from ..changes.log import RevisionLog, now_ms
from ..changes.model import ApplyChanges, EditAction, IneffectiveChange, Revision
from ..collab.dispatch import WebhookDispatcher
from ..collab.markdown import ParsedBody, parse_comment_body
from ..collab.notifications import OutboxMessage, WebhookConfig, emit_notifications
from ..collab.threads import CommentThread, ThreadStatus, ThreadStore, thread_counts
from ..core.model import Entity, EntityKind, Iri, OntologyDocument, PrefixTable
from ..core.queries import display_name
from ..core.serializer import serialize_ontology
from ..criteria.matching import MatchContext, search
from ..criteria.model import CriteriaNode, Tag, TagRule
from ..criteria.tags import TagStore
from ..graph.build import EntityGraph, build_graph, hide_nodes, isolate_paths
from . import persistence
from .events import (
    COMMENT_POSTED,
    EventBus,
    EventEnvelope,
    NOTIFYING_EVENTS,
    PROJECT_SETTINGS_CHANGED,
    REVISION_APPENDED,
    THREAD_STATUS_CHANGED,
)
from .urls import entity_url
from .wire import (
    entity_from_wire,
    entity_to_wire,
    revision_from_wire,
    revision_to_wire,
    tag_rule_from_wire,
    tag_rule_to_wire,
    thread_from_wire,
    thread_to_wire,
    webhook_kind_from_wire,
)

logger = logging.getLogger(__name__)

LAYOUT_LIMIT_BYTES = 64 * 1024

# Order used when an IRI alone must pick one of several punned entities.
_KIND_PRIORITY = (
    EntityKind.CLASS,
    EntityKind.NAMED_INDIVIDUAL,
    EntityKind.OBJECT_PROPERTY,
    EntityKind.DATA_PROPERTY,
    EntityKind.ANNOTATION_PROPERTY,
    EntityKind.DATATYPE,
)


class ServiceError(Exception):
    pass


class UnknownProject(ServiceError):
    def __init__(self, project_id: str):
        super().__init__(f"unknown project {project_id!r}")
        self.project_id = project_id


class EmptyName(ServiceError):
    pass


class CannotModifyOwner(ServiceError):
    pass


class LayoutTooLarge(ServiceError):
    pass


class UnknownIri(ServiceError):
    def __init__(self, iri: Iri):
        super().__init__(f"no entity with IRI {iri}")
        self.iri = iri


class Project:
    def __init__(
        self,
        project_id: str,
        name: str,
        owner: str,
        base_iri: Iri,
        ontology_ids: list[str],
        clock: Callable[[], int],
    ):
        self.id = project_id
        self.name = name
        self.owner = owner
        self.base_iri = base_iri
        self.ontology_ids = list(ontology_ids)
        self.prefixes = PrefixTable.standard()
        self.log = RevisionLog(ontology_ids, clock=clock)
        self.threads = ThreadStore(clock=clock)
        self.tags = TagStore()
        self.webhooks: dict[str, WebhookConfig] = {}
        self.participants: dict[str, Role] = {owner: Role.OWNER}
        self.layouts: dict[str, str] = {}
        self.outbox: list[OutboxMessage] = []
        self.bus = EventBus()
        self.lock = threading.RLock()
        self._doc_cache: tuple[int, OntologyDocument] | None = None

    def role_of(self, user: str) -> Role | None:
        return self.participants.get(user)

    def merged_document(self) -> OntologyDocument:
        """All ontologies' axioms as one read-only document, cached per head."""
        head = self.log.head_number
        if self._doc_cache is not None and self._doc_cache[0] == head:
            return self._doc_cache[1]
        axioms: list = []
        state = self.log.head_state
        for ontology_id in self.ontology_ids:
            axioms.extend(state.get(ontology_id, {}))
        doc = OntologyDocument(None, self.prefixes, tuple(axioms))
        self._doc_cache = (head, doc)
        return doc

    def document_for(self, ontology_id: str, number: int | None = None) -> OntologyDocument:
        state = self.log.state_at(number) if number is not None else self.log.head_state
        return OntologyDocument(
            Iri(f"{self.base_iri.value}/{ontology_id}"),
            self.prefixes,
            tuple(state.get(ontology_id, {})),
        )

    def resolve_iri(self, iri: Iri) -> Entity | None:
        candidates = [e for e in self.merged_document().entities if e.iri == iri]
        if not candidates:
            return None
        candidates.sort(key=lambda e: _KIND_PRIORITY.index(e.kind))
        return candidates[0]

    def body_parser(self) -> Callable[[str], ParsedBody]:
        doc = self.merged_document()
        project_id = self.id

        def href(entity: Entity) -> str:
            return entity_url(project_id, "Comments", entity)

        def parse(body: str) -> ParsedBody:
            return parse_comment_body(body, self.prefixes, self.resolve_iri, href)

        return parse

    def match_context(self, manual_only: bool = False) -> MatchContext:
        tags_of = self.tags.manual_tags if manual_only else self.tags.displayed_tags
        return MatchContext(self.merged_document(), tags_of=tags_of)

    def thread_badges(self) -> dict[Entity, int]:
        return thread_counts(self.threads.all_threads())

    # --- snapshot form -------------------------------------------------------

    def to_snapshot(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "name": self.name,
            "owner": self.owner,
            "baseIri": self.base_iri.value,
            "ontologies": list(self.ontology_ids),
            "revisions": [revision_to_wire(r) for r in self.log.revisions],
            "threads": [thread_to_wire(t) for t in self.threads.all_threads()],
            "tags": [
                {"id": t.id, "label": t.label, "description": t.description, "color": t.color}
                for t in self.tags.tags.values()
            ],
            "tagRules": [tag_rule_to_wire(r) for r in self.tags.rules],
            "manualTags": [
                {"entity": entity_to_wire(entity), "tagIds": sorted(ids)}
                for entity, ids in self.tags.all_manual().items()
            ],
            "participants": {user: role.value for user, role in self.participants.items()},
            "webhooks": [
                {"id": h.id, "kind": h.kind.value, "url": h.url, "enabled": h.enabled}
                for h in self.webhooks.values()
            ],
            "layouts": dict(self.layouts),
        }

    @classmethod
    def from_snapshot(cls, data: dict[str, Any], clock: Callable[[], int]) -> "Project":
        project = cls(
            data["id"], data["name"], data["owner"],
            Iri(data["baseIri"]), list(data["ontologies"]), clock,
        )
        for revision_data in data["revisions"]:
            project.log.restore(revision_from_wire(revision_data, project.prefixes))
        for thread_data in data["threads"]:
            thread = thread_from_wire(thread_data)
            project.threads.threads[thread.id] = thread
        for tag_data in data["tags"]:
            project.tags.create_tag(
                tag_data["label"], tag_data.get("description", ""),
                tag_data.get("color", "#d0d7de"), tag_id=tag_data["id"],
            )
        project.tags.set_rules([tag_rule_from_wire(r) for r in data["tagRules"]])
        project.tags.restore_manual({
            entity_from_wire(item["entity"]): frozenset(item["tagIds"])
            for item in data["manualTags"]
        })
        project.participants = {
            user: Role(role) for user, role in data["participants"].items()
        }
        for hook_data in data["webhooks"]:
            project.webhooks[hook_data["id"]] = WebhookConfig(
                hook_data["id"], webhook_kind_from_wire(hook_data["kind"]),
                hook_data["url"], hook_data.get("enabled", True),
            )
        project.layouts = dict(data["layouts"])
        return project


class ProjectService:
    """Composition root: owns projects, persistence, events, webhooks."""

    def __init__(
        self,
        data_dir: Path | str | None = None,
        *,
        clock: Callable[[], int] | None = None,
        dispatcher: WebhookDispatcher | None = None,
        minter: Callable[[], str] | None = None,
    ):
        self.data_dir = Path(data_dir) if data_dir is not None else None
        if self.data_dir is not None:
            self.data_dir.mkdir(parents=True, exist_ok=True)
        self.clock = clock or now_ms
        self.dispatcher = dispatcher or WebhookDispatcher()
        self.minter = minter or default_minter
        self.projects: dict[str, Project] = {}
        self._thread_index: dict[str, str] = {}
        if self.data_dir is not None:
            self._load_all()

    # --- lookup ---------------------------------------------------------------

    def get_project(self, project_id: str) -> Project:
        project = self.projects.get(project_id)
        if project is None:
            raise UnknownProject(project_id)
        return project

    def project_for_thread(self, thread_id: str) -> Project:
        project_id = self._thread_index.get(thread_id)
        if project_id is None:
            from ..collab.threads import UnknownThread

            raise UnknownThread(thread_id)
        return self.get_project(project_id)

    def require_role(self, project: Project, user: str, action: Action) -> Role:
        role = project.role_of(user)
        require(role, action)
        return role  # type: ignore[return-value]

    # --- persistence plumbing --------------------------------------------------

    def _log_path(self, project_id: str) -> Path:
        assert self.data_dir is not None
        return self.data_dir / f"{project_id}.log"

    def _snapshot_path(self, project_id: str) -> Path:
        assert self.data_dir is not None
        return self.data_dir / f"{project_id}.snapshot"

    def _persist(self, project: Project, record: dict[str, Any]) -> None:
        if self.data_dir is None:
            return
        persistence.append_record(self._log_path(project.id), record)

    def _emit(
        self,
        project: Project,
        envelope: EventEnvelope,
        *,
        comment_body: str | None = None,
        status_value: str | None = None,
        revision_label: str | None = None,
    ) -> None:
        project.bus.publish(envelope)
        if envelope.event not in NOTIFYING_EVENTS:
            return
        doc = project.merged_document()
        display = display_name(doc, envelope.entity) if envelope.entity else ""
        deep_link = None
        if envelope.entity is not None:
            tab = "Comments" if envelope.event != REVISION_APPENDED else "Classes"
            deep_link = entity_url(project.id, tab, envelope.entity)
        outbox, deliveries = emit_notifications(
            envelope.to_json(),
            participants=list(project.participants),
            webhooks=list(project.webhooks.values()),
            project_name=project.name,
            display_name=display,
            deep_link=deep_link,
            comment_body=comment_body,
            status_value=status_value,
            revision_label=revision_label,
        )
        project.outbox.extend(outbox)
        self.dispatcher.enqueue(deliveries)

    # --- project lifecycle ------------------------------------------------------

    def create_project(self, owner: str, name: str) -> Project:
        if not name.strip():
            raise EmptyName("project name is empty")
        project_id = f"p-{uuid.uuid4().hex[:10]}"
        project = Project(
            project_id, name.strip(), owner,
            Iri(f"http://ontoforge.example/projects/{project_id}"),
            ["ontology"], self.clock,
        )
        self.projects[project_id] = project
        self._persist(project, {
            "type": "project-created",
            "id": project.id,
            "name": project.name,
            "owner": owner,
            "baseIri": project.base_iri.value,
            "ontologies": list(project.ontology_ids),
        })
        return project

    # --- editing -----------------------------------------------------------------

    def apply_edit(self, project_id: str, user: str, action: EditAction) -> Revision:
        project = self.get_project(project_id)
        with project.lock:
            self.require_role(project, user, Action.EDIT)
            ops = compile_edit(
                action,
                project.log.head_state,
                project.prefixes,
                base_iri=project.base_iri,
                minter=self.minter,
            )
            label = generate_label(action)
            message = action.commit_message if isinstance(action, ApplyChanges) else None
            revision = project.log.append(ops, user, label, message)
            self._persist(project, {"type": "revision", **revision_to_wire(revision)})
            project.tags.evaluate_rules(project.merged_document())
            envelope = EventEnvelope(
                project.id, REVISION_APPENDED, user, self.clock(),
                entity=focal_entity(action, ops), revision_number=revision.number,
            )
            self._emit(project, envelope, revision_label=label)
            return revision

    def revert_revision(self, project_id: str, user: str, number: int) -> Revision:
        project = self.get_project(project_id)
        with project.lock:
            self.require_role(project, user, Action.EDIT)
            revision = project.log.revert(number, user)
            self._persist(project, {"type": "revision", **revision_to_wire(revision)})
            project.tags.evaluate_rules(project.merged_document())
            envelope = EventEnvelope(
                project.id, REVISION_APPENDED, user, self.clock(),
                revision_number=revision.number,
            )
            self._emit(project, envelope, revision_label=revision.label)
            return revision

    def export_revision_archive(self, project_id: str, number: int) -> tuple[str, bytes]:
        project = self.get_project(project_id)
        with project.lock:
            documents = {
                ontology_id: project.document_for(ontology_id, number)
                for ontology_id in project.ontology_ids
            }
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:
            for ontology_id, doc in documents.items():
                archive.writestr(f"{ontology_id}.ofn", serialize_ontology(doc))
        return f"project-{project_id}-r{number}.zip", buffer.getvalue()

    # --- collaboration --------------------------------------------------------------

    def create_thread(self, project_id: str, user: str, entity: Entity, body: str) -> CommentThread:
        project = self.get_project(project_id)
        with project.lock:
            role = project.role_of(user)
            thread = project.threads.create_thread(entity, user, body, role, project.body_parser())
            self._thread_index[thread.id] = project.id
            comment = thread.comments[0]
            self._persist(project, {
                "type": "thread-created",
                "threadId": thread.id,
                "entity": entity_to_wire(entity),
                "author": user,
                "body": body,
                "commentId": comment.id,
                "timestampMs": comment.timestamp_ms,
            })
            envelope = EventEnvelope(
                project.id, COMMENT_POSTED, user, self.clock(), entity=entity,
            )
            self._emit(project, envelope, comment_body=body)
            return thread

    def add_comment(self, thread_id: str, user: str, body: str):
        project = self.project_for_thread(thread_id)
        with project.lock:
            role = project.role_of(user)
            comment = project.threads.add_comment(
                thread_id, user, body, role, project.body_parser()
            )
            thread = project.threads.get(thread_id)
            self._persist(project, {
                "type": "comment-added",
                "threadId": thread_id,
                "commentId": comment.id,
                "author": user,
                "body": body,
                "timestampMs": comment.timestamp_ms,
            })
            envelope = EventEnvelope(
                project.id, COMMENT_POSTED, user, self.clock(), entity=thread.entity,
            )
            self._emit(project, envelope, comment_body=body)
            return thread, comment

    def set_thread_status(self, thread_id: str, user: str, status: ThreadStatus):
        project = self.project_for_thread(thread_id)
        with project.lock:
            role = project.role_of(user)
            thread, changed = project.threads.set_status(thread_id, status, role)
            if not changed:
                return thread, False
            self._persist(project, {
                "type": "thread-status",
                "threadId": thread_id,
                "status": status.value,
            })
            envelope = EventEnvelope(
                project.id, THREAD_STATUS_CHANGED, user, self.clock(), entity=thread.entity,
            )
            self._emit(project, envelope, status_value=status.value)
            return thread, True

    # --- tags ------------------------------------------------------------------------

    def create_tag(self, project_id: str, user: str, label: str,
                   description: str = "", color: str = "#d0d7de") -> Tag:
        project = self.get_project(project_id)
        with project.lock:
            self.require_role(project, user, Action.EDIT)
            tag = project.tags.create_tag(label, description, color)
            self._persist(project, {
                "type": "tag-created",
                "id": tag.id, "label": tag.label,
                "description": tag.description, "color": tag.color,
            })
            self._emit_settings(project, user)
            return tag

    def set_tag_rules(self, project_id: str, user: str, rules: list[TagRule]) -> list[TagRule]:
        project = self.get_project(project_id)
        with project.lock:
            self.require_role(project, user, Action.EDIT)
            project.tags.set_rules(rules)
            project.tags.evaluate_rules(project.merged_document())
            self._persist(project, {
                "type": "tag-rules-set",
                "rules": [tag_rule_to_wire(rule) for rule in rules],
            })
            self._emit_settings(project, user)
            return rules

    def set_entity_tags(self, project_id: str, user: str, entity: Entity,
                        tag_ids: Iterable[str]) -> frozenset[str]:
        project = self.get_project(project_id)
        with project.lock:
            role = project.role_of(user)
            displayed = project.tags.set_entity_tags(entity, tag_ids, role)
            self._persist(project, {
                "type": "entity-tags-set",
                "entity": entity_to_wire(entity),
                "tagIds": sorted(project.tags.manual_tags(entity)),
            })
            self._emit_settings(project, user)
            return displayed

    def _emit_settings(self, project: Project, user: str) -> None:
        self._emit(project, EventEnvelope(
            project.id, PROJECT_SETTINGS_CHANGED, user, self.clock(),
        ))

    # --- membership and webhooks ---------------------------------------------------------

    def set_participant_role(self, project_id: str, actor: str, user: str,
                             role: Role | None) -> Project:
        project = self.get_project(project_id)
        with project.lock:
            self.require_role(project, actor, Action.ADMIN)
            if user == project.owner:
                raise CannotModifyOwner("the owner's role is immutable")
            if role is None:
                project.participants.pop(user, None)
            else:
                project.participants[user] = role
            self._persist(project, {
                "type": "participant-set",
                "userId": user,
                "role": role.value if role else None,
            })
            self._emit_settings(project, actor)
            return project

    def add_webhook(self, project_id: str, user: str, kind: str, url: str,
                    enabled: bool = True) -> WebhookConfig:
        project = self.get_project(project_id)
        with project.lock:
            self.require_role(project, user, Action.ADMIN)
            hook = WebhookConfig(
                f"wh-{uuid.uuid4().hex[:8]}", webhook_kind_from_wire(kind), url, enabled,
            )
            project.webhooks[hook.id] = hook
            self._persist(project, {
                "type": "webhook-set",
                "id": hook.id, "kind": hook.kind.value,
                "url": hook.url, "enabled": hook.enabled,
            })
            self._emit_settings(project, user)
            return hook

    # --- layout ------------------------------------------------------------------------

    def set_layout(self, project_id: str, user: str, document: str) -> None:
        project = self.get_project(project_id)
        with project.lock:
            self.require_role(project, user, Action.READ)
            if len(document.encode("utf-8")) > LAYOUT_LIMIT_BYTES:
                raise LayoutTooLarge(f"layout document exceeds {LAYOUT_LIMIT_BYTES} bytes")
            project.layouts[user] = document
            self._persist(project, {
                "type": "layout-set", "userId": user, "document": document,
            })
            self._emit_settings(project, user)

    def get_layout(self, project_id: str, user: str) -> str | None:
        project = self.get_project(project_id)
        self.require_role(project, user, Action.READ)
        return project.layouts.get(user)

    # --- queries -----------------------------------------------------------------------

    def search(self, project_id: str, user: str, criteria: CriteriaNode,
               limit: int = 50, offset: int = 0) -> list[tuple[Entity, str]]:
        project = self.get_project(project_id)
        self.require_role(project, user, Action.READ)
        with project.lock:
            ctx = project.match_context()
        return search(ctx, criteria, limit, offset)

    def entity_graph(
        self,
        project_id: str,
        user: str,
        root_iri: Iri,
        depth: int = 2,
        isolate_iri: Iri | None = None,
        hide_iris: Iterable[Iri] = (),
    ) -> EntityGraph:
        project = self.get_project(project_id)
        self.require_role(project, user, Action.READ)
        with project.lock:
            doc = project.merged_document()
            root = project.resolve_iri(root_iri)
        if root is None:
            raise UnknownIri(root_iri)
        graph = build_graph(doc, root, depth)
        hide_set = {node for node in graph.nodes if node.iri in set(hide_iris)}
        if hide_set:
            graph = hide_nodes(graph, hide_set)
        if isolate_iri is not None:
            targets = [node for node in graph.nodes if node.iri == isolate_iri]
            if not targets:
                raise UnknownIri(isolate_iri)
            targets.sort(key=lambda e: _KIND_PRIORITY.index(e.kind))
            graph = isolate_paths(graph, root, targets[0])
        return graph

    # --- durability ----------------------------------------------------------------------

    def snapshot_project(self, project_id: str) -> None:
        """Compact the replay prefix: later loads start from this state."""
        if self.data_dir is None:
            return
        project = self.get_project(project_id)
        with project.lock:
            state = project.to_snapshot()
            offset = persistence.log_size(self._log_path(project_id))
        persistence.write_snapshot(self._snapshot_path(project_id), state, offset)

    def _load_all(self) -> None:
        assert self.data_dir is not None
        for log_path in sorted(self.data_dir.glob("*.log")):
            project_id = log_path.stem
            try:
                self._load_project(project_id)
            except persistence.CorruptLog:
                raise
            except Exception:
                logger.exception("failed to load project %s", project_id)
                raise

    def _load_project(self, project_id: str) -> Project:
        log_path = self._log_path(project_id)
        snapshot = persistence.read_snapshot(self._snapshot_path(project_id))
        project: Project | None = None
        start_offset = 0
        if snapshot is not None:
            state, start_offset = snapshot
            project = Project.from_snapshot(state, self.clock)
        records, _ = persistence.read_records(log_path, start_offset)
        for record in records:
            project = self._apply_record(project, record)
        if project is None:
            raise persistence.CorruptLog(0, "log contains no project-created record")
        project.tags.evaluate_rules(project.merged_document())
        self.projects[project.id] = project
        for thread_id in project.threads.threads:
            self._thread_index[thread_id] = project.id
        return project

    def _apply_record(self, project: Project | None, record: dict[str, Any]) -> Project:
        record_type = record.get("type")
        if record_type == "project-created":
            return Project(
                record["id"], record["name"], record["owner"],
                Iri(record["baseIri"]), list(record["ontologies"]), self.clock,
            )
        if project is None:
            raise persistence.CorruptLog(0, f"record {record_type!r} precedes project-created")
        if record_type == "revision":
            try:
                project.log.restore(revision_from_wire(record, project.prefixes))
            except IneffectiveChange as exc:
                raise persistence.CorruptLog(0, f"replay hit a no-op change: {exc}") from exc
        elif record_type == "thread-created":
            thread = project.threads.create_thread(
                entity_from_wire(record["entity"]), record["author"], record["body"],
                Role.OWNER, project.body_parser(),
                thread_id=record["threadId"], comment_id=record["commentId"],
                timestamp_ms=record["timestampMs"],
            )
            self._thread_index[thread.id] = project.id
        elif record_type == "comment-added":
            project.threads.add_comment(
                record["threadId"], record["author"], record["body"],
                Role.OWNER, project.body_parser(),
                comment_id=record["commentId"], timestamp_ms=record["timestampMs"],
            )
        elif record_type == "thread-status":
            thread = project.threads.get(record["threadId"])
            thread.status = ThreadStatus(record["status"])
        elif record_type == "tag-created":
            project.tags.create_tag(
                record["label"], record.get("description", ""),
                record.get("color", "#d0d7de"), tag_id=record["id"],
            )
        elif record_type == "tag-rules-set":
            project.tags.set_rules([tag_rule_from_wire(r) for r in record["rules"]])
        elif record_type == "entity-tags-set":
            entity = entity_from_wire(record["entity"])
            project.tags.restore_manual({
                **project.tags.all_manual(), entity: frozenset(record["tagIds"]),
            })
        elif record_type == "participant-set":
            if record["role"] is None:
                project.participants.pop(record["userId"], None)
            else:
                project.participants[record["userId"]] = Role(record["role"])
        elif record_type == "webhook-set":
            hook = WebhookConfig(
                record["id"], webhook_kind_from_wire(record["kind"]),
                record["url"], record.get("enabled", True),
            )
            project.webhooks[hook.id] = hook
        elif record_type == "layout-set":
            project.layouts[record["userId"]] = record["document"]
        else:
            raise persistence.CorruptLog(0, f"unknown record type {record_type!r}")
        return project

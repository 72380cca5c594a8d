"""JSON codecs for the HTTP API and the persistence records.

Axioms travel as single-line functional-syntax strings; everything else is
plain JSON objects with camelCase keys.
"""

from __future__ import annotations

from typing import Any

from ..changes.model import (
    AddAxiom,
    AddParent,
    ApplyChanges,
    ChangeOp,
    CreateClass,
    CreateEntity,
    DeleteEntity,
    EditAction,
    RemoveAxiom,
    RemoveParent,
    Revision,
    SetAnnotation,
)
from ..collab.notifications import WebhookConfig, WebhookKind
from ..collab.threads import Comment, CommentThread, ThreadStatus
from ..core.model import (
    AnnotationValue,
    Axiom,
    Entity,
    EntityKind,
    Iri,
    IriValue,
    Literal,
    MalformedIri,
    PrefixTable,
)
from ..core.parser import ParseError, parse_axiom
from ..core.serializer import serialize_axiom
from ..criteria.model import Tag, TagRule
from ..criteria.wire import criteria_from_dict, criteria_to_dict


class WireError(Exception):
    """Malformed request or record payload."""


_KINDS = {kind.value: kind for kind in EntityKind}


def _require(data: dict, key: str) -> Any:
    if key not in data:
        raise WireError(f"missing field {key!r}")
    return data[key]


def _string(data: dict, key: str) -> str:
    value = _require(data, key)
    if not isinstance(value, str):
        raise WireError(f"field {key!r} must be a string")
    return value


def iri_from_wire(value: Any, key: str = "iri") -> Iri:
    if not isinstance(value, str):
        raise WireError(f"field {key!r} must be an IRI string")
    try:
        return Iri(value)
    except MalformedIri as exc:
        raise WireError(str(exc)) from exc


def entity_to_wire(entity: Entity) -> dict:
    return {"kind": entity.kind.value, "iri": entity.iri.value}


def entity_from_wire(data: Any) -> Entity:
    if not isinstance(data, dict):
        raise WireError("entity must be an object with kind and iri")
    kind = _KINDS.get(_string(data, "kind"))
    if kind is None:
        raise WireError(f"unknown entity kind {data.get('kind')!r}")
    return Entity(kind, iri_from_wire(_require(data, "iri")))


def value_to_wire(value: AnnotationValue) -> dict:
    if isinstance(value, Literal):
        return {
            "type": "literal",
            "lexical": value.lexical,
            "lang": value.language,
            "datatype": value.datatype.value if value.datatype else None,
        }
    return {"type": "iri", "iri": value.iri.value}


def value_from_wire(data: Any) -> AnnotationValue:
    if not isinstance(data, dict):
        raise WireError("annotation value must be an object")
    value_type = _string(data, "type")
    if value_type == "literal":
        lang = data.get("lang")
        datatype = data.get("datatype")
        return Literal(
            _string(data, "lexical"),
            language=lang if isinstance(lang, str) else None,
            datatype=iri_from_wire(datatype, "datatype") if isinstance(datatype, str) else None,
        )
    if value_type == "iri":
        return IriValue(iri_from_wire(_require(data, "iri")))
    raise WireError(f"unknown annotation value type {value_type!r}")


def axiom_to_wire(axiom: Axiom) -> str:
    return serialize_axiom(axiom)


def axiom_from_wire(text: Any, prefixes: PrefixTable) -> Axiom:
    if not isinstance(text, str):
        raise WireError("axiom must be a functional-syntax string")
    try:
        return parse_axiom(text, prefixes)
    except ParseError as exc:
        raise WireError(f"bad axiom: {exc}") from exc


def change_op_to_wire(op: ChangeOp) -> dict:
    return {
        "op": "add" if isinstance(op, AddAxiom) else "remove",
        "ontologyId": op.ontology_id,
        "axiom": axiom_to_wire(op.axiom),
    }


def change_op_from_wire(data: Any, prefixes: PrefixTable) -> ChangeOp:
    if not isinstance(data, dict):
        raise WireError("change op must be an object")
    direction = _string(data, "op")
    ontology_id = _string(data, "ontologyId")
    axiom = axiom_from_wire(_require(data, "axiom"), prefixes)
    if direction == "add":
        return AddAxiom(ontology_id, axiom)
    if direction == "remove":
        return RemoveAxiom(ontology_id, axiom)
    raise WireError(f"unknown change direction {direction!r}")


def revision_to_wire(revision: Revision) -> dict:
    return {
        "number": revision.number,
        "author": revision.author,
        "timestampMs": revision.timestamp_ms,
        "label": revision.label,
        "commitMessage": revision.commit_message,
        "changes": [change_op_to_wire(op) for op in revision.changes],
    }


def revision_from_wire(data: dict, prefixes: PrefixTable) -> Revision:
    return Revision(
        number=int(_require(data, "number")),
        author=_string(data, "author"),
        timestamp_ms=int(_require(data, "timestampMs")),
        label=_string(data, "label"),
        commit_message=data.get("commitMessage"),
        changes=tuple(change_op_from_wire(op, prefixes) for op in _require(data, "changes")),
    )


def edit_action_from_wire(data: Any, prefixes: PrefixTable) -> EditAction:
    if not isinstance(data, dict):
        raise WireError("edit action must be an object")
    action_type = _string(data, "type")
    if action_type == "CreateClass":
        return CreateClass(_string(data, "name"), iri_from_wire(_require(data, "parent"), "parent"))
    if action_type == "CreateEntity":
        kind = _KINDS.get(_string(data, "kind"))
        if kind is None:
            raise WireError(f"unknown entity kind {data.get('kind')!r}")
        return CreateEntity(kind, _string(data, "name"))
    if action_type == "DeleteEntity":
        return DeleteEntity(entity_from_wire(_require(data, "entity")))
    if action_type == "AddParent":
        return AddParent(
            iri_from_wire(_require(data, "cls"), "cls"),
            iri_from_wire(_require(data, "parent"), "parent"),
        )
    if action_type == "RemoveParent":
        return RemoveParent(
            iri_from_wire(_require(data, "cls"), "cls"),
            iri_from_wire(_require(data, "parent"), "parent"),
        )
    if action_type == "SetAnnotation":
        old = data.get("old")
        return SetAnnotation(
            subject=iri_from_wire(_require(data, "subject"), "subject"),
            property=iri_from_wire(_require(data, "property"), "property"),
            old=value_from_wire(old) if old is not None else None,
            new=value_from_wire(_require(data, "new")),
        )
    if action_type == "ApplyChanges":
        changes = _require(data, "changes")
        if not isinstance(changes, list):
            raise WireError("changes must be an array")
        return ApplyChanges(
            tuple(change_op_from_wire(op, prefixes) for op in changes),
            commit_message=data.get("commitMessage"),
        )
    raise WireError(f"unknown edit action type {action_type!r}")


def comment_to_wire(comment: Comment) -> dict:
    return {
        "id": comment.id,
        "author": comment.author,
        "timestampMs": comment.timestamp_ms,
        "body": comment.body,
        "mentions": list(comment.mentions),
        "entityLinks": [entity_to_wire(entity) for entity in comment.entity_links],
        "renderedHtml": comment.rendered_html,
    }


def thread_to_wire(thread: CommentThread) -> dict:
    return {
        "id": thread.id,
        "entity": entity_to_wire(thread.entity),
        "status": thread.status.value,
        "comments": [comment_to_wire(comment) for comment in thread.comments],
    }


def comment_from_wire(data: dict) -> Comment:
    return Comment(
        id=_string(data, "id"),
        author=_string(data, "author"),
        timestamp_ms=int(_require(data, "timestampMs")),
        body=_string(data, "body"),
        mentions=tuple(_require(data, "mentions")),
        entity_links=tuple(entity_from_wire(e) for e in _require(data, "entityLinks")),
        rendered_html=_string(data, "renderedHtml"),
    )


def thread_from_wire(data: dict) -> CommentThread:
    return CommentThread(
        id=_string(data, "id"),
        entity=entity_from_wire(_require(data, "entity")),
        status=thread_status_from_wire(_require(data, "status")),
        comments=[comment_from_wire(c) for c in _require(data, "comments")],
    )


def thread_status_from_wire(value: Any) -> ThreadStatus:
    if value == ThreadStatus.OPEN.value:
        return ThreadStatus.OPEN
    if value == ThreadStatus.CLOSED.value:
        return ThreadStatus.CLOSED
    raise WireError(f"unknown thread status {value!r}")


def tag_to_wire(tag: Tag) -> dict:
    return {"id": tag.id, "label": tag.label, "description": tag.description, "color": tag.color}


def tag_rule_to_wire(rule: TagRule) -> dict:
    return {"tagId": rule.tag_id, "criteria": criteria_to_dict(rule.criteria)}


def tag_rule_from_wire(data: Any) -> TagRule:
    if not isinstance(data, dict):
        raise WireError("tag rule must be an object")
    return TagRule(_string(data, "tagId"), criteria_from_dict(_require(data, "criteria")))


def webhook_to_wire(hook: WebhookConfig) -> dict:
    return {"id": hook.id, "kind": hook.kind.value, "url": hook.url, "enabled": hook.enabled}


def webhook_kind_from_wire(value: Any) -> WebhookKind:
    for kind in WebhookKind:
        if kind.value == value:
            return kind
    raise WireError(f"unknown webhook kind {value!r}")

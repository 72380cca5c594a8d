"""JSON wire form for criteria trees.

Composites are `{"type": "MatchAll"|"MatchAny", "criteria": [...]}`; each atom
is an object keyed by its "type". parse(serialize(node)) is the identity and
serialize(parse(text)) is the canonical form.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from ..core.model import EntityKind, Iri, MalformedIri
from .model import (
    AnnotationContains,
    AnnotationMatchesRegex,
    CriteriaNode,
    EntityKindIs,
    HasAnnotationOn,
    HasTag,
    InvalidRegex,
    IriContains,
    IsSubClassOf,
    LacksAnnotationOn,
    MatchAll,
    MatchAny,
    SchemaError,
)

_KINDS = {kind.value: kind for kind in EntityKind}


def _expect_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(path, f"expected an object, got {type(value).__name__}")
    return value


def _string(obj: dict, key: str, path: str) -> str:
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing required field")
    value = obj[key]
    if not isinstance(value, str):
        raise SchemaError(f"{path}.{key}", f"expected a string, got {type(value).__name__}")
    return value


def _boolean(obj: dict, key: str, path: str) -> bool:
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing required field")
    value = obj[key]
    if not isinstance(value, bool):
        raise SchemaError(f"{path}.{key}", f"expected a boolean, got {type(value).__name__}")
    return value


def _iri(obj: dict, key: str, path: str, optional: bool = False) -> Optional[Iri]:
    if key not in obj:
        if optional:
            raise SchemaError(f"{path}.{key}", "missing required field (use null for any)")
        raise SchemaError(f"{path}.{key}", "missing required field")
    value = obj[key]
    if value is None and optional:
        return None
    if not isinstance(value, str):
        raise SchemaError(f"{path}.{key}", f"expected an IRI string, got {type(value).__name__}")
    try:
        return Iri(value)
    except MalformedIri as exc:
        raise SchemaError(f"{path}.{key}", str(exc)) from exc


def _parse_node(value: Any, path: str) -> CriteriaNode:
    obj = _expect_object(value, path)
    node_type = _string(obj, "type", path)
    if node_type in ("MatchAll", "MatchAny"):
        raw_children = obj.get("criteria")
        if not isinstance(raw_children, list):
            raise SchemaError(f"{path}.criteria", "expected an array")
        children = tuple(
            _parse_node(child, f"{path}.criteria[{i}]") for i, child in enumerate(raw_children)
        )
        return MatchAll(children) if node_type == "MatchAll" else MatchAny(children)
    if node_type == "IsSubClassOf":
        mode = _string(obj, "mode", path)
        if mode not in ("direct", "transitive"):
            raise SchemaError(f"{path}.mode", f"expected 'direct' or 'transitive', got {mode!r}")
        return IsSubClassOf(_iri(obj, "cls", path), mode)
    if node_type == "AnnotationContains":
        return AnnotationContains(
            _iri(obj, "property", path, optional=True),
            _string(obj, "text", path),
            _boolean(obj, "ignoreCase", path),
        )
    if node_type == "AnnotationMatchesRegex":
        try:
            return AnnotationMatchesRegex(
                _iri(obj, "property", path, optional=True),
                _string(obj, "pattern", path),
            )
        except InvalidRegex:
            raise
    if node_type == "HasAnnotationOn":
        return HasAnnotationOn(_iri(obj, "property", path))
    if node_type == "LacksAnnotationOn":
        return LacksAnnotationOn(_iri(obj, "property", path))
    if node_type == "EntityKindIs":
        kind_name = _string(obj, "kind", path)
        if kind_name not in _KINDS:
            raise SchemaError(f"{path}.kind", f"unknown entity kind {kind_name!r}")
        return EntityKindIs(_KINDS[kind_name])
    if node_type == "HasTag":
        return HasTag(_string(obj, "tagId", path))
    if node_type == "IriContains":
        return IriContains(_string(obj, "text", path))
    raise SchemaError(f"{path}.type", f"unknown criteria type {node_type!r}")


def criteria_from_dict(value: Any) -> CriteriaNode:
    return _parse_node(value, "")


def parse_criteria(text: str) -> CriteriaNode:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from exc
    return criteria_from_dict(data)


def criteria_to_dict(node: CriteriaNode) -> dict:
    if isinstance(node, MatchAll):
        return {"type": "MatchAll", "criteria": [criteria_to_dict(c) for c in node.children]}
    if isinstance(node, MatchAny):
        return {"type": "MatchAny", "criteria": [criteria_to_dict(c) for c in node.children]}
    if isinstance(node, IsSubClassOf):
        return {"type": "IsSubClassOf", "cls": node.cls.value, "mode": node.mode}
    if isinstance(node, AnnotationContains):
        return {
            "type": "AnnotationContains",
            "property": node.property.value if node.property else None,
            "text": node.text,
            "ignoreCase": node.ignore_case,
        }
    if isinstance(node, AnnotationMatchesRegex):
        return {
            "type": "AnnotationMatchesRegex",
            "property": node.property.value if node.property else None,
            "pattern": node.pattern,
        }
    if isinstance(node, HasAnnotationOn):
        return {"type": "HasAnnotationOn", "property": node.property.value}
    if isinstance(node, LacksAnnotationOn):
        return {"type": "LacksAnnotationOn", "property": node.property.value}
    if isinstance(node, EntityKindIs):
        return {"type": "EntityKindIs", "kind": node.kind.value}
    if isinstance(node, HasTag):
        return {"type": "HasTag", "tagId": node.tag_id}
    if isinstance(node, IriContains):
        return {"type": "IriContains", "text": node.text}
    raise TypeError(f"not a criteria node: {node!r}")


def serialize_criteria(node: CriteriaNode) -> str:
    return json.dumps(criteria_to_dict(node), ensure_ascii=False)

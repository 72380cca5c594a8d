"""Composable search criteria, tags, and tag rules.

The same criteria trees drive interactive entity search and rule-based
auto-tagging, so the node types live apart from any evaluation context.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from ..core.model import EntityKind, Iri
from ..core.queries import SUBCLASS_MODES


class CriteriaError(Exception):
    pass


class InvalidRegex(CriteriaError):
    def __init__(self, pattern: str, reason: str):
        super().__init__(f"invalid regex {pattern!r}: {reason}")
        self.pattern = pattern
        self.reason = reason


class SchemaError(CriteriaError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '$'}: {message}")
        self.path = path
        self.message = message


class UnknownTag(CriteriaError):
    def __init__(self, tag_id: str):
        super().__init__(f"unknown tag {tag_id!r}")
        self.tag_id = tag_id


class DuplicateTagLabel(CriteriaError):
    pass


@dataclass(frozen=True)
class Tag:
    id: str
    label: str
    description: str = ""
    color: str = "#d0d7de"

    def __post_init__(self):
        if not self.label.strip():
            raise ValueError("tag label must be non-empty")
        if not re.fullmatch(r"#[0-9a-fA-F]{3}(?:[0-9a-fA-F]{3})?", self.color):
            raise ValueError(f"not a hex color: {self.color!r}")


@dataclass(frozen=True)
class MatchAll:
    children: tuple["CriteriaNode", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class MatchAny:
    children: tuple["CriteriaNode", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class IsSubClassOf:
    cls: Iri
    mode: str = "transitive"

    def __post_init__(self):
        if self.mode not in SUBCLASS_MODES:
            raise ValueError(f"mode must be one of {SUBCLASS_MODES}")


@dataclass(frozen=True)
class AnnotationContains:
    property: Optional[Iri]
    text: str
    ignore_case: bool = False


@dataclass(frozen=True)
class AnnotationMatchesRegex:
    property: Optional[Iri]
    pattern: str

    def __post_init__(self):
        try:
            re.compile(self.pattern)
        except re.error as exc:
            raise InvalidRegex(self.pattern, str(exc)) from exc


@dataclass(frozen=True)
class HasAnnotationOn:
    property: Iri


@dataclass(frozen=True)
class LacksAnnotationOn:
    property: Iri


@dataclass(frozen=True)
class EntityKindIs:
    kind: EntityKind


@dataclass(frozen=True)
class HasTag:
    tag_id: str


@dataclass(frozen=True)
class IriContains:
    text: str


CriteriaNode = Union[
    MatchAll,
    MatchAny,
    IsSubClassOf,
    AnnotationContains,
    AnnotationMatchesRegex,
    HasAnnotationOn,
    LacksAnnotationOn,
    EntityKindIs,
    HasTag,
    IriContains,
]


@dataclass(frozen=True)
class TagRule:
    tag_id: str
    criteria: CriteriaNode

"""Criteria evaluation and entity search over a project's merged document."""

from __future__ import annotations

import re
from typing import Callable, Optional

from ..core.model import Entity, EntityKind, Iri, Literal, OntologyDocument
from ..core.queries import display_name, subclasses
from .model import (
    AnnotationContains,
    AnnotationMatchesRegex,
    CriteriaNode,
    EntityKindIs,
    HasAnnotationOn,
    HasTag,
    IriContains,
    IsSubClassOf,
    LacksAnnotationOn,
    MatchAll,
    MatchAny,
)

TagLookup = Callable[[Entity], frozenset]


class MatchContext:
    """Everything an atom can observe: one document plus visible tags.

    Rule evaluation passes a manual-tags-only lookup so HasTag can never see
    tags derived in the same pass.
    """

    def __init__(self, doc: OntologyDocument, tags_of: TagLookup | None = None):
        self.doc = doc
        self.tags_of: TagLookup = tags_of or (lambda entity: frozenset())
        self._subclasses_cache: dict[tuple[Iri, str], frozenset[Iri]] = {}

    def entities(self) -> frozenset[Entity]:
        return self.doc.entities

    def subclasses_of(self, cls: Iri, mode: str) -> frozenset[Iri]:
        key = (cls, mode)
        if key not in self._subclasses_cache:
            self._subclasses_cache[key] = subclasses(self.doc, cls, mode)
        return self._subclasses_cache[key]

    def assertions_on(self, subject: Iri, property: Optional[Iri]):
        assertions = self.doc.annotations_by_subject.get(subject, ())
        if property is None:
            return assertions
        return tuple(a for a in assertions if a.property == property)

    def literal_values(self, subject: Iri, property: Optional[Iri]) -> list[str]:
        return [
            a.value.lexical
            for a in self.assertions_on(subject, property)
            if isinstance(a.value, Literal)
        ]


def matches(criteria: CriteriaNode, entity: Entity, ctx: MatchContext) -> bool:
    if isinstance(criteria, MatchAll):
        return all(matches(child, entity, ctx) for child in criteria.children)
    if isinstance(criteria, MatchAny):
        return any(matches(child, entity, ctx) for child in criteria.children)
    if isinstance(criteria, IsSubClassOf):
        return entity.kind is EntityKind.CLASS and entity.iri in ctx.subclasses_of(
            criteria.cls, criteria.mode
        )
    if isinstance(criteria, AnnotationContains):
        needle = criteria.text.casefold() if criteria.ignore_case else criteria.text
        for value in ctx.literal_values(entity.iri, criteria.property):
            haystack = value.casefold() if criteria.ignore_case else value
            if needle in haystack:
                return True
        return False
    if isinstance(criteria, AnnotationMatchesRegex):
        return any(
            re.search(criteria.pattern, value)
            for value in ctx.literal_values(entity.iri, criteria.property)
        )
    if isinstance(criteria, HasAnnotationOn):
        return bool(ctx.assertions_on(entity.iri, criteria.property))
    if isinstance(criteria, LacksAnnotationOn):
        return not ctx.assertions_on(entity.iri, criteria.property)
    if isinstance(criteria, EntityKindIs):
        return entity.kind is criteria.kind
    if isinstance(criteria, HasTag):
        return criteria.tag_id in ctx.tags_of(entity)
    if isinstance(criteria, IriContains):
        return criteria.text in entity.iri.value
    raise TypeError(f"not a criteria node: {criteria!r}")


def search(
    ctx: MatchContext,
    criteria: CriteriaNode,
    limit: int = 50,
    offset: int = 0,
) -> list[tuple[Entity, str]]:
    """Matching entities ordered by case-folded display name, then IRI.

    The full ordering is computed before slicing, so pagination is stable.
    """
    if limit < 1:
        raise ValueError("limit must be at least 1")
    if offset < 0:
        raise ValueError("offset must not be negative")
    hits = [
        (entity, display_name(ctx.doc, entity))
        for entity in ctx.entities()
        if matches(criteria, entity, ctx)
    ]
    hits.sort(key=lambda pair: (pair[1].casefold(), pair[0].iri.value, pair[0].kind.value))
    return hits[offset:offset + limit]

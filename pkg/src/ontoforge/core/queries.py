"""Hierarchy and annotation queries over a document."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .model import (
    AnnotationValue,
    Entity,
    Iri,
    Literal,
    OntologyDocument,
    RDFS_LABEL,
    local_name,
)

DIRECT = "direct"
TRANSITIVE = "transitive"
SUBCLASS_MODES = (DIRECT, TRANSITIVE)


def subclasses(doc: OntologyDocument, cls: Iri, mode: str = DIRECT) -> frozenset[Iri]:
    """Named subclasses of `cls`.

    Transitive mode is the least fixpoint of the direct relation; `cls`
    itself is included only when reachable through a cycle. Terminates on
    cyclic hierarchies.
    """
    if mode not in SUBCLASS_MODES:
        raise ValueError(f"mode must be one of {SUBCLASS_MODES}, got {mode!r}")
    index = doc.direct_subclass_index
    if mode == DIRECT:
        return frozenset(index.get(cls, ()))
    found: set[Iri] = set()
    frontier = deque(index.get(cls, ()))
    while frontier:
        current = frontier.popleft()
        if current in found:
            continue
        found.add(current)
        frontier.extend(index.get(current, ()))
    return frozenset(found)


def annotation_values(doc: OntologyDocument, subject: Iri, property: Iri) -> tuple[AnnotationValue, ...]:
    """All values asserted on `subject` for `property`, in stored axiom order."""
    return tuple(
        axiom.value
        for axiom in doc.annotations_by_subject.get(subject, ())
        if axiom.property == property
    )


def display_name(doc: OntologyDocument, entity: Entity | Iri) -> str:
    """Human-facing name: first rdfs:label literal, else the shortest
    prefixed form, else the full IRI in angle brackets."""
    iri = entity.iri if isinstance(entity, Entity) else entity
    for value in annotation_values(doc, iri, RDFS_LABEL):
        if isinstance(value, Literal):
            return value.lexical
    compact = doc.prefixes.compact(iri)
    if compact is not None:
        return compact
    return f"<{iri.value}>"


def sorted_by_display_name(doc: OntologyDocument, entities: Iterable[Entity]) -> list[tuple[Entity, str]]:
    """Stable (entity, name) list ordered by case-folded name, then IRI, then kind."""
    named = [(entity, display_name(doc, entity)) for entity in entities]
    named.sort(key=lambda pair: (pair[1].casefold(), pair[0].iri.value, pair[0].kind.value))
    return named


__all__ = [
    "DIRECT",
    "TRANSITIVE",
    "SUBCLASS_MODES",
    "subclasses",
    "annotation_values",
    "display_name",
    "sorted_by_display_name",
    "local_name",
]

"""OWL document model: IRIs, prefix tables, entities, axioms, documents.

The axiom language is a deliberately small OWL 2 subset (roughly the EL
constructs a lightweight class editor needs). Everything here is immutable;
edits produce new values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Mapping, Optional, Sequence, Union


class OntologyError(Exception):
    """Base class for ontology model errors."""


class MalformedIri(OntologyError):
    pass


class MalformedName(OntologyError):
    pass


class UnknownPrefix(OntologyError):
    def __init__(self, prefix: str):
        super().__init__(f"unknown prefix {prefix!r}")
        self.prefix = prefix


class PrefixError(OntologyError):
    pass


_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_WHITESPACE_RE = re.compile(r"\s")


@dataclass(frozen=True, order=True)
class Iri:
    """An absolute IRI."""

    value: str

    def __post_init__(self):
        if not self.value:
            raise MalformedIri("IRI must be non-empty")
        if _WHITESPACE_RE.search(self.value):
            raise MalformedIri(f"IRI contains whitespace: {self.value!r}")
        if not _SCHEME_RE.match(self.value):
            raise MalformedIri(f"IRI has no scheme: {self.value!r}")

    def __str__(self) -> str:
        return self.value


def local_name(iri: Iri) -> str:
    """Best-effort short name: fragment, else last path segment, else the IRI."""
    value = iri.value
    if "#" in value:
        tail = value.rsplit("#", 1)[1]
        if tail:
            return tail
    if "/" in value:
        tail = value.rsplit("/", 1)[1]
        if tail:
            return tail
    return value


# Namespaces that every prefix table carries and that cannot be rebound.
BUILTIN_PREFIXES: Mapping[str, str] = {
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
    "schema": "https://schema.org/",
    "wikidata": "http://www.wikidata.org/entity/",
    "dbpedia": "http://dbpedia.org/resource/",
}

RDFS_LABEL = Iri(BUILTIN_PREFIXES["rdfs"] + "label")
RDFS_COMMENT = Iri(BUILTIN_PREFIXES["rdfs"] + "comment")
OWL_THING = Iri(BUILTIN_PREFIXES["owl"] + "Thing")

_PREFIX_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_.\-]*$")
_LOCAL_PART_RE = re.compile(r"^[A-Za-z0-9_.\-]*$")


class PrefixTable:
    """Immutable prefix-name to namespace mapping with fixed built-ins."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[str, Iri] | None = None):
        merged: dict[str, Iri] = {p: Iri(ns) for p, ns in BUILTIN_PREFIXES.items()}
        for prefix, namespace in (entries or {}).items():
            if prefix != "" and not _PREFIX_NAME_RE.match(prefix):
                raise PrefixError(f"illegal prefix name {prefix!r}")
            if not isinstance(namespace, Iri):
                namespace = Iri(namespace)
            if prefix in BUILTIN_PREFIXES and namespace.value != BUILTIN_PREFIXES[prefix]:
                raise PrefixError(f"prefix {prefix!r} is built in and cannot be rebound")
            merged[prefix] = namespace
        self._entries = merged

    @classmethod
    def standard(cls) -> "PrefixTable":
        return cls()

    def namespace_of(self, prefix: str) -> Iri | None:
        return self._entries.get(prefix)

    def __contains__(self, prefix: str) -> bool:
        return prefix in self._entries

    def is_builtin(self, prefix: str) -> bool:
        return prefix in BUILTIN_PREFIXES

    def register(self, prefix: str, namespace: Iri | str) -> "PrefixTable":
        extra = {p: ns for p, ns in self._entries.items() if p not in BUILTIN_PREFIXES}
        extra[prefix] = namespace if isinstance(namespace, Iri) else Iri(namespace)
        return PrefixTable(extra)

    def items(self) -> list[tuple[str, Iri]]:
        return sorted(self._entries.items())

    def compact(self, iri: Iri) -> str | None:
        """Shortest prefixed form of `iri`, or None if no namespace applies."""
        best: str | None = None
        for prefix, namespace in self._entries.items():
            if not iri.value.startswith(namespace.value):
                continue
            local = iri.value[len(namespace.value):]
            if not _LOCAL_PART_RE.match(local):
                continue
            candidate = f"{prefix}:{local}"
            if best is None or (len(candidate), candidate) < (len(best), best):
                best = candidate
        return best

    def __eq__(self, other) -> bool:
        return isinstance(other, PrefixTable) and self._entries == other._entries

    def __repr__(self) -> str:
        extras = {p: ns.value for p, ns in self._entries.items() if p not in BUILTIN_PREFIXES}
        return f"PrefixTable(+{extras!r})" if extras else "PrefixTable()"


def expand_prefixed_name(prefixes: PrefixTable, name: str) -> Iri:
    """Expand `prefix:local` through the table.

    Raises MalformedName for anything that is not a single-colon prefixed
    name, UnknownPrefix when the prefix is not registered.
    """
    if name.count(":") != 1:
        raise MalformedName(f"not a prefixed name: {name!r}")
    prefix, local = name.split(":", 1)
    if prefix != "" and not _PREFIX_NAME_RE.match(prefix):
        raise MalformedName(f"illegal prefix in {name!r}")
    if not _LOCAL_PART_RE.match(local):
        raise MalformedName(f"illegal local part in {name!r}")
    namespace = prefixes.namespace_of(prefix)
    if namespace is None:
        raise UnknownPrefix(prefix)
    return Iri(namespace.value + local)


class EntityKind(Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    DATA_PROPERTY = "DataProperty"
    ANNOTATION_PROPERTY = "AnnotationProperty"
    NAMED_INDIVIDUAL = "NamedIndividual"
    DATATYPE = "Datatype"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Entity:
    """A named term. The same IRI may appear under several kinds (punning)."""

    kind: EntityKind
    iri: Iri

    @property
    def sort_key(self) -> tuple[str, str]:
        return (self.iri.value, self.kind.value)


# --- Class expressions ------------------------------------------------------

@dataclass(frozen=True)
class NamedClass:
    iri: Iri


@dataclass(frozen=True)
class IntersectionOf:
    operands: tuple["ClassExpression", ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("IntersectionOf needs at least two operands")


@dataclass(frozen=True)
class SomeValuesFrom:
    property: Iri
    filler: "ClassExpression"


ClassExpression = Union[NamedClass, IntersectionOf, SomeValuesFrom]


# --- Annotation values ------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    lexical: str
    language: str | None = None
    datatype: Iri | None = None

    def __post_init__(self):
        if self.language is not None and self.datatype is not None:
            raise ValueError("literal may carry a language tag or a datatype, not both")


@dataclass(frozen=True)
class IriValue:
    iri: Iri


AnnotationValue = Union[Literal, IriValue]


# --- Axioms -----------------------------------------------------------------

@dataclass(frozen=True)
class Declaration:
    entity: Entity


@dataclass(frozen=True)
class SubClassOf:
    sub: ClassExpression
    sup: ClassExpression


@dataclass(frozen=True)
class EquivalentClasses:
    operands: tuple[ClassExpression, ...]

    def __post_init__(self):
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("EquivalentClasses needs at least two operands")


@dataclass(frozen=True)
class SubObjectPropertyOf:
    sub: Iri
    sup: Iri


@dataclass(frozen=True)
class ClassAssertion:
    ce: ClassExpression
    individual: Iri


@dataclass(frozen=True)
class ObjectPropertyAssertion:
    property: Iri
    source: Iri
    target: Iri


@dataclass(frozen=True)
class AnnotationAssertion:
    property: Iri
    subject: Iri
    value: AnnotationValue


Axiom = Union[
    Declaration,
    SubClassOf,
    EquivalentClasses,
    SubObjectPropertyOf,
    ClassAssertion,
    ObjectPropertyAssertion,
    AnnotationAssertion,
]


def expression_signature(ce: ClassExpression) -> set[Entity]:
    if isinstance(ce, NamedClass):
        return {Entity(EntityKind.CLASS, ce.iri)}
    if isinstance(ce, IntersectionOf):
        out: set[Entity] = set()
        for operand in ce.operands:
            out |= expression_signature(operand)
        return out
    if isinstance(ce, SomeValuesFrom):
        return {Entity(EntityKind.OBJECT_PROPERTY, ce.property)} | expression_signature(ce.filler)
    raise TypeError(f"not a class expression: {ce!r}")


def entity_signature(
    axiom: Axiom,
    declared_kinds: Mapping[Iri, Sequence[EntityKind]] | None = None,
) -> frozenset[Entity]:
    """All entities occurring in `axiom`, kinds inferred from position.

    Annotation subjects have no syntactic kind; they resolve through
    `declared_kinds` and fall back to Class when undeclared.
    """
    if isinstance(axiom, Declaration):
        return frozenset({axiom.entity})
    if isinstance(axiom, SubClassOf):
        return frozenset(expression_signature(axiom.sub) | expression_signature(axiom.sup))
    if isinstance(axiom, EquivalentClasses):
        out: set[Entity] = set()
        for operand in axiom.operands:
            out |= expression_signature(operand)
        return frozenset(out)
    if isinstance(axiom, SubObjectPropertyOf):
        return frozenset({
            Entity(EntityKind.OBJECT_PROPERTY, axiom.sub),
            Entity(EntityKind.OBJECT_PROPERTY, axiom.sup),
        })
    if isinstance(axiom, ClassAssertion):
        return frozenset(
            expression_signature(axiom.ce) | {Entity(EntityKind.NAMED_INDIVIDUAL, axiom.individual)}
        )
    if isinstance(axiom, ObjectPropertyAssertion):
        return frozenset({
            Entity(EntityKind.OBJECT_PROPERTY, axiom.property),
            Entity(EntityKind.NAMED_INDIVIDUAL, axiom.source),
            Entity(EntityKind.NAMED_INDIVIDUAL, axiom.target),
        })
    if isinstance(axiom, AnnotationAssertion):
        subject_kinds: Sequence[EntityKind] = ()
        if declared_kinds:
            subject_kinds = declared_kinds.get(axiom.subject, ())
        if not subject_kinds:
            subject_kinds = (EntityKind.CLASS,)
        out = {Entity(EntityKind.ANNOTATION_PROPERTY, axiom.property)}
        out |= {Entity(kind, axiom.subject) for kind in subject_kinds}
        return frozenset(out)
    raise TypeError(f"not an axiom: {axiom!r}")


# --- Documents --------------------------------------------------------------

@dataclass(frozen=True)
class OntologyDocument:
    """An ordered, duplicate-free axiom set plus prefixes.

    Construction deduplicates structurally equal axioms, keeping first
    occurrence order. Values are immutable and safe to share.
    """

    ontology_iri: Optional[Iri] = None
    prefixes: PrefixTable = None  # type: ignore[assignment]
    axioms: tuple[Axiom, ...] = ()

    def __post_init__(self):
        if self.prefixes is None:
            object.__setattr__(self, "prefixes", PrefixTable.standard())
        deduped: dict[Axiom, None] = {}
        for axiom in self.axioms:
            deduped.setdefault(axiom, None)
        object.__setattr__(self, "axioms", tuple(deduped))

    @cached_property
    def axiom_set(self) -> frozenset[Axiom]:
        return frozenset(self.axioms)

    @cached_property
    def declared_kinds(self) -> dict[Iri, tuple[EntityKind, ...]]:
        kinds: dict[Iri, list[EntityKind]] = {}
        for axiom in self.axioms:
            if isinstance(axiom, Declaration):
                found = kinds.setdefault(axiom.entity.iri, [])
                if axiom.entity.kind not in found:
                    found.append(axiom.entity.kind)
        return {iri: tuple(ks) for iri, ks in kinds.items()}

    @cached_property
    def annotations_by_subject(self) -> dict[Iri, tuple[AnnotationAssertion, ...]]:
        grouped: dict[Iri, list[AnnotationAssertion]] = {}
        for axiom in self.axioms:
            if isinstance(axiom, AnnotationAssertion):
                grouped.setdefault(axiom.subject, []).append(axiom)
        return {subject: tuple(axs) for subject, axs in grouped.items()}

    @cached_property
    def direct_subclass_index(self) -> dict[Iri, tuple[Iri, ...]]:
        """sup IRI -> named subs, in stored order."""
        index: dict[Iri, list[Iri]] = {}
        for axiom in self.axioms:
            if (
                isinstance(axiom, SubClassOf)
                and isinstance(axiom.sub, NamedClass)
                and isinstance(axiom.sup, NamedClass)
            ):
                subs = index.setdefault(axiom.sup.iri, [])
                if axiom.sub.iri not in subs:
                    subs.append(axiom.sub.iri)
        return {sup: tuple(subs) for sup, subs in index.items()}

    @cached_property
    def entities(self) -> frozenset[Entity]:
        out: set[Entity] = set()
        for axiom in self.axioms:
            out |= entity_signature(axiom, self.declared_kinds)
        return frozenset(out)

    def contains(self, axiom: Axiom) -> bool:
        return axiom in self.axiom_set

    def with_axiom(self, axiom: Axiom) -> "OntologyDocument":
        if axiom in self.axiom_set:
            return self
        return OntologyDocument(self.ontology_iri, self.prefixes, self.axioms + (axiom,))

    def without_axiom(self, axiom: Axiom) -> "OntologyDocument":
        if axiom not in self.axiom_set:
            return self
        return OntologyDocument(
            self.ontology_iri, self.prefixes, tuple(a for a in self.axioms if a != axiom)
        )

    def structurally_equal(self, other: "OntologyDocument") -> bool:
        """Equality up to axiom order and prefix table contents."""
        return self.ontology_iri == other.ontology_iri and self.axiom_set == other.axiom_set


def documents_structurally_equal(a: OntologyDocument, b: OntologyDocument) -> bool:
    return a.structurally_equal(b)

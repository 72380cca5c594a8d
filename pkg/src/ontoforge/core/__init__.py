"""OWL document model, functional-syntax parsing/serialization, and queries."""

from .model import (
    AnnotationAssertion,
    AnnotationValue,
    Axiom,
    BUILTIN_PREFIXES,
    ClassAssertion,
    ClassExpression,
    Declaration,
    Entity,
    EntityKind,
    EquivalentClasses,
    IntersectionOf,
    Iri,
    IriValue,
    Literal,
    MalformedIri,
    MalformedName,
    NamedClass,
    ObjectPropertyAssertion,
    OntologyDocument,
    OntologyError,
    OWL_THING,
    PrefixError,
    PrefixTable,
    RDFS_COMMENT,
    RDFS_LABEL,
    SomeValuesFrom,
    SubClassOf,
    SubObjectPropertyOf,
    UnknownPrefix,
    documents_structurally_equal,
    entity_signature,
    expand_prefixed_name,
    expression_signature,
    local_name,
)
from .parser import ParseError, UnsupportedConstruct, parse_axiom, parse_ontology
from .queries import (
    DIRECT,
    TRANSITIVE,
    annotation_values,
    display_name,
    sorted_by_display_name,
    subclasses,
)
from .serializer import (
    serialize_axiom,
    serialize_class_expression,
    serialize_ontology,
    serialize_value,
)

__all__ = [name for name in dir() if not name.startswith("_")]

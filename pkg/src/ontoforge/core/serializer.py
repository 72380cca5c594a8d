"""Functional-syntax writer. Output always reparses to a structurally equal document."""

from __future__ import annotations

from .model import (
    AnnotationAssertion,
    AnnotationValue,
    Axiom,
    ClassAssertion,
    ClassExpression,
    Declaration,
    EquivalentClasses,
    IntersectionOf,
    Iri,
    IriValue,
    Literal,
    NamedClass,
    ObjectPropertyAssertion,
    OntologyDocument,
    SomeValuesFrom,
    SubClassOf,
    SubObjectPropertyOf,
)


def _iri(iri: Iri) -> str:
    return f"<{iri.value}>"


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def serialize_value(value: AnnotationValue) -> str:
    if isinstance(value, IriValue):
        return _iri(value.iri)
    if isinstance(value, Literal):
        out = f'"{_escape(value.lexical)}"'
        if value.language is not None:
            out += f"@{value.language}"
        elif value.datatype is not None:
            out += f"^^{_iri(value.datatype)}"
        return out
    raise TypeError(f"not an annotation value: {value!r}")


def serialize_class_expression(ce: ClassExpression) -> str:
    if isinstance(ce, NamedClass):
        return _iri(ce.iri)
    if isinstance(ce, IntersectionOf):
        inner = " ".join(serialize_class_expression(op) for op in ce.operands)
        return f"ObjectIntersectionOf({inner})"
    if isinstance(ce, SomeValuesFrom):
        return f"ObjectSomeValuesFrom({_iri(ce.property)} {serialize_class_expression(ce.filler)})"
    raise TypeError(f"not a class expression: {ce!r}")


def serialize_axiom(axiom: Axiom) -> str:
    if isinstance(axiom, Declaration):
        return f"Declaration({axiom.entity.kind.value}({_iri(axiom.entity.iri)}))"
    if isinstance(axiom, SubClassOf):
        return (
            f"SubClassOf({serialize_class_expression(axiom.sub)} "
            f"{serialize_class_expression(axiom.sup)})"
        )
    if isinstance(axiom, EquivalentClasses):
        inner = " ".join(serialize_class_expression(op) for op in axiom.operands)
        return f"EquivalentClasses({inner})"
    if isinstance(axiom, SubObjectPropertyOf):
        return f"SubObjectPropertyOf({_iri(axiom.sub)} {_iri(axiom.sup)})"
    if isinstance(axiom, ClassAssertion):
        return f"ClassAssertion({serialize_class_expression(axiom.ce)} {_iri(axiom.individual)})"
    if isinstance(axiom, ObjectPropertyAssertion):
        return (
            f"ObjectPropertyAssertion({_iri(axiom.property)} "
            f"{_iri(axiom.source)} {_iri(axiom.target)})"
        )
    if isinstance(axiom, AnnotationAssertion):
        return (
            f"AnnotationAssertion({_iri(axiom.property)} {_iri(axiom.subject)} "
            f"{serialize_value(axiom.value)})"
        )
    raise TypeError(f"not an axiom: {axiom!r}")


def serialize_ontology(doc: OntologyDocument) -> str:
    """Emit prefix declarations (sorted by prefix name) then axioms in stored order."""
    lines = [f"Prefix({prefix}:={_iri(namespace)})" for prefix, namespace in doc.prefixes.items()]
    header = "Ontology("
    if doc.ontology_iri is not None:
        header += _iri(doc.ontology_iri)
    lines.append(header)
    lines.extend(serialize_axiom(axiom) for axiom in doc.axioms)
    lines.append(")")
    return "\n".join(lines) + "\n"

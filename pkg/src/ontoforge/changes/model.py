"""Change operations, revisions, and edit actions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..core.model import AnnotationValue, Axiom, Entity, EntityKind, Iri


class ChangeError(Exception):
    pass


class EmptyEdit(ChangeError):
    """Every compiled operation was a no-op."""


class UnknownEntity(ChangeError):
    def __init__(self, iri: Iri):
        super().__init__(f"unknown entity {iri}")
        self.iri = iri


class UnknownOntology(ChangeError):
    def __init__(self, ontology_id: str):
        super().__init__(f"unknown ontology {ontology_id!r}")
        self.ontology_id = ontology_id


class EmptyRevision(ChangeError):
    pass


class IneffectiveChange(ChangeError):
    def __init__(self, op: "ChangeOp"):
        super().__init__(f"ineffective change: {op}")
        self.op = op


class UnknownRevision(ChangeError):
    def __init__(self, number: int):
        super().__init__(f"unknown revision {number}")
        self.number = number


class NothingToRevert(ChangeError):
    pass


@dataclass(frozen=True)
class AddAxiom:
    ontology_id: str
    axiom: Axiom


@dataclass(frozen=True)
class RemoveAxiom:
    ontology_id: str
    axiom: Axiom


ChangeOp = Union[AddAxiom, RemoveAxiom]


def invert(op: ChangeOp) -> ChangeOp:
    if isinstance(op, AddAxiom):
        return RemoveAxiom(op.ontology_id, op.axiom)
    return AddAxiom(op.ontology_id, op.axiom)


@dataclass(frozen=True)
class Revision:
    number: int
    author: str
    timestamp_ms: int
    label: str
    commit_message: Optional[str]
    changes: tuple[ChangeOp, ...]

    def __post_init__(self):
        object.__setattr__(self, "changes", tuple(self.changes))
        if self.number < 1:
            raise ValueError("revision numbers start at 1")
        if not self.changes:
            raise ValueError("a revision must carry at least one change")


# --- Edit actions -----------------------------------------------------------

@dataclass(frozen=True)
class CreateClass:
    name: str
    parent: Iri


@dataclass(frozen=True)
class CreateEntity:
    kind: EntityKind
    name: str


@dataclass(frozen=True)
class DeleteEntity:
    entity: Entity


@dataclass(frozen=True)
class AddParent:
    cls: Iri
    parent: Iri


@dataclass(frozen=True)
class RemoveParent:
    cls: Iri
    parent: Iri


@dataclass(frozen=True)
class SetAnnotation:
    subject: Iri
    property: Iri
    old: Optional[AnnotationValue]
    new: AnnotationValue


@dataclass(frozen=True)
class ApplyChanges:
    changes: tuple[ChangeOp, ...]
    commit_message: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "changes", tuple(self.changes))


EditAction = Union[
    CreateClass,
    CreateEntity,
    DeleteEntity,
    AddParent,
    RemoveParent,
    SetAnnotation,
    ApplyChanges,
]

# Mutable per-ontology axiom state; dicts double as insertion-ordered sets.
AxiomState = dict[str, dict[Axiom, None]]


def copy_state(state: AxiomState) -> AxiomState:
    return {ontology_id: dict(axioms) for ontology_id, axioms in state.items()}


def apply_op(state: AxiomState, op: ChangeOp) -> bool:
    """Apply `op` in place; returns False when it was a no-op."""
    if op.ontology_id not in state:
        raise UnknownOntology(op.ontology_id)
    axioms = state[op.ontology_id]
    if isinstance(op, AddAxiom):
        if op.axiom in axioms:
            return False
        axioms[op.axiom] = None
        return True
    if op.axiom not in axioms:
        return False
    del axioms[op.axiom]
    return True

"""Compiles high-level edit actions to minimal effective change operations."""

from __future__ import annotations

import uuid
from typing import Callable, Optional, Sequence

from ..core.model import (
    AnnotationAssertion,
    Declaration,
    Entity,
    EntityKind,
    Iri,
    Literal,
    NamedClass,
    OWL_THING,
    PrefixTable,
    RDFS_LABEL,
    SubClassOf,
    entity_signature,
    expand_prefixed_name,
    local_name,
    MalformedName,
    UnknownPrefix,
)
from .model import (
    AddAxiom,
    AddParent,
    ApplyChanges,
    AxiomState,
    ChangeOp,
    CreateClass,
    CreateEntity,
    DeleteEntity,
    EditAction,
    EmptyEdit,
    RemoveAxiom,
    RemoveParent,
    SetAnnotation,
    UnknownEntity,
    apply_op,
    copy_state,
)


def default_minter() -> str:
    return uuid.uuid4().hex


def _state_declared_kinds(state: AxiomState) -> dict[Iri, tuple[EntityKind, ...]]:
    kinds: dict[Iri, list[EntityKind]] = {}
    for axioms in state.values():
        for axiom in axioms:
            if isinstance(axiom, Declaration):
                found = kinds.setdefault(axiom.entity.iri, [])
                if axiom.entity.kind not in found:
                    found.append(axiom.entity.kind)
    return {iri: tuple(ks) for iri, ks in kinds.items()}


def state_entities(state: AxiomState) -> frozenset[Entity]:
    declared = _state_declared_kinds(state)
    out: set[Entity] = set()
    for axioms in state.values():
        for axiom in axioms:
            out |= entity_signature(axiom, declared)
    return frozenset(out)


def _try_expand(prefixes: PrefixTable, name: str) -> Iri | None:
    """IRI for names typed as prefixed forms; None for plain display names."""
    try:
        return expand_prefixed_name(prefixes, name)
    except (MalformedName, UnknownPrefix):
        return None


def mint_iri(base_iri: Iri, minter: Callable[[], str]) -> Iri:
    base = base_iri.value
    joiner = "" if base.endswith(("#", "/")) else "#"
    return Iri(f"{base}{joiner}{minter()}")


def _require_class(state: AxiomState, iri: Iri):
    if iri == OWL_THING:
        return
    if Entity(EntityKind.CLASS, iri) not in state_entities(state):
        raise UnknownEntity(iri)


def compile_edit(
    action: EditAction,
    state: AxiomState,
    prefixes: PrefixTable,
    *,
    base_iri: Iri,
    ontology_id: str | None = None,
    minter: Callable[[], str] | None = None,
) -> list[ChangeOp]:
    """Minimal effective ops for `action` against `state`.

    No-op changes (add-existing / remove-absent) are dropped; if nothing
    remains the edit is empty. New entities named with a registered prefixed
    form take their IRI from the expansion and get no label; plain names get
    a minted IRI and an rdfs:label carrying the typed name.
    """
    minter = minter or default_minter
    if ontology_id is None:
        ontology_id = next(iter(state))
    ops: list[ChangeOp]

    if isinstance(action, (CreateClass, CreateEntity)):
        if isinstance(action, CreateClass):
            kind, name, parent = EntityKind.CLASS, action.name, action.parent
        else:
            kind, name, parent = action.kind, action.name, None
        name = name.strip()
        if not name:
            raise EmptyEdit("entity name is empty")
        expanded = _try_expand(prefixes, name)
        if expanded is not None:
            iri, label = expanded, None
        else:
            iri, label = mint_iri(base_iri, minter), name
        if parent is not None:
            _require_class(state, parent)
        ops = [AddAxiom(ontology_id, Declaration(Entity(kind, iri)))]
        if parent is not None:
            ops.append(AddAxiom(ontology_id, SubClassOf(NamedClass(iri), NamedClass(parent))))
        if label is not None:
            ops.append(AddAxiom(ontology_id, AnnotationAssertion(RDFS_LABEL, iri, Literal(label))))

    elif isinstance(action, DeleteEntity):
        declared = _state_declared_kinds(state)
        ops = []
        for oid, axioms in state.items():
            for axiom in axioms:
                if action.entity in entity_signature(axiom, declared):
                    ops.append(RemoveAxiom(oid, axiom))

    elif isinstance(action, AddParent):
        _require_class(state, action.cls)
        _require_class(state, action.parent)
        ops = [AddAxiom(ontology_id, SubClassOf(NamedClass(action.cls), NamedClass(action.parent)))]

    elif isinstance(action, RemoveParent):
        ops = [
            RemoveAxiom(ontology_id, SubClassOf(NamedClass(action.cls), NamedClass(action.parent)))
        ]

    elif isinstance(action, SetAnnotation):
        if not any(e.iri == action.subject for e in state_entities(state)):
            raise UnknownEntity(action.subject)
        ops = []
        if action.old is not None:
            ops.append(
                RemoveAxiom(ontology_id, AnnotationAssertion(action.property, action.subject, action.old))
            )
        ops.append(
            AddAxiom(ontology_id, AnnotationAssertion(action.property, action.subject, action.new))
        )

    elif isinstance(action, ApplyChanges):
        ops = list(action.changes)

    else:
        raise TypeError(f"not an edit action: {action!r}")

    # Drop ops that would have no effect when applied in sequence.
    candidate = copy_state(state)
    effective = [op for op in ops if apply_op(candidate, op)]
    if not effective:
        raise EmptyEdit(f"{type(action).__name__} changes nothing")
    return effective


def _short(iri: Iri) -> str:
    return local_name(iri)


def generate_label(action_or_changes: EditAction | Sequence[ChangeOp]) -> str:
    """Deterministic revision label from the action that produced it."""
    action = action_or_changes
    if isinstance(action, CreateClass):
        return f"Created Class '{action.name.strip()}'"
    if isinstance(action, CreateEntity):
        return f"Created {action.kind.value} '{action.name.strip()}'"
    if isinstance(action, DeleteEntity):
        return f"Deleted {action.entity.kind.value} '{_short(action.entity.iri)}'"
    if isinstance(action, AddParent):
        return f"Added parent '{_short(action.parent)}' to '{_short(action.cls)}'"
    if isinstance(action, RemoveParent):
        return f"Removed parent '{_short(action.parent)}' from '{_short(action.cls)}'"
    if isinstance(action, SetAnnotation):
        return f"Edited {_short(action.property)} on '{_short(action.subject)}'"
    if isinstance(action, ApplyChanges):
        count = len(action.changes)
        return f"Applied {count} change" + ("" if count == 1 else "s")
    count = len(list(action))
    return f"Applied {count} change" + ("" if count == 1 else "s")


def focal_entity(action: EditAction, compiled: Sequence[ChangeOp]) -> Optional[Entity]:
    """The entity an edit is 'about', when one is identifiable."""
    if isinstance(action, (CreateClass, CreateEntity)):
        for op in compiled:
            if isinstance(op, AddAxiom) and isinstance(op.axiom, Declaration):
                return op.axiom.entity
        return None
    if isinstance(action, DeleteEntity):
        return action.entity
    if isinstance(action, (AddParent, RemoveParent)):
        return Entity(EntityKind.CLASS, action.cls)
    if isinstance(action, SetAnnotation):
        return Entity(EntityKind.CLASS, action.subject)
    return None

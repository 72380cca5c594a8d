"""Revision log: edit compilation, append/revert, reconstruction, history."""

from .compile import compile_edit, default_minter, focal_entity, generate_label, mint_iri, state_entities
from .log import RevisionLog, now_ms
from .model import (
    AddAxiom,
    AddParent,
    ApplyChanges,
    AxiomState,
    ChangeError,
    ChangeOp,
    CreateClass,
    CreateEntity,
    DeleteEntity,
    EditAction,
    EmptyEdit,
    EmptyRevision,
    IneffectiveChange,
    NothingToRevert,
    RemoveAxiom,
    RemoveParent,
    Revision,
    SetAnnotation,
    UnknownEntity,
    UnknownOntology,
    UnknownRevision,
    apply_op,
    copy_state,
    invert,
)

__all__ = [name for name in dir() if not name.startswith("_")]

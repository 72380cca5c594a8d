"""Append-only revision log with revert and historical reconstruction."""

from __future__ import annotations

import time
from typing import Callable, Iterable, Optional, Sequence

from ..core.model import Entity, EntityKind, Declaration, Iri, entity_signature
from .model import (
    AxiomState,
    ChangeOp,
    EmptyRevision,
    IneffectiveChange,
    NothingToRevert,
    Revision,
    UnknownRevision,
    apply_op,
    copy_state,
    invert,
)


def now_ms() -> int:
    return int(time.time() * 1000)


class RevisionLog:
    """Ordered revisions over a fixed set of ontologies.

    The caller serializes writers; reads are safe against the immutable
    revision tuples. Head state is maintained incrementally and always equals
    a replay of every revision.
    """

    def __init__(self, ontology_ids: Iterable[str], clock: Callable[[], int] | None = None):
        self.ontology_ids = list(ontology_ids)
        if not self.ontology_ids:
            raise ValueError("a revision log needs at least one ontology")
        self._clock = clock or now_ms
        self._revisions: list[Revision] = []
        self._head: AxiomState = {ontology_id: {} for ontology_id in self.ontology_ids}

    @property
    def revisions(self) -> tuple[Revision, ...]:
        return tuple(self._revisions)

    @property
    def head_number(self) -> int:
        return len(self._revisions)

    @property
    def head_state(self) -> AxiomState:
        return copy_state(self._head)

    def get(self, number: int) -> Revision:
        if number < 1 or number > len(self._revisions):
            raise UnknownRevision(number)
        return self._revisions[number - 1]

    def append(
        self,
        changes: Sequence[ChangeOp],
        author: str,
        label: str,
        commit_message: Optional[str] = None,
    ) -> Revision:
        if not changes:
            raise EmptyRevision("a revision needs at least one change")
        candidate = copy_state(self._head)
        for op in changes:
            if not apply_op(candidate, op):
                raise IneffectiveChange(op)
        revision = Revision(
            number=len(self._revisions) + 1,
            author=author,
            timestamp_ms=self._clock(),
            label=label,
            commit_message=commit_message,
            changes=tuple(changes),
        )
        self._revisions.append(revision)
        self._head = candidate
        return revision

    def restore(self, revision: Revision) -> None:
        """Re-attach a previously persisted revision, verifying effectiveness."""
        if revision.number != len(self._revisions) + 1:
            raise UnknownRevision(revision.number)
        for op in revision.changes:
            if not apply_op(self._head, op):
                raise IneffectiveChange(op)
        self._revisions.append(revision)

    def revert(self, number: int, author: str) -> Revision:
        """Append the effective inverse of revision `number`.

        Inverse ops run in reverse order; ops that are no-ops against the
        current head are dropped. When everything drops there is nothing
        to revert.
        """
        target = self.get(number)
        candidate = copy_state(self._head)
        effective: list[ChangeOp] = []
        for op in reversed(target.changes):
            inverse = invert(op)
            if apply_op(candidate, inverse):
                effective.append(inverse)
        if not effective:
            raise NothingToRevert(f"revision {number} has no effect left to undo")
        revision = Revision(
            number=len(self._revisions) + 1,
            author=author,
            timestamp_ms=self._clock(),
            label=f"Reverted revision {number}",
            commit_message=None,
            changes=tuple(effective),
        )
        self._revisions.append(revision)
        self._head = candidate
        return revision

    def state_at(self, number: int) -> AxiomState:
        """State after applying revisions 1..number; 0 is the empty state."""
        if number < 0 or number > len(self._revisions):
            raise UnknownRevision(number)
        state: AxiomState = {ontology_id: {} for ontology_id in self.ontology_ids}
        for revision in self._revisions[:number]:
            for op in revision.changes:
                apply_op(state, op)
        return state

    def head_declared_kinds(self) -> dict[Iri, tuple[EntityKind, ...]]:
        kinds: dict[Iri, list[EntityKind]] = {}
        for axioms in self._head.values():
            for axiom in axioms:
                if isinstance(axiom, Declaration):
                    found = kinds.setdefault(axiom.entity.iri, [])
                    if axiom.entity.kind not in found:
                        found.append(axiom.entity.kind)
        return {iri: tuple(ks) for iri, ks in kinds.items()}

    def entity_history(self, entity: Entity) -> list[Revision]:
        """Revisions touching `entity`, ascending. Annotation subjects resolve
        against head-state declarations (Class when undeclared)."""
        declared = self.head_declared_kinds()
        hits = []
        for revision in self._revisions:
            for op in revision.changes:
                if entity in entity_signature(op.axiom, declared):
                    hits.append(revision)
                    break
        return hits

    def iri_history(self, iri: Iri) -> list[Revision]:
        """Kind-agnostic variant: revisions touching any entity with `iri`."""
        declared = self.head_declared_kinds()
        hits = []
        for revision in self._revisions:
            for op in revision.changes:
                if any(entity.iri == iri for entity in entity_signature(op.axiom, declared)):
                    hits.append(revision)
                    break
        return hits

"""Per-project tag store: definitions, manual assignments, rule evaluation."""

from __future__ import annotations

import uuid
from typing import Iterable, Mapping, Sequence

from ..access import Action, Role, require
from ..core.model import Entity, OntologyDocument
from .matching import MatchContext, matches
from .model import DuplicateTagLabel, Tag, TagRule, UnknownTag


class TagStore:
    def __init__(self):
        self.tags: dict[str, Tag] = {}
        self.rules: list[TagRule] = []
        self._manual: dict[Entity, frozenset[str]] = {}
        self._derived: dict[Entity, frozenset[str]] = {}

    def create_tag(
        self,
        label: str,
        description: str = "",
        color: str = "#d0d7de",
        tag_id: str | None = None,
    ) -> Tag:
        if any(t.label == label for t in self.tags.values()):
            raise DuplicateTagLabel(f"tag label {label!r} already in use")
        tag = Tag(tag_id or f"tag-{uuid.uuid4().hex[:8]}", label, description, color)
        self.tags[tag.id] = tag
        return tag

    def require_tag(self, tag_id: str) -> Tag:
        if tag_id not in self.tags:
            raise UnknownTag(tag_id)
        return self.tags[tag_id]

    def set_rules(self, rules: Sequence[TagRule]) -> None:
        for rule in rules:
            self.require_tag(rule.tag_id)
        self.rules = list(rules)

    def manual_tags(self, entity: Entity) -> frozenset[str]:
        return self._manual.get(entity, frozenset())

    def derived_tags(self, entity: Entity) -> frozenset[str]:
        return self._derived.get(entity, frozenset())

    def displayed_tags(self, entity: Entity) -> frozenset[str]:
        return self.manual_tags(entity) | self.derived_tags(entity)

    def set_entity_tags(self, entity: Entity, tag_ids: Iterable[str], role: Role | None) -> frozenset[str]:
        """Replace the manual tag set; derived tags are untouched."""
        require(role, Action.EDIT)
        wanted = frozenset(tag_ids)
        for tag_id in wanted:
            self.require_tag(tag_id)
        if wanted:
            self._manual[entity] = wanted
        else:
            self._manual.pop(entity, None)
        return self.displayed_tags(entity)

    def evaluate_rules(self, doc: OntologyDocument) -> dict[Entity, frozenset[str]]:
        """Recompute every rule-derived assignment in one pass.

        HasTag atoms see manual tags only, so evaluation is deterministic and
        independent of rule order. The result replaces all previous derived
        assignments.
        """
        ctx = MatchContext(doc, tags_of=self.manual_tags)
        derived: dict[Entity, set[str]] = {}
        for rule in self.rules:
            for entity in ctx.entities():
                if matches(rule.criteria, entity, ctx):
                    derived.setdefault(entity, set()).add(rule.tag_id)
        self._derived = {entity: frozenset(ids) for entity, ids in derived.items()}
        return dict(self._derived)

    def all_manual(self) -> dict[Entity, frozenset[str]]:
        return dict(self._manual)

    def all_derived(self) -> dict[Entity, frozenset[str]]:
        return dict(self._derived)

    def restore_manual(self, assignments: Mapping[Entity, frozenset[str]]) -> None:
        self._manual = {entity: frozenset(ids) for entity, ids in assignments.items() if ids}

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ontoforge.access import Action, PermissionDenied, Role, authorize, require
from ontoforge.core import Entity, EntityKind, Iri
from ontoforge.service import MalformedUrl, TABS, UnknownTab, entity_url, parse_entity_url

# The full capability grid, spelled out.
GRID = {
    (Role.VIEWER, Action.READ): True,
    (Role.VIEWER, Action.COMMENT): False,
    (Role.VIEWER, Action.EDIT): False,
    (Role.VIEWER, Action.ADMIN): False,
    (Role.COMMENTER, Action.READ): True,
    (Role.COMMENTER, Action.COMMENT): True,
    (Role.COMMENTER, Action.EDIT): False,
    (Role.COMMENTER, Action.ADMIN): False,
    (Role.EDITOR, Action.READ): True,
    (Role.EDITOR, Action.COMMENT): True,
    (Role.EDITOR, Action.EDIT): True,
    (Role.EDITOR, Action.ADMIN): False,
    (Role.OWNER, Action.READ): True,
    (Role.OWNER, Action.COMMENT): True,
    (Role.OWNER, Action.EDIT): True,
    (Role.OWNER, Action.ADMIN): True,
}


class TestAuthorize:
    def test_full_grid(self):
        for (role, action), allowed in GRID.items():
            assert authorize(role, action) is allowed, (role, action)

    def test_grid_is_total(self):
        assert len(GRID) == len(Role) * len(Action)

    def test_require_raises_for_missing_role(self):
        with pytest.raises(PermissionDenied):
            require(None, Action.READ)

    def test_require_passes(self):
        require(Role.EDITOR, Action.EDIT)


DATASET = Entity(EntityKind.CLASS, Iri("https://schema.org/Dataset"))


class TestEntityUrl:
    def test_schema_dataset_url(self):
        url = entity_url("p1", "Classes", DATASET)
        assert url == "/#projects/p1/edit/Classes?selection=Class(https%3A%2F%2Fschema.org%2FDataset)"

    def test_round_trip(self):
        assert parse_entity_url(entity_url("p1", "Classes", DATASET)) == ("p1", "Classes", DATASET)

    def test_unknown_tab(self):
        with pytest.raises(UnknownTab):
            entity_url("p1", "Nope", DATASET)

    def test_parse_rejects_bad_kind(self):
        with pytest.raises(MalformedUrl):
            parse_entity_url("/#projects/p1/edit/Classes?selection=Nope(x)")

    def test_parse_rejects_garbage(self):
        with pytest.raises(MalformedUrl):
            parse_entity_url("/#nope")

    def test_parse_rejects_unknown_tab(self):
        with pytest.raises(UnknownTab):
            parse_entity_url(
                "/#projects/p1/edit/Wat?selection=Class(https%3A%2F%2Fschema.org%2FX)"
            )

    @given(
        kind=st.sampled_from(list(EntityKind)),
        tab=st.sampled_from(TABS),
        suffix=st.text(
            alphabet="abzAZ09#?/ %()é中", min_size=0, max_size=20,
        ),
    )
    def test_round_trip_with_reserved_characters(self, kind, tab, suffix):
        iri_text = "http://ex.org/" + suffix.replace(" ", "%20")
        try:
            entity = Entity(kind, Iri(iri_text))
        except Exception:
            return
        url = entity_url("p-abc123", tab, entity)
        assert parse_entity_url(url) == ("p-abc123", tab, entity)

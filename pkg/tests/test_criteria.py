from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import AIRCRAFT, AIRBUS_A320, AIRBUS_AIRCRAFT, AIRBUS_BELUGA
from ontoforge.access import PermissionDenied, Role
from ontoforge.core import Entity, EntityKind, Iri, RDFS_LABEL
from ontoforge.criteria import (
    AnnotationContains,
    AnnotationMatchesRegex,
    EntityKindIs,
    HasTag,
    InvalidRegex,
    IriContains,
    IsSubClassOf,
    LacksAnnotationOn,
    MatchAll,
    MatchAny,
    MatchContext,
    SchemaError,
    TagRule,
    TagStore,
    UnknownTag,
    criteria_to_dict,
    matches,
    parse_criteria,
    search,
    serialize_criteria,
)
from oracles import naive_matches, naive_search
from randgen import random_criteria, random_search_fixture

A320 = Entity(EntityKind.CLASS, AIRBUS_A320)
BELUGA = Entity(EntityKind.CLASS, AIRBUS_BELUGA)

FIG4_QUERY = MatchAll((
    IsSubClassOf(AIRBUS_AIRCRAFT, "transitive"),
    AnnotationContains(RDFS_LABEL, "passenger", ignore_case=True),
))


class TestMatches:
    def test_subclass_plus_label_query_on_fixture(self, air_doc):
        ctx = MatchContext(air_doc)
        assert matches(FIG4_QUERY, A320, ctx)
        assert not matches(FIG4_QUERY, BELUGA, ctx)

    def test_empty_conjunction_matches_everything(self, air_doc):
        ctx = MatchContext(air_doc)
        assert all(matches(MatchAll(), e, ctx) for e in air_doc.entities)

    def test_empty_disjunction_matches_nothing(self, air_doc):
        ctx = MatchContext(air_doc)
        assert not any(matches(MatchAny(), e, ctx) for e in air_doc.entities)

    def test_lacks_annotation_on_unlabeled(self, air_doc):
        ctx = MatchContext(air_doc)
        label_prop = Entity(EntityKind.ANNOTATION_PROPERTY, RDFS_LABEL)
        assert matches(LacksAnnotationOn(RDFS_LABEL), label_prop, ctx)
        assert not matches(LacksAnnotationOn(RDFS_LABEL), A320, ctx)

    def test_case_insensitive_contains(self, air_doc):
        ctx = MatchContext(air_doc)
        for needle in ("PASSENGER", "Passenger", "passenger"):
            assert matches(AnnotationContains(RDFS_LABEL, needle, True), A320, ctx)
        assert not matches(AnnotationContains(RDFS_LABEL, "PASSENGER", False), A320, ctx)

    def test_regex_substring_semantics(self, air_doc):
        ctx = MatchContext(air_doc)
        assert matches(AnnotationMatchesRegex(RDFS_LABEL, r"pass\w+ jet"), A320, ctx)
        assert not matches(AnnotationMatchesRegex(RDFS_LABEL, r"^jet$"), A320, ctx)

    def test_invalid_regex_raises_at_construction(self):
        with pytest.raises(InvalidRegex):
            AnnotationMatchesRegex(RDFS_LABEL, "(unclosed")

    def test_subclass_mode_direct_vs_transitive(self, air_doc):
        ctx = MatchContext(air_doc)
        assert not matches(IsSubClassOf(AIRCRAFT, "direct"), A320, ctx)
        assert matches(IsSubClassOf(AIRCRAFT, "transitive"), A320, ctx)

    def test_conjunction_equals_pairwise_and(self, air_doc):
        rng = random.Random(60)
        ctx = MatchContext(air_doc)
        for _ in range(60):
            a = random_criteria(rng, air_doc, depth=2)
            b = random_criteria(rng, air_doc, depth=2)
            for entity in air_doc.entities:
                both = matches(MatchAll((a, b)), entity, ctx)
                assert both == (matches(a, entity, ctx) and matches(b, entity, ctx))
                either = matches(MatchAny((a, b)), entity, ctx)
                assert either == (matches(a, entity, ctx) or matches(b, entity, ctx))

    @given(st.text(max_size=30), st.text(max_size=6))
    def test_casefolded_contains_matches_ascii_lowercase_fold(self, haystack, needle):
        # shared folding routine cross-checked against naive lowercase on ASCII
        if haystack.isascii() and needle.isascii():
            folded = needle.casefold() in haystack.casefold()
            assert folded == (needle.lower() in haystack.lower())


class TestSearch:
    def test_fig4_query_returns_only_the_passenger_jet(self, air_doc):
        results = search(MatchContext(air_doc), FIG4_QUERY)
        assert [entity for entity, _ in results] == [A320]
        assert results[0][1] == "A320 passenger jet"

    def test_pagination_is_stable(self, air_doc):
        ctx = MatchContext(air_doc)
        everything = search(ctx, MatchAll(), limit=100)
        assert len(everything) >= 3
        paged = search(ctx, MatchAll(), limit=1, offset=1)
        assert paged == [everything[1]]

    def test_limit_must_be_positive(self, air_doc):
        with pytest.raises(ValueError):
            search(MatchContext(air_doc), MatchAll(), limit=0)

    def test_matches_brute_force_oracle(self):
        rng = random.Random(61)
        for _ in range(40):
            doc = random_search_fixture(rng, entities=rng.randint(5, 45))
            criteria = random_criteria(rng, doc, depth=3)
            got = search(MatchContext(doc), criteria, limit=10_000)
            expected = naive_search(list(doc.axioms), doc.prefixes.items(), criteria)
            assert got == expected


class TestTagRules:
    def test_missing_label_rule(self, air_doc):
        store = TagStore()
        tag = store.create_tag("Missing Label", color="#c00")
        store.set_rules([TagRule(tag.id, LacksAnnotationOn(RDFS_LABEL))])
        derived = store.evaluate_rules(air_doc)
        unlabeled = {
            e for e in air_doc.entities
            if not any(
                a.property == RDFS_LABEL
                for a in air_doc.annotations_by_subject.get(e.iri, ())
            )
        }
        assert set(derived) == unlabeled
        assert all(derived[e] == {tag.id} for e in derived)
        # the four labelled classes never carry the tag
        assert A320 not in derived and BELUGA not in derived

    def test_rule_removed_after_label_added(self, air_doc):
        from ontoforge.core import AnnotationAssertion, Literal

        store = TagStore()
        tag = store.create_tag("Missing Label")
        store.set_rules([TagRule(tag.id, LacksAnnotationOn(RDFS_LABEL))])
        store.evaluate_rules(air_doc)
        label_prop = Entity(EntityKind.ANNOTATION_PROPERTY, RDFS_LABEL)
        assert tag.id in store.derived_tags(label_prop)
        patched = air_doc.with_axiom(
            AnnotationAssertion(RDFS_LABEL, RDFS_LABEL, Literal("label"))
        )
        store.evaluate_rules(patched)
        assert tag.id not in store.derived_tags(label_prop)

    def test_no_rules_means_no_derived(self, air_doc):
        store = TagStore()
        assert store.evaluate_rules(air_doc) == {}

    def test_evaluation_is_idempotent(self, air_doc):
        store = TagStore()
        tag = store.create_tag("Missing Label")
        store.set_rules([TagRule(tag.id, LacksAnnotationOn(RDFS_LABEL))])
        first = store.evaluate_rules(air_doc)
        second = store.evaluate_rules(air_doc)
        assert first == second

    def test_hastag_rules_see_manual_tags_only(self, air_doc):
        store = TagStore()
        seed = store.create_tag("Seed")
        derived_tag = store.create_tag("Derived")
        chained = store.create_tag("Chained")
        store.set_entity_tags(A320, [seed.id], Role.EDITOR)
        store.set_rules([
            TagRule(derived_tag.id, HasTag(seed.id)),
            TagRule(chained.id, HasTag(derived_tag.id)),  # never fires: derived invisible
        ])
        derived = store.evaluate_rules(air_doc)
        assert derived[A320] == {derived_tag.id}
        assert all(chained.id not in ids for ids in derived.values())

    def test_manual_and_derived_compose(self, air_doc):
        store = TagStore()
        manual = store.create_tag("Reviewed")
        rule_tag = store.create_tag("Missing Label")
        store.set_rules([TagRule(rule_tag.id, LacksAnnotationOn(RDFS_LABEL))])
        store.evaluate_rules(air_doc)
        label_prop = Entity(EntityKind.ANNOTATION_PROPERTY, RDFS_LABEL)
        store.set_entity_tags(label_prop, [manual.id], Role.OWNER)
        assert store.displayed_tags(label_prop) == {manual.id, rule_tag.id}
        store.set_entity_tags(label_prop, [], Role.OWNER)
        assert store.displayed_tags(label_prop) == {rule_tag.id}

    def test_commenter_cannot_assign_tags(self):
        store = TagStore()
        tag = store.create_tag("T")
        with pytest.raises(PermissionDenied):
            store.set_entity_tags(A320, [tag.id], Role.COMMENTER)

    def test_unknown_tag_rejected(self):
        store = TagStore()
        with pytest.raises(UnknownTag):
            store.set_entity_tags(A320, ["nope"], Role.EDITOR)


class TestCriteriaWire:
    def test_empty_match_all(self):
        assert parse_criteria('{"type":"MatchAll","criteria":[]}') == MatchAll()

    def test_fig4_document_round_trip(self):
        document = {
            "type": "MatchAll",
            "criteria": [
                {"type": "IsSubClassOf", "cls": AIRBUS_AIRCRAFT.value, "mode": "transitive"},
                {
                    "type": "AnnotationContains",
                    "property": RDFS_LABEL.value,
                    "text": "passenger",
                    "ignoreCase": True,
                },
            ],
        }
        node = parse_criteria(json.dumps(document))
        assert node == FIG4_QUERY
        assert json.loads(serialize_criteria(node)) == document

    def test_unknown_type_is_schema_error(self):
        with pytest.raises(SchemaError):
            parse_criteria('{"type":"Nope"}')

    def test_error_paths_point_at_the_field(self):
        with pytest.raises(SchemaError) as err:
            parse_criteria(
                '{"type":"MatchAll","criteria":[{"type":"IsSubClassOf","cls":"http://x.example/C","mode":"up"}]}'
            )
        assert err.value.path == ".criteria[0].mode"

    def test_non_boolean_ignore_case_rejected(self):
        with pytest.raises(SchemaError):
            parse_criteria(
                '{"type":"AnnotationContains","property":null,"text":"x","ignoreCase":"yes"}'
            )

    def test_invalid_json(self):
        with pytest.raises(SchemaError):
            parse_criteria("{nope")

    def test_invalid_regex_surfaces_from_wire(self):
        with pytest.raises(InvalidRegex):
            parse_criteria('{"type":"AnnotationMatchesRegex","property":null,"pattern":"("}')

    def test_random_round_trips(self, air_doc):
        rng = random.Random(62)
        for _ in range(120):
            node = random_criteria(rng, air_doc, depth=3)
            assert parse_criteria(serialize_criteria(node)) == node
            # serialize ∘ parse is canonical: stable under a second pass
            text = serialize_criteria(node)
            assert serialize_criteria(parse_criteria(text)) == text

    def test_all_atom_kinds_round_trip(self):
        nodes = [
            IsSubClassOf(AIRCRAFT, "direct"),
            AnnotationContains(None, "x", False),
            AnnotationMatchesRegex(None, "a+"),
            LacksAnnotationOn(RDFS_LABEL),
            EntityKindIs(EntityKind.DATATYPE),
            HasTag("tag-1"),
            IriContains("air"),
            MatchAny((MatchAll(), IriContains("x"))),
        ]
        from ontoforge.criteria import HasAnnotationOn

        nodes.append(HasAnnotationOn(RDFS_LABEL))
        for node in nodes:
            assert parse_criteria(serialize_criteria(node)) == node

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontoforge.core import (
    AnnotationAssertion,
    ClassAssertion,
    Declaration,
    Entity,
    EntityKind,
    Iri,
    Literal,
    MalformedIri,
    MalformedName,
    NamedClass,
    OntologyDocument,
    PrefixError,
    PrefixTable,
    RDFS_LABEL,
    SomeValuesFrom,
    SubClassOf,
    UnknownPrefix,
    entity_signature,
    expand_prefixed_name,
)
from oracles import declared_kinds_of, walk_signature
from randgen import random_axiom


class TestIri:
    def test_accepts_absolute(self):
        assert Iri("http://example.org/x").value == "http://example.org/x"
        assert Iri("urn:uuid:1234").value == "urn:uuid:1234"

    @pytest.mark.parametrize("bad", ["", "no-scheme", "http://a b", "ht tp://x", "rel/ative"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(MalformedIri):
            Iri(bad)


class TestPrefixTable:
    def test_builtins_always_present(self):
        table = PrefixTable.standard()
        for prefix in ("rdf", "rdfs", "owl", "xsd", "schema", "wikidata", "dbpedia"):
            assert prefix in table

    def test_builtin_cannot_be_rebound(self):
        with pytest.raises(PrefixError):
            PrefixTable.standard().register("rdf", "http://other.example/")

    def test_register_keeps_builtins(self):
        table = PrefixTable.standard().register("air", "http://example.org/air#")
        assert table.namespace_of("air").value == "http://example.org/air#"
        assert table.namespace_of("schema").value == "https://schema.org/"

    def test_compact_picks_shortest(self):
        table = PrefixTable.standard().register("sc", "https://schema.org/")
        assert table.compact(Iri("https://schema.org/Dataset")) == "sc:Dataset"

    def test_compact_rejects_slashy_locals(self):
        assert PrefixTable.standard().compact(Iri("https://schema.org/a/b")) is None


class TestExpandPrefixedName:
    def test_schema_dataset(self):
        # The headline case: typing schema:Dataset yields the schema.org IRI.
        table = PrefixTable.standard()
        assert expand_prefixed_name(table, "schema:Dataset") == Iri("https://schema.org/Dataset")

    def test_wikidata(self):
        table = PrefixTable.standard()
        assert expand_prefixed_name(table, "wikidata:Q42") == Iri("http://www.wikidata.org/entity/Q42")

    def test_unknown_prefix(self):
        with pytest.raises(UnknownPrefix) as err:
            expand_prefixed_name(PrefixTable.standard(), "unknownpfx:X")
        assert err.value.prefix == "unknownpfx"

    @pytest.mark.parametrize("bad", ["nocolon", "two:colons:here", "sp ace:x", "schema:a/b"])
    def test_malformed(self, bad):
        with pytest.raises(MalformedName):
            expand_prefixed_name(PrefixTable.standard(), bad)

    @given(
        prefix=st.sampled_from(["rdf", "rdfs", "owl", "schema", "wikidata"]),
        local=st.text(alphabet="ABCxyz0189_.-", max_size=12),
    )
    def test_expansion_is_concatenation(self, prefix, local):
        table = PrefixTable.standard()
        expanded = expand_prefixed_name(table, f"{prefix}:{local}")
        assert expanded.value == table.namespace_of(prefix).value + local


class TestEntitySignature:
    def test_named_subclassof(self):
        a, b = Iri("http://x.example/A"), Iri("http://x.example/B")
        axiom = SubClassOf(NamedClass(a), NamedClass(b))
        assert entity_signature(axiom) == {
            Entity(EntityKind.CLASS, a),
            Entity(EntityKind.CLASS, b),
        }

    def test_annotation_subject_defaults_to_class(self):
        x = Iri("http://x.example/X")
        axiom = AnnotationAssertion(RDFS_LABEL, x, Literal("x"))
        assert entity_signature(axiom) == {
            Entity(EntityKind.ANNOTATION_PROPERTY, RDFS_LABEL),
            Entity(EntityKind.CLASS, x),
        }

    def test_annotation_subject_resolves_against_declarations(self):
        x = Iri("http://x.example/X")
        axiom = AnnotationAssertion(RDFS_LABEL, x, Literal("x"))
        declared = {x: (EntityKind.OBJECT_PROPERTY,)}
        assert Entity(EntityKind.OBJECT_PROPERTY, x) in entity_signature(axiom, declared)
        assert Entity(EntityKind.CLASS, x) not in entity_signature(axiom, declared)

    def test_class_assertion_with_existential(self):
        p, c, i = Iri("http://x.example/p"), Iri("http://x.example/C"), Iri("http://x.example/i")
        axiom = ClassAssertion(SomeValuesFrom(p, NamedClass(c)), i)
        assert entity_signature(axiom) == {
            Entity(EntityKind.OBJECT_PROPERTY, p),
            Entity(EntityKind.CLASS, c),
            Entity(EntityKind.NAMED_INDIVIDUAL, i),
        }

    def test_matches_walk_oracle_on_random_axioms(self):
        rng = random.Random(4821)
        axioms = [random_axiom(rng, depth=4) for _ in range(400)]
        declared = declared_kinds_of(axioms)
        for axiom in axioms:
            assert entity_signature(axiom, declared) == walk_signature(axiom, declared)


class TestOntologyDocument:
    def test_deduplicates_preserving_order(self):
        a = SubClassOf(NamedClass(Iri("http://x.example/A")), NamedClass(Iri("http://x.example/B")))
        b = Declaration(Entity(EntityKind.CLASS, Iri("http://x.example/A")))
        doc = OntologyDocument(None, None, (a, b, a))
        assert doc.axioms == (a, b)

    def test_with_axiom_is_idempotent(self):
        a = Declaration(Entity(EntityKind.CLASS, Iri("http://x.example/A")))
        doc = OntologyDocument(None, None, (a,))
        assert doc.with_axiom(a) is doc
        assert len(doc.with_axiom(a).axioms) == 1

    def test_structural_equality_ignores_order(self):
        a = Declaration(Entity(EntityKind.CLASS, Iri("http://x.example/A")))
        b = Declaration(Entity(EntityKind.CLASS, Iri("http://x.example/B")))
        assert OntologyDocument(None, None, (a, b)).structurally_equal(
            OntologyDocument(None, None, (b, a))
        )

    def test_literal_lexical_forms_not_normalized(self):
        one = AnnotationAssertion(RDFS_LABEL, Iri("http://x.example/A"), Literal("1"))
        zero_one = AnnotationAssertion(RDFS_LABEL, Iri("http://x.example/A"), Literal("01"))
        assert one != zero_one

    def test_literal_rejects_lang_plus_datatype(self):
        with pytest.raises(ValueError):
            Literal("x", language="en", datatype=Iri("http://www.w3.org/2001/XMLSchema#string"))

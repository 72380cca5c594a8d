from __future__ import annotations

import random
import xml.etree.ElementTree as ET

import pytest

from conftest import AIRBUS_A320, AIRBUS_AIRCRAFT
from ontoforge.core import (
    AnnotationAssertion,
    ClassAssertion,
    Declaration,
    Entity,
    EntityKind,
    Iri,
    Literal,
    NamedClass,
    ObjectPropertyAssertion,
    OntologyDocument,
    RDFS_LABEL,
    SomeValuesFrom,
    SubClassOf,
)
from ontoforge.graph import (
    CannotHideRoot,
    EdgeKind,
    EntityGraph,
    GraphEdge,
    MissingLayout,
    TooLarge,
    UnknownEntity,
    build_graph,
    derive_edges,
    export_dot,
    export_graph,
    export_svg,
    hide_nodes,
    isolate_paths,
    layout_graph,
)
from oracles import path_union
from randgen import random_connected_graph

E = "http://g.example/"


def _cls(name: str) -> Entity:
    return Entity(EntityKind.CLASS, Iri(E + name))


def _ind(name: str) -> Entity:
    return Entity(EntityKind.NAMED_INDIVIDUAL, Iri(E + name))


@pytest.fixture()
def rules_doc() -> OntologyDocument:
    """One axiom per edge-derivation rule, plus labels."""
    a320, aircraft, engine = Iri(E + "A320"), Iri(E + "Aircraft"), Iri(E + "LEAP1A")
    has_engine, knows = Iri(E + "hasEngine"), Iri(E + "pairedWith")
    msn42, msn43 = Iri(E + "msn42"), Iri(E + "msn43")
    return OntologyDocument(None, None, (
        Declaration(Entity(EntityKind.CLASS, a320)),
        Declaration(Entity(EntityKind.CLASS, aircraft)),
        Declaration(Entity(EntityKind.CLASS, engine)),
        Declaration(Entity(EntityKind.NAMED_INDIVIDUAL, msn42)),
        Declaration(Entity(EntityKind.NAMED_INDIVIDUAL, msn43)),
        SubClassOf(NamedClass(a320), NamedClass(aircraft)),
        SubClassOf(NamedClass(a320), SomeValuesFrom(has_engine, NamedClass(engine))),
        ClassAssertion(NamedClass(a320), msn42),
        ObjectPropertyAssertion(knows, msn42, msn43),
        AnnotationAssertion(RDFS_LABEL, has_engine, Literal("hasEngine")),
        AnnotationAssertion(RDFS_LABEL, knows, Literal("pairedWith")),
    ))


class TestDeriveAndBuild:
    def test_all_four_edge_rules(self, rules_doc):
        edges = derive_edges(rules_doc)
        assert GraphEdge(_cls("A320"), _cls("Aircraft"), EdgeKind.SUBCLASS_OF) in edges
        assert GraphEdge(
            _cls("A320"), _cls("LEAP1A"), EdgeKind.PROPERTY,
            label="hasEngine", property_iri=Iri(E + "hasEngine"),
        ) in edges
        assert GraphEdge(_ind("msn42"), _cls("A320"), EdgeKind.INSTANCE_OF) in edges
        assert GraphEdge(
            _ind("msn42"), _ind("msn43"), EdgeKind.PROPERTY,
            label="pairedWith", property_iri=Iri(E + "pairedWith"),
        ) in edges
        assert len(edges) == 4

    def test_air_fixture_depth_one(self, air_doc):
        graph = build_graph(air_doc, Entity(EntityKind.CLASS, AIRBUS_A320), depth=1)
        assert GraphEdge(
            Entity(EntityKind.CLASS, AIRBUS_A320),
            Entity(EntityKind.CLASS, AIRBUS_AIRCRAFT),
            EdgeKind.SUBCLASS_OF,
        ) in graph.edges

    def test_bfs_ball_includes_in_and_out_edges(self, rules_doc):
        graph = build_graph(rules_doc, _cls("A320"), depth=1)
        assert graph.nodes == {_cls("A320"), _cls("Aircraft"), _cls("LEAP1A"), _ind("msn42")}
        assert len(graph.edges) == 3  # msn42->msn43 excluded: msn43 outside the ball

    def test_deeper_ball_picks_up_second_hop(self, rules_doc):
        graph = build_graph(rules_doc, _cls("A320"), depth=2)
        assert _ind("msn43") in graph.nodes
        assert len(graph.edges) == 4

    def test_edges_equal_fold_restricted_to_nodes(self, rules_doc):
        graph = build_graph(rules_doc, _cls("A320"), depth=1)
        refold = {
            e for e in derive_edges(rules_doc)
            if e.source in graph.nodes and e.target in graph.nodes
        }
        assert graph.edges == refold

    def test_equivalent_classes_contribute_no_edges(self):
        from ontoforge.core import EquivalentClasses

        doc = OntologyDocument(None, None, (
            EquivalentClasses((NamedClass(Iri(E + "A")), NamedClass(Iri(E + "B")))),
        ))
        assert derive_edges(doc) == set()

    def test_unknown_root(self, rules_doc):
        with pytest.raises(UnknownEntity):
            build_graph(rules_doc, _cls("Ghost"), depth=1)

    def test_node_cap(self, rules_doc):
        with pytest.raises(TooLarge):
            build_graph(rules_doc, _cls("A320"), depth=3, node_cap=2)


def _diamond() -> EntityGraph:
    a, b, c, d = _cls("A"), _cls("B"), _cls("C"), _cls("D")
    edges = {
        GraphEdge(a, b, EdgeKind.SUBCLASS_OF),
        GraphEdge(b, d, EdgeKind.SUBCLASS_OF),
        GraphEdge(a, c, EdgeKind.SUBCLASS_OF),
        GraphEdge(c, d, EdgeKind.SUBCLASS_OF),
    }
    return EntityGraph(a, frozenset({a, b, c, d}), frozenset(edges))


class TestIsolatePaths:
    def test_same_node_gives_single_node(self):
        graph = _diamond()
        result = isolate_paths(graph, graph.root, graph.root)
        assert result.nodes == {graph.root}
        assert result.edges == frozenset()

    def test_diamond_keeps_both_branches(self):
        graph = _diamond()
        result = isolate_paths(graph, _cls("A"), _cls("D"))
        assert result.nodes == graph.nodes
        assert result.edges == graph.edges

    def test_disconnected_pair_gives_only_start(self):
        a, b = _cls("A"), _cls("B")
        graph = EntityGraph(a, frozenset({a, b}), frozenset())
        result = isolate_paths(graph, a, b)
        assert result.nodes == {a}

    def test_dead_end_branches_pruned(self):
        a, b, c = _cls("A"), _cls("B"), _cls("C")
        edges = {GraphEdge(a, b, EdgeKind.SUBCLASS_OF), GraphEdge(a, c, EdgeKind.SUBCLASS_OF)}
        graph = EntityGraph(a, frozenset({a, b, c}), frozenset(edges))
        result = isolate_paths(graph, a, b)
        assert result.nodes == {a, b}
        assert len(result.edges) == 1

    def test_path_length_cap(self):
        nodes = [_cls(f"N{i}") for i in range(13)]
        edges = {
            GraphEdge(nodes[i], nodes[i + 1], EdgeKind.SUBCLASS_OF)
            for i in range(len(nodes) - 1)
        }
        graph = EntityGraph(nodes[0], frozenset(nodes), frozenset(edges))
        assert isolate_paths(graph, nodes[0], nodes[10]).nodes == set(nodes[:11])
        # 12 edges needed, over the cap of 10
        assert isolate_paths(graph, nodes[0], nodes[12]).nodes == {nodes[0]}

    def test_matches_enumeration_oracle_on_random_graphs(self):
        rng = random.Random(83)
        for _ in range(60):
            graph = random_connected_graph(rng, max_nodes=8)
            nodes = sorted(graph.nodes, key=lambda e: e.iri.value)
            for a in nodes:
                for b in nodes:
                    if a == b:
                        continue
                    expected_nodes, expected_edges = path_union(graph, a, b)
                    result = isolate_paths(graph, a, b)
                    if not expected_nodes:
                        assert result.nodes == {a} and not result.edges
                    else:
                        assert result.nodes == expected_nodes
                        assert result.edges == expected_edges

    def test_unknown_endpoint(self):
        graph = _diamond()
        with pytest.raises(UnknownEntity):
            isolate_paths(graph, graph.root, _cls("Ghost"))


class TestHideNodes:
    def test_hide_nothing_is_identity(self):
        graph = _diamond()
        result = hide_nodes(graph, set())
        assert result.nodes == graph.nodes and result.edges == graph.edges

    def test_hide_middle_of_chain(self):
        a, b, c = _cls("A"), _cls("B"), _cls("C")
        edges = {GraphEdge(a, b, EdgeKind.SUBCLASS_OF), GraphEdge(b, c, EdgeKind.SUBCLASS_OF)}
        graph = EntityGraph(a, frozenset({a, b, c}), frozenset(edges))
        result = hide_nodes(graph, {b})
        assert result.nodes == {a, c}
        assert result.edges == frozenset()  # no transitive re-linking

    def test_cannot_hide_root(self):
        graph = _diamond()
        with pytest.raises(CannotHideRoot):
            hide_nodes(graph, {graph.root})

    def test_no_incident_edges_survive(self):
        rng = random.Random(84)
        for _ in range(30):
            graph = random_connected_graph(rng, max_nodes=8)
            hidden = {n for n in graph.nodes if n != graph.root and rng.random() < 0.4}
            result = hide_nodes(graph, hidden)
            assert result.nodes == graph.nodes - hidden
            assert all(
                e.source not in hidden and e.target not in hidden for e in result.edges
            )


class TestLayout:
    def test_single_node(self):
        a = _cls("A")
        graph = EntityGraph(a, frozenset({a}), frozenset())
        assert layout_graph(graph) == {a: (0, 0)}

    def test_two_children_ordered_by_name(self):
        root, alpha, beta = _cls("Root"), _cls("Alpha"), _cls("Beta")
        graph = EntityGraph(
            root, frozenset({root, alpha, beta}),
            frozenset({
                GraphEdge(alpha, root, EdgeKind.SUBCLASS_OF),
                GraphEdge(beta, root, EdgeKind.SUBCLASS_OF),
            }),
            names={root: "Root", alpha: "Alpha", beta: "Beta"},
        )
        layout = layout_graph(graph)
        assert layout[root] == (0, 0)
        assert layout[alpha] == (220, 0)
        assert layout[beta] == (220, 70)

    def test_deterministic(self):
        rng = random.Random(85)
        for _ in range(20):
            graph = random_connected_graph(rng)
            assert layout_graph(graph) == layout_graph(graph)

    def test_disconnected_nodes_get_positions(self):
        a, b = _cls("A"), _cls("B")
        graph = EntityGraph(a, frozenset({a, b}), frozenset())
        layout = layout_graph(graph)
        assert set(layout) == {a, b}
        assert layout[b][0] > layout[a][0]


class TestExport:
    def test_dot_statement_counts(self, rules_doc):
        graph = build_graph(rules_doc, _cls("A320"), depth=2)
        dot = export_dot(graph)
        node_lines = [l for l in dot.splitlines() if "[label=" in l and "->" not in l]
        edge_lines = [l for l in dot.splitlines() if "->" in l]
        assert len(node_lines) == len(graph.nodes)
        assert len(edge_lines) == len(graph.edges)

    def test_dot_edge_styles(self, rules_doc):
        graph = build_graph(rules_doc, _cls("A320"), depth=2)
        dot = export_dot(graph)
        assert dot.count("style=dashed") == 1
        assert 'label="hasEngine"' in dot
        assert 'label="pairedWith"' in dot

    def test_dot_quoting(self):
        a = _cls("A")
        graph = EntityGraph(a, frozenset({a}), frozenset(), names={a: 'weird "name"'})
        assert '\\"name\\"' in export_dot(graph)

    def test_svg_is_well_formed_with_expected_elements(self):
        graph = _diamond()
        svg = export_svg(graph, layout_graph(graph))
        root = ET.fromstring(svg)
        ns = "{http://www.w3.org/2000/svg}"
        rects = root.findall(f".//{ns}rect")
        lines = root.findall(f".//{ns}line")
        assert len(rects) == 4
        assert len(lines) == 4

    def test_svg_dashed_and_labelled(self, rules_doc):
        graph = build_graph(rules_doc, _cls("A320"), depth=2)
        svg = export_svg(graph, layout_graph(graph))
        assert svg.count("stroke-dasharray") == 1
        assert ">hasEngine</text>" in svg

    def test_svg_missing_layout(self):
        graph = _diamond()
        with pytest.raises(MissingLayout):
            export_svg(graph, {})

    def test_export_graph_dispatch(self, rules_doc):
        graph = build_graph(rules_doc, _cls("A320"), depth=1)
        assert export_graph(graph, format="dot").startswith("digraph")
        assert export_graph(graph, format="svg").startswith("<?xml")
        with pytest.raises(ValueError):
            export_graph(graph, format="png")

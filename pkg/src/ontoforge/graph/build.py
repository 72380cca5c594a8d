"""Entity neighborhood graphs with typed edges, path isolation, node hiding."""

from __future__ import annotations

from collections import deque
from enum import Enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from ..core.model import (
    ClassAssertion,
    Entity,
    EntityKind,
    Iri,
    NamedClass,
    ObjectPropertyAssertion,
    OntologyDocument,
    SomeValuesFrom,
    SubClassOf,
    local_name,
)
from ..core.queries import display_name


class GraphError(Exception):
    pass


class UnknownEntity(GraphError):
    def __init__(self, entity: Entity):
        super().__init__(f"entity not in graph or project: {entity}")
        self.entity = entity


class CannotHideRoot(GraphError):
    pass


class MissingLayout(GraphError):
    def __init__(self, entity: Entity):
        super().__init__(f"no layout position for {entity}")
        self.entity = entity


class TooLarge(GraphError):
    pass


class EdgeKind(Enum):
    SUBCLASS_OF = "SubClassOf"
    INSTANCE_OF = "InstanceOf"
    PROPERTY = "Property"


@dataclass(frozen=True)
class GraphEdge:
    source: Entity
    target: Entity
    kind: EdgeKind
    label: str = ""
    property_iri: Optional[Iri] = None

    def __post_init__(self):
        if self.kind is EdgeKind.PROPERTY:
            if self.property_iri is None:
                raise ValueError("property edges carry the property IRI")
        elif self.label or self.property_iri is not None:
            raise ValueError(f"{self.kind.value} edges carry no label")


@dataclass(frozen=True)
class EntityGraph:
    root: Entity
    nodes: frozenset[Entity]
    edges: frozenset[GraphEdge]
    names: Mapping[Entity, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(self.edges))
        if self.root not in self.nodes:
            raise ValueError("root must be a node")
        for edge in self.edges:
            if edge.source not in self.nodes or edge.target not in self.nodes:
                raise ValueError("edge endpoint outside node set")

    def name_of(self, entity: Entity) -> str:
        return self.names.get(entity) or local_name(entity.iri)


def derive_edges(doc: OntologyDocument) -> set[GraphEdge]:
    """One edge per relation-bearing axiom shape.

    Named-to-named SubClassOf is an unlabelled subclass edge; an existential
    superclass with a named filler becomes a labelled property edge; class
    assertions become instance-of edges; object property assertions become
    labelled property edges between individuals.
    """
    edges: set[GraphEdge] = set()
    for axiom in doc.axioms:
        if isinstance(axiom, SubClassOf) and isinstance(axiom.sub, NamedClass):
            if isinstance(axiom.sup, NamedClass):
                edges.add(GraphEdge(
                    Entity(EntityKind.CLASS, axiom.sub.iri),
                    Entity(EntityKind.CLASS, axiom.sup.iri),
                    EdgeKind.SUBCLASS_OF,
                ))
            elif isinstance(axiom.sup, SomeValuesFrom) and isinstance(axiom.sup.filler, NamedClass):
                edges.add(GraphEdge(
                    Entity(EntityKind.CLASS, axiom.sub.iri),
                    Entity(EntityKind.CLASS, axiom.sup.filler.iri),
                    EdgeKind.PROPERTY,
                    label=display_name(doc, axiom.sup.property),
                    property_iri=axiom.sup.property,
                ))
        elif isinstance(axiom, ClassAssertion) and isinstance(axiom.ce, NamedClass):
            edges.add(GraphEdge(
                Entity(EntityKind.NAMED_INDIVIDUAL, axiom.individual),
                Entity(EntityKind.CLASS, axiom.ce.iri),
                EdgeKind.INSTANCE_OF,
            ))
        elif isinstance(axiom, ObjectPropertyAssertion):
            edges.add(GraphEdge(
                Entity(EntityKind.NAMED_INDIVIDUAL, axiom.source),
                Entity(EntityKind.NAMED_INDIVIDUAL, axiom.target),
                EdgeKind.PROPERTY,
                label=display_name(doc, axiom.property),
                property_iri=axiom.property,
            ))
    return edges


def _adjacency(edges: Iterable[GraphEdge]) -> dict[Entity, set[Entity]]:
    adj: dict[Entity, set[Entity]] = {}
    for edge in edges:
        adj.setdefault(edge.source, set()).add(edge.target)
        adj.setdefault(edge.target, set()).add(edge.source)
    return adj


MAX_GRAPH_NODES = 500


def build_graph(
    doc: OntologyDocument,
    root: Entity,
    depth: int = 2,
    node_cap: int = MAX_GRAPH_NODES,
) -> EntityGraph:
    """Undirected BFS ball of radius `depth` around `root` over derived edges."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if root not in doc.entities:
        raise UnknownEntity(root)
    all_edges = derive_edges(doc)
    adjacency = _adjacency(all_edges)
    nodes: set[Entity] = {root}
    frontier = deque([(root, 0)])
    while frontier:
        current, dist = frontier.popleft()
        if dist == depth:
            continue
        for neighbor in adjacency.get(current, ()):
            if neighbor not in nodes:
                nodes.add(neighbor)
                if len(nodes) > node_cap:
                    raise TooLarge(f"graph exceeds {node_cap} nodes")
                frontier.append((neighbor, dist + 1))
    edges = frozenset(e for e in all_edges if e.source in nodes and e.target in nodes)
    names = {entity: display_name(doc, entity) for entity in nodes}
    return EntityGraph(root, frozenset(nodes), edges, names)


MAX_PATH_LENGTH = 10


def isolate_paths(
    graph: EntityGraph,
    a: Entity,
    b: Entity,
    max_length: int = MAX_PATH_LENGTH,
) -> EntityGraph:
    """Union of all simple paths between `a` and `b` up to `max_length` edges.

    Traversal ignores edge direction; kept edges keep their stored direction
    and kind. With no path (or a == b) the result is just {a}.
    """
    if a not in graph.nodes:
        raise UnknownEntity(a)
    if b not in graph.nodes:
        raise UnknownEntity(b)
    if a == b:
        return EntityGraph(a, frozenset({a}), frozenset(), {a: graph.name_of(a)})

    adjacency = _adjacency(graph.edges)
    kept_nodes: set[Entity] = set()
    kept_pairs: set[frozenset[Entity]] = set()
    path: list[Entity] = [a]
    on_path = {a}

    def walk(current: Entity):
        if len(path) - 1 >= max_length:
            return
        for neighbor in adjacency.get(current, ()):
            if neighbor in on_path:
                continue
            path.append(neighbor)
            on_path.add(neighbor)
            if neighbor == b:
                kept_nodes.update(path)
                kept_pairs.update(
                    frozenset((path[i], path[i + 1])) for i in range(len(path) - 1)
                )
            else:
                walk(neighbor)
            on_path.discard(neighbor)
            path.pop()

    walk(a)
    if not kept_nodes:
        return EntityGraph(a, frozenset({a}), frozenset(), {a: graph.name_of(a)})
    edges = frozenset(
        e for e in graph.edges if frozenset((e.source, e.target)) in kept_pairs
    )
    names = {entity: graph.name_of(entity) for entity in kept_nodes}
    return EntityGraph(a, frozenset(kept_nodes), edges, names)


def hide_nodes(graph: EntityGraph, hidden: Iterable[Entity]) -> EntityGraph:
    """Drop nodes and every incident edge. The root cannot be hidden."""
    hidden_set = set(hidden)
    if graph.root in hidden_set:
        raise CannotHideRoot("the root entity cannot be hidden")
    nodes = graph.nodes - hidden_set
    edges = frozenset(
        e for e in graph.edges if e.source not in hidden_set and e.target not in hidden_set
    )
    names = {entity: graph.name_of(entity) for entity in nodes}
    return EntityGraph(graph.root, nodes, edges, names)

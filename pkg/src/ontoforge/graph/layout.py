"""Deterministic layered layout: layer by BFS distance from the root."""

from __future__ import annotations

from collections import deque

from ..core.model import Entity
from .build import EntityGraph, _adjacency

LAYER_SPACING_X = 220
NODE_SPACING_Y = 70


def layout_graph(graph: EntityGraph) -> dict[Entity, tuple[int, int]]:
    """Pure function: identical graphs always produce identical positions.

    Nodes sit at x = layer * 220, y = index * 70, where layer is the
    undirected BFS distance from the root and index orders a layer by
    display name. Nodes disconnected from the root go into one final layer.
    """
    adjacency = _adjacency(graph.edges)
    distance: dict[Entity, int] = {graph.root: 0}
    frontier = deque([graph.root])
    while frontier:
        current = frontier.popleft()
        for neighbor in adjacency.get(current, ()):
            if neighbor not in distance:
                distance[neighbor] = distance[current] + 1
                frontier.append(neighbor)

    layers: dict[int, list[Entity]] = {}
    reachable_max = max(distance.values(), default=0)
    for node in graph.nodes:
        layer = distance.get(node, reachable_max + 1)
        layers.setdefault(layer, []).append(node)

    positions: dict[Entity, tuple[int, int]] = {}
    for layer, members in layers.items():
        members.sort(key=lambda e: (graph.name_of(e), e.iri.value, e.kind.value))
        for index, node in enumerate(members):
            positions[node] = (layer * LAYER_SPACING_X, index * NODE_SPACING_Y)
    return positions

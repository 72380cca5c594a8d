"""Graph renderers: Graphviz DOT text and a small SVG 1.1 subset."""

from __future__ import annotations

from xml.sax.saxutils import escape

from ..core.model import Entity
from .build import EdgeKind, EntityGraph, GraphEdge, MissingLayout

DOT_MEDIA_TYPE = "text/vnd.graphviz"
SVG_MEDIA_TYPE = "image/svg+xml"

NODE_WIDTH = 200
NODE_HEIGHT = 50


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _sorted_nodes(graph: EntityGraph) -> list[Entity]:
    return sorted(graph.nodes, key=lambda e: (graph.name_of(e), e.iri.value, e.kind.value))


def _sorted_edges(graph: EntityGraph) -> list[GraphEdge]:
    return sorted(
        graph.edges,
        key=lambda e: (e.source.iri.value, e.target.iri.value, e.kind.value, e.label),
    )


def export_dot(graph: EntityGraph) -> str:
    """One node statement per entity (id = IRI, label = display name) and one
    edge statement per edge; instance-of edges dashed, property edges labelled."""
    lines = ["digraph G {", "  rankdir=BT;"]
    for node in _sorted_nodes(graph):
        lines.append(f"  {_dot_quote(node.iri.value)} [label={_dot_quote(graph.name_of(node))}];")
    for edge in _sorted_edges(graph):
        stmt = f"  {_dot_quote(edge.source.iri.value)} -> {_dot_quote(edge.target.iri.value)}"
        if edge.kind is EdgeKind.INSTANCE_OF:
            stmt += " [style=dashed]"
        elif edge.kind is EdgeKind.PROPERTY:
            stmt += f" [label={_dot_quote(edge.label)}]"
        lines.append(stmt + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_svg(graph: EntityGraph, layout: dict[Entity, tuple[int, int]]) -> str:
    """Rectangles at layout positions, centre-to-centre edge lines."""
    for node in graph.nodes:
        if node not in layout:
            raise MissingLayout(node)
    max_x = max((layout[n][0] for n in graph.nodes), default=0) + NODE_WIDTH + 20
    max_y = max((layout[n][1] for n in graph.nodes), default=0) + NODE_HEIGHT + 20

    def centre(node: Entity) -> tuple[float, float]:
        x, y = layout[node]
        return (x + NODE_WIDTH / 2, y + NODE_HEIGHT / 2)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{max_x}" height="{max_y}" viewBox="0 0 {max_x} {max_y}">',
        '<g class="edges" stroke="#555" fill="none">',
    ]
    for edge in _sorted_edges(graph):
        (x1, y1), (x2, y2) = centre(edge.source), centre(edge.target)
        dash = ' stroke-dasharray="6,3"' if edge.kind is EdgeKind.INSTANCE_OF else ""
        parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{dash} />')
        if edge.kind is EdgeKind.PROPERTY:
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            parts.append(
                f'<text x="{mx}" y="{my - 4}" text-anchor="middle" font-size="11" '
                f'fill="#333" stroke="none">{escape(edge.label)}</text>'
            )
    parts.append("</g>")
    parts.append('<g class="nodes" font-size="12">')
    for node in _sorted_nodes(graph):
        x, y = layout[node]
        parts.append(
            f'<rect x="{x}" y="{y}" width="{NODE_WIDTH}" height="{NODE_HEIGHT}" rx="6" '
            f'fill="#eef3fa" stroke="#4a6a96" />'
        )
        parts.append(
            f'<text x="{x + NODE_WIDTH / 2}" y="{y + NODE_HEIGHT / 2 + 4}" '
            f'text-anchor="middle">{escape(graph.name_of(node))}</text>'
        )
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def export_graph(
    graph: EntityGraph,
    layout: dict[Entity, tuple[int, int]] | None = None,
    format: str = "dot",
) -> str:
    if format == "dot":
        return export_dot(graph)
    if format == "svg":
        if layout is None:
            from .layout import layout_graph

            layout = layout_graph(graph)
        return export_svg(graph, layout)
    raise ValueError(f"unknown export format {format!r}")

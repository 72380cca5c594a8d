"""Typed relation graphs around an entity, with DOT/SVG export."""

from .build import (
    CannotHideRoot,
    EdgeKind,
    EntityGraph,
    GraphEdge,
    GraphError,
    MAX_GRAPH_NODES,
    MAX_PATH_LENGTH,
    MissingLayout,
    TooLarge,
    UnknownEntity,
    build_graph,
    derive_edges,
    hide_nodes,
    isolate_paths,
)
from .export import DOT_MEDIA_TYPE, SVG_MEDIA_TYPE, export_dot, export_graph, export_svg
from .layout import layout_graph

__all__ = [name for name in dir() if not name.startswith("_")]

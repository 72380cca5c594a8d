"""Bookmarkable deep links for entities within a project tab."""

from __future__ import annotations

import re
from urllib.parse import quote, unquote

from ..core.model import Entity, EntityKind, Iri, MalformedIri


class UrlError(Exception):
    pass


class UnknownTab(UrlError):
    def __init__(self, tab: str):
        super().__init__(f"unknown tab {tab!r}")
        self.tab = tab


class MalformedUrl(UrlError):
    pass


TABS = ("Classes", "Properties", "Individuals", "Comments", "History", "Query", "Graph")

_KINDS = {kind.value: kind for kind in EntityKind}

_URL_RE = re.compile(
    r"^/#projects/(?P<project>[^/?#]+)/edit/(?P<tab>[^/?#]+)"
    r"\?selection=(?P<kind>[A-Za-z]+)\((?P<iri>[^()]*)\)$"
)


def entity_url(project_id: str, tab: str, entity: Entity) -> str:
    if tab not in TABS:
        raise UnknownTab(tab)
    encoded = quote(entity.iri.value, safe="")
    return f"/#projects/{project_id}/edit/{tab}?selection={entity.kind.value}({encoded})"


def parse_entity_url(url: str) -> tuple[str, str, Entity]:
    match = _URL_RE.match(url)
    if not match:
        raise MalformedUrl(f"not an entity URL: {url!r}")
    tab = match.group("tab")
    if tab not in TABS:
        raise UnknownTab(tab)
    kind = _KINDS.get(match.group("kind"))
    if kind is None:
        raise MalformedUrl(f"unknown entity kind {match.group('kind')!r}")
    try:
        iri = Iri(unquote(match.group("iri")))
    except MalformedIri as exc:
        raise MalformedUrl(str(exc)) from exc
    return match.group("project"), tab, Entity(kind, iri)

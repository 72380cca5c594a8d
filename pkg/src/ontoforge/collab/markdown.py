"""Comment body parsing: Markdown subset, @mentions, entity links.

The rendered HTML escapes every piece of input text, so raw markup in a
comment can never reach the page. Supported Markdown: paragraphs, emphasis,
strong, inline code, fenced code blocks, links, unordered lists. Mentions and
prefixed names that resolve to project entities become anchors; both are
ignored inside code.
"""

from __future__ import annotations

import html
import re
from dataclasses import dataclass
from typing import Callable, Optional

from ..core.model import Entity, Iri, PrefixTable

ResolveEntity = Callable[[Iri], Optional[Entity]]
EntityHref = Callable[[Entity], str]

MENTION_RE = re.compile(r"(?<![A-Za-z0-9_.@\-])@([A-Za-z0-9_.\-]+)")
_PNAME_RE = re.compile(r"(?<![A-Za-z0-9_.:\-])([A-Za-z][A-Za-z0-9_.\-]*):([A-Za-z0-9_.\-]+)")

_INLINE_RE = re.compile(
    r"(?P<code>`(?P<code_body>[^`\n]+)`)"
    r"|(?P<link>\[(?P<link_text>[^\]\n]*)\]\((?P<link_url>[^)\s]*)\))"
    r"|(?P<strong>\*\*(?P<strong_body>.+?)\*\*)"
    r"|(?P<em>\*(?P<em_body>[^*\n]+)\*|_(?P<em_body2>[^_\n]+)_)"
    r"|(?P<mention>(?<![A-Za-z0-9_.@\-])@(?P<mention_name>[A-Za-z0-9_.\-]+))"
    r"|(?P<pname>(?<![A-Za-z0-9_.:\-])(?P<pname_prefix>[A-Za-z][A-Za-z0-9_.\-]*):(?P<pname_local>[A-Za-z0-9_.\-]+))"
)

_SAFE_URL_RE = re.compile(r"^(https?:|#|/)")


@dataclass
class ParsedBody:
    mentions: tuple[str, ...]
    entity_links: tuple[Entity, ...]
    html: str


class _Collector:
    def __init__(self):
        self.mentions: list[str] = []
        self.entities: list[Entity] = []

    def mention(self, name: str):
        if name not in self.mentions:
            self.mentions.append(name)

    def entity(self, entity: Entity):
        if entity not in self.entities:
            self.entities.append(entity)


def _resolve(
    prefixes: PrefixTable,
    resolve_entity: ResolveEntity,
    prefix: str,
    local: str,
) -> Entity | None:
    namespace = prefixes.namespace_of(prefix)
    if namespace is None:
        return None
    try:
        iri = Iri(namespace.value + local)
    except Exception:
        return None
    return resolve_entity(iri)


def _render_inline(
    text: str,
    prefixes: PrefixTable,
    resolve_entity: ResolveEntity,
    entity_href: EntityHref,
    collector: _Collector,
    allow_anchors: bool = True,
) -> str:
    out: list[str] = []
    pos = 0
    for match in _INLINE_RE.finditer(text):
        out.append(html.escape(text[pos:match.start()]))
        pos = match.end()
        if match.group("code"):
            out.append(f"<code>{html.escape(match.group('code_body'))}</code>")
        elif match.group("link"):
            inner = _render_inline(
                match.group("link_text"), prefixes, resolve_entity, entity_href,
                collector, allow_anchors=False,
            )
            url = match.group("link_url")
            if allow_anchors and _SAFE_URL_RE.match(url):
                out.append(f'<a href="{html.escape(url, quote=True)}">{inner}</a>')
            else:
                out.append(html.escape(match.group()))
        elif match.group("strong"):
            inner = _render_inline(
                match.group("strong_body"), prefixes, resolve_entity, entity_href,
                collector, allow_anchors,
            )
            out.append(f"<strong>{inner}</strong>")
        elif match.group("em"):
            body = match.group("em_body") or match.group("em_body2") or ""
            inner = _render_inline(
                body, prefixes, resolve_entity, entity_href, collector, allow_anchors,
            )
            out.append(f"<em>{inner}</em>")
        elif match.group("mention"):
            name = match.group("mention_name")
            collector.mention(name)
            if allow_anchors:
                out.append(
                    f'<a class="mention" href="#users/{html.escape(name, quote=True)}">'
                    f"@{html.escape(name)}</a>"
                )
            else:
                out.append(html.escape(match.group()))
        elif match.group("pname"):
            prefix = match.group("pname_prefix")
            local = match.group("pname_local")
            entity = _resolve(prefixes, resolve_entity, prefix, local)
            if entity is None:
                out.append(html.escape(match.group()))
            else:
                collector.entity(entity)
                if allow_anchors:
                    href = html.escape(entity_href(entity), quote=True)
                    out.append(
                        f'<a class="entity-link" href="{href}">{html.escape(match.group())}</a>'
                    )
                else:
                    out.append(html.escape(match.group()))
    out.append(html.escape(text[pos:]))
    return "".join(out)


_FENCE_RE = re.compile(r"^```")
_LIST_ITEM_RE = re.compile(r"^[-*]\s+(.*)$")


def parse_comment_body(
    body: str,
    prefixes: PrefixTable,
    resolve_entity: ResolveEntity | None = None,
    entity_href: EntityHref | None = None,
) -> ParsedBody:
    """Derive (mentions, entity links, rendered HTML) from a comment body."""
    resolve_entity = resolve_entity or (lambda iri: None)
    entity_href = entity_href or (lambda entity: f"#{entity.iri.value}")
    collector = _Collector()

    def inline(text: str) -> str:
        return _render_inline(text, prefixes, resolve_entity, entity_href, collector)

    blocks: list[str] = []
    lines = body.split("\n")
    i = 0
    while i < len(lines):
        line = lines[i]
        if _FENCE_RE.match(line.strip()):
            code_lines: list[str] = []
            i += 1
            while i < len(lines) and not _FENCE_RE.match(lines[i].strip()):
                code_lines.append(lines[i])
                i += 1
            i += 1  # closing fence (or EOF)
            blocks.append(f"<pre><code>{html.escape(chr(10).join(code_lines))}</code></pre>")
            continue
        if not line.strip():
            i += 1
            continue
        if _LIST_ITEM_RE.match(line):
            items: list[str] = []
            while i < len(lines):
                item = _LIST_ITEM_RE.match(lines[i])
                if not item:
                    break
                items.append(f"<li>{inline(item.group(1))}</li>")
                i += 1
            blocks.append("<ul>" + "".join(items) + "</ul>")
            continue
        paragraph: list[str] = []
        while i < len(lines) and lines[i].strip() and not _FENCE_RE.match(lines[i].strip()) \
                and not _LIST_ITEM_RE.match(lines[i]):
            paragraph.append(lines[i])
            i += 1
        blocks.append(f"<p>{inline(' '.join(paragraph))}</p>")

    return ParsedBody(
        mentions=tuple(collector.mentions),
        entity_links=tuple(collector.entities),
        html="\n".join(blocks),
    )

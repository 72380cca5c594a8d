"""Entity-anchored comment threads."""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable

from ..access import Action, Role, require
from ..core.model import Entity
from .markdown import ParsedBody


class CollabError(Exception):
    pass


class UnknownThread(CollabError):
    def __init__(self, thread_id: str):
        super().__init__(f"unknown thread {thread_id!r}")
        self.thread_id = thread_id


class EmptyBody(CollabError):
    pass


class ThreadStatus(Enum):
    OPEN = "Open"
    CLOSED = "Closed"


@dataclass(frozen=True)
class Comment:
    id: str
    author: str
    timestamp_ms: int
    body: str
    mentions: tuple[str, ...]
    entity_links: tuple[Entity, ...]
    rendered_html: str


@dataclass
class CommentThread:
    id: str
    entity: Entity
    status: ThreadStatus
    comments: list[Comment]

    @property
    def created_ms(self) -> int:
        return self.comments[0].timestamp_ms

    @property
    def last_activity_ms(self) -> int:
        return self.comments[-1].timestamp_ms

    def participants(self) -> list[str]:
        seen: list[str] = []
        for comment in self.comments:
            if comment.author not in seen:
                seen.append(comment.author)
        return seen


BodyParser = Callable[[str], ParsedBody]


class ThreadStore:
    """Threads for one project. Callers resolve roles and serialize writers."""

    def __init__(self, clock: Callable[[], int], id_source: Callable[[], str] | None = None):
        self._clock = clock
        self._ids = id_source or (lambda: uuid.uuid4().hex[:12])
        self.threads: dict[str, CommentThread] = {}

    def get(self, thread_id: str) -> CommentThread:
        thread = self.threads.get(thread_id)
        if thread is None:
            raise UnknownThread(thread_id)
        return thread

    def _make_comment(self, author: str, body: str, parse: BodyParser,
                      comment_id: str | None = None, timestamp_ms: int | None = None) -> Comment:
        if not body.strip():
            raise EmptyBody("comment body is empty")
        parsed = parse(body)
        return Comment(
            id=comment_id or self._ids(),
            author=author,
            timestamp_ms=timestamp_ms if timestamp_ms is not None else self._clock(),
            body=body,
            mentions=parsed.mentions,
            entity_links=parsed.entity_links,
            rendered_html=parsed.html,
        )

    def create_thread(
        self,
        entity: Entity,
        author: str,
        body: str,
        role: Role | None,
        parse: BodyParser,
        thread_id: str | None = None,
        comment_id: str | None = None,
        timestamp_ms: int | None = None,
    ) -> CommentThread:
        require(role, Action.COMMENT)
        comment = self._make_comment(author, body, parse, comment_id, timestamp_ms)
        thread = CommentThread(
            id=thread_id or self._ids(),
            entity=entity,
            status=ThreadStatus.OPEN,
            comments=[comment],
        )
        self.threads[thread.id] = thread
        return thread

    def add_comment(
        self,
        thread_id: str,
        author: str,
        body: str,
        role: Role | None,
        parse: BodyParser,
        comment_id: str | None = None,
        timestamp_ms: int | None = None,
    ) -> Comment:
        require(role, Action.COMMENT)
        thread = self.get(thread_id)
        comment = self._make_comment(author, body, parse, comment_id, timestamp_ms)
        thread.comments.append(comment)
        return comment

    def set_status(self, thread_id: str, status: ThreadStatus, role: Role | None) -> tuple[CommentThread, bool]:
        """Returns (thread, changed). Setting the current status is a no-op."""
        require(role, Action.COMMENT)
        thread = self.get(thread_id)
        changed = thread.status is not status
        thread.status = status
        return thread, changed

    def threads_for(self, entity: Entity) -> list[CommentThread]:
        return [t for t in self.threads.values() if t.entity == entity]

    def all_threads(self) -> list[CommentThread]:
        return list(self.threads.values())


def thread_counts(threads: Iterable[CommentThread]) -> dict[Entity, int]:
    """Open threads per anchor entity; zero-count entities are omitted."""
    counts: dict[Entity, int] = {}
    for thread in threads:
        if thread.status is ThreadStatus.OPEN:
            counts[thread.entity] = counts.get(thread.entity, 0) + 1
    return counts

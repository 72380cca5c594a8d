"""Project event envelopes and subscriber fan-out."""

from __future__ import annotations

import queue
import threading
from dataclasses import dataclass
from typing import Any, Optional

from ..core.model import Entity, EntityKind, Iri

COMMENT_POSTED = "CommentPosted"
THREAD_STATUS_CHANGED = "ThreadStatusChanged"
REVISION_APPENDED = "RevisionAppended"
PROJECT_SETTINGS_CHANGED = "ProjectSettingsChanged"

# Kinds that fan out to webhooks and the outbox; settings changes only reach
# the live event stream.
NOTIFYING_EVENTS = (COMMENT_POSTED, THREAD_STATUS_CHANGED, REVISION_APPENDED)


@dataclass(frozen=True)
class EventEnvelope:
    project_id: str
    event: str
    user_id: str
    timestamp_ms: int
    entity: Optional[Entity] = None
    revision_number: Optional[int] = None

    def to_json(self) -> dict[str, Any]:
        """Wire form; key order is part of the contract."""
        return {
            "projectId": self.project_id,
            "event": self.event,
            "userId": self.user_id,
            "timestamp": self.timestamp_ms,
            "entity": (
                {"kind": self.entity.kind.value, "iri": self.entity.iri.value}
                if self.entity is not None
                else None
            ),
            "revisionNumber": self.revision_number,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "EventEnvelope":
        entity = None
        if data.get("entity"):
            entity = Entity(EntityKind(data["entity"]["kind"]), Iri(data["entity"]["iri"]))
        return cls(
            project_id=data["projectId"],
            event=data["event"],
            user_id=data["userId"],
            timestamp_ms=data["timestamp"],
            entity=entity,
            revision_number=data.get("revisionNumber"),
        )


class EventBus:
    """Per-project envelope history plus live subscriber queues.

    Reconnecting clients pass the last revision number they saw; everything
    published after that revision's envelope is replayed, so delivery is
    at-least-once across reconnects.
    """

    def __init__(self):
        self._history: list[EventEnvelope] = []
        self._revision_position: dict[int, int] = {}
        self._subscribers: list[queue.SimpleQueue] = []
        self._lock = threading.Lock()

    def publish(self, envelope: EventEnvelope) -> None:
        with self._lock:
            self._history.append(envelope)
            if envelope.event == REVISION_APPENDED and envelope.revision_number is not None:
                self._revision_position[envelope.revision_number] = len(self._history) - 1
            subscribers = list(self._subscribers)
        for subscriber in subscribers:
            subscriber.put(envelope)

    def subscribe(self, since_revision: int | None = None) -> tuple[list[EventEnvelope], queue.SimpleQueue]:
        """Returns (replay, live queue). Replay covers everything after the
        envelope of `since_revision` (everything, when 0 or unknown)."""
        with self._lock:
            start = 0
            if since_revision:
                position = self._revision_position.get(since_revision)
                if position is not None:
                    start = position + 1
            replay = list(self._history[start:])
            live: queue.SimpleQueue = queue.SimpleQueue()
            self._subscribers.append(live)
        return replay, live

    def unsubscribe(self, live: queue.SimpleQueue) -> None:
        with self._lock:
            if live in self._subscribers:
                self._subscribers.remove(live)

    @property
    def history(self) -> list[EventEnvelope]:
        with self._lock:
            return list(self._history)

"""Notification fan-out: email outbox messages and webhook deliveries.

Email is modelled as an outbox table; nothing is transported. Webhook
deliveries are value objects the dispatcher posts asynchronously.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable, Mapping, Optional


class WebhookKind(Enum):
    PROJECT_EVENT = "ProjectEvent"
    SLACK_INCOMING = "SlackIncoming"


_HTTP_URL_RE = re.compile(r"^https?://\S+$")


@dataclass(frozen=True)
class WebhookConfig:
    id: str
    kind: WebhookKind
    url: str
    enabled: bool = True

    def __post_init__(self):
        if not _HTTP_URL_RE.match(self.url):
            raise ValueError(f"webhook URL must be http(s): {self.url!r}")


@dataclass(frozen=True)
class OutboxMessage:
    recipient: str
    subject: str
    body: str


class DeliveryStatus(Enum):
    PENDING = "pending"
    DELIVERED = "delivered"
    FAILED = "failed"


@dataclass
class WebhookDelivery:
    hook_id: str
    url: str
    payload: dict
    attempts: int = 0
    status: DeliveryStatus = DeliveryStatus.PENDING
    last_error: Optional[str] = None


def _slack_text(
    envelope: Mapping[str, Any],
    display_name: str,
    comment_body: Optional[str],
    status_value: Optional[str],
    revision_label: Optional[str],
    deep_link: Optional[str],
) -> str:
    event = envelope.get("event")
    user = envelope.get("userId", "someone")
    if event == "CommentPosted":
        text = f"{user} commented on {display_name}: {comment_body or ''}"
        if deep_link:
            text += f"\n{deep_link}"
        return text
    if event == "ThreadStatusChanged":
        verb = "closed" if status_value == "Closed" else "reopened"
        text = f"{user} {verb} a thread on {display_name}"
        if deep_link:
            text += f"\n{deep_link}"
        return text
    if event == "RevisionAppended":
        number = envelope.get("revisionNumber")
        return f"{user} committed revision {number}: {revision_label or ''}".rstrip(": ")
    return f"{user} updated the project"


def emit_notifications(
    envelope: Mapping[str, Any],
    *,
    participants: Iterable[str],
    webhooks: Iterable[WebhookConfig],
    project_name: str = "",
    display_name: str = "",
    deep_link: Optional[str] = None,
    comment_body: Optional[str] = None,
    status_value: Optional[str] = None,
    revision_label: Optional[str] = None,
) -> tuple[list[OutboxMessage], list[WebhookDelivery]]:
    """Compute the fan-out for one project event.

    Comment posts mail every participant except the actor; every enabled
    webhook gets one delivery. Nothing here performs I/O - deliveries are
    queued by the caller, not awaited.
    """
    outbox: list[OutboxMessage] = []
    actor = envelope.get("userId")
    if envelope.get("event") == "CommentPosted":
        subject = f"[{project_name}] New comment on {display_name}".strip()
        body = f"{actor} commented on {display_name}:\n\n{comment_body or ''}\n\n{deep_link or ''}"
        for participant in participants:
            if participant != actor:
                outbox.append(OutboxMessage(participant, subject, body))

    deliveries: list[WebhookDelivery] = []
    for hook in webhooks:
        if not hook.enabled:
            continue
        if hook.kind is WebhookKind.SLACK_INCOMING:
            payload: dict = {
                "text": _slack_text(
                    envelope, display_name, comment_body, status_value,
                    revision_label, deep_link,
                )
            }
        else:
            payload = dict(envelope)
        deliveries.append(WebhookDelivery(hook_id=hook.id, url=hook.url, payload=payload))
    return outbox, deliveries

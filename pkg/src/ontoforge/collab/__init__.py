"""Threaded comments, mentions, notification fan-out, webhook delivery."""

from .dispatch import MAX_ATTEMPTS, RETRY_BACKOFF_SECONDS, WebhookDispatcher
from .markdown import MENTION_RE, ParsedBody, parse_comment_body
from .notifications import (
    DeliveryStatus,
    OutboxMessage,
    WebhookConfig,
    WebhookDelivery,
    WebhookKind,
    emit_notifications,
)
from .threads import (
    BodyParser,
    CollabError,
    Comment,
    CommentThread,
    EmptyBody,
    ThreadStatus,
    ThreadStore,
    UnknownThread,
    thread_counts,
)

__all__ = [name for name in dir() if not name.startswith("_")]

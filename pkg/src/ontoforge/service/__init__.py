"""Projects, roles, persistence, HTTP API, and event fan-out."""

from ..access import Action, PermissionDenied, Role, authorize, require
from .events import (
    COMMENT_POSTED,
    EventBus,
    EventEnvelope,
    NOTIFYING_EVENTS,
    PROJECT_SETTINGS_CHANGED,
    REVISION_APPENDED,
    THREAD_STATUS_CHANGED,
)
from .persistence import CorruptLog, append_record, read_records, read_snapshot, write_snapshot
from .project import (
    CannotModifyOwner,
    EmptyName,
    LayoutTooLarge,
    Project,
    ProjectService,
    ServiceError,
    UnknownIri,
    UnknownProject,
)
from .urls import MalformedUrl, TABS, UnknownTab, entity_url, parse_entity_url

__all__ = [name for name in dir() if not name.startswith("_")]

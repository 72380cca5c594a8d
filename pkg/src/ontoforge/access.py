"""Project roles and the capability matrix."""

from __future__ import annotations

from enum import Enum


class Role(Enum):
    VIEWER = "Viewer"
    COMMENTER = "Commenter"
    EDITOR = "Editor"
    OWNER = "Owner"

    def __str__(self) -> str:
        return self.value


class Action(Enum):
    READ = "Read"
    COMMENT = "Comment"
    EDIT = "Edit"
    ADMIN = "Admin"

    def __str__(self) -> str:
        return self.value


_MATRIX: dict[Role, frozenset[Action]] = {
    Role.VIEWER: frozenset({Action.READ}),
    Role.COMMENTER: frozenset({Action.READ, Action.COMMENT}),
    Role.EDITOR: frozenset({Action.READ, Action.COMMENT, Action.EDIT}),
    Role.OWNER: frozenset({Action.READ, Action.COMMENT, Action.EDIT, Action.ADMIN}),
}


def authorize(role: Role, action: Action) -> bool:
    return action in _MATRIX[role]


class PermissionDenied(Exception):
    def __init__(self, action: Action, role: Role | None = None):
        who = f"role {role.value}" if role else "anonymous"
        super().__init__(f"{who} may not {action.value}")
        self.action = action
        self.role = role


def require(role: Role | None, action: Action) -> None:
    if role is None or not authorize(role, action):
        raise PermissionDenied(action, role)

"""Criteria language for entity search and rule-driven tagging."""

from .matching import MatchContext, matches, search
from .model import (
    AnnotationContains,
    AnnotationMatchesRegex,
    CriteriaError,
    CriteriaNode,
    DuplicateTagLabel,
    EntityKindIs,
    HasAnnotationOn,
    HasTag,
    InvalidRegex,
    IriContains,
    IsSubClassOf,
    LacksAnnotationOn,
    MatchAll,
    MatchAny,
    SchemaError,
    Tag,
    TagRule,
    UnknownTag,
)
from .tags import TagStore
from .wire import (
    criteria_from_dict,
    criteria_to_dict,
    parse_criteria,
    serialize_criteria,
)

__all__ = [name for name in dir() if not name.startswith("_")]

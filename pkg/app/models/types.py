"""
Ground types, wildcard arguments and their canonical forms

A ground type is either a named type (a non-generic class, Object or Null)
or a generic class applied to exactly one variance-annotated argument.
Canonical forms identify the redundant wildcard spellings so that type
identity is plain structural equality.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Iterable, List, Optional, Tuple, Union

from app.core.config import settings
from app.core.exceptions import ArityError

if TYPE_CHECKING:
    from app.models.class_table import ClassTable


OBJECT_NAME = "Object"
NULL_NAME = "Null"
BUILTIN_NAMES = (OBJECT_NAME, NULL_NAME)

# Accepted spellings in type expressions and the short forms used for display.
ALIASES = {"O": OBJECT_NAME, "N": NULL_NAME}
SHORT_NAMES = {OBJECT_NAME: "O", NULL_NAME: "N"}


class Variance(Enum):
    COVARIANT = "<:"
    CONTRAVARIANT = ":>"
    INVARIANT = ""


@dataclass(frozen=True)
class Named:
    name: str

    def __str__(self) -> str:
        return display(self)


@dataclass(frozen=True)
class Generic:
    head: str
    arg: "VarianceArg"

    def __str__(self) -> str:
        return display(self)


@dataclass(frozen=True)
class Unbounded:
    pass


@dataclass(frozen=True)
class Extends:
    bound: "GroundType"


@dataclass(frozen=True)
class Super:
    bound: "GroundType"


@dataclass(frozen=True)
class Invariant:
    payload: "GroundType"


GroundType = Union[Named, Generic]
VarianceArg = Union[Unbounded, Extends, Super, Invariant]

OBJECT = Named(OBJECT_NAME)
NULL = Named(NULL_NAME)
UNBOUNDED = Unbounded()


def is_builtin(name: str) -> bool:
    return name in BUILTIN_NAMES


def _check_well_formed(raw: GroundType, table: "ClassTable") -> None:
    if isinstance(raw, Named):
        if is_builtin(raw.name):
            return
        if table.arity(raw.name) != 0:
            raise ArityError(f"generic class '{raw.name}' needs a type argument")
        return
    if is_builtin(raw.head) or table.arity(raw.head) != 1:
        raise ArityError(f"class '{raw.head}' is not generic and takes no type argument")


def canonicalize(raw: GroundType, table: Optional["ClassTable"] = None) -> GroundType:
    """
    Rewrite a type term into its canonical representative.

    Rewrites run bottom-up:
        ? extends Object -> ?        ? super Null   -> ?
        ? extends Null   -> Null     ? super Object -> Object

    When a class table is given the term is also checked for unknown
    classes and arity mismatches.
    """
    if table is not None:
        _check_well_formed(raw, table)
    if isinstance(raw, Named):
        return raw
    arg = raw.arg
    if isinstance(arg, Unbounded):
        return raw
    if isinstance(arg, Extends):
        bound = canonicalize(arg.bound, table)
        if bound == OBJECT:
            return Generic(raw.head, UNBOUNDED)
        if bound == NULL:
            return Generic(raw.head, Invariant(NULL))
        return Generic(raw.head, Extends(bound))
    if isinstance(arg, Super):
        bound = canonicalize(arg.bound, table)
        if bound == NULL:
            return Generic(raw.head, UNBOUNDED)
        if bound == OBJECT:
            return Generic(raw.head, Invariant(OBJECT))
        return Generic(raw.head, Super(bound))
    return Generic(raw.head, Invariant(canonicalize(arg.payload, table)))


def apply(head: str, variance: Variance, payload: GroundType) -> GroundType:
    """Canonical form of ``head<v payload>`` for a canonical payload"""
    if variance is Variance.COVARIANT:
        arg: VarianceArg = Extends(payload)
    elif variance is Variance.CONTRAVARIANT:
        arg = Super(payload)
    else:
        arg = Invariant(payload)
    return canonicalize(Generic(head, arg))


@functools.lru_cache(maxsize=settings.TYPE_MEMO_MAX_ENTRIES)
def rank(t: GroundType) -> int:
    if isinstance(t, Named) or isinstance(t.arg, Unbounded):
        return 0
    return rank(argument_payload(t.arg)) + 1


def argument_payload(arg: VarianceArg) -> Optional[GroundType]:
    if isinstance(arg, (Extends, Super)):
        return arg.bound
    if isinstance(arg, Invariant):
        return arg.payload
    return None


def outer_variance(t: GroundType) -> Optional[Variance]:
    """Variance of the outermost argument, None for named types and ``C<?>``"""
    if isinstance(t, Named):
        return None
    if isinstance(t.arg, Extends):
        return Variance.COVARIANT
    if isinstance(t.arg, Super):
        return Variance.CONTRAVARIANT
    if isinstance(t.arg, Invariant):
        return Variance.INVARIANT
    return None


@functools.lru_cache(maxsize=settings.TYPE_MEMO_MAX_ENTRIES)
def display(t: GroundType) -> str:
    if isinstance(t, Named):
        return SHORT_NAMES.get(t.name, t.name)
    return f"{t.head}<{display_argument(t.arg)}>"


def display_argument(arg: VarianceArg) -> str:
    if isinstance(arg, Unbounded):
        return "?"
    if isinstance(arg, Extends):
        return f"? <: {display(arg.bound)}"
    if isinstance(arg, Super):
        return f"? :> {display(arg.bound)}"
    return display(arg.payload)


def is_canonical(t: GroundType) -> bool:
    """True when no redundant wildcard form occurs at any depth"""
    if isinstance(t, Named):
        return True
    arg = t.arg
    if isinstance(arg, Unbounded):
        return True
    if isinstance(arg, Extends) and arg.bound in (OBJECT, NULL):
        return False
    if isinstance(arg, Super) and arg.bound in (OBJECT, NULL):
        return False
    return is_canonical(argument_payload(arg))


def sort_key(t: GroundType) -> Tuple[int, str]:
    """Canonical type ordering: by rank, then by display string"""
    return (rank(t), display(t))


def sorted_types(types: Iterable[GroundType]) -> List[GroundType]:
    return sorted(types, key=sort_key)

"""
Class table: the subclassing declarations of a program
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

from app.core.exceptions import DeclarationError, UnknownClassError
from app.models.types import ALIASES, NULL_NAME, OBJECT_NAME, is_builtin


@dataclass(frozen=True)
class Declaration:
    name: str
    arity: int
    superclass: str
    type_parameter: Optional[str] = None
    line: Optional[int] = field(default=None, compare=False)
    column: Optional[int] = field(default=None, compare=False)

    @property
    def location(self) -> str:
        return f"{self.line}:{self.column}: " if self.line is not None else ""


@dataclass(frozen=True)
class ClassTable:
    """
    Validated, single-inheritance class table.

    Object (the root) and Null (below every class) are implicit and can
    not be declared. Declarations keep their source order.
    """

    declarations: Tuple[Declaration, ...] = ()
    _index: Dict[str, Declaration] = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {d.name: d for d in self.declarations})

    @classmethod
    def from_declarations(cls, declarations: Iterable[Declaration]) -> "ClassTable":
        """Validate declarations in order and build the table"""
        seen: Dict[str, Declaration] = {}
        for decl in declarations:
            where = decl.location
            if is_builtin(decl.name):
                raise DeclarationError(f"{where}class '{decl.name}' is built in and can not be declared")
            if decl.name in ALIASES:
                raise DeclarationError(f"{where}'{decl.name}' is reserved as an abbreviation of {ALIASES[decl.name]}")
            if decl.name in seen:
                raise DeclarationError(f"{where}duplicate declaration of class '{decl.name}'")
            if decl.arity not in (0, 1):
                raise DeclarationError(f"{where}class '{decl.name}' may take at most one type parameter")
            if decl.superclass == NULL_NAME:
                raise DeclarationError(f"{where}class '{decl.name}' can not extend Null")
            if decl.superclass != OBJECT_NAME:
                parent = seen.get(decl.superclass)
                if parent is None:
                    raise DeclarationError(f"{where}unknown superclass '{decl.superclass}' of class '{decl.name}'")
                if parent.arity != 0:
                    raise DeclarationError(f"{where}class '{decl.name}' can not extend generic class '{parent.name}'")
                if decl.arity == 1:
                    raise DeclarationError(
                        f"{where}generic class '{decl.name}' must extend Object, not '{decl.superclass}'"
                    )
            seen[decl.name] = decl
        return cls(tuple(seen.values()))

    def __contains__(self, name: str) -> bool:
        return is_builtin(name) or name in self._index

    def declaration(self, name: str) -> Declaration:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownClassError(name) from None

    def arity(self, name: str) -> int:
        if is_builtin(name):
            return 0
        return self.declaration(name).arity

    def superclass(self, name: str) -> Optional[str]:
        if name == OBJECT_NAME:
            return None
        if name == NULL_NAME:
            raise ValueError("Null has no single superclass")
        return self.declaration(name).superclass

    def is_subclass(self, sub: str, sup: str) -> bool:
        """Reflexive-transitive subclassing; Null is below and Object above every class"""
        if sub == sup or sup == OBJECT_NAME or sub == NULL_NAME:
            return True
        if sub == OBJECT_NAME or sup == NULL_NAME:
            return False
        current: Optional[str] = sub
        while current is not None and current != OBJECT_NAME:
            if current == sup:
                return True
            current = self.superclass(current)
        return False

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(d.name for d in self.declarations)

    @property
    def generic_classes(self) -> Tuple[str, ...]:
        return tuple(d.name for d in self.declarations if d.arity == 1)

    @property
    def named_classes(self) -> Tuple[str, ...]:
        return tuple(d.name for d in self.declarations if d.arity == 0)

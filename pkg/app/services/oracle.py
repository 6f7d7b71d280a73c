"""
Containment oracle

A direct decision procedure for subtyping between canonical ground types,
plus rank-bounded carrier enumeration. It shares nothing with the
morphism construction except the type model, so the two can be checked
against each other.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Set

from app.core.config import settings
from app.core.exceptions import BudgetExceededError
from app.models.class_table import ClassTable
from app.models.types import (
    NULL,
    OBJECT,
    UNBOUNDED,
    Extends,
    Generic,
    GroundType,
    Invariant,
    Named,
    Super,
    Unbounded,
    VarianceArg,
    Variance,
    apply,
    sorted_types,
)
from app.services.relation import SubtypingRelation, reduction
from app.utils.metrics import oracle_queries_total

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleQuery:
    sub: GroundType
    sup: GroundType
    table: ClassTable

    def decide(self) -> bool:
        return oracle_subtype(self.table, self.sub, self.sup)


def oracle_subtype(table: ClassTable, s: GroundType, t: GroundType) -> bool:
    """Decide ``s <: t`` by structural recursion"""
    if settings.METRICS_ENABLED:
        oracle_queries_total.inc()
    return _subtype(table, s, t)


def _subtype(table: ClassTable, s: GroundType, t: GroundType) -> bool:
    # Object on top, Null at the bottom
    if t == OBJECT or s == NULL:
        return True
    if s == OBJECT or t == NULL:
        return s == t
    if isinstance(s, Named) and isinstance(t, Named):
        return table.is_subclass(s.name, t.name)
    if isinstance(s, Named) or isinstance(t, Named):
        # Generic classes extend Object directly, so the two kinds never meet.
        return False
    if s.head != t.head:
        return False
    return _contains(table, t.arg, s.arg)


def contains(outer: VarianceArg, inner: VarianceArg, table: ClassTable) -> bool:
    """True iff the argument ``outer`` contains ``inner``"""
    return _contains(table, outer, inner)


def _contains(table: ClassTable, outer: VarianceArg, inner: VarianceArg) -> bool:
    if isinstance(outer, Unbounded):
        return True
    if isinstance(inner, Unbounded):
        return False
    if isinstance(outer, Extends):
        if isinstance(inner, Invariant):
            return _subtype(table, inner.payload, outer.bound)
        if isinstance(inner, Extends):
            return _subtype(table, inner.bound, outer.bound)
        return False
    if isinstance(outer, Super):
        if isinstance(inner, Invariant):
            return _subtype(table, outer.bound, inner.payload)
        if isinstance(inner, Super):
            return _subtype(table, outer.bound, inner.bound)
        return False
    return isinstance(inner, Invariant) and inner.payload == outer.payload


def enumerate_types(table: ClassTable, max_rank: int, budget: Optional[int] = None) -> List[GroundType]:
    """All canonical types of rank at most ``max_rank``, in canonical order"""
    if max_rank < 0:
        raise ValueError("max_rank must be non-negative")
    budget = settings.CARRIER_BUDGET if budget is None else budget
    # Rank 0: the class table itself
    types: Set[GroundType] = {OBJECT, NULL}
    for name in table.names:
        types.add(Generic(name, UNBOUNDED) if table.arity(name) == 1 else Named(name))
    if len(types) > budget:
        raise BudgetExceededError(0, len(types), budget)
    for k in range(1, max_rank + 1):
        fresh = {
            apply(head, variance, t)
            for head in table.generic_classes
            for variance in Variance
            for t in types
        } - types
        if len(types) + len(fresh) > budget:
            raise BudgetExceededError(k, len(types) + len(fresh), budget)
        types |= fresh
    return sorted_types(types)


def oracle_relation(table: ClassTable, max_rank: int, budget: Optional[int] = None) -> SubtypingRelation:
    """Reference relation: every oracle-true pair over the enumerated carrier, reduced"""
    carrier = enumerate_types(table, max_rank, budget)
    pairs = [(s, t) for s in carrier for t in carrier if s != t and oracle_subtype(table, s, t)]
    logger.debug("Oracle relation built", extra={"max_rank": max_rank, "carrier_size": len(carrier), "pairs": len(pairs)})
    return reduction(carrier, pairs, max_rank)

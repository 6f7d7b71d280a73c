"""
Relation morphisms and the iterative construction

Each construction step takes the current relation and, for every generic
class C, builds the families C<? <: X>, C<? :> X> and C<X> over the
relation's types:

    copy   orders C<? <: X> like the input          (covariance)
    flip   orders C<? :> X> opposite to the input   (contravariance)
    flat   leaves the C<X> pairwise unrelated       (invariance)
    merge  unions the three outputs and relates C<X> to C<? <: X> and C<? :> X>

Every family is embedded in place of C<?>: its top is C<?> itself and its
bottom sits directly above Null.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Optional, Set, Tuple

from app.core.config import settings
from app.core.exceptions import BudgetExceededError
from app.models.class_table import ClassTable
from app.models.types import NULL, OBJECT, UNBOUNDED, Generic, GroundType, Variance, apply
from app.services.relation import Edge, SubtypingRelation, dual, initial_subtyping, reduction
from app.utils.metrics import carrier_size, count_application, iteration_duration, track_duration

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelationTriple:
    """The outputs of copy, flip and flat over one common input relation"""

    covariant: SubtypingRelation
    contravariant: SubtypingRelation
    invariant: SubtypingRelation
    source: SubtypingRelation
    generic_classes: Tuple[str, ...]


def _family(head: str, variance: Variance, r: SubtypingRelation) -> Dict[GroundType, GroundType]:
    return {x: apply(head, variance, x) for x in r.carrier}


def _embed(table: ClassTable, r: SubtypingRelation, variance: Variance, order: SubtypingRelation) -> SubtypingRelation:
    # ``order`` is r itself for copy and dual(r) for flip; either way Null
    # and Object stay global bottom and top.
    carrier: Set[GroundType] = set(r.carrier)
    edges: Set[Edge] = set(r.edges)
    family_bottom = NULL if variance is Variance.COVARIANT else OBJECT
    for head in table.generic_classes:
        image = _family(head, variance, r)
        carrier.update(image.values())
        edges.update((image[s], image[t]) for s, t in order.edges)
        edges.add((NULL, image[family_bottom]))
    return reduction(carrier, edges, r.iteration)


@count_application("copy")
def copy(table: ClassTable, r: SubtypingRelation) -> SubtypingRelation:
    """Covariant families ``C<? <: X>``, ordered exactly as their arguments"""
    return _embed(table, r, Variance.COVARIANT, r)


@count_application("flip")
def flip(table: ClassTable, r: SubtypingRelation) -> SubtypingRelation:
    """Contravariant families ``C<? :> X>``, ordered opposite to their arguments"""
    return _embed(table, r, Variance.CONTRAVARIANT, dual(r))


@count_application("flat")
def flat(table: ClassTable, r: SubtypingRelation) -> SubtypingRelation:
    """Invariant families ``C<X>``: an antichain between Null and ``C<?>``"""
    carrier: Set[GroundType] = set(r.carrier)
    edges: Set[Edge] = set(r.edges)
    for head in table.generic_classes:
        top = Generic(head, UNBOUNDED)
        for member in _family(head, Variance.INVARIANT, r).values():
            carrier.add(member)
            edges.add((NULL, member))
            edges.add((member, top))
    return reduction(carrier, edges, r.iteration)


@count_application("merge")
def merge(triple: RelationTriple) -> SubtypingRelation:
    """
    Union of the three relations, identifying equal canonical types.

    Adds C<X> below C<? <: X> and C<? :> X> for every input type X; the
    rest follows by transitivity. Raises AntisymmetryError if the union is
    not a partial order.
    """
    carrier = triple.covariant.carrier | triple.contravariant.carrier | triple.invariant.carrier
    edges: Set[Edge] = set(triple.covariant.edges) | triple.contravariant.edges | triple.invariant.edges
    for head in triple.generic_classes:
        for x in triple.source.carrier:
            exact = apply(head, Variance.INVARIANT, x)
            for variance in (Variance.COVARIANT, Variance.CONTRAVARIANT):
                wildcard = apply(head, variance, x)
                if wildcard != exact:
                    edges.add((exact, wildcard))
    return reduction(carrier, edges, triple.source.iteration)


def identity(r: SubtypingRelation) -> SubtypingRelation:
    return r


@track_duration(iteration_duration)
def jsm(table: ClassTable, r: SubtypingRelation) -> SubtypingRelation:
    """One construction step: merge after (copy, flip, flat)"""
    triple = RelationTriple(
        covariant=copy(table, r),
        contravariant=flip(table, r),
        invariant=flat(table, r),
        source=r,
        generic_classes=table.generic_classes,
    )
    return merge(triple).with_iteration(r.iteration + 1)


STAGES: Dict[str, Callable[[ClassTable, SubtypingRelation], SubtypingRelation]] = {
    "copy": copy,
    "flip": flip,
    "flat": flat,
    "jsm": jsm,
}


def projected_size(table: ClassTable, r: SubtypingRelation) -> int:
    """Carrier size after one more construction step"""
    carrier: Set[GroundType] = set(r.carrier)
    for head in table.generic_classes:
        for variance in Variance:
            carrier.update(_family(head, variance, r).values())
    return len(carrier)


def iterate_steps(table: ClassTable, n: int, budget: Optional[int] = None) -> Iterator[SubtypingRelation]:
    """Yield the relations of iterations 0..n, checking the carrier budget before each step"""
    if n < 0:
        raise ValueError("number of iterations must be non-negative")
    budget = settings.CARRIER_BUDGET if budget is None else budget
    r = initial_subtyping(table)
    if len(r) > budget:
        raise BudgetExceededError(0, len(r), budget)
    yield r
    for k in range(1, n + 1):
        # Check budget before growing
        projected = projected_size(table, r)
        if projected > budget:
            raise BudgetExceededError(k, projected, budget)
        start = time.perf_counter()
        previous_size = len(r)
        r = jsm(table, r)
        carrier_size.set(len(r))
        logger.info(
            "Construction step complete",
            extra={
                "iteration": k,
                "carrier_size": len(r),
                "new_types": len(r) - previous_size,
                "hasse_edges": len(r.edges),
                "duration_ms": round((time.perf_counter() - start) * 1000, 2),
            },
        )
        yield r


def iterate(table: ClassTable, n: int, budget: Optional[int] = None) -> SubtypingRelation:
    """The relation over all canonical types of rank at most ``n``"""
    r = None
    for r in iterate_steps(table, n, budget):
        pass
    return r

"""
Finite subtyping relations

A relation is stored as its Hasse diagram (the transitive reduction);
the reflexive-transitive closure is computed on demand and memoized.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, FrozenSet, Iterable, List, Mapping, Set, Tuple

import networkx as nx

from app.core.cache import cache, cache_key
from app.core.exceptions import AntisymmetryError, NotABijectionError, NotInCarrierError
from app.models.class_table import ClassTable
from app.models.types import (
    NULL,
    OBJECT,
    UNBOUNDED,
    Generic,
    GroundType,
    Named,
    display,
    sort_key,
    sorted_types,
)

logger = logging.getLogger(__name__)

Edge = Tuple[GroundType, GroundType]


@dataclass(frozen=True)
class SubtypingRelation:
    """
    A finite partial order over canonical ground types.

    ``edges`` holds (sub, super) pairs of the Hasse diagram. ``iteration``
    records how many construction steps produced the relation and does not
    take part in equality.
    """

    carrier: FrozenSet[GroundType]
    edges: FrozenSet[Edge]
    iteration: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.carrier)

    def __contains__(self, t: GroundType) -> bool:
        return t in self.carrier

    @property
    def types(self) -> List[GroundType]:
        """Carrier in canonical (rank, display) order"""
        return sorted_types(self.carrier)

    @property
    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges, key=lambda e: (sort_key(e[0]), sort_key(e[1])))

    def to_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.carrier)
        graph.add_edges_from(self.edges)
        return graph

    def with_iteration(self, iteration: int) -> "SubtypingRelation":
        return SubtypingRelation(self.carrier, self.edges, iteration)


def _check_acyclic(graph: nx.DiGraph) -> None:
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        left, right = cycle[0]
        raise AntisymmetryError(display(left), display(right))


def rank0_type(name: str, table: ClassTable) -> GroundType:
    """The rank-0 type of a class: its name, or ``C<?>`` for a generic class"""
    if table.arity(name) == 1:
        return Generic(name, UNBOUNDED)
    return Named(name)


def subclassing_relation(table: ClassTable) -> SubtypingRelation:
    """Class tree rooted at Object, with Null below every leaf class"""
    carrier = {OBJECT, NULL} | {Named(name) for name in table.names}
    edges = {(Named(d.name), Named(d.superclass)) for d in table.declarations}
    parents = {d.superclass for d in table.declarations}
    leaves = [t for t in carrier if t != NULL and t.name not in parents]
    edges |= {(NULL, leaf) for leaf in leaves}
    return SubtypingRelation(frozenset(carrier), frozenset(edges))


def initial_subtyping(table: ClassTable) -> SubtypingRelation:
    """Rank-0 subtyping: the subclassing tree with generic classes given the ``?`` argument"""
    classes = subclassing_relation(table)
    node_map = subclass_node_map(table)
    return SubtypingRelation(
        frozenset(node_map[t] for t in classes.carrier),
        frozenset((node_map[s], node_map[t]) for s, t in classes.edges),
    )


def subclass_node_map(table: ClassTable) -> dict:
    """Node map from the subclassing relation onto the rank-0 subtyping relation"""
    mapping = {OBJECT: OBJECT, NULL: NULL}
    for name in table.names:
        mapping[Named(name)] = rank0_type(name, table)
    return mapping


def _compute_closure(r: SubtypingRelation) -> FrozenSet[Edge]:
    closed = nx.transitive_closure(r.to_graph(), reflexive=None)
    pairs: Set[Edge] = set(closed.edges)
    pairs.update((t, t) for t in r.carrier)
    return frozenset(pairs)


def closure(r: SubtypingRelation) -> FrozenSet[Edge]:
    """Reflexive-transitive closure of the stored edges"""
    return cache.get_or_set(cache_key("closure", r.carrier, r.edges), lambda: _compute_closure(r))


def reduction(carrier: Iterable[GroundType], closed: Iterable[Edge], iteration: int = 0) -> SubtypingRelation:
    """
    Hasse diagram of the partial order generated by ``closed``.

    Any acyclic generating set gives the same result as its closure.

    Raises AntisymmetryError when two distinct types are related both ways.
    """
    nodes = frozenset(carrier)
    graph = nx.DiGraph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from((s, t) for s, t in closed if s != t)
    _check_acyclic(graph)
    return SubtypingRelation(nodes, frozenset(nx.transitive_reduction(graph).edges), iteration)


def is_edge(r: SubtypingRelation, s: GroundType, t: GroundType) -> bool:
    """True iff ``s`` is a subtype of ``t`` in ``r``"""
    for u in (s, t):
        if u not in r.carrier:
            raise NotInCarrierError(f"type {display(u)} is not in the relation")
    return (s, t) in closure(r)


def order_isomorphic(r1: SubtypingRelation, r2: SubtypingRelation, mapping: Mapping[GroundType, GroundType]) -> bool:
    """True iff ``mapping`` is a bijection between the carriers preserving and reflecting the order"""
    if set(mapping) != set(r1.carrier) or set(mapping.values()) != set(r2.carrier) or len(r1) != len(r2):
        raise NotABijectionError("node map is not a bijection between the two carriers")
    image = {(mapping[s], mapping[t]) for s, t in closure(r1)}
    return image == set(closure(r2))


def dual(r: SubtypingRelation) -> SubtypingRelation:
    """Same carrier with every edge reversed; Object and Null swap roles"""
    return SubtypingRelation(r.carrier, frozenset((t, s) for s, t in r.edges), r.iteration)


def induced(r: SubtypingRelation, keep: Callable[[GroundType], bool]) -> SubtypingRelation:
    """Sub-relation on the types satisfying ``keep``"""
    kept = frozenset(t for t in r.carrier if keep(t))
    closed = [(s, t) for s, t in closure(r) if s in kept and t in kept]
    return reduction(kept, closed, r.iteration)


def maximal_elements(r: SubtypingRelation) -> List[GroundType]:
    below = {s for s, _ in r.edges}
    return sorted_types(t for t in r.carrier if t not in below)


def minimal_elements(r: SubtypingRelation) -> List[GroundType]:
    above = {t for _, t in r.edges}
    return sorted_types(t for t in r.carrier if t not in above)


def has_global_bounds(r: SubtypingRelation) -> bool:
    """Object is the unique top and Null the unique bottom"""
    return maximal_elements(r) == [OBJECT] and minimal_elements(r) == [NULL]

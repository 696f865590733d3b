"""Named posets, windows of the natural numbers, and poset enumeration."""

import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Tuple

import networkx as nx

from src.algebra.poset import Poset, build_poset
from src.errors import InputError

logger = logging.getLogger(__name__)


def diamond() -> Poset:
    """a, b below c; a and b incomparable."""
    return build_poset(['a', 'b', 'c'], [('a', 'c'), ('b', 'c')])


def chain(n: int = 3) -> Poset:
    labels = [str(i) for i in range(n)]
    return build_poset(labels, list(zip(labels, labels[1:])))


def circle_c4() -> Poset:
    """a1, a2 below both b1 and b2; the comparability graph is a 4-cycle."""
    return build_poset(
        ['a1', 'a2', 'b1', 'b2'],
        [('a1', 'b1'), ('a1', 'b2'), ('a2', 'b1'), ('a2', 'b2')],
    )


def singleton(label: str = 'a') -> Poset:
    return build_poset([label], [])


def two_points() -> Poset:
    return build_poset(['a', 'b'], [])


NAMED = {
    'diamond': diamond,
    'chain': chain,
    'circle': circle_c4,
    'singleton': singleton,
    'two_points': two_points,
}


def named_poset(name: str) -> Poset:
    if name not in NAMED:
        raise InputError(f"Unknown named poset {name!r}; choose from {sorted(NAMED)}")
    return NAMED[name]()


@dataclass(frozen=True)
class NatPoset:
    """K = N with its natural order, exposed through finite windows {0, ..., N-1}."""

    def window(self, size: int) -> Poset:
        if size < 1:
            raise InputError(f"Window size must be positive, got {size}")
        return _nat_window(size)

    @staticmethod
    def label(k: int) -> str:
        return str(k)

    @staticmethod
    def value(label: str) -> int:
        return int(label)


@lru_cache(maxsize=16)
def _nat_window(size: int) -> Poset:
    return chain(size)


def _order_ideals(P: Poset) -> List[frozenset]:
    ideals = []
    elements = P.elements
    for r in range(len(elements) + 1):
        for subset in combinations(elements, r):
            s = frozenset(subset)
            if all(P.down[x] <= s for x in s):
                ideals.append(s)
    return ideals


def _strict_digraph(P: Poset) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(P.elements)
    g.add_edges_from((a, b) for a, b in P.leq if a != b)
    return g


@lru_cache(maxsize=8)
def enumerate_posets(n: int) -> Tuple[Poset, ...]:
    """
    All posets on n points up to isomorphism, labelled '0'..'n-1'.

    Every poset arises from a smaller one by adding a maximal element above an order ideal.
    """
    if n < 0:
        raise InputError("n must be nonnegative")
    if n == 0:
        return (build_poset([], []),)

    result: List[Poset] = []
    buckets: Dict[str, List[nx.DiGraph]] = defaultdict(list)
    new = str(n - 1)
    for smaller in enumerate_posets(n - 1):
        for ideal in _order_ideals(smaller):
            relations = [pair for pair in smaller.leq] + [(x, new) for x in ideal]
            candidate = build_poset(list(smaller.elements) + [new], relations)
            digraph = _strict_digraph(candidate)
            key = nx.weisfeiler_lehman_graph_hash(digraph)
            if any(nx.is_isomorphic(digraph, seen) for seen in buckets[key]):
                continue
            buckets[key].append(digraph)
            result.append(candidate)

    logger.debug(f"Enumerated {len(result)} posets on {n} points")
    return tuple(result)

"""Finite posets, their comparability graph, and order-theoretic queries."""

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path as FilePath
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from src.errors import AntisymmetryViolation, InputError, UnknownElement

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]


@dataclass(frozen=True)
class Poset:
    """A finite poset; `leq` holds the full reflexive-transitive relation."""

    elements: Tuple[str, ...]
    leq: FrozenSet[Pair]

    @cached_property
    def index(self) -> Dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def up(self) -> Dict[str, FrozenSet[str]]:
        ups: Dict[str, set] = {e: set() for e in self.elements}
        for a, b in self.leq:
            ups[a].add(b)
        return {e: frozenset(s) for e, s in ups.items()}

    @cached_property
    def down(self) -> Dict[str, FrozenSet[str]]:
        downs: Dict[str, set] = {e: set() for e in self.elements}
        for a, b in self.leq:
            downs[b].add(a)
        return {e: frozenset(s) for e, s in downs.items()}

    @cached_property
    def graph(self) -> nx.Graph:
        return comparability_graph(self).graph

    def check(self, *elements: str) -> None:
        for e in elements:
            if e not in self.index:
                raise UnknownElement(e)

    def le(self, a: str, b: str) -> bool:
        return (a, b) in self.leq

    def lt(self, a: str, b: str) -> bool:
        return a != b and (a, b) in self.leq

    def ordered(self, items: Iterable[str]) -> List[str]:
        """Sort elements by declaration order."""
        return sorted(items, key=self.index.__getitem__)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Poset({list(self.elements)}, {len(self.leq)} pairs)"


@dataclass(frozen=True)
class ComparabilityGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Pair, ...]  # (lower, upper), declaration-ordered

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


def build_poset(elements: Sequence[str], relations: Iterable[Sequence[str]]) -> Poset:
    """
    Close a user relation reflexively and transitively.

    raises:
        InputError: duplicate identifiers
        UnknownElement: a relation mentions an undeclared element
        AntisymmetryViolation: the closure identifies two distinct elements
    """
    elements = tuple(str(e) for e in elements)
    if len(set(elements)) != len(elements):
        raise InputError(f"Duplicate element identifiers in {list(elements)}")
    known = set(elements)

    digraph = nx.DiGraph()
    digraph.add_nodes_from(elements)
    for pair in relations:
        if len(pair) != 2:
            raise InputError(f"Relation {pair!r} is not a pair")
        a, b = str(pair[0]), str(pair[1])
        for e in (a, b):
            if e not in known:
                raise UnknownElement(e)
        digraph.add_edge(a, b)

    closure = nx.transitive_closure(digraph, reflexive=True)
    leq = frozenset(closure.edges())

    position = {e: i for i, e in enumerate(elements)}
    for a, b in sorted(leq, key=lambda ab: (position[ab[0]], position[ab[1]])):
        if a != b and (b, a) in leq:
            raise AntisymmetryViolation(a, b)

    poset = Poset(elements, leq)
    logger.debug(f"Built {poset!r}")
    return poset


def comparable(P: Poset, a: str, b: str) -> bool:
    P.check(a, b)
    return P.le(a, b) or P.le(b, a)


def upper_bounds(P: Poset, pair: Pair) -> FrozenSet[str]:
    x, y = pair
    P.check(x, y)
    return P.up[x] & P.up[y]


def lower_bounds(P: Poset, pair: Pair) -> FrozenSet[str]:
    x, y = pair
    P.check(x, y)
    return P.down[x] & P.down[y]


def common_upper_bound(P: Poset, elements: Iterable[str]) -> Optional[str]:
    """First declared element above all of `elements`, or None."""
    bounds = frozenset(P.elements)
    for e in elements:
        bounds &= P.up[e]
    ordered = P.ordered(bounds)
    return ordered[0] if ordered else None


def is_upward_directed(P: Poset) -> bool:
    for x, y in combinations(P.elements, 2):
        if not P.up[x] & P.up[y]:
            return False
    return True


def is_connected(P: Poset) -> bool:
    if len(P) == 0:
        return True
    return nx.is_connected(P.graph)


def comparability_graph(P: Poset) -> ComparabilityGraph:
    edges = [
        (a, b) for a, b in P.leq if a != b
    ]
    edges.sort(key=lambda ab: tuple(sorted((P.index[ab[0]], P.index[ab[1]]))))
    return ComparabilityGraph(P.elements, tuple(edges))


def triangles(P: Poset) -> List[Tuple[str, str, str]]:
    """Strict 3-chains a < b < c in lexicographic declaration order."""
    chains = []
    for a in P.elements:
        for b in P.ordered(P.up[a] - {a}):
            for c in P.ordered(P.up[b] - {b}):
                chains.append((a, b, c))
    chains.sort(key=lambda t: tuple(P.index[e] for e in t))
    return chains


def component_poset(P: Poset, a: str) -> Poset:
    """Induced poset on the connected component containing `a`."""
    P.check(a)
    members = nx.node_connected_component(P.graph, a)
    elements = tuple(e for e in P.elements if e in members)
    leq = frozenset((x, y) for x, y in P.leq if x in members)
    return Poset(elements, leq)


def poset_to_dict(P: Poset) -> Dict[str, list]:
    return {
        'elements': list(P.elements),
        'le': [list(pair) for pair in sorted(P.leq)],
    }


def poset_from_dict(data: Dict) -> Poset:
    if not isinstance(data, dict) or 'elements' not in data:
        raise InputError("Poset file must be an object with 'elements' and 'le'")
    return build_poset(data['elements'], data.get('le', []))


def load_poset(path: Union[str, FilePath]) -> Poset:
    path = FilePath(path)
    if not path.exists():
        raise InputError(f"Poset file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise InputError(f"Poset file {path} is not valid JSON: {e}") from e
    poset = poset_from_dict(data)
    logger.info(f"Loaded {poset!r} from {path}")
    return poset


def save_poset(P: Poset, path: Union[str, FilePath]) -> None:
    FilePath(path).write_text(
        json.dumps(poset_to_dict(P), indent=2, sort_keys=True) + '\n', encoding='utf-8'
    )

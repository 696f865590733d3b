"""
Paths on a poset, the path semigroup operation, and the 1-simplex view.

A path is stored as its steps in written order: the leftmost step is applied
last, as in p = p_n * ... * p_1. The empty path 0 is the path with no steps.
Every Path value is in normal form.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from src.algebra.poset import Poset, upper_bounds
from src.errors import (
    InvalidSimplex,
    InvalidSupport,
    NoCommonBound,
    NotAdjacent,
    NotAnUpperBound,
    NotComparable,
    NotComposable,
    ZeroPath,
)

logger = logging.getLogger(__name__)


class Direction(Enum):
    DOWN = 'd'
    UP = 'u'
    TRIVIAL = 'i'


@dataclass(frozen=True)
class Step:
    """One elementary step; its direction is read off the order, never stored."""

    start: str
    end: str
    poset: Poset = field(compare=False, repr=False)

    def __post_init__(self):
        self.poset.check(self.start, self.end)
        _direction(self.poset, self.start, self.end)

    @property
    def direction(self) -> Direction:
        return _direction(self.poset, self.start, self.end)

    def inverse(self) -> 'Step':
        return Step(self.end, self.start, self.poset)

    def __str__(self) -> str:
        if self.direction is Direction.TRIVIAL:
            return f"i({self.start})"
        return f"{self.direction.value}({self.end},{self.start})"


@dataclass(frozen=True)
class Path:
    steps: Tuple[Step, ...] = ()

    @property
    def is_zero(self) -> bool:
        return not self.steps

    @property
    def start(self) -> str:
        if self.is_zero:
            raise ZeroPath("start")
        return self.steps[-1].start

    @property
    def end(self) -> str:
        if self.is_zero:
            raise ZeroPath("end")
        return self.steps[0].end

    @property
    def is_trivial(self) -> bool:
        return len(self.steps) == 1 and self.steps[0].direction is Direction.TRIVIAL

    @property
    def length(self) -> int:
        """Number of non-trivial steps."""
        return 0 if self.is_trivial else len(self.steps)

    @property
    def vertices(self) -> Tuple[str, ...]:
        """Visited elements in the order of travel, start first."""
        if self.is_zero:
            return ()
        if self.is_trivial:
            return (self.start,)
        return (self.start,) + tuple(s.end for s in reversed(self.steps))

    def __str__(self) -> str:
        return render(self)


ZERO = Path(())


@dataclass(frozen=True)
class Simplex1:
    """[a^x b] = (a,x) * overline(x,b): starts at b, climbs to x, ends at a."""

    a: str
    x: str
    b: str

    def as_tuple(self) -> Tuple[str, str, str]:
        return (self.a, self.x, self.b)

    def __str__(self) -> str:
        return f"[{self.a}^{self.x} {self.b}]"


def render(p: Path) -> str:
    if p.is_zero:
        return '0'
    return ' * '.join(str(s) for s in p.steps)


def _direction(P: Poset, start: str, end: str) -> Direction:
    if start == end:
        return Direction.TRIVIAL
    if P.le(end, start):
        return Direction.DOWN
    if P.le(start, end):
        return Direction.UP
    raise NotComparable(start, end)


def step(P: Poset, start: str, end: str) -> Path:
    """The elementary path from `start` to `end` (i_a when they coincide)."""
    P.check(start, end)
    return Path((Step(start, end, P),))


def _path_from_walk(P: Poset, walk: Sequence[str]) -> Path:
    if not walk:
        return ZERO
    if len(walk) == 1:
        return Path((Step(walk[0], walk[0], P),))
    steps = [Step(u, v, P) for u, v in zip(walk, walk[1:])]
    return Path(tuple(reversed(steps)))


@lru_cache(maxsize=65536)
def _canonical_corner(P: Poset, left: str, corner: str, right: str) -> str:
    """First declared element reachable from `corner` inside the common bounds of its neighbours."""
    if P.le(left, corner) and P.le(right, corner):
        bounds = P.up[left] & P.up[right]
    else:
        bounds = P.down[left] & P.down[right]
    component = nx.node_connected_component(P.graph.subgraph(bounds), corner)
    return P.ordered(component)[0]


def _contract(P: Poset, walk: Sequence[str]) -> List[str]:
    out: List[str] = []
    for v in walk:
        if out and out[-1] == v:
            continue
        out.append(v)
        while len(out) >= 3 and (P.le(out[-3], out[-1]) or P.le(out[-1], out[-3])):
            del out[-2]
            if out[-2] == out[-1]:
                out.pop()
    return out


def _reduce_walk(P: Poset, walk: Sequence[str]) -> List[str]:
    current = list(walk)
    while True:
        current = _contract(P, current)
        for i in range(1, len(current) - 1):
            best = _canonical_corner(P, current[i - 1], current[i], current[i + 1])
            if best != current[i]:
                current[i] = best
                break
        else:
            return current


def normalize(P: Poset, raw: Sequence[Step]) -> Path:
    """
    Reduce a raw step word to normal form.

    Adjacent same-direction steps merge, inverse pairs cancel, trivial steps vanish,
    any corner x->y->z with x, z comparable collapses to x->z, and every remaining
    peak or valley sits on the first declared element of its comparability
    component among the common bounds of its neighbours. Returns 0 when consecutive
    steps do not compose.
    """
    if not raw:
        return ZERO
    for left, right in zip(raw, raw[1:]):
        if left.start != right.end:
            return ZERO
    walk = [raw[-1].start] + [s.end for s in reversed(raw)]
    return _path_from_walk(P, _reduce_walk(P, walk))


def compose(P: Poset, p: Path, q: Path) -> Path:
    """p * q: apply q first, then p."""
    if p.is_zero or q.is_zero or p.start != q.end:
        return ZERO
    return normalize(P, p.steps + q.steps)


def compose_all(P: Poset, *paths: Path) -> Path:
    """Left-to-right written product p1 * p2 * ... * pn."""
    if not paths:
        return ZERO
    result = paths[-1]
    for p in reversed(paths[:-1]):
        result = compose(P, p, result)
    return result


def inverse(p: Path) -> Path:
    if p.is_zero:
        return ZERO
    return Path(tuple(s.inverse() for s in reversed(p.steps)))


def endpoints(p: Path) -> Optional[Tuple[str, str]]:
    """(end, start), or None for 0."""
    if p.is_zero:
        return None
    return (p.end, p.start)


def is_loop(p: Path) -> bool:
    return not p.is_zero and p.start == p.end


def trivial(P: Poset, a: str) -> Path:
    return step(P, a, a)


def simplex(P: Poset, a: str, x: str, b: str) -> Simplex1:
    P.check(a, x, b)
    if not (P.le(a, x) and P.le(b, x)):
        raise InvalidSimplex((a, x, b))
    return Simplex1(a, x, b)


def to_simplices(P: Poset, p: Path) -> List[Simplex1]:
    """
    Regroup the alternating word into 1-simplices, written order.

    A word that starts by descending, or ends by climbing, gets a trivial wing at
    that extremal element, which then serves as its own support.
    """
    if p.is_zero:
        raise ZeroPath("to_simplices")
    walk = list(p.vertices)
    if len(walk) == 1:
        return [Simplex1(walk[0], walk[0], walk[0])]
    if P.lt(walk[1], walk[0]):
        walk.insert(0, walk[0])
    if P.lt(walk[-2], walk[-1]):
        walk.append(walk[-1])
    in_travel_order = [
        Simplex1(walk[i + 2], walk[i + 1], walk[i]) for i in range(0, len(walk) - 2, 2)
    ]
    return list(reversed(in_travel_order))


def from_simplices(P: Poset, word: Sequence[Simplex1]) -> Path:
    if not word:
        return ZERO
    for s in word:
        simplex(P, s.a, s.x, s.b)
    for left, right in zip(word, word[1:]):
        if left.b != right.a:
            raise NotComposable(f"{left} * {right}")
    walk: List[str] = []
    for s in reversed(word):
        walk.extend([s.b, s.x, s.a])
    return _path_from_walk(P, _reduce_walk(P, walk))


def support_component(P: Poset, a: str, b: str, x: str) -> List[str]:
    """Supports reachable from x through comparable common upper bounds of a and b."""
    bounds = upper_bounds(P, (a, b))
    if x not in bounds:
        return []
    return P.ordered(nx.node_connected_component(P.graph.subgraph(bounds), x))


def support_move(P: Poset, s: Simplex1, y: str) -> Simplex1:
    simplex(P, s.a, s.x, s.b)
    P.check(y)
    if y not in support_component(P, s.a, s.b, s.x):
        raise InvalidSupport(s, y)
    return Simplex1(s.a, y, s.b)


def merge(P: Poset, s1: Simplex1, s2: Simplex1, z: str) -> Simplex1:
    """[a^x b] * [b^y c] = [a^z c] for a common upper bound z of x and y."""
    simplex(P, s1.a, s1.x, s1.b)
    simplex(P, s2.a, s2.x, s2.b)
    P.check(z)
    if s1.b != s2.a:
        raise NotAdjacent(s1, s2)
    if not (P.le(s1.x, z) and P.le(s2.x, z)):
        raise NotAnUpperBound(z, {s1.x, s2.x})
    return Simplex1(s1.a, z, s2.b)


def split(P: Poset, s: Simplex1, b: str, supports: Tuple[str, str]) -> Tuple[Simplex1, Simplex1]:
    """[a^z c] = [a^x b] * [b^y c] when x, y, z have a common upper bound."""
    simplex(P, s.a, s.x, s.b)
    x, y = supports
    left = simplex(P, s.a, x, b)
    right = simplex(P, b, y, s.b)
    if not (P.up[x] & P.up[y] & P.up[s.x]):
        raise NoCommonBound((x, y, s.x))
    return left, right


def simplices(P: Poset) -> List[Simplex1]:
    return [
        Simplex1(a, x, b)
        for x in P.elements
        for a in P.ordered(P.down[x])
        for b in P.ordered(P.down[x])
    ]


def simplex_words(P: Poset, max_len: int) -> List[Tuple[Simplex1, ...]]:
    """All composable simplex words with 1..max_len letters."""
    letters = simplices(P)
    ending_at = {e: [s for s in letters if s.a == e] for e in P.elements}
    words: List[Tuple[Simplex1, ...]] = [(s,) for s in letters]
    layer = list(words)
    for _ in range(max_len - 1):
        layer = [w + (s,) for w in layer for s in ending_at[w[-1].b]]
        words.extend(layer)
    return words


def path_sort_key(P: Poset, p: Path) -> Tuple:
    if p.is_zero:
        return (-1,)
    return (P.index[p.end], P.index[p.start], p.length, render(p))


def enumerate_paths(P: Poset, max_simplices: int) -> List[Path]:
    """Distinct normal forms of all simplex words up to `max_simplices` letters."""
    found = {from_simplices(P, w) for w in simplex_words(P, max_simplices)}
    return sorted(found, key=lambda p: path_sort_key(P, p))


def walks(P: Poset, max_steps: int) -> List[Path]:
    """All normal-form paths with at most `max_steps` non-trivial steps."""
    seen = {trivial(P, a) for a in P.elements}
    frontier = list(seen)
    while frontier:
        next_frontier = []
        for p in frontier:
            for v in P.ordered((P.up[p.end] | P.down[p.end]) - {p.end}):
                q = compose(P, step(P, p.end, v), p)
                if q.length <= max_steps and q not in seen:
                    seen.add(q)
                    next_frontier.append(q)
        frontier = next_frontier
    return sorted(seen, key=lambda p: path_sort_key(P, p))

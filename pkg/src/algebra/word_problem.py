"""
Equality of paths modulo the semigroup axioms.

Equal verdicts carry a replayable trace of merge, split and support moves. Distinct
verdicts carry an endpoint or homology certificate. Everything else is Unknown.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from src.algebra.homology import h1_class, h1_data, spanning_tree, tree_route
from src.algebra.paths import (
    Path,
    Simplex1,
    compose,
    compose_all,
    endpoints,
    from_simplices,
    inverse,
    is_loop,
    merge,
    render,
    split,
    step,
    support_component,
    support_move,
    to_simplices,
    trivial,
)
from src.algebra.poset import (
    Poset,
    common_upper_bound,
    comparability_graph,
    component_poset,
    is_connected,
    is_upward_directed,
    triangles,
)
from src.errors import (
    AlgebraError,
    DisconnectedPoset,
    EndpointMismatch,
    InputError,
    NotComposable,
    TraceMismatch,
    UnresolvedPair,
)

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 4
DEFAULT_NODE_BUDGET = 100_000
MOVE_KINDS = ('merge', 'split', 'support_move')


class Verdict(Enum):
    EQUAL = 'Equal'
    DISTINCT = 'Distinct'
    UNKNOWN = 'Unknown'


@dataclass(frozen=True)
class MoveRecord:
    side: str
    kind: str
    position: int
    operands: Tuple[Tuple[str, str, str], ...]
    support: Tuple[str, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'side': self.side,
            'kind': self.kind,
            'position': self.position,
            'operands': [list(o) for o in self.operands],
            'support': list(self.support),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MoveRecord':
        try:
            record = cls(
                side=str(data['side']),
                kind=str(data['kind']),
                position=int(data['position']),
                operands=tuple(tuple(str(e) for e in o) for o in data['operands']),
                support=tuple(str(e) for e in data['support']),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"Malformed move record {data!r}: {e}") from e
        if record.side not in ('p', 'q') or record.kind not in MOVE_KINDS:
            raise InputError(f"Malformed move record {data!r}")
        if any(len(o) != 3 for o in record.operands):
            raise InputError(f"Move operands must be simplex triples: {data!r}")
        return record


def _format_class(c: Sequence[int]) -> str:
    if len(c) == 1:
        return str(c[0])
    return '(' + ', '.join(str(x) for x in c) + ')'


def _format_endpoints(e: Optional[Tuple[str, str]]) -> str:
    return '0' if e is None else f"({e[0]},{e[1]})"


@dataclass(frozen=True)
class Certificate:
    kind: str  # 'endpoints' or 'homology'
    left: Any
    right: Any

    def describe(self) -> str:
        if self.kind == 'homology':
            return f"homology {_format_class(self.left)} ≠ {_format_class(self.right)}"
        return f"endpoints {_format_endpoints(self.left)} ≠ {_format_endpoints(self.right)}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'left': None if self.left is None else list(self.left),
            'right': None if self.right is None else list(self.right),
            'text': self.describe(),
        }


@dataclass(frozen=True)
class EqualityVerdict:
    verdict: Verdict
    trace: Tuple[MoveRecord, ...] = ()
    certificate: Optional[Certificate] = None
    explored: int = 0

    @property
    def is_equal(self) -> bool:
        return self.verdict is Verdict.EQUAL

    @property
    def is_distinct(self) -> bool:
        return self.verdict is Verdict.DISTINCT

    @property
    def is_unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN

    def to_dict(self) -> Dict[str, Any]:
        return {
            'verdict': self.verdict.value,
            'trace': [m.to_dict() for m in self.trace],
            'certificate': None if self.certificate is None else self.certificate.to_dict(),
            'explored': self.explored,
        }


@dataclass(frozen=True)
class LoopGroupPresentation:
    base: str
    tree_edges: Tuple[Tuple[str, str], ...]
    generator_edges: Tuple[Tuple[str, str], ...]
    generators: Tuple[Path, ...]
    relators: Tuple[Tuple[Tuple[int, int], ...], ...]
    trivial: bool = False

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'base': self.base,
            'tree_edges': [list(e) for e in self.tree_edges],
            'generators': [
                {'edge': list(e), 'loop': render(g)}
                for e, g in zip(self.generator_edges, self.generators)
            ],
            'relators': [[list(letter) for letter in r] for r in self.relators],
            'trivial': self.trivial,
        }


# moves

def apply_move(
    P: Poset, word: Sequence[Simplex1], kind: str, position: int, support: Sequence[str]
) -> List[Simplex1]:
    word = list(word)
    if kind == 'merge':
        (z,) = support
        return word[:position] + [merge(P, word[position], word[position + 1], z)] + word[position + 2:]
    if kind == 'split':
        b, x, y = support
        left, right = split(P, word[position], b, (x, y))
        return word[:position] + [left, right] + word[position + 1:]
    if kind == 'support_move':
        (y,) = support
        return word[:position] + [support_move(P, word[position], y)] + word[position + 1:]
    raise InputError(f"Unknown move kind {kind!r}")


def _operands(word: Sequence[Simplex1], kind: str, position: int) -> Tuple[Tuple[str, str, str], ...]:
    width = 2 if kind == 'merge' else 1
    return tuple(s.as_tuple() for s in word[position:position + width])


def candidate_moves(P: Poset, word: Sequence[Simplex1]) -> Iterator[Tuple[str, int, Tuple[str, ...]]]:
    """Every applicable move on a simplex word, in a fixed order."""
    for k in range(len(word) - 1):
        for z in P.ordered(P.up[word[k].x] & P.up[word[k + 1].x]):
            yield 'merge', k, (z,)

    for k, s in enumerate(word):
        for y in support_component(P, s.a, s.b, s.x):
            if y != s.x:
                yield 'support_move', k, (y,)

    for k, s in enumerate(word):
        seen = set()
        for w in P.ordered(P.up[s.x]):
            below = P.down[w]
            for b in P.ordered(below):
                for x in P.ordered(below & P.up[s.a] & P.up[b]):
                    for y in P.ordered(below & P.up[b] & P.up[s.b]):
                        if (b, x, y) not in seen:
                            seen.add((b, x, y))
                            yield 'split', k, (b, x, y)


class DeformationSearch:
    """Bidirectional breadth-first search over normal forms, one move per edge."""

    def __init__(self, P: Poset, depth: int = DEFAULT_DEPTH, node_budget: int = DEFAULT_NODE_BUDGET):
        self.P = P
        self.depth = depth
        self.node_budget = node_budget
        self.logger = logger.getChild(self.__class__.__name__)

    def neighbours(self, state: Path) -> Iterator[Tuple[Tuple[str, int, tuple, tuple], Path]]:
        word = to_simplices(self.P, state)
        for kind, position, support in candidate_moves(self.P, word):
            moved = apply_move(self.P, word, kind, position, support)
            yield (kind, position, _operands(word, kind, position), support), from_simplices(self.P, moved)

    def _chain(self, parents: Dict[Path, Any], side: str, meet: Path) -> List[MoveRecord]:
        moves = []
        state = meet
        while parents[state] is not None:
            previous, (kind, position, operands, support) = parents[state]
            moves.append(MoveRecord(side, kind, position, operands, support))
            state = previous
        moves.reverse()
        return moves

    def run(self, p: Path, q: Path) -> EqualityVerdict:
        if p == q:
            return EqualityVerdict(Verdict.EQUAL, explored=1)

        parents: Dict[str, Dict[Path, Any]] = {'p': {p: None}, 'q': {q: None}}
        frontiers = {'p': [p], 'q': [q]}
        depths = {'p': 0, 'q': 0}

        while True:
            open_sides = [s for s in ('p', 'q') if frontiers[s] and depths[s] < self.depth]
            if not open_sides:
                break
            side = min(open_sides, key=lambda s: len(frontiers[s]))
            other = 'q' if side == 'p' else 'p'
            layer = []
            for state in frontiers[side]:
                for move, successor in self.neighbours(state):
                    if successor in parents[side]:
                        continue
                    parents[side][successor] = (state, move)
                    if successor in parents[other]:
                        trace = self._chain(parents['p'], 'p', successor) + self._chain(parents['q'], 'q', successor)
                        explored = len(parents['p']) + len(parents['q'])
                        self.logger.debug(f"Met after {explored} states with {len(trace)} moves")
                        return EqualityVerdict(Verdict.EQUAL, tuple(trace), explored=explored)
                    if len(parents['p']) + len(parents['q']) > self.node_budget:
                        self.logger.warning(f"Node budget {self.node_budget} exhausted for {p} vs {q}")
                        return EqualityVerdict(Verdict.UNKNOWN, explored=self.node_budget)
                    layer.append(successor)
            frontiers[side] = layer
            depths[side] += 1

        explored = len(parents['p']) + len(parents['q'])
        self.logger.warning(f"Depth {self.depth} exhausted for {p} vs {q} after {explored} states")
        return EqualityVerdict(Verdict.UNKNOWN, explored=explored)


def _directed_trace(P: Poset, p: Path, q: Path) -> Optional[Tuple[MoveRecord, ...]]:
    """Collapse both sides to a single simplex by merging through first common upper bounds."""
    moves: List[MoveRecord] = []
    current = {'p': p, 'q': q}
    for side in ('p', 'q'):
        word = to_simplices(P, current[side])
        while len(word) > 1:
            z = common_upper_bound(P, (word[0].x, word[1].x))
            moves.append(MoveRecord(side, 'merge', 0, _operands(word, 'merge', 0), (z,)))
            current[side] = from_simplices(P, apply_move(P, word, 'merge', 0, (z,)))
            word = to_simplices(P, current[side])

    if current['p'] != current['q']:
        left = to_simplices(P, current['p'])[0]
        right = to_simplices(P, current['q'])[0]
        if left.x not in support_component(P, right.a, right.b, right.x):
            return None
        moves.append(MoveRecord('q', 'support_move', 0, (right.as_tuple(),), (left.x,)))
        current['q'] = from_simplices(P, [support_move(P, right, left.x)])
        if current['p'] != current['q']:
            return None
    return tuple(moves)


def _homology_certificate(P: Poset, p: Path, q: Path) -> Optional[Certificate]:
    H = h1_data(P)
    if is_loop(p) and is_loop(q):
        left, right = h1_class(H, p), h1_class(H, q)
    else:
        left, right = h1_class(H, compose(P, p, inverse(q))), H.zero
    if left != right:
        return Certificate('homology', left, right)
    return None


def equal_paths(
    P: Poset,
    p: Path,
    q: Path,
    depth: int = DEFAULT_DEPTH,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> EqualityVerdict:
    if p.is_zero and q.is_zero:
        return EqualityVerdict(Verdict.EQUAL)
    if p.is_zero or q.is_zero or endpoints(p) != endpoints(q):
        return EqualityVerdict(Verdict.DISTINCT, certificate=Certificate('endpoints', endpoints(p), endpoints(q)))
    if p == q:
        return EqualityVerdict(Verdict.EQUAL, explored=1)

    Q = P if is_connected(P) else component_poset(P, p.end)

    certificate = _homology_certificate(Q, p, q)
    if certificate is not None:
        logger.debug(f"{p} vs {q}: {certificate.describe()}")
        return EqualityVerdict(Verdict.DISTINCT, certificate=certificate)

    if is_upward_directed(Q):
        trace = _directed_trace(Q, p, q)
        if trace is not None:
            return EqualityVerdict(Verdict.EQUAL, trace)
        logger.warning(f"Directed collapse did not meet for {p} vs {q}; searching")

    verdict = DeformationSearch(Q, depth, node_budget).run(p, q)
    logger.debug(f"{p} vs {q}: {verdict.verdict.value}")
    return verdict


def paths_equal(P: Poset, p: Path, q: Path, **search) -> bool:
    return equal_paths(P, p, q, **search).is_equal


def replay_states(P: Poset, start: Path, moves: Sequence[MoveRecord]) -> List[Path]:
    """The normal forms visited by applying `moves` in order, starting state included."""
    states = [start]
    for move in moves:
        word = to_simplices(P, states[-1])
        width = 2 if move.kind == 'merge' else 1
        if not 0 <= move.position <= len(word) - width:
            raise TraceMismatch(f"position {move.position} outside a word of {len(word)} simplices")
        if _operands(word, move.kind, move.position) != move.operands:
            raise TraceMismatch(
                f"expected {list(move.operands)} at {move.position}, found "
                f"{list(_operands(word, move.kind, move.position))}"
            )
        try:
            moved = apply_move(P, word, move.kind, move.position, move.support)
        except (AlgebraError, InputError) as e:
            raise TraceMismatch(str(e)) from e
        states.append(from_simplices(P, moved))
    return states


def replay_trace(P: Poset, p: Path, q: Path, trace: Sequence[MoveRecord]) -> Path:
    """Re-apply a trace to both sides and return the path where they meet."""
    if p.is_zero or q.is_zero:
        if p == q and not trace:
            return p
        raise TraceMismatch("the empty path admits no moves")
    left = replay_states(P, p, [m for m in trace if m.side == 'p'])[-1]
    right = replay_states(P, q, [m for m in trace if m.side == 'q'])[-1]
    if left != right:
        raise TraceMismatch(f"sides end at {left} and {right}")
    return left


# loop groups

def loop_group(P: Poset, a: str) -> LoopGroupPresentation:
    P.check(a)
    if not is_connected(P):
        raise DisconnectedPoset("loop_group")

    tree = set(spanning_tree(P, a))
    edges = comparability_graph(P).edges
    tree_edges = tuple(e for e in edges if e in tree)
    generator_edges = tuple(e for e in edges if e not in tree)
    generators = tuple(
        compose_all(P, inverse(tree_route(P, a, upper)), step(P, lower, upper), tree_route(P, a, lower))
        for lower, upper in generator_edges
    )

    letter = {e: i for i, e in enumerate(generator_edges)}
    relators = []
    for x, y, z in triangles(P):
        word = [((x, y), 1), ((y, z), 1), ((x, z), -1)]
        relators.append(tuple((letter[e], sign) for e, sign in word if e in letter))

    identity = trivial(P, a)
    reduced = [equal_paths(P, g, identity).is_equal for g in generators]
    if is_upward_directed(P) and not all(reduced):
        logger.warning(f"Loop generators at {a} failed to reduce to i({a}) on a directed poset")

    presentation = LoopGroupPresentation(
        base=a,
        tree_edges=tree_edges,
        generator_edges=generator_edges,
        generators=generators,
        relators=tuple(relators),
        trivial=all(reduced),
    )
    logger.info(f"Loop group at {a}: {presentation.generator_count} generators, {len(relators)} relators")
    return presentation


def transport_iso(P: Poset, p: Path, g: Path) -> Path:
    """p^-1 * g * p, a loop at the start of p."""
    if p.is_zero or not is_loop(g) or g.start != p.end:
        raise NotComposable(f"loop {g} is not based at the end of {p}")
    return compose_all(P, inverse(p), g, p)


def factor_through(P: Poset, p: Path, q: Path, **search) -> Tuple[Path, Path]:
    """(g1, g2) with p = g1 * q = q * g2."""
    if p.is_zero or q.is_zero or endpoints(p) != endpoints(q):
        raise EndpointMismatch(endpoints(p), endpoints(q))
    g1 = compose(P, p, inverse(q))
    g2 = compose(P, inverse(q), p)
    for candidate in (compose(P, g1, q), compose(P, q, g2)):
        verdict = equal_paths(P, candidate, p, **search)
        if not verdict.is_equal:
            raise UnresolvedPair(candidate, p)
    return g1, g2


def mutual_inverse_candidates(P: Poset, p: Path, pool: Sequence[Path], **search) -> List[Path]:
    """Members q of `pool` with p = p*q*p and q = q*p*q."""
    found = []
    for q in pool:
        if paths_equal(P, compose_all(P, p, q, p), p, **search) and paths_equal(
            P, compose_all(P, q, p, q), q, **search
        ):
            found.append(q)
    return found

"""
Integer first homology of the order complex, used to tell loops apart.

Every deformation move leaves the edge cycle of a path unchanged up to a sum of
triangle boundaries, so two paths whose difference has a nonzero class are
certainly different elements of the semigroup.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

import networkx as nx
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from src.algebra.paths import Direction, Path, compose, compose_all, inverse, step, trivial
from src.algebra.poset import Pair, Poset, comparability_graph, is_connected, triangles
from src.errors import DisconnectedPoset, NotALoop

logger = logging.getLogger(__name__)

ClassVector = Tuple[int, ...]


@dataclass(frozen=True)
class HomologyData:
    """
    Chain complex of the 2-skeleton together with the Smith form of the relator matrix.

    Cycles are coordinatized by their coefficients on the non-tree edges of a spanning
    tree. `transform` is the left unimodular factor S of S * R * T = D, so a class is
    read off as S applied to those coordinates: the first entries with a divisor above 1
    are torsion (reduced modulo it), the entries past the SNF rank are free.
    """

    edges: Tuple[Pair, ...]
    edge_index: Dict[Pair, int]
    tree_edges: Tuple[Pair, ...]
    cycle_edges: Tuple[Pair, ...]
    chains: Tuple[Tuple[str, str, str], ...]
    boundary: DomainMatrix
    divisors: Tuple[int, ...]
    transform: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.cycle_edges) - len(self.divisors)

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.divisors if d > 1)

    @property
    def zero(self) -> ClassVector:
        return (0,) * (self.rank + len(self.torsion))

    def vertex_boundary(self) -> DomainMatrix:
        """The boundary map from edges to vertices, (lower, upper) -> upper - lower."""
        vertices = sorted({v for e in self.edges for v in e})
        row = {v: i for i, v in enumerate(vertices)}
        entries: Dict[int, Dict[int, int]] = {}
        for j, (lower, upper) in enumerate(self.edges):
            entries.setdefault(row[upper], {})[j] = ZZ(1)
            entries.setdefault(row[lower], {})[j] = ZZ(-1)
        return DomainMatrix(entries, (len(vertices), len(self.edges)), ZZ)

    def is_chain_complex(self) -> bool:
        if not self.chains or not self.edges:
            return True
        return (self.vertex_boundary() * self.boundary).to_Matrix().is_zero_matrix


def spanning_tree(P: Poset, root: str) -> List[Pair]:
    tree = []
    for u, v in nx.dfs_edges(P.graph, root):
        tree.append((u, v) if P.le(u, v) else (v, u))
    return tree


def _triangle_boundary(chain: Tuple[str, str, str]) -> Dict[Pair, int]:
    a, b, c = chain
    return {(b, c): 1, (a, c): -1, (a, b): 1}


@lru_cache(maxsize=64)
def h1_data(P: Poset) -> HomologyData:
    if not is_connected(P) or len(P) == 0:
        raise DisconnectedPoset("h1_data")

    edges = comparability_graph(P).edges
    edge_index = {e: i for i, e in enumerate(edges)}
    tree = set(spanning_tree(P, P.elements[0]))
    tree_edges = tuple(e for e in edges if e in tree)
    cycle_edges = tuple(e for e in edges if e not in tree)
    chains = tuple(triangles(P))

    columns = [_triangle_boundary(t) for t in chains]
    boundary = DomainMatrix(
        {
            i: {j: ZZ(col[e]) for j, col in enumerate(columns) if e in col}
            for i, e in enumerate(edges)
            if any(e in col for col in columns)
        },
        (len(edges), len(chains)),
        ZZ,
    )

    n = len(cycle_edges)
    if n and chains:
        relators = DomainMatrix(
            [[ZZ(col.get(e, 0)) for col in columns] for e in cycle_edges], (n, len(chains)), ZZ
        )
        diagonal, left, _ = smith_normal_decomp(relators)
        dense = diagonal.to_list()
        divisors = tuple(
            abs(int(dense[i][i])) for i in range(min(n, len(chains))) if dense[i][i] != 0
        )
        transform = tuple(tuple(int(x) for x in row) for row in left.to_list())
    else:
        divisors = ()
        transform = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    data = HomologyData(
        edges=edges,
        edge_index=edge_index,
        tree_edges=tree_edges,
        cycle_edges=cycle_edges,
        chains=chains,
        boundary=boundary,
        divisors=divisors,
        transform=transform,
    )
    logger.debug(f"H1 of {P!r}: rank {data.rank}, torsion {list(data.torsion)}")
    return data


def edge_cycle(p: Path) -> Dict[Pair, int]:
    """Signed edge coefficients: +1 for every ascending step, -1 for every descending one."""
    cycle: Dict[Pair, int] = {}
    for s in p.steps:
        if s.direction is Direction.UP:
            edge, sign = (s.start, s.end), 1
        elif s.direction is Direction.DOWN:
            edge, sign = (s.end, s.start), -1
        else:
            continue
        cycle[edge] = cycle.get(edge, 0) + sign
    return {e: c for e, c in cycle.items() if c}


def h1_class(H: HomologyData, p: Path) -> ClassVector:
    if p.is_zero or p.start != p.end:
        raise NotALoop(p)

    cycle = edge_cycle(p)
    coordinates = [cycle.get(e, 0) for e in H.cycle_edges]
    projected = [sum(a * b for a, b in zip(row, coordinates)) for row in H.transform]

    torsion = []
    for i, d in enumerate(H.divisors):
        if d > 1:
            torsion.append(projected[i] % d)
    free = projected[len(H.divisors):]
    return tuple(free) + tuple(torsion)


@lru_cache(maxsize=256)
def _dfs_tree(P: Poset, root: str) -> nx.DiGraph:
    return nx.dfs_tree(P.graph, root)


def tree_route(P: Poset, root: str, target: str) -> Path:
    """The path from `root` to `target` along the depth-first spanning tree rooted at `root`."""
    P.check(root, target)
    walk = nx.shortest_path(_dfs_tree(P, root), root, target)
    route = trivial(P, root)
    for u, v in zip(walk, walk[1:]):
        route = compose(P, step(P, u, v), route)
    return route


def path_class(P: Poset, p: Path) -> ClassVector:
    """Class of p closed up through the tree at the first element; loops keep their own class."""
    H = h1_data(P)
    root = P.elements[0]
    closed = compose_all(P, inverse(tree_route(P, root, p.end)), p, tree_route(P, root, p.start))
    return h1_class(H, closed)

"""
Finite windows of l^2(S) and the left regular representation on them.

A window lists one normal-form representative per semigroup element it contains.
On an upward directed poset an element is determined by its endpoints. Elsewhere
it is keyed by its endpoints and the homology class of the path closed up through
a spanning tree; paths sharing a key are settled by the word problem.
"""

import json
import logging
from pathlib import Path as FilePath
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from src.algebra.homology import path_class
from src.algebra.paths import Path, compose, from_simplices, inverse, render, simplex, walks
from src.algebra.poset import Poset, common_upper_bound, is_connected, is_upward_directed
from src.algebra.word_problem import equal_paths
from src.errors import DisconnectedPoset, UnresolvedPair, ZeroPath
from src.operators.partial_injection import PartialInjection
from src.operators.scalars import to_parts
from src.operators.window_matrix import WindowMatrix

logger = logging.getLogger(__name__)

DEFAULT_LENGTH = 4

Key = Tuple[Any, ...]


def directed_path(P: Poset, a: str, b: str) -> Path:
    """[a,b]: the path from b to a through their first common upper bound."""
    return from_simplices(P, [simplex(P, a, common_upper_bound(P, (a, b)), b)])


class BasisWindow:
    """An indexed, certified-distinct family of representatives."""

    def __init__(self, poset: Poset, basis: Sequence[Path], directed: bool, length: Optional[int] = None):
        self.poset = poset
        self.basis: Tuple[Path, ...] = tuple(basis)
        self.directed = directed
        self.length = length
        self.logger = logger.getChild(self.__class__.__name__)

        self._by_key: Dict[Key, int] = {}
        self._known: Dict[Path, Optional[int]] = {}
        for i, p in enumerate(self.basis):
            self._by_key[self.key(p)] = i
            self._known[p] = i

        self.by_end: Dict[str, Tuple[int, ...]] = {
            e: tuple(i for i, p in enumerate(self.basis) if p.end == e) for e in poset.elements
        }
        self.by_start: Dict[str, Tuple[int, ...]] = {
            e: tuple(i for i, p in enumerate(self.basis) if p.start == e) for e in poset.elements
        }

    def __len__(self) -> int:
        return len(self.basis)

    def key(self, p: Path) -> Key:
        if p.is_zero:
            raise ZeroPath("key")
        if self.directed:
            return (p.end, p.start)
        return (p.end, p.start, path_class(self.poset, p))

    def lookup(self, p: Path) -> Optional[int]:
        """Index of the class of p, or None when it lies outside the window."""
        if p in self._known:
            return self._known[p]
        i = self._by_key.get(self.key(p))
        if i is not None and not self.directed:
            verdict = equal_paths(self.poset, self.basis[i], p)
            if verdict.is_unknown:
                raise UnresolvedPair(self.basis[i], p)
            if not verdict.is_equal:
                i = None
        self._known[p] = i
        return i

    def index(self, p: Path) -> int:
        i = self.lookup(p)
        if i is None:
            raise KeyError(render(p))
        return i

    def pair_index(self, a: str, b: str) -> int:
        """Index of [a,b] in a directed window."""
        return self._by_key[(a, b)]

    def block_of(self, i: int) -> str:
        """The S^a block containing index i."""
        return self.basis[i].start

    def labels(self) -> List[str]:
        return [render(p) for p in self.basis]


def build_window(P: Poset, length: int = DEFAULT_LENGTH, extra: Iterable[Path] = ()) -> BasisWindow:
    if not is_connected(P):
        raise DisconnectedPoset("build_window")

    if is_upward_directed(P):
        basis = [directed_path(P, a, b) for a in P.elements for b in P.elements]
        window = BasisWindow(P, basis, directed=True)
        logger.info(f"Directed window on {P!r}: {len(window)} paths")
        return window

    window = BasisWindow(P, [], directed=False, length=length)
    return pad_window(window, list(walks(P, length)) + list(extra))


def pad_window(W: BasisWindow, paths: Iterable[Path]) -> BasisWindow:
    """W extended by the classes of `paths` not already present; existing indices are kept."""
    basis = list(W.basis)
    chosen: Dict[Key, Path] = {W.key(p): p for p in basis}
    added = 0
    for p in paths:
        if p.is_zero:
            continue
        k = W.key(p)
        if k not in chosen:
            chosen[k] = p
            basis.append(p)
            added += 1
            continue
        rep = chosen[k]
        if rep == p or W.directed:
            continue
        if not equal_paths(W.poset, rep, p).is_equal:
            raise UnresolvedPair(rep, p)

    if not added:
        return W
    padded = BasisWindow(W.poset, basis, W.directed, W.length)
    logger.debug(f"Padded window by {added} classes to {len(padded)}")
    return padded


def represent(W: BasisWindow, p: Path) -> PartialInjection:
    """T_p: e_q -> e_{p*q} whenever the start of p is the end of q."""
    if p.is_zero:
        raise ZeroPath("represent")
    P = W.poset
    mapping: Dict[int, int] = {}
    escapes = set()
    for i in W.by_end[p.start]:
        target = W.lookup(compose(P, p, W.basis[i]))
        if target is None:
            escapes.add(i)
        else:
            mapping[i] = target

    back = inverse(p)
    co_escapes = {i for i in W.by_end[p.end] if W.lookup(compose(P, back, W.basis[i])) is None}
    if escapes or co_escapes:
        W.logger.debug(f"T_{{{render(p)}}} escapes the window at {sorted(escapes | co_escapes)}")
    return PartialInjection(len(W), mapping, frozenset(escapes), frozenset(co_escapes))


def adjoint(T: PartialInjection) -> PartialInjection:
    return T.adjoint()


# exports

def matrix_to_dict(W: BasisWindow, M: WindowMatrix) -> Dict[str, Any]:
    entries = [[r, c, *to_parts(v)] for (r, c), v in sorted(M.entries().items())]
    return {'basis': W.labels(), 'entries': entries}


def injection_to_dict(T: PartialInjection) -> Dict[str, Any]:
    return T.to_dict()


def export_operator(
    W: BasisWindow, T: Union[PartialInjection, WindowMatrix], path: Union[str, FilePath]
) -> Dict[str, Any]:
    if isinstance(T, PartialInjection):
        payload = {'basis': W.labels(), **injection_to_dict(T)}
    else:
        payload = matrix_to_dict(W, T)
    FilePath(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + '\n', encoding='utf-8')
    logger.info(f"Exported operator on {len(W)} basis paths to {path}")
    return payload

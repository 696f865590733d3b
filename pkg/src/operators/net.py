"""
Block unitaries between the S^a blocks of a window and the net of conjugations.

The morphism labelled by a path p from a to b is right multiplication by p^-1,
q -> q * p^-1, which carries S^a onto S^b; it acts on block matrices by
conjugation, i.e. by relabeling indices.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from src.algebra.paths import Path, Simplex1, compose, inverse, render, simplex, step, to_simplices
from src.errors import NotRelated, WindowEscape, ZeroPath
from src.operators.partial_injection import PartialInjection
from src.operators.window import BasisWindow, pad_window
from src.operators.window_matrix import WindowMatrix

logger = logging.getLogger(__name__)


def _right_multiplication(W: BasisWindow, a: str, b: str, r: Path) -> PartialInjection:
    """q -> q * r on S^a, where r runs from b to a."""
    P = W.poset
    mapping: Dict[int, int] = {}
    escapes = set()
    for i in W.by_start[a]:
        target = W.lookup(compose(P, W.basis[i], r))
        if target is None:
            escapes.add(i)
        else:
            mapping[i] = target
    back = inverse(r)
    co_escapes = {i for i in W.by_start[b] if W.lookup(compose(P, W.basis[i], back)) is None}
    return PartialInjection(len(W), mapping, frozenset(escapes), frozenset(co_escapes))


@dataclass(frozen=True)
class BlockUnitary:
    """U_ab: e_q -> e_{q*(a,b)} from the S^a block onto the S^b block, a <= b."""

    source: str
    target: str
    window: BasisWindow
    injection: PartialInjection

    def adjoint(self) -> PartialInjection:
        return self.injection.adjoint()

    def escape_free(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Escape-free indices of the source block and of the target block."""
        bad = self.injection.tainted
        return (
            tuple(i for i in self.window.by_start[self.source] if i not in bad),
            tuple(i for i in self.window.by_start[self.target] if i not in bad),
        )

    def is_unitary(self) -> bool:
        source, target = self.escape_free()
        forward = self.adjoint().compose(self.injection)
        backward = self.injection.compose(self.adjoint())
        return forward.is_identity_on(source) and backward.is_identity_on(target)


def block_unitary(W: BasisWindow, a: str, b: str) -> BlockUnitary:
    P = W.poset
    P.check(a, b)
    if not P.le(a, b):
        raise NotRelated(a, b)
    return BlockUnitary(a, b, W, _right_multiplication(W, a, b, step(P, b, a)))


@dataclass(frozen=True)
class NetMorphism:
    """Conjugation A_source -> A_target by the block relabeling `injection`."""

    label: str
    source: str
    target: str
    window: BasisWindow
    injection: PartialInjection
    padding: Tuple[Path, ...] = ()

    def apply(self, M: WindowMatrix) -> WindowMatrix:
        """U M U*; every index M touches must have an in-window image, else WindowEscape."""
        entries = M.entries()
        missing = {i for rc in entries for i in rc if self.injection.apply(i) is None}
        if missing:
            raise WindowEscape(missing)
        moved = {
            (self.injection.apply(r), self.injection.apply(c)): v for (r, c), v in entries.items()
        }
        return WindowMatrix.from_entries(len(self.window), moved)

    def compose(self, other: 'NetMorphism') -> 'NetMorphism':
        """self after other."""
        return NetMorphism(
            label=f"{self.label} o {other.label}",
            source=other.source,
            target=self.target,
            window=self.window,
            injection=self.injection.compose(other.injection),
            padding=other.padding + self.padding,
        )

    def inverse(self) -> 'NetMorphism':
        return NetMorphism(
            label=f"({self.label})^-1",
            source=self.target,
            target=self.source,
            window=self.window,
            injection=self.injection.adjoint(),
            padding=self.padding,
        )

    def source_indices(self) -> Tuple[int, ...]:
        return self.window.by_start[self.source]

    def agrees_with(self, other: 'NetMorphism') -> bool:
        """Extensional equality on the matrix units of the escape-free source block."""
        bad = self.injection.tainted | other.injection.tainted
        block = [i for i in self.source_indices() if i not in bad]
        for r in block:
            for c in block:
                unit = WindowMatrix.from_entries(len(self.window), {(r, c): 1})
                try:
                    if self.apply(unit) != other.apply(unit):
                        return False
                except WindowEscape:
                    return False
        return True


def identity_morphism(W: BasisWindow, a: str) -> NetMorphism:
    return NetMorphism(f"id_{a}", a, a, W, PartialInjection.identity(len(W), W.by_start[a]))


def net_morphism(W: BasisWindow, a: str, b: str) -> NetMorphism:
    """gamma_ba for a <= b."""
    U = block_unitary(W, a, b)
    return NetMorphism(f"gamma_{b}{a}", a, b, W, U.injection)


def gamma(W: BasisWindow, a: str, b: str, M: WindowMatrix) -> WindowMatrix:
    """gamma_ba(M) = U_ab M U_ab*."""
    return net_morphism(W, a, b).apply(M)


def routing_paths(W: BasisWindow, source: str, word: Sequence[Simplex1]) -> List[Path]:
    """The S^x and S^a images of the source block along a simplex word applied right to left."""
    P = W.poset
    needed: List[Path] = []
    current = [W.basis[i] for i in W.by_start[source]]
    for s in reversed(word):
        through = [compose(P, q, step(P, s.x, s.b)) for q in current]
        current = [compose(P, q, step(P, s.a, s.x)) for q in through]
        needed += through + current
    return needed


def _padded(W: BasisWindow, source: str, word: Sequence[Simplex1]) -> Tuple[BasisWindow, Tuple[Path, ...]]:
    padded = pad_window(W, routing_paths(W, source, word))
    return padded, padded.basis[len(W):]


def gamma_simplex(W: BasisWindow, s: Simplex1, pad: bool = False) -> NetMorphism:
    """
    gamma for [a^x b], from the S^b block to the S^a block.

    It is gamma_xa^-1 after gamma_xb, routed through the S^x block. With `pad` the window
    is first extended by whatever S^x classes that routing needs; the padding is
    recorded on the result.
    """
    simplex(W.poset, s.a, s.x, s.b)
    padding: Tuple[Path, ...] = ()
    if pad:
        W, padding = _padded(W, s.b, [s])
        if padding:
            logger.debug(f"Padded window by {len(padding)} paths for {s}")
    if s.a == s.b == s.x:
        return identity_morphism(W, s.a)
    up = net_morphism(W, s.b, s.x)
    down = net_morphism(W, s.a, s.x).inverse()
    composite = down.compose(up)
    return NetMorphism(f"gamma_{s}", s.b, s.a, W, composite.injection, padding)


def gamma_path(W: BasisWindow, p: Path, pad: bool = False) -> NetMorphism:
    """gamma_p = gamma_{s_n} o ... o gamma_{s_1} along the simplex word of p."""
    if p.is_zero:
        raise ZeroPath("gamma_path")
    word = to_simplices(W.poset, p)
    padding: Tuple[Path, ...] = ()
    if pad:
        W, padding = _padded(W, p.start, word)
    result = identity_morphism(W, p.start)
    for s in reversed(word):
        result = gamma_simplex(W, s).compose(result)
    return NetMorphism(f"gamma_{{{render(p)}}}", p.start, p.end, W, result.injection, padding)


def path_morphism(W: BasisWindow, p: Path) -> NetMorphism:
    """Right multiplication by p^-1 computed directly, without routing through supports."""
    if p.is_zero:
        raise ZeroPath("path_morphism")
    return NetMorphism(
        f"R_{{{render(p)}}}", p.start, p.end, W, _right_multiplication(W, p.start, p.end, inverse(p))
    )


def matrix_units(W: BasisWindow, indices: Sequence[int]) -> List[WindowMatrix]:
    """E_rc for every r, c in `indices`, row-major."""
    return [WindowMatrix.from_entries(len(W), {(r, c): 1}) for r in indices for c in indices]


def restrict_to_block(W: BasisWindow, M: WindowMatrix, a: str) -> WindowMatrix:
    return M.restrict(W.by_start[a])

"""Checks of the left regular representation on finite windows."""

import random
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple
import logging

from sympy.polys.domains import QQ, QQ_I

from src.algebra.homology import h1_class, h1_data
from src.algebra.paths import Path, compose, compose_all, inverse, is_loop, render
from src.algebra.poset import is_upward_directed
from src.errors import (
    CouplingFound,
    DirectedPoset,
    EndpointMismatch,
    NotALoop,
    NotDirected,
    TrivialLoop,
    WindowEscape,
    ZeroPath,
)
from src.operators.partial_injection import PartialInjection
from src.operators.scalars import gaussian, squared_modulus
from src.operators.window import BasisWindow, pad_window, represent
from src.operators.window_matrix import WindowMatrix

logger = logging.getLogger(__name__)


def _fraction(value) -> str:
    num, den = int(QQ.numer(value)), int(QQ.denom(value))
    return str(num) if den == 1 else f"{num}/{den}"


class RepresentationAnalyzer:
    """Verifies partial-isometry, projector, rank and block laws of T_p on a window."""

    def __init__(self, window: BasisWindow):
        self.window = window
        self.poset = window.poset
        self.logger = logger.getChild(self.__class__.__name__)

    def represent(self, p: Path) -> PartialInjection:
        return represent(self.window, p)

    # laws over many paths

    def partial_isometry_check(self, paths: Optional[Iterable[Path]] = None) -> Dict[str, Any]:
        """T_p T_p* T_p = T_p on every index where T_p does not escape."""
        failures = []
        checked = 0
        for p in self._paths(paths):
            T = self.represent(p)
            checked += 1
            round_trip = T.compose(T.adjoint()).compose(T)
            if not round_trip.agrees_with(T, T.domain):
                failures.append(render(p))
        return {'checked': checked, 'failures': failures, 'passed': not failures}

    def homomorphism_check(self, paths: Optional[Iterable[Path]] = None) -> Dict[str, Any]:
        """T_p T_q = T_{p*q} for all pairs, the empty map when p*q = 0."""
        pool = list(self._paths(paths))
        failures = []
        escaped = 0
        for p in pool:
            Tp = self.represent(p)
            for q in pool:
                Tq = self.represent(q)
                product = compose(self.poset, p, q)
                composite = Tp.compose(Tq)
                if composite.escapes:
                    escaped += 1
                if product.is_zero:
                    ok = not composite.mapping
                else:
                    ok = composite.agrees_with(self.represent(product))
                if not ok:
                    failures.append(f"{render(p)} . {render(q)}")
        return {
            'pairs': len(pool) ** 2,
            'pairs_with_escapes': escaped,
            'failures': failures,
            'passed': not failures,
        }

    def invariance_check(self, paths: Optional[Iterable[Path]] = None) -> Dict[str, Any]:
        """Every T_p maps each S^a block into itself."""
        W = self.window
        failures = []
        for p in self._paths(paths):
            T = self.represent(p)
            if any(W.block_of(i) != W.block_of(j) for i, j in T.mapping.items()):
                failures.append(render(p))
        return {'failures': failures, 'passed': not failures}

    def _paths(self, paths: Optional[Iterable[Path]]) -> Iterable[Path]:
        return self.window.basis if paths is None else paths

    # single-operator checks

    def projector_check(self, p: Path) -> Dict[str, Any]:
        if p.is_zero:
            raise ZeroPath("projector_check")
        W = self.window
        T = self.represent(p)
        range_block = W.by_end[p.end]
        source_block = W.by_end[p.start]
        flagged = (T.escapes & set(source_block)) | (T.co_escapes & set(range_block))
        if flagged:
            self.logger.warning(f"Projector check for {render(p)} leaves the window")
            raise WindowEscape(flagged)

        range_projector = T.compose(T.adjoint())
        source_projector = T.adjoint().compose(T)
        range_ok = range_projector.domain == frozenset(range_block) and range_projector.is_identity_on(range_block)
        source_ok = source_projector.domain == frozenset(source_block) and source_projector.is_identity_on(
            source_block
        )
        return {
            'path': render(p),
            'range_block': list(range_block),
            'source_block': list(source_block),
            'range_projector': range_ok,
            'source_projector': source_ok,
            'holds': range_ok and source_ok,
        }

    def unitary_on_block_check(self, g: Path) -> Dict[str, Any]:
        if not is_loop(g):
            raise NotALoop(g)
        W = self.window
        T = self.represent(g)
        block = W.by_end[g.start]
        interior = [i for i in block if i not in T.tainted]
        if block and not interior:
            raise WindowEscape(block)

        image_in_block = all(T.apply(i) in block for i in interior)
        forward = T.adjoint().compose(T).is_identity_on(interior)
        backward = T.compose(T.adjoint()).is_identity_on([i for i in block if i not in T.co_escapes])
        holds = image_in_block and forward and backward
        if T.tainted:
            self.logger.info(f"{render(g)} escapes at {len(T.tainted)} boundary indices of the block")
        return {
            'loop': render(g),
            'block': list(block),
            'interior': interior,
            'escapes': sorted(T.tainted),
            'holds': holds,
        }

    def restriction_rank(self, p: Path, a: str) -> int:
        if not is_upward_directed(self.poset):
            raise NotDirected("restriction_rank")
        self.poset.check(a)
        return len(self.represent(p).restrict(self.window.by_start[a]))

    def rank_law_check(self, paths: Optional[Iterable[Path]] = None) -> Dict[str, Any]:
        """restriction_rank is 1 for every p and every block S^a."""
        failures = []
        for p in self._paths(paths):
            for a in self.poset.elements:
                rank = self.restriction_rank(p, a)
                if rank != 1:
                    failures.append(f"{render(p)} on S^{a}: rank {rank}")
        return {'failures': failures, 'passed': not failures}

    def block_decomposition_check(self, M: WindowMatrix) -> Dict[str, Any]:
        W = self.window
        for r, c in sorted(M.entries()):
            if W.block_of(r) != W.block_of(c):
                raise CouplingFound(r, c)
        blocks = sorted({W.block_of(i) for i in M.support()}, key=lambda a: self.poset.index[a])
        return {'entries': len(M.entries()), 'blocks': blocks, 'holds': True}

    def sample_combination(self, rng: random.Random, terms: int = 3) -> WindowMatrix:
        """A random Gaussian-rational combination of represented basis paths."""
        chosen = [rng.choice(self.window.basis) for _ in range(terms)]
        coefficients = []
        for _ in chosen:
            den = rng.randint(1, 4)
            coefficients.append(gaussian((rng.randint(-5, 5), den), (rng.randint(-5, 5), den)))
        return WindowMatrix.combination(
            len(self.window), [(alpha, self.represent(q)) for alpha, q in zip(coefficients, chosen)]
        )

    def irreducibility_witness(self, a: str, p1: Path, p2: Path) -> Path:
        """p = p2 * p1^-1, checked to carry e_{p1} to e_{p2}."""
        if p1.is_zero or p2.is_zero:
            raise ZeroPath("irreducibility_witness")
        if p1.start != a or p2.start != a:
            raise EndpointMismatch((p1.start, p2.start), (a, a))
        W = self.window
        i1, i2 = W.index(p1), W.index(p2)
        p = compose(self.poset, p2, inverse(p1))
        if self.represent(p).apply(i1) != i2:
            raise WindowEscape([i1])
        self.logger.debug(f"{render(p)} carries e_{i1} to e_{i2}")
        return p

    def noncompactness_orbit_check(
        self,
        terms: Sequence[Tuple[Any, Path]],
        p: Path,
        g: Path,
        count: int,
    ) -> Dict[str, Any]:
        """
        The orbit x_n = e_{p*g^n} stays at constant distance from 0 under A.

        `terms` are the (alpha, q) of A = sum alpha T_q. The window is padded with
        p*g^n and q*p*g^n for n <= count, A is compressed to the S^a block of the
        loop's base a, and every ||A x_n||^2 is compared with sum |alpha|^2.
        """
        P = self.poset
        if is_upward_directed(P):
            raise DirectedPoset("noncompactness_orbit_check")
        if not is_loop(g):
            raise NotALoop(g)
        H = h1_data(P)
        if h1_class(H, g) == H.zero:
            raise TrivialLoop(g)
        if p.is_zero or p.start != g.end:
            raise EndpointMismatch((p.start,), (g.end,))

        orbit = []
        power = g
        for _ in range(count):
            orbit.append(compose(P, p, power))
            power = compose(P, power, g)
        images = [compose_all(P, q, x) for _, q in terms for x in orbit]
        W = pad_window(self.window, orbit + images)

        block = W.by_start[g.start]
        A = WindowMatrix.combination(len(W), [(alpha, represent(W, q)) for alpha, q in terms]).restrict(block)
        indices = [W.index(x) for x in orbit]
        escaped = sorted(set(indices) & A.escapes)
        if escaped:
            raise WindowEscape(escaped)

        expected = sum((squared_modulus(QQ_I.convert(alpha)) for alpha, _ in terms), QQ.zero)
        norms = [A.column_squared_norm(i) for i in indices]
        distinct = len(set(indices)) == len(indices)
        report = {
            'orbit': [render(x) for x in orbit],
            'indices': indices,
            'window_size': len(W),
            'squared_norms': [_fraction(n) for n in norms],
            'expected': _fraction(expected),
            'distinct': distinct,
            'hypothesis_met': expected != 0,
            'holds': distinct and all(n == expected for n in norms),
        }
        if not report['hypothesis_met']:
            self.logger.info("All coefficients vanish; the orbit argument needs some alpha != 0")
        return report

    def factorization_check(self, p: Path, q: Path) -> Dict[str, Any]:
        """T_p = T_{g1} T_q = T_q T_{g2} with g1 = p*q^-1 and g2 = q^-1*p."""
        if p.is_zero or q.is_zero or (p.end, p.start) != (q.end, q.start):
            raise EndpointMismatch((p.end, p.start), (q.end, q.start))
        P = self.poset
        g1 = compose(P, p, inverse(q))
        g2 = compose(P, inverse(q), p)
        Tp, Tq = self.represent(p), self.represent(q)
        left = self.represent(g1).compose(Tq)
        right = Tq.compose(self.represent(g2))
        return {
            'g1': render(g1),
            'g2': render(g2),
            'left': left.agrees_with(Tp),
            'right': right.agrees_with(Tp),
            'holds': left.agrees_with(Tp) and right.agrees_with(Tp),
        }


"""Verification of the block unitaries and the net of isomorphisms on a window."""

import random
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

from src.algebra.paths import Path, Simplex1, compose, render, simplex, support_component, to_simplices
from src.algebra.poset import upper_bounds
from src.errors import NotAChain, NotComposable, WindowEscape
from src.operators.net import (
    NetMorphism,
    block_unitary,
    gamma_path,
    gamma_simplex,
    matrix_units,
    net_morphism,
    routing_paths,
)
from src.operators.scalars import gaussian
from src.operators.window import BasisWindow, pad_window
from src.operators.window_matrix import WindowMatrix

logger = logging.getLogger(__name__)


class NetAnalyzer:
    """Checks unitarity, the cocycle law and functoriality of the net gamma."""

    def __init__(self, window: BasisWindow):
        self.window = window
        self.poset = window.poset
        self.logger = logger.getChild(self.__class__.__name__)

    def _related_pairs(self) -> List[Tuple[str, str]]:
        P = self.poset
        return [(a, b) for a in P.elements for b in P.elements if P.le(a, b)]

    def _chains(self) -> List[Tuple[str, str, str]]:
        P = self.poset
        return [(a, b, c) for a, b in self._related_pairs() for c in P.elements if P.le(b, c)]

    def unitarity_check(self) -> Dict[str, Any]:
        failures = []
        pairs = self._related_pairs()
        for a, b in pairs:
            if not block_unitary(self.window, a, b).is_unitary():
                failures.append([a, b])
        return {'pairs_checked': len(pairs), 'failures': failures, 'passed': not failures}

    def cocycle_check(
        self,
        a: str,
        b: str,
        c: str,
        samples: Optional[Sequence[WindowMatrix]] = None,
        limit: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        gamma_cb(gamma_ba(M)) == gamma_ca(M) for every sample M on the S^a block.

        Without explicit samples, the first `limit` matrix units over the escape-free
        part of the block are used.
        """
        P = self.poset
        P.check(a, b, c)
        if not (P.le(a, b) and P.le(b, c)):
            raise NotAChain((a, b, c))
        W = self.window
        first, second, direct = net_morphism(W, a, b), net_morphism(W, b, c), net_morphism(W, a, c)
        routed = second.compose(first)
        bad = direct.injection.tainted | routed.injection.escapes
        safe = [i for i in W.by_start[a] if i not in bad and routed.injection.apply(i) is not None]
        if samples is None:
            samples = matrix_units(self.window, safe)[:limit]

        mismatches = []
        for k, M in enumerate(samples):
            try:
                if second.apply(first.apply(M)) != direct.apply(M):
                    mismatches.append(k)
            except WindowEscape as e:
                self.logger.warning(f"Sample {k} leaves the window on {a} <= {b} <= {c}: {e}")
                mismatches.append(k)
        return {
            'chain': [a, b, c],
            'samples': len(samples),
            'excluded_indices': sorted(set(W.by_start[a]) - set(safe)),
            'mismatches': mismatches,
            'holds': not mismatches,
        }

    def morphism_laws_check(self, a: str, b: str, rng: random.Random, count: int = 10) -> Dict[str, Any]:
        """gamma_ba preserves products, adjoints and linear combinations on sampled block matrices."""
        W = self.window
        gamma = net_morphism(W, a, b)
        block = [i for i in W.by_start[a] if i not in gamma.injection.tainted]
        failures = []
        for k in range(count):
            M, N = self._sample_block_matrix(block, rng), self._sample_block_matrix(block, rng)
            alpha = gaussian(rng.randint(-3, 3), rng.randint(-3, 3))
            if gamma.apply(M @ N) != gamma.apply(M) @ gamma.apply(N):
                failures.append(f"product {k}")
            if gamma.apply(M.adjoint()) != gamma.apply(M).adjoint():
                failures.append(f"adjoint {k}")
            if gamma.apply(M.scale(alpha) + N) != gamma.apply(M).scale(alpha) + gamma.apply(N):
                failures.append(f"linearity {k}")
        return {'pair': [a, b], 'samples': count, 'failures': failures, 'holds': not failures}

    def _sample_block_matrix(self, block: Sequence[int], rng: random.Random, density: int = 4) -> WindowMatrix:
        entries = {}
        for _ in range(density if block else 0):
            r, c = rng.choice(block), rng.choice(block)
            entries[(r, c)] = gaussian(rng.randint(-4, 4), rng.randint(-4, 4))
        return WindowMatrix.from_entries(len(self.window), entries)

    def verify_net(self, samples_per_chain: Optional[int] = None) -> Dict[str, Any]:
        """The cocycle law over every chain a <= b <= c, on matrix units of each S^a block."""
        failures = []
        used = 0
        chains = self._chains()
        for a, b, c in chains:
            report = self.cocycle_check(a, b, c, limit=samples_per_chain)
            used = max(used, report['samples'])
            if not report['holds']:
                failures.append({'chain': report['chain'], 'mismatches': report['mismatches']})

        if failures:
            self.logger.warning(f"Cocycle law failed on {len(failures)} of {len(chains)} chains")
        else:
            self.logger.info(f"Cocycle law holds on {len(chains)} chains")
        return {
            'chains_checked': len(chains),
            'samples_per_chain': used if samples_per_chain is None else samples_per_chain,
            'failures': failures,
        }

    def support_agreement_check(self, s: Simplex1) -> Dict[str, Any]:
        """
        Compare gamma for [a^y b] over every common upper bound y.

        Supports joined through comparable bounds give one semigroup element, so their
        morphisms must agree; supports in different components are reported separately.
        """
        P = self.poset
        simplex(P, s.a, s.x, s.b)
        supports = P.ordered(upper_bounds(P, (s.a, s.b)))
        words = [[Simplex1(s.a, y, s.b)] for y in supports]
        W = pad_window(self.window, [q for w in words for q in routing_paths(self.window, s.b, w)])
        morphisms = {y: gamma_simplex(W, Simplex1(s.a, y, s.b)) for y in supports}

        components: List[List[str]] = []
        for y in supports:
            if not any(y in group for group in components):
                components.append(support_component(P, s.a, s.b, y))

        agree = all(
            morphisms[group[0]].agrees_with(morphisms[y]) for group in components for y in group[1:]
        )
        distinguished = all(
            not morphisms[g[0]].agrees_with(morphisms[h[0]])
            for i, g in enumerate(components)
            for h in components[i + 1:]
        )
        return {
            'simplex': str(s),
            'components': components,
            'padding': len(W) - len(self.window),
            'agree_within_components': agree,
            'components_distinguished': distinguished,
            'holds': agree,
        }

    def functoriality_check(self, p: Path, q: Path) -> Dict[str, Any]:
        """gamma_{p*q} agrees with gamma_p after gamma_q on a window padded for all three."""
        P = self.poset
        product = compose(P, p, q)
        if product.is_zero:
            raise NotComposable(f"{render(p)} * {render(q)}")
        W = self.window
        W = pad_window(
            W,
            routing_paths(W, q.start, to_simplices(P, q)) + routing_paths(W, product.start, to_simplices(P, product)),
        )
        W = pad_window(W, routing_paths(W, p.start, to_simplices(P, p)))

        direct: NetMorphism = gamma_path(W, product)
        stepwise = gamma_path(W, p).compose(gamma_path(W, q))
        bad = direct.injection.tainted | stepwise.injection.tainted
        compared = [i for i in W.by_start[product.start] if i not in bad]
        holds = direct.agrees_with(stepwise)
        return {'p': render(p), 'q': render(q), 'compared_indices': len(compared), 'holds': holds}

    def sample_composable_pairs(self, rng: random.Random, count: int) -> List[Tuple[Path, Path]]:
        basis = self.window.basis
        pairs = []
        for _ in range(count * 20):
            if len(pairs) == count:
                break
            p = rng.choice(basis)
            candidates = [q for q in basis if q.end == p.start]
            if candidates:
                pairs.append((p, rng.choice(candidates)))
        return pairs

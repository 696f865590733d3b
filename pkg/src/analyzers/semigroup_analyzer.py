"""Axiom, property and inverse-semigroup checks over enumerated paths."""

from collections import defaultdict
from typing import Any, Callable, Dict, Iterator, List, Optional
import logging

from src.algebra.paths import (
    Path,
    ZERO,
    compose,
    compose_all,
    enumerate_paths,
    inverse,
    render,
    step,
    trivial,
)
from src.algebra.poset import Poset
from src.algebra.word_problem import equal_paths, mutual_inverse_candidates

logger = logging.getLogger(__name__)

DEFAULT_MAX_SIMPLICES = 3
MAX_REPORTED_FAILURES = 20


class SemigroupAnalyzer:
    """Checks the path semigroup laws exhaustively on short paths."""

    def __init__(self, poset: Poset, max_simplices: int = DEFAULT_MAX_SIMPLICES):
        self.poset = poset
        self.max_simplices = max_simplices
        self.logger = logger.getChild(self.__class__.__name__)
        self._paths: Optional[List[Path]] = None

    @property
    def paths(self) -> List[Path]:
        if self._paths is None:
            self._paths = enumerate_paths(self.poset, self.max_simplices)
            self.logger.debug(f"Enumerated {len(self._paths)} paths with <= {self.max_simplices} simplices")
        return self._paths

    def _by_end(self) -> Dict[str, List[Path]]:
        grouped = defaultdict(list)
        for p in self.paths:
            grouped[p.end].append(p)
        return grouped

    def _same(self, p: Path, q: Path) -> bool:
        return p == q or equal_paths(self.poset, p, q).is_equal

    @staticmethod
    def _result(checked: int, failures: List[str]) -> Dict[str, Any]:
        return {
            'checked': checked,
            'failures': failures[:MAX_REPORTED_FAILURES],
            'failure_count': len(failures),
            'passed': not failures,
        }

    def _run(self, cases: Iterator[tuple], law: Callable[..., Optional[str]]) -> Dict[str, Any]:
        checked = 0
        failures = []
        for case in cases:
            checked += 1
            problem = law(*case)
            if problem:
                failures.append(problem)
        return self._result(checked, failures)

    # axioms 1-6

    def _related_pairs(self) -> Iterator[tuple]:
        P = self.poset
        for a in P.elements:
            for b in P.elements:
                if P.le(a, b):
                    yield a, b

    def _chains(self) -> Iterator[tuple]:
        P = self.poset
        for a, b in self._related_pairs():
            for c in P.elements:
                if P.le(b, c):
                    yield a, b, c

    def check_axioms(self) -> Dict[str, Any]:
        P = self.poset

        def transitivity(a, b, c):
            down = compose(P, step(P, b, a), step(P, c, b))
            up = compose(P, step(P, b, c), step(P, a, b))
            if down != step(P, c, a):
                return f"(a,b)*(b,c) != (a,c) for {a} <= {b} <= {c}"
            if up != step(P, a, c):
                return f"overline chain fails for {a} <= {b} <= {c}"
            return None

        def inverse_pair(a, b):
            d, u = step(P, b, a), step(P, a, b)
            if compose(P, d, u) != trivial(P, a) or compose(P, u, d) != trivial(P, b):
                return f"(a,b) and its overline are not mutually inverse for {a} <= {b}"
            return None

        def units(a, b):
            for p in (step(P, b, a), step(P, a, b)):
                if compose(P, trivial(P, p.end), p) != p or compose(P, p, trivial(P, p.start)) != p:
                    return f"i is not a unit for {render(p)}"
            if compose(P, trivial(P, a), trivial(P, a)) != trivial(P, a):
                return f"i({a}) is not idempotent"
            return None

        return {
            'transitivity': self._run(self._chains(), transitivity),
            'inverse_pair': self._run(self._related_pairs(), inverse_pair),
            'units': self._run(self._related_pairs(), units),
        }

    # properties 1-4

    def _composable_triples(self) -> Iterator[tuple]:
        by_end = self._by_end()
        for p in self.paths:
            for q in by_end[p.start]:
                for s in by_end[q.start]:
                    yield p, q, s

    def check_properties(self) -> Dict[str, Any]:
        P = self.poset
        by_end = self._by_end()

        def associativity(p, q, s):
            left = compose(P, compose(P, p, q), s)
            right = compose(P, p, compose(P, q, s))
            if not self._same(left, right):
                return f"({p}*{q})*{s} != {p}*({q}*{s})"
            return None

        def involution(p):
            back = inverse(p)
            if compose_all(P, p, back, p) != p or compose_all(P, back, p, back) != back:
                return f"p*p^-1*p != p for {p}"
            if compose(P, back, p) != trivial(P, p.start) or compose(P, p, back) != trivial(P, p.end):
                return f"p^-1*p is not a unit for {p}"
            if compose(P, trivial(P, p.end), p) != p or compose(P, p, trivial(P, p.start)) != p:
                return f"units do not fix {p}"
            return None

        def anti_homomorphism(p, q):
            if inverse(compose(P, p, q)) != compose(P, inverse(q), inverse(p)):
                return f"(p*q)^-1 != q^-1*p^-1 for {p}, {q}"
            return None

        def zero(p):
            if compose(P, p, ZERO) != ZERO or compose(P, ZERO, p) != ZERO:
                return f"0 does not absorb {p}"
            return None

        pairs = ((p, q) for p in self.paths for q in by_end[p.start])
        return {
            'associativity': self._run(self._composable_triples(), associativity),
            'involution': self._run(((p,) for p in self.paths), involution),
            'anti_homomorphism': self._run(pairs, anti_homomorphism),
            'zero': self._run(((p,) for p in self.paths), zero),
        }

    def check_cancellation(self) -> Dict[str, Any]:
        """p*q = p*s != 0 implies q = s, and dually on the right."""
        P = self.poset
        by_end = self._by_end()
        by_start = defaultdict(list)
        for p in self.paths:
            by_start[p.start].append(p)

        checked = 0
        failures = []
        for p in self.paths:
            left: Dict[Path, Path] = {}
            for q in by_end[p.start]:
                checked += 1
                product = compose(P, p, q)
                if product in left and not self._same(left[product], q):
                    failures.append(f"left cancellation fails: {p}*{left[product]} = {p}*{q}")
                left.setdefault(product, q)
            right: Dict[Path, Path] = {}
            for q in by_start[p.end]:
                checked += 1
                product = compose(P, q, p)
                if product in right and not self._same(right[product], q):
                    failures.append(f"right cancellation fails: {right[product]}*{p} = {q}*{p}")
                right.setdefault(product, q)
        return self._result(checked, failures)

    def check_inverse_uniqueness(self) -> Dict[str, Any]:
        P = self.poset
        by_ends = defaultdict(list)
        for q in self.paths:
            by_ends[(q.end, q.start)].append(q)

        def unique_inverse(p):
            # p = pqp forces q to run from the end of p back to its start
            pool = by_ends[(p.start, p.end)]
            found = mutual_inverse_candidates(P, p, pool)
            if not found:
                return f"no inverse of {p} among {len(pool)} candidates"
            stray = [q for q in found if not self._same(q, inverse(p))]
            if stray:
                return f"{p} has inverse candidates {[str(q) for q in stray]} besides {inverse(p)}"
            return None

        return self._run(((p,) for p in self.paths), unique_inverse)

    def check_idempotents(self) -> Dict[str, Any]:
        P = self.poset
        units = [trivial(P, a) for a in P.elements]

        def commute(e, f):
            if compose(P, e, f) != compose(P, f, e):
                return f"{e} and {f} do not commute"
            return None

        return self._run(((e, f) for e in units for f in units), commute)

    def run_all(self) -> Dict[str, Any]:
        checks = {
            **{f"axiom_{k}": v for k, v in self.check_axioms().items()},
            **{f"property_{k}": v for k, v in self.check_properties().items()},
            'cancellation': self.check_cancellation(),
            'inverse_uniqueness': self.check_inverse_uniqueness(),
            'idempotents_commute': self.check_idempotents(),
        }
        passed = all(c['passed'] for c in checks.values())
        report = {
            'poset': list(self.poset.elements),
            'max_simplices': self.max_simplices,
            'paths': len(self.paths),
            'checks': checks,
            'passed': passed,
        }
        failed = sorted(k for k, c in checks.items() if not c['passed'])
        if failed:
            self.logger.warning(f"Semigroup checks failed: {failed}")
        else:
            self.logger.info(f"All {len(checks)} semigroup checks passed on {len(self.paths)} paths")
        return report

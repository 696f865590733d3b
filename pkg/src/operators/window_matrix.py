"""Sparse exact matrices over the Gaussian rationals, indexed by window positions."""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from src.errors import InputError
from src.operators.partial_injection import PartialInjection
from src.operators.scalars import ONE, conjugate, squared_modulus

logger = logging.getLogger(__name__)

Entries = Dict[Tuple[int, int], object]


def _sparse(size: int, entries: Entries) -> DomainMatrix:
    rows: Dict[int, Dict[int, object]] = {}
    for (r, c), value in entries.items():
        if not (0 <= r < size and 0 <= c < size):
            raise InputError(f"Entry ({r}, {c}) outside a window of size {size}")
        converted = QQ_I.convert(value)
        if converted != QQ_I.zero:
            rows.setdefault(r, {})[c] = converted
    return DomainMatrix(rows, (size, size), QQ_I)


@dataclass(frozen=True)
class WindowMatrix:
    """
    A finite linear combination of window operators.

    `escapes` collects the column indices on which some contributing operator left
    the window; entries in those columns are not certified.
    """

    size: int
    matrix: DomainMatrix
    escapes: FrozenSet[int] = field(default_factory=frozenset)

    @classmethod
    def from_entries(cls, size: int, entries: Entries, escapes: Iterable[int] = ()) -> 'WindowMatrix':
        return cls(size, _sparse(size, entries), frozenset(escapes))

    @classmethod
    def zero(cls, size: int) -> 'WindowMatrix':
        return cls.from_entries(size, {})

    @classmethod
    def identity(cls, size: int, indices: Iterable[int]) -> 'WindowMatrix':
        return cls.from_entries(size, {(i, i): ONE for i in indices})

    @classmethod
    def from_injection(cls, T: PartialInjection) -> 'WindowMatrix':
        return cls.from_entries(T.size, {(j, i): ONE for i, j in T.mapping.items()}, T.escapes)

    @classmethod
    def combination(cls, size: int, terms: Sequence[Tuple[object, PartialInjection]]) -> 'WindowMatrix':
        """sum of alpha * T over (alpha, T); escapes are the union over the terms."""
        entries: Entries = {}
        escapes = set()
        for alpha, T in terms:
            coefficient = QQ_I.convert(alpha)
            for i, j in T.mapping.items():
                entries[(j, i)] = entries.get((j, i), QQ_I.zero) + coefficient
            escapes |= T.escapes
        return cls.from_entries(size, entries, escapes)

    def entries(self) -> Entries:
        return {k: v for k, v in self.matrix.to_dok().items() if v != QQ_I.zero}

    def __add__(self, other: 'WindowMatrix') -> 'WindowMatrix':
        self._check_size(other)
        return WindowMatrix(self.size, self.matrix + other.matrix, self.escapes | other.escapes)

    def __sub__(self, other: 'WindowMatrix') -> 'WindowMatrix':
        self._check_size(other)
        return WindowMatrix(self.size, self.matrix - other.matrix, self.escapes | other.escapes)

    def __matmul__(self, other: 'WindowMatrix') -> 'WindowMatrix':
        self._check_size(other)
        # a column escapes once it reaches an escaping column of the left factor
        reaching = {c for (r, c) in other.entries() if r in self.escapes}
        return WindowMatrix(
            self.size, self.matrix * other.matrix, other.escapes | frozenset(reaching)
        )

    def scale(self, alpha) -> 'WindowMatrix':
        coefficient = QQ_I.convert(alpha)
        return WindowMatrix.from_entries(
            self.size, {k: v * coefficient for k, v in self.entries().items()}, self.escapes
        )

    def adjoint(self) -> 'WindowMatrix':
        # row escapes are not tracked, so the adjoint carries none
        return WindowMatrix.from_entries(
            self.size, {(c, r): conjugate(v) for (r, c), v in self.entries().items()}
        )

    def restrict(self, indices: Iterable[int]) -> 'WindowMatrix':
        """Compression to the coordinate subspace spanned by `indices`."""
        keep = frozenset(indices)
        return WindowMatrix.from_entries(
            self.size,
            {(r, c): v for (r, c), v in self.entries().items() if r in keep and c in keep},
            self.escapes & keep,
        )

    def column(self, c: int) -> Dict[int, object]:
        return {r: v for (r, col), v in self.entries().items() if col == c}

    def column_squared_norm(self, c: int):
        """||M e_c||^2 as an exact rational."""
        return sum((squared_modulus(v) for v in self.column(c).values()), QQ.zero)

    def support(self) -> FrozenSet[int]:
        return frozenset(i for rc in self.entries() for i in rc)

    @property
    def is_zero(self) -> bool:
        return not self.entries()

    def _check_size(self, other: 'WindowMatrix'):
        if self.size != other.size:
            raise InputError(f"Window sizes differ: {self.size} vs {other.size}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WindowMatrix):
            return NotImplemented
        return self.size == other.size and self.entries() == other.entries()

    def __hash__(self) -> int:
        return hash((self.size, frozenset(self.entries().items())))

"""Partial injections on window indices, the combinatorial form of a single T_p."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Mapping, Optional

from src.errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartialInjection:
    """
    An injective partial map on {0, ..., size-1}.

    `escapes` are domain indices whose true image lies outside the window.
    `co_escapes` are codomain indices whose true preimage lies outside the window,
    so they become the escapes of the adjoint.
    """

    size: int
    mapping: Mapping[int, int]
    escapes: FrozenSet[int] = field(default_factory=frozenset)
    co_escapes: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        images = list(self.mapping.values())
        if len(set(images)) != len(images):
            raise InputError("Partial map is not injective")
        for i in list(self.mapping) + images + list(self.escapes) + list(self.co_escapes):
            if not 0 <= i < self.size:
                raise InputError(f"Index {i} outside a window of size {self.size}")

    @classmethod
    def identity(cls, size: int, indices: Iterable[int]) -> 'PartialInjection':
        return cls(size, {i: i for i in indices})

    @classmethod
    def empty(cls, size: int) -> 'PartialInjection':
        return cls(size, {})

    @property
    def domain(self) -> FrozenSet[int]:
        return frozenset(self.mapping)

    @property
    def image(self) -> FrozenSet[int]:
        return frozenset(self.mapping.values())

    @property
    def tainted(self) -> FrozenSet[int]:
        return self.escapes | self.co_escapes

    def apply(self, i: int) -> Optional[int]:
        return self.mapping.get(i)

    def adjoint(self) -> 'PartialInjection':
        return PartialInjection(
            self.size,
            {v: k for k, v in self.mapping.items()},
            escapes=self.co_escapes,
            co_escapes=self.escapes,
        )

    def compose(self, other: 'PartialInjection') -> 'PartialInjection':
        """self after other."""
        if self.size != other.size:
            raise InputError(f"Window sizes differ: {self.size} vs {other.size}")
        mapping = {}
        escapes = set(other.escapes)
        for i, j in other.mapping.items():
            if j in self.mapping:
                mapping[i] = self.mapping[j]
            elif j in self.escapes:
                escapes.add(i)
        co_escapes = set(self.co_escapes)
        co_escapes.update(self.mapping[j] for j in other.co_escapes if j in self.mapping)
        return PartialInjection(self.size, mapping, frozenset(escapes), frozenset(co_escapes))

    def restrict(self, indices: Iterable[int]) -> 'PartialInjection':
        keep = frozenset(indices)
        return PartialInjection(
            self.size,
            {i: j for i, j in self.mapping.items() if i in keep},
            escapes=self.escapes & keep,
        )

    def agrees_with(self, other: 'PartialInjection', indices: Optional[Iterable[int]] = None) -> bool:
        """Equal as partial maps on every index neither side flags as escaping."""
        skip = self.escapes | other.escapes
        candidates = range(self.size) if indices is None else indices
        return all(self.apply(i) == other.apply(i) for i in candidates if i not in skip)

    def is_identity_on(self, indices: Iterable[int]) -> bool:
        return all(self.apply(i) == i for i in indices)

    def to_matrix(self):
        from src.operators.window_matrix import WindowMatrix

        return WindowMatrix.from_injection(self)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'map': [[i, j] for i, j in sorted(self.mapping.items())],
            'escapes': sorted(self.escapes),
        }

    def __len__(self) -> int:
        return len(self.mapping)

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional
import logging

from src.errors import BadBlockIndex, NotInBlock

logger = logging.getLogger(__name__)


class BaseScheme(ABC):
    """Abstract base class for partitions of N into blocks E_i with bijections phi_i: E_i -> N."""

    def __init__(self, arity: Optional[int]):
        self.arity = arity  # None for infinitely many blocks
        self.logger = logger.getChild(self.__class__.__name__)

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def block_of(self, x: int) -> int:
        """Index i >= 1 of the block containing x."""
        pass

    @abstractmethod
    def _phi(self, i: int, x: int) -> int:
        pass

    @abstractmethod
    def phi_inverse(self, i: int, k: int) -> int:
        pass

    @property
    def is_infinite(self) -> bool:
        return self.arity is None

    def check_index(self, i: int) -> None:
        if i < 1 or (self.arity is not None and i > self.arity):
            raise BadBlockIndex(i, '∞' if self.arity is None else self.arity)

    def phi(self, i: int, x: int) -> int:
        self.check_index(i)
        if self.block_of(x) != i:
            raise NotInBlock(x, i)
        return self._phi(i, x)

    def blocks(self, upto: Optional[int] = None) -> List[int]:
        """Block indices 1..arity, or 1..upto for an infinite scheme."""
        if self.arity is None:
            if upto is None:
                raise BadBlockIndex(0, '∞')
            return list(range(1, upto + 1))
        return list(range(1, min(self.arity, upto or self.arity) + 1))

    def members(self, i: int, limit: int) -> List[int]:
        self.check_index(i)
        return [x for x in range(limit) if self.block_of(x) == i]

    def first_escape(self, i: int, limit: int) -> int:
        """Smallest k with phi_i^-1(k) >= limit; phi_i^-1 is increasing."""
        self.check_index(i)
        k = 0
        while self.phi_inverse(i, k) < limit:
            k += 1
        return k

    def validate(self, limit: int, upto: Optional[int] = None) -> bool:
        """Partition totality and the bijection laws on {0, ..., limit-1}."""
        if self.arity is None and upto is None:
            upto = max((self.block_of(x) for x in range(limit)), default=1)
        for x in range(limit):
            i = self.block_of(x)
            if i < 1 or (self.arity is not None and i > self.arity):
                self.logger.error(f"{x} claimed by no block (got {i})")
                return False
            if self.phi_inverse(i, self._phi(i, x)) != x:
                self.logger.error(f"phi_{i}^-1(phi_{i}({x})) != {x}")
                return False
        for i in self.blocks(upto):
            for k in range(limit):
                if self.block_of(self.phi_inverse(i, k)) != i or self._phi(i, self.phi_inverse(i, k)) != k:
                    self.logger.error(f"phi_{i}(phi_{i}^-1({k})) != {k}")
                    return False
        return True

    def describe(self) -> Dict[str, Any]:
        return {'name': self.name, 'arity': 'infinite' if self.arity is None else self.arity}

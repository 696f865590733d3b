"""Dyadic blocks: x + 1 = 2^(i-1) * (2m + 1) puts x in E_i with phi_i(x) = m."""

from src.schemes.base_scheme import BaseScheme


class DyadicScheme(BaseScheme):
    def __init__(self):
        super().__init__(arity=None)

    @property
    def name(self) -> str:
        return "dyadic"

    def block_of(self, x: int) -> int:
        n = x + 1
        return (n & -n).bit_length()

    def _phi(self, i: int, x: int) -> int:
        return ((x + 1) >> (i - 1)) // 2

    def phi_inverse(self, i: int, k: int) -> int:
        self.check_index(i)
        return (1 << (i - 1)) * (2 * k + 1) - 1


def dyadic_infinite_scheme() -> DyadicScheme:
    return DyadicScheme()

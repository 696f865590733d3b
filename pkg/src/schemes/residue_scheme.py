"""Residue classes: E_i = {x : x = i-1 mod n}."""

from src.errors import InputError
from src.schemes.base_scheme import BaseScheme


class ResidueScheme(BaseScheme):
    def __init__(self, n: int):
        if n < 1:
            raise InputError(f"Residue scheme needs n >= 1, got {n}")
        super().__init__(arity=n)

    @property
    def name(self) -> str:
        return f"residue-{self.arity}"

    def block_of(self, x: int) -> int:
        return x % self.arity + 1

    def _phi(self, i: int, x: int) -> int:
        return (x - i + 1) // self.arity

    def phi_inverse(self, i: int, k: int) -> int:
        self.check_index(i)
        return self.arity * k + i - 1


def residue_scheme(n: int) -> ResidueScheme:
    return ResidueScheme(n)

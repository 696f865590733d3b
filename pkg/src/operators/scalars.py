"""Exact complex scalars: Gaussian rationals from sympy's QQ_I."""

from typing import Tuple, Union

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational

Rational = Union[int, Tuple[int, int]]

ZERO = QQ_I.zero
ONE = QQ_I.one


def rational(value: Rational):
    if isinstance(value, tuple):
        return QQ(*value)
    if isinstance(value, QQ.dtype):
        return value
    return QQ(value)


def gaussian(re: Rational = 0, im: Rational = 0) -> GaussianRational:
    """re + i*im with rational parts given as ints or (numerator, denominator)."""
    return GaussianRational(rational(re), rational(im))


def conjugate(z: GaussianRational) -> GaussianRational:
    return QQ_I(z.x, -z.y)


def squared_modulus(z: GaussianRational):
    """|z|^2 as an exact rational."""
    return z.x**2 + z.y**2


def to_parts(z: GaussianRational) -> Tuple[int, int, int, int]:
    """(re_num, re_den, im_num, im_den) in lowest terms."""
    return (
        int(QQ.numer(z.x)),
        int(QQ.denom(z.x)),
        int(QQ.numer(z.y)),
        int(QQ.denom(z.y)),
    )


def from_parts(re_num: int, re_den: int, im_num: int, im_den: int) -> GaussianRational:
    return gaussian((re_num, re_den), (im_num, im_den))

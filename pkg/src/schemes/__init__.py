from .base_scheme import BaseScheme
from .dyadic_scheme import DyadicScheme, dyadic_infinite_scheme
from .residue_scheme import ResidueScheme, residue_scheme

__all__ = ['BaseScheme', 'ResidueScheme', 'DyadicScheme', 'residue_scheme', 'dyadic_infinite_scheme']

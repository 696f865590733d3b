"""The extension generators T_phi_i on a directed window of N."""

import logging

from src.errors import NotDirected
from src.operators.partial_injection import PartialInjection
from src.operators.window import BasisWindow, directed_path, represent
from src.schemes.base_scheme import BaseScheme

logger = logging.getLogger(__name__)


def position(W: BasisWindow, i: int) -> int:
    """The natural number carried by the end element of basis path i."""
    return W.poset.index[W.basis[i].end]


def t_phi(W: BasisWindow, scheme: BaseScheme, i: int) -> PartialInjection:
    """e_[a,b] -> e_[phi_i^-1(a), b], flagged as an escape once phi_i^-1(a) leaves the window."""
    scheme.check_index(i)
    if not W.directed:
        raise NotDirected("t_phi")
    elements = W.poset.elements
    N = len(elements)
    mapping = {}
    escapes = set()
    for k, a in enumerate(elements):
        x = scheme.phi_inverse(i, k)
        for b in elements:
            j = W.pair_index(a, b)
            if x >= N:
                escapes.add(j)
            else:
                mapping[j] = W.pair_index(elements[x], b)
    logger.debug(f"T_phi_{i} on N={N}: {len(escapes)} escaping indices")
    return PartialInjection(len(W), mapping, frozenset(escapes))


def represent_pair(W: BasisWindow, a: str, b: str):
    """T_[a,b] on a directed window."""
    return represent(W, directed_path(W.poset, a, b))

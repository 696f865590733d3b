import json

import pytest

from src.algebra.catalog import two_points
from src.algebra.notation import parse_path
from src.algebra.paths import ZERO, inverse, trivial
from src.errors import DisconnectedPoset, InputError, ZeroPath
from src.operators.partial_injection import PartialInjection
from src.operators.scalars import ONE, conjugate, from_parts, gaussian, squared_modulus, to_parts
from src.operators.window import build_window, directed_path, export_operator, pad_window, represent
from src.operators.window_matrix import WindowMatrix

G = "[a1^b1 a2] * [a2^b2 a1]"


def test_directed_window_lists_all_pairs(diamond_poset):
    W = build_window(diamond_poset)

    assert len(W) == 9
    assert W.directed
    assert W.pair_index('b', 'c') == 5
    assert W.basis[6] == directed_path(diamond_poset, 'c', 'a')
    assert W.by_start['a'] == (0, 3, 6)


def test_circle_window_keeps_both_routes(circle):
    W = build_window(circle, 2)

    assert len(W) == 20
    assert not W.directed
    assert W.lookup(parse_path("[a2^b1 a1]", circle)) != W.lookup(parse_path("[a2^b2 a1]", circle))
    assert W.lookup(parse_path(G, circle)) is None


def test_window_needs_connected_poset():
    with pytest.raises(DisconnectedPoset):
        build_window(two_points())


def test_pad_window_keeps_indices(circle):
    W = build_window(circle, 2)
    g = parse_path(G, circle)

    padded = pad_window(W, [g, g])

    assert len(padded) == len(W) + 1
    assert padded.basis[:len(W)] == W.basis
    assert padded.index(g) == len(W)
    assert pad_window(W, [W.basis[0]]) is W


def test_represent_on_diamond(diamond_poset):
    W = build_window(diamond_poset)

    T = represent(W, directed_path(diamond_poset, 'b', 'c'))

    assert dict(T.mapping) == {6: 3, 7: 4, 8: 5}
    assert not T.escapes


def test_adjoint_is_inverse_path(diamond_poset):
    W = build_window(diamond_poset)
    for p in W.basis:
        assert dict(represent(W, p).adjoint().mapping) == dict(represent(W, inverse(p)).mapping)


def test_unit_acts_as_block_identity(diamond_poset):
    W = build_window(diamond_poset)

    T = represent(W, trivial(diamond_poset, 'a'))

    assert T.is_identity_on(W.by_end['a'])
    assert T.domain == frozenset(W.by_end['a'])


def test_escapes_are_flagged(circle):
    W = build_window(circle, 2)

    T = represent(W, parse_path(G, circle))

    assert 0 in T.escapes
    assert T.escapes.isdisjoint(T.domain)


def test_represent_zero_is_rejected(diamond_poset):
    with pytest.raises(ZeroPath):
        represent(build_window(diamond_poset), ZERO)


def test_partial_injection_laws():
    T = PartialInjection(4, {0: 1, 2: 3}, escapes=frozenset({1}))

    assert T.adjoint().adjoint() == T
    assert T.compose(T.adjoint()).is_identity_on([1, 3])
    assert T.restrict([0]).mapping == {0: 1}
    with pytest.raises(InputError):
        PartialInjection(4, {0: 1, 2: 1})
    with pytest.raises(InputError):
        PartialInjection(2, {0: 5})


def test_window_matrix_arithmetic():
    T = PartialInjection(3, {0: 1})
    M = WindowMatrix.combination(3, [(gaussian(1, 1), T), (2, PartialInjection.identity(3, [2]))])

    assert M.column(0) == {1: gaussian(1, 1)}
    assert M.column_squared_norm(0) == squared_modulus(gaussian(1, 1))
    assert (M.adjoint() @ M).column(0) == {0: gaussian(2)}
    assert (M - M).is_zero
    assert WindowMatrix.identity(3, [0, 1, 2]) @ M == M
    assert M.restrict([0, 1]).support() == frozenset({0, 1})


def test_conjugate_and_modulus():
    z = gaussian(1, 2)

    assert conjugate(z) == gaussian(1, -2)
    assert squared_modulus(z) == 5
    assert squared_modulus(gaussian((1, 2), (-1, 2))) == gaussian((1, 2)).x

    M = WindowMatrix.combination(2, [(z, PartialInjection(2, {0: 1}))])

    assert M.adjoint().column(1) == {0: gaussian(1, -2)}
    assert M.column_squared_norm(0) == 5


def test_scalar_parts():
    z = gaussian((1, 2), (-3, 4))

    assert to_parts(z) == (1, 2, -3, 4)
    assert from_parts(*to_parts(z)) == z
    assert gaussian(1) == ONE


def test_export_operator(tmp_path, diamond_poset):
    W = build_window(diamond_poset)
    T = represent(W, directed_path(diamond_poset, 'b', 'c'))

    payload = export_operator(W, T, tmp_path / "op.json")
    matrix = export_operator(W, T.to_matrix(), tmp_path / "matrix.json")

    assert json.loads((tmp_path / "op.json").read_text()) == payload
    assert payload['map'] == [[6, 3], [7, 4], [8, 5]]
    assert len(payload['basis']) == 9
    assert [3, 6, 1, 1, 0, 1] in matrix['entries']

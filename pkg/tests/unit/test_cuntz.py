import pytest

from src.algebra.catalog import NatPoset
from src.analyzers.cuntz_analyzer import CuntzAnalyzer
from src.errors import BadBlockIndex, NotDirected
from src.operators.extensions import position, represent_pair, t_phi
from src.operators.window import build_window
from src.schemes import dyadic_infinite_scheme, residue_scheme


@pytest.fixture(scope="module")
def window16():
    return build_window(NatPoset().window(16))


@pytest.fixture(scope="module")
def window32():
    return build_window(NatPoset().window(32))


def test_t_phi_moves_first_coordinate(window16):
    W = window16

    T1 = t_phi(W, residue_scheme(2), 1)

    assert T1.apply(W.pair_index('3', '5')) == W.pair_index('6', '5')
    assert W.pair_index('8', '0') in T1.escapes
    assert len(T1.escapes) == 128
    assert position(W, W.pair_index('6', '5')) == 6


def test_t_phi_guards(window16, circle):
    with pytest.raises(BadBlockIndex):
        t_phi(window16, residue_scheme(2), 3)
    with pytest.raises(NotDirected):
        t_phi(build_window(circle, 1), residue_scheme(2), 1)


def test_represent_pair(window16):
    W = window16

    T = represent_pair(W, '3', '5')

    assert T.apply(W.pair_index('5', '9')) == W.pair_index('3', '9')
    assert T.apply(W.pair_index('4', '9')) is None


def test_residue_relations(window16):
    report = CuntzAnalyzer(residue_scheme(2)).verify_cuntz(window16)

    assert report.holds
    assert [r.name for r in report.relations] == [
        'isometry[1]',
        'isometry[2]',
        'orthogonality[1,2]',
        'orthogonality[2,1]',
        'completeness',
    ]
    assert all(r.region == 8 for r in report.relations)
    assert report.certified_region == 8
    assert report.escapes == {1: 128, 2: 128}
    assert report.to_dict()['relations'][0]['certified_region'] == {'a_lt': 8}


def test_dyadic_relations(window32):
    W = window32

    report = CuntzAnalyzer(dyadic_infinite_scheme()).verify_cuntz(W, upto=3)

    assert report.holds
    assert report.relations[-1].name == 'subidentity[3]'
    assert report.certified_region == 4
    assert len(report.defect_support) == 128
    assert {position(W, j) for j in report.defect_support} == {7, 15, 23, 31}


def test_ideal_products(window16):
    analyzer = CuntzAnalyzer(residue_scheme(2))

    assert analyzer.ideal_product(window16, 1, '3', '5', 'left') is True
    assert analyzer.ideal_product(window16, 2, '3', '5', 'right') is True
    assert analyzer.ideal_product(window16, 2, '3', '5', 'right_adjoint') is True
    assert analyzer.ideal_product(window16, 1, '3', '5', 'left_adjoint') is True
    assert analyzer.ideal_product(window16, 1, '10', '5', 'left') is None
    with pytest.raises(ValueError):
        analyzer.ideal_product(window16, 1, '3', '5', 'sideways')


def test_right_product_lands_on_phi_of_b(window16):
    analyzer = CuntzAnalyzer(residue_scheme(2))
    product = represent_pair(window16, '3', '5').compose(t_phi(window16, residue_scheme(2), 2))

    assert product.agrees_with(represent_pair(window16, '3', '2'))
    assert not product.agrees_with(represent_pair(window16, '3', '11'))
    assert analyzer.ideal_product(window16, 1, '3', '5', 'right') is True
    assert analyzer.ideal_product(window16, 1, '3', '5', 'right_adjoint') is True


def test_ideal_products_check(window16):
    result = CuntzAnalyzer(residue_scheme(2)).ideal_products_check(window16, count=20)

    assert result['holds']
    assert result['samples'] == 20
    assert result['checked'] + result['outside_window'] == 20 * 2 * 4


def test_quotient_evidence(window16):
    evidence = CuntzAnalyzer(residue_scheme(2)).quotient_generator_evidence(window16, count=10)

    assert evidence['relations_certified']
    assert evidence['ideal_certified']
    assert evidence['quotient_isomorphism'] == 'NOT CHECKED'
    assert evidence['scheme'] == {'name': 'residue-2', 'arity': 2}


def test_non_directed_window_is_rejected(circle):
    with pytest.raises(NotDirected):
        CuntzAnalyzer(residue_scheme(2)).verify_cuntz(build_window(circle, 1))

import random

import pytest

from src.algebra.notation import parse_path
from src.algebra.paths import Simplex1
from src.analyzers.net_analyzer import NetAnalyzer
from src.errors import NotAChain, NotComposable
from src.operators.window import build_window


def test_unitarity(chain3, diamond_poset):
    result = NetAnalyzer(build_window(chain3)).unitarity_check()

    assert result['pairs_checked'] == 6
    assert result['passed']
    assert NetAnalyzer(build_window(diamond_poset)).unitarity_check()['passed']


def test_cocycle_on_chain(chain3):
    analyzer = NetAnalyzer(build_window(chain3))

    report = analyzer.cocycle_check('0', '1', '2')

    assert report['samples'] == 9
    assert report['excluded_indices'] == []
    assert report['holds']
    assert analyzer.cocycle_check('0', '0', '0')['holds']


def test_cocycle_needs_chain(diamond_poset):
    with pytest.raises(NotAChain):
        NetAnalyzer(build_window(diamond_poset)).cocycle_check('a', 'b', 'c')


def test_verify_net(chain3, circle):
    report = NetAnalyzer(build_window(chain3)).verify_net()

    assert report['chains_checked'] == 10
    assert report['failures'] == []

    circle_report = NetAnalyzer(build_window(circle, 2)).verify_net(samples_per_chain=4)

    assert circle_report['chains_checked'] == 12
    assert circle_report['samples_per_chain'] == 4
    assert circle_report['failures'] == []


def test_morphism_laws(chain3):
    report = NetAnalyzer(build_window(chain3)).morphism_laws_check('0', '1', random.Random(3), count=5)

    assert report['holds'], report['failures']


def test_support_agreement(diamond_poset, circle):
    directed = NetAnalyzer(build_window(diamond_poset)).support_agreement_check(Simplex1('a', 'c', 'b'))

    assert directed['components'] == [['c']]
    assert directed['holds']

    split = NetAnalyzer(build_window(circle, 2)).support_agreement_check(Simplex1('a1', 'b1', 'a2'))

    assert split['components'] == [['b1'], ['b2']]
    assert split['agree_within_components']


def test_support_agreement_on_chain(chain3):
    report = NetAnalyzer(build_window(chain3)).support_agreement_check(Simplex1('0', '1', '0'))

    assert report['components'] == [['0', '1', '2']]
    assert report['holds']


def test_functoriality(diamond_poset, chain3):
    for P in (diamond_poset, chain3):
        analyzer = NetAnalyzer(build_window(P))
        for p, q in analyzer.sample_composable_pairs(random.Random(11), 25):
            report = analyzer.functoriality_check(p, q)
            assert report['holds'], report


def test_functoriality_on_circle(circle):
    analyzer = NetAnalyzer(build_window(circle, 1))
    p = parse_path("[a1^b1 a2]", circle)
    q = parse_path("[a2^b2 a1]", circle)

    report = analyzer.functoriality_check(p, q)

    assert report['holds']


def test_functoriality_needs_composable(diamond_poset):
    analyzer = NetAnalyzer(build_window(diamond_poset))
    p = parse_path("u(c,a)", diamond_poset)

    with pytest.raises(NotComposable):
        analyzer.functoriality_check(p, p)

import pytest

from src.algebra.catalog import chain, circle_c4, diamond
from src.analyzers.semigroup_analyzer import SemigroupAnalyzer


@pytest.mark.parametrize("make_poset", [diamond, chain, circle_c4])
def test_run_all_passes(make_poset):
    report = SemigroupAnalyzer(make_poset(), max_simplices=3).run_all()

    assert report['passed'], {k: c['failures'] for k, c in report['checks'].items() if not c['passed']}
    assert report['paths'] > 0
    assert set(report['checks']) == {
        'axiom_transitivity',
        'axiom_inverse_pair',
        'axiom_units',
        'property_associativity',
        'property_involution',
        'property_anti_homomorphism',
        'property_zero',
        'cancellation',
        'inverse_uniqueness',
        'idempotents_commute',
    }


def test_axiom_case_counts(chain3):
    axioms = SemigroupAnalyzer(chain3, max_simplices=1).check_axioms()

    assert axioms['transitivity']['checked'] == 10
    assert axioms['inverse_pair']['checked'] == 6


def test_paths_are_cached(diamond_poset):
    analyzer = SemigroupAnalyzer(diamond_poset, max_simplices=2)

    assert analyzer.paths is analyzer.paths


def test_failures_are_reported(diamond_poset):
    analyzer = SemigroupAnalyzer(diamond_poset, max_simplices=1)

    result = analyzer._run(iter([(1,), (2,)]), lambda x: "bad" if x == 2 else None)

    assert result == {'checked': 2, 'failures': ['bad'], 'failure_count': 1, 'passed': False}

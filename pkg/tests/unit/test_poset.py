import json

import pytest

from src.algebra.catalog import named_poset, two_points
from src.algebra.poset import (
    build_poset,
    common_upper_bound,
    comparability_graph,
    component_poset,
    is_connected,
    is_upward_directed,
    load_poset,
    lower_bounds,
    poset_from_dict,
    poset_to_dict,
    save_poset,
    triangles,
    upper_bounds,
)
from src.errors import AntisymmetryViolation, InputError, UnknownElement


def test_build_poset_closes_transitively(chain3):
    assert chain3.le('0', '2')
    assert chain3.le('1', '1')
    assert not chain3.le('2', '0')


def test_build_poset_rejects_cycles():
    with pytest.raises(AntisymmetryViolation):
        build_poset(['a', 'b'], [('a', 'b'), ('b', 'a')])


def test_build_poset_rejects_unknown_and_duplicates():
    with pytest.raises(UnknownElement):
        build_poset(['a'], [('a', 'z')])
    with pytest.raises(InputError):
        build_poset(['a', 'a'], [])


def test_bounds(diamond_poset, circle):
    assert upper_bounds(diamond_poset, ('a', 'b')) == {'c'}
    assert lower_bounds(diamond_poset, ('a', 'b')) == frozenset()
    assert upper_bounds(circle, ('a1', 'a2')) == {'b1', 'b2'}
    assert lower_bounds(circle, ('b1', 'b2')) == {'a1', 'a2'}
    assert common_upper_bound(diamond_poset, ('a', 'b')) == 'c'
    assert common_upper_bound(circle, ('b1', 'b2')) is None


def test_directedness_and_connectivity(diamond_poset, chain3, circle):
    assert is_upward_directed(diamond_poset)
    assert is_upward_directed(chain3)
    assert not is_upward_directed(circle)
    assert is_connected(circle)
    assert not is_connected(two_points())


def test_comparability_graph_and_triangles(chain3, circle):
    assert comparability_graph(circle).edges == (('a1', 'b1'), ('a1', 'b2'), ('a2', 'b1'), ('a2', 'b2'))
    assert triangles(chain3) == [('0', '1', '2')]
    assert triangles(circle) == []


def test_component_poset():
    P = build_poset(['a', 'b', 'c'], [('a', 'b')])

    component = component_poset(P, 'c')

    assert component.elements == ('c',)
    assert component_poset(P, 'a').elements == ('a', 'b')


def test_save_and_load_poset(tmp_path, circle):
    path = tmp_path / "circle.json"
    save_poset(circle, path)

    assert load_poset(path) == circle
    assert poset_from_dict(poset_to_dict(circle)) == circle


def test_load_poset_errors(tmp_path):
    with pytest.raises(InputError):
        load_poset(tmp_path / "missing.json")

    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        load_poset(broken)

    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps([1, 2]), encoding="utf-8")
    with pytest.raises(InputError):
        load_poset(wrong)


def test_named_poset_lookup():
    assert named_poset('diamond').elements == ('a', 'b', 'c')
    with pytest.raises(InputError):
        named_poset('pentagon')

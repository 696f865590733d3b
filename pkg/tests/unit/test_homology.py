import pytest

from src.algebra.catalog import two_points
from src.algebra.homology import edge_cycle, h1_class, h1_data, path_class, spanning_tree, tree_route
from src.algebra.notation import parse_path
from src.algebra.paths import compose, inverse, trivial
from src.errors import DisconnectedPoset, NotALoop

G = "[a1^b1 a2] * [a2^b2 a1]"


def _betti_from_ranks(H, vertex_count):
    boundary_rank = H.boundary.to_Matrix().rank() if H.chains else 0
    return len(H.edges) - (vertex_count - 1) - boundary_rank


def test_circle_has_one_free_generator(circle):
    H = h1_data(circle)

    assert H.rank == 1
    assert H.torsion == ()
    assert H.cycle_edges == (('a1', 'b2'),)
    assert H.is_chain_complex()
    assert _betti_from_ranks(H, 4) == 1


def test_contractible_posets(diamond_poset, chain3):
    for P in (diamond_poset, chain3):
        H = h1_data(P)
        assert H.rank == 0
        assert H.torsion == ()
        assert H.is_chain_complex()
        assert _betti_from_ranks(H, len(P)) == 0


def test_spanning_tree_orientation(circle):
    assert spanning_tree(circle, 'a1') == [('a1', 'b1'), ('a2', 'b1'), ('a2', 'b2')]


def test_loop_class(circle):
    H = h1_data(circle)
    g = parse_path(G, circle)

    assert edge_cycle(g) == {('a1', 'b2'): 1, ('a2', 'b2'): -1, ('a2', 'b1'): 1, ('a1', 'b1'): -1}
    assert h1_class(H, g) == (1,)
    assert h1_class(H, inverse(g)) == (-1,)
    assert h1_class(H, compose(circle, g, g)) == (2,)
    assert h1_class(H, trivial(circle, 'a1')) == (0,)


def test_h1_class_needs_loop(circle):
    with pytest.raises(NotALoop):
        h1_class(h1_data(circle), parse_path("u(b1,a1)", circle))


def test_path_class_separates_routes(circle):
    via_b1 = parse_path("[a2^b1 a1]", circle)
    via_b2 = parse_path("[a2^b2 a1]", circle)

    assert path_class(circle, via_b1) == (0,)
    assert path_class(circle, via_b2) == (1,)


def test_tree_route(circle):
    route = tree_route(circle, 'a1', 'b2')

    assert route.vertices == ('a1', 'b1', 'a2', 'b2')


def test_disconnected_poset_has_no_h1():
    with pytest.raises(DisconnectedPoset):
        h1_data(two_points())

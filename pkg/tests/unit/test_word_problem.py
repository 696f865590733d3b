import random
from collections import defaultdict

import pytest

from src.algebra.catalog import enumerate_posets
from src.algebra.homology import h1_data, path_class
from src.algebra.notation import parse_path
from src.algebra.paths import (
    ZERO,
    Simplex1,
    compose,
    compose_all,
    enumerate_paths,
    inverse,
    render,
    step,
    trivial,
)
from src.algebra.poset import build_poset, is_connected, is_upward_directed
from src.algebra.word_problem import (
    DeformationSearch,
    MoveRecord,
    Verdict,
    apply_move,
    candidate_moves,
    equal_paths,
    factor_through,
    loop_group,
    mutual_inverse_candidates,
    replay_states,
    replay_trace,
    transport_iso,
)
from src.errors import EndpointMismatch, InputError, NotComposable, TraceMismatch

G = "[a1^b1 a2] * [a2^b2 a1]"


def _by_endpoints(paths):
    groups = defaultdict(list)
    for p in paths:
        if not p.is_zero:
            groups[(p.end, p.start)].append(p)
    return groups


def test_circle_loop_is_not_the_unit(circle):
    g = parse_path(G, circle)

    verdict = equal_paths(circle, g, trivial(circle, 'a1'))

    assert verdict.verdict is Verdict.DISTINCT
    assert verdict.certificate.describe() == "homology 1 ≠ 0"


def test_loop_times_inverse_is_unit(circle):
    g = parse_path(G, circle)

    assert equal_paths(circle, compose(circle, g, inverse(g)), trivial(circle, 'a1')).is_equal


def test_endpoint_certificate(diamond_poset):
    P = diamond_poset

    verdict = equal_paths(P, step(P, 'a', 'c'), step(P, 'b', 'c'))

    assert verdict.is_distinct
    assert verdict.certificate.describe() == "endpoints (c,a) ≠ (c,b)"


def test_zero_paths(diamond_poset):
    assert equal_paths(diamond_poset, ZERO, ZERO).is_equal
    assert equal_paths(diamond_poset, ZERO, trivial(diamond_poset, 'a')).is_distinct


def test_distinct_routes_between_same_points(circle):
    via_b1 = parse_path("[a2^b1 a1]", circle)
    via_b2 = parse_path("[a2^b2 a1]", circle)

    verdict = equal_paths(circle, via_b1, via_b2)

    assert verdict.is_distinct
    assert verdict.certificate.kind == 'homology'


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_directed_posets_identify_parallel_paths(n):
    for P in enumerate_posets(n):
        if not is_upward_directed(P):
            continue
        for group in _by_endpoints(enumerate_paths(P, 3)).values():
            for p in group:
                for q in group:
                    verdict = equal_paths(P, p, q)
                    assert verdict.is_equal, (render(p), render(q), verdict.verdict)


def test_search_traces_preserve_homology_class():
    rng = random.Random(5)
    nontrivial = 0
    for n in (4, 5):
        for P in enumerate_posets(n):
            if not is_connected(P):
                continue
            pairs = [
                (p, q)
                for group in _by_endpoints(enumerate_paths(P, 2)).values()
                for p in group
                for q in group
                if p != q and path_class(P, p) == path_class(P, q)
            ]
            for p, q in rng.sample(pairs, min(12, len(pairs))):
                verdict = equal_paths(P, p, q, node_budget=5000)
                assert not verdict.is_distinct
                if not verdict.is_equal or not verdict.trace:
                    continue
                nontrivial += 1
                for side, start in (('p', p), ('q', q)):
                    moves = [m for m in verdict.trace if m.side == side]
                    classes = {path_class(P, s) for s in replay_states(P, start, moves)}
                    assert classes == {path_class(P, p)}
                meeting = replay_trace(P, p, q, verdict.trace)
                assert (meeting.end, meeting.start) == (p.end, p.start)
    assert nontrivial > 0


def _loop_words(P, base, rng, count):
    letters = list(loop_group(P, base).generators)
    letters += [inverse(g) for g in letters]
    words = []
    for _ in range(count):
        word = [rng.choice(letters) for _ in range(rng.randint(0, 4))]
        words.append(compose_all(P, *word) if word else trivial(P, base))
    return words


def test_loop_group_laws(circle):
    theta = build_poset(
        ['a1', 'a2', 'b1', 'b2', 'b3'],
        [(a, b) for a in ('a1', 'a2') for b in ('b1', 'b2', 'b3')],
    )
    rng = random.Random(9)
    for P in (circle, theta):
        base = P.elements[0]
        unit = trivial(P, base)
        assert loop_group(P, base).generator_count == h1_data(P).rank
        words = _loop_words(P, base, rng, 12)
        for x in words:
            assert compose(P, x, unit) == x == compose(P, unit, x)
            assert compose(P, x, inverse(x)) == unit
            for y in words[:4]:
                xy = path_class(P, compose(P, x, y))
                assert xy == tuple(s + t for s, t in zip(path_class(P, x), path_class(P, y)))
                for z in words[:3]:
                    assert compose(P, compose(P, x, y), z) == compose(P, x, compose(P, y, z))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_directed_posets_have_trivial_loop_groups(n):
    for P in enumerate_posets(n):
        if is_upward_directed(P):
            assert loop_group(P, P.elements[0]).trivial


def test_loop_group_of_circle(circle):
    presentation = loop_group(circle, 'a1')

    assert presentation.generator_edges == (('a1', 'b2'),)
    assert presentation.relators == ()
    assert not presentation.trivial
    assert presentation.generators[0] == parse_path(G, circle)


def test_loop_group_of_chain(chain3):
    presentation = loop_group(chain3, '0')

    assert presentation.generator_count == 1
    assert presentation.relators == (((0, -1),),)
    assert presentation.trivial


def test_search_finds_equal_when_sides_agree(diamond_poset):
    p = parse_path("[a^c b]", diamond_poset)

    assert DeformationSearch(diamond_poset, depth=1).run(p, p).is_equal


def test_moves_are_enumerated_and_applicable(chain3):
    word = [Simplex1('0', '1', '1'), Simplex1('1', '2', '0')]

    moves = list(candidate_moves(chain3, word))

    assert ('merge', 0, ('2',)) in moves
    assert apply_move(chain3, word, 'merge', 0, ('2',)) == [Simplex1('0', '2', '0')]
    with pytest.raises(InputError):
        apply_move(chain3, word, 'rotate', 0, ())


def test_replay_trace(diamond_poset):
    p = parse_path("[a^c b]", diamond_poset)
    trace = [MoveRecord('p', 'split', 0, (('a', 'c', 'b'),), ('c', 'c', 'c'))]

    assert replay_trace(diamond_poset, p, p, trace) == p


def test_replay_trace_rejects_wrong_operands(diamond_poset):
    p = parse_path("[a^c b]", diamond_poset)
    trace = [MoveRecord('p', 'split', 0, (('b', 'c', 'a'),), ('c', 'c', 'c'))]

    with pytest.raises(TraceMismatch):
        replay_trace(diamond_poset, p, p, trace)


def test_move_record_from_dict():
    record = MoveRecord.from_dict(
        {'side': 'q', 'kind': 'merge', 'position': 0, 'operands': [['a', 'c', 'b'], ['b', 'c', 'a']], 'support': ['c']}
    )

    assert record.operands == (('a', 'c', 'b'), ('b', 'c', 'a'))
    assert MoveRecord.from_dict(record.to_dict()) == record
    with pytest.raises(InputError):
        MoveRecord.from_dict({'side': 'x', 'kind': 'merge', 'position': 0, 'operands': [], 'support': []})
    with pytest.raises(InputError):
        MoveRecord.from_dict({'side': 'p'})


def test_factor_through(circle):
    p1 = parse_path("[a2^b1 a1]", circle)
    p2 = parse_path("[a2^b2 a1]", circle)

    g1, g2 = factor_through(circle, p2, p1)

    assert compose(circle, g1, p1) == p2
    assert compose(circle, p1, g2) == p2
    with pytest.raises(EndpointMismatch):
        factor_through(circle, p1, inverse(p1))


def test_transport_iso(circle):
    g = parse_path(G, circle)
    p = parse_path("[a2^b1 a1]", circle)

    moved = transport_iso(circle, inverse(p), g)

    assert moved.start == moved.end == 'a2'
    with pytest.raises(NotComposable):
        transport_iso(circle, p, g)


def test_mutual_inverse_candidates(diamond_poset):
    P = diamond_poset
    p = parse_path("[a^c b]", P)
    pool = [q for q in enumerate_paths(P, 2) if (q.end, q.start) == (p.start, p.end)]

    assert mutual_inverse_candidates(P, p, pool) == [inverse(p)]

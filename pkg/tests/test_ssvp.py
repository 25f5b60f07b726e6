import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import N1, N2, N3, N4, N5, S, T, random_graph
from kdpaths import (
    Graph, Query, SsvpIterator, gen_grid, make_weighted_jaccard, solve_exact, solve_ssvp_d_plus,
    solve_svp_d, ssvp_next,
)
from kdpaths.graph import is_simple, validate_path
from kdpaths.shortest import dijkstra


def test_running_example_stream(running):
    it = SsvpIterator(running, S, T)
    got = [(p.length, p.nodes) for p in it]
    assert got == [
        (8.0, (S, N3, N5, T)),
        (9.0, (S, N3, N5, N4, T)),
        (11.0, (S, N2, N3, N5, T)),
        (13.0, (S, N1, T)),
    ]
    assert it.emitted_vias == [None, N4, N2, N1]
    assert it.repairs == 1 and it.dropped == 0


def test_svp_d_and_plus_on_running_example(running):
    q = Query(S, T, 3, 0.5)
    d = solve_svp_d(running, q)
    assert d.collective_length == 32.0 and d.proven_optimal
    assert d.stats["lk1"] == 17.0 and d.stats["repairs"] == 1
    assert {p.nodes for p in d.paths} == {(S, N3, N5, T), (S, N2, N3, N5, T), (S, N1, T)}
    plus = solve_ssvp_d_plus(running, q)
    assert plus.stats["trace"] == [(None, True), (N4, False), (N2, True), (N1, True)]
    assert plus.collective_length == 32.0
    assert solve_exact(running, q).collective_length <= d.collective_length


def test_plus_honours_time_limit(running):
    from kdpaths import SolverOptions

    res = solve_ssvp_d_plus(running, Query(S, T, 3, 0.5), SolverOptions(wall_time_limit=0.0))
    assert res.stats["termination"] == "timeout" and not res.proven_optimal
    assert len(res) == 1


def test_k_one_and_loose_theta(running):
    assert [p.length for p in solve_svp_d(running, Query(S, T, 1, 0.5)).paths] == [8.0]
    assert [p.length for p in solve_ssvp_d_plus(running, Query(S, T, 1, 0.5)).paths] == [8.0]
    # above every pairwise similarity in the stream the first k are taken verbatim
    res = solve_ssvp_d_plus(running, Query(S, T, 3, 0.6))
    assert [p.length for p in res.paths] == [8.0, 9.0, 11.0]


def test_star_emits_both_routes_without_repair():
    g = Graph(4, [0, 1, 0, 2], [1, 3, 2, 3], [1.0, 1.0, 2.0, 2.0])
    it = SsvpIterator(g, 0, 3)
    assert [p.nodes for p in it] == [(0, 1, 3), (0, 2, 3)]
    assert it.repairs == 0


def test_chain_has_only_the_shortest_path():
    g = Graph(3, [0, 1], [1, 2], [1.0, 1.0])
    it = SsvpIterator(g, 0, 2)
    assert ssvp_next(it).nodes == (0, 1, 2)
    assert ssvp_next(it) is None


def test_repair_dropped_when_no_simple_route():
    # the only way through node 3 comes back along the shortest path
    g = Graph(4, [0, 1, 1, 3], [1, 2, 3, 1], [1.0, 1.0, 1.0, 1.0])
    it = SsvpIterator(g, 0, 2)
    assert [p.nodes for p in it] == [(0, 1, 2)]
    assert it.dropped == 1


def test_unreachable_and_bad_query(diamond):
    assert SsvpIterator(diamond, 3, 0).next() is None
    with pytest.raises(ValueError):
        SsvpIterator(diamond, 1, 1)
    res = solve_ssvp_d_plus(diamond, Query(3, 0, 2, 0.5))
    assert len(res) == 0


def test_pending_queue_in_pop_order(running):
    it = SsvpIterator(running, S, T)
    it.next()
    pending = it.pending()
    # the raw join through n2 also costs 9 and wins the tie on node id
    assert [(e.via, e.length, e.path) for e in pending] == [(N2, 9.0, None), (N4, 9.0, None), (N1, 13.0, None)]
    it.next()
    assert [(e.via, e.length, e.repaired) for e in it.pending()] == [(N2, 11.0, True), (N1, 13.0, False)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_stream_invariants(seed):
    rng = random.Random(seed)
    g = random_graph(rng, 5, 12, 8, 30)
    s, t = rng.sample(range(g.node_count), 2)
    it = SsvpIterator(g, s, t)
    paths = list(it)
    if not paths:
        return
    sp = dijkstra(g, s).dist[t]
    assert paths[0].length == sp
    lengths = [p.length for p in paths]
    assert lengths == sorted(lengths)
    vias = it.emitted_vias[1:]
    assert len(vias) == len(set(vias))
    for p, v in zip(paths[1:], vias):
        assert is_simple(p) and v in p.nodes and v not in paths[0].nodes
        validate_path(g, p)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dominance_on_grid(seed):
    g = gen_grid(6, 6, seed=seed % 1000)
    rng = random.Random(seed)
    s, t = rng.sample(range(g.node_count), 2)
    q = Query(s, t, 3, 0.5)
    d, plus = solve_svp_d(g, q), solve_ssvp_d_plus(g, q)
    sim = make_weighted_jaccard(g)
    for res in (d, plus):
        ps = list(res.paths)
        assert all(sim(a, b) < 0.5 for i, a in enumerate(ps) for b in ps[i + 1:])
    assert len(d) >= len(plus)
    if len(d) == len(plus) == 3:
        assert d.collective_length <= plus.collective_length + 1e-9

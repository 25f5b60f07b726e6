import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import N2, N3, N4, N5, S, T, random_graph
from kdpaths import KspIterator, dissimilar_to_set, make_weighted_jaccard, weighted_jaccard
from kdpaths.similarity import JaccardIndex


def exact_jaccard(g, p, q):
    w = {e: Fraction(g.edge(e)[2]) for e in set(p.edges) | set(q.edges)}
    shared = sum(w[e] for e in set(p.edges) & set(q.edges))
    return shared / sum(w.values())


def test_running_example_values(running):
    p1 = running.path_from_nodes([S, N3, N5, T])
    p2 = running.path_from_nodes([S, N3, N5, N4, T])
    p3 = running.path_from_nodes([S, N3, N4, T])
    p4 = running.path_from_nodes([S, N2, N3, N5, T])
    p_alt = running.path_from_nodes([S, N3, N2, N4, T])
    assert exact_jaccard(running, p1, p2) == Fraction(6, 11)
    assert exact_jaccard(running, p1, p3) == Fraction(1, 5)
    assert exact_jaccard(running, p1, p4) == Fraction(5, 14)
    assert exact_jaccard(running, p1, p_alt) == Fraction(3, 16)
    assert weighted_jaccard(running, p1, p2) == 6 / 11
    assert weighted_jaccard(running, p1, p3) == 0.2


def test_identity_symmetry_and_disjoint(running):
    sim = make_weighted_jaccard(running)
    paths = list(KspIterator(running, S, T))
    for p in paths:
        assert sim(p, p) == 1.0
        for q in paths:
            assert sim(p, q) == sim(q, p)
            assert 0.0 <= sim(p, q) <= 1.0
    a = running.path_from_nodes([S, N3, N5, T])
    b = running.path_from_nodes([S, 1, T])
    assert sim(a, b) == 0.0
    empty = running.empty_path(S)
    assert sim(empty, empty) == 0.0


def test_threshold_is_strict(running):
    sim = make_weighted_jaccard(running)
    p1 = running.path_from_nodes([S, N3, N5, T])
    p3 = running.path_from_nodes([S, N3, N4, T])
    assert not dissimilar_to_set(p3, [p1], 0.2, sim)
    assert dissimilar_to_set(p3, [p1], 0.2000001, sim)
    assert dissimilar_to_set(p3, [], 0.1, sim)
    with pytest.raises(ValueError):
        dissimilar_to_set(p3, [p1], 0.0, sim)
    with pytest.raises(ValueError):
        dissimilar_to_set(p3, [p1], 1.5, sim)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_index_agrees_with_pairwise(seed):
    rng = random.Random(seed)
    g = random_graph(rng)
    s, t = rng.sample(range(g.node_count), 2)
    paths = list(KspIterator(g, s, t, budget=25))
    sim = make_weighted_jaccard(g)
    idx = JaccardIndex(g)
    for i, p in enumerate(paths):
        got = idx.add(p)
        want = np.array([sim(p, q) for q in paths[:i]])
        np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)
    assert len(idx) == len(paths)

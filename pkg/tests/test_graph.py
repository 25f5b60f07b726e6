import io

import numpy as np
import pytest

from kdpaths import Graph, GraphDomainError, GraphFormatError, Path, Walk, concat, gen_grid
from kdpaths.graph import (
    dump_dimacs_co,
    dump_dimacs_gr,
    dump_edge_list,
    is_simple,
    load_dimacs_co,
    load_dimacs_gr,
    load_edge_list,
    path_nodes,
    read_graph,
    validate_path,
)

GR = b"""c tiny
p sp 3 3
a 1 2 4
a 2 3 1.5
a 1 3 7
"""


def test_dimacs_is_one_based():
    g = load_dimacs_gr(GR)
    assert g.node_count == 3 and g.edge_count == 3
    assert g.edge(0) == (0, 1, 4.0)
    assert g.edge(1) == (1, 2, 1.5)
    assert list(g.out_edges(0)) == [0, 2]
    assert list(g.in_edges(2)) == [1, 2]


@pytest.mark.parametrize("text, err, line", [
    (b"a 1 2 3\n", GraphFormatError, 1),
    (b"p sp 2 1\na 1 3 1\n", GraphDomainError, 2),
    (b"p sp 2 1\na 1 2 0\n", GraphDomainError, 2),
    (b"p sp 2 1\na 1 2 -1\n", GraphDomainError, 2),
    (b"p sp 2 1\na 1 1 2\n", GraphDomainError, 2),
    (b"p sp 2 1\na 1 2 x\n", GraphFormatError, 2),
    (b"p sp 2 1\nz\n", GraphFormatError, 2),
    (b"p sp 2 2\na 1 2 1\n", GraphFormatError, None),
    (b"c nothing\n", GraphFormatError, None),
])
def test_dimacs_errors(text, err, line):
    with pytest.raises(err) as info:
        load_dimacs_gr(text)
    assert info.value.line == line


def test_zero_weight_reported_as_domain_error_even_before_header():
    with pytest.raises(GraphDomainError):
        load_dimacs_gr(b"a 1 2 0\n")


def test_coordinates_scaled_to_degrees():
    co = b"p aux sp co 2\nv 1 -73990000 40750000\nv 2 1000 2000\n"
    c = load_dimacs_co(co, 2)
    np.testing.assert_allclose(c, [[-73.99, 40.75], [0.001, 0.002]])
    with pytest.raises(GraphDomainError):
        load_dimacs_co(b"v 1 0 0\n", 2)


def test_edge_list_comments_and_size():
    g = load_edge_list("# header\n0 4 2.5  # trailing\n\n4 1 1\n")
    assert g.node_count == 5 and g.edge_count == 2
    assert load_edge_list("").node_count == 0
    with pytest.raises(GraphFormatError) as info:
        load_edge_list("0 1\n")
    assert info.value.line == 1
    with pytest.raises(GraphDomainError):
        load_edge_list("0 1 0\n")


def test_round_trip_both_formats(tmp_path):
    g = gen_grid(3, 4, seed=5)
    buf = io.StringIO()
    dump_dimacs_gr(g, buf)
    h = load_dimacs_gr(buf.getvalue())
    assert h.edge_count == g.edge_count
    assert np.array_equal(h.tail, g.tail) and np.array_equal(h.weight, g.weight)

    buf = io.StringIO()
    dump_edge_list(g, buf)
    h = load_edge_list(buf.getvalue())
    assert np.array_equal(h.head, g.head)

    gr, co = tmp_path / "g.gr", tmp_path / "g.co"
    with open(gr, "w") as fh:
        dump_dimacs_gr(g, fh)
    with open(co, "w") as fh:
        dump_dimacs_co(g, fh)
    h = read_graph(str(gr), "dimacs", str(co))
    np.testing.assert_allclose(h.coords, g.coords)
    with pytest.raises(ValueError):
        read_graph(str(gr), "osm")


def test_constructor_validation():
    with pytest.raises(GraphDomainError):
        Graph(2, [0], [2], [1.0])
    with pytest.raises(GraphDomainError):
        Graph(2, [0], [0], [1.0])
    with pytest.raises(GraphDomainError):
        Graph(2, [0], [1], [float("nan")])
    with pytest.raises(ValueError):
        Graph(2, [0, 1], [1], [1.0])
    g = Graph(2, [0], [1], [1.0])
    with pytest.raises(ValueError):
        g.weight[0] = 3.0


def test_parallel_arcs_are_distinct_edges():
    g = Graph(2, [0, 0], [1, 1], [2.0, 1.0])
    assert list(g.out_edges(0)) == [0, 1]
    assert g.path_from_nodes([0, 1]).edges == (1,)


def test_path_construction(diamond):
    p = diamond.path_from_edges([0, 1])
    assert p == Path((0, 1), (0, 1, 3), 2.0)
    assert path_nodes(p) == (0, 1, 3) and len(p) == 2
    validate_path(diamond, p)
    with pytest.raises(ValueError):
        diamond.path_from_edges([0, 3])
    with pytest.raises(ValueError):
        diamond.path_from_edges([])
    assert diamond.path_from_edges([], source=2) == Path((), (2,), 0.0)


def test_concat_detects_revisits():
    g = Graph(3, [0, 1, 1], [1, 0, 2], [1.0, 1.0, 1.0])
    a = g.path_from_edges([0])
    b = g.path_from_edges([2])
    joined = concat(a, b)
    assert isinstance(joined, Path) and joined.nodes == (0, 1, 2) and joined.length == 2.0
    loop = concat(a, g.path_from_edges([1]))
    assert isinstance(loop, Walk) and not is_simple(loop)
    with pytest.raises(ValueError):
        concat(b, a)


def test_grid_shape_and_determinism():
    g = gen_grid(2, 2, seed=1)
    assert g.node_count == 4 and g.edge_count == 8
    g = gen_grid(20, 20, seed=0)
    assert g.node_count == 400 and g.edge_count == 1520
    assert set(np.unique(g.weight)) <= set(range(1, 11))
    # both arcs of a road share the weight
    assert np.array_equal(g.weight[0::2], g.weight[1::2])
    assert np.array_equal(gen_grid(20, 20, seed=0).weight, g.weight)
    assert not np.array_equal(gen_grid(20, 20, seed=1).weight, g.weight)
    assert tuple(g.coords[21]) == (0.001, 0.001)
    with pytest.raises(ValueError):
        gen_grid(1, 5)

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mobius import core, digraph, poset
from mobius.digraph import Edge, GraphError, ReflexiveDigraph
from conftest import digraphs, posets


def two_vertex(loops_x=2, loops_y=3, arrows=2):
    edges = [Edge(f"lx{i}", "x", "x") for i in range(loops_x)]
    edges += [Edge(f"ly{i}", "y", "y") for i in range(loops_y)]
    edges += [Edge(f"a{i}", "x", "y") for i in range(arrows)]
    return ReflexiveDigraph(["x", "y"], edges)


def test_small_graph_values():
    g = two_vertex()
    mu = digraph.graph_mobius(g)
    assert mu[("x", "x")] == Fraction(1, 2)
    assert mu[("x", "y")] == Fraction(-2, 6)
    assert digraph.graph_mobius_walks(g) == mu


def test_reflexivity_required():
    with pytest.raises(GraphError):
        ReflexiveDigraph(["x", "y"], [Edge("l", "x", "x")])


def test_duplicate_edge_ids():
    with pytest.raises(GraphError):
        ReflexiveDigraph(["x"], [Edge("l", "x", "x"), Edge("l", "x", "x")])


def test_circuit_not_locally_finite():
    g = ReflexiveDigraph(["x", "y"], [Edge("lx", "x", "x"), Edge("ly", "y", "y"),
                                      Edge("a", "x", "y"), Edge("b", "y", "x")])
    assert not digraph.is_locally_finite(g)
    with pytest.raises(GraphError):
        digraph.induced_poset(g)


def test_walks_skip_loops():
    g = two_vertex(arrows=1)
    assert digraph.enumerate_walks(g, "x", "y") == [("a0",)]
    assert digraph.enumerate_walks(g, "x", "x") == []


@given(digraphs())
def test_inverse_equals_walk_sum(g):
    assert digraph.is_locally_finite(g)
    assert digraph.graph_mobius(g) == digraph.graph_mobius_walks(g)


@given(digraphs(), st.data())
def test_edge_sum_inversion(g, data):
    base = data.draw(st.sampled_from(g.vertices))
    f = {v: data.draw(st.integers(-4, 4)) for v in g.vertices}
    r = digraph.graph_inversion_check(g, base, f)
    assert r["edge_sum_is_convolution"] and r["round_trip"]


@given(digraphs(), digraphs())
def test_product_factorizes(g, h):
    if len(g.vertices) * len(h.vertices) > 12:
        return
    gh = digraph.product_digraph(g, h)
    mg, mh, mgh = digraph.graph_mobius(g), digraph.graph_mobius(h), digraph.graph_mobius(gh)
    for (a, b), (c, d) in mgh.context.cells:
        assert mgh[((a, b), (c, d))] == mg[(a, c)] * mh[(b, d)]


@given(posets(max_size=6))
def test_poset_graph_recovers_mobius(p):
    # one loop per element and one edge per x < y: adjacency is zeta
    g = digraph.poset_graph(p)
    mu_g = digraph.graph_mobius(g)
    mu = poset.mobius(p)
    for c in mu_g.context.cells:
        assert mu_g[c] == mu[c]
    ctx = mu_g.context
    assert core.convolve(ctx, digraph.adjacency(g), mu_g) == ctx.epsilon()

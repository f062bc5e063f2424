from hypothesis import given

from mobius import poset, topology
from conftest import posets


def test_empty_complex():
    cx = topology.order_complex(poset.build_poset([], []))
    assert {n: r for n, r in topology.homology_ranks(cx).items() if r} == {-1: 1}
    assert topology.euler_char(cx) == -1
    assert topology.euler_char(cx, reduced=False) == 0


def test_circle():
    # open interval of the face poset of a square boundary is a circle
    p = poset.build_poset(["a", "b", "c", "d", "ab", "bc", "cd", "da"],
                          [("a", "ab"), ("b", "ab"), ("b", "bc"), ("c", "bc"),
                           ("c", "cd"), ("d", "cd"), ("d", "da"), ("a", "da")])
    cx = topology.order_complex(p)
    assert topology.homology_ranks(cx, reduced=False) == {0: 1, 1: 1}
    assert topology.homology_ranks(cx) == {-1: 0, 0: 0, 1: 1}
    assert isinstance(topology.euler_char(cx), int)


def test_boolean_sphere():
    p = poset.family("boolean", 4)
    bottom, top = frozenset(), frozenset({1, 2, 3, 4})
    cx = topology.open_interval_complex(p, bottom, top)
    ranks = topology.homology_ranks(cx)
    assert ranks[2] == 1 and sum(ranks.values()) == 1
    assert topology.hall_mobius(p, bottom, top) == 1


@given(posets(max_size=7))
def test_boundary_squares_to_zero(p):
    cx = topology.order_complex(p)
    for n in range(1, cx.top_dim + 1):
        rows_n = topology.boundary_rows(cx, n)
        rows_m = topology.boundary_rows(cx, n - 1)
        for row in rows_n:
            acc = {}
            for k, v in row.items():
                for t, w in rows_m[k].items():
                    acc[t] = acc.get(t, 0) + v * w
            assert not any(acc.values())


@given(posets())
def test_hall_three_ways(p):
    mu = poset.mobius(p)
    for x, y in p.intervals():
        if x != y:
            assert mu[(x, y)] == topology.hall_mobius(p, x, y) == topology.hall_mobius_homology(p, x, y)


@given(posets())
def test_gauss_bonnet(p):
    gb = topology.gauss_bonnet(p)
    assert gb.holds()
    cx = topology.order_complex(p)
    assert gb.chi == topology.euler_from_homology(cx, reduced=False)


def test_antichain_gauss_bonnet():
    gb = topology.gauss_bonnet(poset.build_poset(["x", "y"], []))
    assert gb.chi == 2 == gb.mobius_sum
    assert gb.chi_reduced == 1


def test_homology_report_shape():
    rep = topology.homology_report(poset.family("chain", 2))
    assert rep["euler"] == 1 and rep["reduced_euler"] == 0
    assert [d["dim"] for d in rep["dimensions"]] == [-1, 0, 1, 2]

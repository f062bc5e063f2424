from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from mobius import core, poset
from mobius.poset import PosetError
from conftest import posets


def diamond():
    return poset.build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def test_chain_values():
    p = poset.family("chain", 4)
    mu = poset.mobius(p)
    for x, y in p.intervals():
        assert mu[(x, y)] == {0: 1, 1: -1}.get(y - x, 0)


def test_diamond():
    p = diamond()
    mu = poset.mobius(p)
    assert mu[("0", "1")] == 1
    assert mu[("0", "a")] == -1
    assert poset.maximal_chain_count(p, "0", "1") == 2


def test_build_errors():
    with pytest.raises(PosetError):
        poset.build_poset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(PosetError):
        poset.build_poset(["a"], [("a", "z")])
    with pytest.raises(PosetError):
        poset.family("boolean", 99)


@pytest.mark.parametrize("n", range(0, 6))
def test_boolean_closed_form(n):
    p = poset.family("boolean", n)
    mu = poset.mobius(p)
    assert all(mu[c] == poset.boolean_closed_form(*c) for c in p.intervals())


@pytest.mark.parametrize("n", range(1, 5))
def test_partition_closed_form(n):
    p = poset.family("partitions", n)
    mu = poset.mobius(p)
    assert all(mu[c] == poset.partition_closed_form(*c) for c in p.intervals())
    bottom, top = p.elements[0], p.elements[-1]
    assert mu[(bottom, top)] == (-1) ** (n - 1) * factorial(n - 1)


def test_divisors_classical():
    p = poset.family("divisors", 360)
    mu = poset.mobius(p)
    assert mu[(1, 30)] == -1 and mu[(1, 4)] == 0 and mu[(2, 12)] == 1


@given(posets())
def test_recursion_equals_chain_count(p):
    mu = poset.mobius(p)
    for x, y in p.intervals():
        assert mu[(x, y)] == poset.mobius_by_chains(p, x, y)


@given(posets(max_size=6))
def test_antipode_matches_mobius(p):
    mu = poset.mobius(p)
    for x, y in p.intervals():
        if x != y:
            assert poset.antipode_eval(p, x, y) == mu[(x, y)]


@given(posets(max_size=6))
def test_reduced_lifts_to_mobius(p):
    assert poset.lift_reduced(p, poset.reduced_mobius(p)) == poset.mobius(p)


@given(posets())
def test_eta_inverse_counts_maximal_chains(p):
    ctx = poset.incidence_context(p)
    inv = core.invert(ctx, poset.eta_element(p))
    for c in ctx.cells:
        assert inv[c] == poset.maximal_chain_count(p, *c)


@given(posets())
def test_eta_all_inverse_counts_chains(p):
    ctx = poset.incidence_context(p)
    inv = core.invert(ctx, poset.eta_element(p, "all"))
    for x, y in ctx.cells:
        assert inv[(x, y)] == (1 if x == y else sum(poset.chain_counts(p, x, y)[1:]))


@given(posets(), st.data())
def test_module_inversion_round_trip(p, data):
    if not len(p):
        return
    base = data.draw(st.sampled_from(p.elements))
    f = {x: data.draw(st.integers(-5, 5)) for x in p.up_set(base)}
    g = poset.module_inversion(p, base, f, "by_xi")
    assert poset.module_inversion(p, base, g, "by_mu") == {x: Fraction(v) for x, v in f.items()}


@given(posets(), st.data())
def test_finite_difference_inverts_by_maximal_chains(p, data):
    if not len(p):
        return
    base = data.draw(st.sampled_from(p.elements))
    ups = p.up_set(base)
    f = {x: data.draw(st.integers(-5, 5)) for x in ups}
    g = poset.finite_difference(p, base, f)
    back = {y: sum((poset.maximal_chain_count(p, x, y) * g[x] for x in ups if p.leq(x, y)), Fraction(0))
            for y in ups}
    assert back == {x: Fraction(v) for x, v in f.items()}


@given(posets(max_size=4), posets(max_size=3))
def test_product_factorization(p, q):
    r = poset.product_poset(p, q)
    mp, mq, mr = poset.mobius(p), poset.mobius(q), poset.mobius(r)
    for (a, b), (c, d) in r.intervals():
        assert mr[((a, b), (c, d))] == mp[(a, c)] * mq[(b, d)]


@given(posets(max_size=6), st.data())
def test_leinster_matrix_inverse(p, data):
    ctx = poset.incidence_context(p)
    f = ctx.element({c: data.draw(st.sampled_from([-2, -1, 1, 2, 3])) for c in ctx.cells})
    m = poset.embed_to_matrix(p, f)
    assert poset.is_transitive(m)
    inv = poset.matrix_inverse(m)
    for i, x in enumerate(p.elements):
        for j, y in enumerate(p.elements):
            if not p.leq(x, y):
                assert inv[i][j] == 0
    assert poset.matrix_to_element(p, inv) == core.invert(ctx, f)


def test_not_transitive():
    assert not poset.is_transitive([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    assert not poset.is_transitive([[0]])


def test_interval_classes_of_divisors():
    p = poset.family("divisors", 12)
    classes, class_of = poset.interval_classes(p)
    # [1,2] ~ [1,3] ~ [2,4] ~ ...
    assert class_of[(1, 2)] == class_of[(1, 3)] == class_of[(3, 6)]
    assert class_of[(1, 4)] != class_of[(1, 6)]


def test_bounded_extension_of_antichain():
    from mobius.topology import bounded_extension_mobius
    p = poset.build_poset(["a", "b", "c"], [])
    # the bounded 3-antichain has mu = 2
    assert bounded_extension_mobius(p) == 2

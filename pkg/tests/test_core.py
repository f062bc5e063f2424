from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mobius import core, linalg, poset
from conftest import posets

small_ints = st.integers(-3, 3)


def _elements(ctx, draw, nonzero_units=False):
    vals = {}
    for c in ctx.cells:
        v = draw(small_ints)
        if nonzero_units and ctx.counit[c] and v == 0:
            v = 1
        vals[c] = v
    return ctx.element(vals)


@given(posets(max_size=6), st.data())
def test_associativity_and_unit(p, data):
    ctx = poset.incidence_context(p)
    f, g, h = (_elements(ctx, data.draw) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    e = ctx.epsilon()
    assert e * f == f == f * e


@given(posets(max_size=6), st.data())
def test_inverse_two_sided(p, data):
    ctx = poset.incidence_context(p)
    f = _elements(ctx, data.draw, nonzero_units=True)
    g = core.invert(ctx, f)
    assert f * g == ctx.epsilon() == g * f
    assert core.invert(ctx, g) == f


@given(posets(max_size=6))
def test_coalgebra_laws(p):
    ctx = poset.incidence_context(p)
    assert ctx.coassociativity_defects() == []
    assert ctx.counit_defects() == []


@given(posets(max_size=6), st.data())
def test_distributive(p, data):
    ctx = poset.incidence_context(p)
    f, g, h = (_elements(ctx, data.draw) for _ in range(3))
    assert f * (g + h) == f * g + f * h
    assert (f - f) == ctx.zero()


def test_not_invertible():
    p = poset.family("chain", 2)
    ctx = poset.incidence_context(p)
    f = ctx.element({(0, 0): 0, (1, 1): 1, (2, 2): 1})
    assert not core.is_unit(ctx, f)
    with pytest.raises(core.NotInvertibleError):
        core.invert(ctx, f)


def test_context_mismatch():
    a = poset.incidence_context(poset.family("chain", 1))
    b = poset.incidence_context(poset.family("chain", 1))
    with pytest.raises(core.ContextMismatchError):
        core.convolve(a, a.zeta(), b.zeta())


def test_unknown_cell():
    ctx = poset.incidence_context(poset.family("chain", 1))
    with pytest.raises(KeyError):
        ctx.element({(1, 0): 1})


def test_not_triangular():
    # a cell that is its own right factor through a non-unit
    with pytest.raises(core.NotTriangularError):
        core.ConvolutionContext.build(["u", "a"], {"u": [("u", "u")], "a": [("u", "a"), ("a", "a")]},
                                      {"u": 1, "a": 0})


def test_monoid_like_context():
    # cells 1..6 under divisibility as in truncated Dirichlet series
    N = 6
    cells = list(range(1, N + 1))
    split = {n: [(d, n // d) for d in cells if n % d == 0] for n in cells}
    ctx = core.ConvolutionContext.build(cells, split, lambda c: c == 1)
    mu = core.invert(ctx, ctx.zeta())
    assert [mu[n] for n in cells] == [1, -1, -1, 0, -1, 1]


def test_sign_and_fraction():
    assert [core.sign(n) for n in (-1, 0, 1, 2)] == [-1, 1, -1, 1]
    assert core.as_fraction("3/4") == Fraction(3, 4)


def test_linalg_inverse_and_rank():
    m = [[2, 1], [4, 3]]
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(2)
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.sparse_rank([{0: 1, 1: 1}, {0: 2, 1: 2}, {2: 5}]) == 2
    with pytest.raises(linalg.SingularMatrixError):
        linalg.inverse([[1, 2], [2, 4]])

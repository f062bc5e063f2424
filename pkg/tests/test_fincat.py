from fractions import Fraction

import pytest
from hypothesis import given, settings

from mobius import fincat, poset
from mobius.fincat import CategoryError, FinCategory
from conftest import graded_categories, path_categories, posets


@pytest.fixture(scope="module")
def inj3():
    return fincat.injection_category(3, check=True)


def two_objects(k=2):
    # hom(x, y) of size k, trivial endomorphisms
    morphisms = [("1x", "x", "x"), ("1y", "y", "y")] + [(f"a{i}", "x", "y") for i in range(k)]
    compose = {("1x", "1x"): "1x", ("1y", "1y"): "1y"}
    for i in range(k):
        compose[(f"a{i}", "1x")] = f"a{i}"
        compose[("1y", f"a{i}")] = f"a{i}"
    return FinCategory(["x", "y"], morphisms, {"x": "1x", "y": "1y"}, compose)


def test_validate_reports_unit_violation():
    c = FinCategory(["*"], [("1", "*", "*"), ("f", "*", "*")], {"*": "1"},
                    {("1", "1"): "1", ("1", "f"): "1", ("f", "1"): "f", ("f", "f"): "f"}, check=False)
    assert any("unit" in msg for msg in fincat.validate(c))
    with pytest.raises(CategoryError):
        FinCategory(c.objects, c.morphisms, c.identities, c.compose_table)


def test_partial_table_rejected():
    with pytest.raises(CategoryError, match="total"):
        FinCategory(["*"], [("1", "*", "*")], {"*": "1"}, {})


def test_small_categories_valid():
    for c in (fincat.terminal_category(), fincat.cyclic_group(2), fincat.symmetric_group(3),
              fincat.idempotent_monoid()):
        assert fincat.validate(c) == []


def test_group_mobius():
    c = fincat.symmetric_group(3)
    assert fincat.is_locally_finite_cat(c)
    assert fincat.cat_mobius(c)[("*", "*")] == Fraction(1, 6)


def test_two_object_value():
    c = two_objects()
    assert fincat.cat_mobius(c)[("x", "y")] == -2
    assert fincat.cat_mobius(c) == fincat.cat_mobius_closed_form(c)


def test_isomorphic_objects():
    c = fincat.codiscrete_groupoid(["x", "y"])
    assert not fincat.is_locally_finite_cat(c)
    assert fincat.is_essentially_locally_finite(c) and fincat.is_isocyclic(c)
    assert fincat.groupoid_cardinality(c) == 1
    with pytest.raises(CategoryError):
        fincat.object_poset(c)


def test_idempotent_not_isocyclic():
    c = fincat.idempotent_monoid()
    assert fincat.is_essentially_locally_finite(c)
    assert not fincat.is_isocyclic(c)
    with pytest.raises(CategoryError):
        fincat.xi_g(c)


def test_groupoid_cardinalities():
    assert fincat.groupoid_cardinality(fincat.discrete_groupoid(4)) == 4
    assert fincat.groupoid_cardinality(fincat.symmetric_group(3)) == Fraction(1, 6)
    with pytest.raises(CategoryError):
        fincat.groupoid_cardinality(fincat.idempotent_monoid())


@pytest.mark.parametrize("npoints,n", [(3, 3), (4, 2), (6, 3), (6, 2)])
def test_action_groupoid(npoints, n):
    # Z/n acting on Z/npoints by rotation through npoints/n steps
    act = lambda g, x: (x + g * (npoints // n)) % npoints
    gpd = fincat.action_groupoid(range(npoints), range(n), act, lambda a, b: (a + b) % n, 0)
    assert fincat.is_groupoid(gpd)
    assert fincat.groupoid_cardinality(gpd) == Fraction(npoints, n)


def test_injection_skeleton(inj3):
    assert fincat.is_essentially_locally_finite(inj3) and fincat.is_isocyclic(inj3)
    q = fincat.quotient_poset(inj3)
    assert q.relation() == poset.family("chain", 3).relation()
    mu = fincat.essential_mobius(inj3)
    for n in range(4):
        for m in range(n, 4):
            assert mu[(n, m)] == fincat.injection_mobius_value(n, m)
    assert fincat.simplicial_euler_chi_g(inj3, 0, 2) == Fraction(1, 2)
    with pytest.raises(CategoryError):
        fincat.simplicial_euler_chi_g(inj3, 2, 0)


def test_xi_g_mu_g(inj3):
    xg, mg = fincat.xi_g_mu_g(inj3)
    assert xg[(0, 2)] == Fraction(1, 2)
    assert mg[(0, 0)] == 1


def test_representative_independence():
    # equivalent but not skeletal: every object of the injections appears twice
    c = fincat.product_category(fincat.injection_category(2), fincat.codiscrete_groupoid(["a", "b"]))
    assert not fincat.is_locally_finite_cat(c)
    assert fincat.representative_independent(c)
    mu = fincat.essential_mobius(c)
    for n in range(3):
        for m in range(n, 3):
            assert mu[((n, "a"), (m, "a"))] == fincat.injection_mobius_value(n, m)


@given(posets(max_size=6))
def test_poset_as_category(p):
    c = fincat.poset_category(p)
    assert fincat.validate(c) == []
    assert fincat.is_locally_finite_cat(c)
    assert fincat.cat_mobius(c).values == poset.mobius(p).values
    assert fincat.object_poset(c).relation() == p.relation()


@settings(max_examples=40)
@given(path_categories())
def test_path_category_laws(c):
    assert fincat.validate(c) == []
    assert fincat.cat_mobius(c) == fincat.cat_mobius_closed_form(c)


@settings(max_examples=40)
@given(graded_categories())
def test_graded_category_laws(c):
    assert fincat.validate(c) == []
    assert fincat.cat_mobius(c) == fincat.cat_mobius_closed_form(c)
    fincat.xi_g_mu_g(c)


def test_product_category():
    c = fincat.product_category(fincat.cyclic_group(2), two_objects(1))
    assert fincat.validate(c) == []
    mu = fincat.cat_mobius(c)
    assert mu[(("*", "x"), ("*", "y"))] == Fraction(-1, 2)

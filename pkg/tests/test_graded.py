"""Koszul signs, graded spaces, elements and block operators."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgbv.graded import (Element, GradedSpace, LinearOperator, anticommutator,
                         compose, koszul_sign)


def test_koszul_sign_basic_examples():
    assert koszul_sign([1, 0], [1, 1]) == -1      # odd-odd swap
    assert koszul_sign([0, 1, 2], [3, 1, 2]) == 1
    assert koszul_sign([2, 0, 1], [1, 1, 1]) == 1  # cyclic, two transpositions
    assert koszul_sign([1, 0], [2, 1]) == 1        # even factor moves freely


def test_koszul_sign_rejects_bad_input():
    with pytest.raises(ValueError):
        koszul_sign([0, 0], [1, 1])
    with pytest.raises(ValueError):
        koszul_sign([0, 1], [1])


@given(st.integers(2, 6).flatmap(
    lambda k: st.tuples(st.permutations(range(k)), st.permutations(range(k)),
                        st.lists(st.integers(0, 3), min_size=k, max_size=k))))
@settings(max_examples=120, deadline=None)
def test_koszul_sign_is_multiplicative(data):
    p, q, degrees = data
    composed = [p[q[i]] for i in range(len(p))]
    permuted_degrees = [degrees[p[i]] for i in range(len(p))]
    assert koszul_sign(composed, degrees) == \
        koszul_sign(list(p), degrees) * koszul_sign(list(q), permuted_degrees)


@pytest.fixture
def two_term():
    """delta u = v."""
    space = GradedSpace([("u", 0), ("v", 1)])
    delta = LinearOperator.from_entries(space, space, 1, {("u", "v"): 1})
    return space, delta


def test_space_canonical_order():
    space = GradedSpace([("b", 1), ("a", 1), ("z", -1)])
    assert [space.label_of(i) for i in range(3)] == ["z", "a", "b"]
    assert space.degrees() == [-1, 1]
    assert space.dim_at(1) == 2


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        GradedSpace([("a", 0), ("a", 1)])


def test_element_arithmetic_and_degree(two_term):
    space, _ = two_term
    u = space.basis_element("u")
    v = space.basis_element("v")
    w = u + Fraction(2, 3) * v
    assert w.degree() is None
    assert w.homogeneous_parts() == {0: u, 1: Fraction(2, 3) * v}
    assert (w - w).is_zero()
    assert u.degree() == 0


rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)


@given(rationals, rationals, rationals, rationals)
@settings(max_examples=100, deadline=None)
def test_scalar_field_axioms(a, b, c, d):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if d:
        assert (a / d) * d == a


@given(rationals, rationals, rationals, rationals)
@settings(max_examples=60, deadline=None)
def test_operator_linearity(x, y, z, w):
    space = GradedSpace([("u", 0), ("x", 0), ("v", 1), ("y", 1)])
    op = LinearOperator.from_entries(space, space, 1,
                                     {("u", "v"): Fraction(1, 2),
                                      ("x", "v"): -2, ("x", "y"): 3})
    a = Element(space, {space.index["u"]: x, space.index["x"]: y})
    b = Element(space, {space.index["u"]: z, space.index["x"]: w})
    alpha, beta = Fraction(3, 7), Fraction(-2)
    assert op(alpha * a + beta * b) == alpha * op(a) + beta * op(b)


def test_apply_zero_and_identity(two_term):
    space, delta = two_term
    u = space.basis_element("u")
    zero = LinearOperator.zero(space, space, 1)
    assert zero(u).is_zero()
    ident = LinearOperator.identity(space)
    assert ident(u) == u
    assert delta(u) == space.basis_element("v")


def test_compose_and_anticommutator(two_term):
    space, delta = two_term
    assert compose(delta, delta).is_zero()
    zero = LinearOperator.zero(space, space, -1)
    assert anticommutator(delta, zero).is_zero()


def test_anticommutator_detects_corruption():
    """Perturb one matrix entry; the anticommutator must localise it."""
    space = GradedSpace([("a", 0), ("b", 1), ("c", 2)])
    delta = LinearOperator.from_entries(space, space, 1,
                                        {("a", "b"): 1})
    bv = LinearOperator.from_entries(space, space, -1,
                                     {("b", "a"): 1, ("c", "b"): 1})
    # delta bv + bv delta = id on a and b: nonzero, and the block names it
    ac = anticommutator(delta, bv)
    assert not ac.is_zero()
    assert ac(space.basis_element("a")) == space.basis_element("a")


def test_operator_degree_validation():
    space = GradedSpace([("a", 0), ("b", 1)])
    with pytest.raises(ValueError):
        LinearOperator.from_entries(space, space, 1, {("b", "a"): 1})


def test_entries_round_trip():
    space = GradedSpace([("a", 0), ("b", 1), ("c", 1)])
    op = LinearOperator.from_entries(space, space, 1,
                                     {("a", "b"): Fraction(1, 3),
                                      ("a", "c"): -2})
    rebuilt = LinearOperator.from_entries(space, space, 1,
                                          {(f, t): c for f, t, c in op.entries()})
    assert rebuilt == op

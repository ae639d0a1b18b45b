"""Instance arithmetic, the derived bracket and the axiom checker."""

from fractions import Fraction

import pytest

from dgbv import models
from dgbv.algebra import (GradingError, check_dgbv_axioms,
                          deformed_differential)
from dgbv.geometry import build_torus_model
from dgbv.graded import LinearOperator
from dgbv.formal import FormalElement
from dgbv.mc import coordinate_ring, gamma_one, solve_mc
from dgbv.homology import cohomology, decomposition


@pytest.fixture(scope="module")
def torus2():
    return build_torus_model(2)


def test_torus_products(torus2):
    t1 = torus2.space.basis_element("t1")
    t2 = torus2.space.basis_element("t2")
    t12 = torus2.space.basis_element("t12")
    assert torus2.multiply(t1, t2) == t12
    assert torus2.multiply(t1, t1).is_zero()
    assert torus2.multiply(t2, t1) == -1 * t12


def test_torus_axioms_pass(torus2):
    report = check_dgbv_axioms(torus2)
    assert report.ok
    names = [c.name for c in report.checks]
    assert "gbv_poisson_rule" in names and "bracket_jacobi" in names


def test_bracket_vanishes_when_bv_zero(torus2):
    t1 = torus2.space.basis_element("t1")
    t12 = torus2.space.basis_element("t12")
    assert torus2.bracket(t1, t12).is_zero()


def test_bv_model_bracket_examples():
    # plain Laplacian: [x * xi] is the unit, [xi * xi] = 0
    A = models.build_bv_model(3, weighted=False)
    x = A.space.basis_element("x")
    xi = A.space.basis_element("xi")
    assert A.bracket(x, xi) == A.space.basis_element("1")
    assert A.bracket(xi, xi).is_zero()
    # weighted variant: [x * xi] = x
    W = models.build_bv_model(3, weighted=True)
    xw = W.space.basis_element("x")
    xiw = W.space.basis_element("xi")
    assert W.bracket(xw, xiw) == xw


def test_plain_bv_model_fails_at_truncation_boundary():
    """The naive Laplacian does not respect the ideal (x^3).

    Hand computation: [xi*(x.x^2)] = 0 but the Leibniz expansion gives
    -3x^2; the checker must find exactly the bracket laws broken and
    nothing else.
    """
    A = models.build_bv_model(3, weighted=False)
    report = check_dgbv_axioms(A)
    assert not report.ok
    failed = {c.name for c in report.failed_checks()}
    assert failed == {"gbv_poisson_rule", "bracket_jacobi", "bracket_leibniz"}
    # antisymmetry holds for the derived bracket of any linear operator
    assert report["bracket_antisymmetry"].status == "pass"
    x = A.space.basis_element("x")
    x2 = A.space.basis_element("x^2")
    xi = A.space.basis_element("xi")
    lhs = A.bracket(xi, A.multiply(x, x2))
    rhs = A.multiply(A.bracket(xi, x), x2) + A.multiply(x, A.bracket(xi, x2))
    assert lhs.is_zero()
    assert rhs == (-3) * x2


def test_weighted_bv_model_is_honest_gbv():
    report = check_dgbv_axioms(models.build_bv_model(3, weighted=True))
    assert report.ok


def test_degree_one_bv_corruption_is_still_gbv(torus2):
    """On two odd generators every square-zero degree -1 operator is a
    legitimate BV operator (no room for a third-order defect), so
    corrupting Delta(t1) := 1 must NOT break any axiom."""
    corrupted = LinearOperator.from_entries(
        torus2.space, torus2.space, -1, {("t1", "1"): 1})
    from dgbv.algebra import DGBVInstance
    A = DGBVInstance(torus2.space, torus2.mult, torus2.delta, corrupted,
                     integral=torus2.integral, unit="1", name="torus2tweak")
    assert check_dgbv_axioms(A).ok


def test_corrupted_bv_operator_is_localised():
    """Delta(t123) := t23 on the 3-torus is square-zero but third-order;
    the checker must fail the bracket laws and name a witness triple."""
    T3 = build_torus_model(3)
    corrupted = LinearOperator.from_entries(
        T3.space, T3.space, -1, {("t123", "t23"): 1})
    from dgbv.algebra import DGBVInstance
    A = DGBVInstance(T3.space, T3.mult, T3.delta, corrupted,
                     integral=T3.integral, unit="1", name="torus3corrupt")
    report = check_dgbv_axioms(A)
    assert not report.ok
    first = report.first_failure()
    assert first.name == "gbv_poisson_rule"
    assert first.witnesses[0] == ("t1", "t2", "t3")


def test_unit_free_instance_reports_na():
    A = models.build_bv_model(2, weighted=True)
    from dgbv.algebra import DGBVInstance
    B = DGBVInstance(A.space, A.mult, A.delta, A.bv, name="no_unit")
    report = check_dgbv_axioms(B)
    assert report["unit_law"].status == "na"


def test_non_homogeneous_bracket_is_bilinear(torus2):
    a = torus2.space.basis_element("1") + torus2.space.basis_element("t1")
    b = torus2.space.basis_element("t2") + torus2.space.basis_element("t12")
    total = torus2.bracket(a, b)
    parts = sum((torus2.bracket(x, y)
                 for x in (torus2.space.basis_element("1"),
                           torus2.space.basis_element("t1"))
                 for y in (torus2.space.basis_element("t2"),
                           torus2.space.basis_element("t12"))),
                torus2.space.zero())
    assert total == parts


def test_deformed_differential_element_case():
    A = models.build_bv_model(3, weighted=True)
    x = A.space.basis_element("x")
    xi = A.space.basis_element("xi")
    ev = deformed_differential(A, A.space.zero())
    assert ev(x) == A.delta(x)
    # g = xi has [xi * xi] = 0 here, but [x*xi] = x shows the evaluator shape
    ev = deformed_differential(A, xi)
    assert ev(x) == A.delta(x) + A.bracket(xi, x)


def test_deformed_differential_squares_to_zero_on_solution():
    A = models.build_eight_dim_model()
    D = decomposition(A)
    S = solve_mc(A, D, 5)
    ev = deformed_differential(A, S.gamma)
    assert ev.is_square_zero()


def test_deformed_differential_detects_mc_violation():
    """g = xi in the weighted line model: [xi * [xi * x]] = x, so the
    square of delta_g is nonzero on the basis vector x."""
    A = models.build_bv_model(3, weighted=True)
    xi = A.space.basis_element("xi")
    ev = deformed_differential(A, xi)
    assert not ev.is_square_zero()
    x = A.space.basis_element("x")
    assert ev(ev(x)) == x


def test_deformed_differential_grading_errors():
    A = models.build_eight_dim_model()
    D = decomposition(A)
    ring = coordinate_ring(D.cohomology, 4)
    u = A.space.basis_element("u")          # degree 3: total degree 3 term
    bad = FormalElement.term(ring, u, (1,))
    with pytest.raises(GradingError):
        deformed_differential(A, bad)

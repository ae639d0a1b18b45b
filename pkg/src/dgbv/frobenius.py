"""The potential function and the associativity (WDVV) equations.

The potential of a normalized solution is

    Phi = int ( 1/6 Gamma^3  -  1/2 (delta B)(Delta B) ),

a scalar supercommutative polynomial.  Graded partial derivatives are
left derivatives throughout; the graded form of the associativity
equations compares, for every index quadruple (a, b, c, d),

    sum_{p,q} (d_a d_b d_p Phi) eta^{pq} (d_q d_c d_d Phi)

with (-1)^{p(x^a)(p(x^b)+p(x^c))} times the same expression with (a,b,c)
rotated to (b,c,a).  The sign convention is pinned by the requirement
that every pipeline-constructed potential satisfies the system; see the
sign table in the package documentation.
"""

from fractions import Fraction

from .formal import SuperPolynomial
from .mc import contract
from .reports import Report


class Potential:
    """Scalar polynomial Phi with its truncation order and coordinate ring."""

    def __init__(self, poly, order, cohomology_data):
        self.poly = poly
        self.order = order
        self.cohomology = cohomology_data

    @property
    def ring(self):
        return self.poly.ring

    def __repr__(self):
        return f"Potential(order={self.order}, terms={len(self.poly.coeffs)})"


class FrobeniusData:
    """Cup product structure constants and the associated 3-tensor."""

    def __init__(self, H, eta, phi_tensor, structure):
        self.cohomology = H
        self.eta = eta
        self.phi = phi_tensor          # {(a,b,c): Fraction}
        self.structure = structure     # {(a,b): {c: Fraction}}

    def cup(self, a, b):
        return self.structure.get((a, b), {})


def frobenius_data(A, H, eta):
    """Cup product on classes (multiply representatives, take classes)."""
    h = H.rank
    structure = {}
    phi = {}
    for a in range(h):
        for b in range(h):
            prod = A.multiply(H.reps[a], H.reps[b])
            coords = H.class_coordinates(prod)
            entry = {c: x for c, x in enumerate(coords) if x}
            if entry:
                structure[(a, b)] = entry
            for c in range(h):
                val = A.integrate(A.multiply(prod, H.reps[c]))
                if val:
                    phi[(a, b, c)] = val
    return FrobeniusData(H, eta, phi, structure)


def _parity(H, a):
    return H.degrees[a] % 2


def check_frobenius(A, H, eta):
    """Exhaustive Frobenius-algebra report for the cup product and pairing."""
    data = frobenius_data(A, H, eta)
    h = H.rank
    report = Report(f"frobenius algebra [{A.name}]")

    fails = []
    for a in range(h):
        for b in range(h):
            sign = -1 if (_parity(H, a) and _parity(H, b)) else 1
            if eta.matrix[a][b] != sign * eta.matrix[b][a]:
                fails.append((a, b))
    report.add("eta_graded_symmetric", fails)

    fails = []
    for a in range(h):
        for b in range(h):
            for c in range(h):
                lhs = sum((data.cup(a, b).get(p, 0) * eta.matrix[p][c]
                           for p in range(h)), Fraction(0))
                rhs = sum((eta.matrix[a][p] * data.cup(b, c).get(p, 0)
                           for p in range(h)), Fraction(0))
                if lhs != rhs:
                    fails.append((a, b, c))
    report.add("eta_invariance", fails)

    fails = []
    for a in range(h):
        for b in range(h):
            for c in range(h):
                lhs = data.phi.get((a, b, c), Fraction(0))
                # adjacent swaps with Koszul signs
                sab = -1 if (_parity(H, a) and _parity(H, b)) else 1
                if lhs != sab * data.phi.get((b, a, c), Fraction(0)):
                    fails.append((a, b, c, "swap ab"))
                sbc = -1 if (_parity(H, b) and _parity(H, c)) else 1
                if lhs != sbc * data.phi.get((a, c, b), Fraction(0)):
                    fails.append((a, b, c, "swap bc"))
    report.add("phi_graded_symmetric", fails)

    fails = []
    for a in range(h):
        for b in range(h):
            for c in range(h):
                for d in range(h):
                    lhs = _assoc_contraction(data, eta, a, b, c, d)
                    rhs = _assoc_contraction(data, eta, b, c, a, d)
                    sign = -1 if (_parity(H, a)
                                  and (_parity(H, b) ^ _parity(H, c))) else 1
                    if lhs != sign * rhs:
                        fails.append((a, b, c, d))
    report.add("associativity_equations", fails)
    return report


def _assoc_contraction(data, eta, a, b, c, d):
    h = data.cohomology.rank
    total = Fraction(0)
    for p in range(h):
        x = data.phi.get((a, b, p), 0)
        if not x:
            continue
        for q in range(h):
            y = eta.inverse[p][q]
            if not y:
                continue
            z = data.phi.get((q, c, d), 0)
            if z:
                total += x * y * z
    return total


def potential(A, S, order):
    """Phi = int(1/6 Gamma^3 - 1/2 delta B Delta B), truncated at ``order``.

    Requires the solution to be solved through order - 2 (the cube of a
    series with lowest term of order one is reliable two orders beyond
    the series itself).
    """
    if S.order < order - 2:
        raise ValueError(
            f"potential at order {order} needs a solution of order >= {order - 2}")
    gamma = S.gamma
    cube = gamma.wedge(gamma, A).wedge(gamma, A)
    phi = cube.integrate(A).scale(Fraction(1, 6))
    db = S.b_series.apply_operator(A.delta)
    Db = S.b_series.apply_operator(A.bv)
    if not (db.is_zero() or Db.is_zero()):
        phi = phi - db.wedge(Db, A).integrate(A).scale(Fraction(1, 2))
    if phi.order < order:
        raise ValueError(
            f"potential reliable only to order {phi.order} < {order}")
    poly = SuperPolynomial(phi.ring, phi.coeffs, order)

    if A.integral is not None and any(A.integral):
        top = max(A.space.degree_of(i) for i in range(A.space.dim)
                  if A.integral[i])
        expected = 6 - top
        degs = poly.coordinate_degrees()
        if degs - {expected}:
            raise ArithmeticError(
                f"potential not homogeneous of coordinate degree {expected}: "
                f"found {sorted(degs)}")
    low = poly.low()
    if poly.coeffs and low < 3:
        raise ArithmeticError(f"potential has terms of order {low} < 3")
    return Potential(poly, order, S.decomposition.cohomology)


def third_derivatives(P):
    """phi_{abc}(x) = d^3 Phi / dx^a dx^b dx^c with left derivatives.

    The composition acts rightmost first: phi_{abc} = d_a(d_b(d_c Phi)).
    This is the unique order for which the identity axiom holds for
    pipeline potentials in the chosen product convention.  Returns a dict
    {(a,b,c): SuperPolynomial}; identically zero entries are omitted.
    """
    ring = P.ring
    h = ring.nvars
    out = {}
    first = [P.poly.left_derivative(c) for c in range(h)]
    for c in range(h):
        if first[c].is_zero():
            continue
        for b in range(h):
            second = first[c].left_derivative(b)
            if second.is_zero():
                continue
            for a in range(h):
                third = second.left_derivative(a)
                if not third.is_zero():
                    out[(a, b, c)] = third
    return out


def check_wdvv(P, eta):
    """Residuals of the graded associativity equations for Phi.

    Residuals are reliable (and reported) through polynomial order
    P.order - 3.  The report lists every quadruple with a nonzero
    residual; an empty list is a pass.
    """
    ring = P.ring
    h = ring.nvars
    if h != eta.rank:
        raise ValueError("metric rank does not match the coordinate ring")
    derivs = third_derivatives(P)
    zero = SuperPolynomial.zero(ring, max(P.order - 3, 0))

    def phi3(a, b, c):
        return derivs.get((a, b, c), zero)

    def contraction(a, b, c, d):
        total = SuperPolynomial.zero(ring, max(P.order - 3, 0))
        for p in range(h):
            left = phi3(a, b, p)
            if left.is_zero():
                continue
            for q in range(h):
                coeff = eta.inverse[p][q]
                if not coeff:
                    continue
                right = phi3(q, c, d)
                if right.is_zero():
                    continue
                total = total + (left * right).scale(coeff)
        return total

    parity = ring.parities
    failures = []
    residuals = {}
    for a in range(h):
        for b in range(h):
            for c in range(h):
                for d in range(h):
                    lhs = contraction(a, b, c, d)
                    rhs = contraction(b, c, a, d)
                    sign = -1 if (parity[a] and (parity[b] ^ parity[c])) else 1
                    res = lhs - rhs.scale(sign)
                    if not res.is_zero():
                        failures.append((a, b, c, d))
                        residuals[(a, b, c, d)] = res
    report = Report("wdvv equations")
    report.add("wdvv_residual_zero", failures,
               detail=f"through order {max(P.order - 3, 0)}")
    report.residuals = residuals
    return report


def check_identity_axiom(P, eta):
    """d^3 Phi / dx^0 dx^a dx^b must equal the constant eta_{ab}.

    Applicable only when the zeroth coordinate is the unit class.
    """
    report = Report("identity axiom")
    H = P.cohomology
    if H is None or H.unit_index is None:
        report.add("unit_normalization", [], applicable=False,
                   detail="no unit class")
        return report
    ring = P.ring
    h = ring.nvars
    fails = []
    for b in range(h):
        db = P.poly.left_derivative(b)
        for a in range(h):
            got = db.left_derivative(a).left_derivative(0)
            want = SuperPolynomial.constant(ring, eta.matrix[a][b],
                                            order=got.order)
            if got != want:
                fails.append((a, b, repr(got), str(eta.matrix[a][b])))
    report.add("unit_normalization", fails)
    return report


def check_cubic_identity(A, S, P, X):
    """X^3 Phi = int (X Gamma)^3 as truncated polynomials.

    ``X`` maps coordinate indices to rationals.  Both sides are compared
    through the order where each is reliable; a mismatch of reliable
    orders of more than the forced offset raises.
    """
    if P.ring != S.ring:
        raise ValueError("potential and solution orders are inconsistent")
    direction = {a: Fraction(v) for a, v in X.items()}
    lhs = P.poly
    for _ in range(3):
        lhs = lhs.right_contract(direction)
    xg = contract(direction, S.gamma)
    rhs = xg.wedge(xg, A).wedge(xg, A).integrate(A)
    cap = min(lhs.order, rhs.order)
    diff = SuperPolynomial(lhs.ring, (lhs - rhs).coeffs, cap)
    report = Report("cubic contraction identity")
    report.add("triple_contraction_matches_cube",
               [(m, str(c)) for m, c in diff.terms_sorted()],
               detail=f"through order {cap}")
    return report

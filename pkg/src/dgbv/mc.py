"""Order-by-order construction of the normalized Maurer-Cartan solution.

Starting from Gamma_1 = sum e_a x^a over the chosen representatives, each
order n solves

    delta Gamma_n = -1/2 sum_{p+q=n} [Gamma_p * Gamma_q]

by applying the homotopy Q of a cohomological decomposition.  The right
hand side is verified closed, its harmonic part is the obstruction (the
order-n value of the Kuranishi map); when it vanishes the step succeeds
and Gamma_n = Q(rhs) is normalized by solving Delta B_n = Gamma_n with
free variables pinned to zero.  Obstructions are returned as values, not
raised: an obstructed instance is a legitimate object of study.
"""

from fractions import Fraction

from . import linalg
from .formal import CoordinateRing, FormalElement
from .graded import Element
from .homology import _element_from_local, _local_vector


class MCError(ArithmeticError):
    pass


class ClosednessError(MCError):
    """The bracket square failed to be closed: upstream axioms are broken."""


class NormalizationError(MCError):
    """Gamma_n escaped the image of the BV operator."""


class Obstruction:
    """Nonzero harmonic part of -1/2 sum [Gamma_p * Gamma_q] at some order."""

    def __init__(self, order, harmonic, classes):
        self.order = order
        self.harmonic = harmonic        # FormalElement, coefficients in H
        self.classes = classes          # {monomial: class-coordinate tuple}

    def is_zero(self):
        return not self.classes

    def __repr__(self):
        return f"Obstruction(order={self.order}, monomials={len(self.classes)})"


class NormalizedSolution:
    """Gamma = Gamma_1 + Delta B with machine-checked invariants."""

    def __init__(self, instance, decomposition, ring, gamma, b_series, order):
        self.instance = instance
        self.decomposition = decomposition
        self.ring = ring
        self.gamma = gamma
        self.b_series = b_series
        self.order = order

    def gamma_one(self):
        return self.gamma.part(1)

    def residual(self):
        """delta Gamma + 1/2 [Gamma * Gamma] as a truncated series."""
        return mc_residual(self.instance, self.gamma)

    def __repr__(self):
        return (f"NormalizedSolution(order={self.order}, "
                f"terms={len(self.gamma.coeffs)})")


def coordinate_ring(H, order, headroom=2):
    """One coordinate per class e_a, of degree 2 - |e_a| and matching parity.

    The ring truncates ``headroom`` orders above the solve order: the cube
    of a solution is reliable two orders beyond the solution itself, and
    the ring must not cut those monomials off.
    """
    names = [f"x{a}" for a in range(H.rank)]
    degrees = [2 - d for d in H.degrees]
    return CoordinateRing(names, degrees, order + headroom)


def gamma_one(ring, H):
    space = H.space
    out = FormalElement.zero(ring, space)
    for a, rep in enumerate(H.reps):
        out = out + FormalElement.term(ring, rep, (a,))
    return out


def mc_residual(A, gamma):
    half_sq = gamma.bracket_with(gamma, A).scale(Fraction(1, 2))
    return gamma.apply_operator(A.delta) + half_sq


def solve_mc(A, D, order, force=False):
    """Normalized universal solution through the given polynomial order.

    Returns a NormalizedSolution, or an Obstruction at the first order
    whose harmonic bracket square is nonzero.  Without ``force`` the
    decomposition must have BV-compatible representatives; pass
    ``force=True`` to probe instances that violate the inclusion
    conditions (expect an Obstruction or a NormalizationError).
    """
    if not D.delta_compatible and not force:
        raise MCError(
            "representatives are not BV-compatible (inclusion condition "
            "violated); rerun with force=True to probe for obstructions")
    H = D.cohomology
    ring = coordinate_ring(H, order)
    space = A.space
    parts = {1: gamma_one(ring, H)}
    b_parts = {}
    if H.rank == 0:
        return NormalizedSolution(A, D, ring,
                                  FormalElement.zero(ring, space, order),
                                  FormalElement.zero(ring, space, order), order)

    for n in range(2, order + 1):
        rhs = FormalElement.zero(ring, space, order)
        for p in range(1, n):
            q = n - p
            if p in parts and q in parts:
                rhs = rhs + parts[p].bracket_with(parts[q], A).part(n)
        c_n = rhs.scale(Fraction(-1, 2))
        if c_n.is_zero():
            continue
        if not c_n.apply_operator(A.delta).is_zero():
            raise ClosednessError(
                f"bracket square not closed at order {n}; the instance "
                "violates the DGBV axioms")
        harmonic = c_n.apply_operator(D.pi_H)
        if not harmonic.is_zero():
            classes = {m: H.class_coordinates(coeff)
                       for m, coeff in harmonic.terms_sorted()}
            return Obstruction(n, harmonic, classes)
        gamma_n = c_n.apply_operator(D.Q)
        if gamma_n.is_zero():
            continue
        parts[n] = gamma_n
        b_parts[n] = _solve_bv_preimage(A, gamma_n)

    acc = {}
    for p in sorted(parts):
        acc.update(parts[p].coeffs)
    gamma = FormalElement(ring, space, acc, order)
    acc = {}
    for p in sorted(b_parts):
        acc.update(b_parts[p].coeffs)
    b_series = FormalElement(ring, space, acc, order)

    _verify_solution(A, D, ring, gamma, b_series, order)
    return NormalizedSolution(A, D, ring, gamma, b_series, order)


def _solve_bv_preimage(A, gamma_n):
    """Pivot-minimal B_n with Delta B_n = Gamma_n (free variables zero)."""
    space = A.space
    ring = gamma_n.ring
    out = {}
    for mono, coeff in gamma_n.coeffs.items():
        total = space.zero()
        for k, part in coeff.homogeneous_parts().items():
            if space.dim_at(k + 1) == 0:
                raise NormalizationError(
                    f"Gamma_{len(mono)} not in the image of the BV operator")
            mat = A.bv.block_at(k + 1)
            sol = linalg.solve(mat, _local_vector(space, part, k))
            if sol is None:
                raise NormalizationError(
                    f"Gamma_{len(mono)} not in the image of the BV operator")
            total = total + _element_from_local(space, k + 1, sol)
        out[mono] = total
    return FormalElement(ring, space, out, gamma_n.order)


def _verify_solution(A, D, ring, gamma, b_series, order):
    for mono, coeff in gamma.coeffs.items():
        md = ring.mono_degree(mono)
        for i in coeff.coeffs:
            if md + A.space.degree_of(i) != 2:
                raise MCError("solution term escapes total degree 2")
    if not mc_residual(A, gamma).is_zero():
        raise MCError("Maurer-Cartan residual nonzero after solve")
    higher = gamma - gamma.part(1)
    if not (higher - b_series.apply_operator(A.bv)).is_zero():
        raise MCError("Delta B != Gamma - Gamma_1 after solve")


def contract(X, F):
    """Right contraction of a series by a constant tangent vector.

    ``X`` maps coordinate indices to rationals (missing entries are 0).
    """
    return F.contract({a: Fraction(v) for a, v in X.items()})


def check_contraction_mc(A, S, X):
    """delta(X Gamma) + [Gamma * (X Gamma)] = 0 through the reliable order."""
    xg = contract(X, S.gamma)
    res = xg.apply_operator(A.delta) + S.gamma.bracket_with(xg, A)
    return res.is_zero()


def gauge_act(A, g, gamma, order):
    """Action of exp(g) on a solution:

        exp(g) . Gamma = Gamma + sum_{k>=0} ad_g^k / (k+1)! ([g*Gamma] - delta g)

    ``g`` must be odd of total degree 1 term-by-term, with no constant
    term, so the series terminates below the truncation order.
    """
    ring = gamma.ring
    if g.ring != ring:
        raise ValueError("gauge parameter lives in a different ring")
    for mono, coeff in g.coeffs.items():
        if len(mono) == 0:
            raise ValueError("gauge parameter must lie in the maximal ideal")
        md = ring.mono_degree(mono)
        for i in coeff.coeffs:
            if (md + A.space.degree_of(i)) != 1:
                raise ValueError("gauge terms must have total degree 1")
    term = g.bracket_with(gamma, A) - g.apply_operator(A.delta)
    result = gamma
    k = 0
    factorial = 1
    while not term.is_zero() and k <= order:
        factorial *= (k + 1)
        result = result + term.scale(Fraction(1, factorial))
        term = g.bracket_with(term, A)
        k += 1
    return FormalElement(ring, gamma.space, result.coeffs, min(result.order, order))


def bv_image_basis(A):
    """Canonical basis of Img(Delta), one Element per independent image."""
    space = A.space
    out = []
    for k in space.degrees():
        rows = []
        blk = A.bv.block_at(k)
        if not blk:
            continue
        nrows = len(blk)
        for c in range(len(blk[0])):
            rows.append([blk[r][c] for r in range(nrows)])
        basis_rows, _ = linalg.row_space(rows, nrows)
        for row in basis_rows:
            out.append(_element_from_local(space, k - 1, list(row)))
    return out


def admissible_gauge_basis(A, ring, max_order=None):
    """All (coefficient, monomial) pairs spanning the admissible gauge space.

    Admissible means: coefficient in Img(Delta), monomial in the maximal
    ideal, each term odd of total degree 1;  such parameters act on
    normalized solutions and keep them normalized, so the potential can
    be recomputed and compared.
    """
    max_order = ring.order if max_order is None else max_order
    image = bv_image_basis(A)
    pairs = []
    for mono in ring.monomials(1, max_order):
        md = ring.mono_degree(mono)
        for el in image:
            if el.degree() + md == 1:
                pairs.append((el, mono))
    return pairs


def random_gauge_parameter(A, ring, rng, max_order=None, terms=3):
    """Seeded random admissible gauge parameter (possibly zero)."""
    pairs = admissible_gauge_basis(A, ring, max_order)
    g = FormalElement.zero(ring, A.space)
    if not pairs:
        return g
    for _ in range(min(terms, len(pairs))):
        el, mono = pairs[rng.randrange(len(pairs))]
        coeff = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        if coeff:
            g = g + FormalElement.term(ring, el.scale(coeff), mono)
    return g


def renormalize(A, gamma, gamma_lin=None):
    """B with Delta B = Gamma - Gamma_1 for a gauged solution.

    ``gamma_lin`` is the representative-linear part the solution is
    normalized against (defaults to the order-1 part of ``gamma``).
    Gauging by a parameter with coefficients in the image of the BV
    operator keeps every correction inside that image, so the potential
    of the gauged solution is computed with this B.
    """
    higher = gamma - (gamma.part(1) if gamma_lin is None else gamma_lin)
    if higher.is_zero():
        return FormalElement.zero(gamma.ring, gamma.space, gamma.order)
    return _solve_bv_preimage(A, higher)

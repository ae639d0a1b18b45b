"""Small hand-certified instances used by the test suite and the docs.

Besides the torus models from ``geometry`` this module provides:

* ``build_bv_model``     - truncated polynomial line times an odd generator,
  with either the naive odd Laplacian d/dx d/dxi (which genuinely fails
  the GBV law at the truncation boundary, see the tests) or the weighted
  x d/dx d/dxi, which respects the truncation ideal and is an honest GBV
  structure with nonzero bracket;
* ``build_six_dim_model``   - six dimensions, both differentials nonzero,
  all inclusion conditions hold, the bracket is nonzero on the algebra;
* ``build_eight_dim_model`` - eight dimensions, nonzero bracket on classes
  with vanishing harmonic projection, so the solver produces a genuine
  quadratic (and with the default coupling, all-order) correction;
* ``acyclic_extension``  - tensor with <1, u, du>, the standard
  quasi-isomorphic enlargement;
* ``permuted_copy``      - the same instance under a relabelling, plus the
  relabelling as a morphism.
"""

from fractions import Fraction

from .algebra import DGBVInstance
from .graded import GradedSpace, LinearOperator


def instance_from_tables(basis, mult_entries, delta_entries, bv_entries,
                         integral_entries=None, unit=None, name="instance"):
    """Assemble an instance from label-level tables.

    ``mult_entries``: (a, b, c, coeff) quadruples for e_a e_b = sum c e_c;
    ``delta_entries`` / ``bv_entries``: (from, to, coeff) triples;
    ``integral_entries``: (label, value) pairs.
    """
    space = GradedSpace(basis)
    mult = {}
    for a, b, c, coeff in mult_entries:
        i, j, k = space.index[a], space.index[b], space.index[c]
        row = mult.setdefault((i, j), {})
        row[k] = row.get(k, 0) + Fraction(coeff)
    delta = LinearOperator.from_entries(
        space, space, 1, {(f, t): Fraction(c) for f, t, c in delta_entries})
    bv = LinearOperator.from_entries(
        space, space, -1, {(f, t): Fraction(c) for f, t, c in bv_entries})
    integral = None
    if integral_entries is not None:
        integral = [Fraction(0)] * space.dim
        for label, value in integral_entries:
            integral[space.index[label]] = Fraction(value)
    return DGBVInstance(space, mult, delta, bv, integral=integral, unit=unit,
                        name=name)


def build_bv_model(m=3, weighted=False):
    """k[x]/(x^m) tensor an odd xi, with an odd second-order Laplacian.

    ``weighted=False`` uses d/dx d/dxi: a second-order square-zero
    operator, but it does not preserve the truncation ideal (x^m), so the
    Leibniz law of the derived bracket fails at the boundary.
    ``weighted=True`` uses x d/dx d/dxi, which maps (x^m) into itself and
    gives an honest GBV structure with bracket [x^k * xi] = k x^k.
    """
    if m < 2:
        raise ValueError("need m >= 2")

    def xlab(k):
        return "1" if k == 0 else ("x" if k == 1 else f"x^{k}")

    def xilab(k):
        return "xi" if k == 0 else f"{xlab(k)}*xi"

    basis = [(xlab(k), 0) for k in range(m)] + [(xilab(k), 1) for k in range(m)]
    mult = []
    for i in range(m):
        for j in range(m):
            if i + j < m:
                mult.append((xlab(i), xlab(j), xlab(i + j), 1))
                mult.append((xlab(i), xilab(j), xilab(i + j), 1))
                mult.append((xilab(j), xlab(i), xilab(i + j), 1))
    bv = []
    for k in range(1, m):
        target = xlab(k) if weighted else xlab(k - 1)
        bv.append((xilab(k), target, k))
    name = f"bv_line_m{m}" + ("_weighted" if weighted else "")
    return instance_from_tables(basis, mult, [], bv, integral_entries=None,
                                unit="1", name=name)


def build_six_dim_model():
    """Six dimensions: H = <1, tau>, both differentials nonzero.

    Degrees: 1:0, m:1, v:2, z:2, w:3, tau:3 with delta(m) = z,
    delta(v) = w, Delta(v) = m, Delta(w) = -z, products
    m v = w + tau (and nothing else beyond the unit).  The derived
    bracket satisfies [v * v] = -2(w + tau) != 0 while all brackets of
    the chosen representatives vanish; every inclusion condition holds
    and the integral (the tau-coefficient) is nice.
    """
    basis = [("1", 0), ("m", 1), ("v", 2), ("z", 2), ("w", 3), ("tau", 3)]
    labels = [b[0] for b in basis]
    degs = dict(basis)
    mult = []
    for lbl in labels:
        mult.append(("1", lbl, lbl, 1))
        if lbl != "1":
            mult.append((lbl, "1", lbl, 1))
    mult.append(("m", "v", "w", 1))
    mult.append(("m", "v", "tau", 1))
    sign = 1  # (-1)^{|m||v|} = +1
    mult.append(("v", "m", "w", sign))
    mult.append(("v", "m", "tau", sign))
    delta = [("m", "z", 1), ("v", "w", 1)]
    bv = [("v", "m", 1), ("w", "z", -1)]
    integral = [("tau", 1)]
    return instance_from_tables(basis, mult, delta, bv, integral, unit="1",
                                name="sixdim")


def build_eight_dim_model(coupled=True):
    """Eight dimensions with a nonzero bracket on classes.

    H = <1, a, c, s> in degrees 0, 2, 2, 4 with a^2 = s + s', c^2 = s;
    the square {p; delta p = s'; Delta p = q; delta Delta p = u} couples
    the two differentials.  The self-bracket of the class a is
    [a * a] = Delta(a^2) = -u, which is exact with vanishing harmonic
    part, so the solver produces Gamma_2 = 1/2 q (x^a)^2 and B != 0.
    With ``coupled`` the extra product a q = s' makes the correction
    series run to all orders.
    """
    basis = [("1", 0), ("a", 2), ("c", 2), ("q", 2), ("u", 3), ("p", 3),
             ("s", 4), ("sp", 4)]
    labels = [b[0] for b in basis]
    mult = []
    for lbl in labels:
        mult.append(("1", lbl, lbl, 1))
        if lbl != "1":
            mult.append((lbl, "1", lbl, 1))
    mult += [("a", "a", "s", 1), ("a", "a", "sp", 1), ("c", "c", "s", 1)]
    if coupled:
        mult += [("a", "q", "sp", 1), ("q", "a", "sp", 1)]
    delta = [("q", "u", 1), ("p", "sp", 1)]
    bv = [("p", "q", 1), ("sp", "u", -1)]
    integral = [("s", 1)]
    return instance_from_tables(basis, mult, delta, bv, integral, unit="1",
                                name="eightdim" + ("" if coupled else "_plain"))


def build_ten_dim_model():
    """The coupled eight-dimensional model plus a dual pair of odd classes.

    H = <1, a, c, o, otilde, s> with o otilde = s.  The odd classes give
    the coordinate ring odd variables, so the gauge group of the model is
    nontrivial: g = q x^o x^s is an admissible parameter (coefficient in
    the image of the BV operator, odd, total degree 1) with both a
    nonzero differential and a nonzero bracket against the solution.
    """
    basis = [("1", 0), ("a", 2), ("c", 2), ("q", 2), ("o", 1), ("u", 3),
             ("p", 3), ("ot", 3), ("s", 4), ("sp", 4)]
    labels = [b[0] for b in basis]
    mult = []
    for lbl in labels:
        mult.append(("1", lbl, lbl, 1))
        if lbl != "1":
            mult.append((lbl, "1", lbl, 1))
    mult += [("a", "a", "s", 1), ("a", "a", "sp", 1), ("c", "c", "s", 1),
             ("a", "q", "sp", 1), ("q", "a", "sp", 1),
             ("o", "ot", "s", 1), ("ot", "o", "s", -1)]
    delta = [("q", "u", 1), ("p", "sp", 1)]
    bv = [("p", "q", 1), ("sp", "u", -1)]
    integral = [("s", 1)]
    return instance_from_tables(basis, mult, delta, bv, integral, unit="1",
                                name="tendim")


def tensor_product(A, B, name=None):
    """Graded tensor product of two instances.

    Both differentials extend as D (x) 1 + 1 (x) D with the Koszul sign on
    the second summand; the product picks up (-1)^{|e||b|} for
    (a (x) e)(b (x) f).  Integrals multiply when both are present.  Basis
    labels are "a" for a (x) 1 and "a.e" otherwise.
    """
    sa, sb = A.space, B.space
    if B.unit is None:
        raise ValueError("the second factor needs a unit for the labelling")

    def lab(la, lb):
        return la if lb == B.unit else f"{la}.{lb}"

    basis = [(lab(la, lb), da + db)
             for la, da in sa.basis for lb, db in sb.basis]
    mult = []
    for (i, j), prods_a in A.mult.items():
        la, lb = sa.label_of(i), sa.label_of(j)
        db_deg = sa.degree_of(j)
        for k, ca in prods_a.items():
            lc = sa.label_of(k)
            for (e, f), prods_b in B.mult.items():
                le, lf = sb.label_of(e), sb.label_of(f)
                sign = -1 if (sb.degree_of(e) % 2 and db_deg % 2) else 1
                for g, cb in prods_b.items():
                    mult.append((lab(la, le), lab(lb, lf),
                                 lab(lc, sb.label_of(g)), sign * ca * cb))

    def extended(op_a, op_b):
        entries = []
        for f, t, c in op_a.entries():
            for le, _ in sb.basis:
                entries.append((lab(f, le), lab(t, le), c))
        for f, t, c in op_b.entries():
            for la, da in sa.basis:
                sign = -1 if da % 2 else 1
                entries.append((lab(la, f), lab(la, t), sign * c))
        return entries

    delta = extended(A.delta, B.delta)
    bv = extended(A.bv, B.bv)
    integral = None
    if A.integral is not None and B.integral is not None:
        integral = []
        for i in range(sa.dim):
            if not A.integral[i]:
                continue
            for e in range(sb.dim):
                if B.integral[e]:
                    integral.append((lab(sa.label_of(i), sb.label_of(e)),
                                     A.integral[i] * B.integral[e]))
    unit = None
    if A.unit is not None:
        unit = lab(A.unit, B.unit)
    return instance_from_tables(basis, mult, delta, bv, integral, unit=unit,
                                name=name or f"{A.name}(x){B.name}")


def build_acyclic_pair(u_degree=1):
    """<1, u, delta u> with zero products of the positive part, zero BV.

    delta-acyclic above the unit; the BV operator vanishes, so this only
    extends the delta side.  The functional is the unit coefficient.
    """
    basis = [("1", 0), ("u", u_degree), ("du", u_degree + 1)]
    mult = [("1", "1", "1", 1), ("1", "u", "u", 1), ("u", "1", "u", 1),
            ("1", "du", "du", 1), ("du", "1", "du", 1)]
    delta = [("u", "du", 1)]
    return instance_from_tables(basis, mult, delta, [], [("1", 1)],
                                unit="1", name=f"pair_deg{u_degree}")


def build_square_model():
    """Unit plus one square {p; delta p; Delta p; delta Delta p}.

    Five-dimensional, acyclic above the unit for both differentials, and
    it satisfies both inclusion conditions, so tensoring with it is the
    canonical quasi-isomorphic enlargement inside the full structure.
    """
    basis = [("1", 0), ("k", 0), ("p", 1), ("m", 1), ("z", 2)]
    mult = []
    for lbl in ("1", "k", "p", "m", "z"):
        mult.append(("1", lbl, lbl, 1))
        if lbl != "1":
            mult.append((lbl, "1", lbl, 1))
    delta = [("p", "z", 1), ("k", "m", 1)]
    bv = [("p", "k", 1), ("z", "m", -1)]
    return instance_from_tables(basis, mult, delta, bv, [("1", 1)],
                                unit="1", name="square")


def acyclic_extension(A, u_degree=1):
    """A tensor <1, u, delta u> (BV operator untouched on the new part).

    The inclusion is a morphism and induces an isomorphism on
    delta-cohomology, but it is not a quasi-isomorphism of the full
    structure: the BV cohomology of the extension has triple the rank.
    """
    return tensor_product(A, build_acyclic_pair(u_degree),
                          name=f"{A.name}.acyclic")


def square_extension(A):
    """A tensor the unit-plus-square model: a full quasi-isomorphic
    enlargement, acyclic for both differentials above A."""
    return tensor_product(A, build_square_model(),
                          name=f"{A.name}.square")


def inclusion_morphism(A, AE):
    """The inclusion of A into its acyclic extension, as entry data."""
    return {(lbl, lbl): Fraction(1) for lbl, _ in A.space.basis}


def permuted_copy(A, prefix="P_"):
    """Relabelled copy (permuting the canonical order) plus the relabelling."""
    space = A.space
    mapping = {lbl: f"{prefix}{lbl}" for lbl, _ in space.basis}
    basis = [(mapping[lbl], deg) for lbl, deg in space.basis]
    mult = []
    for (i, j), prods in A.mult.items():
        for k, coeff in prods.items():
            mult.append((mapping[space.label_of(i)],
                         mapping[space.label_of(j)],
                         mapping[space.label_of(k)], coeff))
    delta = [(mapping[f], mapping[t], c) for f, t, c in A.delta.entries()]
    bv = [(mapping[f], mapping[t], c) for f, t, c in A.bv.entries()]
    integral = None
    if A.integral is not None:
        integral = [(mapping[space.label_of(i)], A.integral[i])
                    for i in range(space.dim) if A.integral[i]]
    unit = mapping[A.unit] if A.unit is not None else None
    copy = instance_from_tables(basis, mult, delta, bv, integral, unit=unit,
                                name=f"{A.name}.permuted")
    entries = {(lbl, mapping[lbl]): Fraction(1) for lbl, _ in space.basis}
    return copy, entries

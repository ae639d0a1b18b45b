"""Polynomial polyvector fields and differential forms on R^n.

Terms are (monomial in y^1..y^n) x (sorted tuple of odd generators); the
generators are d/dy^i for polyvector fields and dy^i for forms.  Both
flavours use the same arithmetic; only the reported grading differs
(forms count generators positively, polyvector fields negatively).  All
sign rules reduce to generator parities, so the two gradings agree on
every sign in this module.

Frozen contraction convention:

    i(d_i ^ d_j)(dy^a ^ dy^b) = delta_i^a delta_j^b - delta_i^b delta_j^a,

i.e. a wedge of vectors contracts first factor innermost.  Every sign in
the symplectic dictionary follows from this choice.
"""

from fractions import Fraction
from itertools import combinations

from . import linalg


# -- polynomial coefficient helpers (exponent tuple -> Fraction) -------------

def _padd(p, q):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _pmul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _pdiff(p, i):
    out = {}
    for e, c in p.items():
        if e[i]:
            de = list(e)
            de[i] -= 1
            out[tuple(de)] = out.get(tuple(de), 0) + c * e[i]
    return out


def _merge_gens(u, v):
    """Merge two sorted odd-generator tuples; (sign, merged) or None."""
    if set(u) & set(v):
        return None
    sign = 1
    out = []
    i = j = 0
    while i < len(u) and j < len(v):
        if u[i] < v[j]:
            out.append(u[i])
            i += 1
        else:
            if (len(u) - i) % 2:
                sign = -sign
            out.append(v[j])
            j += 1
    out.extend(u[i:])
    out.extend(v[j:])
    return sign, tuple(out)


class ExteriorPoly:
    """Shared arithmetic of PolyvectorField and PolyForm."""

    kind = None

    def __init__(self, dim, terms=None):
        self.dim = dim
        clean = {}
        for (exps, gens), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[(tuple(exps), tuple(gens))] = c
        self.terms = clean

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    @classmethod
    def monomial(cls, dim, coeff, exps, gens):
        gens = tuple(gens)
        if len(set(gens)) != len(gens) or list(gens) != sorted(gens):
            raise ValueError("generator tuple must be strictly increasing")
        return cls(dim, {(tuple(exps), gens): Fraction(coeff)})

    @classmethod
    def function(cls, dim, poly):
        return cls(dim, {(e, ()): c for e, c in poly.items()})

    def is_zero(self):
        return not self.terms

    def _like(self, terms):
        return type(self)(self.dim, terms)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self._like(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, scalar):
        scalar = Fraction(scalar)
        return self._like({k: scalar * c for k, c in self.terms.items()})

    def wedge(self, other):
        self._check(other)
        out = {}
        for (e1, g1), c1 in self.terms.items():
            for (e2, g2), c2 in other.terms.items():
                merged = _merge_gens(g1, g2)
                if merged is None:
                    continue
                sign, gens = merged
                e = tuple(a + b for a, b in zip(e1, e2))
                key = (e, gens)
                out[key] = out.get(key, 0) + sign * c1 * c2
        return self._like(out)

    def _check(self, other):
        if self.dim != other.dim or type(self) is not type(other):
            raise ValueError("operands have different dimension or kind")

    def generator_degrees(self):
        return {len(g) for (_, g) in self.terms}

    def max_coeff_degree(self):
        return max((sum(e) for (e, _) in self.terms), default=0)

    def __eq__(self, other):
        return (type(self) is type(other) and self.dim == other.dim
                and self.terms == other.terms)

    def _gen_name(self, i):
        raise NotImplementedError

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (e, g), c in sorted(self.terms.items(),
                                key=lambda kv: (len(kv[0][1]), kv[0][1], kv[0][0])):
            mono = "*".join(f"y{i + 1}^{p}" if p > 1 else f"y{i + 1}"
                            for i, p in enumerate(e) if p)
            gens = "^".join(self._gen_name(i) for i in g)
            parts = [s for s in (str(c), mono, gens) if s]
            bits.append("*".join(parts))
        return " + ".join(bits)


class PolyvectorField(ExteriorPoly):
    """Polynomial multivector field; p generators count as degree -p."""

    kind = "vector"

    def degree(self):
        degs = {-len(g) for (_, g) in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def _gen_name(self, i):
        return f"d{i + 1}"

    def apply_to(self, poly):
        """A 1-vector field acting on a polynomial coefficient dict."""
        out = {}
        for (e, g), c in self.terms.items():
            if len(g) != 1:
                raise ValueError("only vector fields act on functions")
            out = _padd(out, {k: c * v
                              for k, v in _pmul(dict([(e, Fraction(1))]),
                                                _pdiff(poly, g[0])).items()})
        return out


class PolyForm(ExteriorPoly):
    """Polynomial differential form; k generators count as degree +k."""

    kind = "form"

    def degree(self):
        degs = {len(g) for (_, g) in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def _gen_name(self, i):
        return f"dy{i + 1}"


def _lie_bracket_terms(e1, i, e2, j, dim):
    """[f d_i, g d_j] for monomial coefficients f = y^e1, g = y^e2."""
    f = {e1: Fraction(1)}
    g = {e2: Fraction(1)}
    out = {}
    for e, c in _pmul(f, _pdiff(g, i)).items():
        out[(e, (j,))] = out.get((e, (j,)), 0) + c
    for e, c in _pmul(g, _pdiff(f, j)).items():
        out[(e, (i,))] = out.get((e, (i,)), 0) - c
    return out


def schouten_bracket(P, Q):
    """Schouten-Nijenhuis bracket by the local decomposable formula.

    For X_1 ^ .. ^ X_p and Y_1 ^ .. ^ Y_q (vector fields) the bracket is

      sum_{i,j} (-1)^{i+j} [X_i, Y_j] ^ X_1..^X_i^..X_p ^ Y_1..^Y_j^..Y_q

    extended bilinearly, with a term's polynomial coefficient carried by
    its first factor.  A function g counts as a 0-vector with
    [X_1^..^X_p, g] = sum_i (-1)^{i+1} X_i(g) X_1..^X_i^..X_p and
    [g, P] = (-1)^p [P, g].  This is the sign for which the bracket
    honestly satisfies graded antisymmetry, Jacobi and the Leibniz law in
    the multivector grading; the variant with an extra (-1)^{p+1} does
    not, and the two agree whenever p is odd and on every Poisson
    condition [w, w] = 0.
    """
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    dim = P.dim
    out = PolyvectorField.zero(dim)
    for (e1, g1), c1 in P.terms.items():
        for (e2, g2), c2 in Q.terms.items():
            term = _schouten_term(dim, e1, g1, e2, g2)
            out = out + term.scale(c1 * c2)
    return out


def _vector_factors(dim, exps, gens):
    """y^e d_{i1} ^ d_{i2} ^ ... as a list of 1-vector terms."""
    first = [(exps, gens[0])]
    zero = tuple([0] * dim)
    return first + [(zero, g) for g in gens[1:]]


def _schouten_term(dim, e1, g1, e2, g2):
    p, q = len(g1), len(g2)
    zero_exp = tuple([0] * dim)
    if p == 0 and q == 0:
        return PolyvectorField.zero(dim)
    if q == 0:
        xs = _vector_factors(dim, e1, g1)
        out = PolyvectorField.zero(dim)
        for i, (ex, gi) in enumerate(xs, start=1):
            coeff = _pmul({ex: Fraction(1)}, _pdiff({e2: Fraction(1)}, gi))
            if not coeff:
                continue
            rest = PolyvectorField.monomial(dim, 1, zero_exp, ())
            for k, (ex2, gk) in enumerate(xs, start=1):
                if k == i:
                    continue
                rest = rest.wedge(PolyvectorField.monomial(dim, 1, ex2, (gk,)))
            sign = -1 if (i + 1) % 2 else 1
            out = out + PolyvectorField.function(dim, coeff).wedge(rest).scale(sign)
        return out
    if p == 0:
        sign = -1 if q % 2 else 1
        return _schouten_term(dim, e2, g2, e1, g1).scale(sign)
    xs = _vector_factors(dim, e1, g1)
    ys = _vector_factors(dim, e2, g2)
    out = PolyvectorField.zero(dim)
    for i, (ex, gi) in enumerate(xs, start=1):
        for j, (ey, gj) in enumerate(ys, start=1):
            lie = _lie_bracket_terms(ex, gi, ey, gj, dim)
            if not lie:
                continue
            rest = PolyvectorField.monomial(dim, 1, zero_exp, ())
            for k, (ex2, gk) in enumerate(xs, start=1):
                if k != i:
                    rest = rest.wedge(PolyvectorField.monomial(dim, 1, ex2, (gk,)))
            for k, (ey2, gk) in enumerate(ys, start=1):
                if k != j:
                    rest = rest.wedge(PolyvectorField.monomial(dim, 1, ey2, (gk,)))
            sign = -1 if (i + j) % 2 else 1
            out = out + PolyvectorField(dim, lie).wedge(rest).scale(sign)
    return out


class NotPoissonError(ValueError):
    pass


def poisson_sigma(w, P, verify=False):
    """sigma(P) = [w, P]; with ``verify`` the bivector is checked Poisson."""
    if verify and not schouten_bracket(w, w).is_zero():
        raise NotPoissonError("[w, w] != 0")
    return schouten_bracket(w, P)


# -- forms: d, contraction, Koszul operator ----------------------------------

def exterior_derivative(phi):
    out = {}
    for (e, g), c in phi.terms.items():
        for i in range(phi.dim):
            d = _pdiff({e: c}, i)
            for e2, c2 in d.items():
                merged = _merge_gens((i,), g)
                if merged is None:
                    continue
                sign, gens = merged
                key = (e2, gens)
                out[key] = out.get(key, 0) + sign * c2
    return PolyForm(phi.dim, out)


def _iota(i, phi):
    """Interior product by d_i (an antiderivation)."""
    out = {}
    for (e, g), c in phi.terms.items():
        for pos, gen in enumerate(g):
            if gen == i:
                sign = -1 if pos % 2 else 1
                key = (e, g[:pos] + g[pos + 1:])
                out[key] = out.get(key, 0) + sign * c
                break
    return PolyForm(phi.dim, out)


def contract_bivector(w, phi):
    """i(w) phi with the frozen convention (first factor innermost)."""
    if w.dim != phi.dim:
        raise ValueError("dimension mismatch")
    out = PolyForm.zero(phi.dim)
    for (e, g), c in w.terms.items():
        if len(g) != 2:
            raise ValueError("contraction defined for bivectors")
        i, j = g
        part = _iota(j, _iota(i, phi))
        part = PolyForm.function(phi.dim, {e: c}).wedge(part)
        out = out + part
    return out


def koszul_delta(w, phi, verify=False):
    """Degree -1 operator [i(w), d] phi = i(w)(d phi) - d(i(w) phi)."""
    if verify and not schouten_bracket(w, w).is_zero():
        raise NotPoissonError("[w, w] != 0")
    return contract_bivector(w, exterior_derivative(phi)) \
        - exterior_derivative(contract_bivector(w, phi))


def form_bracket(w, alpha, beta):
    """Odd bracket on forms derived from the Koszul operator."""
    da = alpha.degree()
    if da is None:
        raise ValueError("bracket needs a homogeneous first argument")
    sign = -1 if da % 2 else 1
    term = koszul_delta(w, alpha.wedge(beta)) \
        - koszul_delta(w, alpha).wedge(beta)
    inner = alpha.wedge(koszul_delta(w, beta))
    term = term - inner if sign == 1 else term + inner
    return term.scale(sign)


# -- symplectic sharp/flat ----------------------------------------------------

def sharp_flat(omega0):
    """Index raising and lowering for a constant nondegenerate 2-form.

    Returns ``(sharp, flat, w)``: sharp maps forms to polyvector fields
    multiplicatively (via the inverse pairing on 1-forms), flat is its
    inverse, and w is the induced Poisson bivector, oriented so that the
    exterior derivative is recovered as the odd bracket with the 2-form:
    d = [omega0 * . ] for the Koszul operator of w.  With the frozen
    contraction convention that pins w = -sharp(omega0).
    """
    dim = omega0.dim
    zero_exp = tuple([0] * dim)
    mat = [[Fraction(0)] * dim for _ in range(dim)]
    for (e, g), c in omega0.terms.items():
        if len(g) != 2 or any(e):
            raise ValueError("need a constant-coefficient 2-form")
        i, j = g
        mat[i][j] += c
        mat[j][i] -= c
    inv = linalg.invert(mat)
    if inv is None:
        raise ValueError("2-form is degenerate")

    def flat(P):
        out = PolyForm.zero(dim)
        for (e, g), c in P.terms.items():
            part = PolyForm.monomial(dim, c, e, ())
            for i in g:
                one = PolyForm(dim, {(zero_exp, (b,)): mat[i][b]
                                     for b in range(dim) if mat[i][b]})
                part = part.wedge(one)
            out = out + part
        return out

    def sharp(phi):
        out = PolyvectorField.zero(dim)
        for (e, g), c in phi.terms.items():
            part = PolyvectorField.monomial(dim, c, e, ())
            for a in g:
                one = PolyvectorField(dim, {(zero_exp, (i,)): inv[a][i]
                                            for i in range(dim) if inv[a][i]})
                part = part.wedge(one)
            out = out + part
        return out

    w = sharp(omega0).scale(-1)
    if not schouten_bracket(w, w).is_zero():
        raise ArithmeticError("sharp of the 2-form is not Poisson")
    for phi in form_generators(dim, max_coeff_degree=1, max_form_degree=2):
        if exterior_derivative(phi) != form_bracket(w, omega0, phi):
            raise ArithmeticError(
                "d != [omega * .] on a generator; orientation broken")
    return sharp, flat, w


def graded_sharp(sharp, phi):
    """sharp rescaled by (-1)^{k(k-1)/2} on k-forms.

    This is the grading of the index-raising map under which the Koszul
    bracket of forms matches the Schouten bracket of the images up to
    ``bracket_transport_sign``.
    """
    dim = phi.dim
    out = PolyvectorField.zero(dim)
    for (e, g), c in phi.terms.items():
        k = len(g)
        sign = -1 if (k * (k - 1) // 2) % 2 else 1
        out = out + sharp(PolyForm(dim, {(e, g): c})).scale(sign)
    return out


def bracket_transport_sign(ka, kb):
    """Sign relating the two brackets under the graded index raising:

        graded_sharp([a * b]_Koszul) = sign * [graded_sharp a, graded_sharp b]_S.

    Equals -1 exactly when both form degrees are even and at least 2;
    verified exhaustively on desk-scale generators (no rational rescaling
    of the index raising can remove it).
    """
    return -1 if (ka % 2 == 0 and kb % 2 == 0 and ka >= 2 and kb >= 2) else 1


def standard_symplectic_form(n):
    """omega0 = dy1^dy2 + dy3^dy4 + ... on R^n (n even)."""
    if n % 2:
        raise ValueError("need an even dimension")
    zero_exp = tuple([0] * n)
    terms = {(zero_exp, (2 * k, 2 * k + 1)): Fraction(1) for k in range(n // 2)}
    return PolyForm(n, terms)


def form_generators(n, max_coeff_degree=2, max_form_degree=None):
    """Monomial forms y^e dy^I with |e| <= max_coeff_degree; a test basis."""
    from itertools import product
    max_form_degree = n if max_form_degree is None else max_form_degree
    exps = [e for e in product(range(max_coeff_degree + 1), repeat=n)
            if sum(e) <= max_coeff_degree]
    gens = []
    for k in range(max_form_degree + 1):
        gens.extend(combinations(range(n), k))
    return [PolyForm.monomial(n, 1, e, g) for e in exps for g in gens]


# -- the torus model ----------------------------------------------------------

def build_torus_model(n, w=None):
    """Constant-coefficient exterior algebra on n odd generators.

    The differential vanishes (there is nothing to differentiate), and the
    Koszul operator of any constant bivector is checked to vanish on the
    constant forms, so the BV operator is zero; the integral extracts the
    top coefficient.  The result is the standard input for the full
    Frobenius pipeline.
    """
    from .graded import GradedSpace, LinearOperator
    from .algebra import DGBVInstance

    if not 1 <= n <= 8:
        raise ValueError("torus dimension must be between 1 and 8")
    if w is not None:
        if w.dim != n:
            raise ValueError("bivector dimension mismatch")
        if not schouten_bracket(w, w).is_zero():
            raise NotPoissonError("[w, w] != 0")
        zero_exp = tuple([0] * n)
        for subset in _subsets(n):
            phi = PolyForm.monomial(n, 1, zero_exp, subset)
            if not koszul_delta(w, phi).is_zero():
                raise ArithmeticError(
                    "Koszul operator of a constant bivector must vanish "
                    "on constant forms")

    def label(subset):
        return "t" + "".join(str(i + 1) for i in subset) if subset else "1"

    basis = [(label(s), len(s)) for s in _subsets(n)]
    space = GradedSpace(basis)
    mult = {}
    for s in _subsets(n):
        for t in _subsets(n):
            if set(s) & set(t):
                continue
            merged = _merge_gens(s, t)
            sign, gens = merged
            i = space.index[label(s)]
            j = space.index[label(t)]
            k = space.index[label(gens)]
            mult[(i, j)] = {k: Fraction(sign)}
    integral = [Fraction(0)] * space.dim
    integral[space.index[label(tuple(range(n)))]] = Fraction(1)
    return DGBVInstance(
        space, mult,
        LinearOperator.zero(space, space, 1),
        LinearOperator.zero(space, space, -1),
        integral=integral, unit="1", name=f"torus{n}")


def _subsets(n):
    out = []
    for k in range(n + 1):
        out.extend(combinations(range(n), k))
    return out

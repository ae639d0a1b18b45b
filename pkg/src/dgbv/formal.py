"""Supercommutative coordinate rings and truncated formal series.

One graded coordinate x^a is attached to each cohomology class e_a, with
deg x^a = 2 - |e_a| and the parity of e_a, so that the universal solution
Gamma = sum e_a x^a + ... is uniformly of total degree 2.  Monomials are
stored as sorted index tuples; odd coordinates square to zero and sorting
signs follow the Koszul rule.

Two kinds of series live here:

* FormalElement - algebra-valued: finite sums (coefficient in A) x
  (monomial), the home of Gamma, B and gauge parameters;
* SuperPolynomial - scalar-valued, the home of the potential.

Every series carries ``order``, the polynomial order through which its
coefficients are reliable; arithmetic propagates reliability and drops
monomials beyond it, so a truncated identity is an exact statement about
the stored coefficients.
"""

from fractions import Fraction


class CoordinateRing:
    """Graded supercommutative coordinates with a hard truncation order."""

    __slots__ = ("names", "degrees", "parities", "order")

    def __init__(self, names, degrees, order):
        self.names = tuple(str(n) for n in names)
        self.degrees = tuple(int(d) for d in degrees)
        self.parities = tuple(d % 2 for d in self.degrees)
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        self.order = int(order)

    @property
    def nvars(self):
        return len(self.names)

    def mono_mul(self, u, v):
        """Merge two sorted monomials; returns (sign, monomial) or None.

        None means the product vanishes (an odd coordinate repeated).
        """
        if not u:
            return 1, v
        if not v:
            return 1, u
        odd_suffix = [0] * (len(u) + 1)
        for i in reversed(range(len(u))):
            odd_suffix[i] = odd_suffix[i + 1] + self.parities[u[i]]
        sign = 1
        out = []
        i = j = 0
        while i < len(u) and j < len(v):
            if u[i] <= v[j]:
                if u[i] == v[j] and self.parities[u[i]]:
                    return None
                out.append(u[i])
                i += 1
            else:
                x = v[j]
                if self.parities[x] and (odd_suffix[i] & 1):
                    sign = -sign
                out.append(x)
                j += 1
        out.extend(u[i:])
        out.extend(v[j:])
        return sign, tuple(out)

    def mono_degree(self, u):
        return sum(self.degrees[i] for i in u)

    def mono_parity(self, u):
        return sum(self.parities[i] for i in u) & 1

    def mono_str(self, u):
        if not u:
            return "1"
        bits = []
        i = 0
        while i < len(u):
            j = i
            while j < len(u) and u[j] == u[i]:
                j += 1
            name = self.names[u[i]]
            bits.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(bits)

    def monomials(self, min_order=1, max_order=None):
        """All monomials with min_order <= length <= max_order, sorted."""
        from itertools import combinations_with_replacement
        max_order = self.order if max_order is None else max_order
        out = []
        for k in range(min_order, max_order + 1):
            for combo in combinations_with_replacement(range(self.nvars), k):
                ok = True
                for a in range(len(combo) - 1):
                    if combo[a] == combo[a + 1] and self.parities[combo[a]]:
                        ok = False
                        break
                if ok:
                    out.append(combo)
        return out

    def __eq__(self, other):
        return (isinstance(other, CoordinateRing) and self.names == other.names
                and self.degrees == other.degrees and self.order == other.order)

    def __hash__(self):
        return hash((self.names, self.degrees, self.order))

    def __repr__(self):
        return f"CoordinateRing({len(self.names)} vars, order={self.order})"


def _min_order(coeffs, cap):
    live = [len(m) for m, c in coeffs.items() if not _is_zero_coeff(c)]
    return min(live) if live else cap + 1


def _is_zero_coeff(c):
    return c.is_zero() if hasattr(c, "is_zero") else not c


class FormalElement:
    """Algebra-valued supercommutative polynomial, truncated at ``order``."""

    __slots__ = ("ring", "space", "coeffs", "order")

    def __init__(self, ring, space, coeffs, order=None):
        self.ring = ring
        self.space = space
        self.order = ring.order if order is None else min(order, ring.order)
        self.coeffs = {m: c for m, c in coeffs.items()
                       if len(m) <= self.order and not c.is_zero()}

    @classmethod
    def zero(cls, ring, space, order=None):
        return cls(ring, space, {}, order)

    @classmethod
    def constant(cls, ring, element, order=None):
        return cls(ring, element.space, {(): element}, order)

    @classmethod
    def term(cls, ring, element, mono, order=None):
        return cls(ring, element.space, {tuple(mono): element}, order)

    def is_zero(self):
        return not self.coeffs

    def low(self):
        return _min_order(self.coeffs, self.ring.order)

    def part(self, k):
        """Sum of the terms of polynomial order exactly k."""
        return FormalElement(self.ring, self.space,
                             {m: c for m, c in self.coeffs.items()
                              if len(m) == k}, self.order)

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out[m] + c if m in out else c
        return FormalElement(self.ring, self.space, out,
                             min(self.order, other.order))

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, scalar):
        scalar = Fraction(scalar)
        return FormalElement(self.ring, self.space,
                             {m: c.scale(scalar) for m, c in self.coeffs.items()},
                             self.order)

    def _check(self, other):
        if self.ring != other.ring or self.space != other.space:
            raise ValueError("formal elements over different rings or spaces")

    def _bilinear(self, other, pairing):
        """Extend a bilinear operation on A to A (x) K with Koszul signs.

        pairing(a, b) acts on algebra elements; moving the monomial of the
        left term past the right coefficient costs (-1)^{p(u) p(b)}.
        """
        self._check(other)
        ring = self.ring
        order = min(ring.order,
                    self.order + other.low(), other.order + self.low())
        acc = {}
        for u, c in self.coeffs.items():
            pu = ring.mono_parity(u)
            for v, d in other.coeffs.items():
                if len(u) + len(v) > order:
                    continue
                mm = ring.mono_mul(u, v)
                if mm is None:
                    continue
                sign, w = mm
                if pu:
                    evens = {i: x for i, x in d.coeffs.items()
                             if d.space.degree_of(i) % 2 == 0}
                    odds = {i: x for i, x in d.coeffs.items()
                            if d.space.degree_of(i) % 2}
                    val = self.space.zero()
                    if evens:
                        val = val + pairing(c, type(d)(d.space, evens)).scale(sign)
                    if odds:
                        val = val + pairing(c, type(d)(d.space, odds)).scale(-sign)
                else:
                    val = pairing(c, d).scale(sign)
                if val.is_zero():
                    continue
                acc[w] = acc[w] + val if w in acc else val
        return FormalElement(ring, self.space, acc, order)

    def wedge(self, other, instance):
        return self._bilinear(other, instance.multiply)

    def bracket_with(self, other, instance):
        return self._bilinear(other, instance.bracket)

    def apply_operator(self, op):
        out = {}
        for m, c in self.coeffs.items():
            v = op(c)
            if not v.is_zero():
                out[m] = v
        return FormalElement(self.ring, op.target, out, self.order)

    def contract(self, direction):
        """Right derivation by sum_a v_a d/dx^a (constant rational v).

        Removing an occurrence of x^a costs the parity of x^a against all
        coordinates to its right.  Reliability drops by one order.
        """
        ring = self.ring
        out = {}
        for u, c in self.coeffs.items():
            for j in range(len(u)):
                a = u[j]
                coeff = direction.get(a, 0)
                if not coeff:
                    continue
                if ring.parities[a]:
                    suffix = sum(ring.parities[x] for x in u[j + 1:]) & 1
                    sgn = -1 if suffix else 1
                else:
                    sgn = 1
                w = u[:j] + u[j + 1:]
                val = c.scale(Fraction(coeff) * sgn)
                if w in out:
                    out[w] = out[w] + val
                else:
                    out[w] = val
        return FormalElement(ring, self.space, out, max(self.order - 1, 0))

    def integrate(self, instance):
        """Apply the integral coefficient-wise; a scalar polynomial."""
        out = {}
        for m, c in self.coeffs.items():
            val = instance.integrate(c)
            if val:
                out[m] = val
        return SuperPolynomial(self.ring, out, self.order)

    def total_degrees(self):
        degs = set()
        for m, c in self.coeffs.items():
            md = self.ring.mono_degree(m)
            for i in c.coeffs:
                degs.add(md + c.space.degree_of(i))
        return degs

    def terms_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __eq__(self, other):
        return (isinstance(other, FormalElement) and self.ring == other.ring
                and self.space == other.space and self.coeffs == other.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = [f"({c!r})*{self.ring.mono_str(m)}"
                for m, c in self.terms_sorted()]
        return " + ".join(bits)


class SuperPolynomial:
    """Scalar supercommutative polynomial over a CoordinateRing."""

    __slots__ = ("ring", "coeffs", "order")

    def __init__(self, ring, coeffs, order=None):
        self.ring = ring
        self.order = ring.order if order is None else min(order, ring.order)
        self.coeffs = {m: Fraction(c) for m, c in coeffs.items()
                       if len(m) <= self.order and c}

    @classmethod
    def zero(cls, ring, order=None):
        return cls(ring, {}, order)

    @classmethod
    def constant(cls, ring, value, order=None):
        return cls(ring, {(): Fraction(value)}, order)

    def is_zero(self):
        return not self.coeffs

    def low(self):
        return _min_order(self.coeffs, self.ring.order)

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return SuperPolynomial(self.ring, out, min(self.order, other.order))

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, scalar):
        scalar = Fraction(scalar)
        return SuperPolynomial(self.ring,
                               {m: scalar * c for m, c in self.coeffs.items()},
                               self.order)

    def __mul__(self, other):
        ring = self.ring
        order = min(ring.order,
                    self.order + other.low(), other.order + self.low())
        out = {}
        for u, c in self.coeffs.items():
            for v, d in other.coeffs.items():
                if len(u) + len(v) > order:
                    continue
                mm = ring.mono_mul(u, v)
                if mm is None:
                    continue
                sign, w = mm
                out[w] = out.get(w, 0) + sign * c * d
        return SuperPolynomial(ring, out, order)

    def left_derivative(self, a):
        """Graded partial from the left with respect to x^a."""
        ring = self.ring
        out = {}
        for u, c in self.coeffs.items():
            prefix_parity = 0
            for j in range(len(u)):
                if u[j] == a:
                    sgn = -1 if (ring.parities[a] and prefix_parity) else 1
                    w = u[:j] + u[j + 1:]
                    out[w] = out.get(w, 0) + sgn * c
                prefix_parity ^= ring.parities[u[j]]
        return SuperPolynomial(ring, out, max(self.order - 1, 0))

    def right_contract(self, direction):
        """Right derivation by sum_a v_a d/dx^a, matching FormalElement."""
        ring = self.ring
        out = {}
        for u, c in self.coeffs.items():
            for j in range(len(u)):
                a = u[j]
                coeff = direction.get(a, 0)
                if not coeff:
                    continue
                if ring.parities[a]:
                    suffix = sum(ring.parities[x] for x in u[j + 1:]) & 1
                    sgn = -1 if suffix else 1
                else:
                    sgn = 1
                w = u[:j] + u[j + 1:]
                out[w] = out.get(w, 0) + sgn * Fraction(coeff) * c
        return SuperPolynomial(ring, out, max(self.order - 1, 0))

    def substitute(self, matrix, target_ring):
        """Linear change of coordinates x^b -> sum_a matrix[b][a] y^a.

        The substitution must preserve degree and parity variable-wise,
        which holds whenever the matrix comes from a degree-0 isomorphism
        of the underlying class bases.
        """
        linear = []
        for b in range(self.ring.nvars):
            linear.append(SuperPolynomial(
                target_ring,
                {(a,): matrix[b][a] for a in range(target_ring.nvars)
                 if matrix[b][a]},
                order=target_ring.order))
        out = SuperPolynomial.zero(target_ring, order=self.order)
        for u, c in self.coeffs.items():
            prod = SuperPolynomial.constant(target_ring, c, order=self.order)
            for b in u:
                prod = prod * linear[b]
            out = out + prod
        return SuperPolynomial(target_ring, out.coeffs, self.order)

    def coordinate_degrees(self):
        return {self.ring.mono_degree(m) for m in self.coeffs}

    def terms_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __eq__(self, other):
        return (isinstance(other, SuperPolynomial) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = [f"{c}*{self.ring.mono_str(m)}" for m, c in self.terms_sorted()]
        return " + ".join(bits)

"""Graded vector spaces over Q with Koszul sign bookkeeping.

A GradedSpace is a finite list of labelled basis vectors, each with an
integer degree (negative degrees are allowed).  The canonical basis order
is degree ascending, then label lexicographic; every matrix, report and
serialisation in the package uses this order, so outputs are reproducible
byte for byte.

Scalars are exact rationals (``fractions.Fraction``); no floating point
appears anywhere in the package.
"""

from fractions import Fraction

from . import linalg


def koszul_sign(perm, degrees):
    """Sign of reordering homogeneous factors by a permutation.

    ``perm[i]`` is the original position of the factor that ends up in
    slot i, so ``perm = [2, 0, 1]`` moves the last of three factors to the
    front.  Each transposition of two odd-degree factors contributes -1.
    """
    if len(perm) != len(degrees):
        raise ValueError("permutation and degree list have different lengths")
    if sorted(perm) != list(range(len(perm))):
        raise ValueError("not a permutation of 0..k-1")
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j] and degrees[perm[i]] % 2 and degrees[perm[j]] % 2:
                sign = -sign
    return sign


class GradedSpace:
    """Finite-dimensional Z-graded space with a labelled homogeneous basis."""

    __slots__ = ("basis", "index", "_by_degree", "_positions")

    def __init__(self, basis):
        basis = [(str(label), int(degree)) for label, degree in basis]
        basis.sort(key=lambda t: (t[1], t[0]))
        labels = [b[0] for b in basis]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate basis labels")
        self.basis = tuple(basis)
        self.index = {label: i for i, (label, _) in enumerate(self.basis)}
        by_degree = {}
        positions = []
        for i, (_, deg) in enumerate(self.basis):
            block = by_degree.setdefault(deg, [])
            positions.append((deg, len(block)))
            block.append(i)
        self._by_degree = {d: tuple(ix) for d, ix in by_degree.items()}
        self._positions = tuple(positions)

    @property
    def dim(self):
        return len(self.basis)

    def degrees(self):
        return sorted(self._by_degree)

    def dim_at(self, degree):
        return len(self._by_degree.get(degree, ()))

    def indices_at(self, degree):
        return self._by_degree.get(degree, ())

    def degree_of(self, i):
        return self.basis[i][1]

    def label_of(self, i):
        return self.basis[i][0]

    def position_of(self, i):
        """(degree, position inside that degree block)."""
        return self._positions[i]

    def global_index(self, degree, pos):
        return self._by_degree[degree][pos]

    def basis_element(self, label):
        return Element(self, {self.index[label]: Fraction(1)})

    def zero(self):
        return Element(self, {})

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        degs = {d: self.dim_at(d) for d in self.degrees()}
        return f"GradedSpace(dim={self.dim}, dims_by_degree={degs})"


class Element:
    """Sparse vector in a GradedSpace: map from basis index to Fraction."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space, coeffs):
        self.space = space
        self.coeffs = {i: Fraction(c) for i, c in coeffs.items() if c}

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Homogeneous degree, or None for 0 or mixed elements."""
        degs = {self.space.degree_of(i) for i in self.coeffs}
        if len(degs) == 1:
            return degs.pop()
        return None

    def homogeneous_parts(self):
        parts = {}
        for i, c in self.coeffs.items():
            parts.setdefault(self.space.degree_of(i), {})[i] = c
        return {d: Element(self.space, cs) for d, cs in sorted(parts.items())}

    def __add__(self, other):
        if self.space != other.space:
            raise ValueError("elements live in different spaces")
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, 0) + c
        return Element(self.space, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element(self.space, {i: -c for i, c in self.coeffs.items()})

    def scale(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return self.space.zero()
        return Element(self.space, {i: scalar * c for i, c in self.coeffs.items()})

    __rmul__ = scale

    def __eq__(self, other):
        return (isinstance(other, Element) and self.space == other.space
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.space, tuple(sorted(self.coeffs.items()))))

    def to_vector(self):
        return tuple(self.coeffs.get(i, Fraction(0)) for i in range(self.space.dim))

    @classmethod
    def from_vector(cls, space, vec):
        return cls(space, {i: v for i, v in enumerate(vec) if v})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for i in sorted(self.coeffs):
            c = self.coeffs[i]
            lbl = self.space.label_of(i)
            bits.append(f"{c}*{lbl}" if c != 1 else lbl)
        return " + ".join(bits).replace("+ -", "- ")


class LinearOperator:
    """Degree-homogeneous linear map stored as dense per-degree blocks.

    The block at source degree k is a (dim_target(k+d)) x (dim_source(k))
    matrix; absent blocks are zero.  Blocks from degrees where either side
    is trivial are never stored.
    """

    __slots__ = ("source", "target", "degree", "blocks")

    def __init__(self, source, target, degree, blocks):
        self.source = source
        self.target = target
        self.degree = int(degree)
        clean = {}
        for k, mat in blocks.items():
            rows = target.dim_at(k + self.degree)
            cols = source.dim_at(k)
            if rows == 0 or cols == 0:
                continue
            if len(mat) != rows or any(len(r) != cols for r in mat):
                raise ValueError(f"block at degree {k} has wrong shape")
            mat = tuple(tuple(Fraction(x) for x in row) for row in mat)
            if any(any(row) for row in mat):
                clean[k] = mat
        self.blocks = clean

    @classmethod
    def zero(cls, source, target=None, degree=0):
        return cls(source, target or source, degree, {})

    @classmethod
    def identity(cls, space):
        blocks = {}
        for d in space.degrees():
            n = space.dim_at(d)
            blocks[d] = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        return cls(space, space, 0, blocks)

    @classmethod
    def from_entries(cls, source, target, degree, entries):
        """Build from {(from_label, to_label): coefficient} data."""
        blocks = {}
        for (frm, to), coeff in entries.items():
            i = source.index[frm]
            j = target.index[to]
            kf, pf = source.position_of(i)
            kt, pt = target.position_of(j)
            if kt - kf != degree:
                raise ValueError(
                    f"entry {frm} -> {to} violates operator degree {degree}")
            block = blocks.setdefault(
                kf, [[Fraction(0)] * source.dim_at(kf)
                     for _ in range(target.dim_at(kf + degree))])
            block[pt][pf] += Fraction(coeff)
        return cls(source, target, degree, blocks)

    def block_at(self, k):
        rows = self.target.dim_at(k + self.degree)
        cols = self.source.dim_at(k)
        blk = self.blocks.get(k)
        if blk is not None:
            return [list(r) for r in blk]
        return [[Fraction(0)] * cols for _ in range(rows)]

    def __call__(self, v):
        if v.space != self.source:
            raise ValueError("element not in operator source space")
        out = {}
        for i, c in v.coeffs.items():
            k, pos = self.source.position_of(i)
            blk = self.blocks.get(k)
            if blk is None:
                continue
            for r, row in enumerate(blk):
                x = row[pos]
                if x:
                    j = self.target.global_index(k + self.degree, r)
                    out[j] = out.get(j, 0) + c * x
        return Element(self.target, out)

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise ValueError("operators not composable")
        deg = self.degree + other.degree
        blocks = {}
        for k, b in other.blocks.items():
            a = self.blocks.get(k + other.degree)
            if a is None:
                continue
            prod = linalg.mat_mul([list(r) for r in a], [list(r) for r in b])
            if prod:
                blocks[k] = prod
        return LinearOperator(other.source, self.target, deg, blocks)

    def __add__(self, other):
        if (other.source != self.source or other.target != self.target
                or other.degree != self.degree):
            raise ValueError("operator shapes differ")
        blocks = {}
        for k in set(self.blocks) | set(other.blocks):
            a = self.block_at(k)
            b = other.block_at(k)
            blocks[k] = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
        return LinearOperator(self.source, self.target, self.degree, blocks)

    def scale(self, scalar):
        scalar = Fraction(scalar)
        blocks = {k: [[scalar * x for x in row] for row in blk]
                  for k, blk in self.blocks.items()}
        return LinearOperator(self.source, self.target, self.degree, blocks)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.blocks

    def __eq__(self, other):
        return (isinstance(other, LinearOperator)
                and self.source == other.source and self.target == other.target
                and self.degree == other.degree and self.blocks == other.blocks)

    def entries(self):
        """Sparse (from_label, to_label, coefficient) triples, canonical order."""
        out = []
        for k in sorted(self.blocks):
            blk = self.blocks[k]
            for r, row in enumerate(blk):
                for c, x in enumerate(row):
                    if x:
                        frm = self.source.global_index(k, c)
                        to = self.target.global_index(k + self.degree, r)
                        out.append((self.source.label_of(frm),
                                    self.target.label_of(to), x))
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def __repr__(self):
        return (f"LinearOperator(degree={self.degree}, "
                f"entries={len(self.entries())})")


def compose(f, g):
    """f o g (apply g first)."""
    return f.compose(g)


def anticommutator(f, g):
    return f.compose(g) + g.compose(f)

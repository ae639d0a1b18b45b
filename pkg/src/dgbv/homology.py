"""Cohomology, cohomological decompositions and the integral pairing.

Representatives are chosen deterministically: per degree, the kernel of
the differential is reduced modulo the image and brought to reduced
echelon form with leftmost pivots.  When the instance has a unit whose
class is nonzero, the representative list is reordered so that the unit
itself is representative number 0; the pairing axiom for the potential
presumes the zeroth coordinate direction is the unit class.

A Decomposition splits the algebra as  A = H (+) im(delta) (+) M  with M
a coordinate complement of the kernel, and carries the homotopy Q with
Q delta + delta Q = id - pi_H, the algebraic stand-in for a Green's
operator composed with the adjoint differential.
"""

from fractions import Fraction

from . import linalg
from .graded import Element, LinearOperator
from .reports import Report


class IntegralNotNiceError(ValueError):
    """The pairing induced on cohomology by the integral is degenerate."""

    def __init__(self, radical):
        self.radical = radical
        labels = "; ".join(repr(r) for r in radical)
        super().__init__(f"integral is not nice; radical spanned by: {labels}")


def _operator_from(A, which):
    if which == "delta":
        return A.delta
    if which == "bv":
        return A.bv
    raise ValueError("operator must be 'delta' or 'bv'")


def _image_rows(op, k):
    """Images of the degree-(k-d) basis vectors, as vectors in degree k."""
    blk = op.block_at(k - op.degree)
    if not blk:
        return []
    rows = len(blk)
    cols = len(blk[0])
    return [[blk[r][c] for r in range(rows)] for c in range(cols)]


class CohomologyData:
    """Chosen representatives of H(A, op) plus class-coordinate solving data."""

    def __init__(self, space, which, op, reps, degrees, unit_index,
                 image_data):
        self.space = space
        self.operator_name = which
        self.op = op
        self.reps = tuple(reps)          # Elements of the ambient space
        self.degrees = tuple(degrees)    # degree of each representative
        self.unit_index = unit_index     # 0 when a unit class leads, else None
        self._image_data = image_data    # degree -> (rref rows, pivots)
        betti = {}
        for d in degrees:
            betti[d] = betti.get(d, 0) + 1
        self.betti = betti

    @property
    def rank(self):
        return len(self.reps)

    def reps_at(self, degree):
        return [(i, r) for i, (r, d) in enumerate(zip(self.reps, self.degrees))
                if d == degree]

    def _reduced_rep_rows(self, degree):
        rows = []
        idx = []
        for i, r in self.reps_at(degree):
            vec = _local_vector(self.space, r, degree)
            rows.append(list(self._reduce(vec, degree)))
            idx.append(i)
        return rows, idx

    def _reduce(self, vec, degree):
        rr, piv = self._image_data.get(degree, ([], []))
        return linalg.reduce_mod_rows(vec, rr, piv)

    def class_coordinates(self, v):
        """Coordinates of a closed element in the representative basis."""
        if v.space != self.space:
            raise ValueError("element not in the underlying space")
        if not self.op(v).is_zero():
            raise ValueError("element is not closed; it has no class")
        coords = [Fraction(0)] * self.rank
        for degree, part in v.homogeneous_parts().items():
            target = list(self._reduce(_local_vector(self.space, part, degree),
                                       degree))
            rows, idx = self._reduced_rep_rows(degree)
            if not rows:
                if any(target):
                    raise ArithmeticError("closed element escapes the class basis")
                continue
            cols = [[rows[j][i] for j in range(len(rows))]
                    for i in range(len(target))]
            sol = linalg.solve(cols, target)
            if sol is None:
                raise ArithmeticError("closed element escapes the class basis")
            for j, x in zip(idx, sol):
                coords[j] = x
        return tuple(coords)

    def class_element(self, coords):
        out = self.space.zero()
        for c, r in zip(coords, self.reps):
            if c:
                out = out + r.scale(c)
        return out

    def __repr__(self):
        return (f"CohomologyData({self.operator_name}, rank={self.rank}, "
                f"betti={self.betti})")


def _local_vector(space, element, degree):
    n = space.dim_at(degree)
    vec = [Fraction(0)] * n
    for i, c in element.coeffs.items():
        d, pos = space.position_of(i)
        if d != degree:
            raise ValueError("element not homogeneous of the expected degree")
        vec[pos] = c
    return vec


def _element_from_local(space, degree, vec):
    return Element(space, {space.global_index(degree, p): x
                           for p, x in enumerate(vec) if x})


def cohomology(A, which="delta"):
    """Kernel-mod-image data of delta or of the BV operator.

    Raises if the requested operator does not square to zero.  Unit
    reordering only happens when the unit is closed and its class is
    nonzero.
    """
    op = _operator_from(A, which)
    if not op.compose(op).is_zero():
        raise ValueError(f"{which} does not square to zero")
    space = A.space
    image_data = {}
    reps = []
    degrees = []
    for k in space.degrees():
        nk = space.dim_at(k)
        kernel = linalg.kernel_basis(op.block_at(k), nk)
        image_data[k] = linalg.row_space(_image_rows(op, k), nk)
        rr, piv = image_data[k]
        reduced = [linalg.reduce_mod_rows(v, rr, piv) for v in kernel]
        rep_rows, _ = linalg.row_space(reduced, nk)
        for row in rep_rows:
            reps.append(_element_from_local(space, k, row))
            degrees.append(k)

    unit_index = None
    data = CohomologyData(space, which, op, reps, degrees, None, image_data)
    if A.unit is not None:
        one = A.unit_element()
        if op(one).is_zero():
            coords = data.class_coordinates(one)
            lead = next((i for i, c in enumerate(coords) if c), None)
            if lead is not None:
                reps = list(reps)
                degrees = list(degrees)
                reps[lead] = one
                order = [lead] + [i for i in range(len(reps)) if i != lead]
                reps = [reps[i] for i in order]
                degrees = [degrees[i] for i in order]
                unit_index = 0
                data = CohomologyData(space, which, op, reps, degrees,
                                      unit_index, image_data)
    return data


class Decomposition:
    """A = H (+) delta M (+) M with homotopy Q and harmonic projection."""

    def __init__(self, instance, cohomology_data, Q, pi_H, m_basis, dm_basis,
                 delta_compatible, compat_failures):
        self.instance = instance
        self.cohomology = cohomology_data
        self.Q = Q
        self.pi_H = pi_H
        self.m_basis = m_basis      # degree -> list of Elements
        self.dm_basis = dm_basis
        self.delta_compatible = delta_compatible
        self.compat_failures = tuple(compat_failures)

    def harmonic_part(self, v):
        return self.pi_H(v)

    def __repr__(self):
        return (f"Decomposition(rank={self.cohomology.rank}, "
                f"delta_compatible={self.delta_compatible})")


def decomposition(A):
    """Deterministic cohomological decomposition for delta.

    Representatives are first adjusted within their classes to be killed
    by the BV operator (solve Delta(r + delta m) = 0); failure of any of
    these solves is recorded, it signals that the Kernel-inclusion
    condition on the instance is violated.  M is spanned by the
    coordinate directions at the pivot columns of each delta block.
    """
    space = A.space
    H = cohomology(A, "delta")
    delta = A.delta
    bv = A.bv

    bv_delta = bv.compose(delta)
    reps = list(H.reps)
    compat_failures = []
    for i, r in enumerate(reps):
        dr = bv(r)
        if dr.is_zero():
            continue
        if A.unit is not None and r == A.unit_element():
            compat_failures.append((space.label_of(space.index[A.unit]),))
            continue
        k = H.degrees[i]
        if space.dim_at(k - 1) == 0:
            compat_failures.append((f"class {i}",))
            continue
        mat = bv_delta.block_at(k - 1)
        rhs = [-x for x in _local_vector(space, dr, k - 1)]
        sol = linalg.solve(mat, rhs) if mat else None
        if sol is None:
            compat_failures.append((f"class {i}",))
            continue
        m = _element_from_local(space, k - 1, sol)
        reps[i] = r + delta(m)
    delta_compatible = not compat_failures
    H = CohomologyData(space, "delta", H.op, reps, H.degrees, H.unit_index,
                       H._image_data)

    m_basis = {}
    dm_basis = {}
    for k in space.degrees():
        blk = delta.block_at(k)
        if blk and space.dim_at(k + 1):
            _, pivots = linalg.rref(blk, space.dim_at(k))
        else:
            pivots = []
        ms = []
        for p in pivots:
            vec = [Fraction(0)] * space.dim_at(k)
            vec[p] = Fraction(1)
            ms.append(_element_from_local(space, k, vec))
        if ms:
            m_basis[k] = ms
            dm_basis[k + 1] = [delta(m) for m in ms]

    q_blocks = {}
    pi_blocks = {}
    for k in space.degrees():
        nk = space.dim_at(k)
        hs = [r for _, r in H.reps_at(k)]
        dms = dm_basis.get(k, [])
        ms = m_basis.get(k, [])
        cols = ([_local_vector(space, h, k) for h in hs]
                + [_local_vector(space, w, k) for w in dms]
                + [_local_vector(space, m, k) for m in ms])
        if len(cols) != nk:
            raise ArithmeticError(
                f"decomposition at degree {k} has rank {len(cols)} != {nk}")
        S = [[cols[c][r] for c in range(nk)] for r in range(nk)]
        S_inv = linalg.invert(S)
        if S_inv is None:
            raise ArithmeticError(f"decomposition at degree {k} is not direct")
        h_count, dm_count = len(hs), len(dms)
        if h_count:
            h_cols = [_local_vector(space, h, k) for h in hs]
            pi_blocks[k] = [
                [sum((h_cols[a][r] * S_inv[a][c] for a in range(h_count)),
                     Fraction(0)) for c in range(nk)]
                for r in range(nk)]
        if dm_count and space.dim_at(k - 1):
            m_prev = m_basis.get(k - 1, [])
            m_cols = [_local_vector(space, m, k - 1) for m in m_prev]
            q_blocks[k] = [
                [sum((m_cols[a][r] * S_inv[h_count + a][c]
                      for a in range(dm_count)), Fraction(0))
                 for c in range(nk)]
                for r in range(space.dim_at(k - 1))]

    Q = LinearOperator(space, space, -1, q_blocks)
    pi_H = LinearOperator(space, space, 0, pi_blocks)

    ident = LinearOperator.identity(space)
    if Q.compose(delta) + delta.compose(Q) != ident - pi_H:
        raise ArithmeticError("homotopy identity Q d + d Q = 1 - pi_H failed")
    if not Q.compose(Q).is_zero():
        raise ArithmeticError("Q^2 != 0")
    for k, ms in m_basis.items():
        for m in ms:
            if not Q(m).is_zero():
                raise ArithmeticError("Q does not vanish on M")
    for r in H.reps:
        if not Q(r).is_zero():
            raise ArithmeticError("Q does not vanish on H")

    return Decomposition(A, H, Q, pi_H, m_basis, dm_basis,
                         delta_compatible, compat_failures)


# -- integral machinery ------------------------------------------------------

def check_integral(A):
    """Verify the two compatibility identities of the integral.

    For all basis pairs:  int (delta a) b = (-1)^{|a|+1} int a (delta b)
    and  int (Delta a) b = (-1)^{|a|} int a (Delta b).  The zero
    functional passes both but is flagged as degenerate.
    """
    if A.integral is None:
        raise ValueError("integral absent")
    space = A.space
    report = Report(f"integral identities [{A.name}]")
    n = space.dim

    def basis(i):
        return Element(space, {i: Fraction(1)})

    fails = []
    for i in range(n):
        da = A.delta(basis(i))
        sign = 1 if space.degree_of(i) % 2 else -1  # (-1)^{|a|+1}
        for j in range(n):
            lhs = A.integrate(A.multiply(da, basis(j)))
            rhs = sign * A.integrate(A.multiply(basis(i), A.delta(basis(j))))
            if lhs != rhs:
                fails.append((space.label_of(i), space.label_of(j),
                              str(lhs), str(rhs)))
    report.add("delta_compatibility", fails)

    fails = []
    for i in range(n):
        da = A.bv(basis(i))
        sign = -1 if space.degree_of(i) % 2 else 1  # (-1)^{|a|}
        for j in range(n):
            lhs = A.integrate(A.multiply(da, basis(j)))
            rhs = sign * A.integrate(A.multiply(basis(i), A.bv(basis(j))))
            if lhs != rhs:
                fails.append((space.label_of(i), space.label_of(j),
                              str(lhs), str(rhs)))
    report.add("bv_compatibility", fails)

    degenerate = not any(A.integral)
    report.add("nonzero_functional", [], applicable=not degenerate,
               detail="zero functional: identities hold trivially"
               if degenerate else "")
    return report


class Metric:
    """Pairing eta_{ab} = int e_a e_b on the chosen representatives."""

    def __init__(self, matrix, inverse, top_degree, cohomology_data):
        self.matrix = tuple(tuple(row) for row in matrix)
        self.inverse = tuple(tuple(row) for row in inverse)
        self.top_degree = top_degree
        self.cohomology = cohomology_data

    @property
    def rank(self):
        return len(self.matrix)

    def pair(self, i, j):
        return self.matrix[i][j]

    def __repr__(self):
        return f"Metric(rank={self.rank}, top_degree={self.top_degree})"


def metric_eta(A, H):
    """Pairing on cohomology; raises IntegralNotNiceError when degenerate.

    Well-definedness on classes is re-checked by explicit perturbation:
    shifting any representative by an exact term must leave every pairing
    unchanged, which amounts to int (delta u) e_b = 0 for all basis u.
    """
    if A.integral is None:
        raise ValueError("integral absent")
    space = A.space
    for i in range(space.dim):
        du = A.delta(Element(space, {i: Fraction(1)}))
        if du.is_zero():
            continue
        for r in H.reps:
            if A.integrate(A.multiply(du, r)):
                raise ValueError(
                    "integral not delta-compatible; run check_integral first")

    h = H.rank
    eta = [[A.integrate(A.multiply(H.reps[i], H.reps[j])) for j in range(h)]
           for i in range(h)]
    for i in range(h):
        for j in range(h):
            sign = -1 if (H.degrees[i] % 2 and H.degrees[j] % 2) else 1
            if eta[i][j] != sign * eta[j][i]:
                raise ArithmeticError("pairing is not graded symmetric")
    inverse = linalg.invert(eta)
    if inverse is None:
        radical_vecs = linalg.kernel_basis(eta, h)
        radical = [H.class_element(v) for v in radical_vecs]
        raise IntegralNotNiceError(radical)
    top = max((space.degree_of(i) for i in range(space.dim) if A.integral[i]),
              default=None)
    return Metric(eta, inverse, top, H)


# -- the three conditions ----------------------------------------------------

def _kernel_subspace(space, op):
    """Per-degree canonical basis of ker(op), as local row vectors."""
    out = {}
    for k in space.degrees():
        vecs = linalg.kernel_basis(op.block_at(k), space.dim_at(k))
        rows, _ = linalg.row_space(vecs, space.dim_at(k))
        if rows:
            out[k] = rows
    return out


def _restricted_cohomology(space, sub, op):
    """Cohomology of op restricted to the subspace ``sub``.

    ``sub`` maps degree -> local row vectors spanning a subspace that op
    preserves (checked).  Returns representatives as Elements of the
    ambient space together with their degrees.
    """
    d = op.degree
    coords = {}
    for k, rows in sub.items():
        coords[k] = linalg.rref(rows, space.dim_at(k))

    def to_sub_coords(vec, k):
        if k not in coords:
            return None if any(vec) else []
        rr, piv = coords[k]
        rem = linalg.reduce_mod_rows(vec, rr, piv)
        if any(rem):
            return None
        cols = [[rr[j][i] for j in range(len(rr))] for i in range(len(vec))]
        return list(linalg.solve(cols, list(vec)))

    blocks = {}
    for k, rows in sub.items():
        cols_out = []
        for row in rows:
            img = op(_element_from_local(space, k, list(row)))
            vec = _local_vector(space, img, k + d) if not img.is_zero() else \
                [Fraction(0)] * space.dim_at(k + d)
            sc = to_sub_coords(vec, k + d)
            if sc is None:
                raise ArithmeticError(
                    f"operator does not preserve the subspace at degree {k}")
            cols_out.append(sc)
        nrows = len(sub.get(k + d, []))
        blocks[k] = [[cols_out[c][r] for c in range(len(rows))]
                     for r in range(nrows)]

    reps = []
    for k in sorted(sub):
        rows = sub[k]
        nk = len(rows)
        blk = blocks.get(k, [])
        kernel = linalg.kernel_basis(blk, nk)
        img_rows = []
        prev = sub.get(k - d)
        if prev:
            pblk = blocks.get(k - d, [])
            if pblk:
                for c in range(len(prev)):
                    img_rows.append([pblk[r][c] for r in range(len(pblk))])
        rr, piv = linalg.row_space(img_rows, nk)
        reduced = [linalg.reduce_mod_rows(v, rr, piv) for v in kernel]
        rep_rows, _ = linalg.row_space(reduced, nk)
        for row in rep_rows:
            amb = [Fraction(0)] * space.dim_at(k)
            for c, x in enumerate(row):
                if x:
                    amb = [a + x * b for a, b in zip(amb, rows[c])]
            reps.append((k, _element_from_local(space, k, amb)))
    return reps


def _induced_iso_check(reps, H_target):
    """Is the induced degree-preserving map onto H_target an isomorphism?"""
    fails = []
    source_by_deg = {}
    for k, r in reps:
        source_by_deg.setdefault(k, []).append(r)
    target_by_deg = {}
    for i, d in enumerate(H_target.degrees):
        target_by_deg.setdefault(d, []).append(i)
    for k in sorted(set(source_by_deg) | set(target_by_deg)):
        srcs = source_by_deg.get(k, [])
        tgts = target_by_deg.get(k, [])
        if len(srcs) != len(tgts):
            fails.append((f"degree {k}", f"dim {len(srcs)} vs {len(tgts)}"))
            continue
        if not srcs:
            continue
        mat = []
        for r in srcs:
            coords = H_target.class_coordinates(r)
            mat.append([coords[i] for i in tgts])
        if linalg.rank(mat) != len(tgts):
            fails.append((f"degree {k}", "induced map not invertible"))
    return fails


def check_conditions(A):
    """Report on the three conditions for the Frobenius construction.

    (i) finite free rank (always true here; Betti numbers are reported),
    (ii) existence of a nice integral (delegated to the pairing),
    (iii) the inclusions of ker(Delta) into (A, delta) and of ker(delta)
    into (A, Delta) induce isomorphisms on cohomology.
    """
    report = Report(f"conditions [{A.name}]")
    H = cohomology(A, "delta")
    report.add("finite_rank", [],
               detail=f"betti {dict(sorted(H.betti.items()))}")
    report.eta = None

    if A.integral is None:
        report.add("nice_integral", [], applicable=False,
                   detail="integral absent")
    else:
        integ = check_integral(A)
        if not integ.ok:
            report.add("nice_integral",
                       [w for c in integ.failed_checks() for w in c.witnesses],
                       detail="integral identities fail")
        else:
            try:
                report.eta = metric_eta(A, H)
                report.add("nice_integral", [],
                           detail=f"top degree {report.eta.top_degree}")
            except IntegralNotNiceError as e:
                report.add("nice_integral",
                           [(repr(r),) for r in e.radical],
                           detail="pairing degenerate")

    H_bv = cohomology(A, "bv")
    ker_bv = _kernel_subspace(A.space, A.bv)
    reps_dd = _restricted_cohomology(A.space, ker_bv, A.delta)
    report.add("ker_bv_inclusion_quasi_iso", _induced_iso_check(reps_dd, H),
               detail=f"H(ker Delta, delta) rank {len(reps_dd)} vs {H.rank}")

    ker_d = _kernel_subspace(A.space, A.delta)
    reps_bd = _restricted_cohomology(A.space, ker_d, A.bv)
    report.add("ker_delta_inclusion_quasi_iso",
               _induced_iso_check(reps_bd, H_bv),
               detail=f"H(ker delta, Delta) rank {len(reps_bd)} vs {H_bv.rank}")
    report.betti = H.betti
    return report

"""Exact linear algebra over the rationals.

Matrices are lists (or tuples) of rows; entries are ``fractions.Fraction``
or ``int``.  The elimination kernel is fraction-free: rows are rescaled to
integers and reduced Bareiss-style, so intermediate entries stay integral
and small; only the final normalisation to reduced echelon form divides.

Pivot columns are always the leftmost possible, scanning rows top to
bottom, so every derived object (kernels, solutions, representatives) is
deterministic.
"""

from fractions import Fraction
from math import gcd


def _scaled_int_row(row):
    """Clear denominators and divide out the content of a row."""
    denom = 1
    for x in row:
        f = Fraction(x)
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(Fraction(x) * denom) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def echelon(rows):
    """Bareiss fraction-free row echelon form.

    Returns ``(erows, pivots)`` where ``erows`` are the nonzero integer
    rows in echelon order and ``pivots[i]`` is the pivot column of row i.
    """
    M = [_scaled_int_row(r) for r in rows]
    m = len(M)
    n = len(M[0]) if m else 0
    pivots = []
    r = 0
    prev = 1
    for c in range(n):
        pr = None
        for i in range(r, m):
            if M[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            M[r], M[pr] = M[pr], M[r]
        piv = M[r][c]
        for i in range(r + 1, m):
            fac = M[i][c]
            if fac or piv != prev:
                for j in range(c, n):
                    M[i][j] = (piv * M[i][j] - fac * M[r][j]) // prev
        pivots.append(c)
        prev = piv
        r += 1
        if r == m:
            break
    return [M[i] for i in range(r)], pivots


def rref(rows, ncols=None):
    """Reduced row echelon form with Fraction entries.

    Returns ``(rrows, pivots)``; ``rrows`` is a list of tuples, one per
    nonzero row, each with leading 1 at its pivot column and zeros in all
    other pivot columns.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    erows, pivots = echelon(rows)
    R = [[Fraction(x) for x in row] for row in erows]
    for i in reversed(range(len(R))):
        p = pivots[i]
        piv = R[i][p]
        R[i] = [x / piv for x in R[i]]
        for k in range(i):
            fac = R[k][p]
            if fac:
                R[k] = [a - fac * b for a, b in zip(R[k], R[i])]
    return [tuple(r) for r in R], pivots


def rank(rows):
    return len(echelon([list(r) for r in rows])[0]) if rows else 0


def kernel_basis(rows, ncols):
    """Basis of the right kernel of the matrix, one vector per free column.

    The vector for free column f has entry 1 there and is supported on f
    and the pivot columns; vectors are ordered by f ascending.
    """
    if not rows:
        return [tuple(Fraction(int(i == f)) for i in range(ncols)) for f in range(ncols)]
    R, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(tuple(v))
    return basis


def row_space(rows, ncols):
    """Canonical (RREF) basis of the span of the given row vectors."""
    live = [r for r in rows if any(x for x in r)]
    if not live:
        return [], []
    return rref(live, ncols)


def reduce_mod_rows(vec, rrows, pivots):
    """Subtract the projection of ``vec`` onto the RREF row space."""
    v = [Fraction(x) for x in vec]
    for i, p in enumerate(pivots):
        fac = v[p]
        if fac:
            v = [a - fac * b for a, b in zip(v, rrows[i])]
    return tuple(v)


def solve(rows, rhs):
    """One exact solution of ``A x = rhs`` with free variables set to 0.

    Returns None when the system is inconsistent.
    """
    m = len(rows)
    if m == 0:
        return () if not any(rhs) else None
    n = len(rows[0])
    aug = [list(rows[i]) + [rhs[i]] for i in range(m)]
    R, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = R[i][n]
    return tuple(x)


def invert(rows):
    """Exact inverse of a square matrix, or None if singular."""
    n = len(rows)
    if n == 0:
        return []
    aug = [list(rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [tuple(R[i][n:]) for i in range(n)]


def mat_mul(A, B):
    if not A or not B:
        return []
    n = len(B)
    cols = len(B[0])
    out = []
    for row in A:
        acc = [Fraction(0)] * cols
        for k in range(n):
            a = row[k]
            if a:
                for j in range(cols):
                    b = B[k][j]
                    if b:
                        acc[j] += a * b
        out.append(tuple(acc))
    return out


def mat_vec(A, v):
    out = []
    for row in A:
        s = Fraction(0)
        for a, x in zip(row, v):
            if a and x:
                s += a * x
        out.append(s)
    return tuple(out)

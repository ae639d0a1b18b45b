"""Fraction-free elimination against a naive Gauss-Jordan oracle."""

import random
from fractions import Fraction

from dgbv import linalg


def naive_rref(rows, ncols):
    """Textbook Gauss-Jordan with Fractions; the independent oracle."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        piv = M[r][c]
        M[r] = [x / piv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in M[:r]], pivots


def random_matrix(rng, m, n, scale=6):
    return [[Fraction(rng.randint(-scale, scale), rng.randint(1, 4))
             for _ in range(n)] for _ in range(m)]


def test_rref_matches_naive_oracle():
    rng = random.Random(12345)
    for _ in range(60):
        m, n = rng.randint(1, 6), rng.randint(1, 7)
        M = random_matrix(rng, m, n)
        if rng.random() < 0.4:  # inject some rank deficiency
            M[rng.randrange(m)] = [2 * x for x in M[rng.randrange(m)]]
        got_rows, got_piv = linalg.rref(M, n)
        want_rows, want_piv = naive_rref(M, n)
        assert got_piv == want_piv
        assert got_rows == want_rows


def test_kernel_vectors_are_killed():
    rng = random.Random(99)
    for _ in range(40):
        m, n = rng.randint(1, 5), rng.randint(1, 6)
        M = random_matrix(rng, m, n)
        kernel = linalg.kernel_basis(M, n)
        assert len(kernel) == n - linalg.rank(M)
        for v in kernel:
            assert all(s == 0 for s in linalg.mat_vec(M, v))


def test_solve_particular_and_inconsistent():
    rng = random.Random(5)
    for _ in range(40):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = random_matrix(rng, m, n)
        x = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        b = list(linalg.mat_vec(M, x))
        sol = linalg.solve(M, b)
        assert sol is not None
        assert list(linalg.mat_vec(M, sol)) == b
    # a visibly inconsistent system
    assert linalg.solve([[1, 0], [1, 0]], [0, 1]) is None


def test_invert_round_trip_and_singular():
    rng = random.Random(17)
    count = 0
    while count < 20:
        n = rng.randint(1, 5)
        M = random_matrix(rng, n, n)
        inv = linalg.invert(M)
        if inv is None:
            assert linalg.rank(M) < n
            continue
        count += 1
        eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        assert linalg.mat_mul(M, inv) == [tuple(r) for r in eye]
        assert linalg.mat_mul(inv, M) == [tuple(r) for r in eye]
    assert linalg.invert([[1, 2], [2, 4]]) is None


def test_row_space_and_reduction():
    rows = [[1, 2, 0], [0, 0, 1], [1, 2, 1]]
    basis, pivots = linalg.row_space(rows, 3)
    assert pivots == [0, 2]
    red = linalg.reduce_mod_rows([3, 6, 5], basis, pivots)
    assert red == (0, 0, 0)
    red = linalg.reduce_mod_rows([0, 1, 0], basis, pivots)
    assert red == (0, 1, 0)


def test_empty_edge_cases():
    assert linalg.rref([], 0) == ([], [])
    assert linalg.kernel_basis([], 3) == [
        (1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert linalg.invert([]) == []

"""Shared independent oracles for the test suite.

These helpers deliberately avoid the package's matrix and series code:
complex numbers are (re, im) Fraction pairs, matrices are nested lists,
and the classical recurrences are coded directly, so expected values are
computed along a route the implementation under test never touches.
"""

from fractions import Fraction

import pytest


def c(re=0, im=0):
    return (Fraction(re), Fraction(im))


def cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def csub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def cscale(a, s):
    return (a[0] * Fraction(s), a[1] * Fraction(s))


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    out = [[c(0)] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = c(0)
            for l in range(k):
                acc = cadd(acc, cmul(a[i][l], b[l][j]))
            out[i][j] = acc
    return out


def mat_sub(a, b):
    return [[csub(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def mat_add(a, b):
    return [[cadd(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def mat_scale(a, s):
    return [[cscale(x, s) for x in row] for row in a]


def mat_comm(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_from_dense(m):
    """Read a DenseMatrix of GaussianRational entries into oracle pairs."""
    return [[(e.re, e.im) for e in row] for row in m.data]


def pairs_equal(a, b):
    return all(x == y for r1, r2 in zip(a, b) for x, y in zip(r1, r2))


def poch(tau, k):
    """Rising factorial by its defining recurrence, on exact Fractions."""
    tau = Fraction(tau)
    acc = Fraction(1)
    for i in range(k):
        acc *= tau + i
    return acc


def fraction_det(matrix):
    """Determinant by fraction-exact Gaussian elimination."""
    a = [list(map(Fraction, row)) for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] * inv
            if f:
                for s in range(col, n):
                    a[r][s] -= f * a[col][s]
    return det


def leading_minors_positive(matrix):
    """Sylvester criterion oracle: every leading principal minor positive."""
    n = len(matrix)
    for k in range(1, n + 1):
        sub = [row[:k] for row in matrix[:k]]
        if fraction_det(sub) <= 0:
            return False
    return True


@pytest.fixture
def rng():
    import random

    return random.Random(20260808)


def rand_fraction(rng, height=5, allow_zero=True):
    while True:
        f = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if allow_zero or f:
            return f

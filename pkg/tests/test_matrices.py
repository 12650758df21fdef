from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from socone.matrices import (
    DenseMatrix,
    NotNilpotentError,
    commutator,
    exact_ldl,
    exp_nilpotent,
    is_positive_definite,
)
from socone.poly import MultiPoly
from socone.scalars import gr

from conftest import fraction_det, leading_minors_positive


def rand_matrix(draw_fraction, size):
    return DenseMatrix(
        [[draw_fraction() for _ in range(size)] for _ in range(size)]
    )


small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(size):
    return st.lists(
        st.lists(small_fracs, min_size=size, max_size=size),
        min_size=size,
        max_size=size,
    ).map(DenseMatrix)


@settings(derandomize=True, max_examples=25)
@given(matrices(4), matrices(4), matrices(4))
def test_jacobi_identity(a, b, c):
    lhs = (
        commutator(a, commutator(b, c))
        + commutator(b, commutator(c, a))
        + commutator(c, commutator(a, b))
    )
    assert lhs.is_zero


@settings(derandomize=True, max_examples=25)
@given(matrices(3), matrices(3))
def test_commutator_antisymmetry(a, b):
    assert commutator(a, b) == -commutator(b, a)


@settings(derandomize=True, max_examples=15)
@given(matrices(5), matrices(5), matrices(5))
def test_multiplication_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


def test_commutator_trivial_cases():
    i3 = DenseMatrix.identity(3)
    b = DenseMatrix([[1, 2, 0], [0, 1, 5], [7, 0, 1]])
    assert commutator(i3, b).is_zero
    assert commutator(b, b).is_zero
    with pytest.raises(ValueError):
        commutator(i3, DenseMatrix.identity(4))


def test_exp_nilpotent_basics():
    z = DenseMatrix.zeros(4)
    assert exp_nilpotent(z) == DenseMatrix.identity(4)
    m = DenseMatrix([[0, 1, 3], [0, 0, 2], [0, 0, 0]])
    e = exp_nilpotent(m)
    assert e * exp_nilpotent(-m) == DenseMatrix.identity(3)
    with pytest.raises(NotNilpotentError):
        exp_nilpotent(DenseMatrix.identity(2))


def test_exp_nilpotent_never_truncates_silently():
    almost = DenseMatrix([[0, 1], [Fraction(1, 10 ** 9), 0]])
    with pytest.raises(NotNilpotentError):
        exp_nilpotent(almost)


def test_exp_nilpotent_symbolic_entries():
    v = MultiPoly.var("v1")
    m = DenseMatrix([[0, v], [0, 0]])
    e = exp_nilpotent(m)
    assert e[0, 1] == v
    assert e * exp_nilpotent(-m) == DenseMatrix.identity(2)


def test_conjugate_transpose():
    m = DenseMatrix([[gr(0, 1), gr(1, 1)], [0, gr(2)]])
    h = m.conjugate_transpose()
    assert h[0, 0] == gr(0, -1)
    assert h[1, 0] == gr(1, -1)


def test_exact_ldl_matches_minor_oracle(rng):
    # random symmetric positive definite: A = B^T B + I
    for _ in range(10):
        size = rng.randint(1, 5)
        b = [
            [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(size)]
            for _ in range(size)
        ]
        a = [
            [
                sum(b[k][i] * b[k][j] for k in range(size))
                + (1 if i == j else 0)
                for j in range(size)
            ]
            for i in range(size)
        ]
        verdict, pivots = is_positive_definite(a)
        assert verdict is True
        assert leading_minors_positive(a)
        # pivots multiply to the determinant
        prod = Fraction(1)
        for p in pivots:
            prod *= p
        assert prod == fraction_det(a)


def test_exact_ldl_zero_and_indefinite():
    pivots, completed = exact_ldl([[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]])
    assert completed and pivots == [0, 0]
    verdict, pivots = is_positive_definite(
        [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    )
    assert verdict is False
    verdict, _ = is_positive_definite([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]])
    assert verdict is False

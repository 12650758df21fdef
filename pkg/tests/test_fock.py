from fractions import Fraction
from math import factorial

import pytest

from socone.fock import (
    FockMatrix,
    build_combinatorial,
    build_hat,
    coherent_vector,
    fock_commutator,
    gram_matrix,
    mi_degree,
    multi_indices,
    number_grading_check,
    pair,
    positivity_probe,
    series_duality_check,
    vacuum_vector,
    verify_adjointness,
    verify_hat_relations,
)
from socone.poly import MultiPoly, TAU
from socone.scalars import gr

from conftest import leading_minors_positive, poch


def test_multi_index_enumeration():
    assert multi_indices(1, 3) == [(0,), (1,), (2,), (3,)]
    assert multi_indices(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    assert len(multi_indices(3, 6)) == 84


def test_combinatorial_actions():
    lower = build_combinatorial(2, 4, "lower", 1)
    assert lower.apply(vacuum_vector(2)) == {}
    assert lower.apply({(2, 0): gr(1)}) == {(1, 0): gr(2)}
    raiser = build_combinatorial(2, 4, "raise", 2)
    assert raiser.apply({(1, 0): gr(1)}) == {(1, 1): gr(1)}
    # raising out of the truncated space is flagged, not silently wrong
    top = (4, 0)
    assert raiser.apply({top: gr(1)}) == {}
    proto = FockMatrix.zero(2, 4)
    assert proto.index[top] in raiser.flagged


def test_shift_commutator_is_identity_on_interior():
    for n, d in ((1, 4), (2, 4)):
        for j in range(1, n + 1):
            lower = build_combinatorial(n, d, "lower", j)
            raiser = build_combinatorial(n, d, "raise", j)
            comm = fock_commutator(lower, raiser)
            ident = FockMatrix.identity(n, d)
            assert comm.restrict(d - 1) == ident.restrict(d - 1)
            # and it genuinely fails at the boundary, which is the point
            assert comm != ident


def test_hat_actions_by_hand():
    hat = build_hat(2, 4)
    e1 = {(1, 0): gr(1)}
    assert hat.L(1).apply(e1) == {(0, 0): TAU}
    assert hat.rho0.apply(vacuum_vector(2)) == {(0, 0): TAU}
    assert hat.rho(1, 2).apply({(0, 1): gr(1)}) == {(1, 0): gr(1)}
    assert hat.rho(2, 1).apply({(0, 1): gr(1)}) == {(1, 0): gr(-1)}
    # classical lowering value: L|k> = k (t + k - 1) |k-1> for n=1
    hat1 = build_hat(1, 5)
    got = hat1.L(1).apply({(3,): gr(1)})
    assert got == {(2,): 3 * (TAU + 2)}


@pytest.mark.parametrize("n,d", [(1, 4), (2, 5), (3, 4)])
def test_hat_relations(n, d):
    report = verify_hat_relations(n, d)
    assert report.all_passed, [ch.name for ch in report.failed()]


def test_gram_diagonal_n1():
    gram = gram_matrix(1, 4)
    for k in range(5):
        expected = MultiPoly.const(factorial(k))
        for i in range(k):
            expected = expected * (TAU + i)
        assert gram.entry((k,), (k,)) == expected
        for tau in (Fraction(3), Fraction(-1, 2)):
            assert gram.entry((k,), (k,)).subs({"t": tau}).as_gaussian() == factorial(
                k
            ) * poch(tau, k)
    # off-diagonal vanishes for n=1
    assert gram.entry((0,), (1,)).is_zero
    assert gram.entry((1,), (3,)).is_zero


def test_gram_structure_n2():
    gram = gram_matrix(2, 3)
    assert gram.entry((0, 0), (0, 0)) == 1
    assert gram.entry((2, 0), (0, 2)) == -2 * TAU
    assert gram.entry((2, 0), (1, 1)).is_zero
    assert gram.entry((1, 1), (1, 1)) == TAU * TAU + 2 * TAU
    assert gram.entry((1, 0), (1, 0)) == TAU
    assert gram.entry((1, 0), (0, 1)).is_zero
    # block diagonality by degree
    for k in gram.basis:
        for m in gram.basis:
            if mi_degree(k) != mi_degree(m):
                assert gram.entry(k, m).is_zero
    # symmetry
    for k in gram.basis:
        for m in gram.basis:
            assert gram.entry(k, m) == gram.entry(m, k)


@pytest.mark.parametrize("n,d", [(1, 4), (2, 3), (2, 5)])
def test_adjointness(n, d):
    report = verify_adjointness(n, d)
    assert report.all_passed, [ch.name for ch in report.failed()]


def test_adjointness_hand_case():
    # <L|2>, |1>> = <|2>, R|1>> reduces to 2(t+1) * t = G[2][2]
    hat = build_hat(1, 3)
    gram = gram_matrix(1, 3)
    lowered = hat.L(1).apply({(2,): gr(1)})
    lhs = pair(gram, lowered, {(1,): gr(1)})
    raised = hat.R(1).apply({(1,): gr(1)})
    rhs = pair(gram, {(2,): gr(1)}, raised)
    assert lhs == rhs == gram.entry((2,), (2,))


def test_positivity_probe_cases():
    probe = positivity_probe(1, 5, Fraction(3))
    assert probe.positive_definite is True
    assert [p for _, p in probe.pivots] == [
        factorial(k) * poch(3, k) for k in range(6)
    ]
    assert probe.float_min_eigenvalue > -1e-10

    probe = positivity_probe(1, 2, Fraction(0))
    assert probe.positive_definite is False
    assert (1, Fraction(0)) in probe.pivots

    probe = positivity_probe(2, 3, Fraction(3))
    assert probe.positive_definite is True


def test_positivity_probe_matches_minor_oracle():
    gram = gram_matrix(2, 2)
    dense = gram.eval_at(Fraction(3))
    assert leading_minors_positive(dense)
    assert positivity_probe(2, 2, Fraction(3)).positive_definite


def test_series_duality():
    for n, d in ((1, 5), (2, 4)):
        assert series_duality_check(n, d).all_passed


def test_duality_at_rational_points(rng):
    # pairing of truncated coherent vectors at exact points, weight symbolic
    n, d = 2, 4
    gram = gram_matrix(n, d)
    left = coherent_vector(n, d, "w")
    right = coherent_vector(n, d, "v")
    from socone.states import leibniz_closed_form

    _, series = leibniz_closed_form(n, d)
    for _ in range(5):
        point = {}
        for j in range(1, n + 1):
            point[f"w{j}"] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            point[f"v{j}"] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        lhs = pair(
            gram,
            {k: MultiPoly.coerce(p).subs(point) for k, p in left.items()},
            {k: MultiPoly.coerce(p).subs(point) for k, p in right.items()},
        )
        assert lhs == series.subs(point)


def test_number_grading():
    assert number_grading_check(2, 4).all_passed
    hat = build_hat(1, 4)
    specialized = hat.rho0.subs({"t": Fraction(-2)})
    assert specialized.apply(vacuum_vector(1)) == {(0,): gr(-2)}


def test_hat_matches_matrix_realization_at_weight_minus_two():
    # the matrix bracket relations hold and rho0 acts as -2 there; the hat
    # family reproduces that weight under t -> -2
    from socone.algebra import build_algebra, verify_relations

    assert verify_relations(build_algebra(2)).all_passed
    hat = build_hat(2, 4)
    rho0 = hat.rho0.subs({"t": Fraction(-2)})
    assert rho0.apply(vacuum_vector(2)) == {(0, 0): gr(-2)}


def test_build_hat_validates_bound():
    with pytest.raises(ValueError):
        build_hat(1, 1)
    with pytest.raises(ValueError):
        verify_hat_relations(1, 2)

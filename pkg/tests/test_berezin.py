from fractions import Fraction

import pytest

from socone.algebra import OperatorWord
from socone.berezin import (
    PoleError,
    berezin_symbol_series,
    berezin_transform,
    bessel_form_check,
    fock_pairing_series,
    hat_from_pde_check,
    normal_order,
    vacuum_symbol_check,
    verify_pde_system,
    verify_raising_identity,
    wick_recipe_check,
)
from socone.poly import MultiPoly, TAU
from socone.states import leibniz_base


def test_identity_transform_is_one(rng):
    for _ in range(5):
        w = [Fraction(rng.randint(-2, 2), rng.randint(1, 3))]
        v = [Fraction(rng.randint(-2, 2), rng.randint(1, 3))]
        try:
            value = berezin_transform(OperatorWord.identity(), w, v)
        except PoleError:
            continue
        assert value == 1


def test_raising_transform_values():
    assert berezin_transform(OperatorWord.of("R1"), [0], [0]) == 0
    # closed form t (w_j - v_j w.w) / P at weight -2
    w, v = Fraction(1, 2), Fraction(1, 3)
    p = 1 - 2 * w * v + (w * v) ** 2
    expected = Fraction(-2) * (w - v * w * w) / p
    assert berezin_transform(OperatorWord.of("R1"), [w], [v]) == expected


def test_transform_pole_error():
    with pytest.raises(PoleError):
        berezin_transform(OperatorWord.identity(), [1], [1])


def test_word_products_and_sums():
    w1 = OperatorWord.of("rho0")
    w2 = OperatorWord.of("R1")
    prod = w1 * w2
    assert prod.factors == ("rho0", "R1")
    value = berezin_transform([w1, w2], [0], [0])
    # at the origin: rho0 contributes -2 (weight), R1 contributes 0
    assert value == -2


def test_symbol_series_closed_form():
    # numerator for R_j equals t (w_j - v_j w.w) P^(-t/2 - 1) as a series:
    # cleared form: numerator * P = t (w_j - v_j w.w) * series(P^(-t/2))
    n, bound = 2, 4
    base = leibniz_base(n)
    num, den = berezin_symbol_series(
        OperatorWord.of("R1", realization="fock"), n, bound
    )
    w1 = MultiPoly.var("w1")
    v1 = MultiPoly.var("v1")
    w2sum = MultiPoly.var("w1") ** 2 + MultiPoly.var("w2") ** 2
    lhs = (num * base).truncate({"w": bound - 1, "v": bound - 1})
    rhs = (TAU * (w1 - v1 * w2sum) * den).truncate({"w": bound - 1, "v": bound - 1})
    assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_raising_identity(n):
    report = verify_raising_identity(n)
    assert report.all_passed, [ch.name for ch in report.failed()]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pde_system(n):
    report = verify_pde_system(n)
    assert report.all_passed, [ch.name for ch in report.failed()]


def test_pde_polynomials_by_hand_n1():
    # n=1: -(t/2) dP/dw = t v - t w v^2 must match the system's right side
    base = leibniz_base(1)
    v = MultiPoly.var("v1")
    w = MultiPoly.var("w1")
    lhs = Fraction(-1, 2) * TAU * base.diff("w1")
    assert lhs == TAU * v - TAU * w * v * v


@pytest.mark.parametrize("n,d", [(1, 4), (2, 3), (3, 4)])
def test_bessel_form(n, d):
    assert bessel_form_check(n, d).all_passed


@pytest.mark.parametrize("n,d", [(1, 4), (2, 4)])
def test_hat_from_pde(n, d):
    assert hat_from_pde_check(n, d).all_passed


def test_vacuum_symbol():
    assert vacuum_symbol_check(1).all_passed
    assert vacuum_symbol_check(2).all_passed


def test_normal_order_contraction():
    # V R = R V + 1
    got = normal_order((("V", 1), ("R", 1)))
    assert got == {((1,), (1,)): 1, ((), ()): 1}
    # R V stays put
    got = normal_order((("R", 1), ("V", 1)))
    assert got == {((1,), (1,)): 1}
    # distinct slots commute freely
    got = normal_order((("V", 2), ("R", 1)))
    assert got == {((1,), (2,)): 1}


def test_wick_recipe():
    assert wick_recipe_check(1, 6).all_passed
    assert wick_recipe_check(2, 6).all_passed


def test_fock_pairing_series_identity_word():
    # the empty word reproduces the Leibniz series itself
    from socone.states import leibniz_closed_form

    n, bound = 2, 3
    got = fock_pairing_series(OperatorWord.identity("fock"), n, bound)
    _, expected = leibniz_closed_form(n, bound)
    assert got == expected

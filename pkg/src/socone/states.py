"""Vacuum, coherent states, coordinate recovery, and the Leibniz function.

The matrix realization pins the vacuum weight at -2. The scalar read off a
group-orbit vector (v0, a, b) is lam = (a - i b)/2, which agrees with the
quotient -v0.v0 / (2 (a + i b)) wherever that quotient is defined but has
no 0/0 at the vacuum. The pairing behind the Leibniz function is the
bilinear functional s -> (a - i b)/2, i.e. conj(vacuum) paired into s and
halved; a naive conjugate-transpose pairing is NOT compatible with the
ladder involution here (it sends R_j to -L_j), which is why all inner
products go through this functional.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import SoAlgebra, build_algebra
from .matrices import DenseMatrix, exp_nilpotent
from .poly import MultiPoly, TAU, series_power
from .report import CheckResult, Report
from .scalars import GaussianRational, gr

_I = gr(0, 1)
_HALF = Fraction(1, 2)


class NotInOrbitError(ValueError):
    pass


def _coerce_component(value):
    if isinstance(value, (GaussianRational, MultiPoly)):
        return value
    return GaussianRational.coerce(value)


@dataclass(frozen=True)
class StateVector:
    """A column vector split as (v0: n spatial entries, a, b)."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "entries", tuple(_coerce_component(e) for e in self.entries)
        )
        if len(self.entries) < 3:
            raise ValueError("state vectors need at least three components")

    @property
    def n(self) -> int:
        return len(self.entries) - 2

    @property
    def v0(self) -> tuple:
        return self.entries[: self.n]

    @property
    def a(self):
        return self.entries[self.n]

    @property
    def b(self):
        return self.entries[self.n + 1]

    def scale(self, scalar) -> "StateVector":
        return StateVector(tuple(scalar * e for e in self.entries))

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return len(self.entries) == len(other.entries) and all(
            a == b for a, b in zip(self.entries, other.entries)
        )

    __hash__ = None


def vacuum(n: int, algebra: SoAlgebra | None = None) -> StateVector:
    """The vacuum (0,..,0,1,i); its annihilation properties are asserted."""
    alg = algebra if algebra is not None else build_algebra(n)
    omega = StateVector((gr(0),) * n + (gr(1), _I))
    for j in range(1, n + 1):
        if any(alg.L(j).apply(omega.entries)):
            raise AssertionError(f"L{j} does not annihilate the vacuum")
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            if any(alg.rho(j, k).apply(omega.entries)):
                raise AssertionError(f"rho{j}{k} does not annihilate the vacuum")
    if StateVector(alg.rho0.apply(omega.entries)) != (-2) * omega:
        raise AssertionError("rho0 does not act as -2 on the vacuum")
    return omega


def coherent_closed_form(v) -> StateVector:
    """(2i v, 1 + v.v, i (1 - v.v)) for a spatial tuple v."""
    comps = [_coerce_component(c) for c in v]
    v2 = None
    for c in comps:
        p = c * c
        v2 = p if v2 is None else v2 + p
    spatial = tuple(gr(0, 2) * c for c in comps)
    return StateVector(spatial + (1 + v2, _I * (1 - v2)))


def coherent_state(v, algebra: SoAlgebra | None = None) -> StateVector:
    """exp(v.R) applied to the vacuum, computed two ways and asserted equal."""
    n = len(v)
    alg = algebra if algebra is not None else build_algebra(n)
    comps = [_coerce_component(c) for c in v]
    generator = DenseMatrix.zeros(n + 2)
    for j, c in enumerate(comps, start=1):
        generator = generator + c * alg.R(j)
    omega = vacuum(n, alg)
    via_exp = StateVector(exp_nilpotent(generator).apply(omega.entries))
    closed = coherent_closed_form(comps)
    if via_exp != closed:
        raise AssertionError("exponential and closed-form coherent states differ")
    return closed


def lambda_factor(state: StateVector):
    """The scale factor (a - i b)/2 of an orbit vector; exact, no division."""
    return (state.a - _I * state.b) * _HALF


def recover_coordinates(state: StateVector, want_v: bool = True):
    """Invert s = lam * (2i v, 1 + v.v, i(1 - v.v)) to (v, lam).

    The quotient form of lam is asserted through its cleared-denominator
    identity, and for exact numeric input the reconstruction is verified
    against the closed form; anything off the orbit raises NotInOrbitError.
    """
    lam = lambda_factor(state)
    if not lam:
        raise NotInOrbitError("a - i b vanishes: vector is not in the orbit")
    v0sq = None
    for c in state.v0:
        p = c * c
        v0sq = p if v0sq is None else v0sq + p
    # cleared form of lam = -(1/2) v0.v0 / (a + i b)
    if -_HALF * v0sq != lam * (state.a + _I * state.b):
        raise NotInOrbitError("quotient identity for the scale factor fails")
    if not want_v:
        return None, lam
    denom = state.b + _I * state.a
    if isinstance(denom, MultiPoly) or any(
        isinstance(c, MultiPoly) for c in state.v0
    ):
        denom_poly = MultiPoly.coerce(denom).drop_truncation()
        v = tuple(
            MultiPoly.coerce(c).drop_truncation().exact_divide(denom_poly)
            for c in state.v0
        )
    else:
        if not denom:
            raise NotInOrbitError("b + i a vanishes: spatial part not recoverable")
        v = tuple(c / denom for c in state.v0)
        if StateVector(tuple(lam * e for e in coherent_closed_form(v).entries)) != state:
            raise NotInOrbitError("vector is not a scaled coherent state")
    return v, lam


def leibniz_base(n: int) -> MultiPoly:
    """1 - 2 w.v + (w.w)(v.v) in the symbolic w and v variables."""
    wv = MultiPoly.zero()
    w2 = MultiPoly.zero()
    v2 = MultiPoly.zero()
    for j in range(1, n + 1):
        wj = MultiPoly.var(f"w{j}")
        vj = MultiPoly.var(f"v{j}")
        wv = wv + wj * vj
        w2 = w2 + wj * wj
        v2 = v2 + vj * vj
    return 1 - 2 * wv + w2 * v2


def leibniz_base_value(w, v):
    """The same bilinear expression evaluated at numeric tuples."""
    wc = [_coerce_component(c) for c in w]
    vc = [_coerce_component(c) for c in v]
    wv = sum((a * b for a, b in zip(wc, vc)), gr(0))
    w2 = sum((a * a for a in wc), gr(0))
    v2 = sum((a * a for a in vc), gr(0))
    return 1 - 2 * wv + w2 * v2


def leibniz_from_matrices(w, v, algebra: SoAlgebra | None = None):
    """Pairing of two coherent states through the matrix pipeline.

    Applies exp(w.L) to exp(v.R) vacuum, reads off the scale factor, and
    asserts it equals 1 - 2 w.v + (w.w)(v.v). Works on exact numbers and on
    symbolic components alike.
    """
    n = len(w)
    if len(v) != n:
        raise ValueError("w and v must have the same length")
    alg = algebra if algebra is not None else build_algebra(n)
    wc = [_coerce_component(c) for c in w]
    vc = [_coerce_component(c) for c in v]
    lower = DenseMatrix.zeros(n + 2)
    raiser = DenseMatrix.zeros(n + 2)
    for j in range(1, n + 1):
        lower = lower + wc[j - 1] * alg.L(j)
        raiser = raiser + vc[j - 1] * alg.R(j)
    omega = vacuum(n, alg)
    moved = exp_nilpotent(lower).apply(exp_nilpotent(raiser).apply(omega.entries))
    state = StateVector(moved)
    symbolic = any(isinstance(c, MultiPoly) for c in wc + vc)
    lam = lambda_factor(state)
    if not symbolic and lam:
        # on the invertible part of the orbit the full recovery must agree
        _, lam_check = recover_coordinates(state, want_v=True)
        if lam_check != lam:
            raise AssertionError("scale factor recovery is inconsistent")
    if symbolic:
        point = {f"w{j}": wc[j - 1] for j in range(1, n + 1)}
        point.update({f"v{j}": vc[j - 1] for j in range(1, n + 1)})
        expected = leibniz_base(n).subs(point)
    else:
        expected = leibniz_base_value(wc, vc)
    if lam != expected:
        raise AssertionError("matrix pipeline disagrees with the closed form")
    return lam


@dataclass(frozen=True)
class LeibnizValue:
    """Base polynomial of the pairing together with its weight exponent.

    tau_value None means the symbolic weight; otherwise the exponent is
    -tau_value/2 exactly.
    """

    base: MultiPoly
    tau_value: Fraction | None = None

    def __post_init__(self):
        if self.base.constant_term != 1:
            raise ValueError("the base must have constant term 1")
        n = max(
            (int(name[1:]) for name in self.base.variables() if name[0] == "w"),
            default=0,
        )
        swap = {f"w{j}": MultiPoly.var(f"v{j}") for j in range(1, n + 1)}
        swap.update({f"v{j}": MultiPoly.var(f"w{j}") for j in range(1, n + 1)})
        if self.base.subs(swap) != self.base:
            raise ValueError("the base must be symmetric under swapping w and v")

    def exponent(self):
        if self.tau_value is None:
            return TAU * Fraction(-1, 2)
        return Fraction(-self.tau_value, 2)

    def series(self, bound: int) -> MultiPoly:
        return series_power(self.base, self.exponent(), bound)


def leibniz_closed_form(
    n: int, truncation: int, tau: Fraction | None = None
) -> tuple:
    """The pairing as a truncated double series in w and v.

    Returns (LeibnizValue, series); with tau None the coefficients are
    polynomials in t.
    """
    value = LeibnizValue(leibniz_base(n), tau)
    return value, value.series(truncation)


def coherent_suite(n: int, count: int = 50, seed: int = 0, height: int = 5) -> Report:
    """Randomized exact checks of the coherent-state pipeline.

    Matrix pairing versus closed form, swap symmetry, the reproducing value
    at w = 0, scaled-state recovery, and (for n <= 2) the fully symbolic
    pairing identity.
    """
    import random

    rng = random.Random(seed)
    alg = build_algebra(n)

    def rand_tuple():
        return [
            Fraction(rng.randint(-height, height), rng.randint(1, height))
            for _ in range(n)
        ]

    checks = []
    try:
        vacuum(n, alg)
        checks.append(CheckResult("vacuum axioms", True))
    except AssertionError as exc:
        checks.append(CheckResult("vacuum axioms", False, str(exc)))
    agree = symmetric = reproducing = True
    for _ in range(count):
        w, v = rand_tuple(), rand_tuple()
        try:
            lam = leibniz_from_matrices(w, v, alg)
        except AssertionError:
            agree = False
            break
        if lam != leibniz_from_matrices(v, w, alg):
            symmetric = False
        if leibniz_from_matrices([0] * n, v, alg) != 1:
            reproducing = False
    checks.append(
        CheckResult(f"matrix pairing equals closed form ({count} points)", agree)
    )
    checks.append(CheckResult("pairing is symmetric under swapping w, v", symmetric))
    checks.append(CheckResult("pairing at w = 0 is 1", reproducing))
    recovered = True
    for _ in range(max(count // 2, 1)):
        v = rand_tuple()
        lam = Fraction(rng.randint(1, height), rng.randint(1, height))
        got_v, got_lam = recover_coordinates(lam * coherent_state(v, alg))
        if got_lam != lam or any(a != b for a, b in zip(got_v, v)):
            recovered = False
            break
    checks.append(CheckResult("scaled-state recovery", recovered))
    if n <= 2:
        w = [MultiPoly.var(f"w{j}") for j in range(1, n + 1)]
        v = [MultiPoly.var(f"v{j}") for j in range(1, n + 1)]
        try:
            leibniz_from_matrices(w, v, alg)
            checks.append(CheckResult("symbolic pairing identity", True))
        except AssertionError as exc:
            checks.append(CheckResult("symbolic pairing identity", False, str(exc)))
    return Report(f"coherent states (n={n})", checks)

"""The commuting observables acting on the vacuum: coordinate changes,
the cone transform, joint moments, and the generalized Laguerre basis.

The z coordinates parametrize exp(z.X) vacuum; h^2 = (1-z1)^2 - sum z_k^2
is the scale factor there, and the inverse change gives
h^2 = (1 + 2 v1 + v.v)^(-1). Raising z to -tau/2 powers of h^2 produces
the transform whose coefficients are the joint spectral moments; for n=1
everything collapses to the gamma/Laguerre classics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import build_algebra, build_observables
from .fock import (
    FockMatrix,
    build_hat,
    gram_matrix,
    mi_degree,
    mi_factorial,
    multi_indices,
    pair,
    positivity_probe,
    vacuum_vector,
)
from .matrices import DenseMatrix, exact_ldl, exp_nilpotent
from .poly import MultiPoly, TAU, exp_series, series_power
from .report import CheckResult, Report
from .scalars import GaussianRational, gr
from .states import (
    StateVector,
    coherent_closed_form,
    recover_coordinates,
    vacuum,
)

_I = gr(0, 1)


class SingularCoordinateError(ValueError):
    pass


def _coerce(value):
    if isinstance(value, (GaussianRational, MultiPoly)):
        return value
    return GaussianRational.coerce(value)


def zeta2_value(z):
    comps = [_coerce(c) for c in z]
    acc = comps[0] * comps[0]
    for c in comps[1:]:
        acc = acc - c * c
    return acc


def h2_value(z):
    comps = [_coerce(c) for c in z]
    acc = (1 - comps[0]) * (1 - comps[0])
    for c in comps[1:]:
        acc = acc - c * c
    return acc


@dataclass(frozen=True)
class ZCoordinates:
    """Symbolic z variables with their two quadratic companions."""

    n: int
    z: tuple
    zeta2: MultiPoly
    h2: MultiPoly

    @classmethod
    def symbolic(cls, n: int) -> "ZCoordinates":
        z = tuple(MultiPoly.var(f"z{j}") for j in range(1, n + 1))
        return cls(n, z, zeta2_value(z), h2_value(z))


def exp_zX_vacuum(z, algebra=None) -> StateVector:
    """exp(z.X) applied to the vacuum, via the nilpotent exponential, checked
    against the closed quadratic form."""
    n = len(z)
    alg = algebra if algebra is not None else build_algebra(n)
    comps = [_coerce(c) for c in z]
    obs = build_observables(n, alg)
    generator = DenseMatrix.zeros(n + 2)
    for c, e in zip(comps, obs):
        generator = generator + c * e.matrix
    omega = vacuum(n, alg)
    moved = StateVector(exp_nilpotent(generator).apply(omega.entries))
    zeta2 = zeta2_value(comps)
    closed = StateVector(
        (gr(0, 2) * (comps[0] - zeta2),)
        + tuple(2 * c for c in comps[1:])
        + (1 - 2 * comps[0] + 2 * zeta2, _I * (1 - 2 * comps[0]))
    )
    if moved != closed:
        raise AssertionError("closed form for exp(z.X) vacuum fails")
    return moved


def z_to_v(z):
    """(v, h^2) with v1 = (1 - z1 - h^2)/h^2 and v_k = -i z_k / h^2.

    Checked against coordinate recovery from the moved vacuum vector.
    """
    comps = [_coerce(c) for c in z]
    h2 = h2_value(comps)
    if not h2:
        raise SingularCoordinateError("h^2 vanishes at this point")
    v = ((1 - comps[0] - h2) / h2,) + tuple((-_I) * c / h2 for c in comps[1:])
    state = exp_zX_vacuum(comps)
    recovered_v, lam = recover_coordinates(state)
    if lam != h2 or any(a != b for a, b in zip(recovered_v, v)):
        raise AssertionError("coordinate recovery disagrees with the closed form")
    return v, h2


def v_to_z(v):
    """(z, h^2) with h^2 = (1 + 2 v1 + v.v)^(-1); inverse of z_to_v."""
    comps = [_coerce(c) for c in v]
    v2 = sum((c * c for c in comps), gr(0))
    denom = 1 + 2 * comps[0] + v2
    if not denom:
        raise SingularCoordinateError("1 + 2 v1 + v.v vanishes at this point")
    h2 = 1 / denom
    z = (1 - h2 * (1 + comps[0]),) + tuple(_I * h2 * c for c in comps[1:])
    back, back_h2 = z_to_v(z)
    if back_h2 != h2 or any(a != b for a, b in zip(back, comps)):
        raise AssertionError("round trip through the coordinate change fails")
    return z, h2


def verify_coordinate_duality(n: int) -> Report:
    """exp(z.X) vacuum = h^2 * coherent(v(z)) as exact identities in symbolic z.

    The spatial slots of h^2 * coherent(v(z)) are 2i (h^2 v_j) and the
    temporal ones are h^2 +- (h^2 v.v), so the check clears denominators by
    dividing sum (h^2 v_j)^2 by h^2 exactly.
    """
    coords = ZCoordinates.symbolic(n)
    state = exp_zX_vacuum(coords.z)
    checks = []
    num = (1 - coords.z[0] - coords.h2,) + tuple((-_I) * c for c in coords.z[1:])
    sq = MultiPoly.zero()
    for c in num:
        sq = sq + MultiPoly.coerce(c) * c
    try:
        scaled_v2 = sq.drop_truncation().exact_divide(coords.h2)
        checks.append(CheckResult("(h^2 v).(h^2 v) is divisible by h^2", True))
    except ValueError:
        return Report(
            f"coordinate duality (n={n})",
            [CheckResult("(h^2 v).(h^2 v) is divisible by h^2", False)],
        )
    expected = (
        tuple(gr(0, 2) * c for c in num)
        + (coords.h2 + scaled_v2, _I * (coords.h2 - scaled_v2))
    )
    for i, (got, want) in enumerate(zip(state.entries, expected)):
        checks.append(CheckResult(f"component {i + 1} matches", got == want))
    return Report(f"coordinate duality (n={n})", checks)


def roundtrip_check(n: int, count: int, seed: int, height: int = 5) -> Report:
    """v -> z -> v on random exact points with nonzero denominators."""
    import random

    rng = random.Random(seed)
    checks = []
    done = 0
    while done < count:
        v = [
            Fraction(rng.randint(-height, height), rng.randint(1, height))
            for _ in range(n)
        ]
        try:
            z, h2 = v_to_z(v)
        except SingularCoordinateError:
            continue
        back, back_h2 = z_to_v(z)
        ok = back_h2 == h2 and all(a == b for a, b in zip(back, v))
        checks.append(CheckResult(f"round trip at point {done + 1}", ok))
        done += 1
    return Report(f"coordinate round trips (n={n})", checks)


def spectral_transform(n: int, truncation: int, tau: Fraction | None = None):
    """Series of ((1-z1)^2 - sum z_k^2) ** (-tau/2) in the z variables."""
    coords = ZCoordinates.symbolic(n)
    exponent = TAU * Fraction(-1, 2) if tau is None else Fraction(-tau, 2)
    return series_power(coords.h2, exponent, truncation)


@dataclass(frozen=True)
class MomentTable:
    """Joint moments E[x^k] = k! [z^k] of the transform."""

    n: int
    max_degree: int
    tau: Fraction | None
    entries: dict

    def moment(self, k):
        return self.entries.get(tuple(k), MultiPoly.zero())


def hat_observable(hat, j: int) -> FockMatrix:
    """X_j in the hat realization: X1 = R1 + L1 + rho0 and, for j >= 2,
    X_j = -i (R_j - L_j - 2 rho_1j)."""
    if j == 1:
        return hat.R(1) + hat.L(1) + hat.rho0
    return (-_I) * (hat.R(j) - hat.L(j) - 2 * hat.rho(1, j))


def _hat_moments(n: int, max_degree: int) -> dict:
    """<vacuum, X^k vacuum> for all |k| <= max_degree, weight symbolic.

    The X^k vacuum vectors are built by extending one slot at a time (the
    family commutes, so the extension order is immaterial), and each
    expectation is taken with the Gram pairing against the vacuum.
    """
    bound = max(max_degree, 2)
    hat = build_hat(n, bound)
    gram = gram_matrix(n, bound)
    omega = vacuum_vector(n)
    xs = [hat_observable(hat, j) for j in range(1, n + 1)]
    table = {(0,) * n: omega}
    out = {}
    for k in multi_indices(n, max_degree):
        if k not in table:
            j = next(i for i, e in enumerate(k) if e)
            prev = tuple(e - (1 if i == j else 0) for i, e in enumerate(k))
            table[k] = xs[j].apply(table[prev])
        out[k] = MultiPoly.coerce(pair(gram, omega, table[k]))
    return out


def moments(
    n: int, max_degree: int, tau: Fraction | None = None, check_hat: bool = True
) -> MomentTable:
    """Moment table from the transform, cross-checked against the vacuum
    expectations of the observable family in the hat realization."""
    series = spectral_transform(n, max_degree)
    buckets = series.split_groups({"z"})
    entries = {}
    for k in multi_indices(n, max_degree):
        mono = tuple((f"z{j}", e) for j, e in enumerate(k, start=1) if e)
        coeff = buckets.get(mono, MultiPoly.zero())
        entries[k] = mi_factorial(k) * coeff
    if check_hat:
        expected = _hat_moments(n, max_degree)
        for k, value in entries.items():
            if expected[k] != value:
                raise AssertionError(f"moment mismatch at {k}")
    if tau is not None:
        point = {"t": Fraction(tau)}
        entries = {k: v.subs(point) for k, v in entries.items()}
    return MomentTable(n, max_degree, tau, entries)


@dataclass(frozen=True)
class MomentProbe:
    positive_definite: bool
    pivots: tuple
    completed: bool
    float_min_eigenvalue: float


def moment_positivity_probe(n: int, tau: Fraction, degree: int) -> MomentProbe:
    """Exact LDL of the moment matrix M[k][m] = E[x^(k+m)].

    An empirical probe of one weight, not a positivity proof.
    """
    table = moments(n, 2 * degree, tau=Fraction(tau), check_hat=False)
    basis = multi_indices(n, degree)
    mat = []
    for k in basis:
        row = []
        for m in basis:
            s = tuple(a + b for a, b in zip(k, m))
            row.append(table.moment(s).as_gaussian().as_fraction())
        mat.append(row)
    pivots, completed = exact_ldl(mat)
    verdict = completed and len(pivots) == len(basis) and all(p > 0 for p in pivots)
    import numpy as np

    arr = np.array([[float(x) for x in row] for row in mat], dtype=float)
    min_eig = float(np.linalg.eigvalsh(arr).min()) if len(mat) else 0.0
    return MomentProbe(verdict, tuple(pivots), completed, min_eig)


@dataclass(frozen=True)
class BasisPolynomial:
    index: tuple
    poly: MultiPoly


def basis_polynomials(
    n: int, max_total_degree: int, tau: Fraction | None = None
) -> list:
    """Basis states as polynomials in the spectral variables x_1..x_n.

    |k>(x) is k! times the v^k coefficient of
    exp((x1 (v1 + v.v) + i (x.v - x1 v1)) h^2(v)) * h^2(v)^(tau/2)
    with h^2(v) = (1 + 2 v1 + v.v)^(-1).
    """
    kmax = max_total_degree
    if kmax < 0:
        raise ValueError("degree must be non-negative")
    v = [MultiPoly.var(f"v{j}") for j in range(1, n + 1)]
    x = [MultiPoly.var(f"x{j}") for j in range(1, n + 1)]
    v2 = sum((c * c for c in v), MultiPoly.zero())
    q = 1 + 2 * v[0] + v2
    inv_q = series_power(q, Fraction(-1), kmax)
    cross = sum((a * b for a, b in zip(x, v)), MultiPoly.zero())
    numerator = x[0] * (v[0] + v2) + _I * (cross - x[0] * v[0])
    exponent_arg = numerator * inv_q
    exp_part = exp_series(exponent_arg, kmax)
    weight_exp = TAU * Fraction(-1, 2) if tau is None else Fraction(-tau, 2)
    weight_part = series_power(q, weight_exp, kmax)
    gf = exp_part * weight_part
    buckets = gf.split_groups({"v"})
    out = []
    for k in multi_indices(n, kmax):
        mono = tuple((f"v{j}", e) for j, e in enumerate(k, start=1) if e)
        coeff = buckets.get(mono, MultiPoly.zero())
        out.append(BasisPolynomial(k, mi_factorial(k) * coeff))
    return out


def _apply_moment_functional(poly: MultiPoly, table: MomentTable, n: int):
    acc = MultiPoly.zero()
    for mono, cofactor in poly.split_groups({"x"}).items():
        k = [0] * n
        for name, e in mono:
            k[int(name[1:]) - 1] = e
        acc = acc + cofactor * table.moment(tuple(k))
    return acc


def vacuum_orthogonality_check(n: int, kmax: int) -> Report:
    """E[p_k] = 0 for every nonzero k, as identities in the weight."""
    table = moments(n, kmax, check_hat=False)
    polys = basis_polynomials(n, kmax)
    checks = []
    for bp in polys:
        value = _apply_moment_functional(bp.poly, table, n)
        expected_zero = mi_degree(bp.index) > 0
        ok = value.is_zero if expected_zero else value == 1
        name = (
            f"E[p_{bp.index}] = 0" if expected_zero else f"E[p_{bp.index}] = 1"
        )
        checks.append(CheckResult(name, ok))
    return Report(f"vacuum orthogonality (n={n}, kmax={kmax})", checks)


def orthogonality_check(tau: Fraction, kmax: int) -> Report:
    """Three routes to <p_k, p_m> for n=1 at an exact weight:

    (a) the Gram table from the Leibniz series, (b) the moment functional
    applied to p_k p_m, (c) the closed form delta_km k! (tau)_k.
    """
    tau = Fraction(tau)
    gram = gram_matrix(1, kmax)
    point = {"t": tau}
    table = moments(1, 2 * kmax, tau=tau, check_hat=False)
    polys = {bp.index: bp.poly for bp in basis_polynomials(1, kmax, tau=tau)}
    checks = [
        CheckResult(
            "pairing is positive definite at this weight",
            positivity_probe(1, kmax, tau).positive_definite,
        )
    ]
    for k in range(kmax + 1):
        for m in range(k, kmax + 1):
            a = gram.entry((k,), (m,)).subs(point).as_gaussian()
            b = _apply_moment_functional(
                polys[(k,)] * polys[(m,)], table, 1
            ).as_gaussian()
            if k == m:
                c = Fraction(mi_factorial((k,)))
                for i in range(k):
                    c *= tau + i
            else:
                c = Fraction(0)
            ok = a == b == c
            checks.append(CheckResult(f"<p_{k}, p_{m}> agrees on all routes", ok))
    return Report(f"orthogonality routes (n=1, tau={tau}, kmax={kmax})", checks)


def moment_consistency_check(n: int, max_degree: int) -> Report:
    """k! [z^k] of the transform equals <vacuum, X^k vacuum>, symbolically."""
    try:
        moments(n, max_degree, check_hat=True)
        ok = True
    except AssertionError:
        ok = False
    return Report(
        f"moment consistency (n={n}, degree={max_degree})",
        [CheckResult("transform moments match vacuum expectations", ok)],
    )

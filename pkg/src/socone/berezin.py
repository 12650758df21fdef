"""The coherent-state transform of operators and the identities behind the
hat realization: the raising symbol, the first-order system solved by the
pairing, the alternate lowering form, and the ordering recipe.

Rational-function identities are verified by clearing the weight power and
comparing polynomials, never by sampling alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import OperatorWord, build_algebra, word_to_matrix
from .fock import (
    FockMatrix,
    build_hat,
    coherent_vector,
    gram_matrix,
    mi_degree,
    multi_indices,
    pair,
)
from .matrices import DenseMatrix, exp_nilpotent
from .poly import MultiPoly, TAU, group_of, series_power
from .report import CheckResult, Report
from .scalars import GaussianRational, gr
from .states import (
    lambda_factor,
    leibniz_base,
    leibniz_base_value,
    leibniz_closed_form,
    StateVector,
    vacuum,
)

_I = gr(0, 1)


class PoleError(ZeroDivisionError):
    pass


def _word_total_length(words) -> int:
    return sum(len(w.factors) for w in words)


def _words(word_or_words):
    if isinstance(word_or_words, OperatorWord):
        return [word_or_words]
    return list(word_or_words)


def _matrix_of(words, algebra) -> DenseMatrix:
    acc = DenseMatrix.zeros(algebra.n + 2)
    for w in words:
        acc = acc + word_to_matrix(algebra, w)
    return acc


def _fock_of(words, hat) -> FockMatrix:
    acc = FockMatrix.zero(hat.n, hat.degree_bound)
    for w in words:
        piece = FockMatrix.identity(hat.n, hat.degree_bound)
        for label in w.factors:
            piece = piece * hat.matrix_for_label(label)
        acc = acc + w.coeff * piece
    return acc


def fock_pairing_series(words, n: int, degree_bound: int) -> MultiPoly:
    """<psi_w, Q psi_v> as a truncated double series, weight symbolic."""
    hat = build_hat(n, degree_bound)
    q = _fock_of(_words(words), hat)
    left = coherent_vector(n, degree_bound, "w")
    right = coherent_vector(n, degree_bound, "v")
    moved = {}
    for k, coeff in right.items():
        for m, value in q.apply({k: gr(1)}).items():
            acc = moved.get(m)
            p = value * coeff
            moved[m] = p if acc is None else acc + p
    gram = gram_matrix(n, degree_bound)
    return pair(gram, left, moved)


def berezin_transform(word_or_words, w, v, check_fock: bool = True):
    """Normalized coherent matrix element of an operator word, exact.

    In the matrix realization the weight is -2, the pairing denominator is
    the Leibniz value at (w, v), and the numerator is the vacuum functional
    of exp(w.L) Q exp(v.R) vacuum. With check_fock the same number is
    recomputed through the Fock pairing at weight -2 and asserted equal.
    """
    words = _words(word_or_words)
    n = len(w)
    alg = build_algebra(n)
    den = leibniz_base_value(w, v)
    if not den:
        raise PoleError("the pairing vanishes at this point")
    omega = vacuum(n, alg)
    lower = DenseMatrix.zeros(n + 2)
    raiser = DenseMatrix.zeros(n + 2)
    for j in range(1, n + 1):
        lower = lower + GaussianRational.coerce(w[j - 1]) * alg.L(j)
        raiser = raiser + GaussianRational.coerce(v[j - 1]) * alg.R(j)
    moved = exp_nilpotent(raiser).apply(omega.entries)
    moved = _matrix_of(words, alg).apply(moved)
    moved = exp_nilpotent(lower).apply(moved)
    numerator = lambda_factor(StateVector(moved))
    if check_fock:
        bound = 3 + max((len(x.factors) for x in words), default=0)
        series = fock_pairing_series(words, n, bound).subs({"t": Fraction(-2)})
        point = {}
        for j in range(1, n + 1):
            point[f"w{j}"] = GaussianRational.coerce(w[j - 1])
            point[f"v{j}"] = GaussianRational.coerce(v[j - 1])
        via_fock = series.subs(point).as_gaussian()
        if via_fock != numerator:
            raise AssertionError("matrix and Fock numerators disagree at weight -2")
    return numerator / den


def berezin_symbol_series(word_or_words, n: int, degree_bound: int):
    """(numerator series, denominator series) at symbolic weight."""
    num = fock_pairing_series(word_or_words, n, degree_bound)
    _, den = leibniz_closed_form(n, degree_bound)
    return num, den


def verify_raising_identity(n: int, degree_bound: int = 4) -> Report:
    """The raising symbol is the v_j-derivative of the log of the pairing.

    Cleared form: with P the pairing base, t (w_j - v_j w.w) must equal
    -(t/2) dP/dv_j exactly, and the Fock numerator series for R_j must be
    the v_j-derivative of the pairing series.
    """
    base = leibniz_base(n)
    w2 = MultiPoly.zero()
    for j in range(1, n + 1):
        wj = MultiPoly.var(f"w{j}")
        w2 = w2 + wj * wj
    checks = []
    for j in range(1, n + 1):
        wj = MultiPoly.var(f"w{j}")
        vj = MultiPoly.var(f"v{j}")
        lhs = TAU * (wj - vj * w2)
        rhs = Fraction(-1, 2) * TAU * base.diff(f"v{j}")
        checks.append(
            CheckResult(f"cleared raising symbol for j={j}", lhs == rhs)
        )
        dv = base.diff(f"v{j}")
        checks.append(
            CheckResult(
                f"raising symbol vanishes at w=0 for j={j}",
                dv.subs({f"w{i}": 0 for i in range(1, n + 1)}).is_zero,
            )
        )
    _, series = leibniz_closed_form(n, degree_bound)
    for j in range(1, n + 1):
        fock_num = fock_pairing_series(
            OperatorWord.of(f"R{j}", realization="fock"), n, degree_bound
        )
        checks.append(
            CheckResult(
                f"Fock numerator for R{j} is d/dv{j} of the pairing series",
                fock_num == series.diff(f"v{j}"),
            )
        )
    return Report(f"raising symbol (n={n})", checks)


def verify_pde_system(n: int) -> Report:
    """The first-order system solved by the pairing, cleared to polynomials:

    -(t/2) dP/dw_j = t v_j P - t v_j v_l dP/dv_l + (t/2) v.v dP/dv_j.
    """
    base = leibniz_base(n)
    v = [MultiPoly.var(f"v{j}") for j in range(1, n + 1)]
    v2 = sum((c * c for c in v), MultiPoly.zero())
    checks = []
    for j in range(1, n + 1):
        lhs = Fraction(-1, 2) * TAU * base.diff(f"w{j}")
        sum_term = MultiPoly.zero()
        for l in range(1, n + 1):
            sum_term = sum_term + v[l - 1] * base.diff(f"v{l}")
        rhs = (
            TAU * v[j - 1] * base
            - TAU * v[j - 1] * sum_term
            + Fraction(1, 2) * TAU * v2 * base.diff(f"v{j}")
        )
        checks.append(CheckResult(f"first-order identity for j={j}", lhs == rhs))
        degrees = {
            sum(e for name, e in mono if name == "t") for mono in lhs.terms
        } | {sum(e for name, e in mono if name == "t") for mono in rhs.terms}
        checks.append(
            CheckResult(f"t-homogeneity of degree 1 for j={j}", degrees <= {1})
        )
    return Report(f"first-order pairing system (n={n})", checks)


def bessel_form_check(n: int, degree_bound: int) -> Report:
    """The lowering operator agrees with rho0 V_j - R_j V.V, everywhere."""
    hat = build_hat(n, degree_bound)
    vsq = None
    for j in range(1, n + 1):
        term = hat.shift_lower(j) * hat.shift_lower(j)
        vsq = term if vsq is None else vsq + term
    checks = []
    omega = {(0,) * n: gr(1)}
    for j in range(1, n + 1):
        alt = hat.rho0 * hat.shift_lower(j) - hat.shift_raise(j) * vsq
        checks.append(CheckResult(f"lowering form for j={j}", alt == hat.L(j)))
        checks.append(
            CheckResult(
                f"both forms annihilate the vacuum for j={j}",
                not hat.L(j).apply(omega) and not alt.apply(omega),
            )
        )
    return Report(f"alternate lowering form (n={n}, D={degree_bound})", checks)


# -- word rewriting and the ordering recipe ------------------------------------


def normal_order(word) -> dict:
    """Rewrite a shift-operator word with every raise left of every lower.

    word is a tuple of ("R", j) and ("V", j) pairs. Returns a map
    (raises, lowers) -> integer coefficient, where raises and lowers are
    sorted tuples of slot indices, using [V_j, R_j] = 1.
    """
    result = {}
    stack = [(1, tuple(word))]
    while stack:
        coeff, w = stack.pop()
        swap_at = None
        for i in range(len(w) - 1):
            if w[i][0] == "V" and w[i + 1][0] == "R":
                swap_at = i
                break
        if swap_at is None:
            raises = tuple(sorted(j for kind, j in w if kind == "R"))
            lowers = tuple(sorted(j for kind, j in w if kind == "V"))
            key = (raises, lowers)
            result[key] = result.get(key, 0) + coeff
            if not result[key]:
                del result[key]
            continue
        a, b = w[swap_at], w[swap_at + 1]
        swapped = w[:swap_at] + (b, a) + w[swap_at + 2 :]
        stack.append((coeff, swapped))
        if a[1] == b[1]:
            stack.append((coeff, w[:swap_at] + w[swap_at + 2 :]))
    return result


def _diffop_apply(normal_terms: dict, vector: dict):
    """Apply the ordering substitution to a coherent-parameter vector.

    A normal word R^a V^b acts on the parameter side as multiplication by
    v^b after differentiation d^a; the substitution reverses the factor
    order, matching the adjoint-style pairing of the two pictures.
    """
    out = {}
    for (raises, lowers), coeff in normal_terms.items():
        for k, poly in vector.items():
            p = MultiPoly.coerce(poly)
            for j in raises:
                p = p.diff(f"v{j}")
            for j in lowers:
                p = p * MultiPoly.var(f"v{j}")
            p = coeff * p
            if p.is_zero:
                continue
            acc = out.get(k)
            out[k] = p if acc is None else acc + p
    return {k: v for k, v in out.items() if v}


def wick_recipe_check(n: int, degree_bound: int, max_length: int = 3) -> Report:
    """Direct shift action on the coherent vector versus the ordering
    substitution, for every word up to the given length.

    Both routes are compared on components of degree at most D minus the
    word length budget, where the truncation cannot have leaked.
    """
    hat = build_hat(n, degree_bound)
    psi = coherent_vector(n, degree_bound, "v")
    safe = degree_bound - max_length
    alphabet = [("R", j) for j in range(1, n + 1)] + [
        ("V", j) for j in range(1, n + 1)
    ]
    words = [()]
    for length in range(max_length):
        words.extend(
            w + (a,) for w in list(words) if len(w) == length for a in alphabet
        )
    checks = []
    mismatches = 0
    for word in words:
        direct = dict(psi)
        for kind, j in reversed(word):
            op = hat.shift_raise(j) if kind == "R" else hat.shift_lower(j)
            direct = op.apply(direct)
        subst = _diffop_apply(normal_order(word), psi)
        ok = True
        for k in multi_indices(n, safe):
            a = MultiPoly.coerce(direct.get(k, MultiPoly.zero()))
            b = MultiPoly.coerce(subst.get(k, MultiPoly.zero()))
            fa = {m: c for m, c in a.terms.items() if mi_mono_degree(m) <= safe}
            fb = {m: c for m, c in b.terms.items() if mi_mono_degree(m) <= safe}
            if fa != fb:
                ok = False
                break
        if not ok:
            mismatches += 1
    checks.append(
        CheckResult(
            f"all {len(words)} words of length <= {max_length} agree",
            mismatches == 0,
            detail="" if not mismatches else f"{mismatches} mismatches",
        )
    )
    return Report(f"ordering recipe (n={n}, D={degree_bound})", checks)


def mi_mono_degree(mono) -> int:
    return sum(e for name, e in mono if group_of(name) == "v")


def hat_from_pde_check(n: int, degree_bound: int) -> Report:
    """Reading the lowering operators off the first-order system reproduces
    the built family exactly.

    The right side t v_j + 2 v_j v_l d_l - v.v d_j maps, with multiplication
    v_m -> V_m and derivative d_m -> R_m and factor order reversed, onto
    t V_j + 2 R_l V_l V_j - R_j V.V.
    """
    hat = build_hat(n, degree_bound)
    checks = []
    for j in range(1, n + 1):
        acc = TAU * hat.shift_lower(j)
        for l in range(1, n + 1):
            acc = acc + 2 * (
                hat.shift_raise(l) * hat.shift_lower(l) * hat.shift_lower(j)
            )
            acc = acc - hat.shift_raise(j) * (
                hat.shift_lower(l) * hat.shift_lower(l)
            )
        checks.append(
            CheckResult(f"lowering operator read off the system, j={j}", acc == hat.L(j))
        )
    return Report(f"system to hat realization (n={n}, D={degree_bound})", checks)


def vacuum_symbol_check(n: int, degree_bound: int = 3) -> Report:
    """The transform of rho0 at w=v=0 is the weight itself."""
    num, den = berezin_symbol_series(
        OperatorWord.of("rho0", realization="fock"), n, degree_bound
    )
    zero_point = {}
    for j in range(1, n + 1):
        zero_point[f"w{j}"] = 0
        zero_point[f"v{j}"] = 0
    value = num.subs(zero_point)
    ok = value == TAU and den.subs(zero_point) == 1
    return Report(
        f"vacuum symbol (n={n})",
        [CheckResult("transform of rho0 at the origin equals t", ok)],
    )

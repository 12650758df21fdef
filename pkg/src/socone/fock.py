"""Degree-truncated Fock space, shift operators, the hat realization, Gram
matrices, and exact positivity probes.

Basis states are multi-indices (k_1..k_n) of total degree at most D in
graded lexicographic order. Raising out of the truncated space lands in a
flagged boundary sink (the write is dropped and the source column is
recorded), and every relation check restricts to interior blocks where the
truncation cannot leak, so each reported identity is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .matrices import exact_ldl
from .poly import MultiPoly, TAU
from .report import CheckResult, Report
from .scalars import GaussianRational, gr
from .states import leibniz_closed_form


def multi_indices(n: int, max_degree: int) -> list:
    """All multi-indices of length n with total degree <= max_degree."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            for d in range(remaining + 1):
                out.append(prefix + (d,))
            return
        for d in range(remaining + 1):
            rec(prefix + (d,), remaining - d, slots - 1)

    for total in range(max_degree + 1):
        block = []

        def fill(prefix, left, slots):
            if slots == 0:
                if left == 0:
                    block.append(prefix)
                return
            for d in range(left + 1):
                fill(prefix + (d,), left - d, slots - 1)

        fill((), total, n)
        block.sort(key=lambda k: tuple(-x for x in k))
        out.extend(block)
    return out


def mi_degree(k) -> int:
    return sum(k)


def mi_factorial(k) -> int:
    p = 1
    for x in k:
        p *= factorial(x)
    return p


def _shift(k, j, delta):
    out = list(k)
    out[j - 1] += delta
    return tuple(out)


class FockMatrix:
    """Sparse operator matrix on the truncated Fock basis.

    Entries are exact scalars or polynomials in t. flagged records the
    columns whose raising action fell off the truncation boundary anywhere
    in the history of the matrix.
    """

    __slots__ = ("n", "degree_bound", "basis", "index", "entries", "flagged")

    def __init__(self, n, degree_bound, entries=None, flagged=frozenset(), basis=None):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "degree_bound", degree_bound)
        basis = basis if basis is not None else tuple(multi_indices(n, degree_bound))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "index", {k: i for i, k in enumerate(basis)})
        cleaned = {}
        for pos, value in (entries or {}).items():
            if value:
                cleaned[pos] = value
        object.__setattr__(self, "entries", cleaned)
        object.__setattr__(self, "flagged", frozenset(flagged))

    def __setattr__(self, name, value):
        raise AttributeError("FockMatrix is immutable")

    @classmethod
    def zero(cls, n, degree_bound):
        return cls(n, degree_bound)

    @classmethod
    def identity(cls, n, degree_bound):
        m = cls(n, degree_bound)
        return cls(
            n,
            degree_bound,
            {(i, i): gr(1) for i in range(len(m.basis))},
            basis=m.basis,
        )

    def _like(self, entries, flagged=None):
        return FockMatrix(
            self.n,
            self.degree_bound,
            entries,
            self.flagged if flagged is None else flagged,
            basis=self.basis,
        )

    def _check_space(self, other):
        if (self.n, self.degree_bound) != (other.n, other.degree_bound):
            raise ValueError("operators live on different truncated spaces")

    def __add__(self, other):
        if not isinstance(other, FockMatrix):
            return NotImplemented
        self._check_space(other)
        entries = dict(self.entries)
        for pos, value in other.entries.items():
            acc = entries.get(pos)
            s = value if acc is None else acc + value
            if s:
                entries[pos] = s
            elif acc is not None:
                del entries[pos]
        return self._like(entries, self.flagged | other.flagged)

    def __sub__(self, other):
        if not isinstance(other, FockMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return self._like({p: -v for p, v in self.entries.items()})

    def __mul__(self, other):
        if isinstance(other, FockMatrix):
            self._check_space(other)
            by_row = {}
            for (r, c), value in other.entries.items():
                by_row.setdefault(r, []).append((c, value))
            entries = {}
            for (i, j), a in self.entries.items():
                for c, b in by_row.get(j, ()):  # noqa: B905
                    pos = (i, c)
                    p = a * b
                    acc = entries.get(pos)
                    s = p if acc is None else acc + p
                    if s:
                        entries[pos] = s
                    elif acc is not None:
                        del entries[pos]
            return self._like(entries, self.flagged | other.flagged)
        if isinstance(other, (int, Fraction, GaussianRational, MultiPoly)):
            if not other:
                return self._like({})
            return self._like({p: v * other for p, v in self.entries.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, MultiPoly)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, FockMatrix):
            return NotImplemented
        self._check_space(other)
        keys = set(self.entries) | set(other.entries)
        zero = gr(0)
        return all(
            self.entries.get(k, zero) == other.entries.get(k, zero) for k in keys
        )

    __hash__ = None

    @property
    def is_zero(self):
        return not self.entries

    def transpose(self):
        return self._like({(c, r): v for (r, c), v in self.entries.items()})

    def restrict(self, max_degree: int) -> "FockMatrix":
        """Drop every entry whose row or column exceeds the given degree."""
        entries = {
            (r, c): v
            for (r, c), v in self.entries.items()
            if mi_degree(self.basis[r]) <= max_degree
            and mi_degree(self.basis[c]) <= max_degree
        }
        return self._like(entries)

    def apply(self, vector: dict) -> dict:
        """Apply to a sparse vector keyed by multi-index."""
        out = {}
        cols = {}
        for (r, c), value in self.entries.items():
            cols.setdefault(c, []).append((r, value))
        for k, coeff in vector.items():
            for r, value in cols.get(self.index[k], ()):  # noqa: B905
                mi = self.basis[r]
                p = value * coeff
                acc = out.get(mi)
                s = p if acc is None else acc + p
                if s:
                    out[mi] = s
                elif acc is not None:
                    del out[mi]
        return out

    def entry(self, row_mi, col_mi):
        return self.entries.get((self.index[row_mi], self.index[col_mi]), gr(0))

    def subs(self, assignments) -> "FockMatrix":
        out = {}
        for pos, value in self.entries.items():
            if isinstance(value, MultiPoly):
                value = value.subs(assignments)
            if value:
                out[pos] = value
        return self._like(out)


def fock_commutator(a: FockMatrix, b: FockMatrix) -> FockMatrix:
    return a * b - b * a


def build_combinatorial(n: int, degree_bound: int, kind: str, j: int) -> FockMatrix:
    """The shift operators: kind "raise" appends to slot j with coefficient 1,
    kind "lower" removes one from slot j with coefficient k_j."""
    if degree_bound < 1:
        raise ValueError("the truncation degree must be at least 1")
    if not 1 <= j <= n:
        raise ValueError("slot index out of range")
    proto = FockMatrix.zero(n, degree_bound)
    entries = {}
    flagged = set()
    for col, k in enumerate(proto.basis):
        if kind == "raise":
            if mi_degree(k) < degree_bound:
                entries[(proto.index[_shift(k, j, 1)], col)] = gr(1)
            else:
                flagged.add(col)
        elif kind == "lower":
            if k[j - 1] > 0:
                entries[(proto.index[_shift(k, j, -1)], col)] = gr(k[j - 1])
        else:
            raise ValueError(f"unknown shift kind {kind!r}")
    return FockMatrix(n, degree_bound, entries, flagged, basis=proto.basis)


@dataclass(frozen=True)
class HatFamily:
    """The full operator family on the truncated Fock space, weight symbolic."""

    n: int
    degree_bound: int
    raising: tuple
    lowering: tuple
    ladder_r: tuple
    ladder_l: tuple
    rho0: FockMatrix
    rotations: dict = field(hash=False)

    def R(self, j: int) -> FockMatrix:
        return self.ladder_r[j - 1]

    def L(self, j: int) -> FockMatrix:
        return self.ladder_l[j - 1]

    def rho(self, j: int, k: int) -> FockMatrix:
        if j == k:
            raise ValueError("rho needs distinct indices")
        if j < k:
            return self.rotations[(j, k)]
        return -self.rotations[(k, j)]

    def shift_raise(self, j: int) -> FockMatrix:
        return self.raising[j - 1]

    def shift_lower(self, j: int) -> FockMatrix:
        return self.lowering[j - 1]

    def matrix_for_label(self, label: str) -> FockMatrix:
        if label == "rho0":
            return self.rho0
        if label[0] == "R":
            return self.R(int(label[1:]))
        if label[0] == "L":
            return self.L(int(label[1:]))
        if label.startswith("rho"):
            return self.rho(int(label[3]), int(label[4]))
        raise ValueError(f"unknown generator label {label!r}")


def build_hat(n: int, degree_bound: int) -> HatFamily:
    """Ladder and rotation operators as polynomials in the shift operators.

    L_j is t V_j + 2 (R_l V_l) V_j - R_j V.V; the equivalent form
    rho0 V_j - R_j V.V is built as well and the equality is asserted.
    """
    if degree_bound < 2:
        raise ValueError("need truncation degree at least 2")
    raising = tuple(
        build_combinatorial(n, degree_bound, "raise", j) for j in range(1, n + 1)
    )
    lowering = tuple(
        build_combinatorial(n, degree_bound, "lower", j) for j in range(1, n + 1)
    )
    number = None
    vsq = None
    for rj, vj in zip(raising, lowering):
        nterm = rj * vj
        vterm = vj * vj
        number = nterm if number is None else number + nterm
        vsq = vterm if vsq is None else vsq + vterm
    identity = FockMatrix.identity(n, degree_bound)
    rho0 = TAU * identity + 2 * number
    ladder_l = []
    for j in range(1, n + 1):
        vj = lowering[j - 1]
        lj = TAU * vj + 2 * (number * vj) - raising[j - 1] * vsq
        bessel = rho0 * vj - raising[j - 1] * vsq
        if lj != bessel:
            raise AssertionError("the two lowering forms disagree")
        ladder_l.append(lj)
    rotations = {}
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            rotations[(j, k)] = raising[j - 1] * lowering[k - 1] - raising[
                k - 1
            ] * lowering[j - 1]
    return HatFamily(
        n,
        degree_bound,
        raising,
        lowering,
        raising,  # algebraic raising acts as the shift itself
        tuple(ladder_l),
        rho0,
        rotations,
    )


def vacuum_vector(n: int) -> dict:
    return {(0,) * n: gr(1)}


def verify_hat_relations(n: int, degree_bound: int) -> Report:
    """Every bracket identity of the realization, exactly, on interior blocks.

    Interior means rows and columns of degree at most D-2, where a single
    raising step can never have touched the truncation boundary.
    """
    if degree_bound < 3:
        raise ValueError("need truncation degree at least 3")
    hat = build_hat(n, degree_bound)
    interior = degree_bound - 2
    checks = []

    def record(name, lhs, rhs):
        checks.append(
            CheckResult(name, lhs.restrict(interior) == rhs.restrict(interior))
        )

    zero = FockMatrix.zero(n, degree_bound)
    for j in range(1, n + 1):
        record(
            f"[rho0^, R{j}^] = 2 R{j}^",
            fock_commutator(hat.rho0, hat.R(j)),
            2 * hat.R(j),
        )
        record(
            f"[L{j}^, rho0^] = 2 L{j}^",
            fock_commutator(hat.L(j), hat.rho0),
            2 * hat.L(j),
        )
        record(
            f"[L{j}^, R{j}^] = rho0^",
            fock_commutator(hat.L(j), hat.R(j)),
            hat.rho0,
        )
    for j in range(1, n + 1):
        for k in range(1, n + 1):
            if j == k:
                continue
            record(
                f"[L{k}^, R{j}^] = 2 rho{j}{k}^",
                fock_commutator(hat.L(k), hat.R(j)),
                2 * hat.rho(j, k),
            )
            record(
                f"[rho{j}{k}^, L{k}^] = L{j}^",
                fock_commutator(hat.rho(j, k), hat.L(k)),
                hat.L(j),
            )
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            record(f"[R{j}^, R{k}^] = 0", fock_commutator(hat.R(j), hat.R(k)), zero)
            record(f"[L{j}^, L{k}^] = 0", fock_commutator(hat.L(j), hat.L(k)), zero)
            record(
                f"[rho{j}{k}^, rho0^] = 0",
                fock_commutator(hat.rho(j, k), hat.rho0),
                zero,
            )
    # interior shift-operator commutator
    for j in range(1, n + 1):
        comm = fock_commutator(hat.shift_lower(j), hat.shift_raise(j))
        ident = FockMatrix.identity(n, degree_bound)
        checks.append(
            CheckResult(
                f"[V{j}, R{j}] = 1 (interior)",
                comm.restrict(degree_bound - 1) == ident.restrict(degree_bound - 1),
            )
        )
    # vacuum axioms
    omega = vacuum_vector(n)
    ok = all(not hat.L(j).apply(omega) for j in range(1, n + 1))
    checks.append(CheckResult("L^ annihilates the vacuum", ok))
    rho0_omega = hat.rho0.apply(omega)
    checks.append(
        CheckResult(
            "rho0^ vacuum eigenvalue is t",
            rho0_omega == {(0,) * n: TAU},
        )
    )
    ok = all(
        not hat.rho(j, k).apply(omega)
        for j in range(1, n + 1)
        for k in range(j + 1, n + 1)
    )
    checks.append(CheckResult("rotations annihilate the vacuum", ok))
    return Report(f"hat realization relations (n={n}, D={degree_bound})", checks)


@dataclass(frozen=True)
class GramMatrix:
    """Pairings of basis states, entries polynomial in t.

    G[k][m] = k! m! [w^k v^m] of the Leibniz series; the entries vanish
    between different degrees, the vacuum entry is 1, and the table is
    symmetric. All three facts are asserted on build.
    """

    n: int
    degree_bound: int
    basis: tuple
    entries: dict = field(hash=False)

    def entry(self, k, m) -> MultiPoly:
        return self.entries.get((k, m), MultiPoly.zero())

    def eval_at(self, tau: Fraction) -> list:
        """Dense Fraction matrix in basis order at an exact weight."""
        size = len(self.basis)
        out = [[Fraction(0)] * size for _ in range(size)]
        point = {"t": Fraction(tau)}
        for (k, m), poly in self.entries.items():
            val = poly.subs(point).as_gaussian().as_fraction()
            out[self.basis.index(k)][self.basis.index(m)] = val
        return out

    def block(self, degree: int) -> tuple:
        members = [k for k in self.basis if mi_degree(k) == degree]
        return tuple(members)

    def to_fock_matrix(self) -> FockMatrix:
        proto = FockMatrix.zero(self.n, self.degree_bound)
        entries = {
            (proto.index[k], proto.index[m]): poly
            for (k, m), poly in self.entries.items()
        }
        return FockMatrix(
            self.n, self.degree_bound, entries, frozenset(), basis=proto.basis
        )


def gram_matrix(n: int, degree_bound: int) -> GramMatrix:
    """Extract all pairings of degree <= D from the Leibniz series."""
    if degree_bound < 0:
        raise ValueError("degree bound must be non-negative")
    _, series = leibniz_closed_form(n, degree_bound)
    basis = tuple(multi_indices(n, degree_bound))
    entries = {}
    for mono, poly in series.split_groups({"w", "v"}).items():
        k = [0] * n
        m = [0] * n
        for name, e in mono:
            if name[0] == "w":
                k[int(name[1:]) - 1] = e
            else:
                m[int(name[1:]) - 1] = e
        k, m = tuple(k), tuple(m)
        if mi_degree(k) > degree_bound or mi_degree(m) > degree_bound:
            continue
        entries[(k, m)] = mi_factorial(k) * mi_factorial(m) * poly
    gram = GramMatrix(n, degree_bound, basis, entries)
    if gram.entry((0,) * n, (0,) * n) != 1:
        raise AssertionError("vacuum pairing is not 1")
    for (k, m), poly in entries.items():
        if mi_degree(k) != mi_degree(m) and poly:
            raise AssertionError("pairing connects different degrees")
        if gram.entry(m, k) != poly:
            raise AssertionError("pairing table is not symmetric")
    return gram


def pair(gram: GramMatrix, left: dict, right: dict):
    """Bilinear pairing sum_{k,m} left_k G[k][m] right_m (no conjugation)."""
    acc = MultiPoly.zero()
    for k, a in left.items():
        for m, b in right.items():
            g = gram.entries.get((k, m))
            if g is not None:
                acc = acc + a * g * b
    return acc


def verify_adjointness(n: int, degree_bound: int) -> Report:
    """transpose(L^) G = G R^, and the symmetric/skew statements for the
    rotations, as polynomial identities on degrees <= D-1."""
    if degree_bound < 2:
        raise ValueError("need truncation degree at least 2")
    hat = build_hat(n, degree_bound)
    g = gram_matrix(n, degree_bound).to_fock_matrix()
    cut = degree_bound - 1
    checks = []
    for j in range(1, n + 1):
        lhs = (hat.L(j).transpose() * g).restrict(cut)
        rhs = (g * hat.R(j)).restrict(cut)
        checks.append(CheckResult(f"L{j}^* pairs as R{j}^", lhs == rhs))
    lhs = (hat.rho0.transpose() * g).restrict(cut)
    rhs = (g * hat.rho0).restrict(cut)
    checks.append(CheckResult("rho0^ is symmetric for the pairing", lhs == rhs))
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            lhs = (hat.rho(j, k).transpose() * g).restrict(cut)
            rhs = (-(g * hat.rho(j, k))).restrict(cut)
            checks.append(
                CheckResult(f"rho{j}{k}^ is skew for the pairing", lhs == rhs)
            )
    return Report(f"pairing adjointness (n={n}, D={degree_bound})", checks)


@dataclass(frozen=True)
class PositivityProbe:
    """Exact verdict with pivots; the float eigenvalue is display only."""

    positive_definite: bool
    pivots: tuple
    completed: bool
    float_min_eigenvalue: float


def _float_min_eig(blocks) -> float:
    import numpy as np

    worst = float("inf")
    for block in blocks:
        if not block:
            continue
        arr = np.array([[float(x) for x in row] for row in block], dtype=float)
        worst = min(worst, float(np.linalg.eigvalsh(arr).min()))
    return worst


def positivity_probe(n: int, degree_bound: int, tau: Fraction) -> PositivityProbe:
    """Exact block LDL of the pairing table at an exact weight.

    This is an empirical probe of the given weight only; it makes no claim
    about the set of weights with a positive pairing.
    """
    gram = gram_matrix(n, degree_bound)
    point = {"t": Fraction(tau)}
    pivots = []
    completed = True
    blocks = []
    for d in range(degree_bound + 1):
        members = gram.block(d)
        block = [
            [
                gram.entry(k, m).subs(point).as_gaussian().as_fraction()
                for m in members
            ]
            for k in members
        ]
        blocks.append(block)
        piv, done = exact_ldl(block)
        pivots.extend((d, p) for p in piv)
        completed = completed and done
    verdict = completed and all(p > 0 for _, p in pivots)
    return PositivityProbe(
        verdict, tuple(pivots), completed, _float_min_eig(blocks)
    )


def coherent_vector(n: int, degree_bound: int, prefix: str) -> dict:
    """Truncated coherent state sum_k prefix^k / k! |k>, symbolic components."""
    out = {}
    for k in multi_indices(n, degree_bound):
        mono = MultiPoly.const(Fraction(1, mi_factorial(k)))
        for j, e in enumerate(k, start=1):
            mono = mono * MultiPoly.var(f"{prefix}{j}") ** e
        out[k] = mono
    return out


def series_duality_check(n: int, degree_bound: int) -> Report:
    """Pairing of two truncated coherent vectors reproduces the Leibniz series."""
    gram = gram_matrix(n, degree_bound)
    left = coherent_vector(n, degree_bound, "w")
    right = coherent_vector(n, degree_bound, "v")
    got = pair(gram, left, right)
    _, expected = leibniz_closed_form(n, degree_bound)
    passed = got == expected
    return Report(
        f"series/operator duality (n={n}, D={degree_bound})",
        [CheckResult("coherent pairing equals the Leibniz series", passed)],
    )


def number_grading_check(n: int, degree_bound: int) -> Report:
    """rho0^ is t plus twice the degree, exactly, on every basis state."""
    hat = build_hat(n, degree_bound)
    checks = []
    ok = True
    for k in hat.rho0.basis:
        vec = hat.rho0.apply({k: gr(1)})
        expected = {k: TAU + 2 * mi_degree(k)}
        if vec != expected:
            ok = False
            break
    checks.append(CheckResult("rho0^ eigenvalue on degree d is t + 2d", ok))
    return Report(f"number grading (n={n}, D={degree_bound})", checks)

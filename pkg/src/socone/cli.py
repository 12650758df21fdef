"""Command-line front end: verification suites and exact table generators.

Exit codes: 0 means every requested check passed, 1 means a mathematical
check failed or an input hit a singular point, 2 means a usage error.
Identical invocations produce byte-identical output; randomized suites
draw their exact rational points from the seed. Defaults can be overridden
with SOCONE_* environment variables (SOCONE_N, SOCONE_TAU, SOCONE_DEGREE,
SOCONE_KMAX, SOCONE_SEED, SOCONE_HEIGHT, SOCONE_FORMAT).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import algebra, berezin, fock, jsonio, spectral, states
from .poly import MultiPoly
from .report import Report
from .scalars import GaussianRational

_EXACT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class UsageError(ValueError):
    pass


def _parse_exact(text: str) -> Fraction:
    if not _EXACT_RE.match(text.strip()):
        raise UsageError(f"not an exact rational: {text!r} (floats are rejected)")
    return Fraction(text.strip())


def _parse_tau(text: str):
    if text.strip() == "symbolic":
        return None
    return _parse_exact(text)


def _parse_tuple(text: str, n: int) -> list:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != n:
        raise UsageError(f"expected {n} comma-separated rationals, got {text!r}")
    return [_parse_exact(p) for p in parts]


def _env(name: str, fallback: str) -> str:
    return os.environ.get(f"SOCONE_{name}", fallback)


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int
    tau: Fraction | None
    degree: int
    kmax: int
    seed: int
    height: int
    fmt: str


def _config(args) -> RunConfig:
    if args.n < 1:
        raise UsageError("the spatial dimension must be at least 1")
    if getattr(args, "degree", 0) < 0 or getattr(args, "kmax", 0) < 0:
        raise UsageError("degree bounds must be non-negative")
    return RunConfig(
        command=args.command,
        n=args.n,
        tau=_parse_tau(args.tau),
        degree=args.degree,
        kmax=args.kmax,
        seed=args.seed,
        height=args.height,
        fmt=args.format,
    )


def _value_str(value) -> str:
    if isinstance(value, MultiPoly):
        return str(value)
    return str(GaussianRational.coerce(value))


def _emit_table(cfg: RunConfig, headers: list, rows: list, payload: dict) -> str:
    if cfg.fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(headers)
        for row in rows:
            writer.writerow(row)
        return buf.getvalue()
    lines = []
    for row in rows:
        lines.append("  ".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


# -- verify ---------------------------------------------------------------------


def _suite_lie(cfg: RunConfig) -> list:
    alg = algebra.build_algebra(cfg.n)
    reports = [
        algebra.verify_relations(alg),
        algebra.verify_observables(cfg.n, alg),
    ]
    if cfg.n >= 2:
        reports.append(algebra.conjugation_check(cfg.n))
    if cfg.n == 3:
        reports.append(algebra.reference_check_n3())
    return reports


def _suite_coherent(cfg: RunConfig) -> list:
    return [states.coherent_suite(cfg.n, count=50, seed=cfg.seed, height=cfg.height)]


def _suite_fock(cfg: RunConfig) -> list:
    d = max(cfg.degree, 3)
    return [
        fock.verify_hat_relations(cfg.n, d),
        fock.verify_adjointness(cfg.n, d),
        fock.series_duality_check(cfg.n, min(d, 4)),
        fock.number_grading_check(cfg.n, d),
    ]


def _suite_berezin(cfg: RunConfig) -> list:
    d = max(cfg.degree, 4)
    return [
        berezin.verify_raising_identity(cfg.n, min(d, 4)),
        berezin.verify_pde_system(cfg.n),
        berezin.bessel_form_check(cfg.n, d),
        berezin.hat_from_pde_check(cfg.n, d),
        berezin.wick_recipe_check(cfg.n, max(d, 5)),
        berezin.vacuum_symbol_check(cfg.n),
    ]


def _suite_observables(cfg: RunConfig) -> list:
    d = max(cfg.degree, 2)
    reports = [
        spectral.roundtrip_check(cfg.n, 20, seed=cfg.seed, height=cfg.height),
        spectral.moment_consistency_check(cfg.n, min(d, 4)),
        spectral.vacuum_orthogonality_check(cfg.n, min(d, 4)),
    ]
    if cfg.n <= 3:
        reports.append(spectral.verify_coordinate_duality(cfg.n))
    if cfg.n == 1:
        reports.append(spectral.orthogonality_check(Fraction(3), min(cfg.kmax, 5)))
    return reports


def _latex_identities(cfg: RunConfig) -> list:
    base = states.leibniz_base(cfg.n)
    lines = [
        r"\Upsilon_{wv} = \left(" + base.latex() + r"\right)^{-\tau/2}",
    ]
    for j in range(1, cfg.n + 1):
        lhs = base.diff(f"w{j}")
        lines.append(
            rf"-\tfrac{{\tau}}{{2}} \left({lhs.latex()}\right) "
            rf"= \tau v_{{{j}}} P - \tau v_{{{j}}} v_l \partial_{{v_l}} P "
            rf"+ \tfrac{{\tau}}{{2}} (v \cdot v) \partial_{{v_{j}}} P"
        )
    return lines


def cmd_verify(args) -> int:
    cfg = _config(args)
    suites = {
        "lie": args.lie,
        "coherent": args.coherent,
        "fock": args.fock,
        "berezin": args.berezin,
        "observables": args.observables,
    }
    if args.all or not any(suites.values()):
        suites = {k: True for k in suites}
    reports: list[Report] = []
    if suites["lie"]:
        reports.extend(_suite_lie(cfg))
    if suites["coherent"]:
        reports.extend(_suite_coherent(cfg))
    if suites["fock"]:
        reports.extend(_suite_fock(cfg))
    if suites["berezin"]:
        reports.extend(_suite_berezin(cfg))
    if suites["observables"]:
        reports.extend(_suite_observables(cfg))
    if cfg.fmt == "json":
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for report in reports:
            for line in report.lines():
                print(line)
    if args.emit_latex:
        for line in _latex_identities(cfg):
            print(line)
    failures = [c for r in reports for c in r.failed()]
    if failures:
        print(f"FAILED: {failures[0].name}", file=sys.stderr)
        return 1
    return 0


# -- tables -----------------------------------------------------------------------


def cmd_gram(args) -> int:
    cfg = _config(args)
    gram = fock.gram_matrix(cfg.n, cfg.degree)
    basis = gram.basis
    labels = [jsonio.multi_index_label(k) for k in basis]
    point = {"t": cfg.tau} if cfg.tau is not None else None
    entries = []
    for k in basis:
        row = []
        for m in basis:
            val = gram.entry(k, m)
            if point is not None:
                val = val.subs(point)
            row.append(val)
        entries.append(row)
    rows = [
        [labels[i]] + [_value_str(v) for v in row] for i, row in enumerate(entries)
    ]
    payload = {
        "n": cfg.n,
        "degree": cfg.degree,
        "tau": "symbolic" if cfg.tau is None else str(cfg.tau),
        "basis": labels,
        "matrix": [[jsonio.scalar_to_json(v) for v in row] for row in entries],
    }
    sys.stdout.write(_emit_table(cfg, [""] + labels, rows, payload))
    return 0


def cmd_moments(args) -> int:
    cfg = _config(args)
    table = spectral.moments(cfg.n, cfg.degree, tau=cfg.tau, check_hat=False)
    basis = fock.multi_indices(cfg.n, cfg.degree)
    labels = [jsonio.multi_index_label(k) for k in basis]
    values = [table.moment(k) for k in basis]
    payload = {
        "n": cfg.n,
        "degree": cfg.degree,
        "tau": "symbolic" if cfg.tau is None else str(cfg.tau),
        "moments": [
            {"index": lab, "value": jsonio.scalar_to_json(v)}
            for lab, v in zip(labels, values)
        ],
    }
    if cfg.fmt == "csv":
        out = _emit_table(cfg, labels, [[_value_str(v) for v in values]], payload)
    else:
        rows = [[lab, _value_str(v)] for lab, v in zip(labels, values)]
        out = _emit_table(cfg, [], rows, payload)
    sys.stdout.write(out)
    return 0


def cmd_basis_poly(args) -> int:
    cfg = _config(args)
    polys = spectral.basis_polynomials(cfg.n, cfg.kmax, tau=cfg.tau)
    labels = [jsonio.multi_index_label(bp.index) for bp in polys]
    payload = {
        "n": cfg.n,
        "kmax": cfg.kmax,
        "tau": "symbolic" if cfg.tau is None else str(cfg.tau),
        "polynomials": [
            {
                "index": lab,
                "text": str(bp.poly),
                "terms": jsonio.poly_to_json(bp.poly),
            }
            for lab, bp in zip(labels, polys)
        ],
    }
    rows = [[lab, str(bp.poly)] for lab, bp in zip(labels, polys)]
    sys.stdout.write(_emit_table(cfg, ["index", "polynomial"], rows, payload))
    return 0


def cmd_transform(args) -> int:
    cfg = _config(args)
    series = spectral.spectral_transform(cfg.n, cfg.degree, tau=cfg.tau)
    buckets = series.split_groups({"z"})
    basis = fock.multi_indices(cfg.n, cfg.degree)
    labels = [jsonio.multi_index_label(k) for k in basis]
    values = []
    for k in basis:
        mono = tuple((f"z{j}", e) for j, e in enumerate(k, start=1) if e)
        values.append(buckets.get(mono, MultiPoly.zero()))
    payload = {
        "n": cfg.n,
        "degree": cfg.degree,
        "tau": "symbolic" if cfg.tau is None else str(cfg.tau),
        "coefficients": [
            {"index": lab, "value": jsonio.scalar_to_json(v)}
            for lab, v in zip(labels, values)
        ],
    }
    if cfg.fmt == "csv":
        out = _emit_table(cfg, labels, [[_value_str(v) for v in values]], payload)
    else:
        rows = [[lab, _value_str(v)] for lab, v in zip(labels, values)]
        out = _emit_table(cfg, [], rows, payload)
    sys.stdout.write(out)
    return 0


def cmd_leibniz(args) -> int:
    cfg = _config(args)
    if args.w is not None or args.v is not None:
        if args.w is None or args.v is None:
            raise UsageError("provide both --w and --v, or neither")
        w = _parse_tuple(args.w, cfg.n)
        v = _parse_tuple(args.v, cfg.n)
        value = states.leibniz_from_matrices(w, v)
        payload = {
            "n": cfg.n,
            "w": [str(c) for c in w],
            "v": [str(c) for c in v],
            "value": jsonio.scalar_to_json(value),
        }
        rows = [[_value_str(value)]]
        sys.stdout.write(_emit_table(cfg, ["value"], rows, payload))
        return 0
    _, series = states.leibniz_closed_form(cfg.n, cfg.degree, tau=cfg.tau)
    payload = {
        "n": cfg.n,
        "degree": cfg.degree,
        "tau": "symbolic" if cfg.tau is None else str(cfg.tau),
        "series": jsonio.poly_to_json(series),
    }
    rows = [[str(series)]]
    sys.stdout.write(_emit_table(cfg, ["series"], rows, payload))
    return 0


def cmd_coords(args) -> int:
    cfg = _config(args)
    if (args.z is None) == (args.v is None):
        raise UsageError("provide exactly one of --z or --v")
    if args.z is not None:
        z = _parse_tuple(args.z, cfg.n)
        v, h2 = spectral.z_to_v(z)
        payload = {
            "n": cfg.n,
            "z": [str(c) for c in z],
            "v": [jsonio.scalar_to_json(c) for c in v],
            "h2": jsonio.scalar_to_json(h2),
        }
        rows = [["v"] + [_value_str(c) for c in v], ["h2", _value_str(h2)]]
    else:
        v = _parse_tuple(args.v, cfg.n)
        z, h2 = spectral.v_to_z(v)
        payload = {
            "n": cfg.n,
            "v": [str(c) for c in v],
            "z": [jsonio.scalar_to_json(c) for c in z],
            "h2": jsonio.scalar_to_json(h2),
        }
        rows = [["z"] + [_value_str(c) for c in z], ["h2", _value_str(h2)]]
    sys.stdout.write(_emit_table(cfg, ["name", "value"], rows, payload))
    return 0


def cmd_coherent(args) -> int:
    cfg = _config(args)
    if args.v == "symbolic":
        v = [MultiPoly.var(f"v{j}") for j in range(1, cfg.n + 1)]
    else:
        v = _parse_tuple(args.v, cfg.n)
    state = states.coherent_state(v)
    payload = {
        "n": cfg.n,
        "v": "symbolic" if args.v == "symbolic" else [str(Fraction(c)) for c in v],
        "state": jsonio.state_to_json(state),
    }
    rows = [[_value_str(e)] for e in state.entries]
    sys.stdout.write(_emit_table(cfg, ["component"], rows, payload))
    return 0


# -- entry point -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="socone",
        description="exact verification suites and tables for the so(n,2) "
        "coherent-state realization",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree_default="4"):
        p.add_argument("--n", type=int, default=int(_env("N", "2")))
        p.add_argument("--tau", default=_env("TAU", "symbolic"))
        p.add_argument("--degree", type=int, default=int(_env("DEGREE", degree_default)))
        p.add_argument("--kmax", type=int, default=int(_env("KMAX", "4")))
        p.add_argument("--seed", type=int, default=int(_env("SEED", "0")))
        p.add_argument("--height", type=int, default=int(_env("HEIGHT", "5")))
        p.add_argument(
            "--format",
            choices=("text", "json", "csv"),
            default=_env("FORMAT", "text"),
        )

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    for flag in ("lie", "coherent", "fock", "berezin", "observables", "all"):
        p.add_argument(f"--{flag}", action="store_true")
    p.add_argument("--emit-latex", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gram", help="pairing table of the basis states")
    common(p, degree_default="3")
    p.set_defaults(func=cmd_gram)

    p = sub.add_parser("moments", help="joint spectral moments")
    common(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("basis-poly", help="basis states in spectral variables")
    common(p)
    p.set_defaults(func=cmd_basis_poly)

    p = sub.add_parser("transform", help="cone transform series")
    common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("leibniz", help="pairing values and series")
    common(p)
    p.add_argument("--w")
    p.add_argument("--v")
    p.set_defaults(func=cmd_leibniz)

    p = sub.add_parser("coherent", help="coherent state vectors")
    common(p)
    p.add_argument("--v", default="symbolic")
    p.set_defaults(func=cmd_coherent)

    p = sub.add_parser("coords", help="coordinate changes between z and v")
    common(p)
    p.add_argument("--z")
    p.add_argument("--v")
    p.set_defaults(func=cmd_coords)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (
        spectral.SingularCoordinateError,
        berezin.PoleError,
        states.NotInOrbitError,
    ) as exc:
        print(f"singular input: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 a numerical check exceeded
``--tol``.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import _backend
from .core import I1, Bicomplex, euclid_norm, format_bicomplex, parse_bicomplex
from .function_space import coeff_distance, commutator_XP, evaluate, f
from .oscillator import GRAM_MAX, HERMITE_MAX, OscillatorParams, eigenfunction, gram_matrix
from .tmodule import (
    DependentComponent,
    DimensionMismatch,
    LinearFunctional,
    TVector,
    functional_apply,
    orthonormalize,
    riesz_representer,
    scalar_product,
    write_gram_csv,
)
from . import tmodule

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TOLERANCE = 3


class InputError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=float, default=1.0, help="mass (default 1)")
    p.add_argument("--omega", type=float, default=1.0, help="angular frequency (default 1)")
    p.add_argument("--hbar", type=float, default=1.0, help="reduced Planck constant (default 1)")
    p.add_argument("--xi1", type=float, default=1.0, help="idempotent component xi_1 of xi (default 1)")
    p.add_argument("--xi2", type=float, default=1.0, help="idempotent component xi_2 of xi (default 1)")
    p.add_argument("--lmax", type=int, default=8, help="highest eigenfunction index (default 8)")
    p.add_argument("--grid-min", type=float, default=-6.0)
    p.add_argument("--grid-max", type=float, default=6.0)
    p.add_argument("--grid-points", type=int, default=241)
    p.add_argument("--tol", type=float, default=1e-10, help="pass/fail tolerance (default 1e-10)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    p.add_argument("--output", "-o", default="-", help="output path, '-' for stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for random verification kets")
    p.add_argument("--input", "-i", default="-", help="input path for riesz/orthonormalize, '-' for stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicomplex-hilbert",
        description="Bicomplex Hilbert modules and the bicomplex harmonic oscillator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "eval": "tabulate eigenfunctions phi_0..phi_lmax on a grid",
        "gram": "Gram matrix of phi_0..phi_lmax; exit 3 if not the identity within --tol",
        "commutator": "check [X, P] = i1 hbar xi on test functions",
        "riesz": "Riesz representer of a functional given by its values on basis kets",
        "orthonormalize": "orthonormalize a JSON list of kets",
        "selftest": "run the full acceptance suites",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text, description=text)
        _common(sp)
        sp.set_defaults(_parser=sp)
    return parser


def validate(args, parser: argparse.ArgumentParser) -> None:
    for flag in ("m", "omega", "hbar", "xi1", "xi2"):
        value = getattr(args, flag)
        if not (value > 0 and math.isfinite(value)):
            parser.error(f"--{flag} must be a positive real, got {value}")
    if args.lmax < 0:
        parser.error(f"--lmax must be nonnegative, got {args.lmax}")
    if args.command == "gram" and args.lmax > GRAM_MAX:
        parser.error(f"--lmax must be at most {GRAM_MAX} for gram, got {args.lmax}")
    if args.lmax > HERMITE_MAX:
        parser.error(f"--lmax must be at most {HERMITE_MAX}, got {args.lmax}")
    if args.grid_points < 2:
        parser.error(f"--grid-points must be at least 2, got {args.grid_points}")
    if not args.grid_max > args.grid_min:
        parser.error("--grid-max must exceed --grid-min")
    if not (args.tol >= 0 and math.isfinite(args.tol)):
        parser.error(f"--tol must be a nonnegative real, got {args.tol}")


def _params(args) -> OscillatorParams:
    return OscillatorParams.from_components(args.m, args.omega, args.hbar, args.xi1, args.xi2)


def _open_out(path: str):
    if path == "-":
        return sys.stdout
    return open(path, "w", newline="")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _parse_values(text: str) -> list[Bicomplex]:
    text = text.strip()
    try:
        if text.startswith("[") and text.endswith("]") and '"' in text:
            items = [str(s) for s in json.loads(text)]
        else:
            items = [line for line in text.splitlines() if line.strip()]
        if not items:
            raise InputError("no values given")
        return [parse_bicomplex(s) for s in items]
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from None


def _write_rows(out, fmt: str, header: list[str], rows: list[list[str]]) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    else:
        json.dump([dict(zip(header, r)) for r in rows], out, indent=1)
        out.write("\n")


def cmd_eval(args) -> int:
    p = _params(args)
    x = np.linspace(args.grid_min, args.grid_max, args.grid_points)
    columns = [evaluate(eigenfunction(l, p), x) for l in range(args.lmax + 1)]
    header = ["x"] + [f"phi_{l}" for l in range(args.lmax + 1)]
    rows = [
        [format(float(xv), ".17g")] + [format_bicomplex(col[i], "pair") for col in columns]
        for i, xv in enumerate(x)
    ]
    out = _open_out(args.output)
    try:
        _write_rows(out, args.fmt, header, rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_gram(args) -> int:
    p = _params(args)
    g = gram_matrix(args.lmax, p)
    size = args.lmax + 1
    deviation = float(np.max(euclid_norm(g - Bicomplex(np.eye(size), np.eye(size)))))
    out = _open_out(args.output)
    try:
        if args.fmt == "csv":
            write_gram_csv(g, out)
        else:
            cells = [[format_bicomplex(g[i, j], "pair") for j in range(size)] for i in range(size)]
            json.dump({"gram": cells, "max_deviation": deviation}, out, indent=1)
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    ok = deviation <= args.tol
    print(f"max deviation from identity: {deviation:.3e} (tol {args.tol:.3e}) {'ok' if ok else 'FAIL'}",
          file=sys.stderr)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_commutator(args) -> int:
    p = _params(args)
    target = I1 * (p.hbar * p.xi)
    cases = [(f"f_{{{n},{alpha}}}", f(n, alpha)) for n in range(7) for alpha in (0.5, 1.0, 2.0)]
    cases += [(f"phi_{l}", eigenfunction(l, p)) for l in range(7)]
    worst = 0.0
    lines = []
    for label, u in cases:
        r = coeff_distance(commutator_XP(u, p.hbar, p.xi), target * u)
        worst = max(worst, r)
        lines.append((label, r))
    ok = worst <= args.tol
    out = _open_out(args.output)
    try:
        if args.fmt == "csv":
            _write_rows(out, "csv", ["function", "residual"], [[k, format(v, ".17g")] for k, v in lines])
        else:
            json.dump({"residuals": dict(lines), "max_residual": worst, "tol": args.tol, "pass": ok}, out, indent=1)
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    print(f"max commutator residual: {worst:.3e} (tol {args.tol:.3e}) {'ok' if ok else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_riesz(args) -> int:
    fn = LinearFunctional.from_values(_parse_values(_read_input(args.input)))
    psi = riesz_representer(fn)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(100):
        z = rng.standard_normal((4, fn.order))
        phi = TVector(z[0] + 1j * z[1], z[2] + 1j * z[3])
        worst = max(worst, float(euclid_norm(functional_apply(fn, phi) - scalar_product(psi, phi))))
    ok = worst <= args.tol
    out = _open_out(args.output)
    try:
        if args.fmt == "json":
            json.dump({
                "representer": [format_bicomplex(c, "cartesian") for c in psi.coeffs],
                "max_reconstruction_error": worst,
                "pass": ok,
            }, out, indent=1)
            out.write("\n")
        else:
            _write_rows(out, "csv", ["l", "representer"],
                        [[str(l), format_bicomplex(c, "pair")] for l, c in enumerate(psi.coeffs)])
    finally:
        if out is not sys.stdout:
            out.close()
    print(f"max reconstruction error over 100 kets: {worst:.3e} (tol {args.tol:.3e}) {'ok' if ok else 'FAIL'}",
          file=sys.stderr)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_orthonormalize(args) -> int:
    text = _read_input(args.input)
    try:
        raw = json.loads(text)
        if not isinstance(raw, list) or not all(isinstance(k, list) for k in raw):
            raise InputError("expected a JSON list of kets, each a list of bicomplex strings")
        kets = [TVector.from_coeffs(parse_bicomplex(str(s)) for s in ket) for ket in raw]
        result = orthonormalize(kets)
    except (ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, (DependentComponent, DimensionMismatch)):
            raise InputError(str(exc)) from None
        raise InputError(f"cannot read kets: {exc}") from None
    g = tmodule.gram_matrix(result)
    size = len(result)
    deviation = float(np.max(euclid_norm(g - Bicomplex(np.eye(size), np.eye(size))))) if size else 0.0
    ok = deviation <= args.tol
    out = _open_out(args.output)
    try:
        if args.fmt == "json":
            json.dump([[format_bicomplex(c, "cartesian") for c in ket.coeffs] for ket in result], out, indent=1)
            out.write("\n")
        else:
            writer = csv.writer(out, lineterminator="\n")
            for ket in result:
                writer.writerow(format_bicomplex(c, "pair") for c in ket.coeffs)
    finally:
        if out is not sys.stdout:
            out.close()
    print(f"Gram deviation from identity: {deviation:.3e} (tol {args.tol:.3e}) {'ok' if ok else 'FAIL'}",
          file=sys.stderr)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    print(f"kernel backend: {_backend.current()}")
    checks = run_all(args.seed)
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if not failed else EXIT_TOLERANCE


COMMANDS = {
    "eval": cmd_eval,
    "gram": cmd_gram,
    "commutator": cmd_commutator,
    "riesz": cmd_riesz,
    "orthonormalize": cmd_orthonormalize,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    validate(args, args._parser)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"bicomplex-hilbert {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"bicomplex-hilbert {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 ok, 2 malformed input, 3 matrix not in the Siegel upper half
space, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

import numpy as np

from .errors import NotPositiveDefinite, NumericalFailure, SingularTransform
from .lattice import cholesky_upper
from .schottky import even_theta_constants, schottky_null
from .siegel import is_symplectic, random_siegel, siegel_reduce
from .theta import Characteristic, build_context, theta_split

EXIT_INPUT = 2
EXIT_DOMAIN = 3
EXIT_NUMERICAL = 4


class InputError(Exception):
    pass


def load_matrix(path) -> np.ndarray:
    """Read a ``{"g", "re", "im"}`` JSON file into a complex matrix."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    try:
        g = int(data["g"])
        re = np.array(data["re"], dtype=float)
        im = np.array(data["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: expected keys g, re, im with numeric g x g arrays") from exc
    if g < 1 or re.shape != (g, g) or im.shape != (g, g):
        raise InputError(f"{path}: re and im must both be {g} x {g}")
    tau = re + 1j * im
    if np.abs(tau - tau.T).max() > 1e-8 * max(np.abs(tau).max(), 1.0):
        raise InputError(f"{path}: matrix is not symmetric")
    cholesky_upper(0.5 * (im + im.T))
    return tau


def matrix_json(tau) -> dict:
    tau = np.asarray(tau, dtype=complex)
    return {"g": tau.shape[0], "re": tau.real.tolist(), "im": tau.imag.tolist()}


def format_complex(v: complex) -> str:
    def fmt(x):
        return f"{x:.15e}" if abs(x) >= 1e6 else f"{x:.15f}"

    sign = "-" if v.imag < 0 or (v.imag == 0 and np.signbit(v.imag)) else "+"
    return f"{fmt(v.real)} {sign} {fmt(abs(v.imag))}i"


def _parse_z(values, g):
    if len(values) != 2 * g:
        raise InputError(f"z needs {2 * g} numbers (re/im interleaved) for genus {g}, got {len(values)}")
    try:
        nums = [float(v) for v in values]
    except ValueError as exc:
        raise InputError(f"z entries must be real numbers: {exc}") from exc
    return np.array(nums[0::2]) + 1j * np.array(nums[1::2])


def _parse_derivs(text, g):
    if not text:
        return None
    out = []
    for chunk in text.split(";"):
        try:
            vec = [complex(t.strip().replace("i", "j")) for t in chunk.split(",")]
        except ValueError as exc:
            raise InputError(f"bad derivative direction {chunk!r}") from exc
        if len(vec) != g:
            raise InputError(f"derivative direction {chunk!r} must have {g} entries")
        out.append(vec)
    return out


def cmd_eval(args) -> int:
    tau = load_matrix(args.matrix)
    g = tau.shape[0]
    z = _parse_z(args.z, g)
    try:
        char = Characteristic.parse(args.char) if args.char else None
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if char is not None and char.g != g:
        raise InputError(f"characteristic has genus {char.g}, matrix has genus {g}")
    derivs = _parse_derivs(args.derivs, g)
    ctx = build_context(tau, eps=args.eps, nderivs=len(derivs or []), siegel=not args.no_siegel)
    s, e = theta_split(z, ctx, char, derivs)
    with np.errstate(over="ignore", invalid="ignore"):
        value = complex(np.complex128(s) * np.exp(np.complex128(e)))
    if args.json:
        out = {"value": [value.real, value.imag], "siegel": not args.no_siegel, "tau": matrix_json(ctx.tau)}
        if args.split:
            out["sum"] = [s.real, s.imag]
            out["exponent"] = [e.real, e.imag]
        print(json.dumps(out))
    else:
        print(format_complex(value))
        if args.split:
            print(f"sum: {format_complex(s)}")
            print(f"exponent: {format_complex(e)}")
    return 0


def cmd_reduce(args) -> int:
    tau = load_matrix(args.matrix)
    reduced, gamma = siegel_reduce(tau)
    out = matrix_json(reduced)
    out["gamma"] = gamma.tolist()
    out["symplectic"] = is_symplectic(gamma)
    print(json.dumps(out))
    return 0


def cmd_random(args) -> int:
    if args.g < 1:
        raise InputError("g must be positive")
    print(json.dumps(matrix_json(random_siegel(args.g, args.seed))))
    return 0


def cmd_schottky_null(args) -> int:
    tau = load_matrix(args.matrix)
    report = schottky_null(tau, eps=args.eps, tol=args.tol, rel_tol=args.rel_tol)
    print("none" if report is None else json.dumps(report.to_dict()))
    return 0


def bench(g: int, count: int, eps: float = 1e-12, seed: int = 0):
    """Per-sample wall time of context construction plus all even theta constants."""
    times = []
    for i in range(count):
        tau = random_siegel(g, seed + i)
        start = time.perf_counter()
        ctx = build_context(tau, eps=eps)
        even_theta_constants(ctx)
        times.append(time.perf_counter() - start)
    mean = statistics.fmean(times)
    std = statistics.stdev(times) if len(times) > 1 else 0.0
    return mean, std, times


def cmd_bench(args) -> int:
    if args.g < 1 or args.count < 1:
        raise InputError("g and count must be positive")
    mean, std, _ = bench(args.g, args.count, args.eps, args.seed)
    print(f"mean {mean:.6f} s  std {std:.6f} s  (g={args.g}, count={args.count}, eps={args.eps:g})")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="riemann-theta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a theta function or derivative")
    p.add_argument("matrix", help="JSON matrix file")
    p.add_argument("z", nargs="+", help="2g reals: re(z1) im(z1) re(z2) im(z2) ...")
    p.add_argument("--char", help="characteristic 'eps;delta', e.g. '10;11'")
    p.add_argument("--derivs", help="directions separated by ';', entries by ',', e.g. '1,0;0,1'")
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--no-siegel", action="store_true")
    p.add_argument("--split", action="store_true", help="also print the sum and the exponent separately")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("reduce", help="Siegel-reduce a matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("random", help="sample a random Riemann matrix")
    p.add_argument("g", type=int)
    p.add_argument("seed", type=int)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("schottky-null", help="vanishing theta null and Hessian rank")
    p.add_argument("matrix")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--eps", type=float, default=1e-12)
    p.set_defaults(func=cmd_schottky_null)

    p = sub.add_parser("bench", help="time contexts plus all even theta constants")
    p.add_argument("g", type=int)
    p.add_argument("count", type=int)
    p.add_argument("--eps", type=float, default=1e-12)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotPositiveDefinite as exc:
        print(f"error: {exc} (not in the Siegel upper half space)", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericalFailure, SingularTransform) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

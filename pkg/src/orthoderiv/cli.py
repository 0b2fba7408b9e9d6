"""Command-line interface: ``orthoderiv <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size guard,
4 no point could be differentiated.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from math import gcd, lcm

from . import appendix, csvio, verify
from .csvio import fmt_float
from .differentiator import (
    DEFAULT_END_ORDER,
    DerivativeFilter,
    SamplingError,
    WindowError,
    differentiate_fn,
    differentiate_signal,
)
from .kernel import (
    K_constant,
    KernelSpec,
    a_coefficients,
    kernel_legendre_sum,
    kernel_to_json,
    liptaj_solve,
    moments,
)
from .polynomial import RationalPoly, format_poly
from .probes import CATALOG, parse_probe
from .spectral import SweepConfig, locate_peak, omega_max_estimate, sweep, sweep_rows

MAX_DEGREE = 200

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_GUARD, EXIT_DATA = 0, 1, 2, 3, 4


class GuardError(Exception):
    pass


# --------------------------------------------------------------------------
# formatting


def factored(p: RationalPoly, n: int, m: int) -> str:
    """``c t^s (a_0 + a_1 t^2 + ...)`` with coprime integers inside the bracket."""
    odd = n % 2
    inner = p.shift_down(odd) if odd else p
    cs = [inner[i] for i in range(0, inner.degree + 1, 2)]
    den = lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    pref = Fraction(g, den)
    try:
        e = appendix.entry(n, m)
        if e.resolved() == p:
            pref = e.prefactor
    except KeyError:
        if ints[0] < 0:
            pref = -pref
    br = [int(c / pref) for c in cs]
    terms = []
    for i, c in enumerate(br):
        if c == 0:
            continue
        mon = "" if i == 0 else ("t^2" if i == 1 else f"t^{2 * i}")
        mag = abs(c)
        body = (str(mag) if (mag != 1 or not mon) else "") + mon
        terms.append(("-" if c < 0 else "+", body))
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    if len(terms) == 1:
        return format_poly(p)
    return f"{pref}{' t' if odd else ''}({s})"


def kernel_table(p: RationalPoly, n: int, m: int) -> str:
    rows = [("n", "m", "degree", "k(t)"), (str(n), str(m), str(p.degree), format_poly(p))]
    w = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = ["  ".join(r[i].ljust(w[i]) for i in range(3)) + "  " + r[3] for r in rows]
    lines.append("")
    crow = [("power", "coefficient", "value")]
    crow += [(str(i), str(c), fmt_float(c)) for i, c in enumerate(p.coeffs) if c != 0]
    w = [max(len(r[i]) for r in crow) for i in range(3)]
    lines += ["  ".join(r[i].ljust(w[i]) for i in range(2)) + "  " + r[2] for r in crow]
    return "\n".join(lines)


# --------------------------------------------------------------------------
# commands


def _spec(args) -> KernelSpec:
    spec = KernelSpec(args.n, args.m)
    if spec.degree > MAX_DEGREE:
        raise GuardError(f"n + 2m = {spec.degree} exceeds the limit {MAX_DEGREE}")
    return spec


def cmd_kernel(args, out, err) -> int:
    spec = _spec(args)
    K = kernel_legendre_sum(spec)
    if args.format == "json":
        out.write(kernel_to_json(K) + "\n")
    elif args.format == "table":
        out.write(kernel_table(K.k, spec.n, spec.m) + "\n")
    else:
        out.write(f"k_{spec.m}(t) = {factored(K.k, spec.n, spec.m)}    (n={spec.n})\n")
    return EXIT_OK


def cmd_omega(args, out, err) -> int:
    spec = _spec(args)
    K = kernel_legendre_sum(spec)
    if args.format == "json":
        import json
        out.write(json.dumps({"n": spec.n, "m": spec.m,
                              "coeffs": [[str(c.numerator), str(c.denominator)] for c in K.omega.coeffs]}) + "\n")
    else:
        out.write(f"omega(t) = {format_poly(K.omega)}\n")
    return EXIT_OK


def cmd_moments(args, out, err) -> int:
    spec = _spec(args)
    jmax = args.jmax if args.jmax is not None else spec.exact_degree + 2
    if jmax < 0:
        raise ValueError("--jmax must be nonnegative")
    mom = moments(kernel_legendre_sum(spec), jmax)
    out.write("j,moment\n")
    for j, v in enumerate(mom):
        out.write(f"{j},{v}\n")
    want = [Fraction(0)] * (spec.exact_degree + 1)
    want[spec.n] = Fraction((-1) ** spec.n * math.factorial(spec.n))
    full = moments(kernel_legendre_sum(spec), spec.exact_degree)
    ok = full == want
    err.write(f"{'PASS' if ok else 'FAIL'}  moment contract j<={spec.exact_degree}\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_liptaj(args, out, err) -> int:
    spec = _spec(args)
    s = liptaj_solve(spec)
    n, m = spec.n, spec.m
    out.write(f"moment system n={n} m={m}: unknowns b_k = K a_(2k), k=0..{m}\n")
    for i, (row, r) in enumerate(zip(s.matrix, s.rhs)):
        out.write(f"  [t^{n + 2 * i}]  " + "  ".join(str(v) for v in row) + f"  =  {r}\n")
    for k, a in enumerate(s.solution_a):
        out.write(f"a_{2 * k} = {a}\n")
    out.write(f"K = {s.solution_K}\n")
    out.write(f"k(t) = {factored(s.kernel(), n, m)}\n")
    a_ok = list(s.solution_a) == a_coefficients(spec)
    k_ok = abs(s.solution_K) == abs(K_constant(spec))
    kern_ok = s.kernel() == kernel_legendre_sum(spec).k
    for name, ok in (("a vs closed form", a_ok), ("|K| vs closed form", k_ok),
                     ("kernel vs legendre sum", kern_ok)):
        out.write(f"{'PASS' if ok else 'FAIL'}  {name}\n")
    ok = a_ok and k_ok and kern_ok
    out.write("PASS\n" if ok else "FAIL\n")
    return EXIT_OK if ok else EXIT_VERIFY


def _parse_index_range(text: str, size: int) -> range:
    a, sep, b = text.partition(":")
    if not sep:
        i = int(a)
        return range(i, i + 1)
    lo = int(a) if a else 0
    hi = int(b) if b else size
    return range(lo, hi)


def cmd_diff(args, out, err) -> int:
    spec = _spec(args)
    if not (args.h > 0 and math.isfinite(args.h)):
        raise ValueError("--h must be positive")
    filt = DerivativeFilter.build(spec.n, spec.m, args.h, args.Q)
    xs, ds, failures = [], [], []
    if args.fn is not None:
        probe = parse_probe(args.fn)
        if not args.at:
            raise ValueError("--at is required with --fn")
        for x in args.at:
            v = differentiate_fn(filt, probe.f, x)
            if math.isfinite(v):
                xs.append(x)
                ds.append(v)
            else:
                failures.append(f"x={fmt_float(x)}: non-finite result")
        mode = f"function {probe.name}, Gauss-Legendre Q={filt.rule.size}"
    else:
        sig = csvio.read_signal_file(args.input)
        if args.at:
            idx = []
            for x in args.at:
                r = (x - sig.start) / sig.step
                i = int(round(r))
                if abs(r - i) > 1e-6:
                    failures.append(f"x={fmt_float(x)}: not a sample position")
                    continue
                idx.append(i)
        elif args.index:
            idx = list(_parse_index_range(args.index, len(sig)))
        else:
            idx = list(range(len(sig)))
        for i in idx:
            x = sig.start + i * sig.step
            try:
                v = differentiate_signal(filt, sig, i, args.end_order)
            except (WindowError, SamplingError) as exc:
                failures.append(f"index {i} (x={fmt_float(x)}): {exc}")
                if isinstance(exc, SamplingError):
                    break
                continue
            xs.append(x)
            ds.append(v)
        mode = f"sampled signal, {len(sig)} samples, step {fmt_float(sig.step)}"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            csvio.write_derivatives(fh, xs, ds)
        summary = out
    else:
        csvio.write_derivatives(out, xs, ds)
        summary = err
    for f in failures:
        err.write(f"warning: {f}\n")
    summary.write(f"points={len(xs)} failed={len(failures)} h={fmt_float(args.h)} "
                  f"kernel=({spec.n},{spec.m}) degree={spec.degree} [{mode}]\n")
    if not xs and failures:
        return EXIT_DATA
    return EXIT_OK


def cmd_transfer(args, out, err) -> int:
    spec = _spec(args)
    if not (args.h > 0 and math.isfinite(args.h)):
        raise ValueError("--h must be positive")
    spacing = "linear" if args.linear else "logarithmic"
    wmax = args.omega_max
    wmin = args.omega_min
    if wmin is None:
        wmin = 0.0 if spacing == "linear" else wmax / 1e5
    cfg = SweepConfig(wmin, wmax, args.points, spacing)
    rows = sweep_rows(sweep(spec, args.h, cfg))
    peak = locate_peak(spec, args.h)
    est = omega_max_estimate(spec, args.h)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            csvio.write_sweep(fh, rows)
        summary = out
    else:
        csvio.write_sweep(out, rows)
        summary = err
    summary.write(f"peak_omega={fmt_float(peak)} omega_max_estimate={fmt_float(est)} "
                  f"ratio={fmt_float(peak / est)}\n")
    return EXIT_OK


def cmd_verify(args, out, err) -> int:
    results = verify.run(args.scope, emit=lambda s: out.write(s + "\n"))
    failed = sum(not c.passed for c in results)
    out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# --------------------------------------------------------------------------


def _add_nm(p):
    p.add_argument("--n", type=int, required=True, help="derivative order (>= 1)")
    p.add_argument("--m", type=int, default=0, help="precision index (>= 0)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orthoderiv",
                                 description="Orthogonal-polynomial derivative kernels and filters.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="print the exact kernel k(t)")
    _add_nm(p)
    p.add_argument("--format", choices=("json", "table", "plain"), default="plain")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("omega", help="print omega(t) with k = omega^(n)")
    _add_nm(p)
    p.add_argument("--format", choices=("json", "plain"), default="plain")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("moments", help="exact moments of k(t)")
    _add_nm(p)
    p.add_argument("--jmax", type=int, default=None)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("liptaj", help="solve the moment system exactly")
    _add_nm(p)
    p.set_defaults(func=cmd_liptaj)

    p = sub.add_parser("diff", help="differentiate a builtin function or a CSV signal")
    _add_nm(p)
    p.add_argument("--h", type=float, required=True, help="window half-width")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fn", help=f"builtin function: {', '.join(CATALOG)}")
    src.add_argument("--input", help="CSV file with header x,value")
    p.add_argument("--at", type=float, nargs="+", help="evaluation abscissae")
    p.add_argument("--index", help="sample index or half-open range A:B (CSV input)")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.add_argument("--end-order", type=int, default=DEFAULT_END_ORDER,
                   help="trapezoid end-correction order for CSV input (0 = plain trapezoid)")
    p.add_argument("--Q", type=int, default=None, help="Gauss-Legendre size for --fn")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("transfer", help="transfer-function sweep as CSV")
    _add_nm(p)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--omega-min", type=float, default=None)
    p.add_argument("--omega-max", type=float, default=1e5)
    p.add_argument("--points", type=int, default=200)
    sp = p.add_mutually_exclusive_group()
    sp.add_argument("--log", action="store_true", help="logarithmic grid (default)")
    sp.add_argument("--linear", action="store_true", help="linear grid")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("--scope", choices=verify.SCOPES, default="all")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except BrokenPipeError:
        return EXIT_OK
    except GuardError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_GUARD
    except csvio.CSVFormatError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA
    except (ValueError, TypeError) as exc:
        err.write(f"usage error: {exc}\n")
        ap.print_usage(err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: python -m wsingular <command> ..."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

import mpmath

from . import symfunc
from .heisenberg import (
    FockVector,
    Weight,
    render_monomial,
    conformal_weight,
    shifted_weyl_act,
    w3_weight_unnormalized,
    weyl_group,
)
from .partition import parse_partition
from .scalar import SYMBOLIC, PointField, specialize
from .screening import ScreeningSpec, example3_enumerate, singular_vector
from .verify import brute_force_kernel, check_mode_algebra, check_singular, kernel_certificate

CACHE_ENV = "WSINGULAR_JACK_CACHE"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_t(text: str):
    """'symbolic' or a positive rational 'p/q'."""
    if text is None or text == "symbolic":
        return None
    try:
        t = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid t {text!r}: expected p/q or 'symbolic'") from None
    if t <= 0:
        raise UsageError(f"invalid t {text}: parameter outside C∖Q_{{≤0}} (t must be a positive rational)")
    return t


def parse_ints(text: str, name: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed --{name}: {text!r}") from None


def parse_partition_arg(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(f"malformed partition {text!r}: {exc}") from None


def _field(args):
    t = parse_t(args.t)
    return SYMBOLIC if t is None else PointField(t, args.alpha_sign)


def _spec(args) -> ScreeningSpec:
    if args.r is None or args.s is None:
        raise UsageError("--r and --s are required")
    r, s = parse_ints(args.r, "r"), parse_ints(args.s, "s")
    t = parse_t(args.t)
    try:
        spec = ScreeningSpec(args.n, r, s, args.sign, t, args.alpha_sign)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not spec.in_range():
        raise UsageError("spec out of validated range")
    return spec


def _numeric(x, field, precision):
    if isinstance(field, PointField):
        return specialize(x, field.t0, field.alpha_sign, precision)
    return None


def _format_number(x, precision):
    if isinstance(x, Fraction):
        return str(x)
    # decimal digits carried by `precision` bits
    return mpmath.nstr(x, max(1, int(precision * 0.30103)))


# ---------------------------------------------------------------------------
# commands


def cmd_jack(args, out):
    lam = parse_partition_arg(args.partition)
    f = symfunc.jack(lam)
    _emit_symfunc(f, args, out, f"J_{lam}")
    return EXIT_OK


def cmd_skew(args, out):
    lam, mu = parse_partition_arg(args.partition), parse_partition_arg(args.mu)
    f = symfunc.skew_jack(lam, mu)
    _emit_symfunc(f, args, out, f"J_{lam}/{mu}")
    return EXIT_OK


def _emit_symfunc(f, args, out, name):
    field = _field(args)
    if field is not SYMBOLIC:
        f = f.specialize(field)
    if args.format == "json":
        data = {"name": name, "t": args.t, "expansion": f.to_json()}
        print(json.dumps(data, sort_keys=True), file=out)
    elif args.format == "latex":
        print(f.latex(), file=out)
    else:
        print(f, file=out)


def cmd_singular(args, out):
    spec = _spec(args)
    v = singular_vector(spec, jobs=args.jobs)
    if args.format == "json":
        data = {"spec": str(spec), "grade": spec.grade, "vector": v.to_json()}
        print(json.dumps(data, sort_keys=True), file=out)
    elif args.format == "latex":
        print(v.latex(), file=out)
    else:
        print(f"# {spec}", file=out)
        print(f"# grade {spec.grade}, target weight {v.weight}", file=out)
        print(v, file=out)
        if args.numeric and isinstance(v.field, PointField):
            for mono, c in v.sorted_items():
                x = _numeric(c, v.field, args.precision)
                print(f"# {render_monomial(mono)} ~ {_format_number(x, args.precision)}", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    spec = _spec(args)
    v = singular_vector(spec, jobs=args.jobs)
    report = check_singular(v, spec)
    if args.oracle:
        _run_oracle(report, v, spec)
    _emit_report(report, args, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_oracle(args, out):
    spec = _spec(args)
    v = singular_vector(spec, jobs=args.jobs)
    report = check_singular(v, spec)
    report.checks = []
    _run_oracle(report, v, spec)
    _emit_report(report, args, out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _run_oracle(report, v, spec):
    if spec.grade < 1:
        report.oracle_dimension = None
        return
    kernel = brute_force_kernel(v.weight, spec.grade)
    report.oracle_dimension = len(kernel)
    cert = kernel_certificate(v, kernel)
    report.oracle_match = cert is not None
    report.certificate = cert


def _emit_report(report, args, out):
    if args.format == "json":
        print(report.dumps(), file=out)
    else:
        print(report.summary(), file=out)


def cmd_example3(args, out):
    specs = list(example3_enumerate(args.u, args.v, args.count))
    status = EXIT_OK
    rows = []
    for spec in specs:
        row = {"spec": str(spec), "grade": spec.grade}
        if args.verify:
            v = singular_vector(spec, jobs=args.jobs)
            report = check_singular(v, spec)
            row["target_is_zero"] = all(not x for x in v.weight.dynkin)
            row["verified"] = report.passed
            if not report.passed:
                status = EXIT_FAIL
        rows.append(row)
    if args.format == "json":
        print(json.dumps(rows, sort_keys=True), file=out)
    else:
        for row in rows:
            extra = ""
            if args.verify:
                extra = f"  theta=0:{row['target_is_zero']}  verified:{row['verified']}"
            print(f"{row['spec']}  grade={row['grade']}{extra}", file=out)
    return status


# ---------------------------------------------------------------------------
# selftest


def _golden_jacks():
    t = SYMBOLIC.t
    ok = symfunc.jack([1, 1]) == symfunc.parse_symfunc("1/2*p[1,1] - 1/2*p[2]")
    ok &= symfunc.jack([2, 1]) == (
        symfunc.SymFunc.p([1, 1, 1]) * (1 / (t + 2))
        + symfunc.SymFunc.p([2, 1]) * ((t - 1) / (t + 2))
        - symfunc.SymFunc.p([3]) * (t / (t + 2))
    )
    f45 = PointField(Fraction(4, 5))
    ok &= symfunc.jack([2]).specialize(f45) == symfunc.parse_symfunc("5/9*p[1,1] + 4/9*p[2]").specialize(f45)
    ok &= f45.coerce(symfunc.integral_norm_c([1], 1)) == f45.make(Fraction(5, 4))
    ok &= f45.coerce(symfunc.integral_norm_c([2], 1)) == f45.make(Fraction(5, 4) * Fraction(9, 8))
    ok &= symfunc.integral_norm_c([1, 1], 2) == 2 / (t * (t + 1))
    return ok


def _example1():
    spec = ScreeningSpec(3, (1, 1), (-1, -1), "+", Fraction(4, 5))
    v = singular_vector(spec)
    f = v.field
    expected = FockVector(
        v.weight,
        {((1,), (1,)): 1, ((1, 1), ()): Fraction(5, 8), ((2,), ()): f.alpha_plus / 2},
    )
    hs = conformal_weight(spec.source_weight()) == f.make(Fraction(13, 6))
    hs &= conformal_weight(spec.target_weight()) == f.make(Fraction(1, 6))
    return v == expected and hs and check_singular(v, spec).passed


def _example2():
    spec = ScreeningSpec(3, (2, 1), (-1, -1))
    v = singular_vector(spec)
    t, a = SYMBOLIC.t, SYMBOLIC.alpha_plus
    d = (t + 1) * (2 * t + 1)
    expected = FockVector(
        v.weight,
        {
            ((1, 1, 1), ()): (2 / a) / d,
            ((1, 1), (1,)): (1 / a) / (t + 1),
            ((2, 1), ()): 2 * (t - 1) / d,
            ((2,), (1,)): -1 / (t + 1),
            ((3,), ()): -(2 / a) / d,
        },
    )
    return v == expected and check_singular(v, spec).passed


def _example3():
    spec = next(example3_enumerate(3, 2))
    v = singular_vector(spec)
    return spec.grade == 6 and all(not x for x in v.weight.dynkin) and check_singular(v, spec).passed


def _minus_family():
    spec = ScreeningSpec(3, (-1, -1), (1, 1), "-", Fraction(5, 4))
    v = singular_vector(spec)
    return check_singular(v, spec).passed


def _wn_spot():
    spec = ScreeningSpec(4, (1, 1, 1), (-1, -1, -1))
    v = singular_vector(spec)
    return bool(v) and v.is_homogeneous(3) and check_singular(v, spec).passed


def _oracle():
    spec = ScreeningSpec(3, (1, 1), (-1, -1), "+", Fraction(4, 5))
    v = singular_vector(spec)
    return kernel_certificate(v, brute_force_kernel(v.weight, 2)) is not None


def _jack_properties():
    from .partition import partitions

    for n in range(6):
        parts = partitions(n)
        for lam in parts:
            mono = symfunc.jack_monomial(lam)
            if mono.get(lam) != 1 or any(not lam.dominates(mu) for mu in mono):
                return False
            j = symfunc.jack(lam)
            for mu in parts:
                ip = symfunc.inner_product(j, symfunc.jack(mu) * symfunc.dual_norm_b(mu))
                if ip != (1 if mu == lam else 0):
                    return False
    return True


def _cauchy():
    lhs, rhs = symfunc.cauchy_truncated(3, 3, 3)
    return lhs == rhs


def _mode_algebra():
    return all(ok for _, ok in check_mode_algebra(max_grade=2, ww_grade=1))


def _weyl_invariance():
    z = Weight([Fraction(3, 7) + SYMBOLIC.alpha, Fraction(-2, 5) * SYMBOLIC.t])
    h, x = conformal_weight(z), w3_weight_unnormalized(z)
    return all(
        conformal_weight(shifted_weyl_act(w, z)) == h and w3_weight_unnormalized(shifted_weyl_act(w, z)) == x
        for w in weyl_group(3)
    )


SELFTESTS = [
    ("jack and norm goldens", _golden_jacks),
    ("example 1 (t = 4/5)", _example1),
    ("example 2 (symbolic t)", _example2),
    ("example 3 (t = 3/2, first spec)", _example3),
    ("minus family (t = 5/4)", _minus_family),
    ("N = 4 spot check", _wn_spot),
    ("kernel oracle, example 1", _oracle),
    ("jack triangularity and duality, degree <= 5", _jack_properties),
    ("cauchy identity, degree <= 3", _cauchy),
    ("mode algebra, grade <= 2", _mode_algebra),
    ("shifted Weyl invariance", _weyl_invariance),
]


def run_selftest(out=sys.stdout) -> bool:
    results = []
    for name, fn in SELFTESTS:
        start = time.perf_counter()
        try:
            ok = bool(fn())
            note = ""
        except Exception as exc:  # a crash counts as a failure
            ok, note = False, f" ({type(exc).__name__}: {exc})"
        results.append((name, ok, time.perf_counter() - start, note))
    width = max(len(name) for name, *_ in results)
    for name, ok, secs, note in results:
        print(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {secs:6.2f}s{note}", file=out)
    passed = sum(ok for _, ok, *_ in results)
    print(f"{passed}/{len(results)} passed", file=out)
    return passed == len(results)


def cmd_selftest(args, out):
    return EXIT_OK if run_selftest(out) else EXIT_FAIL


def cmd_cache(args, out):
    path = args.cache or os.environ.get(CACHE_ENV)
    if not path:
        raise UsageError(f"no cache path: pass --cache or set {CACHE_ENV}")
    n = symfunc.save_jack_cache(path, args.max_degree)
    print(f"wrote {n} Jack functions to {path}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", default="symbolic", help="parameter t as p/q, or 'symbolic' (default)")
    common.add_argument("--alpha-sign", type=int, choices=(1, -1), default=1, help="branch of alpha = ±sqrt(1/t)")
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--cache", default=None, help=f"Jack cache file (default: ${CACHE_ENV})")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for the summation")
    common.add_argument("--precision", type=int, default=53, help="bits for numeric output")
    common.add_argument("--numeric", action="store_true", help="also print decimal values (specialized t)")

    spec_opts = argparse.ArgumentParser(add_help=False)
    spec_opts.add_argument("--n", type=int, default=3, help="rank parameter N of W_N")
    spec_opts.add_argument("--r", help="comma separated r_1,...,r_{N-1}")
    spec_opts.add_argument("--s", help="comma separated s_1,...,s_{N-1}")
    spec_opts.add_argument("--sign", choices=("+", "-"), default="+")

    parser = argparse.ArgumentParser(prog="wsingular", description="Jack functions and W_N singular vectors.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jack", parents=[common], help="Jack function in the power-sum basis")
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_jack)

    p = sub.add_parser("skew", parents=[common], help="skew Jack function J_{lambda/mu}")
    p.add_argument("--partition", required=True)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=cmd_skew)

    p = sub.add_parser("singular", parents=[common, spec_opts], help="closed-form singular vector")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("verify", parents=[common, spec_opts], help="check a singular vector by mode actions")
    p.add_argument("--oracle", action="store_true", help="also run the kernel oracle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common, spec_opts], help="kernel of positive modes at the target grade")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("example3", parents=[common], help="specs with vanishing target weight at t = u/v")
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_example3)

    p = sub.add_parser("selftest", parents=[common], help="run the built-in golden checks")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("cache", parents=[common], help="write the Jack cache file")
    p.add_argument("--max-degree", type=int, default=8)
    p.set_defaults(func=cmd_cache)
    return parser


# options whose values may start with '-' (e.g. --s -1,-1)
_VALUE_OPTS = ("--r", "--s", "--t", "--alpha-sign")


def _join_values(argv):
    """Rewrite '--s -1,-1' as '--s=-1,-1' so argparse does not read the value as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    cache = args.cache or os.environ.get(CACHE_ENV)
    if cache and args.command != "cache":
        symfunc.use_jack_cache(cache)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

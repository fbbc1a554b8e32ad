"""``ostro`` command line: one subcommand per library operation.

Output is JSON (default) or CSV on stdout.  Errors go to stderr as one JSON
line; exit status is 2 for usage errors and 1 for domain errors.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .cantor import (
    Complement,
    Prefix,
    Tail,
    VALIDATE_INDICES,
    family_spec,
    measure_bounds,
    parse_family,
    pierce_growth_zero_test,
)
from .companions import (
    cf_expand,
    gauss_frequency,
    pierce_expand,
    pierce_growth_stat,
    transfer_map,
)
from .errors import BudgetExceeded, OstrogradskyError
from .expansion import (
    BarO2Digits,
    O2Digits,
    as_rational,
    bar_to_o2,
    companions,
    cylinder_interval,
    digit_count,
    evaluate_bar,
    evaluate_o2,
    o2_to_bar,
    remez_expand,
    shift,
)
from .hausdorff import bounded_digit_report, certify_zero_dim
from .numeric import decimal_str, fits_exact, int_json, rational_str
from .sampler import (
    DigitLaw,
    default_jobs,
    eta_cdf,
    frequency_experiment,
    iid_sample,
    lebesgue_digit_sample,
    parse_law,
    singularity_diagnostic,
)

SCHEMA = 1
EXACT_BITS = 8192
APPROX_DIGITS = 30

CONFIG_KEYS = {
    "depth": int,
    "horizon": int,
    "max_terms": int,
    "max_bits": int,
    "budget": int,
    "jobs": int,
    "precision": int,
    "sigma": float,
    "threshold": Fraction,
}


# --------------------------------------------------------------------------- serialisation


def jsonable(value):
    """Exact rationals as ``"p/q"``; oversized ones as a decimal estimate with its precision."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, float)):
        return value
    if isinstance(value, Fraction):
        if fits_exact(value, EXACT_BITS):
            return rational_str(value)
        return {"approx": decimal_str(value, APPROX_DIGITS), "precision": APPROX_DIGITS}
    if isinstance(value, int):
        return int_json(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    try:
        return int_json(int(value))  # gmpy2 integers
    except (TypeError, ValueError):
        return str(value)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), separators=(",", ":"), sort_keys=False)


def _csv_cell(value):
    value = jsonable(value)
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    return value


def emit(records, fmt, out):
    if fmt == "json":
        for rec in records:
            out.write(dumps(rec) + "\n")
        return
    columns = []
    for rec in records:
        for key in rec:
            if key not in columns:
                columns.append(key)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_csv_cell(rec.get(c, "")) for c in columns])
    out.write(buf.getvalue())


# --------------------------------------------------------------------------- parsing helpers


def int_list(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(",") if v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def rational_list(text: str) -> tuple:
    try:
        return tuple(Fraction(v) for v in text.replace(" ", "").split(",") if v)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(dumps({"error": "UsageError", "message": message, "exit": 2}) + "\n")
        sys.exit(2)


def _load_config(path):
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_string("[ostro]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise OstrogradskyError(f"cannot read config {path}: {exc}") from None
    values = {}
    for key, raw in parser["ostro"].items():
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise OstrogradskyError(f"unknown config key {key!r}")
        try:
            values[key] = CONFIG_KEYS[key](raw.strip())
        except (ValueError, ZeroDivisionError):
            raise OstrogradskyError(f"bad value for {key}: {raw!r}") from None
    return values


def _bar_digits(args):
    if args.d is not None:
        return BarO2Digits(args.d, args.terminated)
    if args.q is not None:
        return o2_to_bar(O2Digits(args.q, args.terminated))
    raise OstrogradskyError("give digits with --d or --q")


# --------------------------------------------------------------------------- commands


def cmd_expand(args):
    x = as_rational(args.x)
    if args.system == "cf":
        return [_cf_record(x, args)]
    if args.system == "pierce":
        return [_pierce_record(x, args)]
    q = remez_expand(x, args.max_terms or 24, alternate=args.alternate)
    d = o2_to_bar(q)
    return [{"q": list(q.q), "d": list(d.d), "terminated": q.terminated}]


def cmd_eval(args):
    if args.q is not None:
        q = O2Digits(args.q)
    else:
        q, _ = bar_to_o2(BarO2Digits(args.d or ()))
    value = evaluate_o2(q, args.n)
    return [{"q": list(q.q), "n": args.n if args.n is not None else len(q), "value": value}]


def cmd_convert(args):
    if args.q is not None:
        d = o2_to_bar(O2Digits(args.q))
        return [{"q": list(args.q), "d": list(d.d), "c": list(companions(d.d).c)}]
    q, comp = bar_to_o2(BarO2Digits(args.d or ()))
    return [{"d": list(args.d), "q": list(q.q), "c": list(comp.c)}]


def cmd_cylinder(args):
    cyl = cylinder_interval(_bar_digits(args))
    return [{"d": list(cyl.base.d), "rank": cyl.rank, "parity": cyl.parity, "a": cyl.a, "b": cyl.b, "length": cyl.length}]


def cmd_shift(args):
    digits = _bar_digits(args)
    return [{"d": list(digits.d), "times": args.times, "shifted": list(shift(digits, args.times).d)}]


def cmd_freq(args):
    digits = _bar_digits(args)
    n = args.n if args.n is not None else len(digits)
    count = digit_count(digits, args.i, n)
    return [{"i": args.i, "n": n, "count": count, "frequency": Fraction(count, n) if n else Fraction(0)}]


def _cf_record(x, args):
    a = cf_expand(x, args.max_terms or 10_000)
    return {"x": x, "a": list(a.a), "terminated": a.terminated}


def _pierce_record(x, args):
    p = pierce_expand(x, args.max_terms or 64)
    return {"x": x, "q": list(p.q), "g": list(p.g), "terminated": p.terminated}


def cmd_cf(args):
    precision = args.precision or 64
    if args.gauss is not None:
        value = gauss_frequency(args.gauss, precision)
        return [{"i": args.gauss, "frequency": str(value), "precision": precision}]
    if args.x is None:
        raise OstrogradskyError("give --x or --gauss")
    return [_cf_record(as_rational(args.x), args)]


def cmd_pierce(args):
    if args.family is not None:
        fam = parse_family(args.family)
        if not isinstance(fam, Tail):
            raise OstrogradskyError("the Pierce zero-measure test needs a tail family")
        out = pierce_growth_zero_test(fam, args.horizon or 30)
        out["roots"] = [[k, float(r)] for k, r in out["roots"]]
        return [{"family": family_spec(fam), **out}]
    if args.x is None:
        raise OstrogradskyError("give --x or --family")
    rec = _pierce_record(as_rational(args.x), args)
    if args.growth:
        precision = args.precision or 64
        rec["growth"] = [[n, str(v)] for n, v in pierce_growth_stat(rec["q"], precision)]
        rec["precision"] = precision
    return [rec]


def cmd_transfer(args):
    digits = _bar_digits(args)
    lo, hi = transfer_map(digits, args.target)
    return [{"d": list(digits.d), "target": args.target, "terminated": digits.terminated, "lower": lo, "upper": hi}]


def cmd_family(args):
    fam = parse_family(args.spec)
    rec = {"family": family_spec(fam)}
    if isinstance(fam, Tail):
        rec.update(kind="tail", values=[fam.v(k) for k in VALIDATE_INDICES])
    elif isinstance(fam, Prefix):
        rec.update(kind="prefix", values=[fam.m(k) for k in VALIDATE_INDICES])
    else:
        rec.update(
            kind="complement",
            removed=[] if fam.b is None else [fam.b(n) for n in VALIDATE_INDICES],
            gap=None if fam.gap is None else [fam.gap(k) for k in VALIDATE_INDICES],
        )
    return [rec]


def cmd_measure(args):
    kwargs = {}
    if args.budget:
        kwargs["budget"] = args.budget
    result = measure_bounds(parse_family(args.family), args.depth, args.horizon, **kwargs)
    crit = result.criterion
    return [{
        "family": result.family,
        "depth": result.depth,
        "lower": result.lower,
        "upper": result.upper,
        "lower_decimal": decimal_str(result.lower, 20),
        "upper_decimal": decimal_str(result.upper, 20),
        "precision": 20,
        "verdict": result.verdict.value,
        "criterion": {
            "name": crit.name,
            "series": crit.series,
            "verdict": crit.verdict,
            "terms": [[k, t] for k, t in crit.terms],
            "partial_sum": crit.partial_sum,
            "tail_bound": crit.tail_bound,
        },
        "trace": result.trace,
        "notes": result.notes,
    }]


def cmd_dim(args):
    if args.bounded:
        return [bounded_digit_report()]
    fam = parse_family(args.family)
    alphas = args.alphas or (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2), Fraction(1))
    kwargs = {"depth": args.depth or 12}
    if args.threshold is not None:
        kwargs["threshold"] = args.threshold
    report = certify_zero_dim(fam, alphas, **kwargs)
    return [{
        "family": family_spec(fam),
        "alphas": [r.alpha for r in report.reports],
        "sums": [
            {
                "alpha": r.alpha,
                "verdict": r.verdict,
                "k0": r.k0,
                "values": [{"k": v.k, "lower": v.lower, "upper": v.upper,
                            "upper_decimal": decimal_str(v.upper, 12)} for v in r.sums],
            }
            for r in report.reports
        ],
        "certificate": report.certificate,
        "reason": report.reason,
        "references": bounded_digit_report()["E2"],
    }]


def cmd_sample(args):
    law = parse_law(args.law)
    out = []
    for i in range(args.paths):
        if law is None:
            path = lebesgue_digit_sample(args.seed, args.depth or 24, index=i,
                                         **({"max_bits": args.max_bits} if args.max_bits else {}))
        else:
            path = iid_sample(law, args.seed, args.depth or 24, index=i)
        out.append({"seed": args.seed, "path": i, "law": path.law, "depth": path.depth, "digits": list(path.digits.d)})
    return out


def cmd_cdf(args):
    law = parse_law(args.law)
    if not isinstance(law, DigitLaw):
        raise OstrogradskyError("cdf needs an i.i.d. law, not lebesgue")
    lo, hi = eta_cdf(as_rational(args.x), law, args.depth or 24)
    return [{"x": as_rational(args.x), "law": law.spec(), "depth": args.depth or 24, "lower": lo, "upper": hi}]


def cmd_experiment(args):
    law = parse_law(args.law)
    jobs = args.jobs or default_jobs()
    extra = {"max_bits": args.max_bits} if args.max_bits else {}
    if args.kind == "singularity":
        report = singularity_diagnostic(law, args.paths, args.depth or 24, args.seed,
                                        args.sigma if args.sigma is not None else 5.0, jobs, **extra)
        report["type"] = "singularity"
        return [report]
    depth = args.depth or (24 if law is None else 10_000)
    tracked = args.tracked or (1, 2, 3, 4, 5)
    records, aggregate = frequency_experiment(law, args.paths, depth, args.seed, tracked, jobs, **extra)
    for rec in records:
        rec["type"] = "path"
    aggregate["type"] = "aggregate"
    return records + [aggregate]


def cmd_constants(args):
    report = bounded_digit_report()
    return [{"set": "e2", "E2": report["E2"]}]


# --------------------------------------------------------------------------- parser


def _digits_args(p):
    p.add_argument("--d", type=int_list, help="Ō² digits, e.g. 2,5")
    p.add_argument("--q", type=int_list, help="O² denominators, e.g. 2,10")
    p.add_argument("--terminated", action="store_true", help="treat the digits as a complete expansion")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ostro", description="Second Ostrogradsky expansion toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--config", help="key = value file overriding depth caps and thresholds")
    common.add_argument("--jobs", type=int, help="worker processes (default: $OSTRO_JOBS or 1)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("expand", cmd_expand, "expand a rational in (0,1)")
    p.add_argument("--x", required=True)
    p.add_argument("--system", choices=("o2", "cf", "pierce"), default="o2")
    p.add_argument("--max-terms", dest="max_terms", type=int)
    p.add_argument("--alternate", action="store_true", help="other finite representation of a rational")

    p = add("eval", cmd_eval, "evaluate an alternating partial sum")
    _digits_args(p)
    p.add_argument("--n", type=int)

    p = add("convert", cmd_convert, "convert between q and d digits")
    _digits_args(p)

    p = add("cylinder", cmd_cylinder, "closed interval of a cylinder")
    _digits_args(p)

    p = add("shift", cmd_shift, "drop leading digits")
    _digits_args(p)
    p.add_argument("--times", type=int, default=1)

    p = add("freq", cmd_freq, "count a digit in a prefix")
    _digits_args(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--n", type=int)

    p = add("cf", cmd_cf, "continued fraction digits or Gauss frequency")
    p.add_argument("--x")
    p.add_argument("--gauss", type=int, metavar="I")
    p.add_argument("--max-terms", dest="max_terms", type=int)
    p.add_argument("--precision", type=int)

    p = add("pierce", cmd_pierce, "Ostrogradsky-Pierce digits, growth, zero-measure test")
    p.add_argument("--x")
    p.add_argument("--family")
    p.add_argument("--growth", action="store_true")
    p.add_argument("--max-terms", dest="max_terms", type=int)
    p.add_argument("--precision", type=int)
    p.add_argument("--horizon", type=int)

    p = add("transfer", cmd_transfer, "image of a digit string in another system")
    _digits_args(p)
    p.add_argument("--target", choices=("pierce", "cf"), required=True)

    p = add("family", cmd_family, "parse a digit family")
    p.add_argument("--spec", required=True)

    p = add("measure", cmd_measure, "certified Lebesgue measure bounds")
    p.add_argument("--family", required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--horizon", type=int)
    p.add_argument("--budget", type=int)

    p = add("dim", cmd_dim, "covering sums and zero-dimension certificate")
    p.add_argument("--family")
    p.add_argument("--alphas", type=rational_list)
    p.add_argument("--depth", type=int)
    p.add_argument("--threshold", type=Fraction)
    p.add_argument("--bounded", action="store_true", help="bounded-digit comparison report")

    p = add("sample", cmd_sample, "random digit paths")
    p.add_argument("--law", default="lebesgue")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--paths", type=int, default=1)
    p.add_argument("--max-bits", dest="max_bits", type=int)

    p = add("cdf", cmd_cdf, "distribution function of η")
    p.add_argument("--x", required=True)
    p.add_argument("--law", required=True)
    p.add_argument("--depth", type=int)

    p = add("experiment", cmd_experiment, "Monte Carlo frequency or singularity experiment")
    p.add_argument("--kind", choices=("frequency", "singularity"), default="frequency")
    p.add_argument("--law", default="lebesgue")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--paths", type=int, default=100)
    p.add_argument("--depth", type=int)
    p.add_argument("--tracked", type=int_list)
    p.add_argument("--sigma", type=float)
    p.add_argument("--max-bits", dest="max_bits", type=int)

    p = add("constants", cmd_constants, "reference constants")
    p.add_argument("--set", choices=("e2",), default="e2")
    return parser


def _apply_config(args):
    if not getattr(args, "config", None):
        return
    for key, value in _load_config(args.config).items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        records = args.func(args)
        for rec in records:
            rec.setdefault("schema", SCHEMA)
            rec.setdefault("command", args.command)
        emit(records, args.format, out)
    except BudgetExceeded as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc), "max_depth": exc.max_depth, "exit": 1}) + "\n")
        return 1
    except (OstrogradskyError, ValueError, TypeError, IndexError) as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc), "exit": 1}) + "\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

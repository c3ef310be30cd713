"""Command-line front end.

    qmacmahon table  --n 3 --set 1,2 --kmax 4 --mmax 15
    qmacmahon series --preset C --kmax 3 --order 20 --format json
    qmacmahon oracle --n 5 --set 2,3 --k 1 --m 5
    qmacmahon verify thm2 --n 3 --set 1,2 --order 30
    qmacmahon decompose --n 4 --set 1,3 --kmax 4 --order 25

Exit codes: 0 pass, 1 internal cross-check failure, 2 invalid input,
3 verification failure.
"""

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import identities, macmahon, quasimodular, theta
from .macmahon import ResidueSetError
from .series import _exp_text, fmt_frac

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_FAIL = 0, 1, 2, 3

IDENTITIES = ("thm1-odd", "thm1-even", "thm2", "thm3", "jtp", "heat", "eta3", "recon-A", "recon-B")
DEFAULT_JTP = "1/2,1/6,-1/6,1/4,1/10"


class InputError(Exception):
    pass


def parse_order(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--order must be an integer or p/q, got {text!r}") from None
    if value <= 0:
        raise InputError("--order must be positive")
    return value


def parse_set(text):
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise InputError(f"--set must be a comma-separated list of integers, got {text!r}") from None


def parse_kmax(text):
    if text == "auto":
        return "auto"
    try:
        k = int(text)
    except ValueError:
        raise InputError(f"--kmax must be an integer or 'auto', got {text!r}") from None
    if k < 0:
        raise InputError("--kmax must be non-negative")
    return k


def resolve_spec(args):
    if getattr(args, "preset", None):
        try:
            return macmahon.preset(args.preset)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if args.n is None or args.set is None:
        raise InputError("give --n and --set, or --preset")
    return macmahon.validate(args.n, parse_set(args.set))


def _num(c):
    return int(c) if c.denominator == 1 else fmt_frac(c)


# -- table --------------------------------------------------------------


def render_table(spec, fam, mmax, fmt):
    table = fam.table(mmax)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "m", "coefficient"])
        for k in sorted(table):
            for m in sorted(table[k]):
                w.writerow([k, m, _num(table[k][m])])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "n": spec.n,
            "set": list(spec.elems),
            "kind": fam.kind,
            "order": fmt_frac(fam.order),
            "table": {str(k): {str(m): _num(v) for m, v in sorted(row.items())}
                      for k, row in sorted(table.items())},
        }
        return json.dumps(doc) + "\n"
    # text: cells below the first possible nonzero position stay blank
    cells = [["(k,m)"] + [str(m) for m in range(1, mmax + 1)]]
    for k in sorted(table):
        start = spec.min_tuple_sum(k)
        cells.append([str(k)] + ["" if m < start else str(_num(table[k][m]))
                                 for m in range(1, mmax + 1)])
    widths = [max(len(row[i]) for row in cells) for i in range(len(cells[0]))]
    lines = []
    for r, row in enumerate(cells):
        head = row[0].ljust(widths[0])
        body = " ".join(c.rjust(wd) for c, wd in zip(row[1:], widths[1:]))
        lines.append(f"{head} | {body}".rstrip())
        if r == 0:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines) + "\n"


def cross_check(spec, fam):
    """DP entries against the x-extraction of the product expansion."""
    poly = macmahon.gen_poly(spec, fam.kind, fam.order)
    for k, entry in enumerate(fam.entries):
        extracted = macmahon.x_coefficient(poly, 2 * k)
        if fam.kind == "A" and k % 2:
            extracted = -extracted
        if extracted != entry:
            return k
    return None


def cmd_table(args):
    spec = resolve_spec(args)
    if args.mmax < 1:
        raise InputError("--mmax must be positive")
    order = Fraction(args.mmax + 1)
    fam = macmahon.family(spec, args.kind, parse_kmax(args.kmax), order)
    bad = cross_check(spec, fam)
    if bad is not None:
        print(f"internal cross-check failed: DP and product expansion differ at k={bad}", file=sys.stderr)
        return EXIT_INTERNAL, ""
    return EXIT_OK, render_table(spec, fam, args.mmax, args.format)


# -- series / oracle ----------------------------------------------------


def cmd_series(args):
    spec = resolve_spec(args)
    order = parse_order(args.order)
    fam = macmahon.family(spec, args.kind, parse_kmax(args.kmax), order)
    if args.format == "json":
        doc = {"spec": spec.to_dict(), "kind": args.kind, "order": fmt_frac(order),
               "entries": [e.to_dict() for e in fam.entries]}
        return EXIT_OK, json.dumps(doc) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "m", "coefficient"])
        for k, e in enumerate(fam.entries):
            for (qe, _), c in e.items():
                w.writerow([k, fmt_frac(qe) if qe.denominator != 1 else int(qe), _num(c)])
        return EXIT_OK, buf.getvalue()
    lines = [f"{args.kind}_{{{spec}}},{k} = {e.to_text()} + O(q^{_exp_text(order)})"
             for k, e in enumerate(fam.entries)]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_oracle(args):
    spec = resolve_spec(args)
    if args.k < 1 or args.m < 1:
        raise InputError("--k and --m must be positive")
    value = macmahon.coefficient_oracle(spec, args.kind, args.k, args.m)
    if args.format == "json":
        doc = {"spec": spec.to_dict(), "kind": args.kind, "k": args.k, "m": args.m, "coefficient": value}
        return EXIT_OK, json.dumps(doc) + "\n"
    return EXIT_OK, f"{value}\n"


# -- verify ---------------------------------------------------------------


def _reports_for(args):
    name = args.identity
    order = parse_order(args.order)
    if name == "thm1-odd":
        return [identities.verify_thm1_odd(order)]
    if name == "thm1-even":
        return [identities.verify_thm1_even(order), identities.verify_pochhammer_form(order)]
    if name == "eta3":
        return [theta.verify_eta_cubed(order)]
    if name == "jtp":
        return [theta.verify_jtp(Fraction(r), order) for r in parse_rationals(args.r or DEFAULT_JTP)]
    if name == "heat":
        return [theta.verify_heat(Fraction(r), args.scale, order)
                for r in parse_rationals(args.r or "1/2")]
    spec = resolve_spec(args)
    if name == "thm2":
        return [identities.verify_thm2(spec, order)]
    if name == "thm3":
        return [identities.verify_thm3(spec, order)]
    kmax = parse_kmax(args.kmax)
    if kmax == "auto":
        kmax = 3
    try:
        if name == "recon-A":
            return quasimodular.reconstruct(spec, kmax, order).reports
        if spec.contains_n:
            return quasimodular.b_decompose_recursive(spec, kmax, order).reports
        return quasimodular.reconstruct_B(spec, kmax, order).reports
    except quasimodular.ReconstructionMismatch as exc:
        return exc.decomposition.reports if exc.decomposition else [exc.report]


def parse_rationals(text):
    try:
        return [Fraction(tok) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--r must be a comma-separated list of rationals, got {text!r}") from None


def cmd_verify(args):
    reports = _reports_for(args)
    out = "".join(r.to_json() + "\n" for r in reports)
    return (EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL), out


# -- decompose ----------------------------------------------------------


def cmd_decompose(args):
    spec = resolve_spec(args)
    order = parse_order(args.order)
    kmax = parse_kmax(args.kmax)
    if kmax == "auto":
        kmax = 3
    code = EXIT_OK
    try:
        if args.kind == "A":
            dec = quasimodular.reconstruct(spec, kmax, order)
        elif spec.contains_n:
            dec = quasimodular.b_decompose_recursive(spec, kmax, order)
        else:
            dec = quasimodular.reconstruct_B(spec, kmax, order)
    except quasimodular.ReconstructionMismatch as exc:
        print(str(exc), file=sys.stderr)
        if exc.decomposition is None:
            return EXIT_FAIL, ""
        dec, code = exc.decomposition, EXIT_FAIL
    return code, json.dumps(dec.to_dict()) + "\n"


# -- entry point --------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="modulus")
    common.add_argument("--set", help="comma-separated symmetric residue set, e.g. 1,2")
    common.add_argument("--preset", help="A, C, E or G (MacMahon's named families)")
    common.add_argument("--kind", choices=("A", "B"), default="A")
    common.add_argument("--kmax", default="auto", help="largest k, or 'auto'")
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="qmacmahon", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="coefficient table a_{S,n,k,m}")
    p.add_argument("--mmax", type=int, default=15)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("series", parents=[common], help="the family A_{S,n,k} as series")
    p.add_argument("--order", default="20")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("oracle", parents=[common], help="brute-force coefficient")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="check an identity to a finite order")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--order", default="20")
    p.add_argument("--r", help="characteristics for jtp/heat, comma-separated")
    p.add_argument("--scale", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", parents=[common], help="pure-weight decomposition")
    p.add_argument("--order", default="20")
    p.set_defaults(func=cmd_decompose)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.func(args)
    except (InputError, ResidueSetError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if text:
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

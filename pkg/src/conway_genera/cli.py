"""Batch front-end: compute genera, run verification suites, export tables.

Exit codes: 0 success, 1 identity failure, 2 usage error, 3 data error.
The environment variable MOONSHINE_DATA_DIR overrides the bundled data.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import genera, modforms, oracle, sigma
from .conway import DataError, bundled_data, load_class_data
from .report import CheckReport, Suite
from .scalars import format_radical
from .series import JacobiSeries, QSeries, first_difference

EXIT_OK = 0
EXIT_IDENTITY = 1
EXIT_USAGE = 2
EXIT_DATA = 3


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conway-genera",
        description="Exact computation and verification of Conway-class twining genera")
    parser.add_argument("--data-dir", default=None,
                        help="directory with classes.json/coincidences.json "
                             "(default: MOONSHINE_DATA_DIR or bundled)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute one series")
    p_compute.add_argument("--class", dest="class_name", required=True)
    p_compute.add_argument("--ell", type=int, default=2,
                           choices=(2, 3, 4, 5, 7))
    p_compute.add_argument("--sign", choices=("+", "-"), default="+")
    p_compute.add_argument("--prec", type=int, default=5,
                           help="integer q-orders")
    p_compute.add_argument("--what", choices=("phi", "ts", "ts-tw", "f"),
                           default="phi")
    p_compute.add_argument("--format", choices=("text", "json", "csv"),
                           default="text")

    p_verify = sub.add_parser("verify", help="run identity suites")
    p_verify.add_argument("--suite", default="all",
                          choices=("all", "eta-identity", "theta", "decomposition",
                                   "k3", "higher-lambency", "jacobi", "coincidences",
                                   "constants", "fourier", "oracle", "sigma"))
    p_verify.add_argument("--prec", type=int, default=None,
                          help="integer q-orders (suite-specific defaults)")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")

    p_list = sub.add_parser("list-classes", help="show the class table")
    p_list.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")

    p_export = sub.add_parser("export", help="export bundled tables")
    p_export.add_argument("--table", choices=("classes", "coincidences"),
                          default="classes")
    p_export.add_argument("--format", choices=("json", "csv", "text"),
                          default="json")
    return parser


def _series_payload(series) -> list[dict]:
    rows = []
    if isinstance(series, QSeries):
        items = [((k, 0), v) for k, v in series.items()]
    else:
        items = series.items()
    for (kq, ry), v in items:
        rows.append({"q_exp": str(Fraction(kq, 24)),
                     "y_exp": str(Fraction(ry, 2)),
                     "coeff": format_radical(v)})
    return rows


def _emit_series(series, fmt: str, out) -> None:
    if fmt == "text":
        out.write(series.dump() + "\n")
    elif fmt == "json":
        out.write(json.dumps({"coefficients": _series_payload(series)},
                             sort_keys=True, indent=2) + "\n")
    else:
        writer = csv.writer(out)
        writer.writerow(["q_exp", "y_exp", "coeff"])
        for row in _series_payload(series):
            writer.writerow([row["q_exp"], row["y_exp"], row["coeff"]])


def cmd_compute(args, data) -> int:
    try:
        rec = data.record(args.class_name)
    except KeyError:
        print(f"error: class {args.class_name!r} not in table", file=sys.stderr)
        return EXIT_USAGE
    sign = 1 if args.sign == "+" else -1
    try:
        if args.what == "phi":
            req = genera.GenusRequest(rec, sign, args.ell, args.prec)
            series = genera.phi_g_ell(req)
        elif args.what == "ts":
            series = genera.ts_g(rec, "g", "chi", args.prec)
        elif args.what == "ts-tw":
            series = genera.ts_g(rec, "g_tw", "chi", args.prec)
        else:
            series = genera.f_g(rec, sign, args.prec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit_series(series, args.format, sys.stdout)
    return EXIT_OK


def _suite_eta(data, orders):
    return [genera.verify_eta_identity(rec, orders or 8)
            for rec in data.classes.values()]


def _suite_theta(data, orders):
    return modforms.verify_theta_identities(24 * (orders or 4))


def _suite_decomposition(data, orders):
    out = []
    for rec in data.classes.values():
        signs = (1,) if rec.d_magnitude[2].is_zero else (1, -1)
        for sign in signs:
            out.append(genera.verify_decomposition(rec, sign, orders or 5))
    return out


def _suite_k3(data, orders):
    n = orders or 5
    k3 = genera.k3_elliptic_genus(n)
    phi_e = genera.phi_g(data.record("1A"), 1, n)
    reports = [CheckReport.from_deviation(
        "k3-genus[equals identity-class genus]",
        first_difference(k3, phi_e, 24 * n))]
    z0 = k3.specialize_z0()
    ok = all((v == 24) if k == 0 else v.is_zero for k, v in z0.coeffs.items())
    reports.append(CheckReport("k3-genus[z=0 value 24]", "pass" if ok else "fail"))
    f_e = genera.f_g(data.record("1A"), 1, max(n, 10))
    reports.append(CheckReport(
        "k3-genus[weight-2 multiplier vanishes]",
        "pass" if f_e.is_zero else "fail"))
    return reports


def _suite_higher(data, orders):
    out = []
    for ell in (3, 4, 5, 7):
        for rec in data.for_lambency(ell):
            signs = (1,) if rec.d_magnitude[ell].is_zero else (1, -1)
            for sign in signs:
                req = genera.GenusRequest(rec, sign, ell, orders or 4)
                out.append(genera.verify_decomposition_ell(req))
    return out


def _suite_jacobi(data, orders):
    out = []
    for ell in (2, 3, 4, 5, 7):
        for rec in data.for_lambency(ell):
            signs = (1,) if rec.d_magnitude[ell].is_zero else (1, -1)
            for sign in signs:
                req = genera.GenusRequest(rec, sign, ell, orders or 6)
                phi = genera.phi_g_ell(req)
                name = f"jacobi-invariance[{rec.co0_name}, ell {ell}, D sign {sign:+d}]"
                out.append(genera.verify_jacobi_invariance(phi, ell - 1, name))
    return out


def _suite_coincidences(data, orders):
    return genera.verify_coincidences(data, orders or 5)


def _suite_constants(data, orders):
    from .conway import c_squared_oracle, d_squared_oracle
    from .scalars import RadicalScalar
    out = []
    for rec in data.classes.values():
        ok = rec.c_neg_g * rec.c_neg_g == RadicalScalar.from_rational(
            c_squared_oracle(rec.fs_g))
        ok = ok and rec.fs_g.negate() == rec.fs_neg_g
        ok = ok and rec.fs_neg_g.negate() == rec.fs_g
        for ell, mag in rec.d_magnitude.items():
            ok = ok and mag * mag == RadicalScalar.from_rational(
                d_squared_oracle(rec.fs_g, ell))
        out.append(CheckReport(f"constants[{rec.co0_name}]",
                               "pass" if ok else "fail"))
    return out


def _suite_fourier(data, orders):
    n = orders or 8
    out = []
    ts_e = genera.ts_g(data.record("1A"), "g", "chi", n)
    lead = ts_e.coeff(-12) == 1 and ts_e.coeff(0).is_zero
    out.append(CheckReport("fourier[identity-class leading shape]",
                           "pass" if lead else "fail"))
    for rec in data.classes.values():
        tw = genera.ts_g(rec, "g_tw", "chi", n)
        expected = QSeries({0: -rec.chi}, 24 * n)
        ok = tw == expected
        direct = genera.ts_g(rec, "g_tw", "direct", n)
        ok = ok and direct.agrees_with(expected, 24 * n)
        out.append(CheckReport(f"fourier[twisted constant, {rec.co0_name}]",
                               "pass" if ok else "fail"))
    return out


def _suite_oracle(data, orders):
    from . import oracle as orc
    out = []
    for name, sign in (("1A", 1), ("2B", 1), ("2D", 1), ("3D", 1),
                       ("4D", 1), ("4D", -1)):
        rec = data.record(name)
        ok = True
        ts = genera.ts_g(rec, "g", "chi", 3)
        brute = orc.brute_ts(rec, "g", 2)
        ok = ok and _brute_matches_q(brute, ts)
        ts_tw = genera.ts_g(rec, "g_tw", "chi", 3)
        brute_tw = orc.brute_ts(rec, "g_tw", 2)
        ok = ok and _brute_matches_q(brute_tw, ts_tw)
        phi = genera.phi_g(rec, sign, 3)
        brute_phi = orc.brute_phi(rec, sign, 2, 2)
        ok = ok and _brute_matches_jacobi(brute_phi, phi)
        label = f"oracle[{name}, D sign {sign:+d}]" if name == "4D" \
            else f"oracle[{name}]"
        out.append(CheckReport(label, "pass" if ok else "fail"))
    return out


def _brute_matches_q(brute: dict, series: QSeries) -> bool:
    order = next(iter(brute.values())).order if brute else 2
    limit = max(brute) if brute else 0
    for key in set(brute) | {k for k in series.coeffs if k <= limit}:
        want = oracle.embed_radical(series.coeff(key), order)
        have = brute.get(key, oracle.CycloNumber.zero(order))
        if want != have:
            return False
    return True


def _brute_matches_jacobi(brute: dict, series: JacobiSeries) -> bool:
    sample = next(iter(brute.values()), None)
    order = next(iter(sample.values())).order if sample else 2
    limit = max(brute) if brute else 0
    keys = set()
    for grid, charges in brute.items():
        keys.update((grid, 2 * c) for c in charges)
    keys.update(k for k in series.coeffs if k[0] <= limit)
    for (grid, ry) in keys:
        if ry % 2:
            return False
        want = oracle.embed_radical(series.coeff(grid, ry), order)
        have = brute.get(grid, {}).get(ry // 2, oracle.CycloNumber.zero(order))
        if want != have:
            return False
    return True


def _suite_sigma(data, orders):
    return sigma.verify_sigma_isomorphism(orders or 6)


_SUITES = {
    "eta-identity": _suite_eta,
    "theta": _suite_theta,
    "decomposition": _suite_decomposition,
    "k3": _suite_k3,
    "higher-lambency": _suite_higher,
    "jacobi": _suite_jacobi,
    "coincidences": _suite_coincidences,
    "constants": _suite_constants,
    "fourier": _suite_fourier,
    "oracle": _suite_oracle,
    "sigma": _suite_sigma,
}


def cmd_verify(args, data) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    suites = []
    for name in names:
        suite = Suite(name)
        suite.extend(_SUITES[name](data, args.prec))
        suites.append(suite)
    if args.format == "json":
        print(json.dumps([s.to_json() for s in suites], sort_keys=True, indent=2))
    else:
        for suite in suites:
            print(f"== suite {suite.name} ==")
            for report in suite.reports:
                print(report.line())
    ok = all(s.ok for s in suites)
    return EXIT_OK if ok else EXIT_IDENTITY


def cmd_list_classes(args, data) -> int:
    rows = []
    for rec in data.classes.values():
        rows.append({
            "co0": rec.co0_name,
            "co1": rec.co1_name,
            "pi_g": str(rec.fs_g),
            "pi_neg_g": str(rec.fs_neg_g),
            "chi": rec.chi,
            "rank": rec.rank,
            "c_neg_g": format_radical(rec.c_neg_g),
            "d_mag": {str(ell): format_radical(mag)
                      for ell, mag in sorted(rec.d_magnitude.items())},
            "gamma_g": rec.gamma_g,
            "gamma_neg_g": rec.gamma_neg_g,
            "level": rec.level,
        })
    if args.format == "json":
        print(json.dumps(rows, sort_keys=True, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["co0", "co1", "pi_g", "pi_neg_g", "chi", "rank",
                         "c_neg_g", "d_mag", "gamma_g", "gamma_neg_g", "level"])
        for row in rows:
            writer.writerow([row["co0"], row["co1"], row["pi_g"], row["pi_neg_g"],
                             row["chi"], row["rank"], row["c_neg_g"],
                             ";".join(f"{k}:{v}" for k, v in row["d_mag"].items()),
                             row["gamma_g"], row["gamma_neg_g"], row["level"]])
    else:
        for row in rows:
            mags = ", ".join(f"ell {k}: {v}" for k, v in row["d_mag"].items())
            print(f"{row['co0']:>4} ({row['co1']:>4})  pi: {row['pi_g']:<28} "
                  f"chi {row['chi']:>3}  C- {row['c_neg_g']:>5}  [{mags}]")
    return EXIT_OK


def cmd_export(args, data) -> int:
    if args.table == "classes":
        return cmd_list_classes(args, data)
    rows = [{
        "lambency": rel.lambency,
        "class": rel.lhs_class,
        "sign": rel.lhs_sign,
        "kind": rel.kind,
        "source": rel.source,
        "rhs": [{"coeff": str(c), "class": n, "sign": s} for c, n, s in rel.rhs],
        "level": rel.level,
    } for rel in data.relations]
    if args.format == "json":
        print(json.dumps(rows, sort_keys=True, indent=2))
    elif args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(["lambency", "class", "sign", "kind", "source", "level"])
        for row in rows:
            writer.writerow([row["lambency"], row["class"], row["sign"],
                             row["kind"], row["source"], row["level"]])
    else:
        for row in rows:
            print(f"ell {row['lambency']:>2} {row['class']:>4} "
                  f"sign {row['sign']:+d}  {row['kind']:<8} {row['source']}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        data = load_class_data(args.data_dir) if args.data_dir else bundled_data()
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        if args.command == "compute":
            return cmd_compute(args, data)
        if args.command == "verify":
            return cmd_verify(args, data)
        if args.command == "list-classes":
            return cmd_list_classes(args, data)
        if args.command == "export":
            return cmd_export(args, data)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    parser.error("unknown command")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``lacsphere <experiment> [options]``."""
import argparse
import csv
import json
import sys
from pathlib import Path

from .. import __version__
from ..errors import ConfigError, ResourceError
from .config import ENV_PREFIX, build_config
from .experiments import EXPERIMENTS, run
from .fixtures import FixtureDrift, FixtureMissing, FixtureStore, builtin_fixtures

COLUMN_DOCS = {
    "kind": "row type within the experiment",
    "d": "dimension", "q": "modulus", "lam": "radius squared", "l": "frequency vector or sampling note",
    "measured": "value computed by the artifact", "reference": "oracle value or predicted scale",
    "abs_diff": "|measured - reference| for oracle rows", "r": "|sqrt(lam) xi|",
    "beta": "exponent beta", "predicted_exponent": "predicted log-log slope", "detail": "sampling note",
    "set": "random set index", "size": "|F|", "alpha": "split parameter alpha",
    "m1_l1_ratio": "||M1 1_F||_1 / ||1_F||_1", "m1_l1.01_ratio": "||M1 1_F||_1.01 / ||1_F||_1.01",
    "m2_l2_ratio": "||M2 1_F||_2 / ||1_F||_2", "alpha_sq": "alpha^2",
    "alpha_l2_pred": "alpha^(3/2 - d/2)", "domination_violation": "max(A_tau 1_F - M1 - M2, 0)",
    "quadrature_error": "estimated grid quadrature error", "completeness_error": "max |sum of pieces - A_tau 1_F|",
    "side": "box side", "max_ratio": "sup_beta beta |{M 1_F > beta}|^((d-1)/(d+1)) / |F|^((d-1)/(d+1))",
    "critical_p": "(d+1)/(d-1)", "interp_at_critical": "interpolation exponent at critical p",
    "interp_at_1": "exponent at p = 1", "interp_at_2": "exponent at p = 2",
    "budget_max_rel_diff": "max relative deviation of the two weak-type pieces from |F|^((d-1)/(d+1))",
    "seed": "run seed", "config_hash": "hash of the effective configuration",
}


def _epilog(exp):
    cols = list(exp.columns) + ["seed", "config_hash"]
    lines = ["CSV columns (<out>/%s.csv):" % exp.name]
    lines += [f"  {c:22s} {COLUMN_DOCS.get(c, '')}" for c in cols]
    lines += ["", f"JSON summary: <out>/{exp.name}.json (fits, checks, provenance)",
              f"--budget: {exp.budget_help}",
              f"Environment: {ENV_PREFIX}<NAME> overrides any option, e.g. {ENV_PREFIX}SEED, "
              f"{ENV_PREFIX}{exp.params[0].name.upper()}.",
              "Exit status: 0 all asserted checks pass, 1 a check failed, 2 bad config or budget."]
    return "\n".join(lines)


def _add_common(p):
    p.add_argument("--config", metavar="PATH", help="INI config file")
    p.add_argument("--seed", type=int, help="random seed (default 0)")
    p.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    p.add_argument("--out", metavar="DIR", help="output directory (default results)")
    p.add_argument("--budget", type=int, help="work budget, see below")
    p.add_argument("--tol", type=float, help="tolerance for oracle checks")


def build_parser():
    parser = argparse.ArgumentParser(prog="lacsphere", description="Numerical experiments on discrete "
                                     "lacunary spherical maximal functions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, exp in EXPERIMENTS.items():
        p = sub.add_parser(name, help=exp.help, description=exp.help, epilog=_epilog(exp),
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        _add_common(p)
        g = p.add_argument_group("experiment parameters")
        for prm in exp.params:
            g.add_argument("--" + prm.name.replace("_", "-"), dest="p_" + prm.name, type=prm.parse,
                           metavar=prm.kind.upper(), help=f"{prm.help} (default {_fmt(prm.default)})")
    fx = sub.add_parser("fixtures", help="freeze, check or list derived reference values",
                        description="Derived values are computed once, frozen to a JSON store "
                        "(floats as hex, bit-exact) and compared on later runs.")
    fx.add_argument("action", choices=("freeze", "check", "list"))
    fx.add_argument("--store", default="fixtures.json", metavar="PATH", help="fixture file")
    fx.add_argument("--tol", type=float, default=1e-12, help="allowed drift (default 1e-12)")
    fx.add_argument("--name", action="append", help="restrict to these fixtures")
    return parser


def _fmt(v):
    return ",".join(map(str, v)) if isinstance(v, tuple) else str(v)


def write_report(report, out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{report.experiment}.csv"
    with open(csv_path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=report.columns, lineterminator="\n")
        w.writeheader()
        for row in report.rows:
            w.writerow(row)
    json_path = out / f"{report.experiment}.json"
    with open(json_path, "w") as fh:
        json.dump(report.summary(), fh, indent=1, sort_keys=True, default=list)
        fh.write("\n")
    return csv_path, json_path


def _print_report(report, stream):
    for f in report.fits:
        tag = ("PASS" if f["passed"] else "FAIL") if f["asserted"] else ("in band" if f["passed"] else "off band")
        slope = "n/a" if f["slope"] is None else f"{f['slope']:+.4f}"
        rel = "<=" if f["kind"] == "upper" else "~"
        print(f"{tag:8s} {f['name']}: slope {slope} {rel} {f['predicted']:+.4f} +- {f['slack']}", file=stream)
    for c in report.checks:
        if c["limit"] is None:
            tag, lim = "INFO", ""
        else:
            tag, lim = ("PASS" if c["passed"] else "FAIL"), f" (limit {c['limit']:.3g})"
        print(f"{tag:8s} {c['name']}: {c['value']:.6g}{lim}", file=stream)


def _fixtures(args, stream):
    store = FixtureStore(args.store)
    table = builtin_fixtures()
    names = args.name or sorted(table)
    unknown = [n for n in names if n not in table]
    if unknown:
        print(f"unknown fixtures: {', '.join(unknown)}", file=sys.stderr)
        return 2
    if args.action == "list":
        stored = set(store.names())
        for n in names:
            print(f"{n}{'' if n in stored else '  (not frozen)'}", file=stream)
        return 0
    status = 0
    for n in names:
        value = table[n]()
        if args.action == "freeze":
            kept = store.freeze(n, value)
            print(f"frozen   {n} = {kept!r}", file=stream)
            continue
        try:
            store.check(n, value, args.tol)
            print(f"PASS     {n} = {value!r}", file=stream)
        except FixtureMissing:
            print(f"MISSING  {n}", file=stream)
            status = 1
        except FixtureDrift as exc:
            print(f"FAIL     {exc}", file=stream)
            status = 1
    return status


def main(argv=None, stream=None):
    stream = stream or sys.stdout
    args = build_parser().parse_args(argv)
    if args.command == "fixtures":
        return _fixtures(args, stream)
    cli = {k: getattr(args, k) for k in ("seed", "jobs", "out", "budget", "tol")}
    cli.update({k[2:]: v for k, v in vars(args).items() if k.startswith("p_")})
    try:
        config = build_config(args.command, args.config, cli)
        report = run(config)
    except (ConfigError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    csv_path, json_path = write_report(report, config.out)
    _print_report(report, stream)
    print(f"wrote {csv_path} and {json_path} "
          f"(seed {config.seed}, config {report.provenance['config_hash']})", file=stream)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

    holocalc verify {g2,spin7,seifert,cone,exterior,spectral,catalog,all} [--eps q] [--seed k]
    holocalc decompose --degree {2,3} --input form.json
    holocalc indicial --delta q --dim m [--between nu nu']
    holocalc cohomology --n n --k k --dims a,b,c,d
    holocalc catalog {an,wcp2,s3r4} [--n-max N | --max-weight W | --max M] [--csv]

Exit codes: 0 success, 1 a verification check failed, 2 domain error,
64 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

REPORT_SCHEMA = "holocalc-report/1"
EX_USAGE = 64
EX_DOMAIN = 2
SUITE_ORDER = ("exterior", "g2", "seifert", "spin7", "cone", "spectral", "catalog")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EX_USAGE)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _dims(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON config file")
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS,
                        help="include elapsed ms (makes output non-deterministic)")

    p = _Parser(prog="holocalc", description="Exact calculus for circle-invariant G2/Spin(7) structures.",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", choices=SUITE_ORDER[1:5] + ("exterior", "spectral", "catalog", "all"))
    v.add_argument("--eps", type=_fraction, default=Fraction(1))
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--size", type=int, default=None, help="random cases per check (default 5)")

    dc = sub.add_parser("decompose", parents=[common], help="G2 type decomposition of a constant or polynomial form")
    dc.add_argument("--degree", type=int, choices=(2, 3), required=True)
    dc.add_argument("--input", required=True, help="form JSON file, or - for stdin")

    ind = sub.add_parser("indicial", parents=[common], help="indicial roots on functions")
    ind.add_argument("--delta", type=_fraction, required=True, help="link Laplace eigenvalue")
    ind.add_argument("--dim", type=int, required=True, help="cone dimension m")
    ind.add_argument("--between", type=_fraction, nargs=2, metavar=("NU", "NU_PRIME"),
                     help="also report the index jump between two weights")

    co = sub.add_parser("cohomology", parents=[common], help="weighted L2 cohomology dimensions")
    co.add_argument("--n", type=int, required=True)
    co.add_argument("--k", type=int, required=True)
    co.add_argument("--dims", type=_dims, required=True,
                    help="dim H^k_c, dim H^k, dim im(H^k -> H^k(link)), dim im(H^k_c -> H^k)")

    ca = sub.add_parser("catalog", parents=[common], help="example catalogs")
    fam = ca.add_subparsers(dest="family", required=True, parser_class=_Parser)
    an = fam.add_parser("an", parents=[common])
    an.add_argument("--n-max", type=int, default=None)
    wc = fam.add_parser("wcp2", parents=[common])
    wc.add_argument("--max-weight", type=int, default=None)
    s3 = fam.add_parser("s3r4", parents=[common])
    s3.add_argument("--max", type=int, default=None)
    for q in (an, wc, s3):
        q.add_argument("--csv", action="store_true")
    return p


# -- config -------------------------------------------------------------------

def load_config(path: str | None) -> tuple[dict, str]:
    """Parsed config and the sha256 of its canonical JSON ('{}' when absent)."""
    cfg: dict = {}
    if path:
        try:
            with open(path, encoding="utf-8") as fh:
                cfg = json.load(fh)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}")
        except json.JSONDecodeError as exc:
            raise UsageError(f"config is not valid JSON: {exc}")
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
    canon = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return cfg, hashlib.sha256(canon.encode()).hexdigest()


def _config_phi(cfg: dict):
    from .g2 import standard_phi

    terms = cfg.get("phi0")
    if terms is None:
        return standard_phi()
    try:
        parsed = {tuple(int(c) for c in key): Fraction(v) for key, v in terms.items()}
    except (AttributeError, ValueError) as exc:
        raise UsageError(f"config phi0 must map index strings like '123' to numbers: {exc}")
    return standard_phi(parsed)


def resolve_seed(arg: int | None, cfg: dict) -> int:
    if arg is not None:
        return arg
    if "seed" in cfg:
        return int(cfg["seed"])
    env = os.environ.get("HOLOCALC_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"HOLOCALC_SEED must be an integer, got {env!r}")


# -- output -------------------------------------------------------------------

def _table(rows: Sequence[Sequence[str]], header: Sequence[str]) -> str:
    rows = [list(map(str, r)) for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*r) for r in rows]
    return "\n".join(line.rstrip() for line in lines)


def _emit(doc, fmt: str, rows=None, header=None) -> None:
    if fmt == "table" and rows is not None:
        print(_table(rows, header))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))


def _frac(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- commands -----------------------------------------------------------------

def cmd_verify(args, cfg, chash, argv) -> int:
    from . import checks

    seed = resolve_seed(args.seed, cfg)
    size = args.size if args.size is not None else int(cfg.get("size", 5))
    if size < 1:
        raise UsageError("--size must be positive")
    if args.eps < 0:
        raise ValueError("eps must be nonnegative")
    suites = SUITE_ORDER if args.suite == "all" else (args.suite,)
    results = checks.run_suites(suites, seed=seed, size=size, eps=args.eps)
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "error")}
    report = {
        "schema": REPORT_SCHEMA,
        "command": list(argv),
        "config_hash": chash,
        "seed": seed,
        "eps": _frac(args.eps),
        "checks": [r.to_json(args.timings) for r in results],
        "summary": {**counts, "total": len(results)},
    }
    rows = [(r.name, r.status, r.detail) + ((f"{r.elapsed_ms:.1f}",) if args.timings else ()) for r in results]
    header = ("check", "status", "detail") + (("ms",) if args.timings else ())
    _emit(report, args.format, rows, header)
    if args.format == "table":
        print(f"\n{counts['pass']} pass, {counts['fail']} fail, {counts['error']} error")
    return 0 if counts["fail"] == counts["error"] == 0 else 1


def cmd_decompose(args, cfg, chash, argv) -> int:
    from . import linalg
    from .exterior import form_from_json, form_to_json
    from .g2 import G2Data, project2, project3

    try:
        if args.input == "-":
            obj = json.load(sys.stdin)
        else:
            with open(args.input, encoding="utf-8") as fh:
                obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read input: {exc}")
    except json.JSONDecodeError as exc:
        raise ValueError(f"input is not valid JSON: {exc}")
    a = form_from_json(obj)
    if a.n != 7 or a.k != args.degree:
        raise ValueError(f"expected a {args.degree}-form on R^7, got a {a.k}-form on R^{a.n}")
    G = G2Data(_config_phi(cfg))
    if args.degree == 2:
        names, parts, proj = ("7", "14"), project2(G, a), G.p2
    else:
        names, parts, proj = ("1", "7", "27"), project3(G, a), G.p3
    doc = {
        "degree": args.degree,
        "config_hash": chash,
        "components": {n: form_to_json(p) for n, p in zip(names, parts)},
        "ranks": {n: linalg.rank(proj[n]) for n in names},
    }
    rows = [(n, doc["ranks"][n], str(p)) for n, p in zip(names, parts)]
    _emit(doc, args.format, rows, ("type", "rank", "component"))
    return 0


def cmd_indicial(args, cfg, chash, argv) -> int:
    from . import spectral

    roots = spectral.indicial_roots_functions(args.delta, args.dim)
    doc = {"delta": _frac(args.delta), "dim": args.dim, "roots": [r.to_json() for r in roots]}
    rows = [("root", str(r)) for r in roots]
    if args.between:
        nu, nu2 = args.between
        data = [spectral.IndicialDatum(r) for r in roots]
        jump = spectral.index_jump(data, nu, nu2)
        doc["index_jump"] = {"nu": _frac(nu), "nu_prime": _frac(nu2), "N": jump}
        rows.append((f"N({nu}, {nu2})", str(jump)))
    _emit(doc, args.format, rows, ("quantity", "value"))
    return 0


def cmd_cohomology(args, cfg, chash, argv) -> int:
    from . import spectral

    minus, plus = spectral.l2_cohomology(spectral.CohomologyInput.from_dims(args.n, args.k, args.dims))
    doc = {"minus": minus, "plus": plus}
    _emit(doc, args.format, [("-k - delta", minus), ("-k + delta", plus)], ("rate", "dim"))
    return 0


def cmd_catalog(args, cfg, chash, argv) -> int:
    from . import catalog

    ranges = cfg.get("catalog", {})
    if args.family == "an":
        recs = catalog.catalog_an(args.n_max or ranges.get("n_max", catalog.DEFAULT_N_MAX))
    elif args.family == "wcp2":
        recs = catalog.catalog_wcp2(args.max_weight or ranges.get("max_weight", catalog.DEFAULT_MAX_WEIGHT))
    else:
        recs = catalog.catalog_s3r4(args.max or ranges.get("s3r4_max", catalog.DEFAULT_MAX_WEIGHT))
    if args.csv:
        sys.stdout.write(catalog.records_to_csv(recs))
    elif args.format == "table":
        recs = sorted(recs, key=catalog.ExampleRecord.sort_key)
        rows = [(r.family, json.dumps(r.params, sort_keys=True), r.valid,
                 json.dumps(r.labels, sort_keys=True)) for r in recs]
        print(_table(rows, ("family", "params", "valid", "labels")))
    else:
        print(catalog.records_to_json(recs))
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "indicial": cmd_indicial,
    "cohomology": cmd_cohomology,
    "catalog": cmd_catalog,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.format = getattr(args, "format", "json")
    args.timings = getattr(args, "timings", False)
    try:
        cfg, chash = load_config(getattr(args, "config", None))
        return COMMANDS[args.command](args, cfg, chash, argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"holocalc: error: {exc}\n")
        return EX_USAGE
    except ValueError as exc:
        sys.stderr.write(f"holocalc: {type(exc).__name__}: {exc}\n")
        return EX_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

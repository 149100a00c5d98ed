"""Command-line front end: ``ybx list | verify | expand | sample-curve``.

Exit codes: 0 when everything checked passes, 1 when a property (or a spot
coefficient) fails, 2 for usage and sampling errors.
"""

import argparse
import json
import sys

from . import __version__, lax
from .curves import parse_curve
from .errors import YBXError, UsageError
from .fields import MERSENNE61, parse_field
from .maps import MAPS, RULES, make_map, make_rule, registry
from .rng import stream
from .verify import SampleConfig, available, fmt, run_suite, workers_from_env

DEFAULT_FIELD_SPEC = f"fp:{MERSENNE61}"
DEFAULT_CURVES = {"jacobi": "jacobi:k=5", "weierstrass": "weierstrass:alpha=2,beta=3"}

# verify flags a config file may supply, with their defaults
VERIFY_DEFAULTS = {
    "map": None,
    "rule": None,
    "field": DEFAULT_FIELD_SPEC,
    "curve": None,
    "props": None,
    "samples": 100,
    "seed": 0,
    "retry_cap": 256,
    "out": None,
}


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _param_space(map_id=None, rule_id=None):
    if map_id is not None:
        return MAPS[map_id].param_space
    return RULES[rule_id]


def _resolve_curve(space, curve_spec, field):
    if space == "scalar":
        if curve_spec:
            raise UsageError("this target takes scalar parameters; drop --curve")
        return None
    spec = curve_spec or DEFAULT_CURVES[space]
    curve = parse_curve(spec, field)
    if curve.kind != space:
        raise UsageError(f"curve kind mismatch: target needs a {space} curve, got {spec!r}")
    return curve


def _split_props(props):
    if props is None:
        return None
    if isinstance(props, str):
        return [p.strip() for p in props.split(",") if p.strip()]
    return list(props)


# --- list -------------------------------------------------------------------


def cmd_list(args):
    rows = registry()
    if args.format == "json":
        sys.stdout.write(_dump({"maps": rows, "rules": [{"id": r, "params": s} for r, s in RULES.items()]}))
        return 0
    print(f"{'id':<10} {'arity':<7} {'params':<12} properties")
    for r in rows:
        print(f"{r['id']:<10} {r['arity']:<7} {r['params']:<12} {', '.join(r['properties'])}")
    return 0


# --- verify -----------------------------------------------------------------


def load_config(path):
    """Flat JSON of verify flags, or a previous report (its manifest is replayed)."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    if "manifest" in data:
        data = dict(data["manifest"])
        data.pop("version", None)
    data = {k.replace("-", "_"): v for k, v in data.items()}
    unknown = set(data) - set(VERIFY_DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return data


def build_manifest(args):
    opts = dict(VERIFY_DEFAULTS)
    if args.config:
        opts.update(load_config(args.config))
    for key in VERIFY_DEFAULTS:
        value = getattr(args, key)
        if value is not None:
            opts[key] = value
    if args.map is not None:
        opts["rule"] = None
    elif args.rule is not None:
        opts["map"] = None
    if (opts["map"] is None) == (opts["rule"] is None):
        raise UsageError("give exactly one of --map or --rule")
    if opts["map"] is not None and opts["map"] not in MAPS:
        raise UsageError(f"unknown map {opts['map']!r}; choose from {', '.join(MAPS)}")
    if opts["rule"] is not None and opts["rule"] not in RULES:
        raise UsageError(f"unknown rule {opts['rule']!r}; choose from {', '.join(RULES)}")
    if int(opts["samples"]) < 1 or int(opts["retry_cap"]) < 1:
        raise UsageError("--samples and --retry-cap must be positive")
    field = parse_field(opts["field"])
    curve = _resolve_curve(_param_space(opts["map"], opts["rule"]), opts["curve"], field)
    if opts["map"] is not None:
        target = make_map(opts["map"], field, curve)
    else:
        target = make_rule(opts["rule"], field, curve)
    props = _split_props(opts["props"])
    if props is None:
        props = available(target)
    manifest = {
        "map": opts["map"],
        "rule": opts["rule"],
        "field": field.spec,
        "curve": curve.spec if curve is not None else None,
        "props": props,
        "samples": int(opts["samples"]),
        "seed": int(opts["seed"]),
        "retry_cap": int(opts["retry_cap"]),
        "version": __version__,
    }
    return manifest, target, opts["out"]


def cmd_verify(args):
    manifest, target, out = build_manifest(args)
    cfg = SampleConfig(
        field=target.field,
        samples=manifest["samples"],
        seed=manifest["seed"],
        retry_cap=manifest["retry_cap"],
        workers=workers_from_env(),
    )
    reports = run_suite(target, manifest["props"], cfg)
    text = _dump({"manifest": manifest, "reports": [r.to_dict() for r in reports], "version": __version__})
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        for r in reports:
            status = "PASS" if r.passed else f"FAIL ({len(r.failures)} failures)"
            extra = f" [{r.observation}]" if r.observation else ""
            print(f"{r.property:<12} {r.map:<10} {r.samples_valid}/{r.samples_attempted} {status}{extra}")
    else:
        sys.stdout.write(text)
    return 0 if all(r.passed for r in reports) else 1


# --- expand -----------------------------------------------------------------


def _parse_entry(text):
    try:
        i, j = (int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--entry must look like 1,2, got {text!r}") from None
    if i not in (1, 2) or j not in (1, 2):
        raise UsageError("--entry indices are 1 or 2")
    return i, j


def cmd_expand(args):
    if args.map not in ("kn", "ll"):
        raise UsageError("expand works for --map kn or --map ll")
    if args.factors < 1:
        raise UsageError("--factors must be positive")
    field = parse_field(args.field)
    curve = _resolve_curve(MAPS[args.map].param_space, args.curve, field)
    m = make_map(args.map, field, curve)
    rng = stream(args.seed, "expand", m.id, args.factors)
    factors = [(m.sample_site(rng), m.sample_param(rng)) for _ in range(args.factors)]
    exp = lax.lambda_expand(m, factors, rng, retry_cap=args.retry_cap)
    try:
        spots = lax.spot_values(m, factors, exp)
    except UsageError:
        spots = []
    entry = _parse_entry(args.entry) if args.entry else None
    table = {
        f"{i}{j}{k}{l}": fmt(c)
        for (i, j, k, l), c in sorted(exp.coeffs.items())
        if entry is None or (i, j) == entry
    }
    spot_rows = [{"name": n, "value": fmt(got), "expected": fmt(want), "pass": got == want} for n, got, want in spots]
    ok = exp.holdout_ok and all(r["pass"] for r in spot_rows)
    if args.format == "json":
        doc = {
            "manifest": {
                "map": m.id,
                "field": field.spec,
                "curve": curve.spec,
                "factors": args.factors,
                "seed": args.seed,
                "entry": list(entry) if entry else None,
                "version": __version__,
            },
            "inputs": fmt([list(f) for f in factors]),
            "kmax": exp.kmax,
            "holdout_ok": exp.holdout_ok,
            "S": table,
            "spots": spot_rows,
            "version": __version__,
        }
        sys.stdout.write(_dump(doc))
    else:
        for n, (x, a) in enumerate(factors, 1):
            print(f"factor {n}: site ({', '.join(fmt(x))}) param ({', '.join(fmt(a))})")
        print(f"{'ijkl':<6} S")
        for key, value in table.items():
            print(f"{key:<6} {value}")
        print(f"holdout reconstruction: {'pass' if exp.holdout_ok else 'FAIL'}")
        for r in spot_rows:
            print(f"spot {r['name']:<12} {'pass' if r['pass'] else 'FAIL'}  {r['value']}")
    return 0 if ok else 1


# --- sample-curve -----------------------------------------------------------


def cmd_sample_curve(args):
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    field = parse_field(args.field)
    curve = parse_curve(args.curve, field)
    rng = stream(args.seed, "sample-curve", curve.spec)
    points = [curve.sample(rng, args.retry_cap) for _ in range(args.count)]
    if args.format == "json":
        sys.stdout.write(_dump({"curve": curve.spec, "field": field.spec, "points": [fmt(p) for p in points]}))
    else:
        for p in points:
            print(f"{field.format(p.a)} {field.format(p.A)}")
    return 0


# --- entry point ------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="ybx", description="Exact checks for parametric Yang-Baxter maps.")
    parser.add_argument("--version", action="version", version=f"ybx {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="show the map registry")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("verify", help="run property checks and write a JSON report")
    target = p.add_mutually_exclusive_group()
    target.add_argument("--map", choices=sorted(MAPS))
    target.add_argument("--rule", choices=sorted(RULES))
    p.add_argument("--field", help=f"q or fp:<prime> (default {DEFAULT_FIELD_SPEC})")
    p.add_argument("--curve", help="jacobi:k=<e> or weierstrass:alpha=<e>,beta=<e>")
    p.add_argument("--props", help="comma-separated property names (default: all available)")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--retry-cap", dest="retry_cap", type=int)
    p.add_argument("--out", help="report path (default: print to stdout)")
    p.add_argument("--config", help="JSON file of flags, or a previous report to replay")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("expand", help="recover the lambda-expansion of a sampled Lax product")
    p.add_argument("--map", required=True, choices=("kn", "ll"))
    p.add_argument("--field", default=DEFAULT_FIELD_SPEC)
    p.add_argument("--curve")
    p.add_argument("--factors", type=int, default=2)
    p.add_argument("--entry", help="restrict the table to entry i,j")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retry-cap", dest="retry_cap", type=int, default=256)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("sample-curve", help="draw points on a parameter curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--field", default=DEFAULT_FIELD_SPEC)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--retry-cap", dest="retry_cap", type=int, default=256)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_sample_curve)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except YBXError as exc:
        print(f"ybx: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

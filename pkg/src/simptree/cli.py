"""Command-line front end.

Exit status: 0 when the tested property holds (or a report was
produced), 1 when it fails, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import DEFAULT_VARIANTS, run_bench
from .complex import ComplexError, FacetComplex, connected_components, format_complex, format_monomial, parse_complex
from .cycles import CycleCertificate
from .decision import VARIANT_ALIASES, DisconnectedComplexError, cyclic_facets, is_forest, is_tree
from .generators import GeneratorSpec, generate, parse_spec
from .grafting import cm_report, is_grafted
from .oracle import OracleBoundError


class InputError(Exception):
    pass


def _read(args) -> FacetComplex:
    try:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        return parse_complex(text, minimize=args.minimize, fmt=args.format)
    except ComplexError as exc:
        raise InputError(f"{args.file}: {exc}") from None


def _emit(args, record: dict, text: str) -> None:
    if args.machine:
        print(json.dumps(record))
    else:
        sys.stdout.write(text)


def _cert_text(delta: FacetComplex, cert: CycleCertificate) -> str:
    d = cert.to_dict(delta)
    return f"cycle: {' ~ '.join(d['facets'])} (apex: {format_monomial(d['apex']) or '{}'})"


def cmd_is_tree(args) -> int:
    delta = _read(args)
    early = not args.no_early_exit
    try:
        v = is_tree(delta, args.variant, early_exit=early, witness=True)
    except DisconnectedComplexError:
        blocks = len(connected_components(delta))
        _emit(args, {"is_tree": False, "reason": "disconnected", "components": blocks},
              f"not a tree: complex has {blocks} connected components\n")
        return 1
    record = {"is_tree": v.is_tree, "l": delta.l, "n": delta.n}
    lines = ["tree" if v.is_tree else "not a tree"]
    if v.witness is not None and (args.witness or not v.is_tree):
        record["witness"] = v.witness.to_dict(delta)
        lines.append(_cert_text(delta, v.witness))
    if args.stats:
        record.update(v.stats.as_record())
        record["wall_time_ms"] = round(v.wall_time_ms, 3)
        for k, val in v.stats.as_record().items():
            lines.append(f"{k}={val}")
        lines.append(f"wall_time_ms={v.wall_time_ms:.3f}")
    _emit(args, record, "\n".join(lines) + "\n")
    return 0 if v.is_tree else 1


def cmd_is_forest(args) -> int:
    delta = _read(args)
    ok = is_forest(delta, args.variant)
    _emit(args, {"is_forest": ok}, "forest\n" if ok else "not a forest\n")
    return 0 if ok else 1


def cmd_cycles(args) -> int:
    delta = _read(args)
    found = cyclic_facets(delta)
    record = {"cyclic_facets": {delta.label(f): c.to_dict(delta) for f, c in found.items()}}
    lines = [f"{delta.label(f)}: {_cert_text(delta, c)}" for f, c in found.items()]
    if not found:
        lines = ["no facet lies on a cycle"]
    _emit(args, record, "\n".join(lines) + "\n")
    return 0 if not found else 1


def cmd_is_grafted(args) -> int:
    delta = _read(args)
    r = is_grafted(delta)
    record = {
        "grafted": r.grafted,
        "leaves": delta.labels(r.leaves),
        "non_leaves": delta.labels(r.non_leaves),
        "failure": r.failure,
    }
    lines = [
        "grafted" if r.grafted else f"not grafted ({r.failure}: {', '.join(delta.labels(r.detail))})",
        f"leaves: {', '.join(delta.labels(r.leaves)) or '-'}",
        f"non_leaves: {', '.join(delta.labels(r.non_leaves)) or '-'}",
    ]
    _emit(args, record, "\n".join(lines) + "\n")
    return 0 if r.grafted else 1


def cmd_cm_report(args) -> int:
    delta = _read(args)
    rep = cm_report(delta, max_n=args.max_n)
    _emit(args, rep.as_record(), rep.to_text())
    return 0


def cmd_ideal(args) -> int:
    delta = _read(args)
    gens = delta.labels()
    _emit(args, {"generators": gens}, ", ".join(gens) + "\n")
    return 0


def cmd_gen(args) -> int:
    if args.kind == "path":
        spec = GeneratorSpec("path", args.l)
    elif args.kind == "interval":
        spec = GeneratorSpec("interval", args.l, width=args.width)
    else:
        spec = GeneratorSpec("random", args.l, n=args.n, size_range=(args.min, args.max), seed=args.seed)
    try:
        delta = generate(spec)
    except ComplexError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(format_complex(delta))
    return 0


def cmd_bench(args) -> int:
    jobs = []
    for item in args.specs:
        path = Path(item)
        if path.is_file():
            try:
                delta = parse_complex(path.read_text())
            except ComplexError as exc:
                raise InputError(f"{item}: {exc}") from None
            jobs.append((path.name, delta))
            continue
        try:
            spec = parse_spec(item)
            jobs.append((spec.label(), generate(spec)))
        except (ValueError, ComplexError) as exc:
            raise InputError(f"{item}: {exc}") from None
    variants = args.variants.split(",") if args.variants else list(DEFAULT_VARIANTS)
    for name in variants:
        if name not in VARIANT_ALIASES or VARIANT_ALIASES[name] == "naive":
            raise InputError(f"unknown benchmark variant {name!r}")
    for ident, delta in jobs:
        try:
            records = run_bench(delta, ident, variants, early_exit=args.early_exit)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        for rec in records:
            print(rec.to_json() if args.machine else rec.to_text(), flush=True)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="simptree", description="Simplicial tree and cycle tools for facet complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def input_cmd(name: str, help_: str):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="facet-list or monomial file ('-' for stdin)")
        p.add_argument("--format", choices=["chars", "tokens"], default=None,
                       help="vertex naming; default reads a '# format:' line, else chars")
        p.add_argument("--minimize", action="store_true", help="drop duplicate and non-maximal facets")
        p.add_argument("--machine", action="store_true", help="emit one JSON record")
        return p

    variants = ["baseline", "useless", "connset", "incmat", "naive"]

    p = input_cmd("is-tree", "decide whether the complex is a simplicial tree")
    p.add_argument("--variant", default="connset", choices=variants)
    p.add_argument("--stats", action="store_true", help="print decision counters")
    p.add_argument("--no-early-exit", action="store_true", help="enumerate every triple")
    p.add_argument("--witness", action="store_true", help="print the cycle certificate")
    p.set_defaults(func=cmd_is_tree)

    p = input_cmd("is-forest", "decide whether every component is a tree")
    p.add_argument("--variant", default="connset", choices=variants)
    p.set_defaults(func=cmd_is_forest)

    input_cmd("cycles", "list facets lying on a cycle, with certificates").set_defaults(func=cmd_cycles)
    input_cmd("is-grafted", "decide graftedness").set_defaults(func=cmd_is_grafted)

    p = input_cmd("cm-report", "covers, unmixedness and Cohen-Macaulay verdict")
    p.add_argument("--max-n", type=int, default=25, help="vertex bound for cover enumeration")
    p.set_defaults(func=cmd_cm_report)

    input_cmd("ideal", "print facet ideal generators").set_defaults(func=cmd_ideal)

    p = sub.add_parser("gen", help="generate a complex")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("path")
    g.add_argument("l", type=int)
    g = gsub.add_parser("interval")
    g.add_argument("l", type=int)
    g.add_argument("width", type=int)
    g = gsub.add_parser("random")
    g.add_argument("l", type=int)
    g.add_argument("n", type=int)
    g.add_argument("--min", type=int, default=2)
    g.add_argument("--max", type=int, default=3)
    g.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run decision variants and print counters")
    p.add_argument("specs", nargs="+", help="generator spec (path:l=400, interval:l=50,width=10, "
                                            "random:l=12,n=10,min=2,max=4,seed=1) or a complex file")
    p.add_argument("--variants", help="comma-separated variants (default: all four polynomial ones)")
    p.add_argument("--early-exit", action="store_true", help="stop each run at the first cycle")
    p.add_argument("--machine", action="store_true", help="JSON lines output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (InputError, OracleBoundError) as exc:
        print(f"simptree: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

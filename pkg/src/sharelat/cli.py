"""Command line entry point: ``sharelat analyze|campaign|abstract|concretize``."""

from __future__ import annotations

import argparse
import json
import sys

from .campaigns import KINDS, CampaignConfig, run_campaign
from .concrete import alpha_sfl
from .errors import SharelatError
from .scenario import (
    DOMAINS,
    analysis_json,
    compare_to_json,
    load_scenario,
    render_analysis,
    render_compare,
    run_analyze,
    run_compare,
    run_concretize,
    sfl_to_json,
)
from .sfl import SflElement, Variant
from .terms import Substitution, Theory, format_substitution


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def cmd_analyze(args) -> int:
    sc = load_scenario(args.file)
    if args.theory:
        sc.theory = Theory(args.theory)
    if args.domain:
        sc.domain = args.domain
    if args.variant:
        sc.variant = Variant(args.variant)
    if sc.domain == "sfl2":
        sc.variant = Variant.SFL2
    if args.compare:
        res = run_compare(sc)
        print(_dump(compare_to_json(res)) if args.json else render_compare(res))
    else:
        res = run_analyze(sc)
        print(_dump(analysis_json(res)) if args.json else render_analysis(res))
    return 0


def cmd_campaign(args) -> int:
    cfg = CampaignConfig(
        kind=args.kind,
        seed=args.seed,
        vi_size=args.vi,
        depth=args.depth,
        iters=args.iters,
        theory=Theory(args.theory),
        exhaustive=not args.random,
        cap=args.cap,
        max_bindings=args.max_bindings,
        workers=args.workers,
    )
    rep = run_campaign(cfg)
    print(_dump(rep.to_json()) if args.json else rep.render())
    return 0 if rep.ok else 1


def cmd_abstract(args) -> int:
    sc = load_scenario(args.file)
    if args.theory:
        sc.theory = Theory(args.theory)
    if isinstance(sc.start, SflElement):
        d = sc.start
    else:
        d = alpha_sfl(sc.start if sc.start is not None else Substitution(), sc.ctx)
    print(_dump(sfl_to_json(d)))
    return 0


def cmd_concretize(args) -> int:
    sc = load_scenario(args.file)
    if args.theory:
        sc.theory = Theory(args.theory)
    if isinstance(sc.start, SflElement):
        raise SharelatError("concretize needs a substitution start, not an abstract element")
    sol = run_concretize(sc)
    if args.json:
        text = None if sol is None else format_substitution(sol)
        print(_dump({"theory": sc.theory.value, "satisfiable": sol is not None, "solution": text}))
    else:
        print("unsatisfiable" if sol is None else format_substitution(sol))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sharelat", description="Sharing, freeness and linearity analysis toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="fold a scenario's bindings through an abstract domain")
    a.add_argument("file")
    a.add_argument("--variant", choices=[v.value for v in Variant])
    a.add_argument("--domain", choices=DOMAINS)
    a.add_argument("--theory", choices=["ft", "rt"])
    a.add_argument("--compare", action="store_true", help="show every operator variant side by side")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("campaign", help="run a property-checking campaign")
    c.add_argument("kind", choices=KINDS)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--vi", type=int, default=2, help="number of variables of interest")
    c.add_argument("--depth", type=int, default=1, help="maximum term depth")
    c.add_argument("--iters", type=int, default=1000, help="case count for random campaigns")
    c.add_argument("--theory", choices=["ft", "rt"], default="rt")
    c.add_argument("--cap", type=int, default=1_000_000, help="maximum number of enumerated cases")
    c.add_argument("--max-bindings", type=int, default=2)
    c.add_argument("--workers", type=int, default=1)
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", default=True)
    mode.add_argument("--random", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_campaign)

    b = sub.add_parser("abstract", help="print the abstraction of a scenario's start as JSON")
    b.add_argument("file")
    b.add_argument("--theory", choices=["ft", "rt"])
    b.set_defaults(func=cmd_abstract)

    s = sub.add_parser("concretize", help="solve a scenario's equations")
    s.add_argument("file")
    s.add_argument("--theory", choices=["ft", "rt"])
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_concretize)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SharelatError, ValueError, OSError) as e:
        where = getattr(args, "file", None)
        print(f"sharelat: {where + ': ' if where else ''}{e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

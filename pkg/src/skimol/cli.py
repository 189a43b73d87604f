"""Command-line interface: parse, reduce, verify-schemas, serve."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .costs import account, default_costs
from .engine import NORMAL_FORM, ReductionSession, StrategyConfig
from .molgraph import (
    MolError,
    cap_free_edges,
    parse_mol,
    serialize_mol,
    validate,
)
from .rewrites import EXTENDED_VERIFY_TABLE, VERIFY_TABLE
from .ski import (
    TermParseError,
    parse_term,
    suspicious_vars,
    term_to_mol,
    term_to_string,
)
from .tokens import Ledger, verify_schema

DEFAULT_SEED = 0
DEFAULT_PORT = 8737


def _seed(text: str) -> int:
    if text == "random":
        import secrets

        return secrets.randbits(32)
    return int(text)


def _load_costs(path: str | None) -> dict[str, int]:
    costs = default_costs()
    if path:
        with open(path) as fh:
            user = json.load(fh)
        unknown = set(user) - set(costs)
        if unknown:
            raise SystemExit(f"unknown token types in {path}: {sorted(unknown)}")
        costs.update({k: int(v) for k, v in user.items()})
    return costs


def _input_graph(args):
    if args.term is not None:
        term = parse_term(args.term)
        for name in suspicious_vars(term):
            print(
                f"warning: {name!r} parsed as a free variable; "
                "use spaces between combinators",
                file=sys.stderr,
            )
        return term_to_mol(term)
    with open(args.mol) as fh:
        text = fh.read()
    g = parse_mol(text, allow_minted=args.accept_minted)
    return g


def cmd_parse(args) -> int:
    try:
        g = _input_graph(args)
    except (TermParseError, MolError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    notes: list[str] = []
    if args.cap or args.term is not None:
        g = cap_free_edges(g, notes)
    report = validate(g)
    for note in notes:
        print(f"note: {note}", file=sys.stderr)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if not report.ok:
        for err in report.errors:
            print(f"invalid: {err}", file=sys.stderr)
        return 1
    sep = " ^ " if args.caret else "\n"
    print(serialize_mol(g, sep))
    return 0


def cmd_reduce(args) -> int:
    try:
        g = _input_graph(args)
        costs = _load_costs(args.costs)
    except (TermParseError, MolError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    g = cap_free_edges(g)
    report = validate(g)
    if not report.ok:
        for err in report.errors:
            print(f"invalid: {err}", file=sys.stderr)
        return 1

    ledger = Ledger(args.token_mode)
    ledger.names.ensure_above(g.edge_names())
    if args.prefund:
        ledger.fund(args.prefund)
    cfg = StrategyConfig(
        weight=args.weight,
        seed=args.seed,
        token_mode=args.token_mode,
        snapshot_every=args.snapshot_every,
    )
    session = ReductionSession(g, ledger, cfg, costs)
    outcome = session.run(args.steps)

    final_mol = serialize_mol(session.graph)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(final_mol + "\n")
    if args.trace:
        payload = session.trace.to_json_records()
        if args.snapshot_every:
            payload = {
                "records": payload,
                "snapshots": [
                    {"pass": p, "mol": mol} for p, mol in session.trace.snapshots
                ],
            }
        with open(args.trace, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    cost_report = account(session.trace, costs)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(cost_report.to_json(), fh, indent=2)
            fh.write("\n")

    print(f"outcome: {outcome}")
    print(f"passes: {session.pass_index}  rewrites: {len(session.trace.records)}")
    term = session.decoded_term()
    if term is not None:
        print(f"term: {term_to_string(term)}")
    else:
        print("term: (not decodable)")
    if not args.out:
        print(final_mol)
    print(cost_report.table())
    return 0 if outcome == NORMAL_FORM else 2


def cmd_verify_schemas(args) -> int:
    table = EXTENDED_VERIFY_TABLE if args.all else VERIFY_TABLE
    failures = 0
    for schema in table:
        rep = verify_schema(schema)
        status = "ok" if rep.conserved else "FAIL"
        extras = []
        if rep.published_valid is False:
            extras.append("published permutation flagged: not a bijection")
        elif rep.published_agrees is False:
            extras.append("published permutation disagrees")
        for note in rep.notes:
            if note not in ("published permutation is not a bijection",):
                extras.append(note)
        suffix = f"  ({'; '.join(extras)})" if extras else ""
        print(f"{schema.name:10} {status}{suffix}")
        if not rep.conserved:
            failures += 1
    print(f"{len(table)} schemas checked, {failures} failed")
    return 1 if failures else 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skimol",
        description="Token-conserving graph rewriting for SKI combinator terms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--term", help="SKI term text, e.g. '((S K) K) I'")
        group.add_argument("--mol", help="path to a mol file")
        p.add_argument(
            "--accept-minted",
            action="store_true",
            help="accept reserved-prefix edge names in mol input",
        )

    p = sub.add_parser("parse", help="term or mol in, validated mol out")
    add_input(p)
    p.add_argument("--cap", action="store_true", help="cap dangling half-edges")
    p.add_argument("--caret", action="store_true", help="single-line ' ^ ' output")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("reduce", help="reduce to normal form or a pass budget")
    add_input(p)
    p.add_argument("--steps", type=int, default=1000, help="max passes (default 1000)")
    p.add_argument(
        "--seed",
        type=_seed,
        default=DEFAULT_SEED,
        help="integer seed, or 'random' for a fresh one (default 0)",
    )
    p.add_argument("--weight", type=float, default=0.5, help="grow/slim weight in [0,1]")
    p.add_argument("--token-mode", choices=["open", "strict"], default="open")
    p.add_argument("--prefund", type=int, default=0, help="tokens of each type to start with")
    p.add_argument("--costs", help="JSON file of per-token costs")
    p.add_argument("--trace", help="write the JSON trace here")
    p.add_argument("--report", help="write the JSON cost report here")
    p.add_argument("--out", help="write the final mol here")
    p.add_argument("--snapshot-every", type=int, default=0, metavar="N",
                   help="include a mol snapshot every N passes in the trace")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-schemas", help="conservation check of the schema table")
    p.add_argument("--all", action="store_true", help="include synthesis schemas")
    p.set_defaults(func=cmd_verify_schemas)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("SKIMOL_PORT", DEFAULT_PORT)),
    )
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

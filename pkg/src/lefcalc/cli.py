"""Command-line surface.

Ladder arguments are file paths, "-" for standard input, or "@name" for a
catalog entry ("@proj_space(3,7)" works).  Every subcommand writes a report
to standard output: a JSON object with a top-level "identities" array of
{name, lhs, rhs, pass} rows (the default), or a plain-text projection of the
same data with --text.  Reports are deterministic byte for byte.

Exit codes: 0 all checks pass, 1 a mathematical identity failed, 2 input or
usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from .catalog import catalog_get, catalog_names, catalog_verify
from .core import (
    IdentityRecord,
    LadderError,
    LadderScope,
    LefschetzLadder,
    RankExpr,
    SodPresentation,
    component_ranks,
    total_rank,
    validate_ladder,
)
from .hpd import check_hpd_involution, check_hpd_join_commute, embed, hpd_shape
from .join import categorical_join
from .jsonio import ladder_to_document, parse_ladder
from .projection import blowup_lefschetz, projected_join, projected_join_hpd
from .render import render_grid
from .sampling import random_ladder_pair
from .sections import hpd_section_pair, iterated_nonlinear, linear_section, nonlinear_pair


def load_ladder(ref: str) -> LefschetzLadder:
    if ref.startswith("@"):
        return catalog_get(ref[1:]).ladder
    if ref == "-":
        return parse_ladder(sys.stdin.read())
    try:
        with open(ref, "rb") as handle:
            return parse_ladder(handle.read())
    except OSError as exc:
        raise LadderError(f"cannot read {ref!r}: {exc}") from exc


def _rank_value(value: RankExpr) -> object:
    return value.as_int() if value.is_constant else str(value)


def presentation_payload(pres: SodPresentation, scope: LadderScope) -> dict:
    components = []
    for comp in pres:
        row: dict[str, object] = {
            "expr": str(comp.expr),
            "rank": _rank_value(comp.rank(scope)),
            "twist": str(comp.twist),
            "origin": comp.origin,
        }
        if comp.blocks is not None:
            row["blocks"] = [{"label": b.label, "rank": b.rank} for b in comp.blocks]
            row["block_rank"] = comp.block_rank
        components.append(row)
    return {
        "ambient": pres.ambient,
        "components": components,
        "total_rank": _rank_value(pres.total_rank(scope)),
    }


def ladder_payload(ladder: LefschetzLadder) -> dict:
    return {
        "document": ladder_to_document(ladder),
        "heights": list(component_ranks(ladder, "right")),
        "length": ladder.length,
        "moderate": ladder.is_moderate,
    }


# --- subcommand handlers ----------------------------------------------------


def cmd_validate(args) -> dict:
    payload = []
    identities = []
    for ref in args.ladders:
        if ref.startswith("@"):
            ladder = catalog_get(ref[1:]).ladder
        elif ref == "-":
            raw = sys.stdin.read()
            ladder = _parse_loose(raw)
        else:
            with open(ref, "rb") as handle:
                ladder = _parse_loose(handle.read())
        report = validate_ladder(ladder)
        payload.append(
            {
                "name": report.name,
                "problems": list(report.problems),
                "moderate": report.moderate,
                "strong": {"right": report.right_strong, "left": report.left_strong},
                "length": report.length,
                "total_rank": report.total_rank,
            }
        )
        identities.append(
            IdentityRecord(
                name=f"valid({report.name})",
                lhs=list(report.problems),
                rhs=[],
                passed=report.is_valid,
            )
        )
    return {"data": {"ladders": payload}, "identities": identities}


def _parse_loose(data: bytes | str) -> LefschetzLadder:
    """Parse without the validity gate so `validate` can report problems."""
    from .jsonio import LadderFormatError, ladder_from_document

    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise LadderFormatError(f"$: malformed JSON: {exc}") from exc
    try:
        return ladder_from_document(doc)
    except LadderFormatError as exc:
        if "invalid ladder" not in str(exc):
            raise
        # rebuild without validation to surface the report instead
        return LefschetzLadder(
            name=doc.get("name", "ladder"),
            ambient_rank=doc["ambient_rank"],
            right_primitives=tuple(doc["right_primitives"]),
            left_primitives=tuple(doc["left_primitives"]) if "left_primitives" in doc else None,
            right_strong=bool(doc.get("strong", {}).get("right", False)),
            left_strong=bool(doc.get("strong", {}).get("left", False)),
        )


def cmd_join(args) -> dict:
    l1, l2 = (_load_with_ambient(r, args) for r in args.ladders)
    result = categorical_join(l1, l2)
    scope = {l1.name: l1, l2.name: l2}
    data = {
        "ladder": ladder_payload(result.ladder),
        "total_rank": total_rank(result.ladder),
        "j_right": list(result.j_right),
        "j_left": list(result.j_left),
        "resolved": presentation_payload(result.resolved_presentation, scope),
    }
    if args.render:
        data["render"] = render_grid(result)
    return {"data": data, "identities": list(result.diagnostics), "render": data.get("render")}


def cmd_hpd(args) -> dict:
    ladder = _load_with_ambient(args.ladder, args)
    result = hpd_shape(ladder)
    identities = list(result.diagnostics)
    identities.append(check_hpd_involution(ladder))
    data = {
        "ladder": ladder_payload(result.ladder),
        "length": result.length,
        "rank": result.rank,
        "heights": list(component_ranks(result.ladder, "right")),
        "left_heights_outermost_first": list(reversed(component_ranks(result.ladder, "left"))),
        "shape_source": result.shape_source,
        "symmetric_completion_assumed": result.symmetric_completion_assumed,
    }
    return {"data": data, "identities": identities}


def cmd_check_commute(args) -> dict:
    identities = []
    if args.random:
        rng = random.Random(args.seed)
        for _ in range(args.random):
            l1, l2 = random_ladder_pair(rng)
            identities.append(check_hpd_join_commute(l1, l2))
        data = {"pairs": args.random, "seed": args.seed}
    else:
        if len(args.ladders) != 2:
            raise LadderError("check-commute needs two ladders (or --random K)")
        l1, l2 = (_load_with_ambient(r, args) for r in args.ladders)
        identities.append(check_hpd_join_commute(l1, l2))
        data = {"pairs": 1}
    return {"data": data, "identities": identities}


def cmd_check_involution(args) -> dict:
    identities = []
    for ref in args.ladders:
        ladder = _load_with_ambient(ref, args)
        identities.append(check_hpd_involution(ladder))
    return {"data": {"count": len(identities)}, "identities": identities}


def cmd_section(args) -> dict:
    ladder = _load_with_ambient(args.ladder, args)
    if args.pair:
        pair = hpd_section_pair(ladder, args.w_rank or (ladder.ambient_rank - args.corank))
        return _pair_report(pair)
    pres = linear_section(ladder, args.corank, side=args.side)
    scope = {ladder.name: ladder}
    return {
        "data": {"presentation": presentation_payload(pres, scope), "corank": args.corank},
        "identities": [],
    }


def _pair_report(pair) -> dict:
    scope = dict(pair.scope)
    data = {
        "lhs": presentation_payload(pair.lhs, scope),
        "rhs": presentation_payload(pair.rhs, scope),
        "equation": f"{pair.equation[0]} = {pair.equation[1]}",
        "parameters": dict(pair.parameters),
        "pure_equivalence": pair.is_pure_equivalence,
    }
    if pair.is_pure_equivalence:
        data["note"] = "pure equivalence: no tail components on either side"
    if pair.notes:
        data["notes"] = list(pair.notes)
    return {"data": data, "identities": list(pair.identities)}


def cmd_nonlinear(args) -> dict:
    l1, l2 = (_load_with_ambient(r, args) for r in args.ladders)
    return _pair_report(nonlinear_pair(l1, l2, args.w_rank))


def cmd_iterated(args) -> dict:
    ladders = [_load_with_ambient(r, args) for r in args.ladders]
    return _pair_report(iterated_nonlinear(ladders, args.w_rank))


def cmd_project(args) -> dict:
    ladders = [_load_with_ambient(r, args) for r in args.ladders]
    if len(ladders) == 1:
        projected = blowup_lefschetz(ladders[0], args.target_rank)
        extra = {}
    elif len(ladders) == 2:
        projected, _join = projected_join(ladders[0], ladders[1], args.target_rank)
        stmt = projected_join_hpd(ladders[0], ladders[1], args.target_rank)
        extra = {
            "hpd_statement": {
                "kind": stmt.rhs_kind,
                "statement": stmt.rhs_description,
                "lhs_hpd_length": stmt.lhs_hpd_length,
                "dual_factor_lengths": list(stmt.dual_factor_lengths),
                "rhs_rank": str(stmt.rhs_rank),
            }
        }
    else:
        raise LadderError("project takes one or two ladders")
    zero = projected.specialize(0)
    identities = list(projected.diagnostics)
    identities.append(
        IdentityRecord(
            name="specialize-zero-recovers-source",
            lhs=list(component_ranks(zero, "right")),
            rhs=list(projected.source_heights),
            passed=component_ranks(zero, "right") == projected.source_heights,
        )
    )
    data = {
        "name": projected.name,
        "ambient_rank": projected.ambient_rank,
        "length": projected.length,
        "unknown": projected.unknown,
        "heights": [str(h) for h in projected.heights],
        "total_rank": str(projected.total_rank()),
        **extra,
    }
    return {"data": data, "identities": identities}


def cmd_catalog(args) -> dict:
    if args.verify:
        entries = [catalog_get(name) for name in (args.names or catalog_names())]
        records = catalog_verify(entries)
        return {"data": {"entries": [e.name for e in entries]}, "identities": list(records)}
    names = args.names or catalog_names()
    listing = []
    for name in names:
        entry = catalog_get(name)
        listing.append(
            {
                "name": entry.name,
                "provenance": entry.provenance,
                "ladder": ladder_payload(entry.ladder),
                "expected_facts": [[fact, _fact_value(value)] for fact, value in entry.expected_facts],
            }
        )
    return {"data": {"entries": listing}, "identities": []}


def _fact_value(value: object) -> object:
    return list(value) if isinstance(value, tuple) else value


def cmd_render(args) -> dict:
    l1, l2 = (_load_with_ambient(r, args) for r in args.ladders)
    art = render_grid(categorical_join(l1, l2))
    return {"data": {"render": art}, "identities": [], "render": art}


def _load_with_ambient(ref: str, args) -> LefschetzLadder:
    ladder = load_ladder(ref)
    if getattr(args, "ambient", None) is not None:
        ladder = embed(ladder, args.ambient)
    return ladder


# --- report plumbing --------------------------------------------------------


def _format_report(command: str, inputs: list[str], result: dict, as_text: bool) -> tuple[str, bool]:
    identities = [r.as_dict() for r in result["identities"]]
    passes = all(r["pass"] for r in identities)
    if as_text:
        lines = [f"command: {command}"]
        render = result.get("render")
        data = {k: v for k, v in result["data"].items() if k != "render"}
        lines.append(json.dumps(data, indent=2, sort_keys=True))
        for row in identities:
            status = "PASS" if row["pass"] else "FAIL"
            lines.append(f"{status} {row['name']}: {row['lhs']} vs {row['rhs']}")
        lines.append(f"pass: {str(passes).lower()}")
        text = "\n".join(lines) + "\n"
        if render:
            text += render
        return text, passes
    report = {
        "command": command,
        "inputs": inputs,
        "data": result["data"],
        "identities": identities,
        "pass": passes,
    }
    return json.dumps(report, indent=2, sort_keys=True) + "\n", passes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lefcalc",
        description="rank calculus for Lefschetz decompositions, joins, and duality shapes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ladders="+", ambient=True):
        if ladders:
            p.add_argument("ladders", nargs=ladders, help="ladder files, '-', or @catalog-name")
        if ambient:
            p.add_argument("--ambient", type=int, help="reinterpret inputs over this ambient rank")
        p.add_argument("--text", action="store_true", help="plain-text report instead of JSON")
        p.add_argument("--json", action="store_true", help="JSON report (the default)")

    p = sub.add_parser("validate", help="check ladder invariants")
    common(p)
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("join", help="categorical join of two ladders")
    common(p, ladders=2)
    p.add_argument("--render", action="store_true", help="include the ASCII grid")
    p.set_defaults(handler=cmd_join)

    p = sub.add_parser("hpd", help="dual shape of a ladder")
    p.add_argument("ladder", help="ladder file, '-', or @catalog-name")
    p.add_argument("--ambient", type=int, help="reinterpret the input over this ambient rank")
    p.add_argument("--text", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_hpd)

    p = sub.add_parser("check-commute", help="dual of join vs join of duals")
    common(p, ladders="*")
    p.add_argument("--random", type=int, default=0, metavar="K", help="check K seeded random pairs")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_check_commute)

    p = sub.add_parser("check-involution", help="dual shape applied twice is the identity")
    common(p)
    p.set_defaults(handler=cmd_check_involution)

    p = sub.add_parser("section", help="linear-section decomposition")
    p.add_argument("ladder", help="ladder file, '-', or @catalog-name")
    p.add_argument("-s", "--corank", type=int, required=True)
    p.add_argument("--side", choices=("right", "left"), default="right")
    p.add_argument("--pair", action="store_true", help="also section the dual by the orthogonal")
    p.add_argument("-r", "--w-rank", dest="w_rank", type=int, help="subspace rank for --pair")
    p.add_argument("--ambient", type=int)
    p.add_argument("--text", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_section)

    p = sub.add_parser("nonlinear", help="fiber-product decomposition pair over a shared ambient")
    common(p, ladders=2)
    p.add_argument("-r", "--w-rank", dest="w_rank", type=int, required=True)
    p.set_defaults(handler=cmd_nonlinear)

    p = sub.add_parser("iterated", help="iterated fiber-product decomposition pair")
    common(p)
    p.add_argument("-r", "--w-rank", dest="w_rank", type=int, required=True)
    p.set_defaults(handler=cmd_iterated)

    p = sub.add_parser("project", help="blowup ladder of a linear projection (or projected join)")
    common(p)
    p.add_argument("--target-rank", dest="target_rank", type=int, required=True)
    p.set_defaults(handler=cmd_project)

    p = sub.add_parser("catalog", help="list or verify the built-in examples")
    p.add_argument("names", nargs="*", help="entry names (default: all)")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--text", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_catalog)

    p = sub.add_parser("render", help="ASCII grid of a join")
    common(p, ladders=2)
    p.set_defaults(handler=cmd_render)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.handler(args)
    except LadderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    inputs = list(getattr(args, "ladders", None) or [getattr(args, "ladder", None)] or [])
    inputs = [i for i in inputs if i]
    text, passes = _format_report(args.command, inputs, result, as_text=args.text)
    sys.stdout.write(text)
    return 0 if passes else 1


run_cli = main


if __name__ == "__main__":
    sys.exit(main())

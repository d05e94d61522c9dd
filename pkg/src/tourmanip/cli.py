"""Command-line front end.

Exit status: 0 when the requested manipulation exists, 1 when it does not,
2 for usage or input errors.  ``--json`` prints one document with the keys
``schema, command, verdict, min_count, plan, throws, stats``; keys are sorted
so identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import brackets, cup, oracle, roundrobin
from .core import Answer, ManipulationPlan
from .errors import ManipulationError, NotAchievable
from .instance import InstanceFile, parse_instance

SCHEMA = "tourmanip.result/1"

COMMANDS = {
    "cup": "can the coalition make --target win the fixed cup (with a minimum plan)",
    "cup-min": "minimum throws making --target win the fixed cup",
    "cup-destructive": "minimum throws stopping --lose from winning the fixed cup",
    "rr-constructive": "can the coalition make --target a round-robin co-winner",
    "rr-destructive": "can the coalition make some team outscore --lose",
    "rr-min": "minimum throws making --target a round-robin co-winner (win-loss)",
    "reseed": "ranked-reseeding cup, bounded coalition",
    "delim": "double-elimination bracket, bounded coalition",
    "oracle": "exhaustive check on a small instance (--format picks the competition)",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tourmanip", description="Decide and minimise game-throwing manipulations."
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, help_text in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("instance", type=Path, help="instance file ('-' reads stdin)")
        p.add_argument("--target", help="team to make the winner (id or name)")
        p.add_argument("--lose", help="team to stop from winning (id or name)")
        p.add_argument("--json", action="store_true", help="print the structured result document")
        p.add_argument(
            "--max-coalition",
            type=int,
            default=brackets.DEFAULT_MAX_COALITION,
            help="refuse bracket searches for larger coalitions (default %(default)s)",
        )
        if name == "oracle":
            p.add_argument("--format", choices=("cup", "rr", "reseed", "delim"), default="cup")
    return parser


class UsageError(Exception):
    pass


def _team(inst: InstanceFile, args, flag: str) -> int:
    token = getattr(args, flag)
    if token is None:
        raise UsageError(f"{args.command} needs --{flag}")
    return inst.team_id(token)


def _seed(inst: InstanceFile) -> tuple:
    return inst.seed if inst.seed is not None else tuple(range(inst.tournament.m))


def dispatch(command: str, inst: InstanceFile, args) -> Answer:
    t, co = inst.tournament, inst.coalition
    if command == "cup":
        return cup.cup_constructive(_team(inst, args, "target"), cup.CupTree(_seed(inst)), t, co)
    if command == "cup-min":
        return _or_false(cup.cup_min_manipulations, _team(inst, args, "target"), cup.CupTree(_seed(inst)), t, co)
    if command == "cup-destructive":
        return _or_false(cup.cup_destructive_min, _team(inst, args, "lose"), cup.CupTree(_seed(inst)), t, co)
    if command == "rr-constructive":
        return roundrobin.rr_constructive(_team(inst, args, "target"), t, co)
    if command == "rr-destructive":
        return roundrobin.rr_destructive(_team(inst, args, "lose"), t, co)
    if command == "rr-min":
        return _or_false(roundrobin.rr_min_manipulations, _team(inst, args, "target"), t, co)
    if command == "reseed":
        return brackets.ranked_reseed_constructive(
            _team(inst, args, "target"), brackets.SeededField(_seed(inst)), t, co, args.max_coalition
        )
    if command == "delim":
        return brackets.double_elim_constructive(
            _team(inst, args, "target"), brackets.DoubleElimBracket(_seed(inst)), t, co, args.max_coalition
        )
    if command == "oracle":
        v = _team(inst, args, "target")
        if args.format == "cup":
            rep = oracle.oracle_cup(v, cup.CupTree(_seed(inst)), t, co)
        elif args.format == "rr":
            rep = oracle.oracle_roundrobin(v, t, co)
        elif args.format == "reseed":
            rep = oracle.oracle_bracket(v, brackets.SeededField(_seed(inst)), t, co)
        else:
            rep = oracle.oracle_bracket(v, brackets.DoubleElimBracket(_seed(inst)), t, co)
        return Answer(
            rep.achievable, rep.witness, rep.min_count, rep.throws, {"subsets_examined": rep.subsets_examined}
        )
    raise UsageError(f"unknown command {command!r}")


def _or_false(fn, *a) -> Answer:
    try:
        return fn(*a)
    except NotAchievable as exc:
        return Answer(False, stats={"reason": str(exc)})


def _stats(ans: Answer) -> dict:
    # the kernel backend depends on the build, not the input
    return {k: v for k, v in sorted(ans.stats.items()) if k != "backend"}


def to_document(command: str, ans: Answer) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "verdict": ans.achievable,
        "min_count": ans.min_count,
        "plan": ans.plan.to_json() if ans.plan is not None else [],
        "throws": [list(k) for k in ans.throws],
        "stats": _stats(ans),
    }


def _describe(inst: InstanceFile, plan: ManipulationPlan) -> list[str]:
    t = inst.tournament
    out = []
    for mv in plan:
        a, b = inst.team_name(mv.i), inst.team_name(mv.j)
        old = t.result(mv.i, mv.j)
        if t.is_win_loss:
            w, l = (a, b) if old[0] > old[1] else (b, a)
            out.append(f"  {w} throws the game against {l}")
        else:
            out.append(f"  {a} vs {b}: {old[0]}:{old[1]} -> {mv.points_i}:{mv.points_j}")
    return out


def render_text(command: str, inst: InstanceFile, ans: Answer) -> str:
    lines = [f"{command}: {'achievable' if ans.achievable else 'not achievable'}"]
    if ans.min_count is not None:
        lines.append(f"minimum throws: {ans.min_count}")
    if ans.plan is not None and ans.plan.moves:
        lines.append("plan:")
        lines += _describe(inst, ans.plan)
    if ans.throws:
        lines.append("throws: " + ", ".join(f"{s}{r}.{k}" for s, r, k in ans.throws))
    for k, v in _stats(ans).items():
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = sys.stdin.read() if str(args.instance) == "-" else args.instance.read_text(encoding="utf-8")
        inst = parse_instance(text)
        ans = dispatch(args.command, inst, args)
    except (OSError, UsageError, ManipulationError, ValueError) as exc:
        print(f"tourmanip: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(to_document(args.command, ans), sort_keys=True))
    else:
        print(render_text(args.command, inst, ans))
    return 0 if ans.achievable else 1


if __name__ == "__main__":
    raise SystemExit(main())

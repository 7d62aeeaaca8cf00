"""Command-line front end.

Exit codes: 0 for an affirmative answer (equivalent, non-empty, accepted),
1 for a negative one, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from .core import Alphabet, Dfta, Rule, accepts
from .emptiness import nonempty_states
from .equivalence import check_equivalence, trim
from .errors import DftaError
from .oracle import GenConfig, random_dfta
from .text import parse_dfta, parse_tree, render_dfta, render_tree

OK, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="ascii", errors="surrogateescape", newline="") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None


def _load(path: str) -> Dfta:
    text = _read(path)
    try:
        return parse_dfta(text)
    except DftaError as e:
        e.source = path
        raise


def disjoint_union(left: Dfta, right: Dfta, prefixes=("L_", "R_")) -> Dfta:
    """One automaton holding both inputs, states renamed with a per-file prefix."""
    symbols = {s.name: s for s in left.alphabet}
    for s in right.alphabet:
        if symbols.setdefault(s.name, s) != s:
            raise UsageError(f"symbol {s.name} has different arities in the two files")
    pl, pr = prefixes
    rules = [Rule(pl + r.source, r.symbol, tuple(pl + c for c in r.children))
             for r in left.rules]
    rules += [Rule(pr + r.source, r.symbol, tuple(pr + c for c in r.children))
              for r in right.rules]
    return Dfta(Alphabet(symbols.values()),
                [pl + s for s in left.states] + [pr + s for s in right.states],
                pl + left.initial, rules)


def _state(dfta: Dfta, name: str) -> str:
    if name not in dfta._sidx:
        raise UsageError(f"unknown state: {name}")
    return name


def cmd_check_equiv(args) -> int:
    targets = args.targets
    if len(targets) == 2 and all(":" in t for t in targets):
        (f1, s1), (f2, s2) = (t.rsplit(":", 1) for t in targets)
        left, right = _load(f1), _load(f2)
        _state(left, s1)
        _state(right, s2)
        dfta, a, b = disjoint_union(left, right), "L_" + s1, "R_" + s2
    elif len(targets) == 3:
        dfta = _load(targets[0])
        a, b = _state(dfta, targets[1]), _state(dfta, targets[2])
    else:
        raise UsageError("expected FILE STATE STATE or FILE1:STATE1 FILE2:STATE2")
    verdict = check_equivalence(dfta, a, b)
    if verdict.equivalent:
        print("equivalent")
        return OK
    print("not-equivalent")
    if args.witness:
        print(render_tree(verdict.witness))
    return NO


def cmd_check_empty(args) -> int:
    dfta = _load(args.file)
    result = nonempty_states(dfta)
    if args.state is None:
        for q in dfta.states:
            print(f"{q}\t{'non-empty' if q in result.nonempty else 'empty'}")
        return OK
    q = _state(dfta, args.state)
    if q in result.nonempty:
        print("non-empty")
        print(render_tree(result.witness[q]))
        return OK
    print("empty")
    return NO


def cmd_member(args) -> int:
    dfta = _load(args.file)
    q = _state(dfta, args.state)
    try:
        tree = parse_tree(args.tree, dfta.alphabet)
    except DftaError as e:
        e.source = "<tree>"
        raise
    if accepts(dfta, q, tree):
        print("accepted")
        return OK
    print("rejected")
    return NO


def cmd_trim(args) -> int:
    sys.stdout.write(render_dfta(trim(_load(args.file)).base))
    return OK


def _rules_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None


def _arities(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated arities, got {text!r}") from None


def cmd_gen(args) -> int:
    try:
        cfg = GenConfig(args.states, args.arities, args.rules, args.seed)
    except ValueError as e:
        raise UsageError(str(e)) from None
    sys.stdout.write(render_dfta(random_dfta(cfg)))
    return OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dfta", description="Emptiness and equivalence for top-down DFTAs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check-equiv", help="decide whether two states accept the same trees")
    s.add_argument("targets", nargs="+", metavar="TARGET",
                   help="FILE STATE STATE, or FILE1:STATE1 FILE2:STATE2")
    s.add_argument("--witness", action="store_true",
                   help="print a distinguishing tree when not equivalent")
    s.set_defaults(func=cmd_check_equiv)

    s = sub.add_parser("check-empty", help="decide language emptiness")
    s.add_argument("file")
    s.add_argument("state", nargs="?")
    s.set_defaults(func=cmd_check_empty)

    s = sub.add_parser("member", help="test whether a state accepts a tree")
    s.add_argument("file")
    s.add_argument("state")
    s.add_argument("tree")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("trim", help="drop rules that can never complete a run")
    s.add_argument("file")
    s.set_defaults(func=cmd_trim)

    s = sub.add_parser("gen", help="print a random automaton")
    s.add_argument("--states", type=int, required=True)
    s.add_argument("--arities", type=_arities, required=True, help="e.g. 2,1,0,0")
    s.add_argument("--rules", type=_rules_range, default=(0, 2), help="LO..HI rules per state")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"dfta: {e}", file=sys.stderr)
        return ERROR
    except DftaError as e:
        where = [w for w in (e.source, e.span and str(e.span)) if w]
        print(f"{':'.join(where)}: {e.message}" if where else f"dfta: {e.message}",
              file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())

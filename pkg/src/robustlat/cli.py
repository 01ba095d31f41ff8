"""``robustlat`` command line: verification suites and one-off JSON queries.

Exit codes: 0 success (all properties pass), 1 property failure, 2 usage
or parse error. Every JSON document is printed with sorted keys.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import __version__
from .analysis import SystemInputError, TransitionSystem, reach, safety
from .seqspace import STAR, DomainError, SeqVec, dist, dstar, parse_p, to_q
from .setrep import SetExprError, closure, from_json, in_closure
from .verify import SUITES, Config, report_lines, run


class UsageError(Exception):
    """Bad input; reported on stderr with exit code 2."""


def _load(text: str):
    """JSON from a literal, ``@file`` or ``-`` (stdin)."""
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {text[1:]}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from exc


_UNIT = re.compile(r"e_?(\d+)$")


def parse_vec(text: str) -> SeqVec:
    """``0``, ``e_i``, a dense JSON list, ``{"coords": {...}}`` or ``{"i": v}``."""
    t = text.strip()
    if t == "0":
        return SeqVec()
    m = _UNIT.match(t)
    if m:
        return SeqVec.unit(int(m.group(1)))
    obj = _load(t)
    try:
        if isinstance(obj, list):
            return SeqVec.from_list([to_q(v) for v in obj])
        if isinstance(obj, dict):
            return SeqVec.from_json(obj if "coords" in obj else {"coords": obj})
    except (DomainError, ValueError, TypeError) as exc:
        raise UsageError(f"bad vector: {exc}") from exc
    raise UsageError(f"bad vector literal {text!r}")


def _pick(obj: dict, key: str, alias: str) -> list:
    if key in obj and alias in obj:
        raise UsageError(f"give either {key!r} or {alias!r}, not both")
    return obj.get(key, obj.get(alias, []))


def parse_system(obj) -> tuple[TransitionSystem, list, list]:
    if not isinstance(obj, dict):
        raise UsageError("system must be a JSON object")
    try:
        n = int(obj.get("states", obj.get("n")))
        rel = frozenset((int(a), int(b)) for a, b in _pick(obj, "rel", "transitions"))
        T = TransitionSystem(n, rel)
        return T, [int(s) for s in _pick(obj, "I", "init")], [int(s) for s in _pick(obj, "E", "bad")]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad system: {exc}") from exc


def _config(args) -> Config:
    try:
        return Config(tol=args.tol, n_max=args.nmax, delta_min=args.delta_min, depth=args.depth,
                      seed=args.seed, threads=args.threads)
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc)) from exc


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_verify(args) -> int:
    cfg = _config(args)
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES + ('all',))}")
    results = run(args.suite, cfg)
    for line in report_lines(results, args.json, cfg.seed):
        print(line)
    return 0 if all(r.ok for r in results) else 1


def cmd_member(args) -> int:
    cfg = _config(args)
    e = from_json(_load(args.set))
    x = parse_vec(args.point)
    _emit(in_closure(e, x, cfg.n_max, cfg.delta_min, cfg.tol).to_json())
    return 0


def cmd_dist(args) -> int:
    cfg = _config(args)
    x, y = parse_vec(args.x), parse_vec(args.y)
    if args.p == STAR:
        d = dstar(x, y)
    else:
        d = dist(x, y, parse_p(args.p), cfg.tol)
    _emit(d.to_json())
    return 0


def cmd_closure(args) -> int:
    _config(args)
    _emit(closure(from_json(_load(args.set)), parse_p(args.p)).to_json())
    return 0


def cmd_reach(args) -> int:
    T, init, _ = parse_system(_load(args.system))
    _emit({"reach": sorted(reach(T, init))})
    return 0


def cmd_safety(args) -> int:
    T, init, bad = parse_system(_load(args.system))
    _emit(safety(T, init, bad))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", default="1/1099511627776", help="root-bracket tolerance (default 2^-40)")
    common.add_argument("--nmax", type=int, default=8, help="largest prefix length tried")
    common.add_argument("--delta-min", default="1/1024", help="smallest certified gap")
    common.add_argument("--depth", type=int, default=4, help="truncation chain depth")
    common.add_argument("--seed", type=int, default=0, help="seed for every random case")
    common.add_argument("--threads", type=int, default=1, help="worker threads for verify")
    common.add_argument("--json", action="store_true", help="line-delimited JSON report")

    ap = argparse.ArgumentParser(prog="robustlat", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", help=f"one of {', '.join(SUITES)}, all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("member", parents=[common], help="three-valued closure membership")
    p.add_argument("set", help="set expression JSON (literal, @file or -)")
    p.add_argument("point", help="point: 0, e_i, JSON list or coords object")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("dist", parents=[common], help="exact distance between two points")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("p", help="exponent >= 1, inf, or star")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("closure", parents=[common], help="closure bracket of a set")
    p.add_argument("set")
    p.add_argument("--p", default="2", help="ambient exponent")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("reach", parents=[common], help="reachable states of a system")
    p.add_argument("system", help='{"states": n, "rel": [[a, b], ...], "I": [...]}')
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("safety", parents=[common], help="safety verdict (top or bottom)")
    p.add_argument("system", help='as for reach, plus "E": [...]')
    p.set_defaults(func=cmd_safety)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SetExprError, DomainError, SystemInputError) as exc:
        print(f"robustlat: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success / replay closed, 1 replay not closed or tuple invalid,
2 usage error, 3 undecided interval comparison.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .bounds import envelope, height_bound, k3_tail_closed, k4_tail_closed
from .cf import ExpansionLimitError, expand, expand_until
from .elimination import THREADS_ENV, full_replay, replay_k3, replay_k4, replay_primes
from .intervals import MAX_BITS_ENV, RationalInterval, UndecidedError
from .tuples import canonical_pair, failing_pair, search_triples, verify_tuple

log = logging.getLogger("powertriples")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3

_NATURAL = re.compile(r"^\d+$")


class UsageError(Exception):
    pass


def natural(text: str) -> int:
    text = text.strip().replace("_", "")
    if not _NATURAL.match(text):
        raise argparse.ArgumentTypeError(f"not a non-negative integer: {text!r}")
    return int(text)


def natural_list(text: str) -> list[int]:
    return [natural(part) for part in text.split(",")]


def _interval_dict(x: Optional[RationalInterval]) -> Optional[dict]:
    if x is None:
        return None
    return {"lo": f"{x.lo.numerator}/{x.lo.denominator}", "hi": f"{x.hi.numerator}/{x.hi.denominator}",
            "approx": f"{float(x.mid):.12g}"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None)
    common.add_argument("--out", type=Path, default=None, help="also write the output to this file")
    common.add_argument("--threads", type=natural, default=None,
                        help=f"worker processes (default: ${THREADS_ENV} or 1)")
    common.add_argument("--max-bits", type=natural, default=None,
                        help=f"precision cap for interval decisions (default: ${MAX_BITS_ENV} or 4096)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="powertriples", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a k-th power Diophantine tuple")
    p.add_argument("--k", type=natural, required=True)
    p.add_argument("--tuple", dest="elements", type=natural_list, required=True)

    p = sub.add_parser("pair", parents=[common], help="the pair {a**k, b} with a**k b + 1 = (a**k + 1)**k")
    p.add_argument("--a", type=natural, required=True)
    p.add_argument("--k", type=natural, required=True)

    p = sub.add_parser("cf", parents=[common], help="certified continued fraction of N**(1/k)")
    p.add_argument("--n", type=natural, required=True)
    p.add_argument("--k", type=natural, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--terms", type=natural)
    g.add_argument("--max-p", type=natural, help="expand until a convergent numerator exceeds this")
    p.add_argument("--max-terms", type=natural, default=10_000)

    p = sub.add_parser("search", parents=[common], help="brute-force triple search")
    p.add_argument("--k", type=natural, required=True)
    p.add_argument("--first-max", type=natural, required=True)
    p.add_argument("--c-max", type=natural, required=True)
    p.add_argument("--power-form", action="store_true", help="only first elements a**k with a >= 2")

    p = sub.add_parser("replay", parents=[common], help="replay the finite case analysis")
    p.add_argument("--case", choices=("k3", "k4", "primes", "all"), required=True)
    p.add_argument("--prime-cap", type=natural, default=1000)
    p.add_argument("--paranoid", action="store_true", help="k3: also test odd convergent indices")
    p.add_argument("--strict", action="store_true", help="k4: only r with r**4 - 1 = a**4 b, a >= 2")

    p = sub.add_parser("bounds", parents=[common], help="irrationality-measure envelope for N = r**k - 1")
    p.add_argument("--k", type=natural, required=True)
    p.add_argument("--r", type=natural, required=True)
    return parser


def _emit(text: str, out: Optional[Path]) -> None:
    sys.stdout.write(text)
    if out is not None:
        out.write_bytes(text.encode())


def _dump(payload: dict, fmt: str, text_lines: list[str]) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "text":
        return "\n".join(text_lines) + "\n"
    raise UsageError(f"format {fmt!r} is not supported by this subcommand")


def cmd_verify(args) -> tuple[str, int]:
    if args.k < 2:
        raise UsageError("--k must be >= 2")
    pt = verify_tuple(args.elements, args.k)
    if pt is None:
        x, y = failing_pair(args.elements, args.k)
        payload = {"valid": False, "k": args.k, "elements": [str(e) for e in args.elements],
                   "failing_pair": [str(x), str(y)]}
        lines = [f"invalid for k={args.k}: {x}*{y} + 1 = {x * y + 1} is not a perfect power"]
        return _dump(payload, args.format or "text", lines), EXIT_FAILED
    pairs = [(i, j) for i in range(len(pt)) for j in range(i + 1, len(pt))]
    roots = [pt.witness(i, j) for i, j in pairs]
    payload = {"valid": True, "k": pt.k, "elements": [str(e) for e in pt.elements],
               "witnesses": [{"i": i, "j": j, "root": str(w)} for (i, j), w in zip(pairs, roots)]}
    lines = [f"valid for k={pt.k}: {{{', '.join(map(str, pt.elements))}}}",
             f"witnesses: {','.join(map(str, roots))}"]
    return _dump(payload, args.format or "text", lines), EXIT_OK


def cmd_pair(args) -> tuple[str, int]:
    ak, b, r = canonical_pair(args.a, args.k)
    payload = {"a": str(args.a), "k": args.k, "ak": str(ak), "b": str(b), "r": str(r)}
    lines = [f"a^k = {ak}", f"b = {b}", f"r = {r}  ({ak}*{b} + 1 = {r}^{args.k})"]
    return _dump(payload, args.format or "text", lines), EXIT_OK


def cmd_cf(args) -> tuple[str, int]:
    if args.max_p is not None:
        bound = args.max_p
        exp = expand_until(args.n, args.k, lambda j, p, q, a: p > bound, max_terms=args.max_terms)
    else:
        exp = expand(args.n, args.k, args.terms if args.terms is not None else 10)
    payload = {
        "N": str(exp.N), "k": exp.k,
        "quotients": [str(a) for a in exp.quotients],
        "convergents": [[str(p), str(q)] for p, q in exp.convergents],
        "precision_bits": exp.precision_bits,
        "stop_index": exp.stop_index,
    }
    lines = [f"{exp.N}^(1/{exp.k}) = [{exp.quotients[0]}; {', '.join(map(str, exp.quotients[1:]))}]"]
    lines += [f"  j={j}: {p}/{q}" for j, (p, q) in enumerate(exp.convergents)]
    return _dump(payload, args.format or "text", lines), EXIT_OK


def cmd_search(args, threads: int) -> tuple[str, int]:
    found = search_triples(args.k, args.first_max, args.c_max, args.power_form, threads=threads)
    fmt = args.format or "text"
    if fmt == "csv":
        rows = ["x,y,c,r,s,t"] + [",".join(map(str, t.elements + (t.r, t.s, t.t))) for t in found]
        return "\n".join(rows) + "\n", EXIT_OK
    payload = {"k": args.k, "first_max": str(args.first_max), "c_max": str(args.c_max),
               "power_form": args.power_form,
               "triples": [[str(e) for e in t.elements] for t in found]}
    lines = [f"{len(found)} triple(s)"] + ["  {" + ", ".join(map(str, t.elements)) + "}" for t in found]
    return _dump(payload, fmt, lines), EXIT_OK


def cmd_replay(args, threads: int) -> tuple[str, int]:
    if args.case == "k3":
        report = replay_k3(threads=threads, paranoid=args.paranoid)
    elif args.case == "k4":
        report = replay_k4(threads=threads, strict=args.strict)
    elif args.case == "primes":
        report = replay_primes(args.prime_cap, threads=threads)
    else:
        report = full_replay(args.prime_cap, threads=threads)
    for rec in report.survivors:
        log.error("survivor: k=%d r=%d %s", rec.k, rec.r, rec.evidence)
    return report.render(args.format or "json"), EXIT_OK if report.closed else EXIT_FAILED


def cmd_bounds(args) -> tuple[str, int]:
    if args.k < 3 or args.r < 2:
        raise UsageError("bounds needs --k >= 3 and --r >= 2")
    N = args.r**args.k - 1
    env = envelope(args.k, N)
    payload = {"n": env.n, "N": str(N), "mu": _interval_dict(env.mu), "lambda": _interval_dict(env.lambda_),
               "condition_holds": env.condition_holds}
    lines = [f"n = {env.n}, N = {N}", f"mu ~ {float(env.mu.mid):.12g}",
             f"condition holds: {env.condition_holds}"]
    if env.lambda_ is not None:
        lines.append(f"lambda in [{float(env.lambda_.lo):.12g}, {float(env.lambda_.hi):.12g}]")
        if args.k in (3, 4):
            H = height_bound(args.k, args.r)
            payload["height_bound"] = str(H)
            lines.append(f"height bound on a^2 t: {H}")
        if args.k == 4 and args.r >= 5:
            payload["k4_tail_closed"] = k4_tail_closed(args.r)
            lines.append(f"k=4 tail closed: {payload['k4_tail_closed']}")
        if args.k == 3 and args.r >= 9:
            payload["k3_tail_closed"] = k3_tail_closed(args.r)
            lines.append(f"k=3 tail closed: {payload['k3_tail_closed']}")
    return _dump(payload, args.format or "text", lines), EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    threads = args.threads if args.threads is not None else int(os.environ.get(THREADS_ENV, "1"))
    if threads < 1:
        parser.error("--threads must be >= 1")
    saved_cap = os.environ.get(MAX_BITS_ENV)
    if args.max_bits is not None:
        os.environ[MAX_BITS_ENV] = str(args.max_bits)
    try:
        if args.command == "verify":
            text, code = cmd_verify(args)
        elif args.command == "pair":
            text, code = cmd_pair(args)
        elif args.command == "cf":
            text, code = cmd_cf(args)
        elif args.command == "search":
            text, code = cmd_search(args, threads)
        elif args.command == "replay":
            text, code = cmd_replay(args, threads)
        else:
            text, code = cmd_bounds(args)
    except UndecidedError as exc:
        print(f"powertriples: undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (UsageError, ValueError, ExpansionLimitError) as exc:
        parser.print_usage(sys.stderr)
        print(f"powertriples: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if saved_cap is None:
            os.environ.pop(MAX_BITS_ENV, None)
        else:
            os.environ[MAX_BITS_ENV] = saved_cap
    _emit(text, args.out)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

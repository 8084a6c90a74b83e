"""Command-line entry point: ``spaceforms <subcommand> ...``."""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from collections.abc import Sequence

from . import group as group_mod
from .builders import build_tuple
from .errors import SpaceFormError
from .isomorphism import is_isomorphic
from .recognition import classify, invariants_equal
from .representations import TOL, format_matrices, free_representation
from .tables import format_table, read_table
from .tuples import enumerate_tuples, parse_tuple
from .units import TYPES
from .wolf import WolfTypeIIParams, build_wolf_II

DEFAULT_CAP = 2048


class UsageError(Exception):
    pass


def _cap() -> int:
    raw = os.environ.get("SPACEFORM_MAX_ORDER")
    if raw is None:
        return DEFAULT_CAP
    if not raw.isdigit() or int(raw) < 1:
        raise UsageError(f"SPACEFORM_MAX_ORDER must be a positive integer, got {raw!r}")
    return int(raw)


def _max_order(value: int, cap: int) -> int:
    if value < 1:
        raise UsageError("--max-order must be positive")
    if value > cap:
        raise UsageError(f"--max-order {value} exceeds the cap {cap} (set SPACEFORM_MAX_ORDER to raise it)")
    return value


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spaceforms", description="Finite groups acting freely on spheres.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list every invariant tuple up to an order")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--type", choices=TYPES)

    p = sub.add_parser("build", help="write the Cayley table of a tuple")
    p.add_argument("--tuple", required=True, dest="tuple_text")
    p.add_argument("--out")

    p = sub.add_parser("classify", help="classify a Cayley table")
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--paranoid", action="store_true")

    p = sub.add_parser("iso", help="decide whether two Cayley tables are isomorphic")
    p.add_argument("file1")
    p.add_argument("file2")

    p = sub.add_parser("rep", help="certify the free representation of a tuple")
    p.add_argument("--tuple", required=True, dest="tuple_text")
    p.add_argument("--tol", type=_positive_float, default=TOL)
    p.add_argument("--matrices", help="write the matrices to this file")

    p = sub.add_parser("count", help="number of groups of each order")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--format", choices=("lines", "csv"), default="lines")

    p = sub.add_parser("wolf2", help="build a group from presentation parameters m n r k l")
    for name in ("m", "n", "r", "k", "l"):
        p.add_argument(name, type=int)
    p.add_argument("--iso", help="compare with the group in this Cayley table file")
    return ap


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _enumerate(args, cap: int) -> int:
    tuples = enumerate_tuples(_max_order(args.max_order, cap))
    sys.stdout.write("".join(f"{T}\n" for T in tuples if args.type in (None, T.type)))
    return 0


def _build(args, cap: int) -> int:
    S = build_tuple(parse_tuple(args.tuple_text))
    text = format_table(S.group)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _classify(args, cap: int) -> int:
    result = classify(read_table(args.infile), paranoid=args.paranoid)
    _out(str(result))
    return 0 if result.ok else 1


def _iso(args, cap: int) -> int:
    G, H = read_table(args.file1), read_table(args.file2)
    cg, ch = classify(G), classify(H)
    if cg.ok and ch.ok:
        same = invariants_equal(cg.tuple, ch.tuple)
    elif cg.ok != ch.ok:
        same = False
    else:
        same = is_isomorphic(G, H) is not None
    _out("ISOMORPHIC" if same else "NOT ISOMORPHIC")
    return 0 if same else 1


def _rep(args, cap: int) -> int:
    T = parse_tuple(args.tuple_text)
    fr = free_representation(build_tuple(T), tol=args.tol)
    cert = fr.certificate
    lines = [
        f"tuple: {T}",
        f"core: {fr.core.kind} of order {fr.core.H.order}, dimension {fr.core_rep.dim}",
        f"dimension: {fr.rep.dim}",
        "class representative: fixed dimension",
    ]
    lines += [f"  {g}: {tr:.3e}" for g, tr in cert.class_traces]
    lines.append(f"max fixed trace: {cert.max_fixed_trace:.3e}")
    lines.append(f"verdict: {cert.verdict}")
    _out("\n".join(lines))
    if args.matrices:
        with open(args.matrices, "w") as fh:
            fh.write(format_matrices(fr.rep))
    return 0 if cert.verdict == "free" else 1


def _count(args, cap: int) -> int:
    n = _max_order(args.max_order, cap)
    counts = Counter(T.g for T in enumerate_tuples(n))
    if args.format == "csv":
        _out("order,count\n" + "".join(f"{g},{counts[g]}\n" for g in range(1, n + 1)))
    else:
        _out(" ".join(f"{g}:{counts[g]}" for g in range(1, n + 1)))
    return 0


def _wolf2(args, cap: int) -> int:
    G = build_wolf_II(WolfTypeIIParams(args.m, args.n, args.r, args.k, args.l))
    result = classify(G)
    lines = [f"order: {G.n}", str(result)]
    code = 0
    if args.iso:
        H = read_table(args.iso)
        same = is_isomorphic(G, H) is not None
        lines.append("ISOMORPHIC" if same else "NOT ISOMORPHIC")
        code = 0 if same else 1
    _out("\n".join(lines))
    return code


_COMMANDS = {
    "enumerate": _enumerate,
    "build": _build,
    "classify": _classify,
    "iso": _iso,
    "rep": _rep,
    "count": _count,
    "wolf2": _wolf2,
}


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:  # argparse already printed the usage message
        return int(exc.code or 0)
    try:
        cap = _cap()
        group_mod.MAX_TABLE_ORDER = cap
        return _COMMANDS[args.command](args, cap)
    except UsageError as err:
        print(f"spaceforms: error: {err}", file=sys.stderr)
        return 2
    except (SpaceFormError, OSError) as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

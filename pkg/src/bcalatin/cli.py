"""Command-line driver.

Exit codes: 0 affirmative verdict or success, 1 negative verdict, 2 usage or
contract error, 3 resource limit (including an exhausted search budget).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import square as sq
from . import verify as suites
from .ca import BitConfig, PbcaMap, diagonal_is_permutation, is_invertible
from .errors import ContractError, ResourceLimitError
from .rule import BipermutiveRule, TruthTable, parse_anf
from .search import CHECKPOINT_EVERY, CSV_HEADER, MAX_DIAMETER, enumerate_invertible

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_generator(spec: str, diameter: int) -> BipermutiveRule:
    """``0x``-prefixed hex truth table, otherwise an ANF expression."""
    if diameter < 2:
        raise UsageError(f"diameter must be >= 2, got {diameter}")
    k = diameter - 2
    text = spec.strip()
    if text.lower().startswith("0x"):
        g = TruthTable.from_hex(text, k)
    else:
        g = parse_anf(text, k)
    return BipermutiveRule(diameter, g)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _write(path: str | None, data: str | bytes, out):
    if path is None:
        if isinstance(data, bytes):
            out.flush()
            getattr(out, "buffer", out).write(data)
        else:
            out.write(data)
        return
    p = Path(path)
    if isinstance(data, bytes):
        p.write_bytes(data)
    else:
        p.write_text(data)


def _render(grid: sq.LatinSquareGrid, fmt: str) -> str | bytes:
    if fmt == "csv":
        return grid.to_csv()
    if fmt == "json":
        return grid.to_json() + "\n"
    return grid.to_pgm()


def cmd_search(args, out) -> int:
    d = args.diameter
    if not 3 <= d <= MAX_DIAMETER:
        raise UsageError(f"--diameter must be in [3, {MAX_DIAMETER}], got {d}")
    checkpoint = progress = None
    if d == MAX_DIAMETER:
        base = args.out or f"search-d{d}.json"
        checkpoint = base + ".ckpt"

        def progress(done, total):
            print(f"progress: {done}/{total}", file=sys.stderr, flush=True)
    elif args.resume:
        raise UsageError("--resume only applies to the checkpointed d=7 search")
    report = enumerate_invertible(
        d, jobs=args.jobs, checkpoint=checkpoint,
        checkpoint_every=CHECKPOINT_EVERY, resume=args.resume, progress=progress,
    )
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n")
    if args.csv:
        Path(args.csv).write_text(CSV_HEADER + "\n" + report.csv_row() + "\n")
    print(report.summary(), file=out)
    return EXIT_YES


def cmd_square(args, out) -> int:
    rule = parse_generator(args.generator, args.diameter)
    if args.diameter > sq.MAX_SQUARE_DIAMETER:
        raise UsageError(f"--diameter above {sq.MAX_SQUARE_DIAMETER} gives an order beyond 128")
    if args.mark_diagonal and not args.out:
        raise UsageError("--mark-diagonal needs --out to name the mask file")
    grid = sq.build_square(rule)
    _write(args.out, _render(grid, args.format), out)
    if args.mark_diagonal:
        Path(args.out + ".mask.pbm").write_bytes(
            sq.mask_pbm(grid.order, sq.diagonal_coords(grid.order))
        )
    return EXIT_YES


def cmd_check(args, out) -> int:
    rule = parse_generator(args.generator, args.diameter)
    invertible = is_invertible(PbcaMap(rule.generator, rule.diameter - 1))
    if args.shift is not None:
        shift = BitConfig.from_str(args.shift)
        verdict = sq.shifted_diagonal_is_transversal(rule, shift)
        print(f"shift: {shift}", file=out)
        print(f"shifted-diagonal-transversal: {_yn(verdict)}", file=out)
        print(f"pbca-invertible: {_yn(invertible)}", file=out)
        return EXIT_YES if verdict else EXIT_NO
    diagonal = diagonal_is_permutation(rule)
    if diagonal != invertible:
        raise RuntimeError(
            f"diagonal verdict {diagonal} disagrees with PBCA verdict {invertible}"
        )
    print(f"diagonal-transversal: {_yn(diagonal)}", file=out)
    print(f"pbca-invertible: {_yn(invertible)}", file=out)
    return EXIT_YES if diagonal else EXIT_NO


def cmd_verify(args, out) -> int:
    result = suites.SUITES[args.property](args.diameter)
    for line in result.lines():
        print(line, file=out)
    return EXIT_YES if result.passed else EXIT_NO


def cmd_mate(args, out) -> int:
    rule = parse_generator(args.generator, args.diameter)
    order = 1 << (args.diameter - 1)
    if order > sq.MAX_DECOMPOSITION_ORDER:
        raise UsageError(
            f"order {order} exceeds the brute-force cap of {sq.MAX_DECOMPOSITION_ORDER} "
            f"(diameter <= 5)"
        )
    grid = sq.build_square(rule)
    result = sq.find_disjoint_decomposition(grid, budget=args.budget)
    print(f"order: {order}", file=out)
    print(f"nodes: {result.nodes}", file=out)
    if result.status is sq.DecompositionStatus.UNKNOWN:
        print("decomposition: unknown (budget exhausted)", file=out)
        return EXIT_RESOURCE
    if result.status is sq.DecompositionStatus.NONE:
        print("decomposition: none", file=out)
        return EXIT_NO
    mate = sq.mate_from_decomposition(result.decomposition, grid)
    orthogonal = sq.are_orthogonal(grid, mate)
    print("decomposition: found", file=out)
    print(f"orthogonal: {_yn(orthogonal)}", file=out)
    if args.out:
        _write(args.out, _render(mate, args.format), out)
        certificate = {
            "order": order,
            "square": grid.rows(),
            "mate": mate.rows(),
            "latin": sq.is_latin(mate),
            "orthogonal": orthogonal,
            "transversals": [[list(p) for p in cls] for cls in result.decomposition.classes],
        }
        Path(args.out + ".cert.json").write_text(json.dumps(certificate) + "\n")
    else:
        out.write(mate.to_csv())
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcalatin",
        description="Latin squares from bipermutive CA: construction, diagonal "
                    "transversal checks and exhaustive generator search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="enumerate generators with an invertible PBCA")
    p.add_argument("--diameter", "-d", type=int, required=True)
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.add_argument("--out", "-o", help="write the JSON report here")
    p.add_argument("--csv", help="write a one-line CSV summary here")
    p.add_argument("--resume", action="store_true", help="continue a checkpointed d=7 run")
    p.set_defaults(func=cmd_search)

    gen_help = "generator g: 0x-prefixed hex truth table or ANF like x1^x3^x1x4"

    p = sub.add_parser("square", help="build and export the Latin square")
    p.add_argument("--generator", "-g", required=True, help=gen_help)
    p.add_argument("--diameter", "-d", type=int, required=True)
    p.add_argument("--format", "-f", choices=("csv", "json", "pgm"), default="csv")
    p.add_argument("--out", "-o")
    p.add_argument("--mark-diagonal", action="store_true",
                   help="also write <out>.mask.pbm marking the main diagonal")
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("check", help="decide whether the main diagonal is a transversal")
    p.add_argument("--generator", "-g", required=True, help=gen_help)
    p.add_argument("--diameter", "-d", type=int, required=True)
    p.add_argument("--shift", help="XOR shift c as a 0/1 string of d-1 cells")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run an exhaustive equivalence suite")
    p.add_argument("--property", "-p", choices=sorted(suites.SUITES), required=True)
    p.add_argument("--diameter", "-d", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mate", help="search for an orthogonal mate (order <= 16)")
    p.add_argument("--generator", "-g", required=True, help=gen_help)
    p.add_argument("--diameter", "-d", type=int, required=True)
    p.add_argument("--budget", type=int, default=sq.DEFAULT_BUDGET)
    p.add_argument("--format", "-f", choices=("csv", "json", "pgm"), default="csv")
    p.add_argument("--out", "-o", help="write the mate here and a certificate to <out>.cert.json")
    p.set_defaults(func=cmd_mate)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, ContractError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE

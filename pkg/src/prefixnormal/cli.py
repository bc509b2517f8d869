"""Command-line front end.

Tabular output is CSV with a header row on stdout; progress and errors go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import logging
import random
import sys
from typing import Iterable, Sequence

from . import budget
from .enumeration import (
    bound_values,
    count_tables,
    enumerate_pn,
    ext_count,
    ext_count_density,
    ratio_series,
)
from .games import BlockGameConfig, LemmaViolation, count_block_outcomes, solve_game_v1, verify_block_lemma
from .index import build_index_suffix_sweep, pnf_one, pnf_zero, query_jumbled
from .membership import METHODS, TestOutcome, survivor_ratio
from .words import BinaryWord, WordFormatError, parse_word

log = logging.getLogger("prefixnormal")


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _read_words(args) -> list[BinaryWord]:
    words = [parse_word(w) for w in args.words]
    if args.file:
        with open(args.file) as fh:
            words.extend(parse_word(line.strip()) for line in fh if line.strip())
    if getattr(args, "random", None):
        rng = random.Random(args.seed)
        for _ in range(args.random):
            words.append(BinaryWord([rng.getrandbits(1) for _ in range(args.length)]))
    return words


def _describe(w: BinaryWord, outcome: TestOutcome) -> str:
    verdict = "prefix-normal" if outcome.accepted else "not-prefix-normal"
    line = f"{w} {verdict} decided_by={outcome.decided_by}"
    if outcome.witness is not None:
        wt = outcome.witness
        line += (
            f" witness=start:{wt.start + 1},length:{wt.length},"
            f"ones:{wt.ones},prefix_ones:{wt.prefix_ones}"
        )
    return line


def cmd_test(args, out) -> int:
    words = _read_words(args)
    if not words:
        raise ValueError("no words given")
    check = METHODS[args.method]
    status = 0
    for w in words:
        outcome = check(w)
        print(_describe(w, outcome), file=out)
        if not outcome.accepted:
            status = 1
    return status


def cmd_pnf(args, out) -> int:
    for w in _read_words(args):
        index = build_index_suffix_sweep(w)
        print(w, file=out)
        print(pnf_one(index), file=out)
        print(pnf_zero(index), file=out)
    return 0


def cmd_query(args, out) -> int:
    w = parse_word(args.word)
    index = build_index_suffix_sweep(w)
    k = args.ones + args.zeros
    found = query_jumbled(index, args.ones, args.zeros)
    lo, hi = index.range_at(k)
    print(f"{'yes' if found else 'no'} {lo} {hi}", file=out)
    return 0


def cmd_enum(args, out) -> int:
    if args.list is not None:
        budget.check(budget.ENUM_MAX_N, args.list, "enumeration")
        for w in enumerate_pn(args.list):
            print(w, file=out)
        return 0
    counts, _ = count_tables(args.max_n, workers=args.workers)
    writer = _writer(out)
    header = ["n", "pnw"]
    if args.density:
        header += [f"pnw_d{d}" for d in range(args.max_n + 1)]
    writer.writerow(header)
    for n in range(args.min_n, args.max_n + 1):
        row = [n, int(counts[n].sum())]
        if args.density:
            row += [int(counts[n, d]) for d in range(args.max_n + 1)]
        writer.writerow(row)
    return 0


def cmd_crit(args, out) -> int:
    writer = _writer(out)
    writer.writerow(["n", "pnw", "crit", "ratio", "scaled_ratio"])
    for r in ratio_series(args.max_n, workers=args.workers, min_n=max(2, args.min_n)):
        writer.writerow([r.n, r.pnw, r.crit, _fmt(r.ratio), _fmt(r.scaled_ratio)])
    return 0


def cmd_ratios(args, out) -> int:
    writer = _writer(out)
    writer.writerow(["n", "M_trivial", "ratio_trivial", "M_both", "ratio_both"])
    for n in range(args.min_n, args.max_n + 1, args.step):
        log.info("sweeping all words of length %d", n)
        a = survivor_ratio(n, "trivial-only")
        b = survivor_ratio(n, "both-filters")
        writer.writerow([n, a.survivors, a.rounded(), b.survivors, b.rounded()])
    return 0


def cmd_ext(args, out) -> int:
    if args.density is None:
        print(ext_count(args.word, args.m), file=out)
    else:
        print(ext_count_density(args.word, args.m, args.density), file=out)
    return 0


def cmd_bounds(args, out) -> int:
    counts, _ = count_tables(args.max_n, workers=args.workers)
    writer = _writer(out)
    writer.writerow(["n", "pnw", "pnw_fraction", "upper_k", "upper_bound", "lower_k", "lower_estimate"])
    for n in range(max(2, args.min_n), args.max_n + 1):
        b = bound_values(n)
        pnw = int(counts[n].sum())
        writer.writerow([n, pnw, _fmt(pnw / 2**n), b.upper_k, _fmt(float(b.upper_ratio_bound)), b.lower_k, f"{b.lower_count_estimate:.3e}"])
    return 0


def cmd_game_solve(args, out) -> int:
    result = solve_game_v1(args.n)
    move = result.first_move
    print(f"winner {result.winner}", file=out)
    if result.winner == "Alice" and move is not None:
        print(f"first_move position={move.position + 1} value={move.value}", file=out)
    print("line " + " ".join(str(m) for m in result.principal_variation), file=out)
    return 0


def cmd_game_blocks(args, out) -> int:
    config = BlockGameConfig(args.n, args.k)
    if args.count:
        try:
            count = count_block_outcomes(config)
        except LemmaViolation as exc:
            print(f"violation {exc}", file=out)
            return 1
        print(f"outcomes {count} bound {config.outcome_bound()}", file=out)
        return 0
    ok = verify_block_lemma(config)
    print(f"alice_wins {'yes' if ok else 'no'}", file=out)
    return 0 if ok else 1


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{value} is negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefixnormal", description="Prefix normal words: testing, indexing, counting, games.")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def word_inputs(p):
        p.add_argument("words", nargs="*", help="words over {0,1}")
        p.add_argument("--file", help="read further words from a file, one per line")

    p = sub.add_parser("test", help="decide prefix normality (exit 0 = all prefix normal, 1 = not)")
    word_inputs(p)
    p.add_argument("--method", choices=sorted(METHODS), default="member")
    p.add_argument("--random", type=_nonneg, metavar="COUNT", help="also test COUNT random words")
    p.add_argument("--length", type=_nonneg, default=100, help="length of random words")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("pnf", help="print the word, PNF1 and PNF0")
    word_inputs(p)
    p.set_defaults(func=cmd_pnf)

    p = sub.add_parser("query", help="jumbled pattern query")
    p.add_argument("word")
    p.add_argument("--ones", type=_nonneg, required=True)
    p.add_argument("--zeros", type=_nonneg, required=True)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("enum", help="count (or list) prefix normal words")
    p.add_argument("--max-n", type=_nonneg, default=10)
    p.add_argument("--min-n", type=_nonneg, default=0)
    p.add_argument("--density", action="store_true", help="add pnw(n, d) columns")
    p.add_argument("--list", type=_nonneg, metavar="N", help="print the words of length N instead")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("crit", help="extension-critical counts and ratios")
    p.add_argument("--max-n", type=_nonneg, default=20)
    p.add_argument("--min-n", type=_nonneg, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_crit)

    p = sub.add_parser("ratios", help="Phase-I survivor ratios n*M/2^n")
    p.add_argument("--max-n", type=_nonneg, default=16)
    p.add_argument("--min-n", type=_nonneg, default=1)
    p.add_argument("--step", type=int, default=1)
    p.set_defaults(func=cmd_ratios)

    p = sub.add_parser("ext", help="count extensions w' of length m with ww' prefix normal")
    p.add_argument("word")
    p.add_argument("--m", type=_nonneg, required=True)
    p.add_argument("--density", type=_nonneg)
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("bounds", help="bound expressions next to exact counts")
    p.add_argument("--max-n", type=_nonneg, default=20)
    p.add_argument("--min-n", type=_nonneg, default=2)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bounds)

    game = sub.add_parser("game", help="prefix normal games")
    gsub = game.add_subparsers(dest="game_command", required=True)
    p = gsub.add_parser("solve", help="solve the free-placement game on n cells")
    p.add_argument("--n", type=_nonneg, required=True)
    p.set_defaults(func=cmd_game_solve)
    p = gsub.add_parser("blocks", help="the block game with Alice's balancing strategy")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=_nonneg, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--verify", action="store_true", help="check Alice wins against every Bob play (default)")
    mode.add_argument("--count", action="store_true", help="count outcomes when Bob places zeros")
    p.set_defaults(func=cmd_game_blocks)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(message)s")
    try:
        return args.func(args, out)
    except (WordFormatError, budget.BudgetExceeded, ValueError, IndexError) as exc:
        print(f"prefixnormal {args.command}: {exc}", file=sys.stderr)
        return 2


def main(argv: Iterable[str] | None = None) -> None:
    sys.exit(run(list(argv) if argv is not None else None))


if __name__ == "__main__":
    main()

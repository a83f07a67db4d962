"""Command-line surface: sequence generation, periodicity, construction,
digit conversion, verification, searches, and an interactive play loop.

Set specifications use a small language:

    1,4,12              explicit elements
    mod3:1              residue rule (positive n with n % 3 == 1)
    mod5:1,4            multiple residues
    construction:k=2:T  derived sets of the alphabet-k construction (T, V, I)
    3*(1,2,3)           scaled set

Word specifications name the word to verify:

    construction:k=2    the alphabet-k construction word
    repseq:1,2,5,13     representation word of an explicit sequence

Exit codes: 0 success, 1 verification failure, 2 budget or resource limit,
3 usage error.  SUBGAMES_BUDGET and SUBGAMES_HORIZON set defaults.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import IO, Optional, Sequence

from .construction import (family, odd_fib_to_zeck, ternary_i_set,
                           ternary_sequence, ternary_t_set, ternary_v_set)
from .grundy import (ResourceLimitError, SubtractionSet, best_move,
                     nim_sequence)
from .numeration import DigitString, RepresentingSequence, represent
from .periodicity import get_period_and_prefix
from .repwords import RepWord, derived_sets, verify_absmain
from .search import (BudgetExhaustedError, explore_conjecture1,
                     explore_conjecture2, extend_rep_seq, greedy_chain,
                     read_checkpoint, resume_chain)
from .words import render_word

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_LIMIT = 2
EXIT_USAGE = 3


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage problems; the documented code is 3
    def error(self, message):
        raise UsageError(message)


def parse_set_spec(spec: str) -> SubtractionSet:
    spec = spec.strip()
    if not spec:
        raise UsageError("empty set specification")
    if spec.startswith("construction:"):
        return _construction_set(spec)
    if spec.startswith("mod"):
        head, _, residues = spec.partition(":")
        try:
            modulus = int(head[3:])
            rs = [int(r) for r in residues.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad residue spec {spec!r}") from exc
        return SubtractionSet.residues(modulus, rs)
    if "*" in spec:
        factor, _, rest = spec.partition("*")
        rest = rest.strip()
        if not (rest.startswith("(") and rest.endswith(")")):
            raise UsageError(f"scaled spec must look like 3*(1,2): {spec!r}")
        inner = parse_set_spec(rest[1:-1])
        try:
            return inner.scaled(int(factor))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    try:
        return SubtractionSet.explicit(int(part) for part in spec.split(","))
    except ValueError as exc:
        raise UsageError(f"bad set spec {spec!r}") from exc


def _construction_set(spec: str) -> SubtractionSet:
    parts = spec.split(":")
    if len(parts) != 3 or not parts[1].startswith("k="):
        raise UsageError("construction sets look like construction:k=2:T")
    try:
        k = int(parts[1][2:])
    except ValueError as exc:
        raise UsageError(f"bad alphabet bound in {spec!r}") from exc
    which = parts[2].upper()
    if k == 2:
        table = {"T": ternary_t_set, "V": ternary_v_set, "I": ternary_i_set}
        if which not in table:
            raise UsageError("construction set must be T, V, or I")
        return table[which]()
    fam = family(k, 12)
    ds = derived_sets(fam.word)
    if which == "T":
        return fam.t_set
    if which == "V":
        return SubtractionSet.from_predicate(ds.in_v, name=f"construction:k={k}:V")
    raise UsageError(f"set {which} is only enumerable for k=2; use T or V")


def parse_word_spec(spec: str) -> RepWord:
    spec = spec.strip()
    if spec.startswith("construction:"):
        parts = spec.split(":")
        if len(parts) != 2 or not parts[1].startswith("k="):
            raise UsageError("word specs look like construction:k=2 or repseq:1,2,5")
        k = int(parts[1][2:])
        if k == 2:
            return RepWord(ternary_sequence())
        return family(k, 12).word
    if spec.startswith("repseq:"):
        try:
            terms = [int(t) for t in spec[len("repseq:"):].split(",")]
            return RepWord(RepresentingSequence.from_terms(terms))
        except (ValueError, IndexError) as exc:
            raise UsageError(f"bad sequence in {spec!r}") from exc
    raise UsageError(f"unknown word spec {spec!r}")


def _emit(out: IO[str], fmt: str, record: dict, text: str) -> None:
    if fmt == "json":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def cmd_nimseq(args, out: IO[str]) -> int:
    s = parse_set_spec(args.set)
    values = nim_sequence(s, args.len)
    _emit(out, args.format,
          {"record": "nimseq", "set": s.name, "length": args.len, "values": values},
          render_word(values))
    return EXIT_OK


def cmd_period(args, out: IO[str]) -> int:
    s = parse_set_spec(args.set)
    if not s.is_finite:
        raise UsageError("periodicity detection needs a finite set")
    d = get_period_and_prefix(s)
    text = (f"period: {render_word(d.period)}\n"
            f"prefix: {render_word(d.prefix) if d.prefix else '(empty)'}")
    _emit(out, args.format,
          {"record": "period", "set": s.name,
           "prefix": list(d.prefix), "period": list(d.period)},
          text)
    return EXIT_OK


def cmd_construct(args, out: IO[str]) -> int:
    fam = family(args.k, args.depth)
    if args.view == "word":
        word = fam.word.prefix(fam.sequence.term(args.depth))
        payload, text = {"word": word}, render_word(word)
    elif args.view == "sequence":
        terms = fam.sequence.terms(args.depth + 1)
        payload, text = {"sequence": terms}, " ".join(map(str, terms))
    else:
        elems = fam.t_set.elements_up_to(fam.sequence.term(args.depth))
        payload, text = {"t_set": elems}, " ".join(map(str, elems))
    record = {"record": "construct", "k": args.k, "depth": args.depth,
              "view": args.view, **payload}
    _emit(out, args.format, record, text)
    return EXIT_OK


def cmd_convert(args, out: IO[str]) -> int:
    if args.seq != "oddfib":
        raise UsageError("only the oddfib numeration is convertible")
    seq = ternary_sequence()
    if args.n is not None:
        d = represent(seq, args.n)
        value = args.n
    elif args.digits:
        d = DigitString.from_msb([int(c) for c in args.digits])
        value = sum(dig * seq.term(i) for i, dig in enumerate(d.digits))
    else:
        raise UsageError("give --n or --digits")
    z = odd_fib_to_zeck(d)
    _emit(out, args.format,
          {"record": "convert", "value": value, "input_digits": str(d),
           "zeckendorf": str(z)},
          str(z))
    return EXIT_OK


def cmd_verify(args, out: IO[str]) -> int:
    rw = parse_word_spec(args.word)
    s = parse_set_spec(args.set)
    if args.i_set:
        i_set = parse_set_spec(args.i_set)
    elif args.word.strip() == "construction:k=2":
        i_set = ternary_i_set()
    else:
        ds = derived_sets(rw)
        i_set = SubtractionSet.from_predicate(ds.in_v, name="V")
    report = verify_absmain(rw, s, i_set, args.horizon)
    if args.format == "json":
        record = {"record": "verify", "subject": report.subject,
                  "passed": report.passed,
                  "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                             for c in report.checks]}
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        out.write(report.summary() + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def cmd_search(args, out: IO[str]) -> int:
    if args.mode == "set":
        if args.checkpoint and args.resume and os.path.exists(args.checkpoint):
            state = resume_chain(args.checkpoint, args.depth, args.doubling)
        else:
            seed = [int(x) for x in args.seed.split(",")]
            state = greedy_chain(args.k, args.depth, args.doubling, args.budget,
                                 seed=seed, checkpoint_path=args.checkpoint)
        _emit(out, args.format,
              {"record": "search", "mode": "set", "chain": list(state.chain),
               "budget_remaining": state.budget_remaining},
              " ".join(map(str, state.chain)))
        return EXIT_OK
    if args.mode == "repseq":
        terms = tuple(int(x) for x in args.seed.split(","))
        budget = args.budget
        for _ in range(args.steps):
            start = max(terms[-1] + 1, 2 * terms[-1] if args.doubling else 0)
            terms, record = extend_rep_seq(terms, start, budget)
            budget -= record.candidates_tested
        _emit(out, args.format,
              {"record": "search", "mode": "repseq", "terms": list(terms)},
              " ".join(map(str, terms)))
        return EXIT_OK
    seed = [int(x) for x in args.seed.split(",")]
    if args.mode == "conjecture1":
        report = explore_conjecture1(seed, args.steps)
    else:
        report = explore_conjecture2(seed, args.m, args.steps)
    if args.format == "json":
        record = {"record": "search", "mode": args.mode, "passed": report.passed,
                  "steps": [{"term": s.term, "passed": s.passed} for s in report.steps]}
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        out.write(report.summary() + "\n")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAIL


def cmd_play(args, out: IO[str], inp: IO[str]) -> int:
    s = parse_set_spec(args.set)
    pos = args.pos
    table = nim_sequence(s, pos + 1)
    out.write(f"position {pos}: {'N (you can win)' if table[pos] else 'P (you lose with best play)'}\n")
    while True:
        moves = [m for m in s.elements_up_to(pos)]
        if not moves:
            out.write("no legal moves remain: you lose\n")
            return EXIT_OK
        out.write(f"your move from {pos} (options up to {pos}): ")
        out.flush()
        line = inp.readline()
        if not line:
            out.write("\ninput closed, leaving the game\n")
            return EXIT_OK
        try:
            move = int(line.strip())
        except ValueError:
            out.write("enter a number\n")
            continue
        if move not in s or move > pos:
            out.write("illegal move, try again\n")
            continue
        pos -= move
        if pos == 0 or not s.elements_up_to(pos):
            out.write(f"you moved to {pos}: engine cannot move, you win\n")
            return EXIT_OK
        reply = best_move(s, pos)
        if reply is None:
            reply = s.elements_up_to(pos)[0]  # losing position, stall with smallest
        pos -= reply
        out.write(f"engine takes {reply}, position {pos} "
                  f"({'N' if table[pos] else 'P'})\n")
        if pos == 0 or not s.elements_up_to(pos):
            out.write("you cannot move: engine wins\n")
            return EXIT_OK


def build_parser() -> _Parser:
    budget_default = int(os.environ.get("SUBGAMES_BUDGET", "100000"))
    horizon_default = int(os.environ.get("SUBGAMES_HORIZON", "1000"))

    parser = _Parser(prog="subgames",
                     description="Nim sequences of subtraction games")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nimseq", help="print Sprague-Grundy values")
    p.add_argument("--set", required=True)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("period", help="minimal prefix and period of a finite set")
    p.add_argument("--set", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("construct", help="the alphabet-k construction")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--view", choices=("word", "sequence", "t-set"), default="word")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("convert", help="convert to Zeckendorf form")
    p.add_argument("--n", type=int)
    p.add_argument("--digits")
    p.add_argument("--seq", default="oddfib")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="certify a word as a Nim sequence")
    p.add_argument("--word", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--i-set", dest="i_set")
    p.add_argument("--horizon", type=int, default=horizon_default)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("search", help="greedy extension searches")
    p.add_argument("--mode", choices=("set", "repseq", "conjecture1", "conjecture2"),
                   default="set")
    p.add_argument("--seed", default="1,4")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--depth", type=int, default=7)
    p.add_argument("--steps", type=int, default=3)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--budget", type=int, default=budget_default)
    p.add_argument("--doubling", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--checkpoint")
    p.add_argument("--resume", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("play", help="interactive game against perfect play")
    p.add_argument("--set", required=True)
    p.add_argument("--pos", type=int, required=True)

    return parser


def main(argv: Optional[Sequence[str]] = None,
         stdin: Optional[IO[str]] = None,
         stdout: Optional[IO[str]] = None) -> int:
    out = stdout or sys.stdout
    inp = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "nimseq":
            return cmd_nimseq(args, out)
        if args.command == "period":
            return cmd_period(args, out)
        if args.command == "construct":
            return cmd_construct(args, out)
        if args.command == "convert":
            return cmd_convert(args, out)
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "search":
            return cmd_search(args, out)
        if args.command == "play":
            return cmd_play(args, out, inp)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhaustedError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ResourceLimitError, OverflowError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())

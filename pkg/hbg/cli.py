"""
HBG - Command Line
==================

    hbg reduce "o * d"                              free reduction of a word
    hbg eq a.pres b.pres                            canonical comparison
    hbg snf file.pres                               abelian invariants
    hbg homcount file.pres --group S3|all           |Hom(G, T)|
    hbg derive file.pres "target"                   certificate search
    hbg check script.tietze                         certified replay
    hbg corpus-verify                               the bundled corpus

Exit codes: 0 verified, 1 verification failed, 2 derive ran out of budget,
64 usage, parse or file error.
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Optional, Sequence

from pydantic import BaseModel

from hbg.abelian.snf import format_snf, invariants
from hbg.config import CONFIG, describe_config
from hbg.corpus.verify import verify_corpus
from hbg.errors import (
    DuplicateGenerator,
    DuplicateLabel,
    HbgError,
    ParseError,
    UnknownGenerator,
    UnknownGroupName,
    WordSyntaxError,
)
from hbg.group.presentation import canonicalize, equal_canonical, load_presentation
from hbg.group.word import Alphabet, format_word, parse_relation_text, parse_word, scan_generator_names
from hbg.homcount.backtrack import count_all
from hbg.homcount.groups import BUILTIN
from hbg.reports import (
    CheckReport,
    CorpusVerifyReport,
    DeriveReport,
    EqReport,
    ErrorReport,
    HomcountReport,
    ReduceReport,
    SnfReport,
)
from hbg.search.derive import FOUND, UNKNOWN, SearchBudget, derive
from hbg.tietze.ledger import TranscriptLedger
from hbg.tietze.script import load_script, replay_script

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64

_USAGE_ERRORS = (
    ParseError,
    WordSyntaxError,
    UnknownGenerator,
    DuplicateGenerator,
    DuplicateLabel,
    UnknownGroupName,
)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _UsageError(HbgError):
    pass


def _emit(args: argparse.Namespace, report: BaseModel, human: Callable[[], None]) -> None:
    if args.json:
        print(report.model_dump_json())
    else:
        human()


# ============ COMMANDS ============

def cmd_reduce(args: argparse.Namespace) -> int:
    names = args.gens.split() if args.gens is not None else scan_generator_names(args.expr)
    alphabet = Alphabet(tuple(names))
    w = parse_word(args.expr, alphabet)
    report = ReduceReport(generators=list(alphabet.names), word=format_word(w), length=len(w))
    _emit(args, report, lambda: print(report.word))
    return EXIT_OK


def cmd_eq(args: argparse.Namespace) -> int:
    left, right = load_presentation(args.left), load_presentation(args.right)
    equal = equal_canonical(left, right)
    report = EqReport(
        left=args.left,
        right=args.right,
        equal=equal,
        left_relators=len(canonicalize(left).relations),
        right_relators=len(canonicalize(right).relations),
    )

    def human():
        verdict = "equal" if equal else "differ"
        print(f"{args.left} and {args.right} {verdict} after canonicalization "
              f"({report.left_relators} / {report.right_relators} relators)")

    _emit(args, report, human)
    return EXIT_OK if equal else EXIT_FAILED


def cmd_snf(args: argparse.Namespace) -> int:
    p = load_presentation(args.file)
    started = time.perf_counter()
    snf = invariants(p)
    elapsed = time.perf_counter() - started
    report = SnfReport.from_result(args.file, snf)

    def human():
        print(format_snf(snf))
        print(f"({len(p.generators)} generators, {len(p.relations)} relators, {elapsed:.3f}s)", file=sys.stderr)

    _emit(args, report, human)
    return EXIT_OK


def cmd_homcount(args: argparse.Namespace) -> int:
    names = list(BUILTIN) if args.group == "all" else [args.group]
    for name in names:
        if name not in BUILTIN:
            raise UnknownGroupName(name)
    p = load_presentation(args.file)
    results = count_all(p, names, args.workers)
    report = HomcountReport(file=args.file, counts={name: count for name, (count, _) in results.items()})

    def human():
        for name, (count, seconds) in results.items():
            print(f"{name:<6} {count:>12}   {seconds:.2f}s")

    _emit(args, report, human)
    return EXIT_OK


def cmd_derive(args: argparse.Namespace) -> int:
    try:
        budget = SearchBudget(
            max_factors=args.max_factors,
            max_conjugator_length=args.max_conj,
            max_intermediate_length=args.max_len,
            time_limit=args.timeout,
            memo_entries=CONFIG.MEMO_ENTRIES,
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    p = load_presentation(args.file)
    target = parse_relation_text(args.target, p.alphabet)
    result = derive(p, target, budget, workers=args.workers)
    report = DeriveReport.from_result(args.file, args.target, p, result)

    def human():
        if result.status is FOUND:
            print(f"found: {report.factors} factors, {result.depth} essential "
                  f"({result.nodes} nodes, {result.seconds:.2f}s)")
            print(report.certificate)
        else:
            print(f"{result.status.value}: {result.reason}")

    _emit(args, report, human)
    if result.status is FOUND:
        return EXIT_OK
    return EXIT_UNKNOWN if result.status is UNKNOWN else EXIT_FAILED


def cmd_check(args: argparse.Namespace) -> int:
    script = load_script(args.script)
    db_path = ":memory:"
    if args.ledger is not None:
        if Path(args.ledger).exists():
            raise _UsageError(f"ledger file {args.ledger} already exists")
        db_path = args.ledger
    started = time.perf_counter()
    with TranscriptLedger(db_path) as ledger:
        result = replay_script(script, check_invariants=args.check_invariants, ledger=ledger)
    elapsed = time.perf_counter() - started
    report = CheckReport.from_replay(args.script, result)

    def human():
        for move in result.moves:
            line = f"line {move.line}" if move.line is not None else "line ?"
            print(f"[{move.index:3d}] {line:<9} {move.status.value:<6} {move.summary}")
        print(f"transcript head {result.head}")
        if result.failed_at is not None:
            print(f"FAILED: {result.error}")
        elif result.equals_target:
            print(f"final presentation equals target ({len(result.moves)} moves, {elapsed:.2f}s)")
        else:
            print("final presentation differs from target")

    _emit(args, report, human)
    return EXIT_OK if result.verified else EXIT_FAILED


def cmd_corpus_verify(args: argparse.Namespace) -> int:
    corpus = Path(args.corpus) if args.corpus is not None else CONFIG.CORPUS_DIR
    if not corpus.is_dir():
        raise _UsageError(f"corpus directory {corpus} not found")
    for name in args.groups or ():
        if name not in BUILTIN:
            raise UnknownGroupName(name)
    result = verify_corpus(corpus, workers=args.workers, groups=args.groups)
    report = CorpusVerifyReport.from_report(result)

    def human():
        for check in result.checks:
            print(f"{check.status.value.upper():<4}  {check.name:<48} {check.detail}  ({check.seconds:.2f}s)")
        failures = result.failures()
        print(f"{len(result.checks) - len(failures)}/{len(result.checks)} checks passed")

    _emit(args, report, human)
    return EXIT_OK if result.ok else EXIT_FAILED


# ============ PARSER ============

def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print one JSON object instead of the human report")
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS,
                        help="more logging on stderr (repeatable)")

    parser = _ArgumentParser(prog="hbg", description="Verify finite presentations of the handlebody group.",
                             parents=[common])
    parser.set_defaults(json=False, verbose=0)
    parser.add_argument("--version", action="version", version=f"%(prog)s {CONFIG.VERSION}")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = commands.add_parser("reduce", parents=[common], help="freely reduce a word")
    p.add_argument("expr")
    p.add_argument("--gens", help="space-separated alphabet (default: names in the expression)")
    p.set_defaults(handler=cmd_reduce)

    p = commands.add_parser("eq", parents=[common], help="compare two presentations canonically")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=cmd_eq)

    p = commands.add_parser("snf", parents=[common], help="abelian invariants via Smith normal form")
    p.add_argument("file")
    p.set_defaults(handler=cmd_snf)

    p = commands.add_parser("homcount", parents=[common], help="count homomorphisms into a finite group")
    p.add_argument("file")
    p.add_argument("--group", required=True, help=f"one of {', '.join(BUILTIN)} or 'all'")
    p.add_argument("--workers", type=_positive_int, default=CONFIG.WORKERS)
    p.set_defaults(handler=cmd_homcount)

    p = commands.add_parser("derive", parents=[common], help="search for a certificate of a relator")
    p.add_argument("file")
    p.add_argument("target", help="word, 'lhs = rhs' or 'x <-> y'")
    p.add_argument("--max-factors", type=int, default=CONFIG.MAX_FACTORS)
    p.add_argument("--max-conj", type=int, default=CONFIG.MAX_CONJ)
    p.add_argument("--max-len", type=int, default=CONFIG.MAX_LEN)
    p.add_argument("--timeout", type=float, default=CONFIG.TIMEOUT)
    p.add_argument("--workers", type=_positive_int, default=CONFIG.WORKERS)
    p.set_defaults(handler=cmd_derive)

    p = commands.add_parser("check", parents=[common], help="replay a Tietze script")
    p.add_argument("script")
    p.add_argument("--check-invariants", action="store_true",
                   help="recompute abelian invariants after every move")
    p.add_argument("--ledger", help="write the transcript chain to a new sqlite file")
    p.set_defaults(handler=cmd_check)

    p = commands.add_parser("corpus-verify", parents=[common], help="check the bundled corpus")
    p.add_argument("--corpus", help=f"corpus directory (default {CONFIG.CORPUS_DIR})")
    p.add_argument("--groups", nargs="+", help="restrict homomorphism goldens to these groups")
    p.add_argument("--workers", type=_positive_int, default=CONFIG.WORKERS)
    p.set_defaults(handler=cmd_corpus_verify)

    return parser


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {value}")
    return value


def _configure_logging(verbose: int) -> None:
    level = max(CONFIG.log_level() - 10 * verbose, logging.DEBUG)
    root = logging.getLogger("hbg")
    for old in [h for h in root.handlers if h.get_name() == "hbg-cli"]:
        root.removeHandler(old)
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name("hbg-cli")
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root.addHandler(handler)
    root.setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    logger.debug("%s", describe_config())

    try:
        return args.handler(args)
    except (_USAGE_ERRORS + (_UsageError, OSError)) as exc:
        code = EXIT_USAGE
        error = exc
    except HbgError as exc:
        code = EXIT_FAILED
        error = exc

    message = str(error)
    if isinstance(error, OSError) and error.strerror:
        message = f"{error.strerror}: {error.filename}"
    print(f"hbg {args.command}: error: {message}", file=sys.stderr)
    if args.json:
        print(ErrorReport(command=args.command, error=message, kind=type(error).__name__).model_dump_json())
    return code


if __name__ == "__main__":
    sys.exit(main())

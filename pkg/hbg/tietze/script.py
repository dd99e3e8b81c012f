"""
HBG - Tietze Script Engine
==========================

Parses `.tietze` scripts and replays them move by move against the source
presentation, checking every certificate.

Script syntax:

    source wajnryb_genus2.pres
    target simple_genus2.pres
    addrel P3': d-11 = d-22 by
        ( ; P4.1 ; +) (a1^2 a2^-2 ; P3 ; -)     indented lines continue a move
    delrel P4.2 by ( ; P4.2'' ; +)
    delrel P2.5                                 no certificate: relator is trivial
    addgen x := a1 a2
    delgen d-22 via P3'
    rename d12 -> d

Word expressions inside a move are read against the generators present
when the move is reached, so they may use names introduced earlier.
"""

import logging
import re
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple, Union

from hbg.errors import HbgError, ParseError, ScriptError
from hbg.group.presentation import (
    Presentation,
    equal_canonical,
    load_presentation,
    read_source,
    render_presentation,
)
from hbg.group.word import parse_relation_text, parse_word
from hbg.tietze.ledger import GENESIS, TranscriptLedger
from hbg.tietze.moves import (
    AddGenerator,
    AddRelator,
    Certificate,
    Factor,
    RemoveGenerator,
    RemoveRelator,
    RenameGenerator,
    TietzeMove,
)

logger = logging.getLogger(__name__)

KEYWORDS = ("addrel", "delrel", "addgen", "delgen", "rename")

# "#3" is a relation reference; any other "#" starts a comment.
_COMMENT = re.compile(r"#(?!\d+(?=[\s;)]|$))")
_BY = re.compile(r"\bby\b")
_ADDREL_HEAD = re.compile(r"^(?P<label>[^\s:]+)\s*:\s*(?P<body>.+)$")
_DELGEN = re.compile(r"^(?P<name>\S+)\s+via\s+(?P<via>\S+)$")
_RENAME = re.compile(r"^(?P<old>\S+)\s*->\s*(?P<new>\S+)$")
_ADDGEN = re.compile(r"^(?P<name>\S+)\s*:=\s*(?P<body>.+)$")

RawFactor = Tuple[str, str, int]


@dataclass(frozen=True)
class MoveSpec:
    """A move as written; bind() turns it into a typed move for a presentation."""

    keyword: str
    args: Tuple[str, ...]
    factors: Tuple[RawFactor, ...] = ()
    line: Optional[int] = None
    text: str = ""

    def bind(self, p: Presentation) -> TietzeMove:
        if self.keyword == "addrel":
            label, body = self.args
            return AddRelator(label, parse_relation_text(body, p.alphabet), self._certificate(p))
        if self.keyword == "delrel":
            return RemoveRelator(self.args[0], self._certificate(p))
        if self.keyword == "addgen":
            name, body = self.args
            return AddGenerator(name, parse_word(body, p.alphabet))
        if self.keyword == "delgen":
            return RemoveGenerator(*self.args)
        return RenameGenerator(*self.args)

    def _certificate(self, p: Presentation) -> Certificate:
        return Certificate(
            tuple(Factor(parse_word(conj, p.alphabet), ref, sign) for conj, ref, sign in self.factors)
        )


@dataclass(frozen=True)
class Script:
    source: Path
    target: Path
    moves: Tuple[MoveSpec, ...] = ()
    path: Optional[Path] = None


# ============ PARSING ============

def _logical_lines(text: str) -> List[Tuple[int, str]]:
    lines: List[Tuple[int, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        line = _COMMENT.split(raw, 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0].isspace() and lines:
            start, joined = lines[-1]
            lines[-1] = (start, f"{joined} {line.strip()}")
        else:
            lines.append((number, line.strip()))
    return lines


def _split_factors(text: str, where: Tuple[Optional[str], int]) -> Tuple[RawFactor, ...]:
    groups: List[str] = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        if text[i] != "(":
            raise ParseError(f"expected '(' in certificate, got {text[i:i + 12]!r}", *where)
        depth = 0
        for j in range(i, len(text)):
            if text[j] == "(":
                depth += 1
            elif text[j] == ")":
                depth -= 1
                if depth == 0:
                    break
        else:
            raise ParseError("unbalanced parentheses in certificate", *where)
        groups.append(text[i + 1:j])
        i = j + 1

    factors: List[RawFactor] = []
    for group in groups:
        parts = [part.strip() for part in group.split(";")]
        if len(parts) != 3 or not parts[1] or parts[2] not in ("+", "-"):
            raise ParseError(f"malformed factor ({group})", *where)
        factors.append((parts[0], parts[1], 1 if parts[2] == "+" else -1))
    return tuple(factors)


def _parse_move(keyword: str, rest: str, where: Tuple[Optional[str], int]) -> MoveSpec:
    line = where[1]
    text = f"{keyword} {rest}"
    if keyword in ("addrel", "delrel"):
        head, factors = rest, ()
        found = _BY.search(rest)
        if found:
            head = rest[:found.start()].strip()
            factors = _split_factors(rest[found.end():], where)
        if keyword == "addrel":
            match = _ADDREL_HEAD.match(head)
            if not match:
                raise ParseError("expected 'addrel <label>: <relation>'", *where)
            return MoveSpec(keyword, (match.group("label"), match.group("body")), factors, line, text)
        if not head or len(head.split()) != 1:
            raise ParseError("expected 'delrel <label-or-#index>'", *where)
        return MoveSpec(keyword, (head,), factors, line, text)

    patterns = {"addgen": _ADDGEN, "delgen": _DELGEN, "rename": _RENAME}
    match = patterns[keyword].match(rest)
    if not match:
        usage = {
            "addgen": "addgen <name> := <expr>",
            "delgen": "delgen <name> via <label-or-#index>",
            "rename": "rename <old> -> <new>",
        }[keyword]
        raise ParseError(f"expected '{usage}'", *where)
    return MoveSpec(keyword, tuple(match.groups()), (), line, text)


def parse_script(
    text: str,
    base_dir: Union[str, Path, None] = None,
    path: Union[str, Path, None] = None,
) -> Script:
    source_name = str(path) if path is not None else None
    base = Path(base_dir) if base_dir is not None else Path(".")
    source: Optional[Path] = None
    target: Optional[Path] = None
    moves: List[MoveSpec] = []

    for number, line in _logical_lines(text):
        where = (source_name, number)
        keyword, *tail = line.split(None, 1)
        rest = tail[0].strip() if tail else ""
        if keyword in ("source", "target"):
            if not rest:
                raise ParseError(f"'{keyword}' needs a file name", *where)
            if keyword == "source":
                source = base / rest
            else:
                target = base / rest
        elif keyword in KEYWORDS:
            moves.append(_parse_move(keyword, rest, where))
        else:
            raise ParseError(f"unknown keyword {keyword!r}", *where)

    if source is None or target is None:
        raise ParseError("script needs 'source' and 'target' headers", source_name, None)
    return Script(source, target, tuple(moves), Path(path) if path is not None else None)


def load_script(path: Union[str, Path]) -> Script:
    path = Path(path)
    return parse_script(read_source(path), path.parent, path)


# ============ REPLAY ============

class MoveStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"


@dataclass
class MoveRecord:
    index: int
    line: Optional[int]
    kind: str
    summary: str
    status: MoveStatus
    factors: int = 0
    digest: Optional[str] = None
    seconds: float = 0.0


@dataclass
class ReplayReport:
    moves: List[MoveRecord] = field(default_factory=list)
    failed_at: Optional[int] = None
    error: Optional[str] = None
    final: Optional[Presentation] = None
    equals_target: bool = False
    complete: bool = True
    ledger: Optional[TranscriptLedger] = field(default=None, repr=False)

    @property
    def verified(self) -> bool:
        return self.failed_at is None and self.complete and self.equals_target

    @property
    def head(self) -> str:
        for record in reversed(self.moves):
            if record.digest is not None:
                return record.digest
        return GENESIS

    def verify_chain(self) -> bool:
        return self.ledger is None or self.ledger.verify_chain()


def replay_script(
    script: Script,
    check_invariants: bool = False,
    stop_after: Optional[int] = None,
    ledger: Optional[TranscriptLedger] = None,
) -> ReplayReport:
    """
    Apply the script's moves in order.  The first failing move stops the
    replay; the report names its index and carries the presentation reached
    before it.
    """
    p = load_presentation(script.source)
    target = load_presentation(script.target)
    ledger = ledger if ledger is not None else TranscriptLedger()
    report = ReplayReport(ledger=ledger)

    if check_invariants:
        from hbg.abelian.snf import format_snf, invariants

        expected = invariants(p)

    moves = script.moves if stop_after is None else script.moves[:stop_after]
    report.complete = len(moves) == len(script.moves)

    for index, spec in enumerate(moves):
        started = time.perf_counter()
        record = MoveRecord(index, spec.line, spec.keyword, spec.text, MoveStatus.FAILED, len(spec.factors))
        report.moves.append(record)
        try:
            move = spec.bind(p)
            record.summary = move.summary()
            p = move.apply(p)
            if check_invariants:
                found = invariants(p)
                if (found.free_rank, found.torsion) != (expected.free_rank, expected.torsion):
                    raise HbgError(
                        f"abelian invariants changed: {format_snf(expected)} -> {format_snf(found)}"
                    )
        except HbgError as exc:
            error = ScriptError(index, spec.line, exc)
            record.seconds = time.perf_counter() - started
            report.failed_at = index
            report.error = str(error)
            report.final = p
            logger.error("Replay failed: %s", error)
            return report

        record.status = MoveStatus.OK
        record.seconds = time.perf_counter() - started
        record.digest = ledger.log_move(index, spec.text, render_presentation(p))
        logger.info("move %d (line %s) ok: %s", index, spec.line, record.summary)

    report.final = p
    report.equals_target = equal_canonical(p, target)
    if report.complete:
        logger.info("Final presentation %s target", "equals" if report.equals_target else "differs from")
    return report

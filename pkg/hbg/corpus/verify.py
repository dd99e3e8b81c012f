"""
HBG - Corpus Verification
=========================

Checks the bundled presentations against their manifest, replays every
reduction script with invariant checking, and recomputes every golden
invariant.  Each item is checked on its own, so one failure never hides
another.
"""

import logging
import re
import time
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Union

from hbg.abelian.snf import format_snf, invariants
from hbg.config import CONFIG
from hbg.errors import HbgError, ParseError
from hbg.group.presentation import Presentation, load_presentation, read_source, tag_counts
from hbg.homcount.backtrack import count_homomorphisms
from hbg.homcount.groups import builtin_group
from hbg.tietze.script import load_script, replay_script

logger = logging.getLogger(__name__)

MANIFEST = "manifest.txt"
GOLDENS = "goldens.txt"

_SECTION = re.compile(r"^\[(?P<file>[^\]]+)\]$")
_ENTRY = re.compile(r"^(?P<key>\S+)\s*=\s*(?P<value>-?\d+)$")


@dataclass
class ManifestEntry:
    file: str
    generators: Optional[int] = None
    tags: Dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class GoldenRecord:
    file: str
    invariant: str
    value: str
    provenance: str
    pinned: date

    @property
    def group(self) -> Optional[str]:
        return self.invariant[len("hom:"):] if self.invariant.startswith("hom:") else None


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"


@dataclass
class CorpusCheck:
    name: str
    status: CheckStatus
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status is CheckStatus.PASS


@dataclass
class CorpusReport:
    checks: List[CorpusCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(check.ok for check in self.checks)

    def failures(self) -> List[CorpusCheck]:
        return [check for check in self.checks if not check.ok]


# ============ LOADERS ============

def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def load_manifest(path: Union[str, Path]) -> Dict[str, ManifestEntry]:
    path = Path(path)
    entries: Dict[str, ManifestEntry] = {}
    current: Optional[ManifestEntry] = None
    for number, line in _content_lines(read_source(path)):
        section = _SECTION.match(line)
        if section:
            name = section.group("file").strip()
            if name in entries:
                raise ParseError(f"section [{name}] appears twice", str(path), number)
            current = entries[name] = ManifestEntry(name)
            continue
        entry = _ENTRY.match(line)
        if not entry:
            raise ParseError(f"expected '<tag> = <count>', got {line!r}", str(path), number)
        if current is None:
            raise ParseError("entry before the first [file] section", str(path), number)
        key, value = entry.group("key"), int(entry.group("value"))
        if value < 0:
            raise ParseError(f"negative count for {key}", str(path), number)
        if key == "generators":
            current.generators = value
        elif key in current.tags:
            raise ParseError(f"tag {key} listed twice", str(path), number)
        else:
            current.tags[key] = value
    return entries


def load_goldens(path: Union[str, Path]) -> List[GoldenRecord]:
    path = Path(path)
    records: List[GoldenRecord] = []
    for number, line in _content_lines(read_source(path)):
        fields = [part.strip() for part in line.split("|")]
        if len(fields) != 5:
            raise ParseError("expected '<file> | <invariant> | <value> | <provenance> | <date>'", str(path), number)
        file, invariant, value, provenance, pinned = fields
        if not provenance:
            raise ParseError("golden value without provenance", str(path), number)
        if invariant != "snf" and not (invariant.startswith("hom:") and len(invariant) > 4):
            raise ParseError(f"unknown invariant {invariant!r}", str(path), number)
        try:
            when = date.fromisoformat(pinned)
        except ValueError:
            raise ParseError(f"bad date {pinned!r}", str(path), number) from None
        records.append(GoldenRecord(file, invariant, value, provenance, when))
    return records


# ============ VERIFICATION ============

class _Mismatch(HbgError):
    pass


def _run(report: CorpusReport, name: str, check: Callable[[], str]) -> None:
    started = time.perf_counter()
    try:
        detail = check()
        status = CheckStatus.PASS
    except (HbgError, OSError) as exc:
        detail = str(exc)
        status = CheckStatus.FAIL
    elapsed = time.perf_counter() - started
    report.checks.append(CorpusCheck(name, status, detail, elapsed))
    log = logger.info if status is CheckStatus.PASS else logger.warning
    log("%s: %s %s", name, status.value, detail)


def verify_corpus(
    corpus_dir: Union[str, Path, None] = None,
    workers: int = 1,
    groups: Optional[Sequence[str]] = None,
) -> CorpusReport:
    corpus = Path(corpus_dir) if corpus_dir is not None else CONFIG.CORPUS_DIR
    report = CorpusReport()
    presentations: Dict[str, Presentation] = {}

    def presentation(file: str) -> Presentation:
        if file not in presentations:
            presentations[file] = load_presentation(corpus / file)
        return presentations[file]

    manifest: Dict[str, ManifestEntry] = {}

    def read_manifest() -> str:
        manifest.update(load_manifest(corpus / MANIFEST))
        return f"{len(manifest)} files"

    _run(report, "manifest", read_manifest)

    for entry in manifest.values():
        def check_entry(entry=entry) -> str:
            p = presentation(entry.file)
            problems = []
            if entry.generators is not None and len(p.generators) != entry.generators:
                problems.append(f"{len(p.generators)} generators, manifest says {entry.generators}")
            found = tag_counts(p)
            for tag in sorted(set(found) | set(entry.tags)):
                want, have = entry.tags.get(tag), found.get(tag, 0)
                if want is None:
                    problems.append(f"tag {tag} not in manifest")
                elif want != have:
                    problems.append(f"tag {tag}: {have} relators, manifest says {want}")
            if problems:
                raise _Mismatch("; ".join(problems))
            return f"{len(p.generators)} generators, {len(p.relations)} relators"

        _run(report, f"manifest:{entry.file}", check_entry)

    for script_path in sorted(corpus.glob("*.tietze")):
        def check_script(script_path=script_path) -> str:
            result = replay_script(load_script(script_path), check_invariants=True)
            if result.failed_at is not None:
                raise _Mismatch(result.error)
            if not result.equals_target:
                raise _Mismatch("final presentation differs from target")
            return f"{len(result.moves)} moves verified, head {result.head[:16]}"

        _run(report, f"replay:{script_path.name}", check_script)

    goldens: List[GoldenRecord] = []

    def read_goldens() -> str:
        goldens.extend(load_goldens(corpus / GOLDENS))
        return f"{len(goldens)} records"

    _run(report, "goldens", read_goldens)

    for record in goldens:
        if record.group is not None and groups is not None and record.group not in groups:
            continue

        def check_golden(record=record) -> str:
            p = presentation(record.file)
            if record.group is None:
                value = format_snf(invariants(p))
            else:
                value = str(count_homomorphisms(p, builtin_group(record.group), workers))
            if value != record.value:
                raise _Mismatch(f"computed {value}, golden {record.value} ({record.provenance})")
            return value

        _run(report, f"golden:{record.file}:{record.invariant}", check_golden)

    return report

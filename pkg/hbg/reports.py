"""
HBG - Machine-Readable Reports
==============================

One pydantic model per subcommand.  ``--json`` output is the model's
``model_dump_json()``; timings and search statistics are left out so that
identical invocations print identical bytes.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from hbg.abelian.snf import SnfResult
from hbg.corpus.verify import CheckStatus, CorpusReport
from hbg.group.presentation import Presentation
from hbg.search.derive import DeriveResult, DeriveStatus
from hbg.tietze.moves import format_certificate
from hbg.tietze.script import MoveStatus, ReplayReport


# ============ MODELS ============

class ReduceReport(BaseModel):
    """Free reduction of a single word"""
    command: str = "reduce"
    generators: List[str]
    word: str
    length: int


class EqReport(BaseModel):
    """Canonical comparison of two presentations"""
    command: str = "eq"
    left: str
    right: str
    equal: bool
    left_relators: int
    right_relators: int


class SnfReport(BaseModel):
    command: str = "snf"
    file: str
    free_rank: int
    torsion: List[int]
    rank: int = Field(..., description="Rank of the relation matrix")
    invariant_factors: List[int] = Field(..., description="Nonzero Smith diagonal, ones included")

    @classmethod
    def from_result(cls, file: str, snf: SnfResult) -> "SnfReport":
        return cls(
            file=file,
            free_rank=snf.free_rank,
            torsion=list(snf.torsion),
            rank=snf.rank,
            invariant_factors=list(snf.invariant_factors),
        )


class HomcountReport(BaseModel):
    command: str = "homcount"
    file: str
    counts: Dict[str, int] = Field(..., description="Group name -> |Hom(G, T)|, in the order requested")


class DeriveReport(BaseModel):
    """Outcome of a certificate search"""
    command: str = "derive"
    file: str
    target: str
    status: DeriveStatus = Field(..., description="found, unknown or refuted")
    certificate: Optional[str] = None
    factors: Optional[int] = None
    reason: str = ""

    @classmethod
    def from_result(cls, file: str, target: str, p: Presentation, result: DeriveResult) -> "DeriveReport":
        certificate = None
        factors = None
        if result.certificate is not None:
            certificate = format_certificate(p, result.certificate)
            factors = len(result.certificate)
        return cls(
            file=file,
            target=target,
            status=result.status,
            certificate=certificate,
            factors=factors,
            reason=result.reason,
        )


class MoveModel(BaseModel):
    index: int
    line: Optional[int]
    kind: str
    summary: str
    status: MoveStatus
    digest: Optional[str]


class CheckReport(BaseModel):
    """Replay of a Tietze script"""
    command: str = "check"
    script: str
    verified: bool
    equals_target: bool
    failed_at: Optional[int] = None
    error: Optional[str] = None
    head: str = Field(..., description="Digest of the last verified move in the transcript chain")
    moves: List[MoveModel]

    @classmethod
    def from_replay(cls, script: str, report: ReplayReport) -> "CheckReport":
        return cls(
            script=script,
            verified=report.verified,
            equals_target=report.equals_target,
            failed_at=report.failed_at,
            error=report.error,
            head=report.head,
            moves=[
                MoveModel(
                    index=m.index,
                    line=m.line,
                    kind=m.kind,
                    summary=m.summary,
                    status=m.status,
                    digest=m.digest,
                )
                for m in report.moves
            ],
        )


class CorpusCheckModel(BaseModel):
    name: str
    status: CheckStatus
    detail: str


class CorpusVerifyReport(BaseModel):
    command: str = "corpus-verify"
    ok: bool
    checks: List[CorpusCheckModel]

    @classmethod
    def from_report(cls, report: CorpusReport) -> "CorpusVerifyReport":
        return cls(
            ok=report.ok,
            checks=[CorpusCheckModel(name=c.name, status=c.status, detail=c.detail) for c in report.checks],
        )


class ErrorReport(BaseModel):
    """Emitted with --json when a command cannot run at all"""
    command: str
    error: str
    kind: str

"""
HBG - Certificate Search
========================

Bounded search for a certificate expressing a target word as a product of
conjugates of relators.

The residual word starts as the target.  A step picks a split u = A B and a
cyclic rotation rho of a relator (or its inverse) whose first letter equals
the first letter of B, and replaces u by A rho^-1 B; the factor A * rho (or
B^-1 * rho, when B is the shorter side) goes into the certificate.  After
every step the residual is reduced modulo the commuting relations: a letter
x cancels a later x^-1 when every letter in between commutes with x.  Those
commutation factors are emitted automatically and are not counted against
max_factors.

Search is iterative deepening on the number of essential factors.  The
first depth with a solution is searched completely and the least
certificate under certificate_key wins; among equal keys the earliest in
candidate order is kept.  Residuals that failed at a depth go into an LRU
memo, solved (residual, depth) pairs keep their best certificate.  The
result never depends on the worker count.
"""

import logging
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from hbg.abelian.snf import IntMatrix, hermite_normal_form, in_row_lattice
from hbg.errors import CertificateMismatch
from hbg.group.presentation import Presentation, abelian_rows, commuting_pairs
from hbg.group.word import (
    Letters,
    Word,
    cyclic_reduce,
    exponent_sums,
    format_word,
    invert_letters,
    reduce_letters,
)
from hbg.tietze.moves import Certificate, Factor, evaluate_certificate

logger = logging.getLogger(__name__)


class DeriveStatus(str, Enum):
    FOUND = "found"
    UNKNOWN = "unknown"
    REFUTED = "refuted"


FOUND = DeriveStatus.FOUND
UNKNOWN = DeriveStatus.UNKNOWN
REFUTED = DeriveStatus.REFUTED

CertificateKey = Tuple[int, int, Tuple[str, ...]]


@dataclass(frozen=True)
class SearchBudget:
    max_factors: int = 8
    max_conjugator_length: int = 6
    max_intermediate_length: int = 64
    time_limit: float = 60.0
    memo_entries: int = 200_000

    def __post_init__(self):
        if self.max_conjugator_length < 0:
            raise ValueError("max_conjugator_length must be nonnegative")
        if self.max_factors < 1 or self.max_intermediate_length < 1:
            raise ValueError("Search bounds must be positive")
        if self.time_limit <= 0 or self.memo_entries < 1:
            raise ValueError("Search bounds must be positive")


@dataclass
class DeriveResult:
    status: DeriveStatus
    certificate: Optional[Certificate] = None
    depth: Optional[int] = None
    nodes: int = 0
    reason: str = ""
    seconds: float = 0.0

    @property
    def found(self) -> bool:
        return self.status is DeriveStatus.FOUND


def certificate_key(factors: Sequence[Factor]) -> CertificateKey:
    """Order on certificates: factor count, total conjugator length, relation labels."""
    return len(factors), sum(len(f.conjugator) for f in factors), tuple(f.ref for f in factors)


_Best = Tuple[CertificateKey, Tuple[Factor, ...]]
_EMPTY: _Best = ((0, 0, ()), ())


@dataclass(frozen=True)
class _Rotation:
    """A cyclic rotation rho = q^-1 core q of relator core^sign = c0^-1 R^sign c0."""

    relation: int
    ref: str
    sign: int
    offset: int
    rho: Letters
    inverse: Letters
    lead: Letters  # q^-1 c0^-1, the conjugator tail of the emitted factor


class _TimeUp(Exception):
    pass


# ============ COMMUTATION CLOSURE ============

def _commutes(pairs: FrozenSet[Tuple[int, int]], x: int, y: int) -> bool:
    a, b = abs(x), abs(y)
    return (a, b) in pairs if a < b else (b, a) in pairs


def commute_rest(letters: Sequence[int], pairs: FrozenSet[Tuple[int, int]]) -> Letters:
    """
    Reduce a letter sequence modulo commuting generator pairs (given as
    sorted pairs of absolute letter values).
    """
    return _commute_reduce(letters, pairs, None)[1]


def _commute_reduce(letters, pairs, emit) -> Tuple[List[Tuple[int, int, Letters]], Letters]:
    # emit collects (x, y, prefix) for every swap x y -> y x after prefix.
    word = list(reduce_letters(letters))
    swaps: List[Tuple[int, int, Letters]] = []
    restart = True
    while restart:
        restart = False
        for i in range(len(word)):
            x = word[i]
            for j in range(i + 1, len(word)):
                y = word[j]
                if abs(y) == abs(x):
                    if y == -x:
                        if emit is not None:
                            for k in range(i, j - 1):
                                swaps.append((word[k], word[k + 1], tuple(word[:k])))
                                word[k], word[k + 1] = word[k + 1], word[k]
                            del word[j - 1:j + 1]
                        else:
                            del word[j]
                            del word[i]
                        restart = True
                    break
                if not _commutes(pairs, x, y):
                    break
            if restart:
                break
    return swaps, tuple(word)


def match_factor(p: Presentation, index: int, f: Word) -> Optional[Factor]:
    """A factor (conj, relation index, sign) that evaluates to f, if one exists."""
    core_f, conj_f = cyclic_reduce(f)
    target = core_f.letters()
    core_r, conj_r = cyclic_reduce(p.relations[index].relator)
    for sign in (1, -1):
        rc = core_r.letters() if sign > 0 else invert_letters(core_r.letters())
        if len(rc) != len(target):
            continue
        for k in range(len(rc)):
            if rc[k:] + rc[:k] == target:
                conj = reduce_letters(conj_f.letters() + invert_letters(rc[:k]) + invert_letters(conj_r.letters()))
                return Factor(Word.from_letters(p.alphabet, conj), p.ref_of(index), sign)
    return None


# ============ ABELIAN FILTER ============

def abelian_filter(p: Presentation, target: Word) -> bool:
    """False proves target is not a consequence of the relators."""
    width = len(p.alphabet)
    hnf = hermite_normal_form(IntMatrix.from_rows(abelian_rows(p.relators(), width), width))
    return in_row_lattice(hnf, exponent_sums(target))


# ============ SEARCH ============

class _Search:
    def __init__(self, p: Presentation, budget: SearchBudget, seconds: float):
        self.p = p
        self.budget = budget
        self.deadline = time.monotonic() + seconds
        self.memo: "OrderedDict[Letters, int]" = OrderedDict()
        self.solved: Dict[Tuple[Letters, int], _Best] = {}
        self.nodes = 0

        declared = commuting_pairs(p)
        self.commutation = {}
        pairs = set()
        for (a, b), index in declared.items():
            pairs.add((a + 1, b + 1))
            self.commutation[(a + 1, b + 1)] = index
        self.pairs = frozenset(pairs)

        self.rotations: List[_Rotation] = []
        self.by_lead: Dict[int, List[int]] = {}
        skip = set(declared.values())
        for index, relation in enumerate(p.relations):
            if index in skip:
                continue
            core, conj = cyclic_reduce(relation.relator)
            letters = core.letters()
            if not letters:
                continue
            for sign in (1, -1):
                cs = letters if sign > 0 else invert_letters(letters)
                seen = set()
                for k in range(len(cs)):
                    rho = cs[k:] + cs[:k]
                    if rho in seen:
                        continue
                    seen.add(rho)
                    lead = invert_letters(cs[:k]) + invert_letters(conj.letters())
                    self.by_lead.setdefault(rho[0], []).append(len(self.rotations))
                    self.rotations.append(
                        _Rotation(index, p.ref_of(index), sign, k, rho, invert_letters(rho), lead)
                    )

    def reduce(self, letters: Sequence[int]) -> Letters:
        return commute_rest(letters, self.pairs)

    def moves(self, u: Letters) -> List[Tuple[Letters, int, int]]:
        """Successor residuals as (residual, rotation index, position) in candidate order."""
        n = len(u)
        bound = self.budget.max_conjugator_length
        ranked = []
        for pos in range(n):
            conj = min(pos, n - pos)
            if conj > bound:
                continue
            for r in self.by_lead.get(u[pos], ()):
                rot = self.rotations[r]
                u2 = self.reduce(u[:pos] + rot.inverse + u[pos:])
                if len(u2) > self.budget.max_intermediate_length:
                    continue
                ranked.append(((len(u2), conj, rot.ref, -rot.sign, rot.offset, pos), u2, r, pos))
        ranked.sort(key=lambda item: item[0])
        return [(u2, r, pos) for _, u2, r, pos in ranked]

    def best(self, u: Letters, depth: int) -> Optional[_Best]:
        """Least certificate taking u to the identity with at most depth essential factors."""
        if not u:
            return _EMPTY
        if depth == 0:
            return None
        if time.monotonic() > self.deadline:
            raise _TimeUp()
        hit = self.solved.get((u, depth))
        if hit is not None:
            return hit
        failed = self.memo.get(u)
        if failed is not None:
            self.memo.move_to_end(u)
            if failed >= depth:
                return None
        self.nodes += 1

        best: Optional[_Best] = None
        for u2, r, pos in self.moves(u):
            sub = self.best(u2, depth - 1)
            if sub is not None:
                best = self.keep(best, self.compose(u, r, pos, sub[1]))

        if best is None:
            self.memo[u] = depth
            self.memo.move_to_end(u)
            if len(self.memo) > self.budget.memo_entries:
                self.memo.popitem(last=False)
            return None
        self.solved[(u, depth)] = best
        if len(self.solved) > self.budget.memo_entries:
            del self.solved[next(iter(self.solved))]
        return best

    @staticmethod
    def keep(best: Optional[_Best], factors: Tuple[Factor, ...]) -> _Best:
        key = certificate_key(factors)
        if best is None or key < best[0]:
            return key, factors
        return best

    # -------- certificate assembly --------

    def _word(self, letters: Sequence[int]) -> Word:
        return Word.from_letters(self.p.alphabet, letters)

    def commutation_factors(self, letters: Sequence[int]) -> Tuple[List[Factor], Letters]:
        swaps, rest = _commute_reduce(letters, self.pairs, True)
        factors = []
        for x, y, prefix in swaps:
            key = (min(abs(x), abs(y)), max(abs(x), abs(y)))
            f = self._word(prefix + (x, y, -x, -y) + invert_letters(prefix))
            factor = match_factor(self.p, self.commutation[key], f)
            if factor is None:
                raise CertificateMismatch(format_word(f), "no matching commutation relation")
            factors.append(factor)
        return factors, rest

    def compose(self, u: Letters, r: int, pos: int, rest: Tuple[Factor, ...]) -> Tuple[Factor, ...]:
        """Factors of one step on u followed by the certificate of its residual."""
        rot = self.rotations[r]
        a, b = u[:pos], u[pos:]
        swaps, _ = self.commutation_factors(a + rot.inverse + b)
        if len(b) < len(a):
            conj = reduce_letters(invert_letters(b) + rot.lead)
            return tuple(swaps) + rest + (Factor(self._word(conj), rot.ref, rot.sign),)
        conj = reduce_letters(a + rot.lead)
        return (Factor(self._word(conj), rot.ref, rot.sign),) + tuple(swaps) + rest


# Worker processes hold one search context each; its memo lives across tasks.
_WORKER: Optional[_Search] = None


def _init_worker(p: Presentation, budget: SearchBudget, seconds: float) -> None:
    global _WORKER
    _WORKER = _Search(p, budget, seconds)


def _explore(task: Tuple[Letters, int]):
    u, depth = task
    search = _WORKER
    before = search.nodes
    try:
        return search.best(u, depth), search.nodes - before, False
    except _TimeUp:
        return None, search.nodes - before, True


def derive(
    p: Presentation,
    target: Word,
    budget: Optional[SearchBudget] = None,
    workers: int = 1,
) -> DeriveResult:
    """
    Search for a certificate whose evaluation is exactly target.  An
    unknown result means the budget ran out, never that none exists.
    """
    budget = budget or SearchBudget()
    started = time.monotonic()

    if not abelian_filter(p, target):
        return DeriveResult(REFUTED, reason="provably non-derivable in abelianization")

    search = _Search(p, budget, budget.time_limit)
    commuted, u0 = search.commutation_factors(target.letters())

    best = None
    depth_found = None
    reason = ""
    pool = None
    try:
        for depth in range(budget.max_factors + 1):
            logger.debug("derive: depth %d, %d nodes so far", depth, search.nodes)
            if workers > 1 and depth > 0 and u0:
                if pool is None:
                    remaining = max(search.deadline - time.monotonic(), 0.0)
                    pool = ProcessPoolExecutor(
                        max_workers=workers, initializer=_init_worker, initargs=(p, budget, remaining)
                    )
                best = _parallel_level(search, pool, u0, depth)
            else:
                best = search.best(u0, depth)
            if best is not None:
                depth_found = depth
                break
        else:
            reason = f"no certificate with at most {budget.max_factors} factors"
    except _TimeUp:
        best = None
        reason = "time limit"
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)

    elapsed = time.monotonic() - started
    if best is None:
        return DeriveResult(UNKNOWN, nodes=search.nodes, reason=reason, seconds=elapsed)

    cert = Certificate(tuple(commuted) + best[1])
    evaluated = evaluate_certificate(p, cert)
    if evaluated != target:
        raise CertificateMismatch(format_word(target), format_word(evaluated))
    logger.info("derive: found %d essential factors (%d total) in %.2fs", depth_found, len(cert), elapsed)
    return DeriveResult(FOUND, cert, depth_found, search.nodes, seconds=elapsed)


def _parallel_level(search: _Search, pool: ProcessPoolExecutor, u0: Letters, depth: int) -> Optional[_Best]:
    """
    Search the subtrees below the first-level candidates in the pool, then
    combine them in candidate order exactly as the sequential search does.
    """
    if time.monotonic() > search.deadline:
        raise _TimeUp()
    search.nodes += 1
    candidates = search.moves(u0)
    residuals = list(dict.fromkeys(u2 for u2, _, _ in candidates))
    results: Dict[Letters, Optional[_Best]] = {}
    timed_out = False
    for u2, (sub, nodes, late) in zip(residuals, pool.map(_explore, [(u2, depth - 1) for u2 in residuals])):
        search.nodes += nodes
        timed_out = timed_out or late
        results[u2] = sub
    if timed_out:
        raise _TimeUp()

    best: Optional[_Best] = None
    for u2, r, pos in candidates:
        sub = results[u2]
        if sub is not None:
            best = search.keep(best, search.compose(u0, r, pos, sub[1]))
    return best

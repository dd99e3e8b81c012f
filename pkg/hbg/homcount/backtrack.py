"""
HBG - Homomorphism Counting
===========================

|Hom(G, T)| for a presented group G and a finite group T, by backtracking
over generator images.  Generators are assigned in descending order of the
number of relators they occur in; each relator is checked as soon as its
last generator has an image, continuing from a prefix value computed once
per search node.
"""

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from hbg.errors import MissingAssignment
from hbg.group.presentation import Presentation
from hbg.group.word import Word
from hbg.homcount.groups import FiniteGroup, builtin_group

logger = logging.getLogger(__name__)

Syllables = Tuple[Tuple[int, int], ...]


def evaluate_word(w: Word, assignment: Mapping[str, int], group: FiniteGroup) -> int:
    value = group.identity
    names = w.alphabet.names
    for gen, exp in w.syllables:
        name = names[gen]
        if name not in assignment:
            raise MissingAssignment(name)
        value = group.table[value][group.power(assignment[name], exp)]
    return value


def assignment_order(p: Presentation) -> List[int]:
    """Generator ids by descending relator count, ties in declaration order."""
    counts = [0] * len(p.alphabet)
    for relator in p.relators():
        for gen in relator.generators():
            counts[gen] += 1
    return sorted(range(len(p.alphabet)), key=lambda g: (-counts[g], g))


@dataclass(frozen=True)
class _Plan:
    """Relators compiled against the assignment order."""

    order: Tuple[int, ...]  # searched generators, in assignment order
    checks: Tuple[Tuple[Tuple[Syllables, int], ...], ...]  # per depth: (relator, split)
    free: int  # generators in no relator


def _plan(p: Presentation) -> _Plan:
    order = [g for g in assignment_order(p) if any(g in r.generators() for r in p.relators())]
    depth_of = {g: d for d, g in enumerate(order)}
    checks: List[List[Tuple[Syllables, int]]] = [[] for _ in order]
    for relator in p.relators():
        if relator.is_identity():
            continue
        last = max(depth_of[g] for g, _ in relator.syllables)
        gen = order[last]
        split = next(i for i, (g, _) in enumerate(relator.syllables) if g == gen)
        checks[last].append((relator.syllables, split))
    return _Plan(tuple(order), tuple(tuple(c) for c in checks), len(p.alphabet) - len(order))


class _Counter:
    def __init__(self, plan: _Plan, group: FiniteGroup):
        self.plan = plan
        self.table = group.table
        self.identity = group.identity
        self.size = group.order
        self.powers = group.powers()
        self.image = [0] * (max(plan.order) + 1 if plan.order else 0)

    def _value(self, start: int, syllables: Syllables, begin: int, end: int) -> int:
        table, powers, image, size = self.table, self.powers, self.image, self.size
        value = start
        for i in range(begin, end):
            gen, exp = syllables[i]
            value = table[value][powers[image[gen]][exp % size]]
        return value

    def count(self, depth: int) -> int:
        plan = self.plan
        if depth == len(plan.order):
            return 1
        gen = plan.order[depth]
        checks = plan.checks[depth]
        prefixes = [self._value(self.identity, syl, 0, split) for syl, split in checks]
        total = 0
        for x in range(self.size):
            self.image[gen] = x
            for (syl, split), prefix in zip(checks, prefixes):
                if self._value(prefix, syl, split, len(syl)) != self.identity:
                    break
            else:
                total += self.count(depth + 1)
        return total

    def count_from(self, first: int) -> int:
        """Count with the first generator's image fixed."""
        plan = self.plan
        gen = plan.order[0]
        self.image[gen] = first
        for syl, split in plan.checks[0]:
            if self._value(self.identity, syl, 0, len(syl)) != self.identity:
                return 0
        return self.count(1)


_WORKER: Optional[_Counter] = None


def _init_worker(plan: _Plan, group: FiniteGroup) -> None:
    global _WORKER
    _WORKER = _Counter(plan, group)


def _branch(first: int) -> int:
    return _WORKER.count_from(first)


def count_homomorphisms(p: Presentation, group: FiniteGroup, workers: int = 1) -> int:
    plan = _plan(p)
    scale = group.order ** plan.free
    if not plan.order:
        return scale
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                 initargs=(plan, group)) as pool:
            total = sum(pool.map(_branch, range(group.order)))
    else:
        total = _Counter(plan, group).count(0)
    return total * scale


def count_homomorphisms_exhaustive(p: Presentation, group: FiniteGroup) -> int:
    """Brute force over every assignment; small inputs only."""
    names = p.alphabet.names
    relators = [r for r in p.relators() if not r.is_identity()]
    total = 0
    for images in itertools.product(range(group.order), repeat=len(names)):
        assignment = dict(zip(names, images))
        if all(evaluate_word(r, assignment, group) == group.identity for r in relators):
            total += 1
    return total


def count_all(
    p: Presentation,
    names: Sequence[str],
    workers: int = 1,
) -> Dict[str, Tuple[int, float]]:
    """Counts (with elapsed seconds) per named builtin group, in the order given."""
    results: Dict[str, Tuple[int, float]] = {}
    for name in names:
        group = builtin_group(name)
        started = time.perf_counter()
        count = count_homomorphisms(p, group, workers)
        elapsed = time.perf_counter() - started
        logger.info("homcount %s: %d in %.2fs", name, count, elapsed)
        results[name] = (count, elapsed)
    return results

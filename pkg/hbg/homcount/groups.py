"""
HBG - Finite Target Groups
==========================

Small finite groups as verified multiplication tables over element indices
0..n-1, with 0 the identity.  The builtin groups come from sympy's
permutation groups; element i is the i-th permutation in array-form order
and table[i][j] is the index of elements[i] * elements[j].
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import (
    AbelianGroup,
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from hbg.errors import GroupTableError, UnknownGroupName

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    table: Tuple[Tuple[int, ...], ...]
    inverses: Tuple[int, ...]
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.table)

    def multiply(self, x: int, y: int) -> int:
        return self.table[x][y]

    def power(self, x: int, e: int) -> int:
        base = x if e >= 0 else self.inverses[x]
        result = self.identity
        for _ in range(abs(e)):
            result = self.table[result][base]
        return result

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
        return k

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))

    def torsion_count(self, d: int) -> int:
        """Number of elements x with x^d = identity."""
        return sum(1 for x in range(self.order) if self.power(x, d) == self.identity)

    def powers(self) -> Tuple[Tuple[int, ...], ...]:
        """powers()[x][k] = x^k for 0 <= k < order; x^e is powers()[x][e % order]."""
        rows = []
        for x in range(self.order):
            row = [self.identity]
            for _ in range(self.order - 1):
                row.append(self.table[row[-1]][x])
            rows.append(tuple(row))
        return tuple(rows)


def group_from_table(name: str, table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Validate a multiplication table with identity 0 and wrap it."""
    n = len(table)
    if n == 0:
        raise GroupTableError(f"{name}: empty table")
    rows = tuple(tuple(int(v) for v in row) for row in table)
    for row in rows:
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise GroupTableError(f"{name}: table is not closed on {n} elements")
    for x in range(n):
        if rows[0][x] != x or rows[x][0] != x:
            raise GroupTableError(f"{name}: element 0 is not the identity")
    inverses: List[int] = []
    for x in range(n):
        inverse = [y for y in range(n) if rows[x][y] == 0]
        if len(inverse) != 1 or rows[inverse[0]][x] != 0:
            raise GroupTableError(f"{name}: element {x} has no two-sided inverse")
        inverses.append(inverse[0])
    for x in range(n):
        for y in range(n):
            xy = rows[x][y]
            for z in range(n):
                if rows[xy][z] != rows[x][rows[y][z]]:
                    raise GroupTableError(f"{name}: not associative at ({x}, {y}, {z})")
    return FiniteGroup(name, rows, tuple(inverses))


def _quaternion() -> PermutationGroup:
    # Left regular action of Q8 on {1, i, j, k, -1, -i, -j, -k} = 0..7.
    units = {(0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
             (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
             (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
             (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0)}

    def mul(a: int, b: int) -> int:
        sign, unit = units[(a % 4, b % 4)]
        return ((a // 4) ^ (b // 4) ^ sign) * 4 + unit

    return PermutationGroup([Permutation([mul(a, b) for b in range(8)]) for a in (1, 2)])


BUILTIN: Dict[str, Callable[[], PermutationGroup]] = {
    "C2": lambda: CyclicGroup(2),
    "C3": lambda: CyclicGroup(3),
    "C4": lambda: CyclicGroup(4),
    "C2xC2": lambda: AbelianGroup(2, 2),
    "C5": lambda: CyclicGroup(5),
    "C6": lambda: CyclicGroup(6),
    "S3": lambda: DihedralGroup(3),
    "D4": lambda: DihedralGroup(4),
    "Q8": _quaternion,
    "D5": lambda: DihedralGroup(5),
    "A4": lambda: AlternatingGroup(4),
    "D6": lambda: DihedralGroup(6),
    "S4": lambda: SymmetricGroup(4),
}


def from_permutation_group(name: str, group: PermutationGroup) -> FiniteGroup:
    elements = sorted(group.generate(), key=lambda g: g.array_form)
    index = {tuple(g.array_form): i for i, g in enumerate(elements)}
    table = [[index[tuple((g * h).array_form)] for h in elements] for g in elements]
    return group_from_table(name, table)


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FiniteGroup:
    try:
        factory = BUILTIN[name]
    except KeyError:
        raise UnknownGroupName(name) from None
    group = from_permutation_group(name, factory())
    logger.debug("Loaded %s (order %d)", name, group.order)
    return group

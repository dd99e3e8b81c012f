"""
HBG - Abelianization and Smith Normal Form
==========================================

The abelianization of a presentation is the cokernel of its exponent-sum
matrix (one row per relator, one column per generator).  Its Smith normal
form gives the invariant factors d1 | d2 | ... | dk; the group is
Z^(cols - k) + Z/d1 + ... + Z/dk.

All arithmetic is on Python integers, so there is no overflow regime.
"""

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Callable, List, Sequence, Tuple

from hbg.group.presentation import Presentation, abelian_rows

Row = List[int]


@dataclass(frozen=True)
class IntMatrix:
    rows: Tuple[Tuple[int, ...], ...]
    cols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        for row in rows:
            if len(row) != cols:
                raise ValueError(f"Row of width {len(row)} in a matrix with {cols} columns")
        return cls(rows, cols)

    def __len__(self) -> int:
        return len(self.rows)

    def mutable(self) -> List[Row]:
        return [list(row) for row in self.rows]


@dataclass(frozen=True)
class SnfResult:
    """Two results compare equal when they describe the same abelian group."""

    free_rank: int
    torsion: Tuple[int, ...]
    invariant_factors: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def abelianize(p: Presentation) -> IntMatrix:
    return IntMatrix.from_rows(abelian_rows(p.relators(), len(p.alphabet)), len(p.alphabet))


def _smallest_pivot(a: List[Row], rows: range, cols: range):
    best = None
    for i in rows:
        for j in cols:
            if a[i][j] and (best is None or abs(a[i][j]) < best[0]):
                best = (abs(a[i][j]), i, j)
    return best


def _swap_rows(a: List[Row], i: int, k: int) -> None:
    a[i], a[k] = a[k], a[i]


def _swap_cols(a: List[Row], j: int, k: int) -> None:
    for row in a:
        row[j], row[k] = row[k], row[j]


def smith_normal_form(matrix: IntMatrix) -> SnfResult:
    a = matrix.mutable()
    m, n = len(a), matrix.cols
    diagonal: List[int] = []

    t = 0
    while t < min(m, n):
        pivot = _smallest_pivot(a, range(t, m), range(t, n))
        if pivot is None:
            break
        _, i, j = pivot
        _swap_rows(a, t, i)
        _swap_cols(a, t, j)

        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
            # Remainders are smaller than the pivot; promote the least one.
            pivot = _smallest_pivot(a, range(t, m), range(t, t + 1))
            rival = _smallest_pivot(a, range(t, t + 1), range(t, n))
            if rival is not None and (pivot is None or rival[0] < pivot[0]):
                pivot = rival
            if pivot[1:] == (t, t) and not any(a[i][t] for i in range(t + 1, m)) \
                    and not any(a[t][j] for j in range(t + 1, n)):
                break
            _, i, j = pivot
            _swap_rows(a, t, i)
            _swap_cols(a, t, j)

        diagonal.append(abs(a[t][t]))
        t += 1

    # diag(a, b) is equivalent to diag(gcd, lcm)
    for i in range(len(diagonal)):
        for j in range(i + 1, len(diagonal)):
            g = gcd(diagonal[i], diagonal[j])
            diagonal[i], diagonal[j] = g, diagonal[i] * diagonal[j] // g

    factors = tuple(diagonal)
    return SnfResult(
        free_rank=n - len(factors),
        torsion=tuple(d for d in factors if d > 1),
        invariant_factors=factors,
    )


def invariants(p: Presentation) -> SnfResult:
    return smith_normal_form(abelianize(p))


def format_snf(snf: SnfResult) -> str:
    return f"free_rank={snf.free_rank} torsion=[{','.join(str(d) for d in snf.torsion)}]"


# ============ ROW LATTICE ============

def hermite_normal_form(matrix: IntMatrix) -> List[Row]:
    """Row-style Hermite normal form: positive pivots, reduced entries above, zero rows dropped."""
    a = matrix.mutable()
    m, n = len(a), matrix.cols
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if a[i][c]]
            if not nonzero:
                break
            i = min(nonzero, key=lambda k: abs(a[k][c]))
            _swap_rows(a, r, i)
            for k in range(r + 1, m):
                q = a[k][c] // a[r][c]
                if q:
                    a[k] = [x - q * y for x, y in zip(a[k], a[r])]
            if not any(a[k][c] for k in range(r + 1, m)):
                break
        if not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for k in range(r):
            q = a[k][c] // a[r][c]
            if q:
                a[k] = [x - q * y for x, y in zip(a[k], a[r])]
        r += 1
    return a[:r]


def in_row_lattice(hnf: Sequence[Sequence[int]], vector: Sequence[int]) -> bool:
    """Whether vector is an integer combination of the rows of a Hermite normal form."""
    v = list(vector)
    for row in hnf:
        c = next(j for j, x in enumerate(row) if x)
        if any(v[:c]):
            return False
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        v = [x - q * y for x, y in zip(v, row)]
    return not any(v)


def abelian_hom_count(snf: SnfResult, group_order: int, torsion_counter: Callable[[int], int]) -> int:
    """
    Homomorphisms into an abelian group A of the given order, where
    torsion_counter(d) is the number of a in A with d*a = 0.
    """
    return group_order ** snf.free_rank * prod(torsion_counter(d) for d in snf.torsion)

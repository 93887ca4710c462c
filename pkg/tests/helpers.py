"""Independent brute-force oracles used to cross-check the library.

These deliberately avoid the code paths they verify: entropies come from
enumerating base-bit assignments, LP optima from enumerating basic points,
partitions from unfiltered recursive generation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Tuple

from omniscio.simplex import ConstraintSystem
from omniscio.sources import LinearGF2Source
from omniscio.subsets import iter_bits


def brute_force_joint_entropy(source: LinearGF2Source, subset: int) -> int:
    """H(X_S) in bits by enumerating all 2^n base-bit assignments."""
    distinct = set()
    for assignment in range(1 << source.n):
        observation = tuple(
            (row & assignment).bit_count() & 1
            for j in iter_bits(subset)
            for row in source.rows[j]
        )
        distinct.add(observation)
    count = len(distinct)
    assert count & (count - 1) == 0, "observation count must be a power of two"
    return count.bit_length() - 1


def _solve_square(
    rows: List[List[Fraction]], rhs: List[Fraction]
) -> Optional[List[Fraction]]:
    """Gaussian elimination over Fractions; None if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def brute_force_lp_min(system: ConstraintSystem) -> Fraction:
    """Minimum of c.x over {A x >= b} by enumerating basic points."""
    m, l = system.m, system.l
    incidence = []
    for mask in system.row_masks:
        incidence.append([Fraction(mask >> j & 1) for j in range(m)])
    best: Optional[Fraction] = None
    for chosen in combinations(range(l), m):
        x = _solve_square(
            [incidence[i] for i in chosen], [system.b[i] for i in chosen]
        )
        if x is None:
            continue
        if all(
            sum(incidence[i][j] * x[j] for j in range(m)) >= system.b[i]
            for i in range(l)
        ):
            obj = sum(system.c[j] * x[j] for j in range(m))
            if best is None or obj < best:
                best = obj
    assert best is not None, "no basic feasible point found"
    return best


def brute_force_partitions(m: int) -> List[Tuple[int, ...]]:
    """All set partitions of {1..m} as tuples of masks (any block count)."""
    out: List[Tuple[int, ...]] = []

    def rec(j: int, blocks: List[int]) -> None:
        if j == m:
            out.append(tuple(blocks))
            return
        bit = 1 << j
        for i in range(len(blocks)):
            blocks[i] |= bit
            rec(j + 1, blocks)
            blocks[i] &= ~bit
        blocks.append(bit)
        rec(j + 1, blocks)
        blocks.pop()

    rec(0, [])
    return out

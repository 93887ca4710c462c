"""Source models and the exact conditional-entropy oracle.

Three source representations share one oracle interface:

* ``LinearGF2Source`` -- each terminal observes XOR combinations of iid
  uniform base bits; joint entropies are GF(2) ranks, hence exact integers.
* ``TabularSource`` -- an explicit joint pmf with rational probabilities;
  entropies are generally irrational and carried as double-precision values
  (flagged inexact).
* ``EntropyVector`` -- a raw table of joint entropies, for feeding arbitrary
  (possibly invalid) entropy functions through the same pipeline.

Entropies are in bits throughout. The conditional-entropy function is
h(B) = H(X_B | X_{B^c}) = H(X_M) - H(X_{B^c}).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import InvalidInputError, ValidationError
from .gf2 import gf2_rank
from .subsets import (
    check_mask,
    check_terminal_count,
    complement,
    format_mask,
    full_mask,
    iter_bits,
)

DEFAULT_TOLERANCE = 1e-9

SourceLike = Union["LinearGF2Source", "TabularSource", "EntropyVector"]


@dataclass(frozen=True)
class LinearGF2Source:
    """Terminals observing GF(2)-linear functions of n iid uniform bits.

    ``rows[j]`` holds terminal j+1's coefficient vectors as int bitmasks;
    bit t-1 of a mask selects base bit Y_t.
    """

    m: int
    n: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        check_terminal_count(self.m)
        if self.n < 0:
            raise InvalidInputError(f"base-bit count must be >= 0, got {self.n}")
        if len(self.rows) != self.m:
            raise InvalidInputError(
                f"expected {self.m} terminal row lists, got {len(self.rows)}"
            )
        for j, terminal_rows in enumerate(self.rows, start=1):
            for row in terminal_rows:
                if not 0 <= row < (1 << self.n):
                    raise InvalidInputError(
                        f"terminal {j} row {row:#b} exceeds {self.n} base bits"
                    )

    def stacked_rows(self, subset: int) -> List[int]:
        out: List[int] = []
        for j in iter_bits(subset):
            out.extend(self.rows[j])
        return out

    def joint_entropy(self, subset: int) -> Fraction:
        """H(X_S) = GF(2) rank of the stacked coefficient rows, in bits."""
        check_mask(subset, self.m)
        return Fraction(gf2_rank(self.stacked_rows(subset)))


@dataclass(frozen=True)
class TabularSource:
    """Explicit joint pmf over per-terminal finite alphabets {0..size-1}."""

    m: int
    alphabets: Tuple[int, ...]
    pmf: Tuple[Tuple[Tuple[int, ...], Fraction], ...]

    def __post_init__(self) -> None:
        check_terminal_count(self.m)
        if len(self.alphabets) != self.m:
            raise InvalidInputError("one alphabet size per terminal required")
        if any(size < 1 for size in self.alphabets):
            raise InvalidInputError("alphabet sizes must be positive")
        seen = set()
        total = Fraction(0)
        for symbols, prob in self.pmf:
            if len(symbols) != self.m:
                raise InvalidInputError(f"symbol tuple {symbols} has wrong arity")
            for x, size in zip(symbols, self.alphabets):
                if not 0 <= x < size:
                    raise InvalidInputError(f"symbol {x} outside its alphabet")
            if symbols in seen:
                raise InvalidInputError(f"duplicate pmf entry for {symbols}")
            seen.add(symbols)
            if prob < 0:
                raise InvalidInputError("probabilities must be nonnegative")
            total += prob
        if total != 1:
            raise InvalidInputError(f"pmf sums to {total}, expected exactly 1")

    def marginal(self, subset: int) -> Dict[Tuple[int, ...], Fraction]:
        coords = list(iter_bits(subset))
        out: Dict[Tuple[int, ...], Fraction] = {}
        for symbols, prob in self.pmf:
            key = tuple(symbols[c] for c in coords)
            out[key] = out.get(key, Fraction(0)) + prob
        return out

    def joint_entropy(self, subset: int) -> float:
        """H(X_S) in bits, computed in double precision."""
        check_mask(subset, self.m)
        return -sum(
            float(p) * math.log2(float(p))
            for p in self.marginal(subset).values()
            if p > 0
        )


@dataclass(frozen=True)
class EntropyVector:
    """A raw joint-entropy table: mask S -> H(X_S), one value per subset."""

    m: int
    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        check_terminal_count(self.m)
        if len(self.values) != (1 << self.m):
            raise InvalidInputError(
                f"entropy vector needs {1 << self.m} values, got {len(self.values)}"
            )

    def joint_entropy(self, subset: int) -> Fraction:
        check_mask(subset, self.m)
        return self.values[subset]


@dataclass(frozen=True)
class EntropyOracle:
    """Precomputed map S -> H(X_S) with conditional-entropy reads.

    Immutable after construction; ``joint`` holds all 2^m values so reads
    are table lookups.
    """

    m: int
    variant: str
    exact: bool
    joint: Tuple[Fraction, ...]
    source: Optional[SourceLike] = None
    tolerance: float = 0.0

    def joint_entropy(self, subset: int) -> Fraction:
        """H(X_S)."""
        check_mask(subset, self.m)
        return self.joint[subset]

    def cond_entropy(self, subset: int) -> Fraction:
        """h(B) = H(X_B | X_{B^c}) = H(X_M) - H(X_{B^c})."""
        check_mask(subset, self.m)
        return self.joint[-1] - self.joint[complement(subset, self.m)]

    def total_entropy(self) -> Fraction:
        return self.joint[-1]

    def isclose(self, a: Fraction, b: Fraction) -> bool:
        if self.exact:
            return a == b
        return abs(a - b) <= self.tolerance


def _tabular_joint_table(
    source: TabularSource, tolerance: float
) -> Tuple[Fraction, ...]:
    if tolerance < 1e-12:
        raise InvalidInputError(
            f"tabular entropies are double precision; tolerance {tolerance} "
            "is unachievable (minimum 1e-12)"
        )
    return tuple(
        Fraction(source.joint_entropy(s)) for s in range(1 << source.m)
    )


def make_oracle(
    source: SourceLike,
    *,
    validate: bool = True,
    tolerance: float = DEFAULT_TOLERANCE,
) -> EntropyOracle:
    """Build the entropy oracle for any source representation.

    EntropyVector inputs are validated (normalization, monotonicity,
    supermodularity) unless ``validate`` is False; the other variants are
    genuine entropy functions by construction.
    """
    if isinstance(source, LinearGF2Source):
        table = tuple(source.joint_entropy(s) for s in range(1 << source.m))
        oracle = EntropyOracle(source.m, "linear", True, table, source)
    elif isinstance(source, TabularSource):
        table = _tabular_joint_table(source, tolerance)
        oracle = EntropyOracle(
            source.m, "tabular", False, table, source, tolerance=tolerance
        )
    elif isinstance(source, EntropyVector):
        oracle = EntropyOracle(source.m, "vector", True, source.values, source)
    else:
        raise InvalidInputError(f"unsupported source type {type(source).__name__}")
    if validate and isinstance(source, EntropyVector):
        report = check_validity(oracle)
        if not report.ok:
            raise ValidationError(report.describe_first())
    return oracle


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the entropy-function sanity scan (report-only)."""

    m: int
    normalized: bool
    monotonicity_violations: Tuple[Tuple[int, int], ...]
    supermodularity_violations: Tuple[Tuple[int, int, Fraction, Fraction], ...]

    @property
    def ok(self) -> bool:
        return (
            self.normalized
            and not self.monotonicity_violations
            and not self.supermodularity_violations
        )

    def describe_first(self) -> str:
        if not self.normalized:
            return "H(X_emptyset) != 0"
        if self.supermodularity_violations:
            b1, b2, lhs, rhs = self.supermodularity_violations[0]
            return (
                f"supermodularity violated at B1={{{format_mask(b1)}}}, "
                f"B2={{{format_mask(b2)}}}: h(B1)+h(B2) = {lhs} > {rhs} = "
                "h(B1|B2)+h(B1&B2)"
            )
        b1, b2 = self.monotonicity_violations[0]
        return (
            f"monotonicity violated: h({{{format_mask(b1)}}}) > "
            f"h({{{format_mask(b2)}}})"
        )


def check_validity(oracle: EntropyOracle) -> ValidityReport:
    """Scan for h-supermodularity and h-monotonicity violations.

    Lists every violated pair h(B1)+h(B2) <= h(B1|B2)+h(B1&B2), every
    single-step monotonicity violation h(B) > h(B+{j}), and whether
    H(X_emptyset) = 0. Inexact oracles are judged at their tolerance.
    """
    m = oracle.m
    h = [oracle.cond_entropy(s) for s in range(1 << m)]
    slack = Fraction(0) if oracle.exact else Fraction(oracle.tolerance)
    normalized = abs(oracle.joint[0]) <= slack

    mono: List[Tuple[int, int]] = []
    for b in range(1 << m):
        for j in range(m):
            if not b & (1 << j):
                bigger = b | (1 << j)
                if h[b] - h[bigger] > slack:
                    mono.append((b, bigger))

    supra: List[Tuple[int, int, Fraction, Fraction]] = []
    for b1 in range(1 << m):
        for b2 in range(b1, 1 << m):
            lhs = h[b1] + h[b2]
            rhs = h[b1 | b2] + h[b1 & b2]
            if lhs - rhs > slack:
                supra.append((b1, b2, lhs, rhs))

    return ValidityReport(m, normalized, tuple(mono), tuple(supra))


def _check_partition_blocks(blocks: Sequence[int], m: int) -> None:
    union = 0
    for block in blocks:
        check_mask(block, m)
        if block == 0:
            raise InvalidInputError("partition blocks must be nonempty")
        if union & block:
            raise InvalidInputError("partition blocks must be disjoint")
        union |= block
    if union != full_mask(m):
        raise InvalidInputError("partition blocks must cover all terminals")


def merge_terminals(source: SourceLike, blocks: Sequence[int]) -> SourceLike:
    """Conglomerate terminals: block i becomes the new terminal i.

    The merged terminal observes everything its block's members observe.
    """
    m = source.m
    _check_partition_blocks(blocks, m)
    k = len(blocks)
    check_terminal_count(k)

    if isinstance(source, LinearGF2Source):
        merged = tuple(tuple(source.stacked_rows(block)) for block in blocks)
        return LinearGF2Source(k, source.n, merged)

    if isinstance(source, TabularSource):
        # Merged symbol = mixed-radix encoding of the member symbols.
        coords = [list(iter_bits(block)) for block in blocks]
        sizes = tuple(
            math.prod(source.alphabets[c] for c in cs) for cs in coords
        )
        entries: Dict[Tuple[int, ...], Fraction] = {}
        for symbols, prob in source.pmf:
            key = []
            for cs in coords:
                code = 0
                for c in cs:
                    code = code * source.alphabets[c] + symbols[c]
                key.append(code)
            key_t = tuple(key)
            entries[key_t] = entries.get(key_t, Fraction(0)) + prob
        return TabularSource(k, sizes, tuple(sorted(entries.items())))

    if isinstance(source, EntropyVector):
        values = []
        for t in range(1 << k):
            union = 0
            for i in iter_bits(t):
                union |= blocks[i]
            values.append(source.values[union])
        return EntropyVector(k, tuple(values))

    raise InvalidInputError(f"unsupported source type {type(source).__name__}")


def make_counterexample() -> Tuple[LinearGF2Source, int]:
    """The six-terminal source of pairwise XORs of four uniform bits.

    Terminals observe X1=Y1^Y3, X2=Y1^Y4, X3=Y3^Y4, X4=Y2^Y3, X5=Y2^Y4,
    X6=Y1^Y2; the active set is {1,2,3}.
    """
    y = [1 << t for t in range(4)]  # y[t] selects base bit Y_{t+1}
    rows = (
        (y[0] | y[2],),
        (y[0] | y[3],),
        (y[2] | y[3],),
        (y[1] | y[2],),
        (y[1] | y[3],),
        (y[0] | y[1],),
    )
    return LinearGF2Source(6, 4, rows), 0b000111


def counterexample_entropy_vector() -> EntropyVector:
    """The published cardinality-based h table for the six-terminal example.

    h(B) = 0, 1, 2 for |B| in {1,2}, {3,4}, {5} with H(X_M) = 4, stored as
    the equivalent joint-entropy table. This table is NOT a valid entropy
    function (it violates supermodularity); load with validation disabled.
    """
    h_by_size = {0: Fraction(0), 1: Fraction(0), 2: Fraction(0),
                 3: Fraction(1), 4: Fraction(1), 5: Fraction(2),
                 6: Fraction(4)}
    total = Fraction(4)
    values = []
    for s in range(1 << 6):
        comp_size = 6 - s.bit_count()
        values.append(total - h_by_size[comp_size])
    return EntropyVector(6, tuple(values))


def make_sunflower(m: int, core_bits: int, petal_bits: int) -> LinearGF2Source:
    """Source where every terminal sees a shared core plus its own petal."""
    check_terminal_count(m)
    if core_bits < 0 or petal_bits < 0:
        raise InvalidInputError("bit counts must be nonnegative")
    n = core_bits + m * petal_bits
    rows = []
    for i in range(m):
        mine = [1 << t for t in range(core_bits)]
        offset = core_bits + i * petal_bits
        mine.extend(1 << (offset + t) for t in range(petal_bits))
        rows.append(tuple(mine))
    return LinearGF2Source(m, n, tuple(rows))


def random_linear_source(
    m: int, n: int, rows_per_terminal: int, seed: int
) -> LinearGF2Source:
    """Deterministic random source; rows uniform over nonzero n-bit vectors."""
    check_terminal_count(m)
    if n < 1 or rows_per_terminal < 1:
        raise InvalidInputError("n and rows_per_terminal must be positive")
    rng = random.Random(seed)
    rows = tuple(
        tuple(rng.randrange(1, 1 << n) for _ in range(rows_per_terminal))
        for _ in range(m)
    )
    return LinearGF2Source(m, n, rows)

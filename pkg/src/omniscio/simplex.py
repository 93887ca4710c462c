"""Exact rational simplex for Slepian-Wolf style linear programs.

Solves  min 1.x  s.t.  A x >= b  with a 0/1 incidence matrix A whose rows
are subset masks, entirely over ``fractions.Fraction``. The primal variables
are free in the original program, so they are split x = x+ - x- in the
equational form; the dual read off the final basis then satisfies y A = c
and y >= 0 exactly, matching the dual program of the rate LP.

Pivot rule is Bland's (least index) throughout, for guaranteed termination
and run-to-run determinism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import InternalContractError, InvalidInputError
from .subsets import full_mask, iter_bits

ZERO = Fraction(0)
ONE = Fraction(1)


class LpInfeasibleError(Exception):
    """The equality-form program has no feasible point."""


class LpUnboundedError(Exception):
    """The equality-form program is unbounded below."""


@dataclass(frozen=True)
class ConstraintSystem:
    """Data of the rate LP: one row per subset mask, right-hand side b.

    The incidence row for mask B is its 0/1 indicator vector; the objective
    c defaults to all ones.
    """

    m: int
    row_masks: Tuple[int, ...]
    b: Tuple[Fraction, ...]
    c: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.b) != len(self.row_masks):
            raise InvalidInputError("row count mismatch between masks and b")
        if len(self.c) != self.m:
            raise InvalidInputError("objective length must equal m")
        full = full_mask(self.m)
        for mask in self.row_masks:
            if mask == 0:
                raise InvalidInputError("all-zero constraint row not allowed")
            if mask == full:
                raise InvalidInputError("all-one constraint row not allowed")
            if mask > full:
                raise InvalidInputError(f"row mask {mask:#b} out of range")

    @property
    def l(self) -> int:  # noqa: E743 - row count
        return len(self.row_masks)

    def row_sum(self, x: Sequence[Fraction], i: int) -> Fraction:
        return sum((x[j] for j in iter_bits(self.row_masks[i])), ZERO)


def make_system(
    m: int,
    row_masks: Sequence[int],
    b: Sequence[Fraction],
    c: Optional[Sequence[Fraction]] = None,
) -> ConstraintSystem:
    if c is None:
        c = [ONE] * m
    return ConstraintSystem(
        m, tuple(row_masks), tuple(Fraction(v) for v in b), tuple(Fraction(v) for v in c)
    )


@dataclass(frozen=True)
class LpSolution:
    """A vertex primal optimum with its basis dual."""

    objective: Fraction
    x: Tuple[Fraction, ...]
    y: Tuple[Fraction, ...]
    tight_rows: Tuple[int, ...]

    @property
    def support_size(self) -> int:
        return sum(1 for v in self.y if v > 0)


@dataclass(frozen=True)
class UniquenessCertificate:
    """Outcome of the alternative-optimum search on the optimal face."""

    unique: bool
    auxiliary_value: Fraction
    alternative: Optional[Tuple[Fraction, ...]] = None

    @property
    def verdict(self) -> str:
        return "Unique" if self.unique else "NotUnique"


def simplex_min(
    matrix: Sequence[Sequence[Fraction]],
    rhs: Sequence[Fraction],
    costs: Sequence[Fraction],
) -> Tuple[List[Fraction], List[Fraction], Fraction]:
    """min costs.z  s.t.  matrix z = rhs, z >= 0  (two-phase, Bland's rule).

    Returns (z, y, objective) where y is the equality-form dual vector.
    Raises LpInfeasibleError / LpUnboundedError.
    """
    n_rows = len(matrix)
    n_cols = len(costs)
    art0 = n_cols
    width = n_cols + n_rows  # structural + artificial columns; rhs appended

    tableau: List[List[Fraction]] = []
    signs: List[int] = []
    for i in range(n_rows):
        row = [Fraction(v) for v in matrix[i]]
        r = Fraction(rhs[i])
        if r < 0:
            row = [-v for v in row]
            r = -r
            signs.append(-1)
        else:
            signs.append(1)
        row.extend(ONE if k == i else ZERO for k in range(n_rows))
        row.append(r)
        tableau.append(row)
    basis = [art0 + i for i in range(n_rows)]

    def pivot(pi: int, pj: int) -> None:
        prow = tableau[pi]
        piv = prow[pj]
        if piv != 1:
            inv = 1 / piv
            prow = tableau[pi] = [v * inv for v in prow]
        nz = [k for k, v in enumerate(prow) if v]
        for r in range(n_rows):
            if r == pi:
                continue
            row = tableau[r]
            f = row[pj]
            if f:
                for k in nz:
                    row[k] -= f * prow[k]
        f = zrow[pj]
        if f:
            for k in nz:
                zrow[k] -= f * prow[k]
        basis[pi] = pj

    def run(entering_limit: int) -> None:
        while True:
            pj = -1
            for j in range(entering_limit):
                if zrow[j] < 0:
                    pj = j
                    break
            if pj < 0:
                return
            pi = -1
            best: Optional[Fraction] = None
            for i in range(n_rows):
                a = tableau[i][pj]
                if a > 0:
                    ratio = tableau[i][width] / a
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[pi]
                    ):
                        best = ratio
                        pi = i
            if pi < 0:
                raise LpUnboundedError()
            pivot(pi, pj)

    # Phase 1: minimize the artificial sum.
    zrow = [ZERO] * (width + 1)
    for i in range(n_rows):
        row = tableau[i]
        for k in range(n_cols):
            zrow[k] -= row[k]
        zrow[width] -= row[width]
    run(n_cols)
    if -zrow[width] > 0:
        raise LpInfeasibleError()
    # Drive artificials (basic at zero) out where possible.
    for i in range(n_rows):
        if basis[i] >= art0:
            row = tableau[i]
            for j in range(n_cols):
                if row[j]:
                    pivot(i, j)
                    break

    # Phase 2: the real objective (artificials cost 0 and never re-enter).
    zrow = [Fraction(c) for c in costs] + [ZERO] * (n_rows + 1)
    for i in range(n_rows):
        cb = costs[basis[i]] if basis[i] < n_cols else ZERO
        if cb:
            row = tableau[i]
            for k in range(width + 1):
                if row[k]:
                    zrow[k] -= cb * row[k]
    run(n_cols)

    z = [ZERO] * n_cols
    objective = ZERO
    for i in range(n_rows):
        val = tableau[i][width]
        if basis[i] < n_cols:
            z[basis[i]] = val
            objective += costs[basis[i]] * val
        elif val != 0:
            raise InternalContractError("artificial variable basic at nonzero level")
    y = []
    for i in range(n_rows):
        yi = ZERO
        for r in range(n_rows):
            cb = costs[basis[r]] if basis[r] < n_cols else ZERO
            if cb:
                yi += cb * tableau[r][art0 + i]
        y.append(yi * signs[i])
    return z, y, objective


def _incidence_row(mask: int, m: int) -> List[Fraction]:
    row = [ZERO] * m
    for j in iter_bits(mask):
        row[j] = ONE
    return row


def solve(system: ConstraintSystem) -> LpSolution:
    """Solve min c.x s.t. A x >= b (x free) exactly; verify all contracts."""
    m, l = system.m, system.l
    if any(v < 0 for v in system.b):
        raise InvalidInputError("right-hand side must be nonnegative")
    covered = 0
    for mask in system.row_masks:
        covered |= mask
    if covered != full_mask(m):
        raise InvalidInputError("every column must be covered by some row")

    # Equational form with x = x+ - x- and surplus variables s.
    matrix = []
    for i, mask in enumerate(system.row_masks):
        a = _incidence_row(mask, m)
        row = a + [-v for v in a]
        row.extend(-ONE if k == i else ZERO for k in range(l))
        matrix.append(row)
    costs = list(system.c) + [-v for v in system.c] + [ZERO] * l
    try:
        z, y, objective = simplex_min(matrix, system.b, costs)
    except LpInfeasibleError as exc:
        raise InternalContractError("rate LP reported infeasible") from exc
    except LpUnboundedError as exc:
        raise InternalContractError("rate LP reported unbounded") from exc

    x = tuple(z[j] - z[m + j] for j in range(m))
    y_t = tuple(y)
    tight = tuple(
        i for i in range(l) if system.row_sum(x, i) == system.b[i]
    )
    solution = LpSolution(objective, x, y_t, tight)
    _verify(system, solution)
    return solution


def _verify(system: ConstraintSystem, sol: LpSolution) -> None:
    m, l = system.m, system.l
    if sum(system.c[j] * sol.x[j] for j in range(m)) != sol.objective:
        raise InternalContractError("objective mismatch with primal x")
    if sum(sol.y[i] * system.b[i] for i in range(l)) != sol.objective:
        raise InternalContractError("strong duality violated")
    for i in range(l):
        if sol.y[i] < 0:
            raise InternalContractError("negative dual weight")
        gap = system.row_sum(sol.x, i) - system.b[i]
        if gap < 0:
            raise InternalContractError("primal infeasibility in solution")
        if sol.y[i] > 0 and gap != 0:
            raise InternalContractError("complementary slackness violated")
    for j in range(m):
        col = sum(
            (sol.y[i] for i in range(l) if system.row_masks[i] >> j & 1), ZERO
        )
        if col != system.c[j]:
            raise InternalContractError("dual feasibility y.A = c violated")


def tight_rows(
    solution: LpSolution, system: ConstraintSystem
) -> List[Tuple[int, int]]:
    """All rows holding with equality at the solution, as (index, mask)."""
    return [(i, system.row_masks[i]) for i in solution.tight_rows]


def uniqueness_test(
    system: ConstraintSystem, solution: LpSolution
) -> UniquenessCertificate:
    """Search the optimal face for a vertex differing from the solution.

    Works on the equational form [A | -I] (x; x_s) = b with x, x_s >= 0 plus
    the optimality cut c.x = objective, maximizing the coordinates that are
    zero at the given vertex. A maximum of 0 certifies uniqueness.
    """
    m, l = system.m, system.l
    x = solution.x
    if any(v < 0 for v in x):
        raise InvalidInputError("uniqueness test requires a nonnegative optimum")
    slacks = [system.row_sum(x, i) - system.b[i] for i in range(l)]
    if any(v < 0 for v in slacks):
        raise InvalidInputError("solution is not feasible for the system")
    if sum(system.c[j] * x[j] for j in range(m)) != solution.objective:
        raise InvalidInputError("solution objective does not match the system")

    point = list(x) + slacks
    n_cols = m + l
    matrix = []
    for i, mask in enumerate(system.row_masks):
        row = _incidence_row(mask, m)
        row.extend(-ONE if k == i else ZERO for k in range(l))
        matrix.append(row)
    matrix.append(list(system.c) + [ZERO] * l)
    rhs = list(system.b) + [solution.objective]
    # Maximize the sum of coordinates vanishing at the given vertex.
    costs = [-ONE if point[j] == 0 else ZERO for j in range(n_cols)]
    z, _, objective = simplex_min(matrix, rhs, costs)
    aux = -objective
    if aux == 0:
        return UniquenessCertificate(True, aux)
    return UniquenessCertificate(False, aux, tuple(z[:m]))


def feasible_point(
    m: int,
    ineq_masks: Sequence[int],
    ineq_b: Sequence[Fraction],
    eq_masks: Sequence[int],
    eq_b: Sequence[Fraction],
) -> Optional[Tuple[Fraction, ...]]:
    """A vertex of {x >= 0 : sum_B x >= b for B, sum_C x = b for C}, or None.

    Nonnegativity is harmless for rate regions: singleton constraints force
    x_j >= h({j}) >= 0 anyway.
    """
    n_ineq = len(ineq_masks)
    matrix = []
    for i, mask in enumerate(ineq_masks):
        row = _incidence_row(mask, m)
        row.extend(-ONE if k == i else ZERO for k in range(n_ineq))
        matrix.append(row)
    for mask in eq_masks:
        row = _incidence_row(mask, m)
        row.extend([ZERO] * n_ineq)
        matrix.append(row)
    rhs = list(ineq_b) + list(eq_b)
    costs = [ZERO] * (m + n_ineq)
    try:
        z, _, _ = simplex_min(matrix, rhs, costs)
    except LpInfeasibleError:
        return None
    return tuple(z[:m])

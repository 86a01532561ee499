"""Exact rational linear programming via two-phase simplex with Bland's rule.

Variables are free (unrestricted sign); internally each is split into a
difference of nonnegative parts.  All pivoting is done over Fractions, so the
reported optimum and witness point are exact.  Bland's rule guarantees
termination on degenerate instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vec, ZERO, ONE, frac

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
FEASIBLE_OPEN = "feasible-open"
INFEASIBLE_OPEN = "infeasible-open"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None
    point: Vec | None


def _pivot(tableau: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    inv = ONE / tableau[row][col]
    tableau[row] = [x * inv for x in tableau[row]]
    prow = tableau[row]
    for i, trow in enumerate(tableau):
        if i != row and trow[col] != 0:
            f = trow[col]
            tableau[i] = [x - f * y for x, y in zip(trow, prow)]
    basis[row] = col


def _simplex(tableau: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    """Maximize the objective stored in the last tableau row. Bland's rule."""
    obj = len(tableau) - 1
    while True:
        entering = next(
            (j for j in range(ncols) if tableau[obj][j] > 0), None
        )
        if entering is None:
            return OPTIMAL
        leaving, best = None, None
        for i in range(obj):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            return UNBOUNDED
        _pivot(tableau, basis, leaving, entering)


def _solve_standard(rows, rhs, objective):
    """Maximize objective over {y >= 0 : rows y = rhs}; returns (status, value, y)."""
    m, n = len(rows), len(objective)
    tableau = []
    for r, b in zip(rows, rhs):
        row = list(r)
        if b < 0:
            row = [-x for x in row]
            b = -b
        tableau.append(row + [ZERO] * m + [b])
    # phase 1: artificial variable per row
    for i, row in enumerate(tableau):
        row[n + i] = ONE
    basis = [n + i for i in range(m)]
    # phase-1 objective (max -sum of artificials), basic columns eliminated
    obj = [ZERO] * (n + m + 1)
    for row in tableau:
        obj = [x + y for x, y in zip(obj, row)]
    for i in range(m):
        obj[n + i] = ZERO
    tableau.append(obj)
    _simplex(tableau, basis, n + m)
    if tableau[-1][-1] != 0:
        return INFEASIBLE, None, None
    tableau.pop()
    # drive leftover artificials out of the basis
    for i in range(m - 1, -1, -1):
        if basis[i] >= n:
            col = next((j for j in range(n) if tableau[i][j] != 0), None)
            if col is None:
                tableau.pop(i)
                basis.pop(i)
            else:
                _pivot(tableau, basis, i, col)
    tableau = [row[:n] + [row[-1]] for row in tableau]
    # phase 2
    obj = list(objective) + [ZERO]
    for i, b in enumerate(basis):
        if obj[b] != 0:
            f = obj[b]
            obj = [x - f * y for x, y in zip(obj, tableau[i])]
    tableau.append(obj)
    status = _simplex(tableau, basis, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    y = [ZERO] * n
    for i, b in enumerate(basis):
        y[b] = tableau[i][-1]
    return OPTIMAL, -tableau[-1][-1], tuple(y)


def _build(objective, inequalities, equations):
    """Split free variables and append slacks; returns standard-form data."""
    n = len(objective)
    rows, rhs, kinds = [], [], []
    for a, b in equations:
        rows.append(list(a))
        rhs.append(frac(b))
        kinds.append("eq")
    for a, b in inequalities:
        rows.append(list(a))
        rhs.append(frac(b))
        kinds.append("le")
    nslack = sum(1 for k in kinds if k == "le")
    std_rows = []
    si = 0
    for row, kind in zip(rows, kinds):
        std = [frac(x) for x in row] + [-frac(x) for x in row] + [ZERO] * nslack
        if kind == "le":
            std[2 * n + si] = ONE
            si += 1
        std_rows.append(std)
    std_obj = [frac(c) for c in objective] + [-frac(c) for c in objective] + [ZERO] * nslack
    return std_rows, rhs, std_obj


def lp_solve(objective, inequalities, *, equations=(), sense: str = "max", strict=None) -> LPResult:
    """Exact LP: optimize `objective . x` s.t. a.x <= b per inequality, e.x = d per equation.

    With a `strict` flag list (aligned with `inequalities`), the flagged
    constraints are treated as strict and the result reports open feasibility:
    FEASIBLE_OPEN with a witness in the open region, or INFEASIBLE_OPEN with
    the slack optimum (0) when the region has no interior point.
    """
    objective = tuple(frac(c) for c in objective)
    n = len(objective)
    ineqs = [(tuple(frac(x) for x in a), frac(b)) for a, b in inequalities]
    eqs = [(tuple(frac(x) for x in a), frac(b)) for a, b in equations]
    if strict is not None and any(strict):
        # maximize a shared slack t on the strict rows; t <= 1 keeps it bounded
        slack_ineqs = []
        for (a, b), s in zip(ineqs, strict, strict=True):
            slack_ineqs.append((a + (ONE if s else ZERO,), b))
        slack_ineqs.append((tuple([ZERO] * n) + (ONE,), ONE))
        slack_eqs = [(a + (ZERO,), b) for a, b in eqs]
        res = lp_solve(
            tuple([ZERO] * n) + (ONE,), slack_ineqs, equations=slack_eqs, sense="max"
        )
        if res.status == INFEASIBLE:
            return LPResult(INFEASIBLE, None, None)
        if res.status == OPTIMAL and res.value <= 0:
            return LPResult(INFEASIBLE_OPEN, res.value, None)
        return LPResult(FEASIBLE_OPEN, None, res.point[:-1])
    if sense == "min":
        flipped = lp_solve(tuple(-c for c in objective), ineqs, equations=eqs, sense="max")
        if flipped.status != OPTIMAL:
            return flipped
        return LPResult(OPTIMAL, -flipped.value, flipped.point)
    std_rows, rhs, std_obj = _build(objective, ineqs, eqs)
    if not std_rows:
        if all(c == 0 for c in std_obj):
            return LPResult(OPTIMAL, ZERO, tuple([ZERO] * n))
        return LPResult(UNBOUNDED, None, None)
    status, value, y = _solve_standard(std_rows, rhs, std_obj)
    if status != OPTIMAL:
        return LPResult(status, None, None)
    x = tuple(y[i] - y[n + i] for i in range(n))
    return LPResult(OPTIMAL, value, x)


def feasible_point(inequalities, equations=(), dim: int | None = None) -> Vec | None:
    """A point of the closed system, or None."""
    if dim is None:
        if inequalities:
            dim = len(inequalities[0][0])
        elif equations:
            dim = len(equations[0][0])
        else:
            raise ValueError("dimension unknown for an empty system")
    res = lp_solve([ZERO] * dim, inequalities, equations=equations)
    return res.point if res.status == OPTIMAL else None


def strict_interior_point(inequalities, equations=(), dim: int | None = None) -> Vec | None:
    """A point satisfying every inequality strictly (equations exactly), or None."""
    if dim is None:
        if inequalities:
            dim = len(inequalities[0][0])
        elif equations:
            dim = len(equations[0][0])
        else:
            raise ValueError("dimension unknown for an empty system")
    if not inequalities:
        return feasible_point(inequalities, equations, dim)
    res = lp_solve(
        [ZERO] * dim,
        inequalities,
        equations=equations,
        strict=[True] * len(inequalities),
    )
    return res.point if res.status == FEASIBLE_OPEN else None


def maximize(objective, inequalities, equations=()) -> LPResult:
    return lp_solve(objective, inequalities, equations=equations, sense="max")


def minimize(objective, inequalities, equations=()) -> LPResult:
    return lp_solve(objective, inequalities, equations=equations, sense="min")

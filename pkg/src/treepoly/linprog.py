"""Exact linear programming over the rationals.

A dense two-phase primal simplex with Bland's smallest-index pivot rule, so
termination is guaranteed and every run of the same input pivots identically.
Variables are nonnegative; constraints are equalities and/or ``<=``
inequalities (slacks are added internally).  Every answer is certified:

* feasible: an exact solution vector, checkable by substitution;
* infeasible: an exact Farkas vector ``y`` (one entry per constraint row,
  inequality rows first) with ``y . b > 0`` while ``y^T A <= 0`` columnwise
  and ``y_i <= 0`` on inequality rows;
* unbounded: flagged as its own status.

Problem sizes here are small (a few equality rows, up to a few hundred
columns), so the dense tableau is the simplest correct tool.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)

Row = Sequence[Fraction]


@dataclass(frozen=True)
class LPResult:
    status: str
    x: "tuple[Fraction, ...] | None" = None
    objective: "Fraction | None" = None
    certificate: "tuple[Fraction, ...] | None" = None


def _pivot(tableau: list[list[Fraction]], zrow: list[Fraction],
           basis: list[int], row: int, col: int) -> None:
    pivot_row = tableau[row]
    inv = _ONE / pivot_row[col]
    if inv != 1:
        tableau[row] = pivot_row = [v * inv for v in pivot_row]
    for other in tableau:
        if other is not pivot_row:
            factor = other[col]
            if factor:
                for j, v in enumerate(pivot_row):
                    if v:
                        other[j] -= factor * v
    factor = zrow[col]
    if factor:
        for j, v in enumerate(pivot_row):
            if v:
                zrow[j] -= factor * v
    basis[row] = col


def _run_simplex(tableau: list[list[Fraction]], zrow: list[Fraction],
                 basis: list[int], ncols: int) -> str:
    """Minimize until no negative reduced cost remains.  Bland's rule."""
    while True:
        enter = -1
        for j in range(ncols):
            if zrow[j] < 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best: "Fraction | None" = None
        for r, line in enumerate(tableau):
            coef = line[enter]
            if coef > 0:
                ratio = line[-1] / coef
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave < 0:
            return UNBOUNDED
        _pivot(tableau, zrow, basis, leave, enter)


def _reduced_costs(tableau: list[list[Fraction]], basis: list[int],
                   cost: list[Fraction]) -> list[Fraction]:
    # eliminate the basic columns from the cost row; rhs cell = -objective
    z = cost + [_ZERO]
    for r, bv in enumerate(basis):
        cb = cost[bv]
        if cb:
            row = tableau[r]
            for j, v in enumerate(row):
                if v:
                    z[j] -= cb * v
    return z


def lp_feasible(*, a_eq: Sequence[Row] = (), b_eq: Sequence[Fraction] = (),
                a_ub: Sequence[Row] = (), b_ub: Sequence[Fraction] = (),
                objective: "Row | None" = None,
                maximize: bool = False) -> LPResult:
    """Solve ``{a_ub x <= b_ub, a_eq x = b_eq, x >= 0}``; optionally optimize.

    With no objective the result is a feasible point or an infeasibility
    certificate.  With one, the optimum (or ``unbounded``) is reported.
    """
    rows_ub = [list(map(Fraction, r)) for r in a_ub]
    rows_eq = [list(map(Fraction, r)) for r in a_eq]
    rhs = [Fraction(v) for v in b_ub] + [Fraction(v) for v in b_eq]
    if len(rows_ub) != len(b_ub) or len(rows_eq) != len(b_eq):
        raise DomainError("constraint matrix and right-hand side sizes differ")
    widths = {len(r) for r in rows_ub + rows_eq}
    if len(widths) > 1:
        raise DomainError("constraint rows have inconsistent widths")
    nvars = widths.pop() if widths else (len(objective) if objective else 0)
    if objective is not None and len(objective) != nvars:
        raise DomainError("objective length does not match variable count")

    n_ub = len(rows_ub)
    ncols = nvars + n_ub  # original variables plus slacks
    m = n_ub + len(rows_eq)

    # standard-form rows, slack i on inequality row i
    rows: list[list[Fraction]] = []
    for i, r in enumerate(rows_ub):
        slack = [_ZERO] * n_ub
        slack[i] = _ONE
        rows.append(r + slack)
    for r in rows_eq:
        rows.append(r + [_ZERO] * n_ub)

    flips = [_ONE] * m
    for i in range(m):
        if rhs[i] < 0:
            flips[i] = -_ONE
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # phase 1: artificial basis, minimize the artificials
    tableau = [rows[i] + [_ONE if r == i else _ZERO for r in range(m)] + [rhs[i]]
               for i in range(m)]
    basis = [ncols + i for i in range(m)]
    cost1 = [_ZERO] * ncols + [_ONE] * m
    zrow = _reduced_costs(tableau, basis, cost1)
    status = _run_simplex(tableau, zrow, basis, ncols + m)
    assert status == OPTIMAL, "phase 1 is always bounded below by 0"
    infeasibility = -zrow[-1]
    if infeasibility > 0:
        # Farkas vector from the phase-1 duals: y_i = 1 - reduced cost of
        # artificial i, undoing any row negations.
        y = tuple(flips[i] * (_ONE - zrow[ncols + i]) for i in range(m))
        return LPResult(status=INFEASIBLE, certificate=y)

    # pivot leftover artificials out of the basis (degenerate rows)
    drop: list[int] = []
    for r in range(m):
        if basis[r] >= ncols:
            col = next((j for j in range(ncols) if tableau[r][j] != 0), None)
            if col is None:
                drop.append(r)  # redundant all-zero row
            else:
                _pivot(tableau, zrow, basis, r, col)
    for r in sorted(drop, reverse=True):
        del tableau[r]
        del basis[r]

    tableau = [line[:ncols] + [line[-1]] for line in tableau]

    if objective is None:
        x = _extract(tableau, basis, nvars)
        return LPResult(status=OPTIMAL, x=x)

    sign = -_ONE if maximize else _ONE
    cost2 = [sign * Fraction(c) for c in objective] + [_ZERO] * n_ub
    zrow = _reduced_costs(tableau, basis, cost2)
    status = _run_simplex(tableau, zrow, basis, ncols)
    if status == UNBOUNDED:
        return LPResult(status=UNBOUNDED)
    x = _extract(tableau, basis, nvars)
    value = sum(Fraction(c) * v for c, v in zip(objective, x))
    return LPResult(status=OPTIMAL, x=x, objective=value)


def _extract(tableau: list[list[Fraction]], basis: list[int],
             nvars: int) -> tuple[Fraction, ...]:
    x = [_ZERO] * nvars
    for r, bv in enumerate(basis):
        if bv < nvars:
            x[bv] = tableau[r][-1]
    return tuple(x)

"""Exact linear programming over the rationals.

A dense two-phase primal simplex with Bland's anti-cycling rule.  Every
coefficient is a ``fractions.Fraction``, so feasibility and optimality are
decided exactly; there are no tolerances anywhere.  The instances solved
here are tiny (tens of rows and columns), so a plain tableau beats any
clever sparse machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class LpResult:
    status: str
    objective: Fraction | None = None
    x: list[Fraction] | None = None


def maximize(
    c: Sequence[Fraction | int],
    a_eq: Sequence[Sequence[Fraction | int]] = (),
    b_eq: Sequence[Fraction | int] = (),
    a_ge: Sequence[Sequence[Fraction | int]] = (),
    b_ge: Sequence[Fraction | int] = (),
) -> LpResult:
    """Maximize c.x subject to a_eq x == b_eq, a_ge x >= b_ge, x >= 0."""
    nvars = len(c)
    c = [Fraction(v) for v in c]
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    n_ge = len(a_ge)
    ncols = nvars + n_ge  # structural variables plus one surplus per >= row

    for coeffs, b in zip(a_eq, b_eq, strict=True):
        if len(coeffs) != nvars:
            raise ValueError("equality row width does not match objective")
        rows.append([Fraction(v) for v in coeffs] + [_ZERO] * n_ge)
        rhs.append(Fraction(b))
    for k, (coeffs, b) in enumerate(zip(a_ge, b_ge, strict=True)):
        if len(coeffs) != nvars:
            raise ValueError("inequality row width does not match objective")
        row = [Fraction(v) for v in coeffs] + [_ZERO] * n_ge
        row[nvars + k] = -_ONE
        rows.append(row)
        rhs.append(Fraction(b))

    m = len(rows)
    for i in range(m):  # phase 1 needs nonnegative right-hand sides
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # Phase 1: one artificial per row, minimize their sum.
    total = ncols + m
    tableau = [rows[i] + [_ZERO] * m + [rhs[i]] for i in range(m)]
    for i in range(m):
        tableau[i][ncols + i] = _ONE
    basis = [ncols + i for i in range(m)]

    cost1 = [_ZERO] * total
    for j in range(ncols, total):
        cost1[j] = _ONE
    _run_simplex(tableau, basis, cost1)
    infeasibility = sum((tableau[i][-1] for i in range(m) if basis[i] >= ncols), _ZERO)
    if infeasibility != 0:
        return LpResult(status=INFEASIBLE)

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep: list[int] = []
    for i in range(len(tableau)):
        if basis[i] < ncols:
            keep.append(i)
            continue
        pivot_col = next(
            (j for j in range(ncols) if tableau[i][j] != 0),
            None,
        )
        if pivot_col is None:
            continue  # all-zero row: the constraint was redundant
        _pivot(tableau, basis, i, pivot_col)
        keep.append(i)
    tableau = [tableau[i] for i in keep]
    basis = [basis[i] for i in keep]

    # Drop artificial columns entirely.
    for i in range(len(tableau)):
        tableau[i] = tableau[i][:ncols] + [tableau[i][-1]]

    cost2 = [-v for v in c] + [_ZERO] * n_ge  # maximize c.x == minimize -c.x
    status = _run_simplex(tableau, basis, cost2)
    if status == UNBOUNDED:
        return LpResult(status=UNBOUNDED)

    x = [_ZERO] * ncols
    for i, col in enumerate(basis):
        x[col] = tableau[i][-1]
    solution = x[:nvars]
    value = sum((ci * xi for ci, xi in zip(c, solution)), _ZERO)
    return LpResult(status=OPTIMAL, objective=value, x=solution)


def _run_simplex(
    tableau: list[list[Fraction]], basis: list[int], cost: list[Fraction]
) -> str:
    """Minimize cost over the tableau in place; Bland's rule throughout."""
    m = len(tableau)
    width = len(cost)
    # Reduced costs: z[j] = cost[j] - sum_i cost[basis[i]] * tableau[i][j].
    z = list(cost) + [_ZERO]
    for i in range(m):
        cb = cost[basis[i]]
        if cb:
            row = tableau[i]
            for j in range(width + 1):
                if row[j]:
                    z[j] -= cb * row[j]
    while True:
        entering = next((j for j in range(width) if z[j] < 0), None)
        if entering is None:
            return OPTIMAL
        leaving = None
        best: Fraction | None = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leaving])
                ):
                    best = ratio
                    leaving = i
        if leaving is None:
            return UNBOUNDED
        _pivot(tableau, basis, leaving, entering, z)
    # not reached


def _pivot(
    tableau: list[list[Fraction]],
    basis: list[int],
    row: int,
    col: int,
    z: list[Fraction] | None = None,
) -> None:
    pivot_row = tableau[row]
    inv = _ONE / pivot_row[col]
    if inv != 1:
        tableau[row] = pivot_row = [v * inv for v in pivot_row]
    width = len(pivot_row)
    for i, other in enumerate(tableau):
        if i == row:
            continue
        factor = other[col]
        if factor:
            tableau[i] = [a - factor * b for a, b in zip(other, pivot_row)]
    if z is not None:
        factor = z[col]
        if factor:
            for j in range(width):
                z[j] -= factor * pivot_row[j]
    basis[row] = col

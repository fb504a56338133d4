"""Exact linear programming over the rationals.

A dense two-phase tableau simplex with Bland's anti-cycling rule.  All
arithmetic is carried out on exact rationals (``gmpy2.mpq`` internally,
:class:`fractions.Fraction` at the interface), so every answer is exact and
there is no tolerance parameter anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

__all__ = ["LPResult", "OPTIMAL", "UNBOUNDED", "INFEASIBLE", "lp_max", "lp_feasible"]

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_ZERO = mpq(0)
_ONE = mpq(1)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _f(x: mpq) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class LPResult:
    """Outcome of :func:`lp_max`.

    ``value`` and ``point`` are only set when ``status`` is ``"optimal"``.
    """

    status: str
    value: Optional[Fraction] = None
    point: Optional[tuple] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r, c, cost):
        row = self.rows[r]
        piv = row[c]
        if piv != _ONE:
            inv = _ONE / piv
            for j in range(self.ncols):
                if row[j]:
                    row[j] *= inv
            self.rhs[r] *= inv
        b = self.rhs[r]
        nz = [j for j in range(self.ncols) if row[j]]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * b
        f = cost[0][c]
        if f:
            for j in nz:
                cost[0][j] -= f * row[j]
            cost[1] -= f * b
        self.basis[r] = c

    def run(self, cost, allowed):
        # cost = [reduced costs, -objective value]; maximize.
        while True:
            enter = -1
            red = cost[0]
            for j in range(self.ncols):
                if allowed[j] and red[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return OPTIMAL
            leave = -1
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best = ratio
                        leave = i
            if leave < 0:
                return UNBOUNDED
            self.pivot(leave, enter, cost)


def lp_max(objective: Sequence, constraints: Iterable, nonneg: Optional[Iterable[int]] = None) -> LPResult:
    """Maximize ``objective . x`` subject to linear constraints.

    Parameters
    ----------
    objective : sequence of rationals
        Coefficients of the ``m`` decision variables.
    constraints : iterable of ``(coeffs, sense, rhs)``
        ``sense`` is one of ``"<="``, ``">="``, ``"=="``.
    nonneg : iterable of int, optional
        Indices of variables constrained to be nonnegative.  ``None`` means
        every variable is nonnegative; the others are free.

    Returns
    -------
    LPResult
        Exact optimum and an optimal point, or an unbounded/infeasible status.
    """
    m = len(objective)
    if m < 1:
        raise ValueError("an LP needs at least one variable")
    signs = [True] * m if nonneg is None else [False] * m
    if nonneg is not None:
        for j in nonneg:
            signs[j] = True
    # column layout: x+ (all), x- (free ones), slacks, artificials
    neg_cols = {}
    ncols = m
    for j in range(m):
        if not signs[j]:
            neg_cols[j] = ncols
            ncols += 1

    cons = []
    for coeffs, sense, rhs in constraints:
        if len(coeffs) != m:
            raise ValueError("constraint length does not match the objective")
        a = [_q(v) for v in coeffs]
        b = _q(rhs)
        if sense not in ("<=", ">=", "=="):
            raise ValueError(f"unknown constraint sense {sense!r}")
        if b < 0:
            a = [-v for v in a]
            b = -b
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        cons.append((a, sense, b))

    slack_of = []
    for a, sense, b in cons:
        if sense == "==":
            slack_of.append(None)
        else:
            slack_of.append(ncols)
            ncols += 1
    first_art = ncols
    art_of = []
    for (a, sense, b) in cons:
        if sense == "<=":
            art_of.append(None)
        else:
            art_of.append(ncols)
            ncols += 1

    rows, rhs, basis = [], [], []
    for i, (a, sense, b) in enumerate(cons):
        row = [_ZERO] * ncols
        for j in range(m):
            row[j] = a[j]
            if j in neg_cols:
                row[neg_cols[j]] = -a[j]
        if sense == "<=":
            row[slack_of[i]] = _ONE
            basis.append(slack_of[i])
        else:
            if sense == ">=":
                row[slack_of[i]] = -_ONE
            row[art_of[i]] = _ONE
            basis.append(art_of[i])
        rows.append(row)
        rhs.append(b)
    tab = _Tableau(rows, rhs, basis, ncols)

    allowed = [True] * ncols
    if ncols > first_art:
        # phase 1: maximize -(sum of artificials)
        red = [_ZERO] * ncols
        val = _ZERO
        for i, row in enumerate(rows):
            if basis[i] >= first_art:
                for j in range(first_art):
                    if row[j]:
                        red[j] += row[j]
                val += rhs[i]
        cost = [red, val]
        tab.run(cost, allowed)
        if cost[1] != 0:
            return LPResult(INFEASIBLE)
        # drive zero-level artificials out of the basis
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= first_art:
                row = tab.rows[i]
                col = next((j for j in range(first_art) if row[j]), None)
                if col is None:
                    del tab.rows[i]
                    del tab.rhs[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col, [[_ZERO] * ncols, _ZERO])
            i += 1
        for j in range(first_art, ncols):
            allowed[j] = False

    c = [_ZERO] * ncols
    for j in range(m):
        c[j] = _q(objective[j])
        if j in neg_cols:
            c[neg_cols[j]] = -c[j]
    red = list(c)
    val = _ZERO
    for i, row in enumerate(tab.rows):
        cb = c[tab.basis[i]]
        if cb:
            for j in range(ncols):
                if row[j]:
                    red[j] -= cb * row[j]
            val -= cb * tab.rhs[i]
    for j in range(first_art, ncols):
        red[j] = _ZERO
    cost = [red, val]
    if tab.run(cost, allowed) == UNBOUNDED:
        return LPResult(UNBOUNDED)

    level = [_ZERO] * ncols
    for i, bcol in enumerate(tab.basis):
        level[bcol] = tab.rhs[i]
    x = []
    for j in range(m):
        v = level[j]
        if j in neg_cols:
            v -= level[neg_cols[j]]
        x.append(_f(v))
    return LPResult(OPTIMAL, _f(-cost[1]), tuple(x))


def lp_feasible(constraints: Iterable, nvars: int, nonneg: Optional[Iterable[int]] = None) -> LPResult:
    """Find any point satisfying ``constraints`` (zero objective)."""
    return lp_max([0] * nvars, constraints, nonneg)

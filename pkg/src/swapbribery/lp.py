"""Exact rational linear-program feasibility via a phase-1 simplex.

Decides whether ``{a_i . x <= b_i for all i, x >= 0}`` has a real
solution, entirely in Fraction arithmetic. Uses the single-artificial
phase-1 construction with Bland's rule, so it terminates on degenerate
systems. Used by the integer-program search to discard relaxations that
are already infeasible over the rationals.
"""

from __future__ import annotations

from fractions import Fraction

Row = tuple[list[Fraction], Fraction]  # (coefficients, rhs) meaning a.x <= rhs


def lp_feasible(rows: list[Row], n_vars: int) -> dict[int, Fraction] | None:
    """A non-negative rational point satisfying every row, or None.

    Rows are ``a . x <= b`` over variables ``x_0..x_{n_vars-1} >= 0``.
    """
    consts = [Fraction(rhs) for _, rhs in rows]
    if all(c >= 0 for c in consts):
        return {j: Fraction(0) for j in range(n_vars)}

    m = len(rows)
    zero, one = Fraction(0), Fraction(1)
    art = n_vars  # phase-1 artificial variable
    width = n_vars + 1

    # Dictionary form: x_basic[i] = const[i] + sum_j coef[i][j] * x_nonbasic[j].
    # Slack of row i is basic; column layout: original vars then the artificial.
    nonbasic = list(range(n_vars)) + [art]
    basic = [n_vars + 1 + i for i in range(m)]
    coef = [[-Fraction(c) for c in row] + [one] for (row, _) in rows]
    const = consts

    # Objective z = -x0, to be maximized.
    zcoef = [zero] * n_vars + [-one]
    zconst = zero

    def pivot(r: int, c: int):
        nonlocal zconst
        piv = coef[r][c]
        new_row = [-v / piv for v in coef[r]]
        new_row[c] = one / piv
        new_const = -const[r] / piv
        basic[r], nonbasic[c] = nonbasic[c], basic[r]
        coef[r] = new_row
        const[r] = new_const
        for i in range(m):
            if i == r:
                continue
            factor = coef[i][c]
            if factor == 0:
                continue
            const[i] += factor * new_const
            row_i = coef[i]
            for j in range(width):
                row_i[j] = (factor * new_row[j]) if j == c else (row_i[j] + factor * new_row[j])
        factor = zcoef[c]
        if factor != 0:
            zconst += factor * new_const
            for j in range(width):
                zcoef[j] = (factor * new_row[j]) if j == c else (zcoef[j] + factor * new_row[j])

    # Special first pivot: bring the artificial in on the most negative row,
    # which makes every constant non-negative.
    worst = min(range(m), key=lambda i: const[i])
    pivot(worst, width - 1)

    while True:
        enter = None
        for j in range(width):
            if zcoef[j] > 0 and (enter is None or nonbasic[j] < nonbasic[enter]):
                enter = j
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if coef[i][enter] >= 0:
                continue
            ratio = -const[i] / coef[i][enter]
            if leave is None or ratio < best or (ratio == best and basic[i] < basic[leave]):
                leave, best = i, ratio
        if leave is None:  # pragma: no cover - z = -x0 is bounded above by 0
            break
        pivot(leave, enter)

    if zconst != 0:
        return None
    point = {j: zero for j in range(n_vars)}
    for i, var in enumerate(basic):
        if var < n_vars:
            point[var] = const[i]
    return point

"""Exact-rational feasibility for small linear programs.

Two-phase simplex over Fraction with Bland's rule; only feasibility and one
feasible point are needed, never an objective.
"""

from __future__ import annotations

from fractions import Fraction


def feasible_point(A, b):
    """Find t >= 0 with A t <= b (entries rational); None if infeasible.

    Rows with negative b get artificial variables; phase-1 minimizes their
    sum.  Returns a list of Fractions or None.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n

    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    # normalize rows so b >= 0 (flip sign; slack coefficient becomes -1)
    slack_sign = []
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]
            slack_sign.append(-1)
        else:
            slack_sign.append(1)

    art_rows = [i for i in range(m) if slack_sign[i] == -1]
    n_art = len(art_rows)
    total = n + m + n_art  # structural + slack + artificial
    # tableau rows: [coeffs..., rhs]
    tableau = []
    basis = []
    art_index = {}
    for k, i in enumerate(art_rows):
        art_index[i] = n + m + k
    for i in range(m):
        row = A[i] + [Fraction(0)] * (m + n_art) + [b[i]]
        row[n + i] = Fraction(slack_sign[i])
        if i in art_index:
            row[art_index[i]] = Fraction(1)
            basis.append(art_index[i])
        else:
            basis.append(n + i)
        tableau.append(row)

    # phase-1 objective: minimize sum of artificials -> maximize -sum
    obj = [Fraction(0)] * (total + 1)
    for i in art_rows:
        for j in range(total + 1):
            obj[j] -= tableau[i][j]

    def pivot(row, col):
        piv = tableau[row][col]
        tableau[row] = [x / piv for x in tableau[row]]
        for r in range(m):
            if r != row and tableau[r][col] != 0:
                f = tableau[r][col]
                tableau[r] = [x - f * y for x, y in zip(tableau[r], tableau[row])]
        if obj[col] != 0:
            f = obj[col]
            for j in range(total + 1):
                obj[j] -= f * tableau[row][j]
        basis[row] = col

    while True:
        # Bland: smallest index with negative reduced cost
        col = next((j for j in range(total) if obj[j] < 0), None)
        if col is None:
            break
        ratios = [(tableau[i][total] / tableau[i][col], basis[i], i)
                  for i in range(m) if tableau[i][col] > 0]
        if not ratios:
            break  # unbounded phase-1 cannot happen, defensive
        _, _, row = min(ratios)
        pivot(row, col)

    if -obj[total] != 0:
        return None  # artificial sum positive: infeasible

    point = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            point[var] = tableau[i][total]
    return point

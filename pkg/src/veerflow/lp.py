"""Self-contained exact linear programming over rationals.

A small tableau simplex with Bland's rule (no cycling), used for cone
membership certificates.  Only feasibility is ever needed: phase 1
minimizes the sum of artificial variables exactly over Fractions.
"""

from fractions import Fraction


def _pivot(tableau, basis, row, col):
    m = len(tableau)
    piv = tableau[row][col]
    tableau[row] = [x / piv for x in tableau[row]]
    for i in range(m):
        if i != row and tableau[i][col] != 0:
            factor = tableau[i][col]
            tableau[i] = [a - factor * b for a, b in zip(tableau[i], tableau[row])]
    basis[row] = col


def _phase1(eq_rows, rhs):
    """Minimize the sum of artificials for eq_rows . x = rhs, x >= 0.

    Returns (optimum, solution dict col -> value) with exact Fractions.
    """
    m = len(eq_rows)
    n = len(eq_rows[0]) if m else 0
    rows = []
    b = []
    for row, beta in zip(eq_rows, rhs):
        if beta < 0:
            rows.append([-a for a in row])
            b.append(-beta)
        else:
            rows.append(list(row))
            b.append(beta)
    # columns: original n variables then m artificials
    tableau = []
    for i in range(m):
        line = [Fraction(x) for x in rows[i]]
        line += [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        line.append(Fraction(b[i]))
        tableau.append(line)
    basis = [n + i for i in range(m)]
    # cost row: minimize sum of artificials -> reduced costs start as
    # -(sum of constraint rows) on the original columns
    cost = [Fraction(0)] * (n + m + 1)
    for j in range(n + m + 1):
        s = sum(tableau[i][j] for i in range(m))
        cost[j] = (Fraction(1) if n <= j < n + m else Fraction(0)) - s
    tableau.append(cost)

    while True:
        enter = None
        for j in range(n + m):
            if tableau[m][j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tableau[i][enter] > 0:
                ratio = tableau[i][-1] / tableau[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("phase-1 LP is unbounded; artificials keep it bounded")
        _pivot(tableau, basis, leave, enter)

    optimum = -tableau[m][-1]
    solution = {}
    for i in range(m):
        solution[basis[i]] = tableau[i][-1]
    return optimum, solution, n


def feasible_point(eq_rows, rhs, num_vars):
    """A nonnegative rational solution of eq_rows . x = rhs, or None."""
    if not eq_rows:
        return [Fraction(0)] * num_vars
    optimum, solution, n = _phase1(eq_rows, rhs)
    if optimum != 0:
        return None
    x = [Fraction(0)] * num_vars
    for col, val in solution.items():
        if col < num_vars:
            x[col] = val
    return x


def solve_inequalities(a_ge, b_ge, a_eq, b_eq, num_free):
    """A rational x with a_ge . x >= b_ge and a_eq . x = b_eq, or None.

    The x variables are free; internally split as x = u - v with slack
    variables on the inequality rows.
    """
    rows = []
    rhs = []
    n_ge = len(a_ge)
    for row, beta in zip(a_ge, b_ge):
        rows.append(list(row))
        rhs.append(beta)
    for row, beta in zip(a_eq, b_eq):
        rows.append(list(row))
        rhs.append(beta)
    # columns: u (num_free), v (num_free), s (n_ge surplus)
    eq_rows = []
    for i, row in enumerate(rows):
        line = [Fraction(a) for a in row] + [Fraction(-a) for a in row]
        line += [Fraction(-1) if (j == i and i < n_ge) else Fraction(0) for j in range(n_ge)]
        eq_rows.append(line)
    x = feasible_point(eq_rows, rhs, 2 * num_free + n_ge)
    if x is None:
        return None
    return [x[i] - x[num_free + i] for i in range(num_free)]


def integerize(values):
    """Scale rationals to integers by the lcm of denominators."""
    from math import lcm

    denom = 1
    for v in values:
        denom = lcm(denom, Fraction(v).denominator)
    return [int(Fraction(v) * denom) for v in values], denom

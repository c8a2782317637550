"""Best social welfare over obedient correlated advice, by exact simplex.

The mediator samples a full profile of local functions and tells each player
theirs.  Obedience: for every player, recommended function f and alternative
g, switching from f to g must not raise that player's expected utility.  The
maximum social welfare over such distributions is a linear program over the
4^n profile weights, solved with a dense simplex on Fractions using Bland's
rule (no tolerances, no cycling).
"""

from __future__ import annotations

from fractions import Fraction

from .classical import LOCAL_FN_COUNT, PayoffTable, _mutation_step, enumerate_nash, profile_to_code
from .errors import SizeLimitError
from .games import GameSpec, PayoffParams


def _obedience_rows(table: PayoffTable, params: PayoffParams):
    """One row per (player, recommended f, alternative g): u(f) - u(g) >= 0."""
    grid, scale = table.utility_grid(params)
    n = table.n
    rows = []
    for j in range(n):
        step = _mutation_step(n, j)
        for f in range(LOCAL_FN_COUNT):
            for g in range(LOCAL_FN_COUNT):
                if g == f:
                    continue
                row = [Fraction(0)] * table.ncodes
                for code in range(table.ncodes):
                    if (code >> (2 * (n - 1 - j))) & 3 != f:
                        continue
                    dev = code + (g - f) * step
                    row[code] = Fraction(int(grid[code, j]) - int(grid[dev, j]), scale)
                rows.append(row)
    return rows


def _simplex_max(objective, eq_row, ge_rows, start_col):
    """Maximize objective over {x >= 0 : eq_row . x = 1, ge_rows . x >= 0}.

    ``start_col`` must index a feasible vertex (all ge_rows nonnegative
    there), which supplies the initial basis without a phase-1 pass.
    Entering and leaving variables follow Bland's rule throughout.
    """
    nx = len(objective)
    m = len(ge_rows)
    width = nx + m + 1
    # tableau rows: [eq | 0 slacks | rhs], then [-ge | I | 0]
    tableau = [list(eq_row) + [Fraction(0)] * m + [Fraction(1)]]
    for i, row in enumerate(ge_rows):
        trow = [-v for v in row] + [Fraction(0)] * m + [Fraction(0)]
        trow[nx + i] = Fraction(1)
        tableau.append(trow)
    basis = [start_col] + [nx + i for i in range(m)]
    # price column start_col into the identity position of row 0
    pivot_val = tableau[0][start_col]
    assert pivot_val != 0
    tableau[0] = [v / pivot_val for v in tableau[0]]
    for r in range(1, m + 1):
        factor = tableau[r][start_col]
        if factor != 0:
            tableau[r] = [v - factor * p for v, p in zip(tableau[r], tableau[0])]
    assert all(tableau[r][-1] >= 0 for r in range(m + 1)), "start vertex infeasible"
    # reduced costs for maximization: c - c_B . B^{-1} A
    cost = list(objective) + [Fraction(0)] * m + [Fraction(0)]
    cb = [cost[b] for b in basis]
    reduced = [
        cost[c] - sum(cb[r] * tableau[r][c] for r in range(m + 1)) for c in range(width)
    ]
    while True:
        enter = next((c for c in range(width - 1) if reduced[c] > 0), None)
        if enter is None:
            break
        best_ratio = None
        leave = None
        for r in range(m + 1):
            coeff = tableau[r][enter]
            if coeff > 0:
                ratio = tableau[r][-1] / coeff
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio and basis[r] < basis[leave]
                ):
                    best_ratio = ratio
                    leave = r
        assert leave is not None, "LP unbounded; obedience polytope is bounded"
        piv = tableau[leave][enter]
        tableau[leave] = [v / piv for v in tableau[leave]]
        for r in range(m + 1):
            if r != leave and tableau[r][enter] != 0:
                factor = tableau[r][enter]
                tableau[r] = [v - factor * p for v, p in zip(tableau[r], tableau[leave])]
        factor = reduced[enter]
        reduced = [v - factor * p for v, p in zip(reduced, tableau[leave])]
        basis[leave] = enter
    value = sum(cost[b] * tableau[r][-1] for r, b in enumerate(basis))
    solution = [Fraction(0)] * nx
    for r, b in enumerate(basis):
        if b < nx:
            solution[b] = tableau[r][-1]
    return value, solution


def best_correlated_sw(
    game: GameSpec,
    params: PayoffParams,
    *,
    return_distribution: bool = False,
    table: PayoffTable | None = None,
):
    """Maximum social welfare over obedient profile distributions.

    Point masses on pure Nash profiles are feasible, so the program always
    has a solution; that Nash vertex seeds the simplex.
    """
    if game.n > 6:
        raise SizeLimitError("correlated LP is limited to n <= 6 (4^n variables)")
    table = table or PayoffTable(game)
    nash = enumerate_nash(game, params, table=table)
    assert nash, "no pure Nash profile; obedient point masses unavailable"
    start = profile_to_code(nash[0], table.n)
    sw = [table.social_welfare(code, params) for code in range(table.ncodes)]
    eq_row = [Fraction(1)] * table.ncodes
    rows = _obedience_rows(table, params)
    value, solution = _simplex_max(sw, eq_row, rows, start)
    if return_distribution:
        dist = {code: w for code, w in enumerate(solution) if w != 0}
        return value, dist
    return value

"""Known-good reference data for the builtin five-cycle games.

Frozen equilibrium listings used by the verification suite: each row is
(profile, per-player utility coefficients x6 as (a, b) meaning a*v0 + b*v1,
social welfare coefficients x30).  Counts are (profile count, class count)
per payoff-ratio regime.  One social-welfare cell in the original listing
for NC00 ((3,3,1,1,1), low regime) disagreed with the sum of its own per
player utilities and is stored here with the self-consistent value 4*v0 +
11*v1.
"""

from fractions import Fraction

THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)

# regimes: low = [0, 1/3], mid = [1/3, 1/2], high = [1/2, 1]
REGIMES = (
    ("low", Fraction(0), THIRD),
    ("mid", THIRD, HALF),
    ("high", HALF, Fraction(1)),
)

NC00_NASH_COUNTS = {"low": (20, 4), "mid": (25, 4), "high": (40, 6)}

NC00_NASH_ROWS = {
    "low": [
        ((2, 1, 1, 1, 1), [(2, 1), (0, 3), (0, 3), (0, 3), (0, 3)], (2, 13)),
        ((3, 3, 1, 1, 1), [(2, 1), (2, 1), (0, 3), (0, 3), (0, 3)], (4, 11)),
        ((3, 1, 3, 1, 1), [(2, 1), (0, 3), (2, 1), (0, 3), (0, 3)], (4, 11)),
        ((3, 3, 3, 3, 1), [(2, 3), (2, 3), (2, 3), (2, 3), (0, 5)], (8, 17)),
    ],
    "mid": [
        ((1, 3, 1, 1, 0), [(0, 5), (2, 3), (0, 5), (0, 5), (5, 0)], (7, 18)),
        ((2, 2, 1, 1, 1), [(3, 2), (3, 2), (0, 5), (0, 5), (0, 5)], (6, 19)),
        ((3, 3, 1, 1, 1), [(2, 1), (2, 1), (0, 3), (0, 3), (0, 3)], (4, 11)),
        ((3, 3, 3, 3, 1), [(2, 3), (2, 3), (2, 3), (2, 3), (0, 5)], (8, 17)),
    ],
    "high": [
        ((3, 2, 1, 1, 0), [(2, 3), (4, 1), (0, 5), (0, 5), (5, 0)], (11, 14)),
        ((1, 3, 1, 1, 0), [(0, 5), (2, 3), (0, 5), (0, 5), (5, 0)], (7, 18)),
        ((2, 2, 1, 1, 1), [(3, 2), (3, 2), (0, 5), (0, 5), (0, 5)], (6, 19)),
        ((3, 3, 1, 2, 1), [(2, 3), (2, 3), (0, 5), (4, 1), (0, 5)], (8, 17)),
        ((3, 3, 3, 3, 1), [(2, 3), (2, 3), (2, 3), (2, 3), (0, 5)], (8, 17)),
        ((3, 2, 3, 2, 2), [(2, 3), (4, 1), (2, 3), (3, 2), (3, 2)], (14, 11)),
    ],
}

# closed ratio interval on which each listed profile is a Nash equilibrium
NC00_NASH_INTERVALS = {
    (2, 1, 1, 1, 1): (Fraction(0), THIRD),
    (3, 1, 3, 1, 1): (Fraction(0), THIRD),
    (3, 3, 1, 1, 1): (Fraction(0), HALF),
    (3, 3, 3, 3, 1): (Fraction(0), Fraction(1)),
    (1, 3, 1, 1, 0): (THIRD, Fraction(1)),
    (2, 2, 1, 1, 1): (THIRD, Fraction(1)),
    (3, 2, 1, 1, 0): (HALF, Fraction(1)),
    (3, 3, 1, 2, 1): (HALF, Fraction(1)),
    (3, 2, 3, 2, 2): (HALF, Fraction(1)),
}

NC00_PARETO_COUNTS = {"low": (121, 18), "mid": (91, 14), "high": (81, 12)}

NC00_PARETO_ROWS = {
    "low": [
        ((2, 1, 1, 0, 0), [(3, 2), (0, 5), (0, 5), (5, 0), (5, 0)], (13, 12)),
        ((3, 3, 2, 0, 0), [(1, 2), (1, 2), (1, 2), (3, 0), (3, 0)], (9, 6)),
        ((3, 2, 1, 1, 0), [(2, 3), (4, 1), (0, 5), (0, 5), (5, 0)], (11, 14)),
        ((1, 3, 1, 1, 0), [(0, 5), (2, 3), (0, 5), (0, 5), (5, 0)], (7, 18)),
        ((1, 3, 3, 1, 0), [(0, 5), (1, 4), (1, 4), (0, 5), (5, 0)], (7, 18)),
        ((2, 3, 1, 2, 0), [(3, 2), (1, 4), (0, 5), (3, 2), (5, 0)], (12, 13)),
        ((3, 2, 2, 3, 0), [(1, 4), (4, 1), (4, 1), (1, 4), (5, 0)], (15, 10)),
        ((2, 1, 1, 1, 1), [(2, 1), (0, 3), (0, 3), (0, 3), (0, 3)], (2, 13)),
        ((2, 2, 1, 1, 1), [(3, 2), (3, 2), (0, 5), (0, 5), (0, 5)], (6, 19)),
        ((3, 3, 1, 1, 1), [(2, 1), (2, 1), (0, 3), (0, 3), (0, 3)], (4, 11)),
        ((3, 1, 3, 1, 1), [(2, 1), (0, 3), (2, 1), (0, 3), (0, 3)], (4, 11)),
        ((3, 3, 1, 2, 1), [(2, 3), (2, 3), (0, 5), (4, 1), (0, 5)], (8, 17)),
        ((3, 3, 2, 2, 1), [(2, 3), (1, 4), (3, 2), (3, 2), (0, 5)], (9, 16)),
        ((3, 2, 3, 2, 1), [(1, 2), (2, 1), (2, 1), (2, 1), (0, 3)], (7, 8)),
        ((3, 2, 2, 3, 1), [(1, 2), (1, 2), (1, 2), (1, 2), (0, 3)], (4, 11)),
        ((3, 3, 3, 3, 1), [(2, 3), (2, 3), (2, 3), (2, 3), (0, 5)], (8, 17)),
        ((3, 2, 3, 2, 2), [(2, 3), (4, 1), (2, 3), (3, 2), (3, 2)], (14, 11)),
        ((3, 3, 3, 3, 3), [(1, 4), (1, 4), (1, 4), (1, 4), (1, 4)], (5, 20)),
    ],
    "mid": [
        ((2, 1, 1, 0, 0), [(3, 2), (0, 5), (0, 5), (5, 0), (5, 0)], (13, 12)),
        ((3, 2, 1, 1, 0), [(2, 3), (4, 1), (0, 5), (0, 5), (5, 0)], (11, 14)),
        ((1, 3, 1, 1, 0), [(0, 5), (2, 3), (0, 5), (0, 5), (5, 0)], (7, 18)),
        ((1, 3, 3, 1, 0), [(0, 5), (1, 4), (1, 4), (0, 5), (5, 0)], (7, 18)),
        ((2, 3, 1, 2, 0), [(3, 2), (1, 4), (0, 5), (3, 2), (5, 0)], (12, 13)),
        ((3, 2, 2, 3, 0), [(1, 4), (4, 1), (4, 1), (1, 4), (5, 0)], (15, 10)),
        ((2, 2, 1, 1, 1), [(3, 2), (3, 2), (0, 5), (0, 5), (0, 5)], (6, 19)),
        ((3, 3, 1, 1, 1), [(2, 1), (2, 1), (0, 3), (0, 3), (0, 3)], (4, 11)),
        ((3, 3, 1, 2, 1), [(2, 3), (2, 3), (0, 5), (4, 1), (0, 5)], (8, 17)),
        ((3, 3, 2, 2, 1), [(2, 3), (1, 4), (3, 2), (3, 2), (0, 5)], (9, 16)),
        ((3, 2, 2, 3, 1), [(1, 2), (1, 2), (1, 2), (1, 2), (0, 3)], (4, 11)),
        ((3, 3, 3, 3, 1), [(2, 3), (2, 3), (2, 3), (2, 3), (0, 5)], (8, 17)),
        ((3, 2, 3, 2, 2), [(2, 3), (4, 1), (2, 3), (3, 2), (3, 2)], (14, 11)),
        ((3, 3, 3, 3, 3), [(1, 4), (1, 4), (1, 4), (1, 4), (1, 4)], (5, 20)),
    ],
    "high": [
        ((2, 1, 1, 0, 0), [(3, 2), (0, 5), (0, 5), (5, 0), (5, 0)], (13, 12)),
        ((3, 2, 1, 1, 0), [(2, 3), (4, 1), (0, 5), (0, 5), (5, 0)], (11, 14)),
        ((1, 3, 1, 1, 0), [(0, 5), (2, 3), (0, 5), (0, 5), (5, 0)], (7, 18)),
        ((1, 3, 3, 1, 0), [(0, 5), (1, 4), (1, 4), (0, 5), (5, 0)], (7, 18)),
        ((2, 3, 1, 2, 0), [(3, 2), (1, 4), (0, 5), (3, 2), (5, 0)], (12, 13)),
        ((3, 2, 2, 3, 0), [(1, 4), (4, 1), (4, 1), (1, 4), (5, 0)], (15, 10)),
        ((2, 2, 1, 1, 1), [(3, 2), (3, 2), (0, 5), (0, 5), (0, 5)], (6, 19)),
        ((3, 3, 1, 2, 1), [(2, 3), (2, 3), (0, 5), (4, 1), (0, 5)], (8, 17)),
        ((3, 3, 2, 2, 1), [(2, 3), (1, 4), (3, 2), (3, 2), (0, 5)], (9, 16)),
        ((3, 3, 3, 3, 1), [(2, 3), (2, 3), (2, 3), (2, 3), (0, 5)], (8, 17)),
        ((3, 2, 3, 2, 2), [(2, 3), (4, 1), (2, 3), (3, 2), (3, 2)], (14, 11)),
        ((3, 3, 3, 3, 3), [(1, 4), (1, 4), (1, 4), (1, 4), (1, 4)], (5, 20)),
    ],
}

NC01_NASH_COUNTS = {"mid": (76, 13), "high": (40, 6)}

NC01_NASH_ROWS = {
    "mid": [
        ((1, 1, 2, 0, 0), [(0, 5), (0, 5), (2, 3), (5, 0), (5, 0)], (12, 13)),
        ((3, 2, 1, 1, 0), [(3, 2), (3, 2), (0, 5), (0, 5), (5, 0)], (11, 14)),
        ((1, 3, 1, 1, 0), [(0, 5), (3, 2), (0, 5), (0, 5), (5, 0)], (8, 17)),
        ((3, 2, 2, 1, 0), [(2, 3), (2, 3), (2, 3), (0, 5), (5, 0)], (11, 14)),
        ((1, 3, 3, 1, 0), [(0, 5), (2, 3), (2, 3), (0, 5), (5, 0)], (9, 16)),
        ((1, 3, 1, 2, 0), [(0, 5), (2, 3), (0, 5), (2, 3), (5, 0)], (9, 16)),
        ((2, 1, 3, 2, 0), [(2, 3), (0, 5), (2, 3), (2, 3), (5, 0)], (11, 14)),
        ((2, 2, 1, 1, 1), [(3, 2), (2, 3), (0, 5), (0, 5), (0, 5)], (5, 20)),
        ((3, 3, 1, 2, 1), [(2, 3), (3, 2), (0, 5), (3, 2), (0, 5)], (8, 17)),
        ((3, 3, 2, 2, 1), [(3, 2), (2, 3), (2, 3), (3, 2), (0, 5)], (10, 15)),
        ((3, 3, 3, 3, 1), [(3, 2), (2, 3), (3, 2), (3, 2), (0, 5)], (11, 14)),
        ((3, 2, 3, 2, 2), [(3, 2), (3, 2), (3, 2), (3, 2), (2, 3)], (14, 11)),
        ((3, 3, 3, 3, 3), [(2, 3), (2, 3), (2, 3), (2, 3), (2, 3)], (10, 15)),
    ],
    "high": [
        ((3, 2, 1, 1, 0), [(3, 2), (3, 2), (0, 5), (0, 5), (5, 0)], (11, 14)),
        ((1, 3, 1, 1, 0), [(0, 5), (3, 2), (0, 5), (0, 5), (5, 0)], (8, 17)),
        ((2, 2, 1, 1, 1), [(3, 2), (2, 3), (0, 5), (0, 5), (0, 5)], (5, 20)),
        ((3, 3, 1, 2, 1), [(2, 3), (3, 2), (0, 5), (3, 2), (0, 5)], (8, 17)),
        ((3, 3, 3, 3, 1), [(3, 2), (2, 3), (3, 2), (3, 2), (0, 5)], (11, 14)),
        ((3, 2, 3, 2, 2), [(3, 2), (3, 2), (3, 2), (3, 2), (2, 3)], (14, 11)),
    ],
}

# best pure-Nash social welfare at v0=2/3, v1=1 and its 2-decimal rendering
BEST_CSW = {
    "NC00_C5": (Fraction(23, 30), "0.77"),
    "NC01_C5": (Fraction(7, 9), "0.78"),
    "NC000_C5": (None, "0.72"),  # exact value computed, pinned by rounding
    "NC00010_C5": (None, "0.72"),
}

QUANTUM_THRESHOLDS = {
    "NC00_C5": Fraction(1, 2),
    "NC01_C5": Fraction(2, 3),
    "NC00010_C5": Fraction(8, 13),
}

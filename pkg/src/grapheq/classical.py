"""Exact enumeration and classification of deterministic classical strategies.

Each player picks one of four local functions of their type bit (constant 0,
constant 1, identity, negation, encoded 0..3).  Profiles are scanned
exhaustively with rational arithmetic: Nash and Pareto sets, symmetry
orbits, best social welfare, and the breakpoint structure of the equilibrium
set as a function of the payoff ratio v0/v1.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EmptyEquilibriumSetError, SizeLimitError
from .games import GameSpec, PayoffParams

# local function code x own type bit -> answer bit
_ANSWER = ((0, 0), (1, 1), (0, 1), (1, 0))
LOCAL_FN_COUNT = 4


def apply_local(code: int, type_bit: int) -> int:
    return _ANSWER[code][type_bit]


def profile_to_code(profile, n: int) -> int:
    code = 0
    for f in profile:
        code = (code << 2) | f
    return code


def code_to_profile(code: int, n: int) -> tuple[int, ...]:
    return tuple((code >> (2 * (n - 1 - j))) & 3 for j in range(n))


@dataclass(frozen=True)
class LinearPayoff:
    """Expected utility as a rational linear form in (v0, v1).

    value = win_v0*v0 + win_v1*v1 - penalty*(lose_v0*v0 + lose_v1*v1); the
    four coefficients are nonnegative and sum to the total question weight 1.
    """

    win_v0: Fraction
    win_v1: Fraction
    lose_v0: Fraction
    lose_v1: Fraction

    def value(self, params: PayoffParams) -> Fraction:
        win = self.win_v0 * params.v0 + self.win_v1 * params.v1
        lose = self.lose_v0 * params.v0 + self.lose_v1 * params.v1
        return win - params.penalty * lose

    def win_coefficients(self) -> tuple[Fraction, Fraction]:
        return self.win_v0, self.win_v1


def average_payoff(payoffs) -> LinearPayoff:
    payoffs = list(payoffs)
    n = len(payoffs)
    return LinearPayoff(
        sum(p.win_v0 for p in payoffs) / n,
        sum(p.win_v1 for p in payoffs) / n,
        sum(p.lose_v0 for p in payoffs) / n,
        sum(p.lose_v1 for p in payoffs) / n,
    )


@dataclass(frozen=True)
class ProfileEvaluation:
    profile: tuple[int, ...]
    payoffs: tuple[LinearPayoff, ...]
    win_bits: tuple[int, ...]  # aligned with game.questions
    p_win: Fraction

    def utilities(self, params: PayoffParams) -> tuple[Fraction, ...]:
        return tuple(p.value(params) for p in self.payoffs)

    def social_welfare(self, params: PayoffParams) -> Fraction:
        utils = self.utilities(params)
        return sum(utils) / len(utils)


def evaluate(game: GameSpec, profile) -> ProfileEvaluation:
    """Score one profile: per-question win bits and per-player payoff forms."""
    profile = tuple(profile)
    n = game.n
    if len(profile) != n:
        raise ValueError(f"profile must have length {n}")
    acc = [[Fraction(0)] * 4 for _ in range(n)]  # win0, win1, lose0, lose1
    win_bits = []
    p_win = Fraction(0)
    for q in game.questions:
        answers = [apply_local(profile[j], q.type_bits[j]) for j in range(n)]
        win = sum(answers[j] for j in q.involved) % 2 == q.parity
        win_bits.append(int(win))
        if win:
            p_win += q.weight
        for j in range(n):
            slot = (0 if win else 2) + answers[j]
            acc[j][slot] += q.weight
    payoffs = tuple(LinearPayoff(a[0], a[1], a[2], a[3]) for a in acc)
    return ProfileEvaluation(profile, payoffs, tuple(win_bits), p_win)


class PayoffTable:
    """Integer-scaled payoff coefficients for every profile of a game.

    Weights are brought over the common denominator ``scale`` so the four
    coefficient arrays hold exact integers; Fractions are reconstructed on
    access.  Used by every enumeration path.
    """

    def __init__(self, game: GameSpec):
        n = game.n
        if 4**n > 4**8:
            raise SizeLimitError(f"profile table for n={n} exceeds the exact-search limit")
        self.game = game
        self.n = n
        self.ncodes = 4**n
        self.scale = math.lcm(*(q.weight.denominator for q in game.questions))
        self.weight_nums = [
            q.weight.numerator * (self.scale // q.weight.denominator) for q in game.questions
        ]
        codes = np.arange(self.ncodes, dtype=np.int64)
        answer_lut = np.array(_ANSWER, dtype=np.uint8)
        digits = [((codes >> (2 * (n - 1 - j))) & 3).astype(np.int64) for j in range(n)]
        self.win0 = np.zeros((self.ncodes, n), dtype=np.int64)
        self.win1 = np.zeros((self.ncodes, n), dtype=np.int64)
        self.lose0 = np.zeros((self.ncodes, n), dtype=np.int64)
        self.lose1 = np.zeros((self.ncodes, n), dtype=np.int64)
        self.win_bits = np.zeros((self.ncodes, len(game.questions)), dtype=bool)
        self.pwin_num = np.zeros(self.ncodes, dtype=np.int64)
        for qi, q in enumerate(game.questions):
            answers = [answer_lut[digits[j], q.type_bits[j]] for j in range(n)]
            parity = np.zeros(self.ncodes, dtype=np.uint8)
            for j in q.involved:
                parity ^= answers[j]
            win = parity == q.parity
            w = self.weight_nums[qi]
            self.win_bits[:, qi] = win
            self.pwin_num += np.where(win, w, 0)
            for j in range(n):
                one = answers[j].astype(bool)
                self.win0[:, j] += np.where(win & ~one, w, 0)
                self.win1[:, j] += np.where(win & one, w, 0)
                self.lose0[:, j] += np.where(~win & ~one, w, 0)
                self.lose1[:, j] += np.where(~win & one, w, 0)

    def payoff(self, code: int, player: int) -> LinearPayoff:
        d = self.scale
        return LinearPayoff(
            Fraction(int(self.win0[code, player]), d),
            Fraction(int(self.win1[code, player]), d),
            Fraction(int(self.lose0[code, player]), d),
            Fraction(int(self.lose1[code, player]), d),
        )

    def p_win(self, code: int) -> Fraction:
        return Fraction(int(self.pwin_num[code]), self.scale)

    def utility_grid(self, params: PayoffParams) -> tuple[np.ndarray, int]:
        """Utilities of all (profile, player) pairs times ``scale * lcm``.

        Falls back to arbitrary-precision objects if int64 could overflow.
        """
        lden = math.lcm(
            params.v0.denominator,
            params.v1.denominator,
            (params.penalty * params.v0).denominator,
            (params.penalty * params.v1).denominator,
        )
        a0 = int(params.v0 * lden)
        a1 = int(params.v1 * lden)
        g0 = int(params.penalty * params.v0 * lden)
        g1 = int(params.penalty * params.v1 * lden)
        bound = self.scale * (abs(a0) + abs(a1) + abs(g0) + abs(g1))
        if bound < 2**62:
            grid = self.win0 * a0 + self.win1 * a1 - self.lose0 * g0 - self.lose1 * g1
        else:
            grid = (
                self.win0.astype(object) * a0
                + self.win1.astype(object) * a1
                - self.lose0.astype(object) * g0
                - self.lose1.astype(object) * g1
            )
        return grid, self.scale * lden

    def social_welfare(self, code: int, params: PayoffParams) -> Fraction:
        grid_row = [self.payoff(code, j).value(params) for j in range(self.n)]
        return sum(grid_row) / self.n


def _mutation_step(n: int, player: int) -> int:
    return 1 << (2 * (n - 1 - player))


def _scan_nash(grid, n, lo, hi, strict) -> list[int]:
    out = []
    for code in range(lo, hi):
        ok = True
        for j in range(n):
            f = (code >> (2 * (n - 1 - j))) & 3
            base = grid[code, j]
            step = _mutation_step(n, j)
            anchor = code - f * step
            for g in range(LOCAL_FN_COUNT):
                if g == f:
                    continue
                dev = grid[anchor + g * step, j]
                if dev > base or (strict and dev == base):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(code)
    return out


def _scan_pareto(grid, n, lo, hi) -> list[int]:
    # keep profiles where every improving unilateral deviation strictly hurts
    # someone else
    out = []
    for code in range(lo, hi):
        ok = True
        for j in range(n):
            f = (code >> (2 * (n - 1 - j))) & 3
            base = grid[code, j]
            step = _mutation_step(n, j)
            anchor = code - f * step
            for g in range(LOCAL_FN_COUNT):
                if g == f:
                    continue
                dev_code = anchor + g * step
                if grid[dev_code, j] > base:
                    hurts = any(
                        grid[dev_code, k] < grid[code, k] for k in range(n) if k != j
                    )
                    if not hurts:
                        ok = False
                        break
            if not ok:
                break
        if ok:
            out.append(code)
    return out


def _chunked_scan(worker, grid, n, ncodes, threads, *extra) -> list[int]:
    if threads <= 1:
        return worker(grid, n, 0, ncodes, *extra)
    bounds = np.linspace(0, ncodes, threads + 1, dtype=int)
    chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, grid, n, a, b, *extra) for a, b in chunks]
        out: list[int] = []
        for fut in futures:  # chunk order keeps the output canonical
            out.extend(fut.result())
    return out


def enumerate_nash(
    game: GameSpec,
    params: PayoffParams,
    *,
    strict: bool = False,
    threads: int = 1,
    table: PayoffTable | None = None,
) -> list[tuple[int, ...]]:
    """All profiles with no improving unilateral deviation, in lex order.

    Deviations that merely tie do not break an equilibrium; pass
    ``strict=True`` to experiment with the strict variant.
    """
    table = table or PayoffTable(game)
    grid, _ = table.utility_grid(params)
    codes = _chunked_scan(_scan_nash, grid, table.n, table.ncodes, threads, strict)
    return [code_to_profile(c, table.n) for c in codes]


def enumerate_pareto(
    game: GameSpec,
    params: PayoffParams,
    *,
    alternative: bool = False,
    threads: int = 1,
    table: PayoffTable | None = None,
) -> list[tuple[int, ...]]:
    """Profiles where improving unilateral deviations always hurt someone.

    ``alternative=True`` switches to the joint-deviation reading instead:
    profiles whose utility vector is not Pareto dominated by any other
    profile.  The unilateral reading is the one that reproduces the
    reference tables; the alternative is kept for comparison.
    """
    table = table or PayoffTable(game)
    grid, _ = table.utility_grid(params)
    if alternative:
        codes = []
        for code in range(table.ncodes):
            ge = (grid >= grid[code]).all(axis=1)
            gt = (grid > grid[code]).any(axis=1)
            if not np.any(ge & gt):
                codes.append(code)
    else:
        codes = _chunked_scan(_scan_pareto, grid, table.n, table.ncodes, threads)
    return [code_to_profile(c, table.n) for c in codes]


# ---------------------------------------------------------------------------
# ratio regimes: the Nash condition of a profile is a finite set of linear
# inequalities in r = v0/v1, so each profile is Nash on a closed interval


def nash_interval(
    table: PayoffTable, code: int, penalty: Fraction = Fraction(0)
) -> tuple[Fraction, Fraction] | None:
    """Closed interval of r = v0/v1 in [0, 1] on which ``code`` is Nash."""
    n = table.n
    d = table.scale
    lo, hi = Fraction(0), Fraction(1)
    for j in range(n):
        f = (code >> (2 * (n - 1 - j))) & 3
        step = _mutation_step(n, j)
        anchor = code - f * step
        for g in range(LOCAL_FN_COUNT):
            if g == f:
                continue
            dev = anchor + g * step
            # utility difference (dev - base) = a*r + b must stay <= 0
            a = Fraction(int(table.win0[dev, j] - table.win0[code, j]), d) - penalty * Fraction(
                int(table.lose0[dev, j] - table.lose0[code, j]), d
            )
            b = Fraction(int(table.win1[dev, j] - table.win1[code, j]), d) - penalty * Fraction(
                int(table.lose1[dev, j] - table.lose1[code, j]), d
            )
            if a > 0:
                hi = min(hi, -b / a)
            elif a < 0:
                lo = max(lo, -b / a)
            elif b > 0:
                return None
            if lo > hi:
                return None
    return lo, hi


@dataclass(frozen=True)
class RegimeSegment:
    lower: Fraction
    upper: Fraction
    codes: tuple[int, ...]


@dataclass(frozen=True)
class RegimeAnalysis:
    breakpoints: tuple[Fraction, ...]
    segments: tuple[RegimeSegment, ...]
    at_breakpoints: dict[Fraction, tuple[int, ...]]
    intervals: dict[int, tuple[Fraction, Fraction]]

    def codes_on(self, lower: Fraction, upper: Fraction) -> tuple[int, ...]:
        """Profiles that are Nash throughout (lower, upper)."""
        return tuple(
            c for c, (lo, hi) in sorted(self.intervals.items()) if lo <= lower and hi >= upper
        )


def ratio_regimes(
    game: GameSpec, penalty: Fraction = Fraction(0), table: PayoffTable | None = None
) -> RegimeAnalysis:
    """Breakpoints of the Nash set over r = v0/v1 with v1 normalized to 1.

    Profiles are Nash on closed intervals, so the equilibrium set at a
    breakpoint is the union of the sets on the two adjacent open intervals.
    """
    table = table or PayoffTable(game)
    intervals: dict[int, tuple[Fraction, Fraction]] = {}
    for code in range(table.ncodes):
        span = nash_interval(table, code, penalty)
        if span is not None:
            intervals[code] = span
    points = sorted(
        {x for lo, hi in intervals.values() for x in (lo, hi) if Fraction(0) < x < Fraction(1)}
    )
    cuts = [Fraction(0)] + points + [Fraction(1)]
    segments = []
    for a, b in zip(cuts[:-1], cuts[1:]):
        codes = tuple(c for c, (lo, hi) in sorted(intervals.items()) if lo <= a and hi >= b)
        segments.append(RegimeSegment(a, b, codes))
    at_points = {
        r: tuple(c for c, (lo, hi) in sorted(intervals.items()) if lo <= r <= hi) for r in points
    }
    return RegimeAnalysis(tuple(points), tuple(segments), at_points, intervals)


# ---------------------------------------------------------------------------
# symmetries and orbits


@dataclass(frozen=True)
class SymmetryGroup:
    """Player permutations; perm maps player j to perm[j]."""

    permutations: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.permutations)

    def apply(self, perm: tuple[int, ...], profile: tuple[int, ...]) -> tuple[int, ...]:
        moved = [0] * len(profile)
        for j, f in enumerate(profile):
            moved[perm[j]] = f
        return tuple(moved)


def _permuted_question_key(q, perm):
    tbits = [0] * len(q.type_bits)
    for j, b in enumerate(q.type_bits):
        tbits[perm[j]] = b
    return tuple(tbits), frozenset(perm[j] for j in q.involved), q.parity, q.weight


def game_automorphisms(game: GameSpec) -> SymmetryGroup:
    """Player permutations mapping the weighted question multiset to itself."""
    n = game.n
    if n > 8:
        raise SizeLimitError("automorphism search is factorial; limited to n <= 8")
    target = Counter(
        (q.type_bits, q.involved, q.parity, q.weight) for q in game.questions
    )
    perms = []
    for perm in itertools.permutations(range(n)):
        if Counter(_permuted_question_key(q, perm) for q in game.questions) == target:
            perms.append(perm)
    return SymmetryGroup(tuple(perms))


def reporting_symmetries(game: GameSpec) -> SymmetryGroup:
    """Permutations preserving the graph and the weighted type multiset.

    This is the relabeling group used to fold equilibrium listings into
    orbit classes.  It can be larger than the strict question-preserving
    group when a reflection keeps every type pattern but reroutes involved
    sets; classes are always taken inside the equilibrium set, so members
    of a reported class are equilibria by construction.
    """
    n = game.n
    if n > 8:
        raise SizeLimitError("symmetry search is factorial; limited to n <= 8")
    type_target = Counter((q.type_bits, q.weight) for q in game.questions)
    edges = game.graph.edges
    perms = []
    for perm in itertools.permutations(range(n)):
        mapped = frozenset(
            (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges
        )
        if mapped != edges:
            continue
        counted = Counter()
        for q in game.questions:
            tbits = [0] * n
            for j, b in enumerate(q.type_bits):
                tbits[perm[j]] = b
            counted[(tuple(tbits), q.weight)] += 1
        if counted == type_target:
            perms.append(perm)
    return SymmetryGroup(tuple(perms))


@dataclass(frozen=True)
class Orbit:
    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]


def partition_orbits(profiles, group: SymmetryGroup) -> list[Orbit]:
    """Partition ``profiles`` into classes under the group action."""
    pool = {tuple(p) for p in profiles}
    orbits = []
    seen: set[tuple[int, ...]] = set()
    for p in sorted(pool):
        if p in seen:
            continue
        members = sorted({g_p for perm in group.permutations if (g_p := group.apply(perm, p)) in pool})
        seen.update(members)
        orbits.append(Orbit(members[0], tuple(members)))
    return orbits


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class EquilibriumEntry:
    profile: tuple[int, ...]
    payoffs: tuple[LinearPayoff, ...]
    p_win: Fraction
    orbit_id: int


@dataclass(frozen=True)
class EquilibriumReport:
    criterion: str
    game_name: str
    params: PayoffParams | None
    regime: tuple[Fraction, Fraction] | None
    entries: tuple[EquilibriumEntry, ...]
    orbits: tuple[Orbit, ...]

    @property
    def profile_count(self) -> int:
        return len(self.entries)

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)


def build_report(
    game: GameSpec,
    profiles,
    criterion: str,
    params: PayoffParams | None = None,
    regime: tuple[Fraction, Fraction] | None = None,
    table: PayoffTable | None = None,
    group: SymmetryGroup | None = None,
) -> EquilibriumReport:
    table = table or PayoffTable(game)
    group = group or reporting_symmetries(game)
    profiles = sorted(tuple(p) for p in profiles)
    orbits = partition_orbits(profiles, group)
    orbit_of = {m: i for i, orb in enumerate(orbits) for m in orb.members}
    entries = []
    for p in profiles:
        code = profile_to_code(p, table.n)
        payoffs = tuple(table.payoff(code, j) for j in range(table.n))
        entries.append(EquilibriumEntry(p, payoffs, table.p_win(code), orbit_of[p]))
    return EquilibriumReport(criterion, game.name, params, regime, tuple(entries), tuple(orbits))


def best_csw(
    game: GameSpec,
    params: PayoffParams,
    criterion: str = "nash",
    *,
    table: PayoffTable | None = None,
) -> tuple[Fraction, list[tuple[int, ...]]]:
    """Best social welfare over the criterion's profiles, with the argmax set."""
    table = table or PayoffTable(game)
    if criterion == "nash":
        profiles = enumerate_nash(game, params, table=table)
    elif criterion == "pareto":
        profiles = enumerate_pareto(game, params, table=table)
    else:
        raise ValueError(f"unknown criterion {criterion!r}")
    if not profiles:
        raise EmptyEquilibriumSetError(f"no {criterion} profile for {game.name}")
    best: Fraction | None = None
    argmax: list[tuple[int, ...]] = []
    for p in profiles:
        sw = table.social_welfare(profile_to_code(p, table.n), params)
        if best is None or sw > best:
            best, argmax = sw, [p]
        elif sw == best:
            argmax.append(p)
    return best, argmax

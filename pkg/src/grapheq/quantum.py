"""Quantum advice from the graph state: guarantees and the equilibrium test.

Each player measures their graph-state qubit in X (type 1) or Z (type 0);
the joint answer law per question comes from the stabilizer algebra.  This
module certifies the win-with-probability-1 property, uniform marginals and
restricted belief invariance, and decides when following the advice is a
Nash equilibrium, both via the involvement threshold and via an exhaustive
scan over local post-processing deviations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import UnsupportedGameError
from .games import GameSpec, PayoffParams, p_involved
from .stabilizer import OutcomeLaw, outcome_law


def bases_for_types(type_bits) -> tuple[str, ...]:
    return tuple("X" if b else "Z" for b in type_bits)


@dataclass(frozen=True, eq=False)
class AdviceCorrelation:
    """Per-question exact answer laws of the graph-state measurement."""

    game: GameSpec
    laws: dict[str, OutcomeLaw]

    def law(self, qid: str) -> OutcomeLaw:
        return self.laws[qid]


def advice_correlation(game: GameSpec) -> AdviceCorrelation:
    if not game.stabilizer_backed():
        missing = [q.qid for q in game.questions if q.generator_set is None]
        raise UnsupportedGameError(f"questions without generator sets: {missing}")
    laws = {q.qid: outcome_law(game.graph, bases_for_types(q.type_bits)) for q in game.questions}
    return AdviceCorrelation(game, laws)


@dataclass(frozen=True)
class PerfectWinReport:
    win_probability: dict[str, Fraction]
    all_perfect: bool
    # with a certain win, every player receives exactly v_{answer}
    payoff_certain: bool


def verify_perfect_win(game: GameSpec, advice: AdviceCorrelation | None = None) -> PerfectWinReport:
    """Check that the advice wins every question with probability exactly 1."""
    advice = advice or advice_correlation(game)
    probs = {}
    for q in game.questions:
        dist = advice.law(q.qid).parity_distribution(q.involved)
        probs[q.qid] = dist.get(q.parity, Fraction(0))
    perfect = all(p == 1 for p in probs.values())
    return PerfectWinReport(probs, perfect, perfect)


@dataclass(frozen=True)
class BeliefInvarianceReport:
    uniform_violations: tuple[tuple[str, int], ...]  # (question id, player)
    invariance_violations: tuple[tuple[int, str, str], ...]  # (player, qid, qid)

    @property
    def ok(self) -> bool:
        return not self.uniform_violations and not self.invariance_violations


def verify_uniform_and_belief_invariant(
    game: GameSpec, advice: AdviceCorrelation | None = None
) -> BeliefInvarianceReport:
    """Uniform single-player advice marginals, identical across equal own types.

    The second check is belief invariance restricted to the game's type set:
    what a player sees depends only on their own type bit.
    """
    advice = advice or advice_correlation(game)
    uniform_bad = []
    marginals: dict[tuple[int, str], dict] = {}
    for q in game.questions:
        law = advice.law(q.qid)
        for j in range(game.n):
            marg = law.marginal([j])
            marginals[(j, q.qid)] = marg
            if marg.get((0,), Fraction(0)) != Fraction(1, 2):
                uniform_bad.append((q.qid, j))
    invariance_bad = []
    for j in range(game.n):
        for qa, qb in itertools.combinations(game.questions, 2):
            if qa.type_bits[j] == qb.type_bits[j]:
                if marginals[(j, qa.qid)] != marginals[(j, qb.qid)]:
                    invariance_bad.append((j, qa.qid, qb.qid))
    return BeliefInvarianceReport(tuple(uniform_bad), tuple(invariance_bad))


def p_involved_given_advice(game: GameSpec, player: int, type_bit: int, advice_bit: int) -> Fraction:
    """Involvement probability given own type and advice bit.

    The advice marginal is uniform for every question (checked here), so
    conditioning on the advice bit cannot reweight questions and the result
    equals the type-only involvement probability.
    """
    if advice_bit not in (0, 1):
        raise ValueError("advice bit must be 0 or 1")
    report = verify_uniform_and_belief_invariant(game)
    if report.uniform_violations:
        raise UnsupportedGameError(
            f"advice marginals not uniform: {report.uniform_violations[:3]}"
        )
    return p_involved(game, player, type_bit)


@dataclass(frozen=True)
class QuantumThreshold:
    p: Fraction
    bound: Fraction  # 1 - p
    condition: str

    def holds_at(self, params: PayoffParams) -> bool:
        return params.ratio >= self.bound


def quantum_threshold(game: GameSpec) -> QuantumThreshold:
    """Smallest involvement probability and the ratio bound it induces.

    Following the advice is an equilibrium iff v0/v1 >= 1 - p, where p is
    the worst-case probability of being involved over players and types.
    """
    p = min(
        p_involved(game, j, t)
        for j in range(game.n)
        for t in (0, 1)
        if any(q.type_bits[j] == t for q in game.questions)
    )
    bound = 1 - p
    return QuantumThreshold(p, bound, f"v0/v1 >= {bound}")


# all maps (own type bit, advice bit) -> answer bit
DEVIATION_POLICIES: tuple[tuple[int, int, int, int], ...] = tuple(
    itertools.product((0, 1), repeat=4)
)


def _policy_answer(policy, type_bit: int, advice_bit: int) -> int:
    return policy[(type_bit << 1) | advice_bit]


def deviation_payoff_coefficients(
    game: GameSpec, advice: AdviceCorrelation, player: int, policy
) -> tuple[Fraction, Fraction]:
    """Expected utility (c0, c1) with u = c0*v0 + c1*v1 for one deviator.

    The deviator rewrites their advice bit through ``policy``; everyone else
    answers as advised.  Win bits are recomputed exactly from the joint law
    of (own advice, parity of the other involved players).
    """
    c0 = Fraction(0)
    c1 = Fraction(0)
    for q in game.questions:
        law = advice.law(q.qid)
        t = q.type_bits[player]
        rest = q.involved - {player}
        rows = np.zeros((2, game.n), dtype=np.uint8)
        rows[0, player] = 1
        for r in rest:
            rows[1, r] = 1
        joint = law.linear_image_distribution(rows)
        for (advice_bit, rest_parity), prob in joint.items():
            answer = _policy_answer(policy, t, advice_bit)
            own_term = answer if player in q.involved else 0
            win = (rest_parity + own_term) % 2 == q.parity
            if win:
                if answer:
                    c1 += q.weight * prob
                else:
                    c0 += q.weight * prob
    return c0, c1


def is_quantum_nash(game: GameSpec, params: PayoffParams, method: str = "both") -> bool:
    """Is following the advice a Nash equilibrium at these payoffs?

    method "threshold" uses the involvement bound; "exhaustive" scans all 16
    post-processing policies for every player against the equilibrium
    utility (v0+v1)/2.  "both" runs the two and insists they agree.
    """
    if params.penalty != 0:
        raise ValueError("equilibrium test applies to the base game (penalty 0)")
    results = {}
    if method in ("threshold", "both"):
        results["threshold"] = quantum_threshold(game).holds_at(params)
    if method in ("exhaustive", "both"):
        advice = advice_correlation(game)
        baseline = qsw(params)
        ok = True
        for player in range(game.n):
            for policy in DEVIATION_POLICIES:
                c0, c1 = deviation_payoff_coefficients(game, advice, player, policy)
                if c0 * params.v0 + c1 * params.v1 > baseline:
                    ok = False
                    break
            if not ok:
                break
        results["exhaustive"] = ok
    if method == "both" and results["threshold"] != results["exhaustive"]:
        raise RuntimeError(f"threshold and exhaustive deviation tests disagree: {results}")
    if method not in ("threshold", "exhaustive", "both"):
        raise ValueError(f"unknown method {method!r}")
    return results["threshold"] if method != "exhaustive" else results["exhaustive"]


def qsw(params: PayoffParams) -> Fraction:
    """Social welfare of the advice-following strategy: (v0+v1)/2."""
    return (params.v0 + params.v1) / 2


def quantum_player_utilities(game: GameSpec, params: PayoffParams) -> tuple[Fraction, ...]:
    """Per-player expected utility computed directly from the advice laws.

    Cross-check for the closed form: the advice always wins and each
    player's marginal is uniform, so every entry equals (v0+v1)/2.
    """
    advice = advice_correlation(game)
    totals = [Fraction(0)] * game.n
    for q in game.questions:
        law = advice.law(q.qid)
        win = law.parity_distribution(q.involved).get(q.parity, Fraction(0))
        if win != 1:
            raise UnsupportedGameError(f"question {q.qid} is not won with certainty")
        for j in range(game.n):
            marg = law.marginal([j])
            totals[j] += q.weight * (
                marg.get((0,), Fraction(0)) * params.v0 + marg.get((1,), Fraction(0)) * params.v1
            )
    return tuple(totals)

"""Classical enumeration: evaluation rows, counts, symmetries, regimes."""

import random
from fractions import Fraction

from grapheq import (
    PayoffParams,
    advice_correlation,
    best_csw,
    builtin_game,
    enumerate_nash,
    enumerate_pareto,
    evaluate,
    game_automorphisms,
    partition_orbits,
    profile_to_code,
    ratio_regimes,
    reporting_symmetries,
)
from grapheq._reference import NC00_NASH_INTERVALS
from grapheq.classical import PayoffTable, build_report, code_to_profile, nash_interval
from helpers import toy_two_player_game

PARAMS = PayoffParams(Fraction(2, 3), Fraction(1))
THIRD, HALF = Fraction(1, 3), Fraction(1, 2)


def times6(payoff):
    return payoff.win_v0 * 6, payoff.win_v1 * 6


def test_evaluate_reference_rows():
    game = builtin_game("NC00_C5")
    ev = evaluate(game, (2, 1, 1, 1, 1))
    assert [times6(p) for p in ev.payoffs] == [(2, 1), (0, 3), (0, 3), (0, 3), (0, 3)]
    ev = evaluate(game, (3, 3, 3, 3, 1))
    assert [times6(p) for p in ev.payoffs] == [(2, 3)] * 4 + [(0, 5)]
    # everyone answering 0 wins the five single-generator questions and
    # loses the all-ones one
    ev = evaluate(game, (0, 0, 0, 0, 0))
    assert ev.p_win == Fraction(5, 6)
    assert ev.win_bits == (0, 1, 1, 1, 1, 1)
    assert all(u == Fraction(5, 9) for u in ev.utilities(PARAMS))


def test_payoff_table_agrees_with_evaluate():
    rng = random.Random(42)
    for name in ("NC00_C5", "NC01_C5", "NC000_C5", "NC00010_C5"):
        game = builtin_game(name)
        table = PayoffTable(game)
        for _ in range(40):
            profile = tuple(rng.randrange(4) for _ in range(5))
            ev = evaluate(game, profile)
            code = profile_to_code(profile, 5)
            assert tuple(table.payoff(code, j) for j in range(5)) == ev.payoffs
            assert table.p_win(code) == ev.p_win


def test_linear_payoff_total_weight():
    game = builtin_game("NC00010_C5")
    ev = evaluate(game, (2, 0, 3, 1, 2))
    for p in ev.payoffs:
        assert p.win_v0 + p.win_v1 + p.lose_v0 + p.lose_v1 == 1
        assert min(p.win_v0, p.win_v1, p.lose_v0, p.lose_v1) >= 0


def test_nash_counts_nc00():
    game = builtin_game("NC00_C5")
    regimes = ratio_regimes(game)
    assert regimes.breakpoints == (THIRD, HALF)
    group = reporting_symmetries(game)
    expected = {(0, THIRD): (20, 4), (THIRD, HALF): (25, 4), (HALF, 1): (40, 6)}
    for (lo, hi), (nprof, norb) in expected.items():
        codes = regimes.codes_on(Fraction(lo), Fraction(hi))
        profiles = [code_to_profile(c, 5) for c in codes]
        orbits = partition_orbits(profiles, group)
        assert (len(profiles), len(orbits)) == (nprof, norb)


def test_nash_fixed_params_matches_interval_membership():
    game = builtin_game("NC00_C5")
    table = PayoffTable(game)
    regimes = ratio_regimes(game, table=table)
    for r in (Fraction(1, 6), THIRD, Fraction(2, 5), HALF, Fraction(2, 3), Fraction(1)):
        profiles = enumerate_nash(game, PayoffParams(r, Fraction(1)), table=table)
        codes = {profile_to_code(p, 5) for p in profiles}
        want = {
            c for c, (lo, hi) in regimes.intervals.items() if lo <= r <= hi
        }
        assert codes == want


def test_nash_interval_reference_rows():
    game = builtin_game("NC00_C5")
    table = PayoffTable(game)
    for profile, (lo, hi) in NC00_NASH_INTERVALS.items():
        assert nash_interval(table, profile_to_code(profile, 5)) == (lo, hi)
    # a profile listed in no regime must be Nash nowhere or on a sub-interval
    assert nash_interval(table, profile_to_code((2, 2, 2, 2, 2), 5)) is None


def test_breakpoint_sets_are_unions_of_neighbors():
    for name in ("NC00_C5", "NC01_C5"):
        game = builtin_game(name)
        regimes = ratio_regimes(game)
        for r in regimes.breakpoints:
            left = next(s for s in regimes.segments if s.upper == r)
            right = next(s for s in regimes.segments if s.lower == r)
            assert set(regimes.at_breakpoints[r]) == set(left.codes) | set(right.codes)


def test_nc01_breakpoints_only_at_one_third():
    game = builtin_game("NC01_C5")
    regimes = ratio_regimes(game)
    assert regimes.breakpoints == (THIRD,)


def test_always_winning_game_has_no_breakpoints():
    # an empty generator set imposes no parity condition, so every profile
    # wins and the only deviations left chase the higher answer value
    from grapheq import GameSpec, Graph, QuestionSpec

    pair = Graph.edgeless(2)
    q = QuestionSpec("free", (0, 0), frozenset(), 0, Fraction(1), frozenset())
    game = GameSpec("all-win", pair, (q,))
    regimes = ratio_regimes(game)
    assert regimes.breakpoints == ()
    # profiles answering 1 everywhere are equilibria for every ratio
    always_one = profile_to_code((1, 1), 2)
    assert regimes.intervals[always_one] == (Fraction(0), Fraction(1))
    # an answer of 0 survives only where v0 = v1
    mixed = profile_to_code((0, 1), 2)
    assert regimes.intervals[mixed] == (Fraction(1), Fraction(1))


def test_all_none_profile_never_nash_in_nc01():
    """All-negation admits the constant-1 improving deviation below r = 1.

    Hand check: the deviator keeps the four previously-won questions where
    they answered 1, turns the all-ones question into a win, loses one
    question, and converts two value-v0 wins into value-v1 wins.
    """
    game = builtin_game("NC01_C5")
    table = PayoffTable(game)
    span = nash_interval(table, profile_to_code((3,) * 5, 5))
    assert span == (Fraction(1), Fraction(1))


def test_automorphism_orders():
    assert game_automorphisms(builtin_game("NC00_C5")).order == 10
    assert game_automorphisms(builtin_game("NC000_C5")).order == 10
    # the offset type patterns pair each involved set with a rotated type,
    # which reflections cannot preserve
    assert game_automorphisms(builtin_game("NC01_C5")).order == 5
    assert game_automorphisms(builtin_game("NC00010_C5")).order == 5
    for name in ("NC00_C5", "NC01_C5", "NC000_C5", "NC00010_C5"):
        assert reporting_symmetries(builtin_game(name)).order == 10


def test_automorphisms_form_group_and_preserve_nash():
    for name in ("NC00_C5", "NC01_C5"):
        game = builtin_game(name)
        group = game_automorphisms(game)
        perms = set(group.permutations)
        assert tuple(range(5)) in perms
        for a in perms:
            inv = tuple(sorted(range(5), key=lambda j: a[j]))
            assert inv in perms
            for b in perms:
                composed = tuple(a[b[j]] for j in range(5))
                assert composed in perms
        nash = set(enumerate_nash(game, PARAMS))
        for perm in perms:
            assert {group.apply(perm, p) for p in nash} == nash


def test_symmetry_toy_games():
    symmetric = toy_two_player_game()
    assert game_automorphisms(symmetric).order == 2
    lopsided = toy_two_player_game(Fraction(1, 3), Fraction(2, 3), name="toy2")
    assert game_automorphisms(lopsided).order == 1


def test_two_player_game_nash_by_hand():
    """Independent oracle: a two-question game whose equilibria are derivable
    by inspection.

    Winning q0 needs player 0 to answer 0 on type 1; q1 likewise for player
    1.  Both players therefore pin their type-1 answer to 0 and max out the
    free type-0 answer at 1, giving negation as the unique equilibrium when
    v0 < v1, with ties adding constant-0 at v0 = v1.
    """
    game = toy_two_player_game()
    nash = enumerate_nash(game, PayoffParams(Fraction(1, 2), Fraction(1)))
    assert nash == [(3, 3)]
    nash_tied = enumerate_nash(game, PayoffParams(Fraction(1), Fraction(1)))
    assert nash_tied == [(0, 0), (0, 3), (3, 0), (3, 3)]


def test_nash_subset_of_pareto():
    for name in ("NC00_C5", "NC01_C5", "NC000_C5"):
        game = builtin_game(name)
        table = PayoffTable(game)
        for r in (Fraction(1, 6), Fraction(2, 5), Fraction(4, 5)):
            params = PayoffParams(r, Fraction(1))
            nash = set(enumerate_nash(game, params, table=table))
            pareto = set(enumerate_pareto(game, params, table=table))
            assert nash <= pareto


def test_pareto_alternative_definition_differs():
    # the joint-domination reading does not reproduce the frozen counts
    game = builtin_game("NC00_C5")
    primary = enumerate_pareto(game, PayoffParams(Fraction(1, 6), Fraction(1)))
    alt = enumerate_pareto(game, PayoffParams(Fraction(1, 6), Fraction(1)), alternative=True)
    assert len(primary) == 121
    assert len(alt) != len(primary)


def test_pareto_sets_constant_inside_regimes():
    # two interior sample points per ratio interval give identical sets
    game = builtin_game("NC00_C5")
    table = PayoffTable(game)
    pairs = [
        (Fraction(1, 6), Fraction(1, 4)),
        (Fraction(2, 5), Fraction(5, 12)),
        (Fraction(2, 3), Fraction(9, 10)),
    ]
    for r1, r2 in pairs:
        first = enumerate_pareto(game, PayoffParams(r1, Fraction(1)), table=table)
        second = enumerate_pareto(game, PayoffParams(r2, Fraction(1)), table=table)
        assert first == second


def test_enumeration_order_is_lexicographic():
    game = builtin_game("NC01_C5")
    nash = enumerate_nash(game, PARAMS)
    assert nash == sorted(nash)
    pareto = enumerate_pareto(game, PARAMS)
    assert pareto == sorted(pareto)


def test_thread_count_does_not_change_results():
    game = builtin_game("NC00_C5")
    one = enumerate_nash(game, PARAMS, threads=1)
    two = enumerate_nash(game, PARAMS, threads=2)
    assert one == two
    p_one = enumerate_pareto(game, PARAMS, threads=1)
    p_two = enumerate_pareto(game, PARAMS, threads=2)
    assert p_one == p_two


def test_strict_mode_is_a_subset():
    game = builtin_game("NC00_C5")
    weak = set(enumerate_nash(game, PARAMS))
    strict = set(enumerate_nash(game, PARAMS, strict=True))
    assert strict <= weak


def test_best_csw_values_and_argmax():
    game = builtin_game("NC00_C5")
    value, argmax = best_csw(game, PARAMS)
    assert value == Fraction(23, 30)
    assert (2, 2, 1, 1, 1) in argmax
    value, _ = best_csw(builtin_game("NC01_C5"), PARAMS)
    assert value == Fraction(7, 9)


def test_best_csw_pareto_criterion_no_smaller():
    game = builtin_game("NC00_C5")
    nash_value, _ = best_csw(game, PARAMS, "nash")
    pareto_value, _ = best_csw(game, PARAMS, "pareto")
    assert pareto_value >= nash_value


def test_win_bits_match_law_support_for_single_constraint_games():
    # cross-module oracle on the game whose advice laws are all rank 1
    game = builtin_game("NC00_C5")
    advice = advice_correlation(game)
    table = PayoffTable(game)
    for qi, q in enumerate(game.questions):
        law = advice.law(q.qid)
        assert law.rank == 1
        for code in range(0, 1024, 7):
            profile = code_to_profile(code, 5)
            answers = [
                ((0, 0), (1, 1), (0, 1), (1, 0))[profile[j]][q.type_bits[j]] for j in range(5)
            ]
            member = law.probability_of(answers) > 0
            assert member == bool(table.win_bits[code, qi])


def test_report_orbit_ids_cover_entries():
    game = builtin_game("NC00_C5")
    table = PayoffTable(game)
    profiles = enumerate_nash(game, PARAMS, table=table)
    report = build_report(game, profiles, "nash", params=PARAMS, table=table)
    assert report.profile_count == 40 and report.orbit_count == 6
    assert sum(len(o.members) for o in report.orbits) == 40
    for entry in report.entries:
        assert entry.profile in report.orbits[entry.orbit_id].members

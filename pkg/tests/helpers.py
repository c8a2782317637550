"""Shared fixtures for the test suite."""

from fractions import Fraction

from grapheq import GameSpec, Graph, QuestionSpec, derive_question


def toy_two_player_game(w0=Fraction(1, 2), w1=Fraction(1, 2), name="toy"):
    """Two players on an edgeless pair; each question pins one player's
    type-1 answer to 0.  Equilibria are derivable by inspection."""
    pair = Graph.edgeless(2)
    d0, d1 = derive_question(pair, {0}), derive_question(pair, {1})
    return GameSpec(
        name,
        pair,
        (
            QuestionSpec("q0", (1, 0), d0.involved, d0.parity, w0, frozenset({0})),
            QuestionSpec("q1", (0, 1), d1.involved, d1.parity, w1, frozenset({1})),
        ),
    )

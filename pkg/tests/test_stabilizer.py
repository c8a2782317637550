"""Stabilizer algebra against two independent oracles.

Words are checked by multiplying explicit Pauli matrices; outcome laws are
checked against both a brute-force enumeration of compatible generator
subsets and the squared amplitudes of the measured graph-state vector.
"""

import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from grapheq import (
    Graph,
    InconsistentLawError,
    OutcomeLaw,
    derive_question,
    outcome_law,
    stabilizer_word,
)

I2 = np.eye(2, dtype=complex)
PX = np.array([[0, 1], [1, 0]], dtype=complex)
PZ = np.diag([1.0, -1.0]).astype(complex)
SITE = {"I": I2, "X": PX, "Z": PZ, "Y": PX @ PZ}  # Y records an X then Z factor


def kron_chain(mats):
    out = np.array([[1.0]], dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


def generator_matrix(graph, i):
    mats = []
    for j in range(graph.n):
        if j == i:
            mats.append(PX)
        elif j in graph.neighbors(i):
            mats.append(PZ)
        else:
            mats.append(I2)
    return kron_chain(mats)


def word_matrix(word):
    sign = -1.0 if word.sign_exponent else 1.0
    return sign * kron_chain([SITE[c] for c in word.letters])


def random_graph(rng, n):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
    return Graph.from_edges(n, edges)


def subsets(n):
    for bits in range(2**n):
        yield {j for j in range(n) if (bits >> j) & 1}


def test_word_equals_generator_product_on_cycle():
    g = Graph.cycle(5)
    gens = [generator_matrix(g, i) for i in range(5)]
    for k in subsets(5):
        prod = np.eye(2**5, dtype=complex)
        for i in sorted(k):
            prod = prod @ gens[i]
        assert np.allclose(prod, word_matrix(stabilizer_word(g, k)))


def test_word_equals_generator_product_random_graphs():
    rng = random.Random(20250810)
    for _ in range(12):
        n = rng.randint(2, 5)
        g = random_graph(rng, n)
        gens = [generator_matrix(g, i) for i in range(n)]
        for k in subsets(n):
            prod = np.eye(2**n, dtype=complex)
            for i in sorted(k):
                prod = prod @ gens[i]
            assert np.allclose(prod, word_matrix(stabilizer_word(g, k)))


def test_word_examples_on_cycle():
    g = Graph.cycle(5)
    w = stabilizer_word(g, {0})
    assert (w.letters, w.sign_exponent) == (("X", "Z", "I", "I", "Z"), 0)
    w = stabilizer_word(g, set())
    assert (w.letters, w.sign_exponent) == (("I",) * 5, 0)
    w = stabilizer_word(g, set(range(5)))
    assert (w.letters, w.sign_exponent) == (("X",) * 5, 1)
    w = stabilizer_word(g, {0, 1})
    assert w.letters[0] == "Y" and w.letters[1] == "Y"


def test_derive_question_examples():
    g = Graph.cycle(5)
    d = derive_question(g, {1})
    assert d.valid and d.involved == frozenset({0, 1, 2}) and d.parity == 0
    d = derive_question(g, {0, 2})
    assert d.valid and d.involved == frozenset({4, 0, 2, 3}) and d.parity == 0
    assert not derive_question(g, {0, 1}).valid
    # required bases: X exactly on K, Z on involved minus K
    d = derive_question(g, {0})
    assert d.required_basis == ("X", "Z", None, None, "Z")


def test_derivation_matches_word_support_and_sign():
    rng = random.Random(7)
    graphs = [Graph.cycle(5)] + [random_graph(rng, rng.randint(2, 8)) for _ in range(20)]
    for g in graphs:
        for k in subsets(g.n):
            d = derive_question(g, k)
            w = stabilizer_word(g, k)
            if d.valid:
                assert frozenset(w.support) == d.involved
                assert w.sign_exponent == d.parity
            else:
                assert "Y" in w.letters


def test_word_product_rule_exhaustive_on_cycle():
    # letters compose by XZ bookkeeping; the sign follows the edge count of
    # the symmetric difference
    g = Graph.cycle(5)
    compose = {"I": 0, "X": 1, "Z": 2, "Y": 3}
    back = {v: k for k, v in compose.items()}
    for ka in subsets(5):
        wa = stabilizer_word(g, ka)
        for kb in subsets(5):
            wb = stabilizer_word(g, kb)
            kc = set(ka) ^ set(kb)
            wc = stabilizer_word(g, kc)
            expected = tuple(
                back[compose[a] ^ compose[b]] for a, b in zip(wa.letters, wb.letters)
            )
            assert wc.letters == expected
            assert wc.sign_exponent == g.internal_edge_count(kc) % 2


# ---------------------------------------------------------------------------
# outcome laws


def graph_state_probabilities(graph, bases):
    """Squared amplitudes of the measured graph state (independent oracle)."""
    n = graph.n
    dim = 2**n
    psi = np.ones(dim, dtype=complex) / np.sqrt(dim)
    for idx in range(dim):
        x = [(idx >> (n - 1 - j)) & 1 for j in range(n)]
        phase = sum(x[u] * x[v] for u, v in graph.edges)
        if phase % 2:
            psi[idx] = -psi[idx]
    hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    op = kron_chain([hadamard if b == "X" else I2 for b in bases])
    out = op @ psi
    return np.abs(out) ** 2


def law_probability_vector(law):
    n = law.n
    return np.array(
        [
            float(law.probability_of([(idx >> (n - 1 - j)) & 1 for j in range(n)]))
            for idx in range(2**n)
        ]
    )


def test_law_matches_statevector_all_patterns_on_cycle():
    g = Graph.cycle(5)
    for pattern in range(32):
        bases = ["X" if (pattern >> (4 - j)) & 1 else "Z" for j in range(5)]
        law = outcome_law(g, bases)
        assert np.allclose(law_probability_vector(law), graph_state_probabilities(g, bases), atol=1e-12)


def test_law_matches_statevector_random_graphs():
    rng = random.Random(99)
    for _ in range(25):
        n = rng.randint(1, 6)
        g = random_graph(rng, n)
        bases = [rng.choice("XZ") for _ in range(n)]
        law = outcome_law(g, bases)
        assert np.allclose(law_probability_vector(law), graph_state_probabilities(g, bases), atol=1e-12)


def test_law_matches_admissible_subset_enumeration():
    # brute-force oracle: a vector is in the support iff it satisfies the
    # parity constraint of every compatible generator subset
    rng = random.Random(5)
    graphs = [Graph.cycle(5)] + [random_graph(rng, rng.randint(1, 6)) for _ in range(10)]
    for g in graphs:
        for _ in range(4):
            bases = [rng.choice("XZ") for _ in range(g.n)]
            constraints = []
            for k in subsets(g.n):
                if any(bases[j] == "Z" for j in k):
                    continue
                if any(
                    bases[j] == "X" and len(g.neighbors(j) & k) % 2 == 1
                    for j in range(g.n)
                ):
                    continue
                w = stabilizer_word(g, k)
                constraints.append((w.support, w.sign_exponent))
            law = outcome_law(g, bases)
            support = set(law.support())
            for a in itertools.product((0, 1), repeat=g.n):
                ok = all(sum(a[j] for j in supp) % 2 == rhs for supp, rhs in constraints)
                assert (a in support) == ok


def test_frozen_law_examples():
    g = Graph.cycle(5)
    law = outcome_law(g, ["X"] * 5)
    assert law.rank == 1 and law.support_size == 16
    assert law.parity_distribution(range(5)) == {1: Fraction(1)}

    law = outcome_law(g, ["X", "Z", "Z", "Z", "Z"])
    assert law.rank == 1 and law.support_size == 16
    assert law.parity_distribution([0, 1, 4]) == {0: Fraction(1)}

    # an edgeless pair measured in X is deterministic 00; measured in Z the
    # four outcomes are equally likely (plus states carry no Z constraint)
    pair = Graph.edgeless(2)
    law = outcome_law(pair, ["X", "X"])
    assert law.marginal([0, 1]) == {(0, 0): Fraction(1)}
    law = outcome_law(pair, ["Z", "Z"])
    assert law.support_size == 4
    assert law.marginal([0]) == {(0,): Fraction(1, 2), (1,): Fraction(1, 2)}


def test_law_query_examples():
    g = Graph.cycle(5)
    law = outcome_law(g, ["X"] * 5)
    assert law.marginal([0]) == {(0,): Fraction(1, 2), (1,): Fraction(1, 2)}
    law2 = outcome_law(g, ["X", "Z", "Z", "Z", "Z"])
    assert law2.parity_distribution([0, 1, 4]) == {0: Fraction(1)}
    # any vector off the constraint surface has probability zero
    assert law2.probability_of([1, 0, 0, 0, 0]) == 0
    assert law2.probability_of([0, 0, 0, 0, 0]) == Fraction(1, 16)


def test_probabilities_sum_to_one_with_equal_mass():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(1, 6)
        g = random_graph(rng, n)
        bases = [rng.choice("XZ") for _ in range(n)]
        law = outcome_law(g, bases)
        total = Fraction(0)
        for a in itertools.product((0, 1), repeat=n):
            p = law.probability_of(a)
            assert p in (Fraction(0), Fraction(1, law.support_size))
            total += p
        assert total == 1


def test_marginal_and_parity_match_support_enumeration():
    rng = random.Random(13)
    for _ in range(10):
        n = rng.randint(2, 6)
        g = random_graph(rng, n)
        bases = [rng.choice("XZ") for _ in range(n)]
        law = outcome_law(g, bases)
        support = list(law.support())
        players = rng.sample(range(n), rng.randint(1, n))
        counts = {}
        parity_counts = {0: 0, 1: 0}
        for a in support:
            key = tuple(a[p] for p in players)
            counts[key] = counts.get(key, 0) + 1
            parity_counts[sum(a[p] for p in players) % 2] += 1
        want_marginal = {k: Fraction(v, len(support)) for k, v in counts.items()}
        assert law.marginal(players) == want_marginal
        want_parity = {b: Fraction(c, len(support)) for b, c in parity_counts.items() if c}
        assert law.parity_distribution(players) == want_parity


def test_inconsistent_constraints_rejected():
    with pytest.raises(InconsistentLawError):
        OutcomeLaw(2, [[1, 0], [1, 0]], [0, 1])


def test_sample_stays_in_support():
    rng = random.Random(3)
    law = outcome_law(Graph.cycle(5), ["X", "Z", "Z", "Z", "Z"])
    support = set(law.support())
    for _ in range(50):
        assert law.sample(rng) in support

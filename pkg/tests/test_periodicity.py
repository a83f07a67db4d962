import random

import pytest

from subgames.grundy import ResourceLimitError, SubtractionSet, mex, nim_sequence
from subgames.periodicity import get_period_and_prefix, verify_decomposition
from subgames.words import take_periodic


def naive_decomposition(moves, probe=2000):
    """Independent oracle: smallest period, then smallest prefix, by brute force."""
    table = []
    for n in range(probe):
        table.append(mex(table[n - s] for s in moves if s <= n))
    for plen in range(1, probe // 3):
        for ulen in range(probe // 3):
            if all(table[i] == table[i - plen] for i in range(ulen + plen, probe)):
                return table[:ulen], table[ulen:ulen + plen]
    raise AssertionError(f"no period found for {moves} within {probe} terms")


class TestKnownDecompositions:
    def test_twenty_one(self):
        d = get_period_and_prefix(SubtractionSet.of(1, 2, 3))
        assert d.prefix == () and d.period == (0, 1, 2, 3)

    def test_one_four(self):
        d = get_period_and_prefix(SubtractionSet.of(1, 4))
        assert d.prefix == () and d.period == (0, 1, 0, 1, 2)

    def test_one_four_twelve(self):
        d = get_period_and_prefix(SubtractionSet.of(1, 4, 12))
        assert d.prefix == ()
        assert d.period == (0, 1, 0, 1, 2, 0, 1, 0, 1, 2, 0, 1, 2)

    def test_residue_family(self):
        # {1, 4, ..., 3i+1} has period 01 followed by i blocks of 012
        for i in range(5):
            s = SubtractionSet.explicit(3 * j + 1 for j in range(i + 1))
            d = get_period_and_prefix(s)
            assert d.prefix == ()
            assert list(d.period) == [0, 1] + [0, 1, 2] * i

    def test_single_move(self):
        d = get_period_and_prefix(SubtractionSet.of(3))
        assert d.prefix == () and d.period == (0, 0, 0, 1, 1, 1)

    def test_cap_exceeded(self):
        with pytest.raises(ResourceLimitError):
            get_period_and_prefix(SubtractionSet.of(1, 4, 12, 28, 73), max_terms=100)

    def test_needs_finite_set(self):
        with pytest.raises(ValueError):
            get_period_and_prefix(SubtractionSet.residues(3, [1]))


class TestVerifyDecomposition:
    def test_accepts_true_decomposition(self):
        s = SubtractionSet.of(1, 2, 3)
        d = get_period_and_prefix(s)
        assert verify_decomposition(s, d, 1000)

    def test_rejects_wrong_period_length(self):
        from subgames.grundy import NimSequence
        s = SubtractionSet.of(1, 2, 3)
        assert not verify_decomposition(s, NimSequence((), (0, 1, 2, 3, 0)), 1000)

    def test_scaled_set_period(self):
        # 3*{1,2,3} stretches each symbol threefold
        s = SubtractionSet.of(3, 6, 9)
        d = get_period_and_prefix(s)
        assert d.period == (0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3)
        assert verify_decomposition(s, d, 500)


class TestAgainstOracle:
    POOL = ([1], [2], [1, 2], [2, 3], [1, 4], [2, 5], [1, 4, 7],
            [3, 5], [1, 4, 12], [2, 4, 7], [5, 8, 9], [1, 6, 14])

    def test_matches_naive_minimal_decomposition(self):
        for moves in self.POOL:
            u, v = naive_decomposition(moves)
            d = get_period_and_prefix(SubtractionSet.explicit(moves))
            assert list(d.prefix) == u, moves
            assert list(d.period) == v, moves

    def test_random_sets_match_oracle(self):
        rng = random.Random(20)
        for _ in range(20):
            moves = sorted(rng.sample(range(1, 16), rng.randint(1, 4)))
            u, v = naive_decomposition(moves)
            d = get_period_and_prefix(SubtractionSet.explicit(moves))
            assert (list(d.prefix), list(d.period)) == (u, v), moves


class TestDecompositionInvariants:
    POOL = ([1], [1, 2, 3], [1, 4], [2, 5], [1, 4, 7], [1, 4, 12], [3, 4, 11])

    def test_roundtrip_at_ten_periods(self):
        for moves in self.POOL:
            s = SubtractionSet.explicit(moves)
            d = get_period_and_prefix(s)
            horizon = 10 * (len(d.prefix) + len(d.period))
            assert verify_decomposition(s, d, horizon), moves

    def test_period_is_primitive(self):
        for moves in self.POOL:
            v = get_period_and_prefix(SubtractionSet.explicit(moves)).period
            for div in range(1, len(v)):
                if len(v) % div == 0:
                    assert v != v[:div] * (len(v) // div), moves

    def test_reconstruction_satisfies_recurrence(self):
        for moves in self.POOL:
            d = get_period_and_prefix(SubtractionSet.explicit(moves))
            word = take_periodic(d.prefix, d.period, 300)
            for n in range(max(moves), 300):
                assert word[n] == mex(word[n - t] for t in moves if t <= n), moves

    def test_gcd_scaling_structure(self):
        for moves in ([1, 2, 3], [1, 4], [2, 5]):
            base = get_period_and_prefix(SubtractionSet.explicit(moves))
            for g in (2, 3, 5):
                scaled = get_period_and_prefix(SubtractionSet.explicit(moves).scaled(g))
                assert len(scaled.period) == g * len(base.period)
                expected = [base.period[i // g] for i in range(g * len(base.period))]
                assert list(scaled.period) == expected

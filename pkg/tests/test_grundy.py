import pytest
from hypothesis import given, strategies as st

from subgames.grundy import (CheckReport, NimSequence, ResourceLimitError,
                             SubtractionSet, best_move, check_binary_period,
                             check_gcd_scaling, check_generalized_ferguson,
                             mex, nim_sequence)


def brute_sg(moves, length):
    """Independent oracle: the mex recurrence written as plainly as possible."""
    table = []
    for n in range(length):
        table.append(mex(table[n - s] for s in moves if s <= n))
    return table


class TestMex:
    def test_empty(self):
        assert mex([]) == 0

    def test_with_gap(self):
        assert mex({0, 1, 3}) == 2

    def test_missing_zero(self):
        assert mex({1, 2, 3}) == 0

    @given(st.sets(st.integers(min_value=0, max_value=50)))
    def test_definition(self, values):
        m = mex(values)
        assert m not in values
        assert all(v in values for v in range(m))


class TestSubtractionSet:
    def test_explicit_sorted_and_membership(self):
        s = SubtractionSet.of(4, 1, 12)
        assert s.elements_up_to(100) == [1, 4, 12]
        assert 4 in s and 5 not in s and 0 not in s
        assert s.min_element() == 1 and s.max_element() == 12

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            SubtractionSet.of(0, 1)
        with pytest.raises(ValueError):
            SubtractionSet.explicit([])

    def test_residue_rule(self):
        s = SubtractionSet.residues(3, [1])
        assert s.elements_up_to(12) == [1, 4, 7, 10]
        assert not s.is_finite
        assert s.min_element() == 1

    def test_enumeration_agrees_with_membership(self):
        s = SubtractionSet.residues(5, [2, 3])
        elems = s.elements_up_to(40)
        assert elems == sorted(elems)
        assert all(e in s for e in elems)
        assert all(n in s for n in range(1, 41) if n in set(elems))

    def test_scaled(self):
        assert SubtractionSet.of(1, 2, 3).scaled(3).elements_up_to(10) == [3, 6, 9]
        scaled_rule = SubtractionSet.residues(3, [1]).scaled(2)
        assert scaled_rule.elements_up_to(15) == [2, 8, 14]

    def test_restricted_below(self):
        s = SubtractionSet.residues(3, [1])
        assert s.restricted_below(11).elements_up_to(100) == [1, 4, 7, 10]


class TestNimSequenceValues:
    def test_twenty_one_game(self):
        s = SubtractionSet.of(1, 2, 3)
        assert nim_sequence(s, 8) == [0, 1, 2, 3, 0, 1, 2, 3]

    def test_unrestricted_nim(self):
        s = SubtractionSet.from_predicate(lambda n: True, name="all")
        assert nim_sequence(s, 5) == [0, 1, 2, 3, 4]

    def test_residue_family(self):
        # first four elements of 1 mod 3: the period is 01 followed by three 012 blocks
        s = SubtractionSet.of(1, 4, 7, 10)
        expected = [0, 1, 0, 1, 2, 0, 1, 2, 0, 1, 2] * 2
        assert nim_sequence(s, 22) == expected

    def test_length_limit(self):
        with pytest.raises(ResourceLimitError):
            nim_sequence(SubtractionSet.of(1), 11, max_length=10)
        with pytest.raises(ValueError):
            nim_sequence(SubtractionSet.of(1), 0)

    def test_deterministic(self):
        s = SubtractionSet.of(2, 7, 11)
        assert nim_sequence(s, 300) == nim_sequence(s, 300)

    def test_matches_oracle_on_random_sets(self):
        import random
        rng = random.Random(7)
        for _ in range(25):
            moves = sorted(rng.sample(range(1, 30), rng.randint(1, 6)))
            got = nim_sequence(SubtractionSet.explicit(moves), 120)
            assert got == brute_sg(moves, 120)


class TestBestMove:
    def test_winning_move(self):
        assert best_move(SubtractionSet.of(1, 2, 3), 5) == 1  # SG(4) = 0

    def test_losing_position(self):
        assert best_move(SubtractionSet.of(1, 2, 3), 4) is None

    def test_zero_position(self):
        assert best_move(SubtractionSet.of(1, 2, 3), 0) is None
        assert best_move(SubtractionSet.residues(3, [1]), 0) is None

    def test_move_reaches_zero(self):
        s = SubtractionSet.of(1, 4, 12)
        table = nim_sequence(s, 50)
        for n in range(50):
            m = best_move(s, n)
            if table[n] == 0:
                assert m is None
            else:
                assert m in s and m <= n and table[n - m] == 0


class TestStructuralChecks:
    def test_generalized_ferguson_passes(self):
        for elems in ([1, 2, 3], [1, 4], [1, 4, 12], [2, 5], [3, 7, 9]):
            s = SubtractionSet.explicit(elems)
            values = nim_sequence(s, 200)
            assert check_generalized_ferguson(values, s, 200)

    def test_generalized_ferguson_catches_corruption(self):
        s = SubtractionSet.of(1)
        report = check_generalized_ferguson([0, 1, 1, 0, 1, 0], s, 6)
        assert not report.passed
        assert report.first_violation == 2  # the 1 at position 2 lacks a 0 before it

    def test_gcd_scaling(self):
        assert check_gcd_scaling(SubtractionSet.of(1, 2, 3), 3, 60)
        assert check_gcd_scaling(SubtractionSet.of(1), 2, 20)
        assert check_gcd_scaling(SubtractionSet.of(1, 4), 5, 100)

    def test_gcd_scaling_of_one_gives_pairs(self):
        # {2} doubles {1}: 00 11 00 11 ...
        assert nim_sequence(SubtractionSet.of(2), 8) == [0, 0, 1, 1, 0, 0, 1, 1]

    def test_binary_period_forms(self):
        assert check_binary_period(SubtractionSet.of(1), 10)
        assert check_binary_period(SubtractionSet.of(2, 6), 40)
        # {1,3} collapses to the {1} sequence
        assert nim_sequence(SubtractionSet.of(1, 3), 40) == nim_sequence(SubtractionSet.of(1), 40)
        assert check_binary_period(SubtractionSet.of(1, 3), 40)

    def test_binary_period_rejects_nonbinary(self):
        # {2,5} reaches value 2 at position 5, so the binary claim does not apply
        assert nim_sequence(SubtractionSet.of(2, 5), 6)[5] == 2
        with pytest.raises(ValueError):
            check_binary_period(SubtractionSet.of(2, 5), 40)


class TestTableInvariants:
    SETS = ([1], [1, 2, 3], [1, 4], [2, 5], [1, 4, 12], [3, 5, 6, 14])

    def test_values_bounded_by_set_size(self):
        for elems in self.SETS:
            s = SubtractionSet.explicit(elems)
            values = nim_sequence(s, 300)
            for n, v in enumerate(values):
                assert v <= len(s.elements_up_to(n))

    def test_ferguson_special_case(self):
        for elems in self.SETS:
            values = nim_sequence(SubtractionSet.explicit(elems), 300)
            m = min(elems)
            for n in range(300 - m):
                assert (values[n] == 0) == (values[n + m] == 1)

    def test_zero_positions_by_rescan(self):
        for elems in self.SETS:
            s = SubtractionSet.explicit(elems)
            values = nim_sequence(s, 200)
            for n in range(200):
                reachable = [values[n - t] for t in elems if t <= n]
                assert (values[n] == 0) == all(v != 0 for v in reachable)

    @given(st.sets(st.integers(min_value=1, max_value=25), min_size=1, max_size=5))
    def test_random_sets_satisfy_ferguson(self, elems):
        s = SubtractionSet.explicit(sorted(elems))
        values = nim_sequence(s, 150)
        assert check_generalized_ferguson(values, s, 150)


class TestNimSequenceType:
    def test_indexing(self):
        w = NimSequence((0,), (1, 2))
        assert [w[i] for i in range(6)] == [0, 1, 2, 1, 2, 1]
        assert w.take(4) == [0, 1, 2, 1]

    def test_empty_period_rejected(self):
        with pytest.raises(ValueError):
            NimSequence((), ())

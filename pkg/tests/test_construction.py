import itertools

import pytest

from subgames.construction import (FamilyConstruction, PromotionMap,
                                   build_word_prefix, ends_in_two_block,
                                   family, fib, fib_repseq, in_I,
                                   morphic_word_prefix, odd_fib_to_zeck,
                                   promote, promote_word,
                                   promoted_subtraction_set, promotion_value,
                                   ternary_i_set, ternary_sequence,
                                   ternary_t_set, ternary_word,
                                   valid_ternary_rep, verify_wythoff_zeros,
                                   word_lengths)
from subgames.grundy import ResourceLimitError, SubtractionSet, nim_sequence
from subgames.numeration import (DigitString, RepresentingSequence,
                                 base_sequence, in_upper_wythoff, is_m_volatile,
                                 is_zend, represent, value_of,
                                 zeckendorf_sequence)
from subgames.repwords import RepWord, is_fergusonian
from subgames.words import parse_word


def w(text):
    return list(parse_word(text))


class TestFibonacci:
    def test_standard_values(self):
        assert fib(10) == 55
        assert [fib(n) for n in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]

    def test_repseq_values(self):
        assert [fib_repseq(i) for i in range(6)] == [1, 2, 5, 13, 34, 89]

    def test_recurrence_identities(self):
        for n in range(2, 41):
            assert 2 * fib(n) == fib(n + 1) + fib(n - 2)
        for n in range(1, 41):
            assert fib(2 * n + 1) == 2 * fib(2 * n - 1) + fib(2 * n - 2)
        for n in range(2, 41):
            assert fib(2 * n + 1) == 3 * fib(2 * n - 1) - fib(2 * n - 3)
        for n in range(0, 41):
            assert fib(2 * n) == sum(fib(2 * i + 1) for i in range(n))
            assert fib(2 * n + 1) == 1 + sum(fib(2 * i) for i in range(1, n + 1))
        for n in range(1, 41):
            assert fib(2 * n + 1) == fib(2 * n - 1) + sum(fib(2 * i + 1) for i in range(n))


class TestWordLengths:
    def test_lengths_are_odd_index_fibonacci(self):
        lengths = word_lengths(25)
        for i, length in enumerate(lengths, start=1):
            assert length == fib(2 * i + 1)

    def test_partial_sums_are_even_index_fibonacci(self):
        seq = ternary_sequence()
        for i in range(1, 26):
            partial = sum(seq.term(j) for j in range(i))
            assert partial == fib(2 * i)
            assert seq.term(i) == 2 * seq.term(i - 1) + (fib(2 * i - 2) if i > 1 else 0) \
                or i == 1

    def test_doubling_recurrence(self):
        seq = ternary_sequence()
        for i in range(1, 26):
            b_prev = sum(seq.term(j) for j in range(i - 1)) if i > 1 else 0
            if i >= 1:
                assert seq.term(i) == 2 * seq.term(i - 1) + b_prev


class TestWordConstruction:
    def test_small_levels(self):
        assert build_word_prefix(2) == w("01012")
        assert build_word_prefix(3) == w("0101201012012")
        level4 = build_word_prefix(4)
        assert len(level4) == 34
        assert level4 == build_word_prefix(3) * 2 + w("01012") + w("01") + [2]

    def test_levels_nest(self):
        words = [build_word_prefix(d) for d in range(1, 10)]
        for a, b in zip(words, words[1:]):
            assert b[:len(a)] == a

    def test_squared_prefix(self):
        # each level starts with the previous level twice: the aperiodicity driver
        for d in range(1, 13):
            a, b = build_word_prefix(d), build_word_prefix(d + 1)
            assert b[:2 * len(a)] == a + a
            assert len(b) > 2 * len(a)

    def test_agrees_with_repword(self):
        word = build_word_prefix(8)
        assert ternary_word().prefix(len(word)) == word

    def test_agrees_with_generator(self):
        from subgames.repwords import generate_fergusonian
        word, seq = generate_fergusonian(2, lambda i, ell: 2 if ell == i - 1 else 1, 6)
        assert word == build_word_prefix(6)
        assert seq.terms(7) == [ternary_sequence().term(i) for i in range(7)]

    def test_length_guard(self):
        with pytest.raises(ResourceLimitError):
            build_word_prefix(40)

    def test_no_short_period(self):
        word = ternary_word().prefix(1500)
        for p in range(1, 120):
            assert any(word[n] != word[n + p] for n in range(1500 - p))


class TestMorphicWord:
    def test_base_cases(self):
        assert morphic_word_prefix(0) == w("01")
        assert morphic_word_prefix(1) == w("01012")
        assert len(morphic_word_prefix(2)) == 13

    def test_matches_block_construction(self):
        for m in range(0, 11):
            assert morphic_word_prefix(m) == build_word_prefix(m + 1)

    def test_inner_morphism_one_identity(self):
        # phi^n(1) is the product of phi^(n-i)(0) closed by a 1
        def phi(word):
            out = []
            for c in word:
                out.extend((0, 0, 1) if c == 0 else (0, 1))
            return out

        images = [[0]]
        for _ in range(10):
            images.append(phi(images[-1]))
        lhs = [1]
        for n in range(1, 11):
            lhs = phi(lhs)
            rhs = []
            for i in range(1, n + 1):
                rhs.extend(images[n - i])
            rhs.append(1)
            assert lhs == rhs


class TestTwoBlockSet:
    def test_membership_examples(self):
        assert in_I(4)        # digits 20
        assert not in_I(10)   # digits 200
        assert in_I(12)       # digits 210
        assert in_I(1)
        assert not in_I(2)

    def test_twelve_is_a_term_predecessor(self):
        assert ternary_sequence().term(3) - 1 == 12

    def test_matches_fixture(self, pytestconfig):
        data = pytestconfig.rootpath / "tests" / "data" / "b089910.txt"
        expected = [int(line.split()[1]) for line in data.read_text().splitlines()]
        got = (n for n in itertools.count(2) if in_I(n))
        collected = list(itertools.islice(got, len(expected)))
        assert collected == expected

    def test_t_inside_i(self):
        t = ternary_t_set()
        i = ternary_i_set()
        for e in t.elements_up_to(1000):
            assert e in i

    def test_gaps_at_most_five(self):
        elems = ternary_i_set().elements_up_to(3000)
        assert all(b - a <= 5 for a, b in zip(elems, elems[1:]))


class TestValidTernaryRep:
    def test_examples(self):
        assert valid_ternary_rep(DigitString.from_msb([2, 1, 0]))
        assert not valid_ternary_rep(DigitString.from_msb([2, 1]))
        assert not valid_ternary_rep(DigitString.from_msb([3]))

    def test_counts_are_odd_index_fibonacci(self):
        for length in range(1, 7):
            count = 0
            for tup in itertools.product((0, 1, 2), repeat=length):
                stripped = DigitString.from_msb(tup)
                if valid_ternary_rep(stripped):
                    count += 1
            assert count == fib(2 * length + 1), length

    def test_greedy_expansions_are_valid(self):
        seq = ternary_sequence()
        for n in range(0, 2000):
            assert valid_ternary_rep(represent(seq, n)), n


class TestOddFibToZeck:
    def test_conversion_examples(self):
        seq = ternary_sequence()
        assert str(odd_fib_to_zeck(represent(seq, 10))) == "10010"
        assert str(odd_fib_to_zeck(represent(seq, 2))) == "10"
        assert str(odd_fib_to_zeck(represent(seq, 15))) == "100010"

    def test_rejects_bad_inputs(self):
        seq = ternary_sequence()
        with pytest.raises(ValueError):
            odd_fib_to_zeck(represent(seq, 4))   # ends in a two-block (20)
        with pytest.raises(ValueError):
            odd_fib_to_zeck(represent(seq, 3))   # ends in 1
        with pytest.raises(ValueError):
            odd_fib_to_zeck(DigitString.from_msb([3, 0]))

    def test_bijection_per_length_class(self):
        seq = ternary_sequence()
        zeck = zeckendorf_sequence()
        for level in range(1, 9):
            bound = seq.term(level)
            qualifying = [n for n in range(bound)
                          if is_zend(seq, n) and not is_m_volatile(seq, n)]
            assert len(qualifying) == fib(2 * level - 1), level
            images = set()
            for n in qualifying:
                z = odd_fib_to_zeck(represent(seq, n))
                assert value_of(zeck, z) == n
                if n > 0:
                    assert z.trailing_zeros % 2 == 1
                    assert len(z) <= 2 * level - 1
                images.add(z.digits)
            assert len(images) == len(qualifying)  # injective, hence bijective


class TestWythoffZeros:
    def test_zero_positions_small(self):
        word = ternary_word().prefix(13)
        assert [n for n in range(13) if word[n] == 0] == [0, 2, 5, 7, 10]

    def test_full_report(self):
        report = verify_wythoff_zeros(3000)
        assert report.passed, report.summary()

    def test_upper_wythoff_gaps(self):
        uppers = [n for n in range(10_000) if in_upper_wythoff(n)]
        assert set(b - a for a, b in zip(uppers, uppers[1:])) == {2, 3}


class TestPromotions:
    def test_powers_of_two(self):
        promoted = promote(base_sequence(2), 1)
        assert promoted.terms(10) == [1, 3, 6, 12, 24, 48, 96, 192, 384, 768]

    def test_fibonacci_to_lucas(self):
        fib_seq = RepresentingSequence.from_rule([1, 2], lambda t: t[-1] + t[-2])
        promoted = promote(fib_seq, 1)
        assert promoted.terms(10) == [1, 3, 4, 7, 11, 18, 29, 47, 76, 123]

    def test_construction_promotion(self):
        promoted = promote(ternary_sequence(), 1)
        assert promoted.terms(8) == [1, 3, 7, 18, 47, 123, 322, 843]

    def test_value_map_examples(self):
        pmap = PromotionMap(ternary_sequence(), 1)
        assert pmap.value(0) == 0
        assert pmap.value(2) == 3
        assert pmap.value(12) == 17
        assert promotion_value(ternary_sequence(), 1, 12) == 17

    def test_value_map_sends_terms_to_terms(self):
        # terms map to terms from position j on; at i = j-1 the digit rule
        # yields 2*b_{j-1} instead (forced by the streaming form: w[0] = 0)
        for base in (ternary_sequence(), base_sequence(2),
                     RepresentingSequence.from_rule([1, 2], lambda t: t[-1] + t[-2])):
            for j in (1, 2):
                pmap = PromotionMap(base, j)
                for i in range(j, 12):
                    assert pmap.value(base.term(i)) == pmap.sequence.term(i), (base.name, j, i)
                for i in range(0, j - 1):
                    assert pmap.value(base.term(i)) == base.term(i)
                assert pmap.value(base.term(j - 1)) == 2 * pmap.sequence.term(j - 1)

    def test_streaming_form(self):
        # for position-1 promotions, f advances by 2 exactly at the zeros
        pmap = PromotionMap(ternary_sequence(), 1)
        word = ternary_word().prefix(2000)
        value = 0
        for n in range(1, 2000):
            value += 2 if word[n - 1] == 0 else 1
            assert pmap.value(n) == value, n

    def test_value_map_strictly_increasing(self):
        pmap = PromotionMap(ternary_sequence(), 1)
        values = [pmap.value(n) for n in range(500)]
        assert all(b > a for a, b in zip(values, values[1:]))


class TestPromoteWord:
    def test_examples(self):
        assert promote_word(w("01012"), 2) == w("0120123")
        assert promote_word(w("01"), 2) == w("012")

    def test_thirteen_to_eighteen(self):
        image = promote_word(ternary_word().prefix(13), 2)
        assert len(image) == 18
        k3 = RepWord(promote(ternary_sequence(), 1))
        assert image == k3.prefix(18)

    def test_image_is_promoted_word(self):
        base = ternary_sequence()
        image = promote_word(ternary_word().prefix(2000), 2)
        promoted_word = RepWord(promote(base, 1)).prefix(len(image))
        assert image == promoted_word

    def test_alphabet_guard(self):
        with pytest.raises(ValueError):
            promote_word([0, 3], 2)


class TestPromotedSubtractionSet:
    def test_image_of_t(self):
        s = promoted_subtraction_set(ternary_t_set(), ternary_sequence())
        assert s.elements_up_to(330) == [1, 2, 6, 17, 46, 122, 321]

    def test_promoted_nim_sequence(self):
        s = promoted_subtraction_set(ternary_t_set(), ternary_sequence())
        horizon = 600
        image = promote_word(ternary_word().prefix(horizon), 2)[:horizon]
        assert nim_sequence(s, horizon) == image


class TestFamily:
    def test_alphabet_two(self):
        fam = family(2, 6)
        assert fam.sequence.terms(6) == [1, 2, 5, 13, 34, 89]
        assert fam.closed_form_mismatches == ()

    def test_alphabet_three(self):
        fam = family(3, 6)
        assert fam.sequence.terms(6) == [1, 3, 7, 18, 47, 123]
        assert fam.t_set.elements_up_to(130) == [1, 2, 6, 17, 46, 122]
        assert fam.closed_form == (1, 3, 8, 21, 55, 144, 377)
        assert fam.closed_form_mismatches == (2, 3, 4, 5, 6)

    def test_alphabet_four(self):
        fam = family(4, 5)
        assert fam.sequence.terms(5) == [1, 4, 9, 23, 60]

    def test_family_word_is_nim_sequence(self):
        for k in (2, 3, 4):
            fam = family(k, 8)
            horizon = 3 * fam.sequence.term(4)
            table = nim_sequence(fam.t_set, horizon)
            assert table == fam.word.prefix(horizon), k

    def test_closed_form_candidate_fails_the_oracle(self):
        # the stated closed form at k=3 gives (1,3,8,21,...): its word is not
        # even Fergusonian, and its T set's table runs (012) until the move 54
        # appears and pushes values past 3
        closed = RepresentingSequence.from_terms([1, 3, 8, 21, 55, 144])
        word = RepWord(closed).prefix(60)
        assert not is_fergusonian(word, 3)
        t = SubtractionSet.explicit([1, 2] + [closed.term(i) - 1 for i in range(2, 6)])
        table = nim_sequence(t, 60)
        assert table[:54] == [n % 3 for n in range(54)]
        assert table[54] == 3 and max(table) > 3
        assert table != word

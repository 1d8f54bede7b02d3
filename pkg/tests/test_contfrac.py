"""Continued-fraction evaluation, symmetries, and the even expansion."""

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bridgekit.contfrac import (
    NotAKnotFraction,
    WordParseError,
    check_even_word,
    eval_word,
    format_fraction,
    format_word,
    negate,
    parse_fraction,
    parse_word,
    rev_neg,
    reverse,
    sign_changes,
    to_reduced_even,
)
from bridgekit.census import enumerate_words


def continuant_eval(word):
    """Independent evaluation: left-to-right convergent recurrence.

    The package folds reciprocals right to left; this builds the
    numerator/denominator pair in the opposite association order.
    """
    p_prev, p = 1, word[0]
    q_prev, q = 0, 1
    for entry in word[1:]:
        p_prev, p = p, entry * p + p_prev
        q_prev, q = q, entry * q + q_prev
    if p == 0:
        raise ZeroDivisionError("value is infinite")
    return Fraction(q, p)


halves = st.integers(min_value=-5, max_value=5).filter(lambda v: v != 0)
even_words = st.lists(halves, min_size=2, max_size=12).map(
    lambda hs: tuple(2 * h for h in hs[: len(hs) // 2 * 2])
)


class TestEval:
    def test_single_entry(self):
        assert eval_word((2,)) == Fraction(1, 2)

    def test_hand_computed(self):
        assert eval_word((2, -2)) == Fraction(2, 3)
        assert eval_word((2, 2)) == Fraction(2, 5)
        assert eval_word((2, -4, 4, -2)) == Fraction(26, 45)

    def test_zero_tail_rejected(self):
        with pytest.raises(ZeroDivisionError):
            eval_word((1, -1))
        with pytest.raises(ZeroDivisionError):
            eval_word((3, 1, -1, 1))

    def test_zero_entry_rejected(self):
        with pytest.raises(ValueError):
            eval_word((2, 0, 2))

    @given(even_words)
    def test_matches_continuant_fold(self, word):
        assert eval_word(word) == continuant_eval(word)

    def test_matches_continuant_fold_bulk(self):
        rng = random.Random(20240901)
        for _ in range(1000):
            length = rng.randint(1, 10)
            word = tuple(rng.choice([-1, 1]) * rng.randint(1, 9) for _ in range(length))
            try:
                tower = eval_word(word)
            except ZeroDivisionError:
                continue
            assert tower == continuant_eval(word)


class TestSignChanges:
    @pytest.mark.parametrize(
        "word, expected",
        [
            ((2, -2, 2, -2), 3),
            ((2, 2), 0),
            ((2, -4, 4, -2), 3),
        ],
    )
    def test_examples(self, word, expected):
        assert sign_changes(word) == expected

    @given(even_words)
    def test_invariant_under_negate_and_reverse(self, word):
        assert sign_changes(negate(word)) == sign_changes(word)
        assert sign_changes(reverse(word)) == sign_changes(word)

    @given(even_words)
    def test_range(self, word):
        assert 0 <= sign_changes(word) <= len(word) - 1


class TestSymmetries:
    def test_examples(self):
        assert rev_neg((2, -2, 4, -2, 2, -2, 2, -2)) == (2, -2, 2, -2, 2, -4, 2, -2)
        assert negate((2, 2)) == (-2, -2)
        assert reverse((2, -4, 4, -2)) == (-2, 4, -4, 2)

    @given(even_words)
    def test_involutions(self, word):
        assert rev_neg(rev_neg(word)) == word
        assert negate(negate(word)) == word
        assert reverse(reverse(word)) == word

    @given(even_words)
    def test_preserve_shape(self, word):
        for image in (rev_neg(word), negate(word), reverse(word)):
            assert len(image) == len(word)
            assert sorted(abs(e) for e in image) == sorted(abs(e) for e in word)
            check_even_word(image)


class TestToReducedEven:
    def test_examples(self):
        assert to_reduced_even(Fraction(2, 3)) == (2, -2)
        assert to_reduced_even(Fraction(2, 5)) == (2, 2)

    def test_negative(self):
        assert to_reduced_even(Fraction(-2, 3)) == (-2, 2)

    def test_even_denominator_rejected(self):
        with pytest.raises(NotAKnotFraction):
            to_reduced_even(Fraction(1, 2))

    def test_out_of_range_rejected(self):
        for bad in (Fraction(3, 2), Fraction(0), Fraction(1), Fraction(-5, 3)):
            with pytest.raises(NotAKnotFraction):
                to_reduced_even(bad)

    def test_odd_over_odd_rejected(self):
        # not the value of any even-entry expansion
        with pytest.raises(NotAKnotFraction):
            to_reduced_even(Fraction(1, 3))

    def test_slow_boundary_fractions(self):
        # 2k/(2k+1) expands entry by entry into the alternating word
        assert to_reduced_even(Fraction(8, 9)) == (2, -2, 2, -2, 2, -2, 2, -2)

    @given(even_words)
    def test_round_trip(self, word):
        value = eval_word(word)
        again = to_reduced_even(value)
        check_even_word(again)
        assert eval_word(again) == value

    def test_round_trip_census(self):
        for c in range(3, 13):
            for word in enumerate_words(c):
                value = eval_word(word)
                assert eval_word(to_reduced_even(value)) == value


class TestTextFormats:
    def test_parse_word(self):
        assert parse_word("2,-4, 4 , -2") == (2, -4, 4, -2)

    def test_parse_word_errors(self):
        with pytest.raises(WordParseError) as info:
            parse_word("2,0,2")
        assert info.value.token == "0" and info.value.position == 2
        with pytest.raises(WordParseError):
            parse_word("2,,2")
        with pytest.raises(WordParseError):
            parse_word("2,x")

    def test_word_round_trip(self):
        for word in ((2, -2), (2, -4, 4, -2)):
            assert parse_word(format_word(word)) == word

    def test_fractions(self):
        assert format_fraction(Fraction(26, 45)) == "26/45"
        assert format_fraction(Fraction(3)) == "3"
        assert parse_fraction("26/45") == Fraction(26, 45)
        with pytest.raises(WordParseError):
            parse_fraction("26/45/2")

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freeradial.words import (
    CapExceededError,
    RankMismatchError,
    ReducedWord,
    WordParseError,
    all_letters,
    canonical_key,
    concat,
    enumerate_words,
    format_word,
    inverse,
    parse_word,
    reduce,
    word_count,
)


def letter_seqs(k, max_size=10):
    return st.lists(st.sampled_from(all_letters(k)), max_size=max_size)


class TestReduce:
    def test_inverse_pair_cancels(self):
        assert reduce([1, -1], 2) == ReducedWord(2)

    def test_inner_pair_cancels(self):
        assert reduce([1, 2, -2, 1], 2) == ReducedWord(2, (1, 1))

    def test_already_reduced_unchanged(self):
        assert reduce([1, 2, -1], 2) == ReducedWord(2, (1, 2, -1))

    def test_nested_cancellation(self):
        # collapse must continue through newly adjacent pairs
        assert reduce([1, 2, -2, -1, 2], 2) == ReducedWord(2, (2,))

    def test_invalid_letter(self):
        with pytest.raises(ValueError):
            reduce([3], 2)
        with pytest.raises(ValueError):
            reduce([0], 2)

    @given(letter_seqs(2))
    def test_idempotent(self, seq):
        once = reduce(seq, 2)
        assert reduce(once.letters, 2) == once

    @given(letter_seqs(3))
    def test_result_is_reduced(self, seq):
        w = reduce(seq, 3)
        assert all(a != -b for a, b in zip(w.letters, w.letters[1:]))
        assert (len(seq) - len(w)) % 2 == 0


class TestReducedWordInvariants:
    def test_rejects_unreduced(self):
        with pytest.raises(ValueError):
            ReducedWord(2, (1, -1))

    def test_rejects_bad_rank(self):
        with pytest.raises(ValueError):
            ReducedWord(1, ())

    def test_rejects_out_of_range_letter(self):
        with pytest.raises(ValueError):
            ReducedWord(2, (3,))

    def test_identity(self):
        e = ReducedWord(2)
        assert len(e) == 0 and e.is_identity


class TestConcat:
    def test_one_cancellation(self):
        u = parse_word("g1 g2", 2)
        v = parse_word("g2^-1 g1", 2)
        assert concat(u, v) == (ReducedWord(2, (1, 1)), 1)

    def test_identity_left(self):
        w = parse_word("g2 g1^-1", 2)
        assert concat(ReducedWord(2), w) == (w, 0)

    def test_full_cancellation(self):
        u = parse_word("g1 g2", 2)
        v = parse_word("g2^-1 g1^-1", 2)
        assert concat(u, v) == (ReducedWord(2), 2)

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatchError):
            concat(ReducedWord(2, (1,)), ReducedWord(3, (1,)))

    @given(letter_seqs(2), letter_seqs(2))
    def test_length_parity(self, s1, s2):
        u, v = reduce(s1, 2), reduce(s2, 2)
        w, cancellations = concat(u, v)
        assert len(w) <= len(u) + len(v)
        assert len(u) + len(v) - len(w) == 2 * cancellations

    @given(letter_seqs(2), letter_seqs(2))
    def test_agrees_with_reduce(self, s1, s2):
        u, v = reduce(s1, 2), reduce(s2, 2)
        assert concat(u, v)[0] == reduce(u.letters + v.letters, 2)


class TestInverse:
    def test_examples(self):
        assert inverse(parse_word("g1 g2", 2)) == parse_word("g2^-1 g1^-1", 2)
        assert inverse(ReducedWord(2)) == ReducedWord(2)
        assert inverse(parse_word("g1^-1", 2)) == parse_word("g1", 2)

    @given(letter_seqs(3))
    def test_concat_with_inverse_is_identity(self, seq):
        u = reduce(seq, 3)
        assert concat(u, inverse(u))[0] == ReducedWord(3)


class TestEnumeration:
    def test_level_one(self):
        words = list(enumerate_words(2, 1))
        assert [format_word(w) for w in words] == ["g1", "g1^-1", "g2", "g2^-1"]

    def test_level_two_count(self):
        assert len(list(enumerate_words(2, 2))) == 12

    def test_k3_level_four_count(self):
        assert len(list(enumerate_words(3, 4))) == 750

    @pytest.mark.parametrize("k", [2, 3])
    @pytest.mark.parametrize("n", range(0, 9))
    def test_matches_formula_distinct_and_reduced(self, k, n):
        # strictly increasing canonical keys prove distinctness without
        # materializing the sphere
        count = 0
        previous = None
        for w in enumerate_words(k, n):
            assert w.rank == k and len(w) == n
            assert all(a != -b for a, b in zip(w.letters, w.letters[1:]))
            key = canonical_key(w)
            assert previous is None or previous < key
            previous = key
            count += 1
        assert count == word_count(k, n)

    def test_canonical_order(self):
        words = list(enumerate_words(2, 3))
        keys = [canonical_key(w) for w in words]
        assert keys == sorted(keys)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            list(enumerate_words(2, 4, cap=100))


class TestWordCount:
    def test_values(self):
        assert word_count(2, 0) == 1
        assert word_count(2, 3) == 36
        assert word_count(3, 4) == 750

    def test_negative_length(self):
        with pytest.raises(ValueError):
            word_count(2, -1)


class TestParseFormat:
    def test_atoms(self):
        assert parse_word("g1 g2^-1", 2) == ReducedWord(2, (1, -2))

    def test_parser_reduces(self):
        assert parse_word("g1 g1^-1", 2) == ReducedWord(2)

    def test_exponent_expansion(self):
        assert parse_word("g1^3", 2) == ReducedWord(2, (1, 1, 1))
        assert parse_word("g2^-2", 2) == ReducedWord(2, (-2, -2))

    def test_identity_atom(self):
        assert parse_word("e", 2) == ReducedWord(2)
        assert parse_word("g1 e g2", 2) == ReducedWord(2, (1, 2))

    def test_letters_shorthand(self):
        assert parse_word("a b^-1", 2, letters=True) == ReducedWord(2, (1, -2))
        with pytest.raises(WordParseError):
            parse_word("a", 2)

    def test_errors(self):
        with pytest.raises(WordParseError):
            parse_word("g3", 2)
        with pytest.raises(WordParseError):
            parse_word("g1^0", 2)
        with pytest.raises(WordParseError):
            parse_word("h1", 2)
        with pytest.raises(WordParseError):
            parse_word("", 2)

    @given(letter_seqs(3))
    def test_round_trip(self, seq):
        w = reduce(seq, 3)
        assert parse_word(format_word(w), 3) == w

    @given(letter_seqs(2))
    def test_round_trip_letters_mode(self, seq):
        w = reduce(seq, 2)
        assert parse_word(format_word(w, letters=True), 2, letters=True) == w

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ykh.braid import (
    BraidWord,
    FramedBraidWord,
    SingularBraidWord,
    closure_components,
    conjugate,
    connected_sum,
    cycles,
    disjoint_union,
    exponent_sum,
    invert_permutation,
    mirror,
    parse_word,
    permutation,
    reverse,
    self_linking,
    stabilize,
    to_transverse_framed,
)
from ykh.utils.exceptions import BraidSyntaxError, IndexOutOfRangeError, InvalidParameterError, SingularExponentError

BIRMAN_MENASCO = "n=3; s1^5 s2^4 s1^6 s2^-1"

words = st.lists(st.tuples(st.integers(1, 3), st.integers(-3, 3)), max_size=8).map(lambda letters: BraidWord(4, tuple(letters)))


class TestParsing:
    def test_round_trip_text(self):
        assert parse_word(BIRMAN_MENASCO).serialize() == BIRMAN_MENASCO

    def test_adjacent_letters_merge(self):
        assert parse_word("s1 s1 s2 s2^-1 s1").serialize() == "n=3; s1^3"

    def test_strand_count_is_inferred(self):
        assert parse_word("s3^2").strands == 4
        assert parse_word("n=1;").letters == ()

    def test_framed_prefix(self):
        word = parse_word("n=2; t1^2 ; s1", "framed")
        assert word.framings == (2, 0)
        assert word.word.serialize() == "n=2; s1"
        assert parse_word("n=1; t1^2 ;", "framed").serialize() == "n=1; t1^2 ;"

    def test_singular_letters(self):
        word = parse_word("n=3; s1 tau2^2 s1^-1", "singular")
        assert isinstance(word, SingularBraidWord)
        assert word.singular_count == 2

    @pytest.mark.parametrize(
        "text, kind, error",
        [
            ("n=2; s2", "classical", IndexOutOfRangeError),
            ("s1 x", "classical", BraidSyntaxError),
            ("s1s2", "classical", BraidSyntaxError),
            ("n=2; t1 ; s1", "classical", BraidSyntaxError),
            ("n=2; t1 s1", "framed", BraidSyntaxError),
            ("n=2; s1 t1", "framed", BraidSyntaxError),
            ("n=2; tau1", "classical", BraidSyntaxError),
            ("n=2; tau1^-1", "singular", SingularExponentError),
            ("n=2; s0", "classical", IndexOutOfRangeError),
            ("n=2; s1^0", "classical", InvalidParameterError),
            ("n=2; s1 s1^-0", "classical", InvalidParameterError),
            ("n=2; t1^0 ; s1", "framed", InvalidParameterError),
            ("n=2; tau1^0", "singular", SingularExponentError),
        ],
    )
    def test_rejected_text(self, text, kind, error):
        with pytest.raises(error):
            parse_word(text, kind)

    def test_unknown_kind(self):
        with pytest.raises(InvalidParameterError):
            parse_word("s1", "knotted")


class TestFraming:
    def test_framing_moves_left_through_a_crossing(self):
        word = FramedBraidWord.from_sequence(2, [("s", 1, 1), ("t", 1, 1)])
        assert word.framings == (0, 1)

    def test_framing_count_must_match_strands(self):
        with pytest.raises(InvalidParameterError):
            FramedBraidWord((1,), BraidWord(2))

    def test_reverse_re_splits(self):
        word = FramedBraidWord((1, 0), BraidWord(2, ((1, 1),)))
        reversed_word = reverse(word)
        assert reversed_word.framings == (0, 1)
        assert reversed_word.word == word.word

    def test_mirror_negates_framings(self):
        word = mirror(FramedBraidWord((2, 0), BraidWord(2, ((1, 3),))))
        assert word.framings == (-2, 0)
        assert word.word.letters == ((1, -3),)


class TestComponents:
    def test_permutation(self):
        assert permutation(parse_word("s1 s2^-1 s1 s2^-1")) == (3, 1, 2)
        assert permutation(parse_word("n=3; s1^2")) == (1, 2, 3)

    def test_knot_and_link(self):
        assert closure_components(parse_word("n=2; s1^3")).count == 1
        link = closure_components(parse_word("n=2; s1^2"))
        assert link.count == 2
        assert link.inter_component_exponent == 2
        assert link.per_component_exponent == (0, 0)

    def test_birman_menasco_self_linking(self):
        word = parse_word(BIRMAN_MENASCO)
        assert exponent_sum(word) == 14
        total, per_component = self_linking(word)
        assert total == 11
        assert per_component == {0: 11}

    def test_link_self_linking_is_per_component(self):
        total, per_component = self_linking(parse_word("n=2; s1^2"))
        assert per_component == {0: -1, 1: -1}
        assert total == -2

    def test_transverse_framing_sits_on_lowest_strand(self):
        assert to_transverse_framed(parse_word(BIRMAN_MENASCO)).framings == (11, 0, 0)
        assert to_transverse_framed(parse_word("n=1;")).framings == (-1,)


class TestOperations:
    def test_connected_sum_of_trefoils(self):
        trefoil = parse_word("n=2; s1^3")
        result = connected_sum(trefoil, trefoil)
        assert result.word.serialize() == "n=3; s1^3 s2^3"
        assert closure_components(result).count == 1

    def test_connected_sum_carries_framings(self):
        loop = FramedBraidWord((2,), BraidWord(1))
        assert connected_sum(loop, loop).framings == (4,)

    def test_disjoint_union(self):
        trefoil = parse_word("n=2; s1^3")
        assert disjoint_union(trefoil, trefoil).serialize() == "n=4; s1^3 s3^3"
        assert closure_components(disjoint_union(trefoil, trefoil)).count == 2

    def test_stabilize(self):
        trefoil = parse_word("n=2; s1^3")
        assert stabilize(trefoil, 1).serialize() == "n=3; s1^3 s2"
        assert stabilize(trefoil, -1).serialize() == "n=3; s1^3 s2^-1"
        with pytest.raises(InvalidParameterError):
            stabilize(trefoil, 2)

    def test_conjugate(self):
        word = conjugate(parse_word("n=3; s1^3"), parse_word("s2"))
        assert word.serialize() == "n=3; s2 s1^3 s2^-1"

    def test_conjugator_cannot_be_wider(self):
        with pytest.raises(InvalidParameterError):
            conjugate(parse_word("n=2; s1"), parse_word("n=3; s2"))

    def test_mirror_singular_keeps_singular_letters(self):
        word = mirror(parse_word("n=2; s1 tau1", "singular"))
        assert word.letters == (("s", 1, -1), ("tau", 1, 1))


@given(words)
def test_inverse_word_has_inverse_permutation(word):
    assert permutation(word.inverse()) == invert_permutation(permutation(word))


@given(words)
def test_component_count_matches_cycles(word):
    assert closure_components(word).count == len(cycles(permutation(word)))


@given(words)
def test_mirror_negates_exponent_sum(word):
    assert exponent_sum(mirror(word)) == -exponent_sum(word)
    assert mirror(mirror(word)) == word


@given(words)
def test_parse_inverts_serialize(word):
    assert parse_word(word.serialize()) == word

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ykh.algebra import (
    RewriteStats,
    YElement,
    YMonomial,
    embed,
    enumerate_basis,
    gen_g,
    gen_t,
    generator_inverse,
    idempotent_e,
    inductive_word,
    multiply,
    transposition,
)
from ykh.braid import BraidWord, FramedBraidWord, parse_word
from ykh.exactcoeff import Q_DIFF
from ykh.utils.exceptions import BasisTooLargeError, IndexOutOfRangeError, InvalidParameterError


def g(d, n, i):
    return YElement.monomial(d, [0] * n, transposition(n, i))


@pytest.mark.parametrize("d, n", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_basis_size(d, n):
    basis = enumerate_basis(d, n)
    assert len(basis) == len(set(basis))
    assert len(basis) == len(list(permutations(range(n)))) * d**n


def test_basis_guard():
    with pytest.raises(BasisTooLargeError):
        enumerate_basis(3, 5, guard=100)


def test_inductive_word():
    assert inductive_word((1, 0)) == [1]
    assert inductive_word((2, 1, 0)) == [1, 2, 1]
    assert inductive_word((0, 1, 2)) == []


@given(st.permutations(range(4)))
def test_inductive_word_is_reduced_and_spells_the_permutation(perm):
    perm = tuple(perm)
    word = inductive_word(perm)
    inversions = sum(1 for a in range(4) for b in range(a + 1, 4) if perm[a] > perm[b])
    assert len(word) == inversions
    if word:
        assert word.count(max(word)) == 1
    spelled = list(range(4))
    for i in word:
        spelled[i - 1], spelled[i] = spelled[i], spelled[i - 1]
    assert tuple(spelled) == perm


@pytest.mark.parametrize("d", [1, 2, 3])
class TestRelations:
    def test_quadratic_relation(self, d):
        square = multiply(g(d, 2, 1), g(d, 2, 1))
        assert square == YElement.identity(d, 2) + multiply(idempotent_e(d, 2, 1), g(d, 2, 1)).scale(Q_DIFF)

    def test_inverse(self, d):
        assert multiply(g(d, 2, 1), generator_inverse(d, 2, 1)) == YElement.identity(d, 2)
        assert multiply(generator_inverse(d, 2, 1), g(d, 2, 1)) == YElement.identity(d, 2)

    def test_braid_relation(self, d):
        left = multiply(multiply(g(d, 3, 1), g(d, 3, 2)), g(d, 3, 1))
        right = multiply(multiply(g(d, 3, 2), g(d, 3, 1)), g(d, 3, 2))
        assert left == right

    def test_framing_relation(self, d):
        assert multiply(g(d, 2, 1), gen_t(d, 2, 1)) == multiply(gen_t(d, 2, 2), g(d, 2, 1))

    def test_framings_have_order_d(self, d):
        assert gen_t(d, 3, 2, d) == YElement.identity(d, 3)

    def test_idempotent(self, d):
        e = idempotent_e(d, 3, 2)
        assert multiply(e, e) == e
        assert multiply(e, g(d, 3, 2)) == multiply(g(d, 3, 2), e)

    @pytest.mark.parametrize("n, i", [(2, 1), (3, 1), (3, 2)])
    def test_power_formula(self, d, n, i):
        up = YElement.identity(d, n)
        down = YElement.identity(d, n)
        for r in range(1, 9):
            up = multiply(up, g(d, n, i))
            down = multiply(down, generator_inverse(d, n, i))
            assert gen_g(d, n, i, r) == up
            assert gen_g(d, n, i, -r) == down
        assert gen_g(d, n, i, 0) == YElement.identity(d, n)


def test_quadratic_rewrites_are_counted():
    stats = RewriteStats()
    multiply(g(2, 2, 1), g(2, 2, 1), stats)
    assert stats.quadratic >= 1
    assert stats.multiplications == 1


def test_out_of_range_generators():
    with pytest.raises(IndexOutOfRangeError):
        gen_g(2, 2, 2, 1)
    with pytest.raises(IndexOutOfRangeError):
        gen_t(2, 2, 3)
    with pytest.raises(InvalidParameterError):
        YElement(0, 1)


def test_mismatched_algebras_do_not_combine():
    with pytest.raises(InvalidParameterError):
        YElement.identity(2, 2) + YElement.identity(3, 2)


def test_serialize():
    assert YElement.identity(2, 2).serialize() == "(1)*1"
    assert g(2, 2, 1).serialize() == "(1)*g1"
    assert gen_t(2, 2, 1).serialize() == "(1)*t1"
    assert YElement(2, 2).serialize() == "0"


def test_embed_framed_word():
    word = parse_word("n=2; t1 ; s1", "framed")
    assert embed(word, "gamma", 2) == multiply(gen_t(2, 2, 1), g(2, 2, 1))
    assert YMonomial((1, 0), (1, 0)) in embed(word, "gamma", 2).terms


def test_embed_singular_word_uses_the_idempotent():
    word = parse_word("n=2; tau1^3", "singular")
    assert embed(word, "eta", 3) == idempotent_e(3, 2, 1)


def test_embed_rejects_wrong_word_type():
    with pytest.raises(InvalidParameterError):
        embed(FramedBraidWord.unframed(BraidWord(2)), "delta", 2)
    with pytest.raises(InvalidParameterError):
        embed(BraidWord(2), "omega", 2)


classical_words = st.lists(st.tuples(st.integers(1, 2), st.integers(-2, 2)), max_size=4).map(lambda letters: BraidWord(3, tuple(letters)))


@settings(max_examples=15)
@given(classical_words, st.integers(1, 2))
def test_power_formula_embedding_matches_letter_by_letter(word, d):
    assert embed(word, "delta", d, power_formula=True) == embed(word, "delta", d, power_formula=False)

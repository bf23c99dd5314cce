import itertools

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import letters, words
from magnus_kernel import (
    Automorphism,
    Word,
    apply,
    commutator,
    compose,
    concat_reduce,
    inner,
    inverse,
    magnus_commutator,
    magnus_conjugation,
    parse_word,
)
from magnus_kernel.detect import lemma_chain
from magnus_kernel.errors import GeneratorIndexError, NotInvertibleError, RankMismatchError
from magnus_kernel.sampling import magnus_generators, random_automorphism, random_ia, random_word


def W(text, rank=4):
    return parse_word(text, rank)


@given(letters(3, 60))
def test_reduction_matches_letter_stack(ls):
    assert Word.from_letters(3, ls).letters() == oracles.reduce_letters(ls)


@given(letters(3, 40), letters(3, 40))
def test_product_matches_oracle(a, b):
    p = Word.from_letters(3, a) * Word.from_letters(3, b)
    assert p.letters() == oracles.mul(a, b)


@given(words(3), st.integers(0, 40), letters(3, 8))
def test_inserting_a_cancelling_pair_is_invisible(w, pos, u):
    ls = w.letters()
    pos = min(pos, len(ls))
    padded = ls[:pos] + u + oracles.inv_letters(u) + ls[pos:]
    assert Word.from_letters(3, padded) == w


def test_reduced_form_invariant(rng):
    for _ in range(300):
        w = random_word(rng, 4, 50)
        syl = w.syllables
        assert all(e != 0 for _, e in syl)
        assert all(a[0] != b[0] for a, b in zip(syl, syl[1:]))


def test_concat_examples():
    assert concat_reduce(W("x1"), W("x1^-1")).is_identity()
    assert concat_reduce(W("x1 x2"), W("x2^-1 x1")) == W("x1^2")


def test_word_times_inverse_is_identity(rng):
    for _ in range(1000):
        w = random_word(rng, 4, 40)
        assert concat_reduce(w, inverse(w)).is_identity()
        assert inverse(inverse(w)) == w


def test_inverse_examples():
    assert inverse(Word.identity(2)).is_identity()
    assert inverse(W("x1 x2^-1")) == W("x2 x1^-1")


def test_commutator_examples():
    x1, x2 = W("x1"), W("x2")
    assert commutator(x1, x1).is_identity()
    assert commutator(x1, x2).letters() == [1, 2, -1, -2]


def test_double_commutator_c():
    c = commutator(commutator(W("x2"), W("x3")), commutator(W("x2"), W("x4")))
    ref = oracles.comm(oracles.comm([2], [3]), oracles.comm([2], [4]))
    assert c.letters() == ref
    assert len(c) == 16


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        Word.generator(2, 1) * Word.generator(3, 1)
    with pytest.raises(RankMismatchError):
        apply(Automorphism.identity(3), Word.generator(2, 1))


def test_generator_out_of_range():
    with pytest.raises(GeneratorIndexError):
        Word.generator(2, 3)


def test_power_and_syllables():
    assert W("x1") ** 3 == W("x1^3")
    assert (W("x1 x2") ** -2).letters() == [-2, -1, -2, -1]
    assert str(W("x1^2 x3^-1")) == "x1^2 x3^-1"
    assert str(Word.identity(2)) == "1"


# --- automorphisms -----------------------------------------------------------------

def test_apply_examples():
    n = 3
    assert apply(Automorphism.identity(n), W("x1 x2", n)) == W("x1 x2", n)
    assert apply(magnus_conjugation(n, 1, 2), W("x1", n)).letters() == [-2, 1, 2]
    assert apply(magnus_commutator(n, 1, 2, 3), W("x1", n)).letters() == [1, 2, 3, -2, -3]


def test_apply_is_a_homomorphism(rng):
    for _ in range(200):
        s = random_automorphism(rng, 3)
        a, b = random_word(rng, 3, 15), random_word(rng, 3, 15)
        assert s(a * b) == s(a) * s(b)


def test_compose_applies_left_factor_first():
    n = 3
    s, t = magnus_conjugation(n, 1, 2), magnus_commutator(n, 1, 2, 3)
    x = W("x1 x3", n)
    assert apply(compose(s, t), x) == apply(t, apply(s, x))


def test_compose_associative_with_identity(rng):
    e = Automorphism.identity(3)
    for _ in range(100):
        a, b, c = (random_automorphism(rng, 3) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * e == a == e * a
        assert (a * a.inverse()).is_identity()
        assert (a * b).inverse() == b.inverse() * a.inverse()


def test_magnus_generator_relations():
    n = 4
    for i, j, l in itertools.permutations(range(1, n + 1), 3):
        assert magnus_commutator(n, i, j, j).is_identity()
        assert (magnus_commutator(n, i, j, l) * magnus_commutator(n, i, l, j)).is_identity()


def test_inner_convention_and_inverse(rng):
    for _ in range(50):
        g = random_word(rng, 3, 6)
        x = random_word(rng, 3, 6)
        assert inner(g)(x) == g * x * g.inverse()
        assert inner(g).inverse() == inner(g.inverse())
        assert inner(g).is_ia()


def test_l1_chain_acts_on_xi_as_displayed():
    n = 4
    for i, j, l, m in itertools.permutations(range(1, n + 1)):
        image = lemma_chain("L1", n, i, j, l, m)(Word.generator(n, i))
        ref = oracles.mul([i, j, -l, m, -j, l, -m])
        assert image.letters() == ref


def test_bad_inverse_table_rejected():
    x1, x2 = Word.generator(2, 1), Word.generator(2, 2)
    with pytest.raises(NotInvertibleError):
        Automorphism([x1 * x2, x2], [x1, x2])


def test_generators_are_ia():
    for g in magnus_generators(4):
        assert g.is_ia()
    assert len(magnus_generators(4)) == 4 * 4 * 3 // 2


def test_random_ia_is_ia(rng):
    assert all(random_ia(rng, 4).is_ia() for _ in range(50))

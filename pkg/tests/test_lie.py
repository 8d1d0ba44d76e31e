from fractions import Fraction

import pytest

from cyclomzv.alphabet import parse_word
from cyclomzv.lie import (
    NotPrimitiveError, bracket, from_coords, is_lyndon, is_primitive, lyndon_expand,
    lyndon_words, random_lie, standard_factorization, to_lyndon_coords, witt_dim,
)
from cyclomzv.series import Series, concat_mul, letter


@pytest.mark.parametrize("k, n, expected", [
    (2, 1, 2), (2, 2, 1), (2, 3, 2), (2, 4, 3), (2, 5, 6), (2, 6, 9), (3, 2, 3), (3, 3, 8),
])
def test_witt_dim_values(k, n, expected):
    assert witt_dim(k, n) == expected


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_lyndon_count_matches_witt(N):
    for n in range(1, 9 if N <= 2 else 6):
        assert len(lyndon_words(N, n)) == witt_dim(N + 1, n)


def test_lyndon_words_two_letters_weight_three():
    assert lyndon_words(1, 3) == [(0, 0, 1), (0, 1, 1)]


def test_lyndon_words_are_sorted_and_lyndon():
    ws = lyndon_words(2, 5)
    assert ws == sorted(ws)
    assert all(is_lyndon(w) for w in ws)


def test_is_lyndon_examples():
    assert is_lyndon((0, 0, 1, 0, 1))
    assert not is_lyndon((0, 1, 0, 1))
    assert not is_lyndon((1, 0))
    assert not is_lyndon(())


def test_standard_factorization():
    assert standard_factorization((0, 0, 1, 0, 1)) == ((0, 0, 1), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))


def test_expansion_of_e0e1():
    p = lyndon_expand((0, 1), 1)
    assert dict(p.items()) == {(0, 1): 1, (1, 0): -1}


@pytest.mark.parametrize("N", [1, 2])
def test_expansion_unitriangular(N):
    for n in range(1, 7):
        for l in lyndon_words(N, n):
            p = lyndon_expand(l, N)
            assert p[l] == 1
            assert all(len(u) == n and u >= l for u in p.support())


def test_lyndon_expand_rejects_non_lyndon():
    with pytest.raises(ValueError):
        lyndon_expand((1, 0), 1)


def test_coords_roundtrip(rng):
    for N in (1, 2, 3):
        x = random_lie(rng, N, 5, terms=6)
        assert from_coords(to_lyndon_coords(x), N, 5) == x


def test_coords_of_basis_element():
    coords = {(0, 1, 1): Fraction(3, 2), (0,): Fraction(-1)}
    assert to_lyndon_coords(from_coords(coords, 1, 4)) == coords


def test_bracket_is_primitive(rng):
    a, b = random_lie(rng, 2, 5), random_lie(rng, 2, 5)
    assert is_primitive(bracket(a, b))


def test_letter_is_primitive_square_is_not():
    e = letter(0, 1, 3)
    assert is_primitive(e)
    assert not is_primitive(concat_mul(e, e))


def test_not_primitive_carries_residual():
    x = Series(1, 2, {(0, 1): 1})
    with pytest.raises(NotPrimitiveError) as info:
        to_lyndon_coords(x)
    assert dict(info.value.residual.items()) == {(1, 0): 1}


def test_word_parser_agrees_with_lyndon_order():
    assert lyndon_words(2, 2)[0] == parse_word("0.1", 2)

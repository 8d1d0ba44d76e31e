from fractions import Fraction

import mpmath
import pytest

from cyclomzv.alphabet import E1
from cyclomzv.lie import random_lie, to_lyndon_coords
from cyclomzv.series import CC, Series, exp_concat
from cyclomzv.seriesfile import (
    SeriesFileError, dumps, dumps_lyndon, loads, loads_lyndon, parse_word_text, word_text,
)


def test_exact_roundtrip(rng):
    for N in (1, 2, 3):
        g = exp_concat(random_lie(rng, N, 4))
        assert loads(dumps(g)) == g


def test_header_and_order():
    x = Series(2, 2, {(1, 0): Fraction(-1, 3), (): 1, (2,): 2})
    lines = dumps(x).splitlines()
    assert lines[0] == "N=2 W=2 ring=Q"
    assert lines[1:] == ["1 : 1/1", "w^1 : 2/1", "1.0 : -1/3"]


def test_single_letter_e1_is_not_the_empty_word():
    assert word_text(()) == "1"
    assert word_text((E1,)) == "w^0"
    assert parse_word_text("1", 1) == ()
    assert parse_word_text("w^0", 1) == (E1,)
    x = Series(1, 1, {(): 2, (E1,): 3})
    assert loads(dumps(x)) == x


def test_complex_roundtrip_is_bit_exact():
    ring = CC(160)
    with ring.context():
        x = Series(1, 2, {(0, 1): mpmath.mpc(mpmath.pi, -mpmath.e / 7), (): 1}, ring)
    text = dumps(x)
    assert "ring=C p=160" in text.splitlines()[0]
    assert "e" in text.splitlines()[2].split(":")[1]
    assert loads(text) == x


def test_lyndon_coordinates(rng):
    x = random_lie(rng, 2, 4)
    text = dumps_lyndon(to_lyndon_coords(x), 2, 4)
    assert text.splitlines()[0] == "N=2 W=4 ring=Q basis=lyndon"
    level, trunc, coords = loads_lyndon(text)
    assert (level, trunc, coords) == (2, 4, to_lyndon_coords(x))
    assert loads(text) == x


@pytest.mark.parametrize("text", [
    "", "N=1 W=2", "N=1 W=2 ring=R", "N=1 W=1 ring=Q\n0.1 : 1/1",
    "N=1 W=2 ring=Q\n0 1/2", "N=1 W=2 ring=Q\n0 : x", "N=1 W=2 ring=C p=64\n0 : 1.0",
    "N=1 W=2 ring=Q\n0 : 1/2\n0 : 1/3", "N=1 W=2 ring=Q\nw^x : 1/2",
])
def test_malformed_files(text):
    with pytest.raises(SeriesFileError):
        loads(text)

from fractions import Fraction

import pytest

from cyclomzv.alphabet import E1, ZERO, Dihedral, letters, root
from cyclomzv.ihara import (
    circ, circ_inverse, dihedral, exp_ihara, exp_ihara_leading, ihara_bracket, rotate,
    special_derivation, torsor_act, twist_auto,
)
from cyclomzv.lie import NotPrimitiveError, is_primitive, random_lie
from cyclomzv.series import (
    Series, SeriesError, concat_mul, exp_concat, is_grouplike, letter, monomial, one, zero,
)


def lie(rng, N, W, terms=3):
    return random_lie(rng, N, W, terms=terms, height=3)


def test_rotate_letters():
    x = Series(3, 2, {(ZERO, root(1, 3)): 1, (root(2, 3),): 5})
    y = rotate(1, x)
    assert dict(y.items()) == {(ZERO, root(2, 3)): 1, (root(0, 3),): 5}
    assert rotate(3, x) == x


def test_dihedral_eliminates_infinity():
    e0 = letter(ZERO, 2, 1)
    img = dihedral(Dihedral(2, flip=True), e0)
    expected = -(letter(0, 2, 1) + letter(1, 2, 1) + letter(2, 2, 1))
    assert img == expected


def test_dihedral_rotation_agrees_with_rotate(rng):
    x = lie(rng, 4, 4)
    assert dihedral(Dihedral(4, rot=3), x) == rotate(3, x)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_flip_involution(rng, N):
    x = lie(rng, N, 5)
    f = Dihedral(N, flip=True)
    assert dihedral(f, dihedral(f, x)) == x


def test_dihedral_composition(rng):
    x = lie(rng, 3, 4)
    for g in Dihedral.elements(3):
        for h in Dihedral.elements(3):
            assert dihedral(g * h, x) == dihedral(h, dihedral(g, x))


def test_special_derivation_on_generators():
    a = letter(ZERO, 2, 3)
    e = letter(root(1, 2), 2, 3)
    # e_zeta -> [-a, e_zeta] since rotating e_0 does nothing
    assert special_derivation(a, e) == concat_mul(e, a) - concat_mul(a, e)
    assert special_derivation(a, letter(ZERO, 2, 3)).is_zero()


@pytest.mark.parametrize("N", [1, 2, 5])
def test_derivation_along_e1_vanishes(rng, N):
    x = lie(rng, N, 5)
    assert special_derivation(letter(E1, N, 5), x).is_zero()


def test_special_derivation_needs_zero_constant():
    with pytest.raises(SeriesError):
        special_derivation(one(1, 2), letter(0, 1, 2))


@pytest.mark.parametrize("N", [1, 2, 3])
def test_bracket_antisymmetric_and_jacobi(rng, N):
    a, b, c = (lie(rng, N, 5) for _ in range(3))
    br = ihara_bracket
    assert br(a, b) == -br(b, a)
    assert (br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))).is_zero()


def test_bracket_of_lie_elements_is_lie(rng):
    a, b = lie(rng, 2, 5), lie(rng, 2, 5)
    assert is_primitive(ihara_bracket(a, b, check=True))


def test_bracket_check_rejects_non_lie():
    x = monomial((0, 1), 1, 1, 3)
    with pytest.raises(NotPrimitiveError):
        ihara_bracket(x, letter(0, 1, 3), check=True)


def test_bracket_is_graded(rng):
    for m, n in [(1, 2), (2, 3), (1, 4)]:
        a = random_lie(rng, 2, 5, terms=2, min_weight=m).part(m)
        b = random_lie(rng, 2, 5, terms=2, min_weight=n).part(n)
        assert all(len(w) == m + n for w in ihara_bracket(a, b).support())


@pytest.mark.parametrize("N", [1, 2, 3])
def test_derivations_represent_bracket(rng, N):
    a, b = lie(rng, N, 5), lie(rng, N, 5)
    ab = ihara_bracket(a, b)
    for g in letters(N):
        e = letter(g, N, 5)
        lhs = special_derivation(a, special_derivation(b, e)) \
            - special_derivation(b, special_derivation(a, e))
        assert lhs == special_derivation(ab, e)


def test_torsor_action_is_lie_action(rng):
    a, b, x = lie(rng, 2, 5), lie(rng, 2, 5), lie(rng, 2, 5)
    lhs = torsor_act(a, torsor_act(b, x)) - torsor_act(b, torsor_act(a, x))
    assert lhs == torsor_act(ihara_bracket(a, b), x)


@pytest.mark.parametrize("N", [1, 3])
def test_centrality_of_e1(rng, N):
    e1 = letter(E1, N, 6)
    for _ in range(5):
        assert ihara_bracket(lie(rng, N, 6), e1).is_zero()


def test_rotation_equivariance(rng):
    N = 4
    a, b = lie(rng, N, 5), lie(rng, N, 5)
    for xi in range(N):
        assert rotate(xi, ihara_bracket(a, b)) == ihara_bracket(rotate(xi, a), rotate(xi, b))
        assert rotate(xi, special_derivation(a, b)) == \
            special_derivation(rotate(xi, a), rotate(xi, b))


def test_twist_fixes_e0_and_is_multiplicative(rng):
    g = exp_concat(lie(rng, 2, 4))
    e0 = letter(ZERO, 2, 4)
    assert twist_auto(g, e0) == e0
    x, y = lie(rng, 2, 4), lie(rng, 2, 4)
    assert twist_auto(g, concat_mul(x, y)) == concat_mul(twist_auto(g, x), twist_auto(g, y))


def test_twist_by_unit_is_identity(rng):
    x = lie(rng, 3, 4)
    assert twist_auto(one(3, 4), x) == x


def test_twist_requires_grouplike():
    with pytest.raises(SeriesError):
        twist_auto(one(1, 3) + letter(0, 1, 3) * 2, letter(1, 1, 3))


@pytest.mark.parametrize("N", [1, 2, 3])
def test_circ_group_laws(rng, N):
    W = 5
    g, h, k = (exp_concat(lie(rng, N, W)) for _ in range(3))
    u = one(N, W)
    assert circ(circ(g, h), k) == circ(g, circ(h, k))
    assert circ(u, g) == g == circ(g, u)
    inv = circ_inverse(g)
    assert circ(g, inv) == u == circ(inv, g)
    assert is_grouplike(circ(g, h))


def test_twist_of_circ_is_composition(rng):
    g, h = exp_concat(lie(rng, 2, 5)), exp_concat(lie(rng, 2, 5))
    for a in letters(2):
        e = letter(a, 2, 5)
        assert twist_auto(circ(g, h), e) == twist_auto(g, twist_auto(h, e))


def test_exp_ihara_zero_and_e1():
    assert exp_ihara(zero(2, 5)) == one(2, 5)
    e1 = letter(E1, 1, 6)
    assert exp_ihara(e1) == exp_concat(e1)


def test_exp_ihara_is_grouplike(rng):
    assert is_grouplike(exp_ihara(lie(rng, 2, 5)))


def test_exp_ihara_one_parameter_law(rng):
    a = lie(rng, 2, 5, terms=2)
    for t, s in [(Fraction(1, 2), Fraction(-1, 3)), (Fraction(2), Fraction(3, 5))]:
        assert circ(exp_ihara(a * t), exp_ihara(a * s)) == exp_ihara(a * (t + s))


def test_exp_ihara_leading_terms(rng):
    a = lie(rng, 2, 3, terms=4)
    assert exp_ihara_leading(a) == exp_ihara(a)


def test_exp_ihara_rejects_non_lie():
    with pytest.raises(NotPrimitiveError):
        exp_ihara(monomial((0, 1), 1, 1, 3))

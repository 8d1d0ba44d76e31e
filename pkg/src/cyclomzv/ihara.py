"""Rotations, the twisted automorphisms, special derivations and the Ihara bracket.

Conventions fixed here:

* ``rotate(k, x)`` relabels ``e_{zeta^j} -> e_{zeta^{j+k}}`` and fixes ``e_0``.
* ``ad_g(x) = g x g^-1``.  The automorphism ``<a>_0`` fixes ``e_0`` and sends
  ``e_{zeta^k}`` to ``A_k^-1 e_{zeta^k} A_k`` with ``A_k = rotate(k, a)``;
  its derivative at the unit is ``special_derivation``.
* ``circ(a, b) = a <a>_0(b)`` is the twisted group law on group-like series.

Group-like series (points of the group) and Lie series are both plain
:class:`~cyclomzv.series.Series`; checks are done on entry where the
operation is only defined for one kind.
"""
from __future__ import annotations

from typing import Dict

from .alphabet import INFINITY, ZERO, Dihedral, exponent, letters, permute_point, root
from .lie import NotPrimitiveError, is_primitive
from .series import (
    Series, SeriesError, apply_derivation, concat_mul, grouplike_inverse,
    is_grouplike, letter, one, substitute, zero,
)


def rotate(xi: int, x: Series) -> Series:
    """The automorphism ``[zeta^xi]`` applied letterwise."""
    n = x.level
    xi %= n
    if xi == 0:
        return x
    table = [ZERO] + [root(exponent(a) + xi, n) for a in letters(n) if a != ZERO]
    return x.map_words(lambda w: tuple(table[a] for a in w))


def _point_image(p: int, x: Series) -> Series:
    # e_oo is eliminated: e_oo = -(e_0 + sum_zeta e_zeta)
    n, W, ring = x.level, x.trunc, x.ring
    if p == INFINITY:
        s = zero(n, W, ring)
        for a in letters(n):
            s = s - letter(a, n, W, ring)
        return s
    return letter(p, n, W, ring)


def dihedral_images(g: Dihedral, x: Series) -> Dict[int, Series]:
    if g.n != x.level:
        raise SeriesError("dihedral element and series have different levels")
    return {a: _point_image(permute_point(g, a), x) for a in letters(x.level)}


def dihedral(g: Dihedral, x: Series) -> Series:
    """Apply ``e_p -> e_{g p}`` (with ``e_oo`` eliminated) to ``x``."""
    return substitute(x, dihedral_images(g, x))


def derivation_images(a: Series, x: Series) -> Dict[int, Series]:
    if a.constant != 0:
        raise SeriesError("special_derivation: a must have zero constant term")
    n = x.level
    out = {}
    for b in letters(n):
        if b == ZERO:
            continue
        ra = rotate(exponent(b), a)
        e = letter(b, n, x.trunc, x.ring)
        # [-ra, e] = e ra - ra e
        out[b] = concat_mul(e, ra) - concat_mul(ra, e)
    return out


def special_derivation(a: Series, x: Series) -> Series:
    """``d_a``: ``e_0 -> 0``, ``e_zeta -> [-[zeta](a), e_zeta]``, Leibniz on words."""
    x._check(a)
    return apply_derivation(x, derivation_images(a, x))


def ihara_bracket(a: Series, b: Series, check: bool = False) -> Series:
    """``{a, b} = [a, b] + d_a(b) - d_b(a)``."""
    if check:
        for s in (a, b):
            if not is_primitive(s):
                raise NotPrimitiveError("ihara_bracket needs Lie elements", s)
    return (concat_mul(a, b) - concat_mul(b, a)
            + special_derivation(a, b) - special_derivation(b, a))


def twist_images(a: Series, x: Series) -> Dict[int, Series]:
    n = x.level
    out = {}
    for b in letters(n):
        if b == ZERO:
            out[b] = letter(ZERO, n, x.trunc, x.ring)
            continue
        ra = rotate(exponent(b), a)
        e = letter(b, n, x.trunc, x.ring)
        out[b] = concat_mul(concat_mul(grouplike_inverse(ra, check=False), e), ra)
    return out


def _require_grouplike(*gs: Series) -> None:
    for g in gs:
        if not is_grouplike(g):
            raise SeriesError("expected a group-like series")


def twist_auto(a: Series, x: Series, check: bool = True) -> Series:
    """``<a>_0(x)`` for group-like ``a``."""
    x._check(a)
    if check:
        _require_grouplike(a)
    return substitute(x, twist_images(a, x))


def circ(a: Series, b: Series, check: bool = True) -> Series:
    """Twisted product ``a o b = a <a>_0(b)``."""
    if check:
        _require_grouplike(a, b)
    return concat_mul(a, twist_auto(a, b, check=False))


def circ_inverse(a: Series, check: bool = True) -> Series:
    """``b`` with ``a o b = 1``, solved one weight at a time.

    ``<a>_0`` is unipotent for the weight filtration, so the fixed-point
    iteration ``b <- b + (a^-1 - <a>_0(b))`` gains one weight per step.
    """
    if check:
        _require_grouplike(a)
    target = grouplike_inverse(a, check=False)
    images = twist_images(a, a)
    b = target
    for _ in range(a.trunc):
        r = target - substitute(b, images)
        if r.is_zero():
            break
        b = b + r
    return b


def torsor_act(a: Series, x: Series) -> Series:
    """Infinitesimal action ``x -> a x + d_a(x)`` on the right module."""
    if a.constant != 0:
        raise SeriesError("torsor_act: a must have zero constant term")
    return concat_mul(a, x) + special_derivation(a, x)


def exp_ihara(a: Series, check: bool = True) -> Series:
    """Exponential of the twisted group: ``sum_n (mu_a + d_a)^n / n!`` applied to 1.

    Each application raises the weight by at least one, so at most
    ``trunc`` terms contribute.
    """
    if a.constant != 0:
        raise SeriesError("exp_ihara: a must have zero constant term")
    if check and a.ring.exact and not is_primitive(a):
        raise NotPrimitiveError("exp_ihara needs a Lie element", a)
    images = derivation_images(a, a)
    term = one(a.level, a.trunc, a.ring)
    total = term
    for n in range(1, a.trunc + 1):
        term = (concat_mul(a, term) + apply_derivation(term, images)) / n
        if term.is_zero():
            break
        total = total + term
    return total


def exp_ihara_leading(a: Series) -> Series:
    """Terms through cubic order, written out as in the closed-form expansion.

    ``a + (a^2 + d_a a)/2 + (a^3 + 2 a d_a(a) + d_a(a) a + d_a^2(a))/6``;
    agrees with :func:`exp_ihara` in weights ``<= 3`` when ``a`` has no
    constant term.
    """
    da = special_derivation(a, a)
    dda = special_derivation(a, da)
    a2 = concat_mul(a, a)
    a3 = concat_mul(a2, a)
    cubic = a3 + concat_mul(a, da) * 2 + concat_mul(da, a) + dda
    return one(a.level, a.trunc, a.ring) + a + (a2 + da) / 2 + cubic / 6

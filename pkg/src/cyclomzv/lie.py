"""The graded free Lie algebra on ``e_0, (e_zeta)``: Lyndon basis and primitivity.

Lie elements are ordinary exact :class:`~cyclomzv.series.Series` that happen
to be primitive.  Coordinates are taken in the Lyndon basis with standard
(right) bracketing, whose expansion ``P_l = l + (larger words)`` makes
membership testing a unitriangular solve.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List

from .alphabet import Word, check_level, format_word
from .series import QQ, Series, SeriesError, commutator


class NotPrimitiveError(SeriesError):
    """The series is not in the Lie span; ``residual`` is what is left over."""

    def __init__(self, message: str, residual: Series):
        super().__init__(message)
        self.residual = residual


def mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def witt_dim(k: int, n: int) -> int:
    """Dimension of the degree-``n`` part of the free Lie algebra on ``k`` letters."""
    if k < 1 or n < 1:
        raise ValueError("witt_dim needs k >= 1 and n >= 1")
    total = sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


def is_lyndon(w: Word) -> bool:
    """Strictly smaller than each of its proper rotations (nonempty)."""
    return bool(w) and all(w < w[i:] + w[:i] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def lyndon_words(level: int, n: int) -> List[Word]:
    """Lyndon words of length ``n`` over ``N + 1`` letters, lexicographically.

    Duval's generation algorithm enumerates all Lyndon words of length
    ``<= n`` in lexicographic order; we keep those of length exactly ``n``.
    """
    check_level(level)
    if n < 1:
        raise ValueError("Lyndon words have length >= 1")
    k = level + 1
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == n:
            out.append(tuple(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def standard_factorization(l: Word):
    """``l = u v`` with ``v`` the longest proper Lyndon suffix."""
    for i in range(1, len(l)):
        if is_lyndon(l[i:]):
            return l[:i], l[i:]
    raise ValueError(f"{format_word(l)!r} has no standard factorization")


@lru_cache(maxsize=None)
def _expand(l: Word, level: int, trunc: int) -> Series:
    if len(l) == 1:
        return Series._raw(level, trunc, QQ, {l: Fraction(1)})
    u, v = standard_factorization(l)
    return commutator(_expand(u, level, trunc), _expand(v, level, trunc))


def lyndon_expand(l: Word, level: int, trunc: int = None) -> Series:
    """Standard bracketing ``P_l`` of the Lyndon word ``l``."""
    l = tuple(l)
    if not is_lyndon(l):
        raise ValueError(f"{format_word(l)!r} is not a Lyndon word")
    if trunc is None:
        trunc = len(l)
    if len(l) > trunc:
        raise SeriesError("Lyndon word heavier than the truncation")
    return _expand(l, level, trunc)


def bracket(a: Series, b: Series) -> Series:
    """Lie bracket ``ab - ba`` in the concatenation algebra."""
    return commutator(a, b)


def to_lyndon_coords(x: Series) -> Dict[Word, Fraction]:
    """Coordinates of a primitive exact series in the Lyndon basis.

    Raises :class:`NotPrimitiveError` carrying the unexplained remainder.
    """
    if not x.ring.exact:
        raise SeriesError("Lyndon coordinates need the exact ring")
    if x.constant != 0:
        raise NotPrimitiveError("nonzero constant term", x.part(0))
    coords: Dict[Word, Fraction] = {}
    rest = dict(x.items())
    while rest:
        # the smallest remaining word must be the leading word of some P_l
        w = min(rest, key=lambda u: (len(u), u))
        if not is_lyndon(w):
            raise NotPrimitiveError(
                f"not primitive: leading word {format_word(w)!r} is not Lyndon",
                Series._raw(x.level, x.trunc, QQ, rest))
        c = rest[w]
        coords[w] = c
        for u, v in _expand(w, x.level, x.trunc).items():
            r = rest.get(u, 0) - c * v
            if r:
                rest[u] = r
            else:
                rest.pop(u, None)
    return coords


def from_coords(coords: Dict[Word, Fraction], level: int, trunc: int) -> Series:
    out: Dict[Word, Fraction] = {}
    for l, c in coords.items():
        if len(l) > trunc or not c:
            continue
        for u, v in lyndon_expand(l, level, trunc).items():
            out[u] = out.get(u, 0) + c * v
    return Series._raw(level, trunc, QQ, out)


def is_primitive(x: Series) -> bool:
    """Whether ``x`` lies in the (completed, truncated) free Lie algebra."""
    try:
        to_lyndon_coords(x)
    except NotPrimitiveError:
        return False
    return True


def lie_basis(level: int, trunc: int) -> List[Series]:
    """Lyndon basis elements of weights ``1..trunc``."""
    return [lyndon_expand(l, level, trunc)
            for n in range(1, trunc + 1) for l in lyndon_words(level, n)]


def random_lie(rng, level: int, trunc: int, terms: int = 4, height: int = 5,
               min_weight: int = 1) -> Series:
    """A random Lie element with small integer-ratio coordinates.

    ``rng`` is a :class:`random.Random`; used by property checks.
    """
    pool = [l for n in range(min_weight, trunc + 1) for l in lyndon_words(level, n)]
    coords = {}
    for l in rng.sample(pool, min(terms, len(pool))):
        coords[l] = Fraction(rng.randint(-height, height), rng.randint(1, 3))
    return from_coords(coords, level, trunc)

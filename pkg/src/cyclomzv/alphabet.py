"""Letters, words and marked points for the level-N alphabet.

Letters are small integers: ``0`` is ``e_0`` and ``1 + k`` is ``e_{zeta^k}``
for a fixed primitive N-th root of unity ``zeta``.  A word is a tuple of
letters.  The integer encoding makes the natural tuple order coincide with
the letter order ``e_0 < e_1 < e_zeta < ... < e_{zeta^{N-1}}`` used by the
Lyndon machinery, and keeps roots of unity purely symbolic.

Marked points ``{0, oo} u mu_N`` are encoded the same way, with
:data:`INFINITY` (``-1``) for the point at infinity.  Infinity never occurs
inside a word: ``e_oo = -(e_0 + sum e_zeta)`` is eliminated wherever it
would appear.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence, Tuple

Letter = int
Word = Tuple[int, ...]
Point = int

ZERO: Letter = 0
E1: Letter = 1
INFINITY: Point = -1
EMPTY: Word = ()


class WordError(ValueError):
    """Raised for malformed word text or words that do not fit the level."""


def check_level(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"level N must be a positive integer, got {n!r}")
    return n


def root(k: int, n: int) -> Letter:
    """The letter ``e_{zeta^k}``, with ``k`` reduced mod ``n``."""
    return 1 + k % n


def exponent(letter: Letter) -> int:
    """Exponent ``k`` of a root letter ``e_{zeta^k}``."""
    if letter <= 0:
        raise ValueError(f"letter {letter!r} is not a root of unity")
    return letter - 1


def is_root(letter: Letter) -> bool:
    return letter > 0


def letters(n: int) -> range:
    """All letters of level ``n`` in increasing order."""
    return range(n + 1)


def num_letters(n: int) -> int:
    return n + 1


def words(n: int, weight: int) -> Iterator[Word]:
    """All words of the given weight, in lexicographic order."""
    return product(letters(n), repeat=weight)


def words_upto(n: int, trunc: int) -> Iterator[Word]:
    """All words of weight ``<= trunc``, ordered by weight then lexicographically."""
    for k in range(trunc + 1):
        yield from words(n, k)


def validate_word(w: Sequence[int], n: int) -> Word:
    w = tuple(w)
    for a in w:
        if not isinstance(a, int) or a < 0 or a > n:
            raise WordError(f"letter {a!r} is not valid at level N={n}")
    return w


def is_convergent(w: Word) -> bool:
    """Whether the iterated integral attached to ``w`` converges on ``[0, 1]``.

    The first letter is the outermost integration (the one reaching 1), so a
    word diverges when it starts with ``e_1`` or ends with ``e_0``.
    """
    if not w:
        raise WordError("empty word has no convergence class")
    return w[0] != E1 and w[-1] != ZERO


def parse_letter(token: str, n: int) -> Letter:
    if token == "0":
        return ZERO
    if token == "1":
        return root(0, n)
    if token.startswith("w^"):
        exp = token[2:]
        try:
            k = int(exp)
        except ValueError:
            raise WordError(f"exponent {exp!r} in token {token!r} is not an integer") from None
        return root(k, n)
    if not token:
        raise WordError("empty token")
    raise WordError(f"unknown token {token!r}")


def format_letter(a: Letter) -> str:
    if a == ZERO:
        return "0"
    if a == E1:
        return "1"
    return f"w^{a - 1}"


def parse_word(s: str, n: int) -> Word:
    """Parse ``"0.w^2.1"`` style text; the empty string is the empty word."""
    check_level(n)
    s = s.strip()
    if not s:
        return EMPTY
    return tuple(parse_letter(tok.strip(), n) for tok in s.split("."))


def format_word(w: Word) -> str:
    return ".".join(format_letter(a) for a in w)


@dataclass(frozen=True)
class Dihedral:
    """An element of ``Z/2 x| mu_N`` acting on ``{0, oo} u mu_N``.

    Acts by ``u -> zeta^rot * u^(-1 if flip else 1)``.  The product
    ``g * h`` means "apply ``g`` first, then ``h``", so that
    ``(f1, r1) * (f2, r2) = (f1 ^ f2, r2 + (-1)^f2 r1)``.
    """

    n: int
    flip: bool = False
    rot: int = 0

    def __post_init__(self) -> None:
        check_level(self.n)
        object.__setattr__(self, "rot", self.rot % self.n)
        object.__setattr__(self, "flip", bool(self.flip))

    def __mul__(self, other: "Dihedral") -> "Dihedral":
        if self.n != other.n:
            raise ValueError("dihedral elements of different levels")
        r = other.rot + (-self.rot if other.flip else self.rot)
        return Dihedral(self.n, self.flip ^ other.flip, r)

    def inverse(self) -> "Dihedral":
        return Dihedral(self.n, self.flip, self.rot if self.flip else -self.rot)

    @classmethod
    def elements(cls, n: int) -> Iterator["Dihedral"]:
        for f in (False, True):
            for r in range(n):
                yield cls(n, f, r)


def permute_point(g: Dihedral, p: Point) -> Point:
    """Image of a marked point under the dihedral element ``g``."""
    if p == ZERO:
        return INFINITY if g.flip else ZERO
    if p == INFINITY:
        return ZERO if g.flip else INFINITY
    k = exponent(p)
    if g.flip:
        k = -k
    return root(k + g.rot, g.n)

"""Truncated noncommutative formal series over the level-N alphabet.

A :class:`Series` is a sparse map from words of weight ``<= trunc`` to
coefficients in one of two rings: exact rationals (:data:`QQ`) or complex
floats at a fixed binary precision (:func:`CC`).  Every operation drops
terms of weight above the smallest truncation involved, which realises the
pro-unipotent limit one level at a time.

Concatenation is the product of the completed free associative algebra; the
shuffle product is its dual.  Group-like series (constant term 1, all
shuffle relations) are the points of the pro-unipotent group and
``exp``/``log`` link them with primitive (Lie) series.
"""
from __future__ import annotations

import contextlib
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import mpmath

from .alphabet import EMPTY, Word, check_level, format_word, validate_word, words_upto

Coeff = object


class SeriesError(ValueError):
    """Level, ring or truncation mismatch, or a violated precondition."""


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: ``"Q"`` (exact) or ``"C"`` with ``bits`` of precision."""

    kind: str
    bits: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("Q", "C"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "C" and self.bits < 16:
            raise ValueError("complex ring needs at least 16 bits of precision")

    @property
    def exact(self) -> bool:
        return self.kind == "Q"

    def context(self):
        if self.exact:
            return contextlib.nullcontext()
        return mpmath.workprec(self.bits)

    def coerce(self, c) -> Coeff:
        if self.exact:
            if isinstance(c, Fraction):
                return c
            if isinstance(c, int):
                return Fraction(c)
            if isinstance(c, str):
                return Fraction(c)
            raise SeriesError(f"cannot use {type(c).__name__} {c!r} as an exact coefficient")
        with self.context():
            if isinstance(c, Fraction):
                return mpmath.mpc(mpmath.mpf(c.numerator) / c.denominator)
            return mpmath.mpc(c)

    def default_tol(self):
        if self.exact:
            return 0
        return mpmath.mpf(2) ** (-(self.bits // 2))

    def __str__(self) -> str:
        return "Q" if self.exact else f"C p={self.bits}"


QQ = Ring("Q")


def CC(bits: int) -> Ring:
    return Ring("C", bits)


class Series:
    """Immutable truncated series ``sum_w c_w w``.

    ``coeffs`` never holds zeros and never holds words heavier than
    ``trunc``.  Arithmetic operators: ``+``, ``-``, ``*`` (concatenation,
    or scaling by a number), ``/`` by a number.
    """

    __slots__ = ("level", "trunc", "ring", "_c")

    def __init__(self, level: int, trunc: int, coeffs: Optional[Mapping] = None,
                 ring: Ring = QQ):
        check_level(level)
        if trunc < 0:
            raise SeriesError("truncation must be >= 0")
        c: Dict[Word, Coeff] = {}
        with ring.context():
            for w, v in (coeffs or {}).items():
                w = validate_word(w, level)
                if len(w) > trunc:
                    raise SeriesError(f"word {format_word(w)!r} exceeds truncation {trunc}")
                v = ring.coerce(v)
                if v != 0:
                    c[w] = c[w] + v if w in c else v
        self.level = level
        self.trunc = trunc
        self.ring = ring
        self._c = {w: v for w, v in c.items() if v != 0}

    @classmethod
    def _raw(cls, level: int, trunc: int, ring: Ring, coeffs: Dict[Word, Coeff]) -> "Series":
        # trusted constructor: drops zeros, assumes valid words within trunc
        s = object.__new__(cls)
        s.level, s.trunc, s.ring = level, trunc, ring
        s._c = {w: v for w, v in coeffs.items() if v != 0}
        return s

    # -- access -----------------------------------------------------------
    def __getitem__(self, w: Word) -> Coeff:
        v = self._c.get(tuple(w))
        if v is None:
            return self.ring.coerce(0)
        return v

    def items(self) -> Iterable[Tuple[Word, Coeff]]:
        return self._c.items()

    def support(self) -> Iterable[Word]:
        return self._c.keys()

    def sorted_items(self) -> list:
        return sorted(self._c.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self) -> Iterator[Word]:
        return iter(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def constant(self) -> Coeff:
        return self[EMPTY]

    def min_weight(self) -> Optional[int]:
        return min((len(w) for w in self._c), default=None)

    def part(self, weight: int) -> "Series":
        """Homogeneous component of the given weight."""
        return Series._raw(self.level, self.trunc, self.ring,
                           {w: v for w, v in self._c.items() if len(w) == weight})

    def truncate(self, trunc: int) -> "Series":
        trunc = min(trunc, self.trunc)
        return Series._raw(self.level, trunc, self.ring,
                           {w: v for w, v in self._c.items() if len(w) <= trunc})

    def with_trunc(self, trunc: int) -> "Series":
        """Same coefficients, declared truncation ``trunc`` (may grow)."""
        if any(len(w) > trunc for w in self._c):
            return self.truncate(trunc)
        return Series._raw(self.level, trunc, self.ring, self._c)

    def map_words(self, f: Callable[[Word], Word]) -> "Series":
        out: Dict[Word, Coeff] = {}
        with self.ring.context():
            for w, v in self._c.items():
                u = f(w)
                out[u] = out[u] + v if u in out else v
        return Series._raw(self.level, self.trunc, self.ring, out)

    def to_ring(self, ring: Ring) -> "Series":
        if ring == self.ring:
            return self
        if ring.exact:
            raise SeriesError("cannot convert a float series to exact rationals")
        with ring.context():
            return Series._raw(self.level, self.trunc, ring,
                               {w: ring.coerce(v) for w, v in self._c.items()})

    def max_abs(self):
        """Largest coefficient modulus (0 for the zero series)."""
        with self.ring.context():
            return max((abs(v) for v in self._c.values()), default=0)

    # -- linear structure ------------------------------------------------
    def _check(self, other: "Series") -> int:
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if other.level != self.level:
            raise SeriesError(f"level mismatch: N={self.level} vs N={other.level}")
        if other.ring != self.ring:
            raise SeriesError(f"ring mismatch: {self.ring} vs {other.ring}")
        return min(self.trunc, other.trunc)

    def __add__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        W = self._check(other)
        with self.ring.context():
            out = {w: v for w, v in self._c.items() if len(w) <= W}
            for w, v in other._c.items():
                if len(w) <= W:
                    out[w] = out.get(w, 0) + v
        return Series._raw(self.level, W, self.ring, out)

    def __neg__(self) -> "Series":
        return Series._raw(self.level, self.trunc, self.ring,
                           {w: -v for w, v in self._c.items()})

    def __sub__(self, other: "Series") -> "Series":
        if not isinstance(other, Series):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Series":
        c = self.ring.coerce(c)
        with self.ring.context():
            return Series._raw(self.level, self.trunc, self.ring,
                               {w: c * v for w, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, Series):
            return concat_mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __truediv__(self, c):
        c = self.ring.coerce(c)
        with self.ring.context():
            return Series._raw(self.level, self.trunc, self.ring,
                               {w: v / c for w, v in self._c.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return (self.level, self.trunc, self.ring) == (other.level, other.trunc, other.ring) \
            and self._c == other._c

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        terms = []
        for w, v in self.sorted_items()[:12]:
            terms.append(f"{v}*{format_word(w) or '1'}")
        more = " + ..." if len(self._c) > 12 else ""
        body = " + ".join(terms) or "0"
        return f"Series(N={self.level}, W={self.trunc}, {self.ring}: {body}{more})"


# -- constructors ------------------------------------------------------------

def zero(level: int, trunc: int, ring: Ring = QQ) -> Series:
    return Series._raw(level, trunc, ring, {})


def one(level: int, trunc: int, ring: Ring = QQ) -> Series:
    return Series._raw(level, trunc, ring, {EMPTY: ring.coerce(1)})


def monomial(w: Sequence[int], c=1, level: int = 1, trunc: int = 0,
             ring: Ring = QQ) -> Series:
    w = validate_word(w, check_level(level))
    if len(w) > trunc:
        raise SeriesError(f"monomial of weight {len(w)} exceeds truncation {trunc}")
    return Series(level, trunc, {w: c}, ring)


def letter(a: int, level: int, trunc: int, ring: Ring = QQ) -> Series:
    return monomial((a,), 1, level, trunc, ring)


# -- products ------------------------------------------------------------------

def _by_weight(s: Series, W: int) -> list:
    buckets: list = [[] for _ in range(W + 1)]
    for w, v in s._c.items():
        if len(w) <= W:
            buckets[len(w)].append((w, v))
    return buckets


def concat_mul(a: Series, b: Series) -> Series:
    """Concatenation product, truncated at ``min(a.trunc, b.trunc)``."""
    W = a._check(b)
    right = _by_weight(b, W)
    left = a.sorted_items() if not a.ring.exact else a._c.items()
    out: Dict[Word, Coeff] = {}
    get = out.get
    with a.ring.context():
        for u, cu in left:
            room = W - len(u)
            if room < 0:
                continue
            for k in range(room + 1):
                for v, cv in right[k]:
                    w = u + v
                    out[w] = get(w, 0) + cu * cv
    return Series._raw(a.level, W, a.ring, out)


@lru_cache(maxsize=1 << 18)
def shuffle_words(u: Word, v: Word) -> Tuple[Tuple[Word, int], ...]:
    """Multiset ``u ⧢ v`` as ``((word, multiplicity), ...)``.

    Dynamic programming over suffix pairs: ``au ⧢ bv = a(u ⧢ bv) + b(au ⧢ v)``.
    """
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: Dict[Word, int] = defaultdict(int)
    a, b = u[:1], v[:1]
    for w, m in shuffle_words(u[1:], v):
        acc[a + w] += m
    for w, m in shuffle_words(u, v[1:]):
        acc[b + w] += m
    return tuple(sorted(acc.items()))


def shuffle_mul(a: Series, b: Series) -> Series:
    """Shuffle product, truncated at ``min(a.trunc, b.trunc)``."""
    W = a._check(b)
    right = _by_weight(b, W)
    left = a.sorted_items() if not a.ring.exact else a._c.items()
    out: Dict[Word, Coeff] = {}
    with a.ring.context():
        for u, cu in left:
            room = W - len(u)
            for k in range(room + 1):
                for v, cv in right[k]:
                    p = cu * cv
                    for w, m in shuffle_words(u, v):
                        out[w] = out.get(w, 0) + m * p
    return Series._raw(a.level, W, a.ring, out)


# -- exponential and logarithm -----------------------------------------------

def exp_concat(x: Series) -> Series:
    """``sum_k x^k / k!`` for ``x`` without constant term."""
    if x.constant != 0:
        raise SeriesError("exp_concat needs a series with zero constant term")
    result = one(x.level, x.trunc, x.ring)
    term = result
    for k in range(1, x.trunc + 1):
        term = (term * x) / k
        if term.is_zero():
            break
        result = result + term
    return result


def log_concat(g: Series) -> Series:
    """``sum_k (-1)^(k+1) (g - 1)^k / k`` for ``g`` with constant term 1."""
    if g.constant != g.ring.coerce(1):
        raise SeriesError("log_concat needs a series with constant term 1")
    y = g - one(g.level, g.trunc, g.ring)
    result = zero(g.level, g.trunc, g.ring)
    power = one(g.level, g.trunc, g.ring)
    for k in range(1, g.trunc + 1):
        power = power * y
        if power.is_zero():
            break
        term = power / k
        result = result + term if k % 2 else result - term
    return result


# -- group-like elements ----------------------------------------------------------

def grouplike_defect(g: Series) -> Tuple[object, Optional[Tuple[Word, Word]]]:
    """Largest shuffle-relation residual of ``g`` and the pair realising it.

    Checks ``|g(1) - 1|`` and ``|g(u) g(v) - sum_{w in u⧢v} g(w)|`` for all
    nonempty ``u, v`` with ``|u| + |v| <= trunc``.  Exact rings return an
    exact rational residual.
    """
    ring = g.ring
    W = g.trunc
    with ring.context():
        worst = abs(g.constant - 1)
        where = None if worst == 0 else (EMPTY, EMPTY)
        all_words = [w for w in words_upto(g.level, W - 1) if w]
        for i, u in enumerate(all_words):
            gu = g[u]
            for v in all_words[i:]:
                if len(u) + len(v) > W:
                    break
                s = 0
                for w, m in shuffle_words(u, v):
                    c = g._c.get(w)
                    if c is not None:
                        s += m * c
                r = abs(gu * g[v] - s)
                if r > worst:
                    worst, where = r, (u, v)
    return worst, where


def is_grouplike(g: Series, tol=None) -> bool:
    """Constant term 1 and every shuffle relation holds to within ``tol``."""
    if tol is None:
        tol = g.ring.default_tol()
    elif g.ring.exact and tol != 0:
        raise SeriesError("exact series are checked with tol = 0")
    worst, _ = grouplike_defect(g)
    return worst <= tol


def antipode(g: Series) -> Series:
    return Series._raw(g.level, g.trunc, g.ring,
                       {w[::-1]: (-v if len(w) % 2 else v) for w, v in g._c.items()})


def grouplike_inverse(g: Series, check: bool = True) -> Series:
    """Inverse of a group-like series via the antipode."""
    if check and not is_grouplike(g):
        raise SeriesError("grouplike_inverse: series is not group-like")
    return antipode(g)


# -- algebra morphisms and derivations --------------------------------------------

def substitute(x: Series, images: Mapping[int, Series]) -> Series:
    """Apply the continuous algebra endomorphism ``letter -> images[letter]``.

    Every image must have zero constant term, so words heavier than the
    truncation can be discarded before expanding.
    """
    ring, W = x.ring, x.trunc
    img = {}
    for a, s in images.items():
        x._check(s)
        if s.constant != 0:
            raise SeriesError("substitution images need zero constant term")
        img[a] = _by_weight(s, W)

    def expand(terms: Dict[Word, Coeff], T: int) -> Dict[Word, Coeff]:
        # Horner on the first letter: phi(a u) = phi(a) phi(u)
        out: Dict[Word, Coeff] = {}
        groups: Dict[int, Dict[Word, Coeff]] = defaultdict(dict)
        for w, c in terms.items():
            if len(w) > T:
                continue
            if w:
                groups[w[0]][w[1:]] = c
            else:
                out[EMPTY] = out.get(EMPTY, 0) + c
        for a in sorted(groups):
            tail = expand(groups[a], T - 1)
            head = img[a]
            for v, cv in tail.items():
                room = T - len(v)
                for k in range(1, room + 1):
                    for u, cu in head[k]:
                        w = u + v
                        out[w] = out.get(w, 0) + cu * cv
        return out

    with ring.context():
        out = expand(dict(x._c), W)
    return Series._raw(x.level, W, ring, out)


def apply_derivation(x: Series, images: Mapping[int, Series]) -> Series:
    """Apply the continuous derivation with ``letter -> images[letter]``.

    Letters absent from ``images`` are sent to zero.  Leibniz rule:
    ``D(a_1...a_n) = sum_i a_1..a_{i-1} D(a_i) a_{i+1}..a_n``.
    """
    ring, W = x.ring, x.trunc
    img = {}
    for a, s in images.items():
        x._check(s)
        if s.constant != 0:
            raise SeriesError("derivation images need zero constant term")
        if not s.is_zero():
            img[a] = _by_weight(s, W)
    out: Dict[Word, Coeff] = {}
    with ring.context():
        for w, c in (x.sorted_items() if not ring.exact else x._c.items()):
            n = len(w)
            for i, a in enumerate(w):
                head = img.get(a)
                if head is None:
                    continue
                pre, post = w[:i], w[i + 1:]
                for k in range(1, W - n + 2):
                    for v, cv in head[k]:
                        u = pre + v + post
                        out[u] = out.get(u, 0) + c * cv
    return Series._raw(x.level, W, ring, out)


def commutator(a: Series, b: Series) -> Series:
    return concat_mul(a, b) - concat_mul(b, a)

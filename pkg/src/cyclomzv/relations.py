"""Integer relation detection among numeric coefficients, weight by weight.

A relation among ``x_1..x_n`` is found by LLL-reducing the lattice spanned by
the rows ``(e_i | round(10^digits x_i))``; a short reduced row is a small
integer vector ``v`` with ``sum v_i x_i`` nearly zero.  Complex inputs use two
scaled columns (real and imaginary parts), so relations are over ``Q``.
Candidate relations are confirmed against values computed at a higher
precision before they are reported.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import mpmath

from .alphabet import Word, format_word, words
from .dims import BoundTable
from .series import Series


class InsufficientPrecisionError(ValueError):
    """More digits were requested than the input values carry."""


def lll_reduce(basis: List[List[int]], delta: Fraction = Fraction(99, 100)) -> List[List[int]]:
    """LLL reduction of integer row vectors (exact rational Gram-Schmidt)."""
    b = [list(r) for r in basis]
    n = len(b)
    if n == 0:
        return b

    def gram_schmidt():
        bstar: List[List[Fraction]] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms: List[Fraction] = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                if norms[j]:
                    mu[i][j] = sum(x * y for x, y in zip(b[i], bstar[j])) / norms[j]
                    v = [vi - mu[i][j] * bj for vi, bj in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(sum(x * x for x in v))
        return mu, norms, bstar

    mu, norms, bstar = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for i in range(j + 1):
                    mu[k][i] -= q * (mu[j][i] if i < j else 1)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, norms, bstar = gram_schmidt()
            k = max(k - 1, 1)
    return b


def _components(x) -> List[object]:
    if isinstance(x, mpmath.mpc) or isinstance(x, complex):
        return [mpmath.re(x), mpmath.im(x)]
    return [mpmath.mpf(x)]


def _normalize(v: List[int]) -> List[int]:
    g = 0
    for a in v:
        g = math.gcd(g, a)
    if g == 0:
        return v
    v = [a // g for a in v]
    first = next(a for a in v if a)
    return v if first > 0 else [-a for a in v]


def relation_residual(v: Sequence[int], xs: Sequence[object]):
    return abs(mpmath.fsum(a * x for a, x in zip(v, xs)))


def find_integer_relation(xs: Sequence[object], digits: int, coeff_bound: int = 10 ** 6,
                          value_bits: Optional[int] = None,
                          verify_xs: Optional[Sequence[object]] = None) -> Optional[List[int]]:
    """Small integer vector ``v`` with ``|sum v_i x_i| < 10^(-digits/2)``, or None.

    ``value_bits`` is the binary precision the inputs were computed at; a
    request for more digits than that raises
    :class:`InsufficientPrecisionError`.  Python floats count as 53 bits.
    When ``verify_xs`` (the same values at higher precision) is given, a
    candidate is kept only if its residual there is at least ten orders of
    magnitude smaller, or below ``10^(-1.4 digits)``.
    """
    if not xs:
        return None
    if value_bits is None and all(isinstance(x, (float, complex)) for x in xs):
        value_bits = 53
    if value_bits is not None and digits > value_bits * math.log10(2):
        raise InsufficientPrecisionError(
            f"{digits} digits requested but values carry only "
            f"{value_bits * math.log10(2):.1f}")
    n = len(xs)
    with mpmath.workdps(digits + 20):
        comps = [_components(x) for x in xs]
        width = max(len(c) for c in comps)
        scale = mpmath.mpf(10) ** digits
        rows = []
        for i, c in enumerate(comps):
            c = c + [mpmath.mpf(0)] * (width - len(c))
            rows.append([int(i == j) for j in range(n)] + [int(mpmath.nint(scale * t)) for t in c])
        threshold = mpmath.mpf(10) ** (-(digits / 2))
        for row in lll_reduce(rows):
            v = row[:n]
            if not any(v) or max(abs(a) for a in v) > coeff_bound:
                continue
            low = relation_residual(v, xs)
            if low >= threshold:
                continue
            if verify_xs is not None and not _shrinks(v, xs, verify_xs, low, digits):
                continue
            return _normalize(v)
    return None


def _shrinks(v, xs, verify_xs, low, digits) -> bool:
    if len(verify_xs) != len(xs):
        raise ValueError("verify_xs must match xs in length")
    with mpmath.workdps(int(1.5 * digits) + 20):
        high = relation_residual(v, verify_xs)
        return high <= max(low * mpmath.mpf("1e-10"), mpmath.mpf(10) ** (-1.4 * digits))


@dataclass
class RelationCandidate:
    weight: int
    words: List[Word]
    coeffs: List[int]
    residual: object
    verified_at_bits: Optional[int] = None
    verified_residual: object = None

    def as_dict(self) -> dict:
        return {
            "weight": self.weight,
            "words": [format_word(w) or "1" for w in self.words],
            "coeffs": self.coeffs,
            "residual": mpmath.nstr(self.residual, 5),
            "verified_at_bits": self.verified_at_bits,
            "verified_residual": None if self.verified_residual is None
            else mpmath.nstr(self.verified_residual, 5),
        }


@dataclass
class RankReport:
    weight: int
    num_coefficients: int
    num_nonzero: int
    estimated_rank: int
    bound_D_n: Optional[int]
    basis: List[Word] = field(default_factory=list)
    relations: List[RelationCandidate] = field(default_factory=list)

    @property
    def within_bound(self) -> Optional[bool]:
        if self.bound_D_n is None:
            return None
        return self.estimated_rank <= self.bound_D_n

    def as_dict(self) -> dict:
        return {
            "weight": self.weight,
            "num_coefficients": self.num_coefficients,
            "num_nonzero": self.num_nonzero,
            "estimated_rank": self.estimated_rank,
            "bound_D_n": self.bound_D_n,
            "within_bound": self.within_bound,
            "basis": [format_word(w) for w in self.basis],
            "relations": [r.as_dict() for r in self.relations],
        }


def _confirmed(v: List[int], ws: List[Word], low_res, verify: Optional[Series], digits: int):
    if verify is None:
        return True, None
    with verify.ring.context():
        high = relation_residual(v, [verify[w] for w in ws])
        floor = mpmath.mpf(10) ** (-1.4 * digits)
        return bool(high <= max(low_res * mpmath.mpf("1e-10"), floor)), high


def weight_scan(d: Series, weight: int, bounds: Optional[BoundTable], digits: int,
                verify: Optional[Series] = None, coeff_bound: int = 10 ** 6) -> RankReport:
    """Greedy maximal relation-free subset of the weight-``weight`` coefficients.

    Each coefficient is tested against the current independent set; a
    detected relation (re-checked on ``verify``, a higher-precision copy of
    ``d``) marks it dependent, otherwise it joins the set.
    """
    if weight > d.trunc:
        raise ValueError(f"weight {weight} exceeds truncation {d.trunc}")
    ws = list(words(d.level, weight))
    bits = d.ring.bits if not d.ring.exact else None
    basis: List[Word] = []
    relations: List[RelationCandidate] = []
    nonzero = 0
    with d.ring.context():
        zero_tol = mpmath.mpf(10) ** (-digits)
        for w in ws:
            x = d[w]
            if abs(x) <= zero_tol:
                ok, high = _confirmed([1], [w], abs(x), verify, digits)
                relations.append(RelationCandidate(weight, [w], [1], abs(x),
                                                   verify.ring.bits if verify else None, high))
                continue
            nonzero += 1
            xs = [d[b] for b in basis] + [x]
            v = find_integer_relation(xs, digits, coeff_bound, value_bits=bits)
            if v is not None and v[-1] != 0:
                group = basis + [w]
                low = relation_residual(v, xs)
                ok, high = _confirmed(v, group, low, verify, digits)
                if ok:
                    keep = [(c, u) for c, u in zip(v, group) if c]
                    relations.append(RelationCandidate(
                        weight, [u for _, u in keep], [c for c, _ in keep], low,
                        verify.ring.bits if verify else None, high))
                    continue
            basis.append(w)
    D = bounds[weight] if bounds is not None and weight < len(bounds.coeffs) else None
    return RankReport(weight, len(ws), nonzero, len(basis), D, basis, relations)


def cross_weight_scan(d: Series, reports: Sequence[RankReport], digits: int,
                      verify: Optional[Series] = None,
                      coeff_bound: int = 10 ** 6) -> Optional[RelationCandidate]:
    """Diagnostic: a confirmed relation mixing independent values of different weights.

    Values of different weights are expected to be independent, so anything
    returned here points at a numerical problem.
    """
    ws = [w for rep in reports for w in rep.basis]
    if len(ws) < 2:
        return None
    bits = d.ring.bits if not d.ring.exact else None
    with d.ring.context():
        xs = [d[w] for w in ws]
        v = find_integer_relation(xs, digits, coeff_bound, value_bits=bits)
        if v is None:
            return None
        low = relation_residual(v, xs)
    ok, high = _confirmed(v, ws, low, verify, digits)
    if not ok:
        return None
    return RelationCandidate(-1, ws, v, low, verify.ring.bits if verify else None, high)


def relation_as_text(rel: RelationCandidate) -> str:
    terms = [f"{c:+d}*c({format_word(w)})" for c, w in zip(rel.coeffs, rel.words)]
    return " ".join(terms) + " = 0"


def exact_span_rank(vectors: List[Dict[str, Fraction]]) -> int:
    """Rank of rational vectors given as sparse dicts (used by tests)."""
    rows = [dict(v) for v in vectors if v]
    rank = 0
    keys = sorted({k for v in rows for k in v})
    for k in keys:
        piv = next((r for r in rows if r.get(k)), None)
        if piv is None:
            continue
        rows.remove(piv)
        rank += 1
        for r in rows:
            if r.get(k):
                f = r[k] / piv[k]
                for kk, vv in piv.items():
                    r[kk] = r.get(kk, 0) - f * vv
    return rank

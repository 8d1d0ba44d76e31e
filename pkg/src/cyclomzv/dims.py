"""Upper bounds ``D_n`` for the dimension of the span of weight-n coefficients.

The bound is the Hilbert series of a graded polynomial algebra: one extra
generator ``t_0`` (degree 1, or 2 when ``N <= 2``) times the universal
enveloping algebra of a free graded Lie algebra with generator series
``f(t)``, i.e. ``1/(1 - t^deg t_0) * 1/(1 - f(t))``.  Closed forms printed for
the three cases are kept alongside; for ``N >= 3`` they disagree with the
product above and both are reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

from .alphabet import check_level
from .lie import witt_dim

PROOF = "proof-derived"
PRINTED = "printed"


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def num_prime_factors(n: int) -> int:
    count, p = 0, 2
    while p * p <= n:
        if n % p == 0:
            count += 1
            while n % p == 0:
                n //= p
        p += 1
    return count + (n > 1)


def series_inverse(a: List[int], maxw: int) -> List[int]:
    """Power-series inverse of an integer series with constant term 1."""
    if not a or a[0] != 1:
        raise ValueError("series_inverse needs constant term 1")
    out = [0] * (maxw + 1)
    out[0] = 1
    for n in range(1, maxw + 1):
        out[n] = -sum(a[k] * out[n - k] for k in range(1, min(n, len(a) - 1) + 1))
    return out


def series_mul(a: List[int], b: List[int], maxw: int) -> List[int]:
    return [sum(a[i] * b[n - i] for i in range(n + 1) if i < len(a) and n - i < len(b))
            for n in range(maxw + 1)]


def generator_series(N: int, maxw: int) -> List[int]:
    """Coefficients of ``f(t)`` through ``t^maxw``."""
    check_level(N)
    f = [0] * (maxw + 1)
    if N == 1:
        # t^3 / (1 - t^2)
        for n in range(3, maxw + 1, 2):
            f[n] = 1
    elif N == 2:
        # t / (1 - t^2)
        for n in range(1, maxw + 1, 2):
            f[n] = 1
    else:
        phi, nu = euler_phi(N), num_prime_factors(N)
        for n in range(1, maxw + 1):
            f[n] = phi // 2
        if maxw >= 1:
            f[1] += nu - 1
    return f


def t0_degree(N: int) -> int:
    return 2 if N <= 2 else 1


def proof_bounds(N: int, maxw: int) -> List[int]:
    f = generator_series(N, maxw)
    one_minus_f = [1] + [-c for c in f[1:]]
    env = series_inverse(one_minus_f, maxw)
    t0 = [0] * (maxw + 1)
    for n in range(0, maxw + 1, t0_degree(N)):
        t0[n] = 1
    return series_mul(t0, env, maxw)


def printed_bounds(N: int, maxw: int) -> List[int]:
    if N == 1:
        denom = [1, 0, -1, -1]
    elif N == 2:
        denom = [1, -1, -1]
    else:
        phi, nu = euler_phi(N), num_prime_factors(N)
        denom = [1, -(phi // 2 + nu - 1), nu - 1]
    return series_inverse(denom, maxw)


@dataclass
class BoundTable:
    level: int
    nu: int
    phi: int
    t0_degree: int
    coeffs: List[int]
    source: str = PROOF
    other: List[int] = field(default_factory=list)

    @property
    def discrepancy(self) -> bool:
        return bool(self.other) and self.other != self.coeffs

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]


def bound_table(N: int, maxw: int, source: str = PROOF) -> BoundTable:
    """Bounds ``D_0..D_maxw`` from the chosen source; ``other`` holds the alternative."""
    check_level(N)
    if source not in (PROOF, PRINTED):
        raise ValueError(f"unknown source {source!r}")
    proof, printed = proof_bounds(N, maxw), printed_bounds(N, maxw)
    main, other = (proof, printed) if source == PROOF else (printed, proof)
    return BoundTable(N, num_prime_factors(N), euler_phi(N), t0_degree(N), main, source, other)


def lie_v_dims(N: int, maxw: int) -> List[int]:
    """Graded dimensions of the free Lie algebra on ``N + 1`` letters (index 0 is 0)."""
    return [0] + [witt_dim(N + 1, n) for n in range(1, maxw + 1)]

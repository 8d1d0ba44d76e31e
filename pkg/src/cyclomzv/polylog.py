"""High-precision coefficients of the regularized straight-path series ``dch``.

Convergent coefficients are the nested sums

    (-1)^m  sum_{n_1 > ... > n_m > 0}
        sigma(zeta_1^(n_2-n_1) ... zeta_m^(-n_m)) / (n_1^s_1 ... n_m^s_m)

attached to ``e_0^(s_1-1) e_zeta_1 ... e_0^(s_m-1) e_zeta_m``.  They are
evaluated by exact fixed-point partial sums followed by a Richardson-type
extrapolation whose model includes the ``log(M)^k / M^j`` terms that nested
harmonic-type tails produce.  Sampling only at multiples of ``N`` removes the
oscillating part of root-of-unity tails.  Divergent coefficients follow from
shuffle regularization with ``c(e_0) = c(e_1) = 0``.
"""
from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import mpmath

from .alphabet import E1, EMPTY, ZERO, Word, check_level, exponent, format_word, \
    is_convergent, root, words_upto
from .series import CC, Series, SeriesError, shuffle_words

DEFAULT_BITS = 192


class ConvergenceError(ArithmeticError):
    """The extrapolated sum did not reach the requested tolerance."""


class InconsistentInputError(ValueError):
    """Convergent values violate a shuffle relation among themselves."""

    def __init__(self, u: Word, v: Word, residual):
        super().__init__(f"shuffle relation {format_word(u)} x {format_word(v)} "
                         f"violated by {mpmath.nstr(residual, 5)}")
        self.pair = (u, v)
        self.residual = residual


@dataclass(frozen=True)
class MultiIndex:
    """Exponents ``s`` and root-of-unity exponents ``zetas`` of a nested sum."""

    s: Tuple[int, ...]
    zetas: Tuple[int, ...]
    level: int = 1

    def __post_init__(self) -> None:
        check_level(self.level)
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "zetas", tuple(k % self.level for k in self.zetas))
        if not self.s or len(self.s) != len(self.zetas):
            raise ValueError("multi-index needs equally many exponents and roots (>= 1)")
        if any(x < 1 for x in self.s):
            raise ValueError("exponents must be >= 1")

    @property
    def depth(self) -> int:
        return len(self.s)

    @property
    def weight(self) -> int:
        return sum(self.s)

    @property
    def admissible(self) -> bool:
        return not (self.s[0] == 1 and self.zetas[0] == 0)

    def word(self) -> Word:
        w: List[int] = []
        for s, k in zip(self.s, self.zetas):
            w.extend([ZERO] * (s - 1))
            w.append(root(k, self.level))
        return tuple(w)

    @classmethod
    def from_word(cls, w: Word, level: int) -> "MultiIndex":
        if not w or w[-1] == ZERO:
            raise ValueError(f"word {format_word(w)!r} does not end in a root letter")
        s, zetas, run = [], [], 0
        for a in w:
            if a == ZERO:
                run += 1
            else:
                s.append(run + 1)
                zetas.append(exponent(a))
                run = 0
        return cls(tuple(s), tuple(zetas), level)


@dataclass(frozen=True)
class Embedding:
    """``sigma``: the primitive root ``zeta`` goes to ``exp(2 pi i k / N)``."""

    level: int
    k: int = 1

    def __post_init__(self) -> None:
        check_level(self.level)
        object.__setattr__(self, "k", self.k % self.level)
        if math.gcd(self.k, self.level) != 1:
            raise ValueError(f"embedding exponent {self.k} is not coprime to N={self.level}")

    def power(self, e: int):
        """``sigma(zeta)^e`` at the current precision; exact at quarter turns."""
        e = (e * self.k) % self.level
        if (4 * e) % self.level == 0:
            return [mpmath.mpc(1), mpmath.mpc(0, 1), mpmath.mpc(-1), mpmath.mpc(0, -1)][
                4 * e // self.level]
        return mpmath.expjpi(mpmath.mpf(2 * e) / self.level)

    def point(self, letter: int):
        """Complex position of a marked point letter (``e_0`` sits at 0)."""
        if letter == ZERO:
            return mpmath.mpc(0)
        return self.power(exponent(letter))


@dataclass(frozen=True)
class PrecisionCfg:
    bits: int = DEFAULT_BITS
    target_tol: float = 1e-30
    max_terms: int = 200_000
    accel_order: int = 12

    def __post_init__(self) -> None:
        if self.bits < 64:
            raise ValueError("need at least 64 bits")
        if self.accel_order < 2:
            raise ValueError("accel_order must be >= 2")
        if mpmath.mpf(self.target_tol) < mpmath.mpf(2) ** (16 - self.bits):
            raise ValueError(f"target_tol {self.target_tol} leaves fewer than 16 guard bits "
                             f"at {self.bits} bits")

    @classmethod
    def for_weight(cls, weight: int, bits: Optional[int] = None) -> "PrecisionCfg":
        """Defaults: 1e-30 through weight 5, 1e-12 beyond."""
        bits = bits or int(os.environ.get("CYCLOMZV_PRECISION", DEFAULT_BITS))
        tol = 1e-30 if weight <= 5 else 1e-12
        tol = max(tol, float(mpmath.mpf(2) ** (20 - bits)))
        return cls(bits=bits, target_tol=tol)

    @classmethod
    def for_digits(cls, digits: int) -> "PrecisionCfg":
        """Enough bits and extrapolation order for ``digits`` correct decimals."""
        bits = math.ceil(digits * math.log2(10)) + 40
        return cls(bits=bits, target_tol=10.0 ** -(digits + 2),
                   accel_order=max(12, math.ceil((digits + 2) / 2.5)))


@dataclass(frozen=True)
class Estimate:
    value: object
    error: object
    terms: int


# -- nested partial sums --------------------------------------------------------

def _partial_sums(idx: MultiIndex, samples: Sequence[int], frac_bits: int) -> Dict[int, List[int]]:
    """Fixed-point partial sums ``S_M`` split by phase ``zeta^c``.

    ``P[j]`` accumulates ``sum_{n <= M} T_j(n) P[j+1](n-1)``, with
    ``T_j(n) = zeta_{j-1}^n zeta_j^-n / n^s_j``; one pass over ``n`` updates
    all depths, outermost first so it sees the previous inner values.
    """
    N, m = idx.level, idx.depth
    s = idx.s
    want = set(samples)
    top = max(samples)
    out: Dict[int, List[int]] = {}
    if N == 1:
        P = [0] * m + [1 << frac_bits]
        for n in range(1, top + 1):
            for j in range(m):
                inner = P[j + 1]
                if inner:
                    P[j] += inner // n ** s[j]
            if n in want:
                out[n] = [P[0]]
        return out
    step = [((idx.zetas[j - 1] if j else 0) - idx.zetas[j]) % N for j in range(m)]
    Pv = [[0] * N for _ in range(m)] + [[1 << frac_bits] + [0] * (N - 1)]
    for n in range(1, top + 1):
        for j in range(m):
            src, dst = Pv[j + 1], Pv[j]
            d = n ** s[j]
            e = (n * step[j]) % N
            for c in range(N):
                v = src[c]
                if v:
                    t = c + e
                    dst[t - N if t >= N else t] += v // d
        if n in want:
            out[n] = list(Pv[0])
    return out


def _samples(top: int, count: int, N: int) -> List[int]:
    # geometric spacing over [top/16, top], multiples of N
    ms = sorted({N * max(1, round(top / N * 16.0 ** (-i / max(count - 1, 1))))
                 for i in range(count)})
    return ms


def _extrapolate(points: Sequence[Tuple[int, object]], order: int, logs: int):
    """Fit ``S + sum_{j<=order, k<logs} c_jk log(M/M0)^k (M0/M)^j`` exactly."""
    m0 = mpmath.mpf(points[0][0])
    rows, rhs = [], []
    for M, S in points:
        x = m0 / M
        lg = mpmath.log(M / m0)
        row = [mpmath.mpf(1)]
        for j in range(1, order + 1):
            xj = x ** j
            for k in range(logs):
                row.append(xj * lg ** k)
        rows.append(row)
        rhs.append(S)
    sol = mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(rhs))
    return sol[0]


def _accelerate(idx: MultiIndex, sigma: Embedding, cfg: PrecisionCfg, top: int):
    logs = idx.depth
    J = cfg.accel_order
    k_hi, k_lo = 1 + J * logs, 1 + (J - 1) * logs
    s_hi, s_lo = _samples(top, k_hi, idx.level), _samples(top, k_lo, idx.level)
    if len(s_hi) < k_hi or len(s_lo) < k_lo:
        return None, None
    frac = 2 * cfg.bits + 32 + top.bit_length()
    raw = _partial_sums(idx, sorted(set(s_hi) | set(s_lo)), frac)
    # the fit amplifies rounding noise, so the sums carry twice the output bits
    with mpmath.workprec(3 * cfg.bits + 64):
        phases = [sigma.power(c) for c in range(idx.level)]
        scale = mpmath.ldexp(1, -frac)
        sums = {M: mpmath.fsum(mpmath.mpf(v) * z for v, z in zip(vec, phases)) * scale
                for M, vec in raw.items()}
        hi = _fit(s_hi, sums, J, logs)
        lo = _fit(s_lo, sums, J - 1, logs)
        sign = -1 if idx.depth % 2 else 1
        return sign * hi, abs(hi - lo)


def _fit(ms, sums, order, logs):
    # one solve handles real and imaginary parts together
    return _extrapolate([(M, sums[M]) for M in ms], order, logs)


def mpl(idx: MultiIndex, sigma: Optional[Embedding] = None,
        cfg: Optional[PrecisionCfg] = None) -> Estimate:
    """Value of the signed nested sum for an admissible multi-index.

    The error estimate is the gap between two consecutive extrapolation
    orders; the number of summed terms doubles until it is below
    ``cfg.target_tol``.  Raises :class:`ConvergenceError` otherwise.
    """
    sigma = sigma or Embedding(idx.level)
    cfg = cfg or PrecisionCfg.for_weight(idx.weight)
    if sigma.level != idx.level:
        raise ValueError("embedding and multi-index have different levels")
    if not idx.admissible:
        raise ValueError(f"multi-index {idx.s}/{idx.zetas} is not admissible "
                         "(s_1 = 1 with zeta_1 = 1 diverges)")
    J = cfg.accel_order
    top = idx.level * max(2000, 80 * (1 + J * idx.depth))
    err = None
    while top <= max(cfg.max_terms, idx.level * 2000):
        value, err = _accelerate(idx, sigma, cfg, top)
        if err is not None and err <= cfg.target_tol:
            with mpmath.workprec(cfg.bits):
                return Estimate(+value, +err, top)
        top *= 2
    raise ConvergenceError(
        f"nested sum {idx.s}/{idx.zetas} did not reach {cfg.target_tol:g} within "
        f"{cfg.max_terms} terms (last estimate {mpmath.nstr(err, 3) if err is not None else '?'})")


# -- regularization ------------------------------------------------------------------

def _leading(w: Word, a: int) -> int:
    r = 0
    while r < len(w) and w[r] == a:
        r += 1
    return r


def _trailing(w: Word, a: int) -> int:
    r = 0
    while r < len(w) and w[-1 - r] == a:
        r += 1
    return r


def regularize(partial: Mapping[Word, object], level: int, trunc: int,
               order: str = "zeros-first", zero=0, check: bool = True, tol=None) -> Dict[Word, object]:
    """Extend convergent coefficients to every nonempty word of weight ``<= trunc``.

    The extension is the unique one satisfying all shuffle relations with
    ``c(e_0) = c(e_1) = 0``.  A word ``u e_0^r`` (``u`` not ending in ``e_0``)
    is solved from ``c(u ⧢ e_0^r) = 0``; a word ``e_1^r u`` from
    ``c(e_1^r ⧢ u) = 0``.  ``order`` picks which of the two is stripped first;
    both give the same linear combination of convergent values.

    Only linear operations are applied to values, so they may be numbers or
    any vector type (pass a matching ``zero``).
    """
    if order not in ("zeros-first", "ones-first"):
        raise ValueError(f"unknown order {order!r}")
    values: Dict[Word, object] = {}
    for w in words_upto(level, trunc):
        if w and is_convergent(w):
            if w not in partial:
                raise KeyError(f"missing convergent coefficient {format_word(w)!r}")
            values[w] = partial[w]
    if check:
        _check_consistency(values, trunc, tol)

    def by_relation(w: Word, u: Word, v: Word):
        acc = zero
        for x, m in shuffle_words(u, v):
            if x != w:
                acc = acc + m * val(x)
        return -acc

    def val(w: Word):
        got = values.get(w)
        if got is not None:
            return got
        ones, zeros = _leading(w, E1), _trailing(w, ZERO)
        if ones == len(w) or zeros == len(w):
            res = zero
        elif zeros and (order == "zeros-first" or not ones):
            res = by_relation(w, w[:-zeros], w[-zeros:])
        elif ones:
            res = by_relation(w, w[:ones], w[ones:])
        else:
            raise KeyError(f"missing convergent coefficient {format_word(w)!r}")
        values[w] = res
        return res

    return {w: val(w) for w in words_upto(level, trunc) if w}


def _check_consistency(values: Mapping[Word, object], trunc: int, tol) -> None:
    tol = mpmath.mpf("1e-15") if tol is None else tol
    conv = sorted(values, key=lambda w: (len(w), w))
    for i, u in enumerate(conv):
        for v in conv[i:]:
            if len(u) + len(v) > trunc:
                break
            s = sum(m * values[w] for w, m in shuffle_words(u, v))
            r = abs(values[u] * values[v] - s)
            if r > tol:
                raise InconsistentInputError(u, v, r)


# -- the series ------------------------------------------------------------------------

def convergent_words(level: int, trunc: int) -> List[Word]:
    return [w for w in words_upto(level, trunc) if w and is_convergent(w)]


def _mpl_task(args):
    w, level, k, cfg = args
    return mpl(MultiIndex.from_word(w, level), Embedding(level, k), cfg)


def convergent_values(level: int, trunc: int, sigma: Optional[Embedding] = None,
                      cfg: Optional[PrecisionCfg] = None, threads: int = 1) -> Dict[Word, Estimate]:
    sigma = sigma or Embedding(level)
    cfg = cfg or PrecisionCfg.for_weight(trunc)
    todo = [(w, level, sigma.k, cfg) for w in convergent_words(level, trunc)]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_mpl_task, todo, chunksize=4))
    else:
        results = [_mpl_task(t) for t in todo]
    return {t[0]: r for t, r in zip(todo, results)}


def dch(level: int, trunc: int, sigma: Optional[Embedding] = None,
        cfg: Optional[PrecisionCfg] = None, threads: int = 1) -> Series:
    """Truncated ``dch(sigma)`` as a complex series of precision ``cfg.bits``."""
    check_level(level)
    sigma = sigma or Embedding(level)
    cfg = cfg or PrecisionCfg.for_weight(trunc)
    ests = convergent_values(level, trunc, sigma, cfg, threads)
    with mpmath.workprec(cfg.bits):
        partial = {w: e.value for w, e in ests.items()}
        full = regularize(partial, level, trunc, zero=mpmath.mpc(0),
                          tol=mpmath.mpf(cfg.target_tol) * 1000)
        full[EMPTY] = mpmath.mpc(1)
        return Series._raw(level, trunc, CC(cfg.bits), full)


def word_for(s: Sequence[int], zetas: Sequence[int], level: int) -> Word:
    return MultiIndex(tuple(s), tuple(zetas), level).word()


def stuffle_check(n: int, m: int, d: Series):
    """Residual of the depth-two stuffle identity among ``dch`` coefficients.

    The nested sums satisfy ``Z(n) Z(m) = Z(n,m) + Z(m,n) + Z(n+m)`` with
    ``Z`` unsigned; ``dch`` carries the sign ``(-1)^depth``, so in terms of
    coefficients the last term enters with a minus sign.
    """
    if d.level != 1:
        raise SeriesError("stuffle_check is stated for N = 1")
    if n < 2 or m < 2:
        raise ValueError("stuffle_check needs n, m >= 2")
    if n + m > d.trunc:
        raise SeriesError(f"weight {n + m} exceeds truncation {d.trunc}")
    c = lambda *s: d[word_for(s, [0] * len(s), 1)]
    with d.ring.context():
        return abs(c(n) * c(m) - c(n, m) - c(m, n) + c(n + m))


def quadrature_oracle(w: Word, sigma: Embedding, epsabs: float = 1e-12) -> complex:
    """Iterated integral of ``dz/(z - sigma(x_1)) ... dz/(z - sigma(x_n))`` on [0, 1].

    Direct nested adaptive quadrature (double precision) for convergent
    words of weight <= 3; the innermost integral is the elementary
    ``log(1 - z/x)``.  Independent of the nested-sum route.
    """
    from scipy.integrate import quad

    if not w or not is_convergent(w):
        raise ValueError(f"quadrature_oracle needs a convergent word, got {format_word(w)!r}")
    if len(w) > 3:
        raise ValueError("quadrature_oracle supports weight <= 3")
    pts = [complex(sigma.point(a)) for a in w]

    def inner(level: int, z: float) -> complex:
        # integral_0^z of the forms pts[level:], as a function of the upper limit
        if level == len(pts):
            return 1.0
        if level == len(pts) - 1:
            return cmath.log(1 - z / pts[level])
        x = pts[level]
        val, _ = quad(lambda t: inner(level + 1, t) / (t - x), 0.0, z, complex_func=True,
                      epsabs=epsabs, epsrel=1e-12, limit=200)
        return val

    x0 = pts[0]
    val, _ = quad(lambda t: inner(1, t) / (t - x0), 0.0, 1.0, complex_func=True,
                  epsabs=epsabs, epsrel=1e-12, limit=200)
    return val


def real_defect(d: Series):
    """Largest imaginary part among the coefficients."""
    with d.ring.context():
        return max((abs(mpmath.im(v)) for _, v in d.items()), default=mpmath.mpf(0))

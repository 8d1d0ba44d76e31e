"""Property and golden-value suites behind ``cyclomzv check``.

Every check yields a :class:`CheckResult` ``{test, residual, tolerance,
pass}``.  Exact suites compare with tolerance 0; the residual is then the
largest absolute coefficient of the difference.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

import mpmath

from . import dims, lie
from .alphabet import E1, ZERO, Dihedral, letters, root, words_upto
from .ihara import (
    circ, circ_inverse, dihedral, exp_ihara, exp_ihara_leading,
    ihara_bracket, rotate, special_derivation, twist_auto,
)
from .polylog import (
    Embedding, PrecisionCfg, dch, real_defect, stuffle_check,
)
from .series import (
    Series, antipode, concat_mul, exp_concat, grouplike_defect, letter, log_concat,
    one, shuffle_mul,
)

SUITES = ("series", "lie", "ihara", "dch", "dims", "relations")


@dataclass
class CheckResult:
    test: str
    residual: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return {"test": self.test, "residual": self.residual,
                "tolerance": self.tolerance, "pass": self.passed}


def _num(x) -> float:
    if isinstance(x, Fraction):
        return float(abs(x))
    return float(abs(mpmath.mpmathify(x)))


def diff_size(a: Series, b: Series) -> float:
    return _num((a - b).max_abs())


def _exact(name: str, a: Series, b: Series) -> CheckResult:
    r = diff_size(a, b)
    return CheckResult(name, r, 0.0, r == 0)


def _close(name: str, residual, tol) -> CheckResult:
    r = _num(residual)
    return CheckResult(name, r, float(tol), r <= float(tol))


def random_series(rng: random.Random, level: int, trunc: int, terms: int = 6) -> Series:
    pool = list(words_upto(level, trunc))
    coeffs = {w: Fraction(rng.randint(-9, 9), rng.randint(1, 4))
              for w in rng.sample(pool, min(terms, len(pool)))}
    return Series(level, trunc, coeffs)


def random_grouplike(rng: random.Random, level: int, trunc: int) -> Series:
    return exp_concat(lie.random_lie(rng, level, trunc, terms=3, height=3))


# -- suites ----------------------------------------------------------------------

def series_suite(N: int, W: int, seed: int) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []
    a, b, c = (random_series(rng, N, W) for _ in range(3))
    out.append(_exact("concat associative", concat_mul(concat_mul(a, b), c),
                      concat_mul(a, concat_mul(b, c))))
    out.append(_exact("shuffle associative", shuffle_mul(shuffle_mul(a, b), c),
                      shuffle_mul(a, shuffle_mul(b, c))))
    out.append(_exact("shuffle commutative", shuffle_mul(a, b), shuffle_mul(b, a)))
    x = lie.random_lie(rng, N, W)
    g = exp_concat(x)
    out.append(_exact("log(exp x) = x", log_concat(g), x))
    defect, _ = grouplike_defect(g)
    out.append(_close("exp of Lie element is group-like", defect, 0))
    out.append(_exact("antipode is a right inverse", concat_mul(g, antipode(g)), one(N, W)))
    out.append(_exact("antipode is a left inverse", concat_mul(antipode(g), g), one(N, W)))
    out.append(CheckResult("log of group-like is primitive",
                           0.0 if lie.is_primitive(log_concat(g)) else 1.0, 0.0,
                           lie.is_primitive(log_concat(g))))
    return out


def lie_suite(N: int, W: int, seed: int) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []
    worst = 0
    for n in range(1, W + 1):
        worst = max(worst, abs(len(lie.lyndon_words(N, n)) - lie.witt_dim(N + 1, n)))
    out.append(CheckResult("Lyndon words counted by Witt formula", float(worst), 0.0, worst == 0))
    bad = 0
    for n in range(1, W + 1):
        for l in lie.lyndon_words(N, n):
            p = lie.lyndon_expand(l, N)
            if p[l] != 1 or any(u < l for u in p.support()):
                bad += 1
    out.append(CheckResult("Lyndon expansion unitriangular", float(bad), 0.0, bad == 0))
    x = lie.random_lie(rng, N, W, terms=6)
    out.append(_exact("from_coords(to_lyndon_coords(x)) = x",
                      lie.from_coords(lie.to_lyndon_coords(x), N, W), x))
    y = lie.random_lie(rng, N, W, terms=3)
    out.append(CheckResult("bracket of Lie elements is primitive", 0.0, 0.0,
                           lie.is_primitive(lie.bracket(x, y))))
    sq = concat_mul(x, x)
    ok = sq.is_zero() or not lie.is_primitive(sq)
    out.append(CheckResult("square of Lie element is not primitive", 0.0 if ok else 1.0, 0.0, ok))
    return out


def ihara_suite(N: int, W: int, seed: int, samples: int = 5) -> List[CheckResult]:
    rng = random.Random(seed)
    out = []
    anti = jac = deriv = central = equiv = 0.0
    for _ in range(samples):
        a, b, c = (lie.random_lie(rng, N, W, terms=3, height=3) for _ in range(3))
        br = ihara_bracket
        anti = max(anti, diff_size(br(a, b), -br(b, a)))
        jac = max(jac, _num((br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))).max_abs()))
        ab = br(a, b)
        for g in letters(N):
            e = letter(g, N, W)
            lhs = special_derivation(a, special_derivation(b, e)) \
                - special_derivation(b, special_derivation(a, e))
            deriv = max(deriv, diff_size(lhs, special_derivation(ab, e)))
        central = max(central, _num(br(a, letter(E1, N, W)).max_abs()))
        for xi in range(N):
            equiv = max(equiv, diff_size(rotate(xi, br(a, b)), br(rotate(xi, a), rotate(xi, b))))
            equiv = max(equiv, diff_size(rotate(xi, special_derivation(a, b)),
                                         special_derivation(rotate(xi, a), rotate(xi, b))))
    out.append(CheckResult("bracket antisymmetric", anti, 0.0, anti == 0))
    out.append(CheckResult("bracket Jacobi", jac, 0.0, jac == 0))
    out.append(CheckResult("[d_a, d_b] = d_{a,b} on generators", deriv, 0.0, deriv == 0))
    out.append(CheckResult("{a, e_1} = 0", central, 0.0, central == 0))
    out.append(CheckResult("rotation equivariance of bracket and d", equiv, 0.0, equiv == 0))

    flip = Dihedral(N, True, 0)
    x = lie.random_lie(rng, N, W)
    out.append(_exact("flip is an involution", dihedral(flip, dihedral(flip, x)), x))
    dmax = 0.0
    for g in Dihedral.elements(N):
        a, b = (lie.random_lie(rng, N, W, terms=2, height=3) for _ in range(2))
        dmax = max(dmax, diff_size(dihedral(g, lie.bracket(a, b)),
                                   lie.bracket(dihedral(g, a), dihedral(g, b))))
    out.append(CheckResult("dihedral maps respect [,]", dmax, 0.0, dmax == 0))

    g1, g2, g3 = (random_grouplike(rng, N, W) for _ in range(3))
    u = one(N, W)
    out.append(_exact("circ associative", circ(circ(g1, g2), g3), circ(g1, circ(g2, g3))))
    out.append(_exact("circ unit", circ(u, g1), g1))
    out.append(_exact("circ right unit", circ(g1, u), g1))
    inv = circ_inverse(g1)
    out.append(_exact("circ inverse", circ(g1, inv), u))
    out.append(_exact("circ left inverse", circ(inv, g1), u))
    auto = max(diff_size(twist_auto(circ(g1, g2), letter(z, N, W)),
                         twist_auto(g1, twist_auto(g2, letter(z, N, W))))
               for z in letters(N))
    out.append(CheckResult("<a o b>_0 = <a>_0 <b>_0", auto, 0.0, auto == 0))

    a = lie.random_lie(rng, N, W, terms=2, height=3)
    t, s = Fraction(rng.randint(-3, 3), 2), Fraction(rng.randint(1, 3), 3)
    out.append(_exact("one-parameter law", circ(exp_ihara(a * t), exp_ihara(a * s)),
                      exp_ihara(a * (t + s))))
    lead = exp_ihara(a).truncate(3)
    out.append(_exact("exp_ihara low-degree terms", exp_ihara_leading(a.truncate(3)), lead))
    return out


def dch_suite(N: int, W: int, precision: Optional[int], embedding: int = 1,
              threads: int = 1) -> List[CheckResult]:
    cfg = PrecisionCfg.for_weight(W, precision)
    d = dch(N, W, Embedding(N, embedding), cfg, threads)
    tol = 10 * cfg.target_tol
    out = []
    with d.ring.context():
        defect, _ = grouplike_defect(d)
        out.append(_close("dch is group-like", defect, tol))
        out.append(_close("c(e_0) = c(e_1) = 0", abs(d[(ZERO,)]) + abs(d[(E1,)]), 0))
        if N <= 2:
            out.append(_close("coefficients are real", real_defect(d), tol))
        if N == 1 and W >= 4:
            for n, m in ((2, 2), (2, 3), (3, 2)):
                if n + m <= W:
                    out.append(_close(f"stuffle ({n},{m})", stuffle_check(n, m, d), 1e-15))
        if N == 1 and W >= 2:
            tau = (2j * mpmath.pi) ** 2
            out.append(_close("c(e_0 e_1) / (2 pi i)^2 = 1/24",
                              d[(ZERO, E1)] / tau - mpmath.mpf(1) / 24, tol))
            out.append(_close("c(e_1 e_0) = zeta(2)", d[(E1, ZERO)] - mpmath.zeta(2), tol))
        if N == 1 and W >= 3:
            out.append(_close("c(e_0 e_0 e_1) = -zeta(3)",
                              d[(ZERO, ZERO, E1)] + mpmath.zeta(3), tol))
            out.append(_close("c(e_0 e_1 e_1) = zeta(3)", d[(ZERO, E1, E1)] - mpmath.zeta(3), tol))
        worst = mpmath.mpf(0)
        for k in range(1, N):
            # c(e_z) - c(e_{1/z}) = -2i arg(1 - sigma(z)), i.e. 2 pi i (1/2 - k'/N)
            kk = (k * embedding) % N
            diff = (d[(root(k, N),)] - d[(root(-k, N),)]) / (2j * mpmath.pi)
            worst = max(worst, abs(diff - (mpmath.mpf(1) / 2 - mpmath.mpf(kk) / N)))
        if N > 1:
            out.append(_close("(c(e_z) - c(e_1/z)) / 2 pi i = 1/2 - k/N", worst, tol))
        if N == 2:
            out.append(_close("c(e_-1) = log 2", d[(root(1, 2),)] - mpmath.log(2), tol))
    return out


def dims_suite(N: int, maxw: int = 40) -> List[CheckResult]:
    out = []

    def row(name, got, want):
        bad = sum(g != w for g, w in zip(got, want)) + abs(len(got) - len(want))
        out.append(CheckResult(name, float(bad), 0.0, bad == 0))

    row("N=1 proof-derived D_0..11", dims.proof_bounds(1, 11), [1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9])
    fib = [1, 1]
    while len(fib) < 11:
        fib.append(fib[-1] + fib[-2])
    row("N=2 Fibonacci D_0..10", dims.proof_bounds(2, 10), fib)
    for n in (1, 2):
        row(f"N={n} printed = proof-derived through {maxw}",
            dims.printed_bounds(n, maxw), dims.proof_bounds(n, maxw))
    t = dims.bound_table(N, min(maxw, 12))
    want = N >= 3 and t.coeffs != t.other
    ok = t.discrepancy == want
    out.append(CheckResult(f"N={N} printed/proof discrepancy reported", 0.0 if ok else 1.0, 0.0, ok))
    return out


def relations_suite(seed: int, digits: int = 60, scan_digits: int = 40, scan: bool = True,
                    threads: int = 1) -> List[CheckResult]:
    from .relations import cross_weight_scan, find_integer_relation, weight_scan

    rng = random.Random(seed)
    out = []
    misses = 0
    with mpmath.workdps(digits + 20):
        for _ in range(10):
            n = rng.randint(2, 5)
            xs = [mpmath.mpf(rng.getrandbits(256)) / 2 ** 256 for _ in range(n)]
            c = [rng.randint(-99, 99) for _ in range(n)]
            if not any(c):
                c[0] = 1
            xs.append(mpmath.fsum(a * x for a, x in zip(c, xs)))
            v = find_integer_relation(xs, digits)
            want = [-a for a in c] + [1]
            # any nonzero multiple of the planted vector counts
            if v is None or not v[-1] or any(a * want[-1] != b * v[-1] for a, b in zip(v, want)):
                misses += 1
        out.append(CheckResult(f"planted relations recovered at {digits} digits",
                               float(misses), 0.0, misses == 0))
        none = find_integer_relation([mpmath.mpf(1), mpmath.zeta(2)], 40, 1000)
        out.append(CheckResult("no relation between 1 and zeta(2)", 0.0 if none is None else 1.0,
                               0.0, none is None))
    if scan:
        d = dch(1, 5, cfg=PrecisionCfg.for_digits(scan_digits), threads=threads)
        hi = dch(1, 5, cfg=PrecisionCfg.for_digits(int(1.5 * scan_digits)), threads=threads)
        bounds = dims.bound_table(1, 5)
        reports = [weight_scan(d, w, bounds, scan_digits, verify=hi) for w in range(2, 6)]
        for r in reports:
            out.append(CheckResult(f"N=1 weight {r.weight}: rank {r.estimated_rank} <= D = "
                                   f"{r.bound_D_n}", float(r.estimated_rank),
                                   float(r.bound_D_n), bool(r.within_bound)))
        euler = any(sorted(zip(rel.words, rel.coeffs)) ==
                    [((ZERO, ZERO, E1), 1), ((ZERO, E1, E1), 1)]
                    for rel in reports[1].relations)
        out.append(CheckResult("zeta(2,1) = zeta(3) rediscovered", 0.0 if euler else 1.0,
                               0.0, euler))
        cross = cross_weight_scan(d, reports, scan_digits, verify=hi)
        out.append(CheckResult("no cross-weight relation", 0.0 if cross is None else 1.0,
                               0.0, cross is None))
    return out


def run_suite(name: str, N: int, W: int, seed: int = 0, precision: Optional[int] = None,
              embedding: int = 1, threads: int = 1) -> List[CheckResult]:
    table: Dict[str, Callable[[], List[CheckResult]]] = {
        "series": lambda: series_suite(N, W, seed),
        "lie": lambda: lie_suite(N, W, seed),
        "ihara": lambda: ihara_suite(N, W, seed),
        "dch": lambda: dch_suite(N, W, precision, embedding, threads),
        "dims": lambda: dims_suite(N),
        "relations": lambda: relations_suite(seed, threads=threads),
    }
    if name == "all":
        return [r for s in SUITES for r in table[s]()]
    if name not in table:
        raise ValueError(f"unknown suite {name!r}")
    return table[name]()

import mpmath
import pytest

from cyclomzv.alphabet import E1, ZERO, is_convergent, root, words_upto
from cyclomzv.polylog import (
    ConvergenceError, Embedding, InconsistentInputError, MultiIndex, PrecisionCfg, convergent_words,
    dch, mpl, quadrature_oracle, real_defect, regularize, stuffle_check, word_for,
)
from cyclomzv.series import Series, is_grouplike, letter, zero



@pytest.fixture(autouse=True)
def high_precision():
    with mpmath.workprec(256):
        yield


@pytest.fixture(scope="module")
def d1():
    return dch(1, 5, threads=2)


@pytest.fixture(scope="module")
def d2():
    return dch(2, 3)


def test_multiindex_word_roundtrip():
    idx = MultiIndex((2, 1, 3), (0, 1, 0), 2)
    assert idx.word() == (ZERO, E1, root(1, 2), ZERO, ZERO, E1)
    assert MultiIndex.from_word(idx.word(), 2) == idx
    assert idx.weight == 6 and idx.depth == 3
    assert word_for((3,), (0,), 1) == (ZERO, ZERO, E1)


def test_admissibility():
    assert not MultiIndex((1, 2), (0, 0), 1).admissible
    assert MultiIndex((1,), (1,), 2).admissible
    with pytest.raises(ValueError):
        mpl(MultiIndex((1,), (0,), 1))


def test_multiindex_validation():
    with pytest.raises(ValueError):
        MultiIndex((0,), (0,), 1)
    with pytest.raises(ValueError):
        MultiIndex((2, 1), (0,), 1)


def test_embedding_rejects_non_coprime():
    with pytest.raises(ValueError):
        Embedding(4, 2)


def test_zeta_values():
    e = mpl(MultiIndex((2,), (0,), 1))
    assert abs(e.value + mpmath.zeta(2)) < 1e-28
    assert e.error <= 1e-30
    e3 = mpl(MultiIndex((3,), (0,), 1))
    assert abs(e3.value + mpmath.zeta(3)) < 1e-28


def test_euler_double_sum():
    e = mpl(MultiIndex((2, 1), (0, 0), 1))
    assert abs(e.value - mpmath.zeta(3)) < 1e-28


def test_alternating_log():
    e = mpl(MultiIndex((1,), (1,), 2))
    assert abs(e.value - mpmath.log(2)) < 1e-28


def test_higher_precision_config():
    cfg = PrecisionCfg.for_digits(50)
    e = mpl(MultiIndex((2, 1), (0, 0), 1), cfg=cfg)
    with mpmath.workprec(cfg.bits):
        assert abs(e.value - mpmath.zeta(3)) < mpmath.mpf(10) ** -50


def test_unreachable_tolerance_errors_out():
    cfg = PrecisionCfg(bits=256, target_tol=1e-70, max_terms=2000, accel_order=2)
    with pytest.raises(ConvergenceError):
        mpl(MultiIndex((2, 1), (0, 0), 1), cfg=cfg)


def test_precision_cfg_validation():
    with pytest.raises(ValueError):
        PrecisionCfg(bits=64, target_tol=1e-30)
    with pytest.raises(ValueError):
        PrecisionCfg(accel_order=1)


def test_precision_env_default(monkeypatch):
    monkeypatch.setenv("CYCLOMZV_PRECISION", "128")
    cfg = PrecisionCfg.for_weight(3)
    assert cfg.bits == 128 and cfg.target_tol >= 2.0 ** -108
    assert PrecisionCfg.for_weight(3, 300).bits == 300
    assert PrecisionCfg.for_weight(7, 192).target_tol == 1e-12


def test_dch_low_weights(d1):
    with d1.ring.context():
        assert d1[(ZERO,)] == 0 and d1[(E1,)] == 0
        assert abs(d1[(ZERO, E1)] + mpmath.zeta(2)) < 1e-25
        assert abs(d1[(E1, ZERO)] - mpmath.zeta(2)) < 1e-25
        assert abs(d1[(ZERO, ZERO, E1)] + mpmath.zeta(3)) < 1e-25
        assert abs(d1[(ZERO, E1, E1)] - mpmath.zeta(3)) < 1e-25


def test_dch_degree_two_period(d1):
    with d1.ring.context():
        assert abs(d1[(ZERO, E1)] / (2j * mpmath.pi) ** 2 - mpmath.mpf(1) / 24) < 1e-28


def test_dch_grouplike_and_real(d1):
    assert is_grouplike(d1, 1e-28)
    assert real_defect(d1) < 1e-29


def test_weight_four_is_rational_multiple_of_pi4(d1):
    p4 = mpmath.pi ** 4
    with d1.ring.context():
        for w in words_upto(1, 4):
            if len(w) == 4:
                r = d1[w].real / p4 * 360
                assert abs(r - mpmath.nint(r)) < 1e-20


@pytest.mark.parametrize("n, m", [(2, 2), (2, 3), (3, 2)])
def test_stuffle(d1, n, m):
    assert stuffle_check(n, m, d1) < 1e-25
    assert abs(stuffle_check(n, m, d1) - stuffle_check(m, n, d1)) < 1e-30


def test_stuffle_rejects_heavy(d1):
    with pytest.raises(ValueError):
        stuffle_check(3, 3, d1)


def test_level_two_values(d2):
    assert real_defect(d2) < 1e-29
    assert is_grouplike(d2, 1e-28)
    with d2.ring.context():
        assert abs(d2[(root(1, 2),)] - mpmath.log(2)) < 1e-28


def test_cyclotomic_single_letter_phase():
    d = dch(4, 1)
    with d.ring.context():
        q = (d[(root(1, 4),)] - d[(root(3, 4),)]) / (2j * mpmath.pi)
        assert abs(q - mpmath.mpf(1) / 4) < 1e-28


def test_conjugate_embedding():
    a, b = dch(3, 2, Embedding(3, 1)), dch(3, 2, Embedding(3, 2))
    with a.ring.context():
        for w, v in a.items():
            assert abs(mpmath.conj(v) - b[w]) < 1e-28


def test_quadrature_oracle_examples():
    s1, s2 = Embedding(1), Embedding(2)
    assert abs(quadrature_oracle((ZERO, E1), s1) + float(mpmath.zeta(2))) < 1e-8
    assert abs(quadrature_oracle((root(1, 2),), s2) - float(mpmath.log(2))) < 1e-10
    assert abs(quadrature_oracle((ZERO, E1, E1), s1) - float(mpmath.zeta(3))) < 1e-7


def test_quadrature_oracle_rejects_divergent():
    with pytest.raises(ValueError):
        quadrature_oracle((E1, ZERO), Embedding(1))


def test_oracle_agrees_with_series_level_three():
    d = dch(3, 2)
    for w in convergent_words(3, 2):
        assert abs(complex(d[w]) - quadrature_oracle(w, Embedding(3))) < 1e-7


def _symbolic_partial(level, trunc):
    conv = [w for w in words_upto(level, trunc) if w and is_convergent(w)]
    dim = len(conv)
    basis = {w: letter(i, dim, 1) for i, w in enumerate(conv)}
    return basis, zero(dim, 1)


def test_regularization_order_independent_symbolically():
    basis, z = _symbolic_partial(1, 4)
    a = regularize(basis, 1, 4, "zeros-first", zero=z, check=False)
    b = regularize(basis, 1, 4, "ones-first", zero=z, check=False)
    assert a == b


def test_regularization_known_words():
    basis, z = _symbolic_partial(1, 3)
    vals = regularize(basis, 1, 3, zero=z, check=False)
    # c(e_1 e_0) = -c(e_0 e_1) from c(e_1 ⧢ e_0) = 0
    assert vals[(E1, ZERO)] == -basis[(ZERO, E1)]
    assert vals[(ZERO,)] == z and vals[(E1, E1)] == z


def test_regularize_numeric_orders_agree(d1):
    with d1.ring.context():
        partial = {w: d1[w] for w in convergent_words(1, 5)}
        a = regularize(partial, 1, 5, "zeros-first", zero=mpmath.mpc(0), tol=1e-25)
        b = regularize(partial, 1, 5, "ones-first", zero=mpmath.mpc(0), tol=1e-25)
        assert max(abs(a[w] - b[w]) for w in a) < 1e-26


def test_regularize_detects_inconsistent_input():
    partial = {w: mpmath.mpf(1) for w in convergent_words(1, 4)}
    with pytest.raises(InconsistentInputError):
        regularize(partial, 1, 4)


def test_regularize_missing_value():
    with pytest.raises(KeyError):
        regularize({}, 1, 2, check=False)


def test_dch_series_metadata(d2):
    assert isinstance(d2, Series)
    assert d2.ring.bits == 192 and d2.trunc == 3 and d2.level == 2

import math

import mpmath
import numpy as np
import pytest

from hapdisc.mulfun import CompletelyMultiplicativeFn, bcc_function, materialize
from hapdisc.numtheory import DomainError, enumerate_characters, primes_upto, quadratic_character
from hapdisc.pretentious import (
    ModulatedCharacter,
    log_avg_correlation,
    log_weight_sum,
    mertens_sum,
    pretentious_dist_sq,
    pretentious_distance,
    pretentious_factorize,
    prime_values,
    singular_series,
    triangle_check,
    window_variance,
)
from hapdisc.sequence import SeqWindow

CHI3 = quadratic_character(3)
BCC = bcc_function()
GAMMA = 0.5772156649015329


def zeta_euler_maclaurin(s, N=50, terms=8):
    """Independent zeta(s) for real s > 1."""
    total = sum(n**-s for n in range(1, N))
    total += N ** (1 - s) / (s - 1) + 0.5 * N**-s
    bern = [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510]
    rising = s
    for k in range(1, terms + 1):
        total += bern[k - 1] / math.factorial(2 * k) * rising * N ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return total


def random_unit_table(rng, X):
    ps = primes_upto(X)
    return {int(p): complex(np.exp(2j * np.pi * rng.random())) for p in ps}


def test_zeta_oracle_sanity():
    assert zeta_euler_maclaurin(2.0) == pytest.approx(math.pi**2 / 6, rel=1e-13)


def test_distance_examples():
    assert pretentious_dist_sq(BCC, BCC, 10**4) == 0
    for X in (3, 100, 10**5):
        assert pretentious_dist_sq(BCC, CHI3, X) == 1 / 3
    one = CompletelyMultiplicativeFn()
    assert pretentious_dist_sq(one, -1, 10**6) == pytest.approx(2 * mertens_sum(10**6), abs=1e-12)
    assert pretentious_dist_sq(one, one, 1.5) == 0


def test_distance_symmetric_and_nonnegative():
    rng = np.random.default_rng(20)
    for _ in range(20):
        a = random_unit_table(rng, 1000)
        b = {p: v * rng.random() for p, v in random_unit_table(rng, 1000).items()}
        d1 = pretentious_dist_sq(a, b, 1000)
        d2 = pretentious_dist_sq(b, a, 1000)
        assert d1 >= 0
        assert d1 == pytest.approx(d2, abs=1e-12)


def test_triangle_examples():
    assert triangle_check(BCC, BCC, BCC, 1000) == 0
    one = CompletelyMultiplicativeFn()
    assert triangle_check(one, BCC, -1, 10**4) <= 1e-12


def test_triangle_random():
    rng = np.random.default_rng(21)
    for _ in range(100):
        f, g, h = (random_unit_table(rng, 10**4) for _ in range(3))
        assert triangle_check(f, g, h, 10**4) <= 1e-9


def test_prime_values_rejects_large():
    with pytest.raises(DomainError):
        prime_values({2: 1.5}, [2])


def test_modulated_character():
    m = ModulatedCharacter(CHI3, 2.0)
    assert m.at_prime(3) == 0
    assert m.at_prime(7) == pytest.approx(np.exp(2j * math.log(7)))
    with pytest.raises(DomainError):
        ModulatedCharacter(CHI3, 2e6)


def test_mertens():
    assert mertens_sum(2) == 0.5
    assert mertens_sum(10) == pytest.approx(0.5 + 1 / 3 + 0.2 + 1 / 7, abs=1e-15)
    X = 10**6
    assert abs(mertens_sum(X) - math.log(math.log(X)) - float(mpmath.mertens)) < 0.01


def test_singular_series_zeta_reference():
    X = math.exp(10)
    s = 1 + 1 / math.log(X)
    S = singular_series(1, X, 10**6)
    assert S.imag == 0
    assert S.real == pytest.approx(zeta_euler_maclaurin(s), rel=1e-9)
    assert abs(S.real - (math.log(X) + GAMMA)) / (math.log(X) + GAMMA) < 0.02


def test_singular_series_bare_truncation():
    X = math.exp(10)
    s = 1 + 1 / math.log(X)
    ps = primes_upto(X)
    direct = np.prod(1 / (1 - ps.astype(float) ** -s))
    bare = singular_series(1, X, tail=None)
    assert bare.real == pytest.approx(direct, rel=1e-12)
    assert 0.5 * math.log(X) <= abs(bare) <= 2 * math.log(X)


def test_singular_series_factor_ratio():
    X = math.exp(10)
    s = 1 + 1 / math.log(X)
    base = singular_series(1, X)
    flipped = singular_series({**{int(p): 1 for p in primes_upto(X)}, 2: -1}, X)
    ratio = (1 - 2**-s) / (1 + 2**-s)
    assert flipped.real == pytest.approx(base.real * ratio, rel=1e-9)


def test_singular_series_tail_doubling():
    rng = np.random.default_rng(22)
    X = math.exp(10)
    h = {int(p): (int(rng.choice((-1, 1))) if p < 100 else 1) for p in primes_upto(2 * X)}
    a = abs(singular_series(h, X, X))
    b = abs(singular_series(h, X, 2 * X))
    assert abs(a - b) / a < 0.01


def test_singular_series_bracket():
    for X in (math.exp(10), 1e5, 1e6):
        S = abs(singular_series(1, X))
        assert 0.5 * math.log(X) <= S <= 2 * math.log(X)


def test_factorize_model_case():
    fz = pretentious_factorize(BCC, CHI3, 0)
    ps = primes_upto(fz.upto)
    assert np.all(fz.h.prime_values(ps) == 1)
    assert fz.reconstruction_error(BCC) == 0
    assert fz.chi_tilde.at_prime(3) == 1


def test_factorize_constant_one():
    fz = pretentious_factorize(CompletelyMultiplicativeFn(), CHI3, 0, upto=1000)
    for p in primes_upto(1000):
        p = int(p)
        expect = 1 if p == 3 else np.conj(CHI3(p))
        assert fz.h.at_prime(p) == pytest.approx(expect)


def test_factorize_random_round_trip():
    rng = np.random.default_rng(23)
    for _ in range(5):
        g = CompletelyMultiplicativeFn(random_unit_table(rng, 10**5))
        q = int(rng.integers(2, 30))
        chars = enumerate_characters(q)
        chi = chars[int(rng.integers(len(chars)))]
        t = float(rng.normal() * 10)
        fz = pretentious_factorize(g, chi, t, upto=10**5)
        assert len(primes_upto(10**5)) > 9000
        assert fz.reconstruction_error(g) <= 1e-12
        for p in primes_upto(10**5)[:200]:
            p = int(p)
            if q % p == 0:
                assert fz.h.at_prime(p) == 1
            else:
                assert fz.chi_tilde.at_prime(p) == pytest.approx(chi(p), abs=1e-15)


def test_log_correlation_examples():
    X = 10**4
    lw = log_weight_sum(X)
    j = np.arange(100, X + 1)
    assert lw == pytest.approx(np.sum(1 / j), rel=1e-13)
    assert log_avg_correlation(BCC, 2, 2, X) == pytest.approx(lw, rel=1e-13)
    assert log_avg_correlation(CompletelyMultiplicativeFn(), 1, 5, X) == pytest.approx(lw, rel=1e-13)
    w = BCC.materialize(X + 3).values
    direct = sum(w[n] * np.conj(w[n + 1]) / n for n in range(100, X + 1))
    assert log_avg_correlation(BCC, 1, 2, X) == pytest.approx(direct, abs=1e-12)
    assert abs(log_avg_correlation(BCC, 1, 2, X)) <= lw


def test_window_variance_examples():
    X = 10**4
    lw = log_weight_sum(X)
    assert window_variance(1, 5, X) == pytest.approx(25 * lw, rel=1e-12)
    assert window_variance(CHI3, 3, X) == 0
    assert window_variance(CHI3, 2, X) < window_variance(1, 2, X)


def test_window_variance_expansion():
    rng = np.random.default_rng(24)
    X, H = 10**4, 4
    g = SeqWindow.from_signs(rng.choice((-1, 1), X + H))
    lhs = window_variance(g, H, X)
    rhs = sum(log_avg_correlation(g, a, b, X) for a in range(1, H + 1) for b in range(1, H + 1))
    assert abs(lhs - rhs) <= 1e-9 * max(1, lhs)


def test_window_too_short():
    with pytest.raises(DomainError):
        window_variance(SeqWindow(np.ones(10)), 3, 10)

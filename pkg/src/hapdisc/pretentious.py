"""Pretentious distance, prime sums, Euler products and log-averaged correlations.

Prime-indexed functions can be given as any of: a
:class:`~hapdisc.mulfun.CompletelyMultiplicativeFn`, a
:class:`~hapdisc.mulfun.MultiplicativeFn` (its values at primes), a
:class:`~hapdisc.numtheory.DirichletCharacter`, a :class:`ModulatedCharacter`,
a dict ``{p: value}``, a callable ``p -> value`` or a constant.
All prime sums are accumulated in ascending order of p with ``math.fsum``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number

import numpy as np
from scipy.special import zeta

from .mulfun import CompletelyMultiplicativeFn, MultiplicativeFn, materialize
from .numtheory import DirichletCharacter, DomainError, factorize, primes_upto
from .sequence import SeqWindow

T_CAP = 1e6
MODULUS_TOL = 1e-12


class ModulatedCharacter:
    """``n -> chi(n) n**(i t)``, used here only through its values at primes."""

    def __init__(self, chi: DirichletCharacter, t: float = 0.0):
        if abs(t) > T_CAP:
            raise DomainError(f"|t| must be <= {T_CAP:g}")
        self.chi = chi
        self.t = float(t)

    def at_prime(self, p: int) -> complex:
        return self.chi(p) * cmath.exp(1j * self.t * math.log(p))

    def prime_values(self, primes) -> np.ndarray:
        primes = np.asarray(primes, dtype=np.int64)
        return self.chi.values[primes % self.chi.q] * np.exp(1j * self.t * np.log(primes))


def prime_values(g, primes) -> np.ndarray:
    """Values of ``g`` at an ascending array of primes."""
    primes = np.asarray(primes, dtype=np.int64)
    if isinstance(g, (CompletelyMultiplicativeFn, ModulatedCharacter)):
        out = g.prime_values(primes)
    elif isinstance(g, MultiplicativeFn):
        out = np.array([g.prime_power(int(p), 1) for p in primes], dtype=complex)
    elif isinstance(g, DirichletCharacter):
        out = g.values[primes % g.q]
    elif isinstance(g, dict):
        out = np.array([complex(g[int(p)]) for p in primes], dtype=complex)
    elif isinstance(g, Number):
        out = np.full(primes.shape, complex(g))
    elif callable(g):
        out = np.array([complex(g(int(p))) for p in primes], dtype=complex)
    else:
        raise TypeError(f"cannot read prime values from {type(g).__name__}")
    out = np.asarray(out, dtype=complex)
    if out.size and np.abs(out).max() > 1 + MODULUS_TOL:
        raise DomainError("prime values must have modulus <= 1")
    return out


def _fsum_complex(z: np.ndarray) -> complex:
    return complex(math.fsum(z.real.tolist()), math.fsum(z.imag.tolist()))


def pretentious_dist_sq(g1, g2, X: float) -> float:
    """``sum_{p<=X} (1 - Re g1(p) conj(g2(p))) / p``; 0 when ``X < 2``."""
    ps = primes_upto(X)
    if ps.size == 0:
        return 0.0
    z = prime_values(g1, ps) * np.conj(prime_values(g2, ps))
    return math.fsum(((1 - z.real) / ps).tolist())


def pretentious_distance(g1, g2, X: float) -> float:
    return math.sqrt(max(pretentious_dist_sq(g1, g2, X), 0.0))


def triangle_check(f, g, h, X: float) -> float:
    """``D(f, h) - D(f, g) - D(g, h)``; the triangle inequality says this is <= 0."""
    return (
        pretentious_distance(f, h, X)
        - pretentious_distance(f, g, X)
        - pretentious_distance(g, h, X)
    )


def mertens_sum(X: float) -> float:
    """``sum_{p<=X} 1/p``."""
    ps = primes_upto(X)
    return math.fsum((1.0 / ps).tolist())


def singular_series(h, X: float, P: float | None = None, *, tail: str | None = "zeta") -> complex:
    """Euler product ``prod_p (1 - h(p) / p**s)**-1`` with ``s = 1 + 1/log X``.

    Primes ``p <= P`` (default ``P = X``) use the values of ``h``.  With
    ``tail="zeta"`` the primes above ``P`` are taken with ``h(p) = 1`` (the
    default value of an unassigned prime), i.e. the finite product is
    multiplied by ``zeta(s) prod_{p<=P} (1 - p**-s)``.  ``tail=None`` returns
    the bare truncated product.
    """
    if X <= 1:
        raise DomainError("X must exceed 1")
    if tail not in ("zeta", None):
        raise DomainError("tail must be 'zeta' or None")
    s = 1 + 1 / math.log(X)
    P = X if P is None else P
    if P < 2:
        raise DomainError("P must be >= 2")
    ps = primes_upto(P)
    w = prime_values(h, ps) * np.exp(-s * np.log(ps))
    # |w| < 1 for s > 1, so no factor can vanish and the principal log is safe
    assert np.all(np.abs(w) < 1)
    log_s = -_fsum_complex(np.log1p(-w))
    if tail == "zeta":
        log_s += math.log(zeta(s)) + math.fsum(np.log1p(-np.exp(-s * np.log(ps))).tolist())
    return cmath.exp(log_s)


@dataclass(frozen=True)
class PretentiousFactorization:
    """``g(p) = chi_tilde(p) p**(i t) h(p)`` at every prime up to ``upto``."""

    chi: DirichletCharacter
    chi_tilde: CompletelyMultiplicativeFn
    t: float
    h: CompletelyMultiplicativeFn
    upto: int

    def reconstruct(self, primes) -> np.ndarray:
        primes = np.asarray(primes, dtype=np.int64)
        twist = np.exp(1j * self.t * np.log(primes))
        return self.chi_tilde.prime_values(primes) * twist * self.h.prime_values(primes)

    def reconstruction_error(self, g) -> float:
        ps = primes_upto(self.upto)
        return float(np.abs(self.reconstruct(ps) - prime_values(g, ps)).max())


def pretentious_factorize(g, chi: DirichletCharacter, t: float = 0.0, *, upto: int = 10**4):
    """Split ``g`` into ``chi_tilde * n**(i t) * h`` at the primes up to ``upto``.

    ``chi_tilde`` agrees with ``chi`` off the primes dividing q and equals
    ``g(p) p**(-i t)`` on them; ``h(p) = g(p) conj(chi(p)) p**(-i t)`` off q and
    ``h(p) = 1`` on it.  With ``t = 0`` and exact ``g`` the result is exact.
    """
    if abs(t) > T_CAP:
        raise DomainError(f"|t| must be <= {T_CAP:g}")
    ps = primes_upto(upto)
    q_primes = {p for p, _ in factorize(chi.q)} if chi.q > 1 else set()
    coprime = np.array([int(p) not in q_primes for p in ps], dtype=bool)
    exact = t == 0 and isinstance(g, CompletelyMultiplicativeFn) and g.exact
    if exact:
        L = math.lcm(g.denominator, chi.denominator)
        gnum = g.prime_numerators(ps) * (L // g.denominator)
        cnum = chi.turns[ps % chi.q] * (L // chi.denominator)
        hvals = {
            int(p): Fraction(int(a - b) % L, L) if c else Fraction(0)
            for p, a, b, c in zip(ps, gnum, cnum, coprime)
        }
        fill = {p: Fraction(int(g.prime_numerators([p])[0]), g.denominator) for p in q_primes}
    else:
        gv = prime_values(g, ps)
        twist = np.exp(-1j * t * np.log(ps))
        hv = np.where(coprime, gv * np.conj(chi.values[ps % chi.q]) * twist, 1)
        hvals = {int(p): complex(v) for p, v in zip(ps, hv)}
        fill = {int(p): complex(v) for p, v, c in zip(ps, gv * twist, coprime) if not c}
    chi_tilde = CompletelyMultiplicativeFn(fill, base=chi, limit=upto, default_one=False)
    h = CompletelyMultiplicativeFn(hvals, limit=upto, default_one=False)
    return PretentiousFactorization(chi, chi_tilde, float(t), h, upto)


# ---------------------------------------------------------------------------
# log-averaged correlations


def _log_range(X: float) -> tuple[int, int]:
    hi = math.floor(X)
    lo = math.isqrt(hi)
    if lo * lo < X:
        lo += 1
    return max(lo, 1), hi


def _values_upto(g, top: int) -> np.ndarray:
    """``out[n] = g(n)`` for ``0 <= n <= top`` (``out[0] = 0``)."""
    if isinstance(g, SeqWindow) and g.N < top:
        raise DomainError(f"window of length {g.N} does not reach {top}")
    if isinstance(g, Number):
        w = np.full(top, complex(g))
    else:
        w = materialize(g, top).values
    return np.concatenate([[0], w])


def log_weight_sum(X: float) -> float:
    """``sum_{sqrt X <= n <= X} 1/n``."""
    lo, hi = _log_range(X)
    return math.fsum((1.0 / np.arange(lo, hi + 1)).tolist())


def log_avg_correlation(g, h1: int, h2: int, X: float) -> complex:
    """``sum_{sqrt X <= n <= X} g(n + h1) conj(g(n + h2)) / n``."""
    if h1 < 1 or h2 < 1:
        raise DomainError("shifts must be >= 1")
    lo, hi = _log_range(X)
    v = _values_upto(g, hi + max(h1, h2))
    n = np.arange(lo, hi + 1)
    return _fsum_complex(v[n + h1] * np.conj(v[n + h2]) / n)


def window_variance(g, H: int, X: float) -> float:
    """``sum_{sqrt X <= n <= X} |g(n+1) + ... + g(n+H)|**2 / n``."""
    if H < 1:
        raise DomainError("H must be >= 1")
    lo, hi = _log_range(X)
    v = _values_upto(g, hi + H)
    P = np.cumsum(v)
    n = np.arange(lo, hi + 1)
    inner = P[n + H] - P[n]
    return math.fsum((np.abs(inner) ** 2 / n).tolist())

"""Discrepancy along homogeneous arithmetic progressions {d, 2d, ..., nd}.

The discrepancy of a window ``v[1..N]`` is the largest ``|v(d) + ... + v(nd)|``
over all pairs with ``n d <= N``.  Besides the generic scan this module has
the structured variants used by the BCC family: the completely
multiplicative shortcut, the vector-valued norm, Cesaro sums, the random
model's second moment and the adversarial choice of ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mulfun import CompletelyMultiplicativeFn, StochasticBCC
from .numtheory import DirichletCharacter, DomainError, quadratic_character
from .sequence import SeqWindow

DENSE_EIGEN_LIMIT = 2000


@dataclass(frozen=True)
class DiscrepancyReport:
    sup: float
    witness_n: int
    witness_d: int
    per_d: np.ndarray | None = None  # per_d[d - 1] = max_n |sum_{j<=n} v(jd)|

    def check(self, s: SeqWindow, tol: float = 1e-9) -> bool:
        """True if the witness reproduces ``sup`` on ``s``."""
        n, d = self.witness_n, self.witness_d
        if n * d > s.N:
            return False
        total = s.values[d - 1 : n * d : d].sum()
        return abs(abs(total) - self.sup) <= tol * max(1.0, self.sup)


def prefix_sums(s: SeqWindow) -> np.ndarray:
    """``out[n] = v(1) + ... + v(n)`` with ``out[0] = 0``."""
    out = np.zeros(s.N + 1, dtype=s.values.dtype)
    np.cumsum(s.values, out=out[1:])
    return out


def _scan_values(s: SeqWindow) -> np.ndarray:
    v = s.values
    return v.real.copy() if np.all(v.imag == 0) else v


def hap_discrepancy(s: SeqWindow, *, per_d: bool = False) -> DiscrepancyReport:
    """Exact maximum of ``|sum_{j<=n} v(jd)|`` over ``n d <= N``.

    The d's are grouped by ``m = N // d`` so that each group is one
    vectorized cumulative sum; total work is the harmonic sum of N/d.
    Ties go to the smallest d, then the smallest n.
    """
    N = s.N
    if N < 1:
        raise DomainError("empty window")
    v = _scan_values(s)
    best = np.zeros(N)
    arg = np.zeros(N, dtype=np.int64)
    d = 1
    while d <= N:
        m = N // d
        d_hi = N // m  # last d with the same m
        ds = np.arange(d, d_hi + 1)
        idx = ds[:, None] * np.arange(1, m + 1)[None, :] - 1
        sums = np.abs(np.cumsum(v[idx], axis=1))
        best[d - 1 : d_hi] = sums.max(axis=1)
        arg[d - 1 : d_hi] = sums.argmax(axis=1) + 1
        d = d_hi + 1
    top = int(np.argmax(best))
    return DiscrepancyReport(
        sup=float(best[top]),
        witness_n=int(arg[top]),
        witness_d=top + 1,
        per_d=best if per_d else None,
    )


def brute_force_discrepancy(s: SeqWindow) -> float:
    """Plain double loop over (n, d); reference for :func:`hap_discrepancy`."""
    v = [complex(x) for x in s.values]
    N = len(v)
    best = 0.0
    for d in range(1, N + 1):
        total = 0j
        for j in range(d, N + 1, d):
            total += v[j - 1]
            best = max(best, abs(total))
    return best


def hap_discrepancy_cm(f: CompletelyMultiplicativeFn, N: int, *, per_d: bool = False):
    """Discrepancy of a unit-valued completely multiplicative ``f`` up to ``N``.

    Since ``sum_{j<=n} f(jd) = f(d) sum_{j<=n} f(j)``, only prefix sums matter.
    """
    s = f.materialize(N)
    a = np.abs(prefix_sums(s))
    n = int(np.argmax(a))
    table = None
    if per_d:
        table = np.maximum.accumulate(a)[N // np.arange(1, N + 1)]
    return DiscrepancyReport(sup=float(a[n]), witness_n=n, witness_d=1, per_d=table)


def discrepancy_growth(s: SeqWindow, Ns) -> list[DiscrepancyReport]:
    """Discrepancy of the truncations ``s[1..N]`` for each N in ``Ns``."""
    return [hap_discrepancy(SeqWindow(s.values[:N])) for N in Ns]


# ---------------------------------------------------------------------------
# vector-valued BCC


def _quotient_tops(n: int, q: int) -> list[int]:
    """``[n, n // q, n // q**2, ...]`` down to the last positive entry."""
    tops = []
    while n >= 1:
        tops.append(n)
        n //= q
    return tops


def _partial_character_sums(chi: DirichletCharacter, tops: np.ndarray) -> np.ndarray:
    """``sum_{1 <= m <= t} chi(m)`` for every ``t`` in ``tops``."""
    cum = np.concatenate([[0], np.cumsum(chi.values)])  # cum[r] = sum_{0<=m<r}
    k, r = np.divmod(np.asarray(tops) + 1, chi.q)
    return k * cum[chi.q] + cum[r]


def vector_bcc_norm(n: int, d: int, q: int = 3, chi: DirichletCharacter | None = None) -> float:
    """Norm of ``sum_{j<=n} f(jd)`` for ``f(q**a m) = chi(m) e_a``.

    Writing ``d = q**l d'``, the sum is ``sum_i e_{i+l} chi(d') S(n // q**i)``
    with ``S`` the partial sums of ``chi``, so the norm is the square root of
    ``sum_i |S(n // q**i)|**2`` (times ``|chi(d')|``).
    """
    if q < 2:
        raise DomainError("q must be >= 2")
    if d < 1 or n < 0:
        raise DomainError("need d >= 1 and n >= 0")
    chi = chi if chi is not None else quadratic_character(q)
    if chi.q != q:
        raise DomainError("chi must have modulus q")
    while d % q == 0:
        d //= q
    tops = _quotient_tops(n, q)
    if not tops:
        return 0.0
    S = _partial_character_sums(chi, np.array(tops))
    return float(abs(chi(d)) * math.sqrt(np.sum(np.abs(S) ** 2)))


def vector_bcc_norms(N: int, q: int = 3, chi: DirichletCharacter | None = None) -> np.ndarray:
    """``out[n] = vector_bcc_norm(n, 1, q, chi)`` for ``0 <= n <= N``."""
    chi = chi if chi is not None else quadratic_character(q)
    n = np.arange(N + 1)
    acc = np.zeros(N + 1)
    while n.any():
        acc += np.abs(_partial_character_sums(chi, n)) ** 2
        n = n // q
    return np.sqrt(acc)


# ---------------------------------------------------------------------------
# Cesaro


def cesaro_sums(s: SeqWindow) -> np.ndarray:
    """``out[n] = sum_{j<=n} (1 - j/n) v(j)`` for ``1 <= n <= N``; ``out[0] = 0``."""
    j = np.arange(1, s.N + 1)
    plain = np.cumsum(s.values)
    weighted = np.cumsum(j * s.values)
    out = np.zeros(s.N + 1, dtype=plain.dtype)
    out[1:] = plain - weighted / j
    return out


def cesaro_sum(s: SeqWindow, n: int) -> complex:
    if not 1 <= n <= s.N:
        raise DomainError(f"n={n} outside 1..{s.N}")
    j = np.arange(1, n + 1)
    return complex(np.sum((1 - j / n) * s.values[:n]))


# ---------------------------------------------------------------------------
# random BCC model


def bcc_sign_sum(signs, n: int, q: int = 3, chi: DirichletCharacter | None = None) -> complex:
    """``sum_{j<=n} g(j)`` where ``g(q**i m) = signs[i] chi(m)`` (``signs[0]`` = +1)."""
    chi = chi if chi is not None else quadratic_character(q)
    tops = _quotient_tops(n, q)
    if len(tops) > len(signs):
        raise DomainError(f"n={n} needs {len(tops)} signs, got {len(signs)}")
    S = _partial_character_sums(chi, np.array(tops, dtype=np.int64))
    return complex(np.dot(np.asarray(signs[: len(tops)]), S))


def adversarial_bcc(signs, *, check: bool = True) -> tuple[int, int]:
    """Pick ``n < 3**(k+1)`` making ``|sum_{j<=n} g(j)|`` at least ``(k+1)/2``.

    ``signs = (eps_0, ..., eps_k)`` with ``eps_0 = +1``.  The partial sum
    equals the sum of ``eps_i`` over the base-3 digits of ``n`` equal to 1, so
    ``n`` gets digit 1 exactly where ``eps_i`` carries the majority sign
    (ties go to +1).  With ``check`` the value is recomputed by summing the
    induced multiplicative function directly.
    """
    signs = tuple(int(e) for e in signs)
    if not signs or signs[0] != 1 or any(e not in (1, -1) for e in signs):
        raise DomainError("signs must be +-1 with signs[0] = +1")
    plus = signs.count(1)
    minus = len(signs) - plus
    major = 1 if plus >= minus else -1
    n = sum(3**i for i, e in enumerate(signs) if e == major)
    value = max(plus, minus)
    if check:
        g = StochasticBCC(signs[1:]).g
        direct = g.materialize(n).values.sum()
        if abs(direct - major * value) > 1e-9:
            raise AssertionError(f"digit identity failed at n={n}: {direct} != {major * value}")
    return n, value


@dataclass(frozen=True)
class MomentEstimate:
    mean: float
    sem: float  # sample standard deviation / sqrt(trials)
    trials: int

    @property
    def tolerance(self) -> float:
        return 3 * self.sem


def mc_second_moment(
    n: int,
    trials: int,
    seed=None,
    *,
    q: int = 3,
    chi: DirichletCharacter | None = None,
) -> MomentEstimate:
    """Monte Carlo estimate of ``E |sum_{j<=n} g(j)|**2`` for the random BCC model."""
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if n < 1:
        raise DomainError("n must be >= 1")
    chi = chi if chi is not None else quadratic_character(q)
    tops = _quotient_tops(n, q)
    S = _partial_character_sums(chi, np.array(tops, dtype=np.int64))
    rng = np.random.default_rng(seed)
    eps = rng.choice((-1, 1), size=(trials, len(tops) - 1))
    totals = S[0] + eps @ S[1:]
    sq = np.abs(totals) ** 2
    sem = float(sq.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.inf
    return MomentEstimate(mean=float(sq.mean()), sem=sem, trials=trials)


def exact_second_moment(n: int, q: int = 3, chi: DirichletCharacter | None = None) -> float:
    """``E |sum_{j<=n} g(j)|**2`` from independence of the signs."""
    chi = chi if chi is not None else quadratic_character(q)
    tops = _quotient_tops(n, q)
    S = _partial_character_sums(chi, np.array(tops, dtype=np.int64))
    return float(np.sum(np.abs(S) ** 2))


# ---------------------------------------------------------------------------
# quadratic form


def quadratic_form_matrix(c: dict, b, N: int) -> np.ndarray:
    """Matrix of ``sum c[m,d] (x_d + ... + x_{md})**2 - sum b_n x_n**2``."""
    b = np.asarray(b, dtype=float)
    if b.shape != (N,):
        raise DomainError(f"b must have length {N}")
    if np.any(b < 0):
        raise DomainError("b must be nonnegative")
    A = np.zeros((N, N))
    for (m, d), w in c.items():
        if m * d > N or m < 1 or d < 1:
            raise DomainError(f"progression ({m}, {d}) leaves 1..{N}")
        if w < 0:
            raise DomainError("c must be nonnegative")
        idx = np.arange(d, m * d + 1, d) - 1
        A[np.ix_(idx, idx)] += w
    A[np.diag_indices(N)] -= b
    return A


def quadratic_form_check(
    c: dict, b, N: int, tol: float = 1e-9, *, allow_large: bool = False
) -> tuple[bool, float]:
    """Whether the HAP quadratic form is positive semi-definite, and its least eigenvalue."""
    if N > DENSE_EIGEN_LIMIT and not allow_large:
        raise DomainError(f"N={N} above {DENSE_EIGEN_LIMIT} needs allow_large=True")
    A = quadratic_form_matrix(c, b, N)
    lam = float(np.linalg.eigvalsh(A)[0])
    return lam >= -tol, lam

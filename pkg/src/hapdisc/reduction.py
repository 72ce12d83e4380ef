"""Fourier reduction from a bounded-discrepancy sequence to random multiplicative functions.

Given ``f`` and primes ``p_1..p_r``, the function
``F(a_1, ..., a_r) = f(p_1**a_1 ... p_r**a_r)`` lives on the group
``(Z/M)**r``.  Its Fourier coefficients
``F_hat(xi) = M**-r sum_x F(x) e(-x.xi/M)`` have squared norms summing to 1
for unit-valued ``F``, so they define a random frequency ``xi``; the random
completely multiplicative function ``g_X(p_j) = e(xi_j / M)`` then has
``E |sum_{j<=n} g_X(j)|**2`` equal to the average of
``||sum_{j<=n} F(x + pi(j))||**2`` over ``x``.

Transforms use ``numpy.fft`` over the group axes; at the sizes used here
(M <= 32, r <= 3) a naive nested DFT would do equally well.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .mulfun import CompletelyMultiplicativeFn, VectorBCC
from .numtheory import DirichletCharacter, DomainError, factorize, root_of_unity_table

UNIT_TOL = 1e-9


@dataclass(frozen=True)
class GroupArray:
    """``dim``-vector valued array over ``(Z/M)**r``; ``values.shape == (M,)*r + (dim,)``."""

    M: int
    r: int
    values: np.ndarray

    def __post_init__(self):
        if self.M < 2 or self.r < 1:
            raise DomainError("need M >= 2 and r >= 1")
        if self.values.shape[:-1] != (self.M,) * self.r:
            raise DomainError(f"values shape {self.values.shape} does not match M={self.M}, r={self.r}")

    @property
    def dim(self) -> int:
        return self.values.shape[-1]

    def __getitem__(self, x) -> np.ndarray:
        return self.values[tuple(int(a) % self.M for a in x)]

    def norms_sq(self) -> np.ndarray:
        return np.sum(np.abs(self.values) ** 2, axis=-1)


@dataclass(frozen=True)
class FreqDistribution:
    """Weights ``||F_hat(xi)||**2`` over ``(Z/M)**r`` (lexicographic order = C order)."""

    M: int
    r: int
    weights: np.ndarray

    @property
    def total(self) -> float:
        return float(self.weights.sum())

    def rows(self):
        """``(xi, weight)`` pairs in lexicographic order of ``xi``."""
        for xi in itertools.product(range(self.M), repeat=self.r):
            yield xi, float(self.weights[xi])


def pi_map(j: int, primes, M: int) -> tuple[int, ...]:
    """Exponent vector of ``j`` over ``primes``, each exponent below ``M``."""
    if j < 1:
        raise DomainError("j must be >= 1")
    primes = [int(p) for p in primes]
    exps = dict(factorize(j)) if j > 1 else {}
    foreign = set(exps) - set(primes)
    if foreign:
        raise DomainError(f"{j} has prime factors {sorted(foreign)} outside {primes}")
    out = tuple(exps.get(p, 0) for p in primes)
    if max(out, default=0) >= M:
        raise DomainError(f"exponent of {j} reaches M={M}")
    return out


def _exponent_grid(r: int, M: int) -> list[np.ndarray]:
    return np.meshgrid(*[np.arange(M)] * r, indexing="ij")


def build_F(f, primes, M: int, dim: int | None = None, *, allow_nonunit: bool = False) -> GroupArray:
    """``F(a) = f(p_1**a_1 ... p_r**a_r)`` for all ``a`` in ``(Z/M)**r``.

    Completely multiplicative functions and characters are evaluated from
    their prime values (no big integers); any other callable receives the
    exact integer ``prod p_i**a_i`` and may return a scalar or a vector.
    """
    primes = [int(p) for p in primes]
    r = len(primes)
    grid = _exponent_grid(r, M)
    if isinstance(f, CompletelyMultiplicativeFn):
        at_p = f.prime_values(primes)
        vals = np.ones((M,) * r, dtype=complex)
        for i in range(r):
            vals = vals * at_p[i] ** grid[i]
        if f.exact:
            num = f.prime_numerators(primes)
            turns = sum(num[i] * grid[i] for i in range(r)) % f.denominator
            vals = root_of_unity_table(f.denominator)[turns]
        values = vals[..., None]
    elif isinstance(f, DirichletCharacter):
        res = np.ones((M,) * r, dtype=np.int64)
        for i, p in enumerate(primes):
            pw = np.array([pow(p, a, f.q) for a in range(M)], dtype=np.int64)
            res = res * pw[grid[i]] % f.q
        values = f.values[res][..., None]
    else:
        d = dim if dim is not None else (f.dim if isinstance(f, VectorBCC) else 1)
        values = np.zeros((M,) * r + (d,), dtype=complex)
        for a in itertools.product(range(M), repeat=r):
            n = math.prod(p**e for p, e in zip(primes, a))
            values[a] = np.broadcast_to(np.asarray(f(n), dtype=complex), (d,))
    if dim is not None and values.shape[-1] != dim:
        raise DomainError(f"values have dimension {values.shape[-1]}, expected {dim}")
    F = GroupArray(M, r, values)
    if not allow_nonunit and np.abs(F.norms_sq() - 1).max() > UNIT_TOL:
        raise DomainError("F is not unit-norm valued (pass allow_nonunit=True to keep it)")
    return F


def fourier_transform(F: GroupArray) -> GroupArray:
    """``F_hat(xi) = M**-r sum_x F(x) e(-x.xi / M)``."""
    axes = tuple(range(F.r))
    return GroupArray(F.M, F.r, np.fft.fftn(F.values, axes=axes) / F.M**F.r)


def inverse_fourier_transform(Fh: GroupArray) -> GroupArray:
    """``F(x) = sum_xi F_hat(xi) e(x.xi / M)``."""
    axes = tuple(range(Fh.r))
    return GroupArray(Fh.M, Fh.r, np.fft.ifftn(Fh.values, axes=axes) * Fh.M**Fh.r)


def frequency_distribution(F: GroupArray) -> FreqDistribution:
    return FreqDistribution(F.M, F.r, fourier_transform(F).norms_sq())


def plancherel_sums(F: GroupArray) -> tuple[float, float]:
    """``(sum_xi ||F_hat||**2, M**-r sum_x ||F||**2)``; equal by Plancherel."""
    return frequency_distribution(F).total, float(F.norms_sq().mean())


def _pi_vectors(primes, n: int, M: int) -> np.ndarray:
    return np.array([pi_map(j, primes, M) for j in range(1, n + 1)], dtype=np.int64)


def exponential_sums_sq(M: int, r: int, pis: np.ndarray) -> np.ndarray:
    """``|sum_j e(pi(j).xi / M)|**2`` for every ``xi`` in ``(Z/M)**r``."""
    grid = _exponent_grid(r, M)
    total = np.zeros((M,) * r, dtype=complex)
    for v in pis:
        phase = sum(int(v[i]) * grid[i] for i in range(r)) % M
        total += np.exp(2j * np.pi * phase / M)
    return np.abs(total) ** 2


def _shifted_sums_sq(F: GroupArray, pis: np.ndarray) -> np.ndarray:
    """``||sum_j F(x + pi(j))||**2`` for every ``x``."""
    axes = tuple(range(F.r))
    acc = np.zeros_like(F.values)
    for v in pis:
        acc += np.roll(F.values, shift=tuple(-int(a) for a in v), axis=axes)
    return np.sum(np.abs(acc) ** 2, axis=-1)


def discrepancy_identity_check(F: GroupArray, primes, n: int) -> tuple[float, float]:
    """Both sides of the averaged-discrepancy identity.

    ``lhs = M**-r sum_x ||sum_{j<=n} F(x + pi(j))||**2`` is computed directly
    by shifting ``F``; ``rhs = sum_xi ||F_hat(xi)||**2 |sum_j e(pi(j).xi/M)|**2``
    goes through the Fourier side.
    """
    if len(primes) != F.r:
        raise DomainError("need one prime per group coordinate")
    pis = _pi_vectors(primes, n, F.M)
    lhs = float(np.mean(_shifted_sums_sq(F, pis)))
    w = frequency_distribution(F).weights
    rhs = float(np.sum(w * exponential_sums_sq(F.M, F.r, pis)))
    return lhs, rhs


@dataclass(frozen=True)
class WrapSplit:
    lhs: float
    regular: float  # M**-r * sum over shifts where no exponent wraps mod M
    exceptional: float  # the rest of lhs
    exceptional_fraction: float
    regular_max: float  # largest ||sum_j F(x + pi(j))||**2 over regular x


def wraparound_split(F: GroupArray, primes, n: int) -> WrapSplit:
    """Split the identity's left side by whether ``x + pi(j)`` wraps mod M.

    For regular ``x`` every ``x + pi(j)`` is the exponent vector of
    ``m * j`` with ``pi(m) = x``, so the inner sum is an honest HAP sum of
    ``f`` and is bounded by its discrepancy.  Only the exceptional shifts,
    a fraction of about ``r * max_exponent / M``, can exceed that bound.
    """
    if len(primes) != F.r:
        raise DomainError("need one prime per group coordinate")
    pis = _pi_vectors(primes, n, F.M)
    sq = _shifted_sums_sq(F, pis)
    top = pis.max(axis=0)
    grid = _exponent_grid(F.r, F.M)
    regular = np.ones(sq.shape, dtype=bool)
    for i in range(F.r):
        regular &= grid[i] + top[i] < F.M
    size = sq.size
    return WrapSplit(
        lhs=float(sq.sum() / size),
        regular=float(sq[regular].sum() / size),
        exceptional=float(sq[~regular].sum() / size),
        exceptional_fraction=float(np.count_nonzero(~regular) / size),
        regular_max=float(sq[regular].max()) if regular.any() else 0.0,
    )


def expected_square_sum(dist: FreqDistribution, primes, n: int) -> float:
    """``E |sum_{j<=n} g_X(j)|**2`` for ``g_X`` drawn from ``dist`` (normalised)."""
    pis = _pi_vectors(primes, n, dist.M)
    return float(np.sum(dist.weights * exponential_sums_sq(dist.M, dist.r, pis)) / dist.total)


def sample_frequency(dist: FreqDistribution, rng: np.random.Generator) -> tuple[int, ...]:
    """Draw ``xi`` by inverse CDF over frequencies in lexicographic order."""
    w = dist.weights.reshape(-1)
    total = w.sum()
    if not total > 0:
        raise DomainError("frequency weights are all zero")
    cdf = np.cumsum(w) / total
    k = int(np.searchsorted(cdf, rng.random(), side="right"))
    k = min(k, len(w) - 1)
    return tuple(int(i) for i in np.unravel_index(k, dist.weights.shape))


def gX_from_frequency(xi, primes, M: int) -> CompletelyMultiplicativeFn:
    """``g(p_j) = e(xi_j / M)`` and ``g(p) = 1`` at all other primes."""
    return CompletelyMultiplicativeFn({int(p): Fraction(int(a), M) for p, a in zip(primes, xi)})


def sample_gX(dist: FreqDistribution, primes, seed=None) -> CompletelyMultiplicativeFn:
    if len(primes) != dist.r:
        raise DomainError("need one prime per group coordinate")
    xi = sample_frequency(dist, np.random.default_rng(seed))
    return gX_from_frequency(xi, primes, dist.M)


def smooth_prefix(primes) -> int:
    """Largest n such that every j <= n factors over ``primes``."""
    allowed = set(int(p) for p in primes)
    n = 1
    while all(p in allowed for p, _ in factorize(n + 1)):
        n += 1
    return n

"""Completely multiplicative and multiplicative unit-valued functions.

Values at primes are stored either as exact angles (``Fraction`` turns,
``e(t) = exp(2 pi i t)``) or as floating complex numbers.  Anything built
from characters and sign choices stays exact; floating values only enter
through modulated constructions such as ``p**(i t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .numtheory import (
    DirichletCharacter,
    DomainError,
    root_of_unity_table,
    factorize,
    prime_table,
    quadratic_character,
)
from .sequence import SeqWindow

DEFAULT_LIMIT = 10**7
UNIT_TOL = 1e-12

_EXACT = {1: Fraction(0), 1j: Fraction(1, 4), -1: Fraction(1, 2), -1j: Fraction(3, 4)}


class EvaluationError(DomainError):
    """A function was evaluated where it has no defined value."""


def as_unit(value) -> Fraction | complex:
    """Normalise a unit value: ``Fraction`` turns where exact, else complex."""
    if isinstance(value, Fraction):
        return value % 1
    z = complex(value)
    if z in _EXACT:
        return _EXACT[z]
    if abs(abs(z) - 1) > UNIT_TOL:
        raise DomainError(f"value {value!r} is not of unit modulus")
    return z


def unit_complex(value: Fraction | complex) -> complex:
    if isinstance(value, Fraction):
        return complex(root_of_unity_table(value.denominator)[value.numerator])
    return complex(value)


def _is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == [(p, 1)]


@lru_cache(maxsize=16)
def _valuation_table(N: int, p: int) -> np.ndarray:
    v = np.zeros(N + 1, dtype=np.int64)
    m = p
    while m <= N:
        v[m::m] += 1
        m *= p
    v.flags.writeable = False
    return v


class CompletelyMultiplicativeFn:
    """Completely multiplicative ``f`` with ``|f(p)| = 1``.

    The value at a prime comes from ``prime_values`` if assigned there, then
    from ``base`` (a Dirichlet character, where it is nonzero), and finally
    defaults to 1 when ``default_one`` is set.  Primes above ``limit`` are
    never evaluated.
    """

    def __init__(
        self,
        prime_values: dict | None = None,
        *,
        base: DirichletCharacter | None = None,
        limit: int = DEFAULT_LIMIT,
        default_one: bool = True,
    ):
        self.limit = int(limit)
        self.base = base
        self.default_one = default_one
        assigned = {}
        for p, v in (prime_values or {}).items():
            p = int(p)
            if p > self.limit:
                raise DomainError(f"prime {p} exceeds limit {self.limit}")
            if not _is_prime(p):
                raise DomainError(f"{p} is not prime")
            assigned[p] = as_unit(v)
        self.assigned = assigned
        self.exact = all(isinstance(v, Fraction) for v in assigned.values())
        dens = [v.denominator for v in assigned.values() if isinstance(v, Fraction)]
        if base is not None:
            dens.append(base.denominator)
        self.denominator = math.lcm(1, *dens)
        self._window: SeqWindow | None = None

    # -- prime values -----------------------------------------------------

    def _lookup(self, p: int):
        if p > self.limit:
            raise EvaluationError(f"prime {p} beyond limit {self.limit}")
        if p in self.assigned:
            return self.assigned[p]
        if self.base is not None:
            t = self.base.turn(p)
            if t is not None:
                return t
        if self.default_one:
            return Fraction(0)
        raise EvaluationError(f"no value assigned at prime {p}")

    def _assigned_hits(self, primes: np.ndarray):
        keys = np.array(sorted(self.assigned), dtype=np.int64)
        if keys.size == 0:
            return keys, np.zeros(primes.shape, dtype=np.int64), np.zeros(primes.shape, bool)
        pos = np.minimum(np.searchsorted(keys, primes), keys.size - 1)
        return keys, pos, keys[pos] == primes

    def at_prime(self, p: int) -> complex:
        return unit_complex(self._lookup(p))

    def prime_values(self, primes) -> np.ndarray:
        """Complex values at an array of primes."""
        primes = np.asarray(primes, dtype=np.int64)
        if self.exact:
            roots = root_of_unity_table(self.denominator)
            return roots[self.prime_numerators(primes)]
        if primes.size and primes.max() > self.limit:
            raise EvaluationError(f"prime {primes.max()} beyond limit {self.limit}")
        vals = np.ones(primes.shape, dtype=complex)
        known = np.zeros(primes.shape, dtype=bool)
        if self.base is not None:
            bv = self.base.values[primes % self.base.q]
            known = bv != 0
            vals = np.where(known, bv, 1)
        keys, pos, hit = self._assigned_hits(primes)
        if hit.any():
            table = np.array([unit_complex(self.assigned[int(k)]) for k in keys])
            vals[hit] = table[pos[hit]]
            known |= hit
        if not self.default_one and not known.all():
            raise EvaluationError(f"no value assigned at prime {int(primes[~known][0])}")
        return vals

    def prime_numerators(self, primes) -> np.ndarray:
        """Exact angles at primes as numerators over ``self.denominator``."""
        if not self.exact:
            raise DomainError("function has non-exact values")
        primes = np.asarray(primes, dtype=np.int64)
        if primes.size and primes.max() > self.limit:
            raise EvaluationError(f"prime {primes.max()} beyond limit {self.limit}")
        Q = self.denominator
        out = np.zeros(primes.shape, dtype=np.int64)
        known = np.zeros(primes.shape, dtype=bool)
        if self.base is not None:
            t = self.base.turns[primes % self.base.q]
            known = t >= 0
            out = np.where(known, t * (Q // self.base.denominator), 0)
        keys, pos, hit = self._assigned_hits(primes)
        if hit.any():
            nums = np.array([v.numerator * (Q // v.denominator) for v in
                             (self.assigned[int(k)] for k in keys)], dtype=np.int64)
            out[hit] = nums[pos[hit]]
            known |= hit
        if not self.default_one and not known.all():
            bad = int(primes[~known][0])
            raise EvaluationError(f"no value assigned at prime {bad}")
        return out % Q

    # -- evaluation -------------------------------------------------------

    def turn(self, n: int) -> Fraction:
        """Exact angle of ``f(n)`` in turns."""
        if not self.exact:
            raise DomainError("function has non-exact values")
        if n < 1:
            raise DomainError("n must be >= 1")
        t = Fraction(0)
        for p, e in factorize(n):
            t += e * self._lookup(p)
        return t % 1

    def __call__(self, n: int) -> complex:
        if n < 1:
            raise DomainError("n must be >= 1")
        if self.exact:
            return unit_complex(self.turn(n))
        out = 1 + 0j
        for p, e in factorize(n):
            out *= unit_complex(self._lookup(p)) ** e
        return out

    def materialize(self, N: int) -> SeqWindow:
        """Window ``f(1), ..., f(N)`` built multiplicatively from the sieve."""
        if N < 1:
            raise DomainError("N must be >= 1")
        if N > self.limit:
            raise EvaluationError(f"N={N} beyond limit {self.limit}")
        cached = self._window
        if cached is not None and cached.N >= N:
            return cached if cached.N == N else SeqWindow(cached.values[:N])
        spf = prime_table(N).spf[: N + 1].astype(np.int64)
        primes = np.flatnonzero(spf == np.arange(N + 1))
        primes = primes[primes >= 2]
        if self.exact:
            at_p = np.zeros(N + 1, dtype=np.int64)
            at_p[primes] = self.prime_numerators(primes)
            acc = np.zeros(N + 1, dtype=np.int64)
            combine = lambda a, b: (a + b) % self.denominator  # noqa: E731
        else:
            at_p = np.ones(N + 1, dtype=complex)
            at_p[primes] = self.prime_values(primes)
            acc = np.ones(N + 1, dtype=complex)
            combine = np.multiply
        lo = 2
        while lo <= N:
            # every n in [lo, 2 lo) has n // spf(n) < lo
            idx = np.arange(lo, min(2 * lo, N + 1))
            p = spf[idx]
            acc[idx] = combine(acc[idx // p], at_p[p])
            lo *= 2
        if self.exact:
            vals = root_of_unity_table(self.denominator)[acc[1:]]
        else:
            vals = acc[1:]
        self._window = SeqWindow(vals)
        return self._window

    def with_values(self, prime_values: dict) -> CompletelyMultiplicativeFn:
        """Copy with some prime values replaced."""
        merged = dict(self.assigned)
        merged.update({int(p): as_unit(v) for p, v in prime_values.items()})
        return CompletelyMultiplicativeFn(
            merged, base=self.base, limit=self.limit, default_one=self.default_one
        )

    def __repr__(self):
        return (
            f"CompletelyMultiplicativeFn(assigned={len(self.assigned)}, "
            f"base={self.base!r}, exact={self.exact})"
        )


class MultiplicativeFn:
    """Multiplicative ``f`` given by values at prime powers.

    ``f(p**j)`` is looked up in ``prime_power_values[(p, j)]``, then
    ``power_defaults[p]`` (one value for every ``j >= 1``), then taken from
    ``base(p)**j``.  ``max_power[p]`` marks ``f(p**j)`` undefined beyond
    that exponent.
    """

    def __init__(
        self,
        prime_power_values: dict | None = None,
        *,
        base: CompletelyMultiplicativeFn | None = None,
        power_defaults: dict | None = None,
        max_power: dict | None = None,
    ):
        self.prime_power_values = {
            (int(p), int(j)): as_unit(v) for (p, j), v in (prime_power_values or {}).items()
        }
        for p, j in self.prime_power_values:
            if j < 1 or not _is_prime(p):
                raise DomainError(f"({p}, {j}) is not a prime power index")
        self.power_defaults = {int(p): as_unit(v) for p, v in (power_defaults or {}).items()}
        self.max_power = dict(max_power or {})
        self.base = base if base is not None else CompletelyMultiplicativeFn()

    def prime_power(self, p: int, j: int) -> complex:
        if (p, j) in self.prime_power_values:
            return unit_complex(self.prime_power_values[(p, j)])
        if p in self.max_power and j > self.max_power[p]:
            raise EvaluationError(f"f({p}^{j}) is undefined")
        if p in self.power_defaults:
            return unit_complex(self.power_defaults[p])
        return self.base.at_prime(p) ** j

    def __call__(self, n: int) -> complex:
        if n < 1:
            raise DomainError("n must be >= 1")
        out = 1 + 0j
        for p, e in factorize(n):
            out *= self.prime_power(p, e)
        return out

    def _special_primes(self) -> set[int]:
        return {p for p, _ in self.prime_power_values} | set(self.power_defaults) | set(
            self.max_power
        )

    def materialize(self, N: int) -> SeqWindow:
        vals = np.array(self.base.materialize(N).values)
        for p in sorted(self._special_primes()):
            if p > N:
                continue
            v = _valuation_table(N, p)[1:]
            base_p = self.base.at_prime(p)
            for j in range(1, int(v.max()) + 1):
                hit = v == j
                vals[hit] *= self.prime_power(p, j) / base_p**j
        return SeqWindow(vals)

    def __repr__(self):
        return (
            f"MultiplicativeFn(prime_power_values={len(self.prime_power_values)}, "
            f"power_defaults={self.power_defaults})"
        )


# ---------------------------------------------------------------------------
# constructions


def lift_character(
    chi: DirichletCharacter, fill: dict, *, limit: int = DEFAULT_LIMIT
) -> CompletelyMultiplicativeFn:
    """Completely multiplicative extension of ``chi`` with unit values ``fill`` at p | q."""
    missing = [p for p, _ in factorize(chi.q)] if chi.q > 1 else []
    missing = [p for p in missing if p not in fill]
    if missing:
        raise DomainError(f"fill value missing for primes {missing}")
    extra = [p for p in fill if chi.q % p]
    if extra:
        raise DomainError(f"fill given at primes {extra} not dividing {chi.q}")
    return CompletelyMultiplicativeFn(fill, base=chi, limit=limit)


def bcc_function(p: int = 3, sign: int = 1, *, limit: int = DEFAULT_LIMIT):
    """Quadratic character mod ``p`` lifted with value ``sign`` at ``p``.

    ``bcc_function(3)`` is the Borwein-Choi-Coons function, whose partial
    sums count the base-3 digits of n equal to 1.
    """
    return lift_character(quadratic_character(p), {p: sign}, limit=limit)


def chi2_family(h_overrides: dict | None = None) -> MultiplicativeFn:
    """``chi_2 * h``: -1 at every power of 2 times a +-1 twist ``h`` at odd prime powers.

    The result is periodic with period ``2 * prod p**(J_p + 1)`` where
    ``J_p`` is the largest overridden exponent of ``p``; see
    :func:`chi2_period`.
    """
    h_overrides = dict(h_overrides or {})
    for (p, j), v in h_overrides.items():
        if p == 2:
            raise DomainError("h is fixed to +1 at powers of 2")
        if v not in (1, -1):
            raise DomainError(f"override at ({p}, {j}) must be +-1")
    return MultiplicativeFn(h_overrides, power_defaults={2: -1})


def chi2_period(f: MultiplicativeFn) -> int:
    top: dict[int, int] = {}
    for p, j in f.prime_power_values:
        top[p] = max(top.get(p, 0), j)
    return 2 * math.prod(p ** (j + 1) for p, j in top.items())


def factorial_alternating(N: int) -> SeqWindow:
    """``f(1) = 1`` and ``f(j D! + k) = (-1)**j f(k)`` for ``k <= D!``, ``j <= D``."""
    if N < 1:
        raise DomainError("N must be >= 1")
    f = [0, 1]
    D, fact = 1, 1
    while len(f) <= N:
        for j in range(1, D + 1):
            sign = -1 if j % 2 else 1
            f.extend(sign * f[k] for k in range(1, fact + 1))
        D += 1
        fact *= D
    return SeqWindow.from_signs(f[1 : N + 1])


@dataclass(frozen=True)
class StochasticBCC:
    """One draw of the random BCC model: ``chi`` off multiples of ``q``, ``g(q**j) = signs[j-1]``."""

    signs: tuple[int, ...]
    q: int = 3
    chi: DirichletCharacter = field(default_factory=lambda: quadratic_character(3))
    seed: object = None

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise DomainError("signs must be +-1")
        if self.chi.q != self.q or not _is_prime(self.q):
            raise DomainError("chi must have prime modulus q")

    @property
    def k(self) -> int:
        return len(self.signs)

    @property
    def g(self) -> MultiplicativeFn:
        base = _unit_lift(self.chi)
        return MultiplicativeFn(
            {(self.q, j + 1): s for j, s in enumerate(self.signs)},
            base=base,
            max_power={self.q: self.k},
        )


@lru_cache(maxsize=8)
def _unit_lift(chi: DirichletCharacter) -> CompletelyMultiplicativeFn:
    return lift_character(chi, {p: 1 for p, _ in factorize(chi.q)} if chi.q > 1 else {})


def random_bcc(k: int, seed=None, *, q: int = 3, chi: DirichletCharacter | None = None):
    """Draw ``k`` independent fair signs for the random BCC model."""
    if k < 1:
        raise DomainError("k must be >= 1")
    rng = np.random.default_rng(seed)
    signs = tuple(int(s) for s in rng.choice((-1, 1), size=k))
    chi = chi if chi is not None else quadratic_character(q)
    return StochasticBCC(signs, q=q, chi=chi, seed=seed)


class VectorBCC:
    """``f(q**a m) = chi(m) e_a`` with values in a ``dim``-dimensional space."""

    def __init__(self, dim: int, q: int = 3, chi: DirichletCharacter | None = None):
        self.dim = dim
        self.q = q
        self.chi = chi if chi is not None else quadratic_character(q)
        if self.chi.q != q:
            raise DomainError("chi must have modulus q")

    def __call__(self, n: int) -> np.ndarray:
        if n < 1:
            raise DomainError("n must be >= 1")
        a = 0
        while n % self.q == 0:
            n //= self.q
            a += 1
        if a >= self.dim:
            raise EvaluationError(f"valuation {a} needs dimension > {self.dim}")
        out = np.zeros(self.dim, dtype=complex)
        out[a] = self.chi(n)
        return out


def evaluate(f: CompletelyMultiplicativeFn | MultiplicativeFn, n: int) -> complex:
    return f(n)


def materialize(f, N: int) -> SeqWindow:
    """Window ``f(1..N)`` for functions of this module, characters or callables."""
    if isinstance(f, SeqWindow):
        if f.N < N:
            raise DomainError(f"window has length {f.N} < {N}")
        return f if f.N == N else SeqWindow(f.values[:N])
    if isinstance(f, (CompletelyMultiplicativeFn, MultiplicativeFn)):
        return f.materialize(N)
    if isinstance(f, DirichletCharacter):
        return SeqWindow(f.values[np.arange(1, N + 1) % f.q])
    return SeqWindow([f(n) for n in range(1, N + 1)])

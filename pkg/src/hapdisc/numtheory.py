"""Primes, factorization, base-q digits and Dirichlet characters.

Characters are built from the structure of the unit group (Z/q)^x: the
group is split by the Chinese remainder theorem into prime-power
components, each component is given explicit generators, and a character
is a choice of exponent for every generator.  Values are kept as integer
numerators of a rational angle (in turns) over the group exponent, so
multiplicativity and orthogonality can be checked exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

CHARACTER_MODULUS_CAP = 100_000


class DomainError(ValueError):
    """An argument lies outside the domain an operation supports."""


# ---------------------------------------------------------------------------
# primes


class PrimeTable:
    """Sieve of smallest prime factors up to ``limit``.

    >>> t = PrimeTable(30)
    >>> t.primes.tolist()
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    >>> t.factorize(360)
    [(2, 3), (3, 2), (5, 1)]
    """

    def __init__(self, limit: int):
        if limit < 1:
            raise DomainError("limit must be >= 1")
        self.limit = int(limit)
        spf = np.zeros(self.limit + 1, dtype=np.int32)
        for p in range(2, math.isqrt(self.limit) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
        idx = np.arange(self.limit + 1, dtype=np.int32)
        unset = spf == 0
        spf[unset] = idx[unset]
        spf[:2] = 0
        self.spf = spf
        self.primes = np.flatnonzero(spf == idx)
        self.primes = self.primes[self.primes >= 2]

    def __contains__(self, n: int) -> bool:
        return 2 <= n <= self.limit and self.spf[n] == n

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise DomainError(f"{n} exceeds table limit {self.limit}")
        return n in self

    def primes_upto(self, x: float) -> np.ndarray:
        if x > self.limit:
            raise DomainError(f"{x} exceeds table limit {self.limit}")
        return self.primes[: np.searchsorted(self.primes, math.floor(x), side="right")]

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Return ``[(p, e), ...]`` with ascending primes and ``prod p**e == n``.

        Integers above the table limit are handled by trial division with the
        tabulated primes; a leftover cofactor above ``limit**2`` cannot be
        certified prime and raises :class:`DomainError`.
        """
        if n < 1:
            raise DomainError("factorize needs n >= 1")
        out: list[tuple[int, int]] = []
        if n > self.limit:
            for p in self.primes.tolist():
                if p * p > n or n <= self.limit:
                    break
                if n % p == 0:
                    e = 0
                    while n % p == 0:
                        n //= p
                        e += 1
                    out.append((p, e))
            if n > self.limit:
                # no factor up to min(limit, sqrt(n)) remains
                if n > self.limit * self.limit:
                    raise DomainError(
                        f"cofactor {n} has no factor up to {self.limit} and may be composite"
                    )
                out.append((n, 1))
                return sorted(out)
        spf = self.spf
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        out.sort()
        return out


@lru_cache(maxsize=8)
def _table(limit: int) -> PrimeTable:
    return PrimeTable(limit)


def prime_table(n: int) -> PrimeTable:
    """Shared table covering at least ``n`` (sizes are rounded up to a power of two)."""
    size = 1 << max(10, int(n - 1).bit_length())
    return _table(size)


def primes_upto(x: float) -> np.ndarray:
    if x < 2:
        return np.zeros(0, dtype=np.int64)
    return prime_table(int(x)).primes_upto(x)


def factorize(n: int) -> list[tuple[int, int]]:
    return prime_table(min(max(n, 2), 1 << 22)).factorize(n)


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n):
        out -= out // p
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


# ---------------------------------------------------------------------------
# digits


def base_digits(n: int, q: int) -> list[int]:
    """Digits of ``n`` in base ``q``, least significant first.

    >>> base_digits(13, 3)
    [1, 1, 1]
    >>> base_digits(0, 3)
    []
    """
    if q < 2:
        raise DomainError("base must be >= 2")
    if n < 0:
        raise DomainError("n must be >= 0")
    out = []
    while n:
        n, r = divmod(n, q)
        out.append(r)
    return out


def count_digit(n: int, q: int, d: int) -> int:
    if not 0 <= d < q:
        raise DomainError(f"digit {d} not valid in base {q}")
    return base_digits(n, q).count(d)


def digit_counts(N: int, q: int, d: int) -> np.ndarray:
    """``out[n] = count_digit(n, q, d)`` for ``0 <= n <= N``, vectorized."""
    if q < 2:
        raise DomainError("base must be >= 2")
    if not 0 <= d < q:
        raise DomainError(f"digit {d} not valid in base {q}")
    n = np.arange(N + 1, dtype=np.int64)
    out = np.zeros(N + 1, dtype=np.int64)
    while True:
        live = n > 0
        if not live.any():
            return out
        out += live & (n % q == d)
        n //= q


# ---------------------------------------------------------------------------
# unit groups and characters


def _primitive_root_prime(p: int) -> int:
    if p == 2:
        return 1
    fs = [r for r, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    raise AssertionError("unreachable")


def _component_generators(p: int, e: int) -> list[tuple[int, int]]:
    """Generators with their orders for (Z/p^e)^x."""
    pe = p**e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(pe - 1, 2)]
        return [(pe - 1, 2), (5, 2 ** (e - 2))]
    g = _primitive_root_prime(p)
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return [(g, pe - pe // p)]


class UnitGroup:
    """Generators and discrete logarithms of (Z/q)^x.

    ``logs[a]`` holds the exponent vector of ``a`` with respect to
    ``generators`` (one row per residue, ``-1`` for non-units).
    """

    def __init__(self, q: int):
        self.q = q
        self.generators: list[int] = []  # lifted to Z/q via CRT
        self.orders: list[int] = []
        comps = []
        for p, e in factorize(q) if q > 1 else []:
            pe = p**e
            for g, order in _component_generators(p, e):
                comps.append((pe, g, order))
        for pe, g, order in comps:
            # element that is g mod pe and 1 mod the rest of q
            rest = q // pe
            lifted = (g * rest * pow(rest, -1, pe) + pe * pow(pe, -1, rest)) % q if rest > 1 else g % q
            self.generators.append(lifted)
            self.orders.append(order)
        self.exponent = math.lcm(*self.orders) if self.orders else 1
        k = len(self.generators)
        # walk all exponent vectors; the walk visits each unit exactly once
        residues = np.array([1 % q], dtype=np.int64)
        vecs = np.zeros((1, k), dtype=np.int64)
        for i, (g, order) in enumerate(zip(self.generators, self.orders)):
            powers = np.array([pow(g, j, q) for j in range(order)], dtype=np.int64)
            residues = (residues[:, None] * powers[None, :] % q).reshape(-1)
            vecs = np.repeat(vecs, order, axis=0)
            vecs[:, i] = np.tile(np.arange(order), len(vecs) // order)
        self.logs = np.full((q, k), -1, dtype=np.int64)
        self.logs[residues] = vecs
        is_unit = np.zeros(q, dtype=bool)
        is_unit[residues] = True
        self.is_unit = is_unit
        self.units = np.flatnonzero(is_unit)


@lru_cache(maxsize=64)
def unit_group(q: int) -> UnitGroup:
    return UnitGroup(q)


def root_of_unity_table(den: int) -> np.ndarray:
    """``e(k/den)`` for k in range(den) with exact quarter turns."""
    k = np.arange(den)
    out = np.exp(2j * np.pi * k / den)
    for num, val in ((0, 1), (1, 1j), (2, -1), (3, -1j)):
        if (num * den) % 4 == 0:
            out[num * den // 4] = val
    return out


class DirichletCharacter:
    """A Dirichlet character mod ``q`` given by generator exponents.

    ``exponents[i]`` is ``k_i`` with ``chi(g_i) = e(k_i / order_i)``.
    The value table is stored as turn numerators over ``denominator``
    (the unit group exponent); non-units carry ``-1``.
    """

    def __init__(self, q: int, exponents: tuple[int, ...]):
        self.q = q
        self.group = unit_group(q)
        if len(exponents) != len(self.group.orders):
            raise DomainError("exponent vector does not match the unit group")
        self.exponents = tuple(int(k) % o for k, o in zip(exponents, self.group.orders))

    @property
    def modulus(self) -> int:
        return self.q

    @property
    def denominator(self) -> int:
        return self.group.exponent

    @cached_property
    def turns(self) -> np.ndarray:
        g = self.group
        E = g.exponent
        out = np.full(self.q, -1, dtype=np.int64)
        units = g.units
        acc = np.zeros(len(units), dtype=np.int64)
        for i, (k, order) in enumerate(zip(self.exponents, g.orders)):
            acc += g.logs[units, i] * (k * (E // order))
        out[units] = acc % E
        out.flags.writeable = False
        return out

    @cached_property
    def values(self) -> np.ndarray:
        """Complex value table indexed by residue."""
        roots = root_of_unity_table(self.denominator)
        t = self.turns
        out = np.where(t >= 0, roots[np.maximum(t, 0)], 0)
        out.flags.writeable = False
        return out

    def turn(self, n: int) -> Fraction | None:
        """Angle of ``chi(n)`` in turns, or ``None`` where ``chi(n) = 0``."""
        t = int(self.turns[n % self.q])
        return None if t < 0 else Fraction(t, self.denominator)

    def __call__(self, n: int) -> complex:
        return complex(self.values[n % self.q])

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @cached_property
    def conductor(self) -> int:
        t = self.turns
        units = self.group.units
        for d in divisors(self.q):
            if np.all(t[units[units % d == 1 % d]] == 0):
                return d
        return self.q

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.q

    @property
    def is_real(self) -> bool:
        t = self.turns
        return bool(np.all((t < 0) | (2 * t % self.denominator == 0)))

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if other.q != self.q:
            raise DomainError("characters must share a modulus")
        return DirichletCharacter(
            self.q, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.q, tuple(-k for k in self.exponents))

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.turns, other.turns)

    def __hash__(self):
        return hash((self.q, self.exponents))

    def __repr__(self):
        return f"DirichletCharacter(q={self.q}, exponents={self.exponents})"


def _check_modulus(q: int) -> None:
    if not 1 <= q <= CHARACTER_MODULUS_CAP:
        raise DomainError(f"modulus must lie in [1, {CHARACTER_MODULUS_CAP}], got {q}")


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod ``q``; the principal one comes first.

    >>> [c(2) for c in enumerate_characters(3)]
    [(1+0j), (-1+0j)]
    """
    _check_modulus(q)
    orders = unit_group(q).orders
    out = []
    for idx in np.ndindex(*orders) if orders else [()]:
        out.append(DirichletCharacter(q, tuple(int(i) for i in idx)))
    return out


def principal_character(q: int) -> DirichletCharacter:
    _check_modulus(q)
    return DirichletCharacter(q, (0,) * len(unit_group(q).orders))


def quadratic_character(p: int) -> DirichletCharacter:
    """The Legendre symbol ``(n / p)`` for an odd prime ``p``."""
    if p < 3 or len(factorize(p)) != 1 or factorize(p)[0][1] != 1:
        raise DomainError("quadratic_character needs an odd prime")
    _check_modulus(p)
    return DirichletCharacter(p, ((p - 1) // 2,))


def character_interval_sum(chi: DirichletCharacter, a: int, b: int) -> complex:
    """``sum_{a <= n <= b} chi(n)`` via whole periods plus a tabulated remainder."""
    if a > b:
        raise DomainError("need a <= b")
    q = chi.q
    cum = np.concatenate([[0], np.cumsum(chi.values)])
    period = cum[q]

    def upto(x: int) -> complex:
        # sum over 0 <= n <= x
        if x < 0:
            return 0
        k, r = divmod(x + 1, q)
        return k * period + cum[r]

    return complex(upto(b) - upto(a - 1))

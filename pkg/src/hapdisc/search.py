"""Longest +-1 sequences of bounded HAP discrepancy.

Two routes to the same question: a depth-first search with incremental
partial-sum state, and a DIMACS CNF formula for an external SAT solver.
Witnesses from either route are checked by :func:`verify_certificate`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .discrepancy import DiscrepancyReport, hap_discrepancy
from .numtheory import prime_table
from .sequence import SeqWindow

MODES = ("general", "cm")


class CertificateError(ValueError):
    """A certificate is malformed (not +-1, or not multiplicative in cm mode)."""


@dataclass(frozen=True)
class SearchConfig:
    C: int
    mode: str = "general"
    max_n: int = 10_000
    node_limit: int = 10**8
    time_limit: float = 300.0

    def __post_init__(self):
        if self.C < 0:
            raise ValueError("C must be >= 0")
        if self.max_n < 1:
            raise ValueError("max_n must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")


@dataclass(frozen=True)
class Certificate:
    values: tuple[int, ...]
    claimed_C: int
    mode: str = "general"

    @property
    def N(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SearchResult:
    n_max: int
    witness: Certificate
    complete: bool
    nodes: int


def multiplicativity_violation(values) -> tuple[int, int] | None:
    """First ``(m, n)`` with ``v(mn) != v(m) v(n)``, or None."""
    v = np.concatenate([[0], np.asarray(values, dtype=np.int64)])
    N = len(v) - 1
    if N >= 1 and v[1] != 1:
        return (1, 1)
    for m in range(2, N // 2 + 1):
        top = N // m
        if top < m:
            break
        ns = np.arange(m, top + 1)
        bad = v[m * ns] != v[m] * v[ns]
        if bad.any():
            return (m, int(ns[np.argmax(bad)]))
    return None


def verify_certificate(cert: Certificate) -> tuple[bool, DiscrepancyReport]:
    vals = np.asarray(cert.values)
    if vals.size == 0:
        return True, DiscrepancyReport(0.0, 0, 1)
    if not np.isin(vals, (-1, 1)).all():
        raise CertificateError("certificate entries must be +1 or -1")
    if cert.mode == "cm":
        bad = multiplicativity_violation(vals)
        if bad is not None:
            raise CertificateError(f"not completely multiplicative at (m, n) = {bad}")
    report = hap_discrepancy(SeqWindow.from_signs(vals))
    return report.sup <= cert.claimed_C, report


# ---------------------------------------------------------------------------
# depth-first search


def _divisor_lists(N: int) -> list[list[int]]:
    divs: list[list[int]] = [[] for _ in range(N + 1)]
    for d in range(1, N + 1):
        for m in range(d, N + 1, d):
            divs[m].append(d)
    return divs


class _Search:
    """Iterative DFS over positions 1, 2, ...; options are tried +1 first."""

    def __init__(self, cfg: SearchConfig, probe=None):
        self.cfg = cfg
        self.probe = probe
        N = cfg.max_n
        self.f = [0] * (N + 1)
        if cfg.mode == "general":
            self.divs = _divisor_lists(N)
            self.sums = [0] * (N + 1)  # sums[d] = running sum over multiples of d
        else:
            self.spf = prime_table(max(N, 2)).spf[: N + 1].tolist()
            self.total = 0  # prefix sum; every HAP sum is f(d) times a prefix sum

    def options(self, n: int):
        if self.cfg.mode == "cm":
            if n == 1:
                return (1,)
            p = self.spf[n]
            if p != n:
                return (self.f[p] * self.f[n // p],)
        return (1, -1)

    def apply(self, n: int, v: int) -> bool:
        C = self.cfg.C
        if self.cfg.mode == "cm":
            self.total += v
            if abs(self.total) > C:
                self.total -= v
                return False
            self.f[n] = v
            return True
        sums = self.sums
        ok = True
        for d in self.divs[n]:
            s = sums[d] + v
            sums[d] = s
            if s > C or s < -C:
                ok = False
        if not ok:
            for d in self.divs[n]:
                sums[d] -= v
            return False
        self.f[n] = v
        return True

    def undo(self, n: int) -> None:
        v = self.f[n]
        if self.cfg.mode == "cm":
            self.total -= v
        else:
            for d in self.divs[n]:
                self.sums[d] -= v
        self.f[n] = 0

    def run(self) -> SearchResult:
        cfg = self.cfg
        N = cfg.max_n
        deadline = time.monotonic() + cfg.time_limit
        choice = [0] * (N + 2)
        opts: list[tuple[int, ...]] = [()] * (N + 2)
        best_n, best = 0, []
        nodes = 0
        capped = False
        n = 1
        opts[1] = self.options(1)
        while n >= 1:
            if n > N:
                break
            if choice[n] < len(opts[n]):
                v = opts[n][choice[n]]
                choice[n] += 1
                nodes += 1
                if nodes >= cfg.node_limit or (
                    nodes & 0xFFF == 0 and time.monotonic() > deadline
                ):
                    capped = True
                    break
                if self.apply(n, v):
                    if self.probe is not None:
                        self.probe(n, self)
                    if n > best_n:
                        best_n, best = n, self.f[1 : n + 1]
                    n += 1
                    if n <= N:
                        choice[n] = 0
                        opts[n] = self.options(n)
            else:
                n -= 1
                if n >= 1:
                    self.undo(n)
        witness = Certificate(tuple(best), cfg.C, cfg.mode)
        return SearchResult(best_n, witness, not capped, nodes)


def dfs_longest(cfg: SearchConfig, *, probe=None) -> SearchResult:
    """Longest ``N <= cfg.max_n`` admitting a sequence of discrepancy ``<= cfg.C``.

    ``complete`` is False only when a node or time cap stopped the search;
    otherwise ``n_max`` is exact for the question bounded by ``max_n``.
    ``probe(n, state)`` is called after every successful assignment.
    """
    return _Search(cfg, probe).run()


def dfs_longest_cm(cfg: SearchConfig, *, probe=None) -> SearchResult:
    """:func:`dfs_longest` restricted to completely multiplicative sequences."""
    if cfg.mode != "cm":
        cfg = SearchConfig(cfg.C, "cm", cfg.max_n, cfg.node_limit, cfg.time_limit)
    return _Search(cfg, probe).run()


def brute_force_longest(C: int, length: int) -> int:
    """Largest ``N <= length`` such that some +-1 prefix of length N has discrepancy <= C.

    Enumerates all ``2**length`` sign patterns; independent of the DFS.
    """
    bits = np.arange(2**length, dtype=np.int64)[:, None] >> np.arange(length)
    F = 1 - 2 * (bits & 1)  # rows are all sign patterns
    ok_upto = np.full(len(F), length)
    for d in range(1, length + 1):
        sub = np.cumsum(F[:, d - 1 :: d], axis=1)
        bad = np.abs(sub) > C
        first = np.where(bad.any(axis=1), bad.argmax(axis=1), -1)
        # a violation at the i-th multiple (0-based) first breaks length (i + 1) d
        limit = np.where(first >= 0, (first + 1) * d - 1, length)
        ok_upto = np.minimum(ok_upto, limit)
    return int(ok_upto.max())


# ---------------------------------------------------------------------------
# CNF


class _Formula:
    def __init__(self, nvars: int):
        self.nvars = nvars
        self.clauses: list[list[int]] = []
        self.comments: list[str] = []

    def new_vars(self, k: int) -> int:
        start = self.nvars + 1
        self.nvars += k
        return start

    def add(self, *lits):
        out = []
        for lit in lits:
            if lit is True:
                return
            if lit is False:
                continue
            out.append(lit)
        if not out:
            raise AssertionError("constant-false clause")
        self.clauses.append(out)

    def dimacs(self) -> str:
        lines = [f"c {c}" for c in self.comments]
        lines.append(f"p cnf {self.nvars} {len(self.clauses)}")
        lines.extend(" ".join(map(str, cl)) + " 0" for cl in self.clauses)
        return "\n".join(lines) + "\n"


def _neg(lit):
    return (not lit) if isinstance(lit, bool) else -lit


def _encode_progression(F: _Formula, xs: list[int], C: int, d: int) -> None:
    """Sequential counter keeping every prefix sum of ``+-1`` values in [-C, C].

    ``at_least(i, v)`` is a literal for ``sum_{j<=i} >= v`` with v in
    ``(-C, C]``; levels outside that range are constants.
    """
    m = len(xs)
    width = 2 * C
    base = F.new_vars(m * width) if width else F.nvars + 1
    if width:
        F.comments.append(
            f"d={d}: vars {base}..{base + m * width - 1}; var(i, v) = {base} + "
            f"(i-1)*{width} + (v+{C - 1}) is true iff sum_(j<=i) f(j*{d}) >= v, "
            f"i=1..{m}, v={-C + 1}..{C}"
        )

    def at_least(i: int, v: int):
        if v <= -C:
            return True
        if v > C:
            return False
        if i == 0:
            return v <= 0
        return base + (i - 1) * width + (v + C - 1)

    for i in range(1, m + 1):
        x = xs[i - 1]
        for v in range(-C + 1, C + 1):
            y = at_least(i, v)
            F.add(-x, _neg(at_least(i - 1, v - 1)), y)
            F.add(x, _neg(at_least(i - 1, v + 1)), y)
            F.add(-x, at_least(i - 1, v - 1), -y)
            F.add(x, at_least(i - 1, v + 1), -y)
        F.add(-x, _neg(at_least(i - 1, C)))  # no step above C
        F.add(x, at_least(i - 1, -C + 1))  # no step below -C


def emit_cnf(N: int, C: int, mode: str = "general") -> str:
    """DIMACS formula satisfiable iff a length-N sequence of discrepancy <= C exists.

    Variable ``n`` (1..N) is true iff ``f(n) = +1``.  In ``cm`` mode the
    formula also forces ``f(1) = +1`` and ``f(mn) = f(m) f(n)``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if C < 0:
        raise ValueError("C must be >= 0")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    F = _Formula(N)
    F.comments.append(f"HAP discrepancy <= {C} for f(1..{N}), mode={mode}")
    F.comments.append(f"vars 1..{N}: var n is true iff f(n) = +1")
    for d in range(1, N + 1):
        _encode_progression(F, list(range(d, N + 1, d)), C, d)
    if mode == "cm":
        F.comments.append("multiplicativity: f(1) = +1 and var(mn) <-> (var(m) <-> var(n))")
        F.add(1)
        for a in range(2, N + 1):
            if a * a > N:
                break
            for b in range(a, N // a + 1):
                ab = a * b
                if a == b:
                    F.add(ab)
                    continue
                F.add(-a, -b, ab)
                F.add(a, b, ab)
                F.add(-a, b, -ab)
                F.add(a, -b, -ab)
    return F.dimacs()


def solve_dimacs(text: str, solver: str = "cadical153") -> tuple[bool, list[int] | None]:
    """Run a pysat solver on DIMACS text; returns (satisfiable, model)."""
    from pysat.formula import CNF
    from pysat.solvers import Solver

    cnf = CNF(from_string=text)
    with Solver(name=solver, bootstrap_with=cnf.clauses) as s:
        sat = s.solve()
        return sat, (s.get_model() if sat else None)


def decode_model(model: list[int], N: int) -> tuple[int, ...]:
    """Signs ``f(1..N)`` from a satisfying assignment."""
    truth = {abs(lit): lit > 0 for lit in model}
    return tuple(1 if truth.get(n, False) else -1 for n in range(1, N + 1))

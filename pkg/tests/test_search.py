import itertools

import numpy as np
import pytest

from hapdisc.discrepancy import hap_discrepancy
from hapdisc.mulfun import CompletelyMultiplicativeFn
from hapdisc.numtheory import primes_upto
from hapdisc.search import (
    Certificate,
    CertificateError,
    SearchConfig,
    brute_force_longest,
    decode_model,
    dfs_longest,
    dfs_longest_cm,
    emit_cnf,
    multiplicativity_violation,
    solve_dimacs,
    verify_certificate,
)
from hapdisc.sequence import SeqWindow


def longest_ok_prefix(values, C):
    """Largest N with every HAP sum inside [-C, C] on values[:N]."""
    best = 0
    for N in range(1, len(values) + 1):
        if hap_discrepancy(SeqWindow.from_signs(values[:N])).sup <= C:
            best = N
        else:
            break
    return best


def test_verify_examples():
    ok, _ = verify_certificate(Certificate((1, -1, 1), 1))
    assert ok
    ok, rep = verify_certificate(Certificate((1, 1), 1))
    assert not ok and (rep.witness_n, rep.witness_d, rep.sup) == (2, 1, 2)
    with pytest.raises(CertificateError):
        verify_certificate(Certificate((1, 0, 1), 1))
    with pytest.raises(CertificateError):
        verify_certificate(Certificate((1, -1, 1, -1), 1, "cm"))


def test_multiplicativity_violation():
    f = CompletelyMultiplicativeFn({2: -1, 3: -1, 5: 1}).materialize(30).signs()
    assert multiplicativity_violation(f) is None
    g = f.copy()
    g[11] = -g[11]  # f(12)
    assert multiplicativity_violation(g) is not None


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(-1)
    with pytest.raises(ValueError):
        SearchConfig(1, max_n=0)
    with pytest.raises(ValueError):
        SearchConfig(1, mode="other")


def test_dfs_c0():
    res = dfs_longest(SearchConfig(0))
    assert res.n_max == 0 and res.complete


def test_dfs_c1_general():
    res = dfs_longest(SearchConfig(1))
    assert (res.n_max, res.complete) == (11, True)
    assert verify_certificate(res.witness)[0]
    assert brute_force_longest(1, 12) == 11


def test_brute_force_oracle_by_hap_scan():
    # independent check: longest prefix over all 2^12 patterns using the generic scan
    best = max(longest_ok_prefix(list(p), 1) for p in itertools.product((1, -1), repeat=12))
    assert best == 11


def test_dfs_cm_c1():
    res = dfs_longest_cm(SearchConfig(1, "cm"))
    assert (res.n_max, res.complete) == (9, True)
    ok, _ = verify_certificate(res.witness)
    assert ok
    # oracle: every sign choice at the primes up to 13
    primes = [int(p) for p in primes_upto(13)]
    best = 0
    for signs in itertools.product((1, -1), repeat=len(primes)):
        f = CompletelyMultiplicativeFn(dict(zip(primes, signs)))
        best = max(best, longest_ok_prefix(f.materialize(16).signs().tolist(), 1))
    assert best == 9


def test_dfs_cm_c2():
    res = dfs_longest_cm(SearchConfig(2, "cm"))
    assert res.complete
    assert res.n_max == 246
    assert verify_certificate(res.witness)[0]
    assert multiplicativity_violation(res.witness.values) is None


def test_caps_mark_incomplete():
    res = dfs_longest(SearchConfig(2, max_n=300, node_limit=2000))
    assert not res.complete
    assert verify_certificate(res.witness)[0]
    res = dfs_longest(SearchConfig(2, max_n=300, time_limit=0.0))
    assert not res.complete


def test_max_n_ceiling():
    res = dfs_longest(SearchConfig(2, max_n=30))
    assert res.n_max == 30 and res.complete


def test_state_integrity_probe():
    rng = np.random.default_rng(40)
    checked = [0]

    def probe(n, state):
        if checked[0] >= 1000 or rng.random() > 0.2:
            return
        checked[0] += 1
        f = state.f
        for d in range(1, n + 1):
            assert state.sums[d] == sum(f[j] for j in range(d, n + 1, d))

    dfs_longest(SearchConfig(2, max_n=300, node_limit=50000), probe=probe)
    assert checked[0] == 1000

    def probe_cm(n, state):
        assert state.total == sum(state.f[1 : n + 1])

    dfs_longest_cm(SearchConfig(2, "cm", max_n=250), probe=probe_cm)


def test_cnf_examples():
    assert solve_dimacs(emit_cnf(2, 0))[0] is False
    sat, model = solve_dimacs(emit_cnf(11, 1))
    assert sat and verify_certificate(Certificate(decode_model(model, 11), 1))[0]
    assert solve_dimacs(emit_cnf(12, 1))[0] is False
    assert solve_dimacs(emit_cnf(9, 1, "cm"))[0] is True
    assert solve_dimacs(emit_cnf(10, 1, "cm"))[0] is False


def test_cnf_header_and_comments():
    text = emit_cnf(20, 2, "cm")
    lines = text.splitlines()
    header = [ln for ln in lines if ln.startswith("p ")]
    assert len(header) == 1
    _, _, nv, nc = header[0].split()
    clauses = [ln for ln in lines if not ln.startswith(("c", "p"))]
    assert len(clauses) == int(nc)
    lits = [abs(int(t)) for ln in clauses for t in ln.split()[:-1]]
    assert max(lits) <= int(nv)
    assert all(ln.endswith(" 0") for ln in clauses)
    assert any("var n is true iff f(n) = +1" in ln for ln in lines)


def test_cnf_agrees_with_brute_force_small():
    # every length-N pattern decides satisfiability directly for N <= 10
    for C in (1, 2):
        for N in range(1, 11):
            direct = any(
                hap_discrepancy(SeqWindow.from_signs(p)).sup <= C
                for p in itertools.product((1, -1), repeat=N)
            )
            assert solve_dimacs(emit_cnf(N, C))[0] == direct


def test_cnf_cm_models_are_multiplicative():
    for N in (10, 25, 40):
        sat, model = solve_dimacs(emit_cnf(N, 2, "cm"))
        assert sat
        vals = decode_model(model, N)
        assert multiplicativity_violation(vals) is None
        assert verify_certificate(Certificate(vals, 2, "cm"))[0]


def test_emit_cnf_validation():
    with pytest.raises(ValueError):
        emit_cnf(0, 1)
    with pytest.raises(ValueError):
        emit_cnf(5, -1)

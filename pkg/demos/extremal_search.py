"""Longest +-1 sequences with HAP discrepancy at most C.

Runs the backtracking search, then confirms the boundary with the SAT
encoding and re-verifies the witness.
"""

from hapdisc.search import (
    SearchConfig,
    dfs_longest,
    dfs_longest_cm,
    emit_cnf,
    solve_dimacs,
    verify_certificate,
)


def main():
    for cfg in (SearchConfig(1), SearchConfig(1, "cm"), SearchConfig(2, "cm")):
        search = dfs_longest if cfg.mode == "general" else dfs_longest_cm
        res = search(cfg)
        ok, rep = verify_certificate(res.witness)
        n = res.n_max
        at = solve_dimacs(emit_cnf(n, cfg.C, cfg.mode))[0]
        past = solve_dimacs(emit_cnf(n + 1, cfg.C, cfg.mode))[0]
        print(
            f"C={cfg.C} {cfg.mode:>7}: n_max={n} complete={res.complete} nodes={res.nodes} "
            f"witness ok={ok} (sup {rep.sup:.0f}); SAT at n: {at}, at n+1: {past}"
        )

    res = dfs_longest(SearchConfig(2, max_n=2000, node_limit=200_000))
    print(f"C=2 general with a node cap: reached {res.n_max}, complete={res.complete}")


if __name__ == "__main__":
    main()

"""Lift a multiplicative function to (Z/M)^r and check the Fourier identity.

The squared partial sums averaged over all shifts equal the frequency
distribution's expectation of |sum_j e(xi . pi(j))|^2.
"""

import numpy as np

from hapdisc import VectorBCC, bcc_function, random_bcc
from hapdisc.reduction import (
    build_F,
    discrepancy_identity_check,
    frequency_distribution,
    plancherel_sums,
    sample_gX,
    wraparound_split,
)


def main():
    primes, M = (2, 3, 5), 8
    cases = {
        "bcc": build_F(bcc_function(), primes, M),
        "random bcc": build_F(random_bcc(8, seed=3).g, primes, M),
        "vector bcc": build_F(VectorBCC(8), primes, M, dim=8),
    }
    for name, F in cases.items():
        total, _ = plancherel_sums(F)
        pairs = [discrepancy_identity_check(F, primes, n) for n in range(1, 7)]
        shown = "  ".join(f"{lhs:.3f}/{rhs:.3f}" for lhs, rhs in pairs)
        print(f"{name:>11}: sum of |F^|^2 = {total:.12f}  lhs/rhs for n=1..6: {shown}")

    dist = frequency_distribution(cases["random bcc"])
    heavy = sorted(dist.rows(), key=lambda r: -r[1])[:4]
    print()
    print("heaviest frequencies for the random bcc lift:")
    for xi, w in heavy:
        print(f"  xi={xi}  weight={w:.4f}")
    g = sample_gX(dist, primes, seed=5)
    print("a sampled g_X on 1..10:", np.round([g(j) for j in range(1, 11)], 3))

    # shifts that wrap around mod M are the only ones that can beat the HAP bound
    print()
    print("vector bcc, n=5: regular shifts obey |sum|^2 <= 2")
    print(f"{'M':>4} {'lhs':>8} {'regular':>8} {'exceptional':>12} {'exc. fraction':>14} {'regular max':>12}")
    for M in (4, 8, 16, 32):
        s = wraparound_split(build_F(VectorBCC(M), primes, M, dim=M), primes, 5)
        print(f"{M:>4} {s.lhs:>8.4f} {s.regular:>8.4f} {s.exceptional:>12.4f} {s.exceptional_fraction:>14.4f} {s.regular_max:>12.4f}")


if __name__ == "__main__":
    main()

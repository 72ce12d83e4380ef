"""Pretentious distances, Mertens sums and the Euler product with h = 1."""

import math

from hapdisc import bcc_function, quadratic_character
from hapdisc.pretentious import (
    ModulatedCharacter,
    mertens_sum,
    pretentious_dist_sq,
    pretentious_factorize,
    singular_series,
)

GAMMA = 0.5772156649015329


def main():
    bcc = bcc_function()
    chi3 = quadratic_character(3)
    for X in (10**2, 10**4, 10**6):
        print(
            f"X={X:>8}: D(bcc, chi_3)^2 = {pretentious_dist_sq(bcc, chi3, X):.6f}  "
            f"D(bcc, chi_3 n^i)^2 = {pretentious_dist_sq(bcc, ModulatedCharacter(chi3, 1.0), X):.4f}  "
            f"sum 1/p - log log X = {mertens_sum(X) - math.log(math.log(X)):.4f}"
        )

    print()
    for X in (math.exp(8), math.exp(10), math.exp(12)):
        bare = singular_series(1, X, tail=None).real
        full = singular_series(1, X).real
        print(f"log X = {math.log(X):.0f}: truncated product {bare:.3f}, with zeta tail {full:.3f}, log X + gamma {math.log(X) + GAMMA:.3f}")

    fz = pretentious_factorize(bcc, chi3, 0.0, upto=100)
    print()
    print("bcc = chi~ * h with h(p) on p <= 30:", {p: fz.h.at_prime(p).real for p in (2, 3, 5, 7, 11, 13, 29)})


if __name__ == "__main__":
    main()

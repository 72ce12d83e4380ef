"""A +-1 sequence whose sums along every single HAP stay bounded."""

import math

import numpy as np

from hapdisc import factorial_alternating


def main():
    N = math.factorial(7)
    f = factorial_alternating(N).signs()
    print("first 18 terms:", " ".join(f"{int(x):+d}" for x in f[:18]))
    print(f"{'d':>3} {'max |sum_j<=n f(jd)|':>22}")
    for d in range(1, 13):
        sums = np.cumsum(f[d - 1 :: d])
        print(f"{d:>3} {int(np.abs(sums).max()):>22}")


if __name__ == "__main__":
    main()

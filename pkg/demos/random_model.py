"""Random signs on the powers of 3 in the BCC construction.

The second moment of the partial sum equals the number of base-3 digits
equal to 1, and some n below 3^(k+1) always reaches at least (k+1)/2.
"""

import numpy as np

from hapdisc import adversarial_bcc, count_digit, exact_second_moment, mc_second_moment


def main():
    print(f"{'n':>8} {'digits=1':>9} {'exact':>7} {'MC mean':>9} {'3*SEM':>7}")
    for i, n in enumerate((13, 121, 1000, 3**9 - 1, 200_000)):
        est = mc_second_moment(n, 10**4, seed=np.random.SeedSequence(1, spawn_key=(i,)))
        print(f"{n:>8} {count_digit(n, 3, 1):>9} {exact_second_moment(n):>7.0f} {est.mean:>9.3f} {est.tolerance:>7.3f}")

    rng = np.random.default_rng(2)
    k = 8
    print()
    print(f"adversarial n for k={k}:")
    for _ in range(5):
        signs = (1,) + tuple(int(e) for e in rng.choice((-1, 1), k))
        n, value = adversarial_bcc(signs)
        print(f"  signs={''.join('+' if e > 0 else '-' for e in signs)}  n={n:>6}  |sum|={value}")


if __name__ == "__main__":
    main()

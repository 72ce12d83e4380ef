"""How the discrepancy of a few multiplicative sequences grows with N.

Characters stay bounded, the BCC function grows like log_3 N, and flipping
its value at 3 slows it down.  The vector-valued version grows like
sqrt(log N).
"""

import math

from hapdisc import bcc_function, hap_discrepancy_cm, materialize, quadratic_character, hap_discrepancy
from hapdisc.discrepancy import cesaro_sums, prefix_sums, vector_bcc_norms


def main():
    chi5 = quadratic_character(5)
    bcc = bcc_function()
    variant = bcc_function(3, -1)
    print(f"{'N':>8} {'chi_5':>6} {'bcc':>5} {'variant':>8} {'vector':>8} {'sqrt(log3 N + 1)':>17}")
    norms = vector_bcc_norms(3**10)
    for k in range(2, 11):
        N = 3**k
        row = (
            hap_discrepancy(materialize(chi5, N)).sup,
            hap_discrepancy_cm(bcc, N).sup,
            hap_discrepancy_cm(variant, N).sup,
            norms[1 : N + 1].max(),
        )
        print(f"{N:>8} {row[0]:>6.0f} {row[1]:>5.0f} {row[2]:>8.0f} {row[3]:>8.4f} {math.sqrt(k + 1):>17.4f}")

    # smoothing the partial sums of the mod-5 analogue
    w = bcc_function(5).materialize(5**7)
    print()
    print("mod-5 BCC up to 5^7:")
    print(f"  max |partial sum|        = {abs(prefix_sums(w)).max():.0f}")
    print(f"  max |Cesaro-smoothed sum| = {abs(cesaro_sums(w)).max():.3f}")


if __name__ == "__main__":
    main()

"""Turning a distance guarantee into operational security numbers.

All levels live in the log10 domain so nothing underflows even at
d = 10^-301.  The chain below walks one claim end to end: an averaged
guarantee becomes an individual one, accumulates over a day of key
generation, and is converted into "how many near-uniform bits is this
really" -- then the gap to a stated target is measured in orders of
magnitude.
"""

from fractions import Fraction

from keysec import (
    LogBudget,
    accumulated_failure,
    guarantee_gap,
    individual_level,
    markov_tail_bound,
    near_uniform_bits,
    required_d_for_near_uniform,
)


def main() -> None:
    # An average failure 10^-9 only bounds the chance of a bad round via
    # Markov: Pr[failure probability >= 10^-4] <= 10^-5.
    mean, threshold = 1e-9, 1e-4
    print(f"average failure {mean:g}:")
    print(f"  Pr[round failure >= {threshold:g}] <= {markov_tail_bound(mean, threshold):g}")
    print()

    # Average-to-individual conversion costs a root: with exponent 1/3 an
    # averaged 10^-9 only promises 10^-3 per individual key.
    avg = LogBudget(log10_d=-9, markov_exponent=Fraction(1, 3))
    print(f"averaged level 10^-9, cube-root conversion:")
    print(f"  individual level = 10^{individual_level(avg)}")
    print()

    # A day of keys at 1000 rounds/second under a union bound.
    acc = accumulated_failure(-20, rounds_per_second=1000, seconds=86400)
    print(f"level 10^-20 per round, 1000 rounds/s for a day"
          f" ({acc.rounds:.3g} rounds):")
    print(f"  accumulated level = 10^{acc.log10_total:.2f}")
    print()

    # How many honestly near-uniform bits a level buys.
    print("near-uniform key length bought by a level (individual exponent 1/3):")
    for log10_d in (-9, -20, -60, -301):
        bits = near_uniform_bits(log10_d, exponent=Fraction(1, 3))
        print(f"  d = 10^{log10_d:>4} -> {bits:>3} bits")
    print("  (10^-301 stays finite here: everything is log-domain arithmetic)")
    print()

    # And the reverse: a 1000-bit claim demands an astronomically small d.
    n = 1000
    print(f"a {n}-bit near-uniform claim demands d ~ 10^{required_d_for_near_uniform(n):.1f}")
    print()

    # Gap: claimed 10^-9 average vs a 10^-15 individual target at exponent 1/3.
    gap = guarantee_gap(-9, -15, Fraction(1, 3))
    print(f"claimed 10^-9 (averaged) against a 10^-15 individual target:")
    print(f"  short by {gap} orders of magnitude -- the averaged claim")
    print(f"  would need to be 10^-45 before the cube root lands on target.")


if __name__ == "__main__":
    main()

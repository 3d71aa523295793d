"""How bad can a key be when only its distance from uniform is known?

Three constructions answer that from different angles:

1. the single-peak distribution that maximises guessing probability at a
   fixed statistical distance eps,
2. a family whose leaked Shannon information vanishes exponentially
   while the guessing probability stays enormous, and
3. the two-sided mixture test: exactly the distributions within entry-wise
   bounds admit a "(1-lam) uniform + lam arbitrary" decomposition.
"""

from fractions import Fraction

from keysec import (
    KeyDistribution,
    check_mixture_decomposition,
    construct_low_info_high_guess,
    construct_spike,
    entropy_stats,
    statistical_distance,
)


def main() -> None:
    # 1. The worst case is a spike: all the allowed deviation on one value.
    n, eps = 10, Fraction(1, 100)
    spike = construct_spike(n, eps)
    print(f"worst {n}-bit key at statistical distance {eps} from uniform:")
    print(f"  P1 = {spike.p1} = 1/2^{n} + eps    (uniform: {Fraction(1, 2**n)})")
    print(f"  distance check: {spike.distance} == {eps}")
    print(f"  guessing improved by a factor {float(spike.p1 * 2**n):.1f}")
    print()

    # 2. Shannon leakage can be driven to nothing while guessing stays easy.
    print("vanishing-information family (half the min-entropy missing):")
    print(f"  {'n':>4} {'P1':>12} {'leaked bits':>14} {'bound n/2^(n/2)':>17}")
    for bits in (8, 12, 16, 20, 24):
        fam = construct_low_info_high_guess(bits, 0.5)
        print(
            f"  {bits:>4} {float(fam.p1):>12.3e} {fam.info_bits:>14.3e}"
            f" {fam.info_bound_bits:>17.3e}"
        )
    print("  leaked information decays exponentially; P1 = 2^(-n/2) stays")
    print("  astronomically above the uniform 2^(-n).")
    print()

    # 3. Mixture test: P = (1-lam) U + lam (something) works iff every entry
    #    lies in [(1-lam)/N, lam + (1-lam)/N].
    n = 2
    p = KeyDistribution(n, [Fraction(5, 16), Fraction(5, 16), Fraction(3, 16), Fraction(3, 16)])
    print(f"mixture test on P = {[str(x) for x in p.probs]}:")
    for lam in (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2)):
        dec = check_mixture_decomposition(p, lam)
        if dec is None:
            print(f"  lam = {lam}: no decomposition (an entry leaves the band)")
        else:
            res = [str(x) for x in dec.residual.probs]
            print(f"  lam = {lam}: P = {1 - lam} U + {lam} {res}")
    delta = statistical_distance(p, KeyDistribution.uniform(n, mode="rational"))
    print(f"  (distance from uniform is {delta}; the smallest workable lam")
    print(f"   is eps N/(N-1) = {delta * 4 / 3})")


if __name__ == "__main__":
    main()

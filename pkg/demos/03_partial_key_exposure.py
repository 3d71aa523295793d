"""What knowing part of a key does to the rest of it.

A key is split into a revealed low part K1 and a secret high part K2.
Averaged over what is revealed, Eve's chance of then guessing K2 is at
most uniform-baseline + distance -- but for *one particular* revealed
value the conditional distribution can be much worse than the average
suggests, and a breach witness exhibits exactly that.
"""

from fractions import Fraction

from keysec import (
    KeyDistribution,
    KeySplit,
    average_conditional_guess,
    conditional_breach_witness,
    construct_spike,
    eve_bit_agreement,
    statistical_distance,
)


def main() -> None:
    # 8-bit key, distance 1/50 from uniform, split 4 | 4.
    n, eps = 8, Fraction(1, 50)
    key = construct_spike(n, eps).distribution
    split = KeySplit(n1=4, n2=4)

    res = average_conditional_guess(key, split)
    print(f"{n}-bit spike key at distance {eps}, low 4 bits revealed:")
    print(f"  average P1 of the hidden half : {res.avg_p1}")
    print(f"  bound 2^-4 + eps              : {res.bound}")
    print(f"  bound holds                   : {res.holds}")
    print()

    # The averaged guarantee is honest -- but averages hide bad slices.
    witness = conditional_breach_witness(n, eps, split)
    dist = witness.distribution
    uni = KeyDistribution.uniform(n, mode="rational")
    print("breach witness at the same distance budget:")
    print(f"  overall distance from uniform  : {statistical_distance(dist, uni)}")
    print(f"  after seeing K1 = {witness.k1_value}, Eve guesses K2 = {witness.subset_value}")
    print(f"  with conditional probability   : {witness.worst_conditional_p}")
    print("  the *average* bound above says nothing about this one slice;")
    print("  conditioning on a rare revealed value concentrates all the bias.")
    print()

    # Bitwise agreement: even guessing the single most likely key value
    # gets Eve many matching bits in expectation.
    for label, p in (
        ("uniform key", KeyDistribution.uniform(4, mode="rational")),
        ("spike key (eps = 1/4)", construct_spike(4, Fraction(1, 4)).distribution),
        ("point mass", KeyDistribution.point_mass(4, at=11, mode="rational")),
    ):
        agree = eve_bit_agreement(p)
        print(f"  expected fraction of bits matched, {label:22s}: {agree}")
    print("  (1/2 is the coin-flip floor: guessing the top value of a")
    print("   uniform key still matches half the bits on average)")


if __name__ == "__main__":
    main()

"""Why mutual information alone is a misleading key-quality score.

Builds a tiny probe model in which the eavesdropper's mutual information
about the key is small, yet her chance of guessing the whole key is far
above the uniform baseline.  The distance-based measures flag the
problem; the information-based one does not.
"""

from fractions import Fraction

from keysec import (
    ClassicalProbeModel,
    KeyDistribution,
    d_criterion,
    entropy_stats,
    mutual_information,
    statistical_distance,
)


def main() -> None:
    n = 8
    N = 2**n
    uniform = KeyDistribution.uniform(n, mode="rational")

    # Key with one over-weighted value: eps above uniform on value 0,
    # shortfall spread evenly over the rest.
    eps = Fraction(1, 16)
    probs = [Fraction(1, N) + eps] + [Fraction(1, N) - eps / (N - 1)] * (N - 1)
    key = KeyDistribution(n, probs)

    stats = entropy_stats(key)
    print(f"{n}-bit key, one value boosted by eps = {eps}")
    print(f"  guessing probability P1     : {stats.p1}   (uniform would be {Fraction(1, N)})")
    print(f"  min-entropy                 : {stats.min_entropy_bits:.4f} bits of {n}")
    print(f"  Shannon entropy             : {stats.shannon_bits:.4f} bits of {n}")
    print(f"  statistical distance from U : {statistical_distance(key, uniform)}")
    print()

    # Probe model: Eve's outcome is y = 0 whenever the key is the boosted
    # value, else y = 1.  She learns little *on average* (one near-constant
    # bit), but conditioned on y = 0 she knows the key exactly.
    conditional = [[1, 0]] + [[0, 1]] * (N - 1)
    model = ClassicalProbeModel(prior=key, conditional=conditional)

    info = mutual_information(model)
    d = d_criterion(model)
    print("probe that reveals only whether the key is the boosted value:")
    print(f"  mutual information I(K;Y) : {info:.4f} bits  <- looks harmless")
    print(f"  distance criterion d      : {d}  <- does not")
    print()
    print("after seeing y = 0 Eve names the key with certainty; the")
    print("averaged information score hides that single catastrophic slice,")
    print("the joint-vs-product distance does not.")


if __name__ == "__main__":
    main()

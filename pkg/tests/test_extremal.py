"""Extremal distributions: spikes, low-information families, mixtures,
and conditional-deviation witnesses.

The conditional-deviation optimum is cross-checked against a linear
programming oracle (Charnes-Cooper reduction of the fractional
objective, scipy HiGHS) in `_oracles.lp_max_conditional_deviation`.
"""

import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import _oracles as oracles
from keysec import (
    EventSpec,
    InfeasibleError,
    KeyDistribution,
    ValidationError,
    check_event_bound,
    check_mixture_decomposition,
    construct_low_info_high_guess,
    construct_spike,
    entropy_stats,
    max_conditional_deviation,
    statistical_distance,
)


# ---------------------------------------------------------------- events


def test_event_spec_parsing():
    ev = EventSpec.from_text("5, 0,1")
    assert ev.sorted_members() == [0, 1, 5]
    assert 5 in ev and 2 not in ev
    assert len(ev) == 3
    assert EventSpec((0,)).issubset(ev)
    with pytest.raises(ValidationError):
        EventSpec.from_text("")
    with pytest.raises(ValidationError):
        EventSpec.from_text("1,x")
    with pytest.raises(ValidationError):
        EventSpec((-1,))
    with pytest.raises(ValidationError):
        EventSpec((9,)).validate_for(3)  # 9 outside a 3-bit key space


# ---------------------------------------------------------------- spikes


def test_spike_documented_witness():
    res = construct_spike(2, F(1, 4))
    assert res.distribution.probs == (F(1, 2), F(1, 6), F(1, 6), F(1, 6))
    assert res.p1 == F(1, 2)
    assert res.distance == F(1, 4)


def test_spike_exactness_small_grid():
    for n in (1, 2, 3, 5):
        size = 1 << n
        for k in range(1, 11):
            eps = F(k, 11) * F(size - 1, size)
            res = construct_spike(n, eps)
            u = KeyDistribution.uniform(n, mode="rational")
            assert statistical_distance(res.distribution, u) == eps
            assert res.p1 == F(1, size) + eps
            assert res.p1 == max(res.distribution.probs)


def test_spike_peak_placement():
    res = construct_spike(2, F(1, 8), at=3)
    assert res.distribution.probs[3] == F(1, 4) + F(1, 8)
    assert max(res.distribution.probs) == res.distribution.probs[3]


def test_spike_infeasible_and_degenerate():
    with pytest.raises(InfeasibleError):
        construct_spike(2, F(7, 8))  # above (N-1)/N
    with pytest.raises(ValidationError):
        construct_spike(2, F(-1, 8))
    zero = construct_spike(3, F(0))
    assert zero.distribution == KeyDistribution.uniform(3, mode="rational")
    # boundary: all mass on the peak
    res = construct_spike(2, F(3, 4))
    assert res.p1 == 1 and res.distance == F(3, 4)


def test_spike_float_backend():
    res = construct_spike(4, 0.05)
    assert res.distance == pytest.approx(0.05, abs=1e-15)
    assert res.p1 == pytest.approx(1 / 16 + 0.05, abs=1e-15)
    u = KeyDistribution.uniform(4)
    assert statistical_distance(res.distribution, u) == pytest.approx(0.05, abs=1e-12)


# ------------------------------------------------------------- low info


def test_low_info_family_frozen():
    fam = construct_low_info_high_guess(8, 0.5)
    # exact-entropy oracle value (mpmath, 60 digits): 0.16800358632780680...
    assert fam.p1 == pytest.approx(2.0**-4, abs=1e-15)
    assert fam.info_bits == pytest.approx(0.16800358632780732, abs=1e-12)
    assert fam.info_bound_bits == pytest.approx(0.5, abs=1e-15)
    assert fam.info_bits <= fam.info_bound_bits
    stats = entropy_stats(fam.distribution)
    assert stats.p1 == pytest.approx(fam.p1, abs=1e-15)
    assert 8 - stats.shannon_bits == pytest.approx(fam.info_bits, abs=1e-12)


@pytest.mark.parametrize("n", [4, 8, 10, 12])
@pytest.mark.parametrize("lam", [0.25, 0.5, 0.75, 1.0])
def test_low_info_family_bound(n, lam):
    if lam * n < 1:
        with pytest.raises(InfeasibleError):
            construct_low_info_high_guess(n, lam)
        return
    fam = construct_low_info_high_guess(n, lam)
    assert fam.p1 == pytest.approx(2.0 ** (-lam * n), abs=1e-15)
    assert fam.info_bits <= n * 2.0 ** (-lam * n) + 1e-9
    # distance from uniform stays small too: the family is near-uniform in tv
    u = KeyDistribution.uniform(n)
    assert statistical_distance(fam.distribution, u) <= fam.p1


def test_low_info_rejects_bad_lambda():
    with pytest.raises(ValidationError):
        construct_low_info_high_guess(8, 0.0)
    with pytest.raises(ValidationError):
        construct_low_info_high_guess(8, 1.5)


# ------------------------------------------------------------- mixtures


def test_mixture_documented_witness():
    p = KeyDistribution(2, [0.4, 0.2, 0.2, 0.2])
    res = check_mixture_decomposition(p, 0.2)
    assert res is not None
    assert res.uniform_weight == pytest.approx(0.8, abs=1e-12)
    assert [float(x) for x in res.residual.probs] == pytest.approx([1, 0, 0, 0], abs=1e-12)


def test_mixture_exact_reconstruction():
    p = KeyDistribution(2, [F(2, 5), F(1, 5), F(1, 5), F(1, 5)])
    res = check_mixture_decomposition(p, F(1, 5))
    assert res is not None
    lam = F(1, 5)
    for i in range(4):
        assert (1 - lam) * F(1, 4) + lam * res.residual.probs[i] == p.probs[i]


def test_mixture_biconditional_exhaustive_small():
    # all distributions with denominator 8 on a 1-bit key, lambda on a grid
    for a in range(9):
        p = KeyDistribution(1, [F(a, 8), F(8 - a, 8)])
        for lnum in range(9):
            lam = F(lnum, 8)
            feasible = all(
                (1 - lam) * F(1, 2) <= pi <= lam + (1 - lam) * F(1, 2) for pi in p.probs
            )
            res = check_mixture_decomposition(p, lam)
            assert (res is not None) == feasible, (a, lam)
            if res is not None:
                for i in range(2):
                    assert (1 - lam) * F(1, 2) + lam * res.residual.probs[i] == p.probs[i]


def test_mixture_edge_lambdas():
    u = KeyDistribution.uniform(2, mode="rational")
    assert check_mixture_decomposition(u, F(0)) is not None
    spiky = construct_spike(2, F(1, 4)).distribution
    assert check_mixture_decomposition(spiky, F(0)) is None
    # lambda = 1 always decomposes with residual = P itself
    res = check_mixture_decomposition(spiky, F(1))
    assert res is not None and res.residual == spiky
    with pytest.raises(ValidationError):
        check_mixture_decomposition(u, F(3, 2))


def test_mixture_threshold_lambda_equals_distance_scale():
    # spike at distance eps decomposes iff lam >= eps * N/(N-1)
    eps = F(1, 8)
    p = construct_spike(2, eps).distribution
    threshold = eps * F(4, 3)
    assert check_mixture_decomposition(p, threshold) is not None
    assert check_mixture_decomposition(p, threshold - F(1, 1000)) is None


# ------------------------------------------------- conditional deviation


def test_conditional_deviation_documented_witness():
    res = max_conditional_deviation(2, 0.1, EventSpec((0, 1)), EventSpec((0,)))
    assert res.deviation == pytest.approx(0.2, abs=1e-15)
    assert [float(x) for x in res.distribution.probs] == pytest.approx(
        [0.35, 0.15, 0.25, 0.25], abs=1e-15
    )


def test_conditional_deviation_exact_mode():
    res = max_conditional_deviation(2, F(1, 10), EventSpec((0, 1)), EventSpec((0,)))
    assert res.deviation == F(1, 5)
    assert res.distribution.probs == (F(7, 20), F(3, 20), F(1, 4), F(1, 4))


@pytest.mark.parametrize(
    "n,eps,event,sub",
    [
        (2, F(3, 10), (0, 1, 2), (0, 1)),
        (3, F(3, 20), (0, 3, 5), (3,)),
        (3, F(3, 5), (1, 2), (2,)),
        (3, F(1, 2), (0, 1, 2, 3, 4, 5, 6), (6,)),
    ],
)
def test_conditional_deviation_matches_lp_oracle(n, eps, event, sub):
    res = max_conditional_deviation(n, eps, EventSpec(event), EventSpec(sub))
    lp = oracles.lp_max_conditional_deviation(n, float(eps), event, sub)
    assert float(res.deviation) == pytest.approx(lp, abs=1e-9)
    # the witness is a genuine distribution within budget
    u = KeyDistribution.uniform(n, mode="rational")
    assert statistical_distance(res.distribution, u) <= eps
    # and it actually achieves the claimed deviation
    pa = res.distribution.prob_of(event)
    pb = res.distribution.prob_of(sub)
    base = F(len(sub), len(event))
    assert abs(pb / pa - base) == res.deviation


def test_conditional_deviation_budget_cap():
    for eps in (F(1, 100), F(1, 10), F(1, 3)):
        res = max_conditional_deviation(3, eps, EventSpec((0, 1)), EventSpec((0,)))
        assert res.deviation <= eps / F(2, 8)  # eps / U(A)


def test_conditional_deviation_validation():
    with pytest.raises(ValidationError):
        max_conditional_deviation(2, F(1, 10), EventSpec((0,)), EventSpec((0, 1)))
    with pytest.raises(ValidationError):
        max_conditional_deviation(2, F(1, 10), EventSpec((0, 9)), EventSpec((0,)))
    # B = A means no deviation is possible in the up direction and none down
    res = max_conditional_deviation(2, F(1, 10), EventSpec((0, 1)), EventSpec((0, 1)))
    assert res.deviation == 0


# ------------------------------------------------------------ event bound


def test_event_bound_frozen():
    p = KeyDistribution(2, [F(1, 2), F(1, 8), F(1, 8), F(1, 4)])
    q = KeyDistribution.uniform(2, mode="rational")
    rep = check_event_bound(p, q, EventSpec((0,)))
    assert rep.gap == F(1, 4) and rep.distance == F(1, 4) and rep.holds
    rep2 = check_event_bound(p, q, EventSpec((1, 2)))
    assert rep2.gap == F(1, 4) and rep2.holds


@given(st.lists(st.integers(0, 50), min_size=8, max_size=8), st.integers(1, 254))
def test_event_bound_holds_always(raw, mask):
    total = sum(raw) or 1
    probs = [F(x, total) for x in raw]
    probs[0] += 1 - sum(probs)
    if probs[0] < 0:
        return
    p = KeyDistribution(3, probs)
    q = KeyDistribution.uniform(3, mode="rational")
    members = tuple(i for i in range(8) if (mask >> i) & 1)
    rep = check_event_bound(p, q, EventSpec(members))
    assert rep.holds and rep.gap <= rep.distance

"""Authentication with imperfect keys: hash family, attacks, degradation.

Field arithmetic and forgery odds are checked against an independent
polynomial oracle (`_oracles`: LSB-first coefficient lists, term-by-term
hashing, exhaustive bucket counting).
"""

import random
from fractions import Fraction as F

import pytest

import _oracles as oracles
from keysec import (
    HashFamilySpec,
    InfeasibleError,
    KeyDistribution,
    MacKeyModel,
    ResourceLimitError,
    ValidationError,
    asu_epsilon,
    attack_success,
    construct_spike,
    degraded_epsilon,
    forgeable_key_distribution,
    statistical_distance,
)
from keysec.mac import DEFAULT_MODULI

NONUNIFORM = [F(5, 16), F(1, 16), F(3, 16), F(1, 16), F(2, 16), F(1, 16), F(2, 16), F(1, 16)]


def test_spec_validation():
    spec = HashFamilySpec(field_bits=3, message_blocks=2)
    assert spec.modulus == DEFAULT_MODULI[3] == 0b1011
    assert spec.tag_space == 8 and spec.message_space == 64
    with pytest.raises(ResourceLimitError):
        HashFamilySpec(field_bits=11, message_blocks=2)
    with pytest.raises(ValidationError):
        HashFamilySpec(field_bits=3, message_blocks=0)
    with pytest.raises(ValidationError):
        HashFamilySpec(field_bits=3, message_blocks=2, modulus=0b101)  # wrong degree
    with pytest.raises(ValidationError):
        HashFamilySpec(field_bits=3, message_blocks=2, modulus=0b1111)  # x^3+x^2+x+1 reducible


def test_hash_values_match_polynomial_oracle():
    rng = random.Random(99)
    for b in (2, 3, 5, 8):
        spec = HashFamilySpec(field_bits=b, message_blocks=2)
        for _ in range(40):
            key = rng.randrange(1 << b)
            msg = rng.randrange(1 << (2 * b))
            assert spec.hash_value(key, msg) == oracles.hash_oracle(
                key, msg, b, 2, spec.modulus
            )


def test_hash_is_linear_in_the_message():
    spec = HashFamilySpec(field_bits=4, message_blocks=3)
    rng = random.Random(7)
    for _ in range(30):
        key = rng.randrange(16)
        m1 = rng.randrange(1 << 12)
        m2 = rng.randrange(1 << 12)
        # blockwise XOR of messages = XOR of hashes (GF(2) linearity)
        assert spec.hash_value(key, m1 ^ m2) == spec.hash_value(key, m1) ^ spec.hash_value(key, m2)
    assert spec.hash_value(rng.randrange(16), 0) == 0


def test_asu_epsilon_frozen():
    assert asu_epsilon(HashFamilySpec(field_bits=3, message_blocks=2)) == F(1, 4)
    assert asu_epsilon(HashFamilySpec(field_bits=4, message_blocks=3)) == F(3, 16)
    assert asu_epsilon(HashFamilySpec(field_bits=6, message_blocks=2)) == F(1, 32)


@pytest.mark.parametrize("b,m", [(3, 2), (4, 2), (4, 3), (6, 2)])
def test_uniform_key_attacks_within_epsilon(b, m):
    spec = HashFamilySpec(field_bits=b, message_blocks=m)
    keys = MacKeyModel(hash_key_dist=KeyDistribution.uniform(b, mode="rational"))
    eps = asu_epsilon(spec)
    imp = attack_success(spec, keys, "impersonation")
    sub = attack_success(spec, keys, "substitution")
    assert imp == F(1, 1 << b)  # blind tag guess
    assert sub == eps  # worst message difference meets the bound exactly
    assert imp <= eps and sub <= eps


def test_nonuniform_substitution_frozen():
    spec = HashFamilySpec(field_bits=3, message_blocks=2)
    keys = MacKeyModel(hash_key_dist=KeyDistribution(3, NONUNIFORM))
    got = attack_success(spec, keys, "substitution")
    assert got == F(1, 2)
    assert got == oracles.substitution_success_oracle(3, 2, spec.modulus, NONUNIFORM)


def test_ideal_pad_equals_explicit_uniform_mask():
    spec = HashFamilySpec(field_bits=3, message_blocks=2)
    pd = KeyDistribution(3, NONUNIFORM)
    uniform_mask = KeyDistribution.uniform(3, mode="rational")
    for attack in ("impersonation", "substitution"):
        ideal = attack_success(spec, MacKeyModel(hash_key_dist=pd), attack)
        masked = attack_success(
            spec, MacKeyModel(hash_key_dist=pd, tag_key_dist=uniform_mask), attack
        )
        assert ideal == masked, attack


def test_biased_mask_leaks():
    # a biased pad lets the transcript narrow down the hash key
    spec = HashFamilySpec(field_bits=3, message_blocks=2)
    pd = KeyDistribution(3, NONUNIFORM)
    biased = construct_spike(3, F(1, 2)).distribution
    ideal = attack_success(spec, MacKeyModel(hash_key_dist=pd), "substitution")
    leaky = attack_success(
        spec, MacKeyModel(hash_key_dist=pd, tag_key_dist=biased), "substitution"
    )
    assert leaky >= ideal


def test_tag_averaged_at_most_worst_case():
    spec = HashFamilySpec(field_bits=3, message_blocks=2)
    keys = MacKeyModel(
        hash_key_dist=KeyDistribution(3, NONUNIFORM),
        tag_key_dist=KeyDistribution.uniform(3, mode="rational"),
    )
    worst = attack_success(spec, keys, "substitution")
    avg = attack_success(spec, keys, "substitution", tag_averaged=True)
    assert avg <= worst


def test_multi_use_transcript():
    spec = HashFamilySpec(field_bits=2, message_blocks=2)
    keys1 = MacKeyModel(
        hash_key_dist=KeyDistribution(2, [F(1, 2), F(1, 4), F(1, 8), F(1, 8)]),
        tag_key_dist=KeyDistribution.uniform(2, mode="rational"),
        uses=1,
    )
    keys2 = MacKeyModel(
        hash_key_dist=KeyDistribution(2, [F(1, 2), F(1, 4), F(1, 8), F(1, 8)]),
        tag_key_dist=KeyDistribution.uniform(2, mode="rational"),
        uses=2,
    )
    s1 = attack_success(spec, keys1, "substitution")
    s2 = attack_success(spec, keys2, "substitution")
    # one fresh uniform pad per use keeps the transcript unrevealing
    assert s2 == s1


def test_attack_validation_and_caps():
    spec = HashFamilySpec(field_bits=3, message_blocks=2)
    keys = MacKeyModel(hash_key_dist=KeyDistribution.uniform(3, mode="rational"))
    with pytest.raises(ValidationError):
        attack_success(spec, keys, "replay")
    with pytest.raises(ValidationError):
        attack_success(
            spec, MacKeyModel(hash_key_dist=KeyDistribution.uniform(4, mode="rational")),
            "substitution",
        )
    with pytest.raises(ResourceLimitError):
        attack_success(
            HashFamilySpec(field_bits=6, message_blocks=3),
            MacKeyModel(hash_key_dist=KeyDistribution.uniform(6, mode="rational")),
            "substitution",
        )
    with pytest.raises(ResourceLimitError):
        attack_success(
            HashFamilySpec(field_bits=5, message_blocks=2),
            MacKeyModel(
                hash_key_dist=KeyDistribution.uniform(5, mode="rational"),
                tag_key_dist=KeyDistribution.uniform(5, mode="rational"),
                uses=3,
            ),
            "substitution",
        )


def test_degraded_epsilon_frozen():
    res = degraded_epsilon(F(1, 4), F(1, 10), F(1, 20), 3)
    assert res.hash_key_level == F(7, 20)
    assert res.tag_key_level == F(2, 5)
    clipped = degraded_epsilon(F(3, 4), F(1, 2), F(1, 2), 4)
    assert clipped.hash_key_level == 1 and clipped.tag_key_level == 1
    f = degraded_epsilon(0.25, 0.1, 0.05, 3)
    assert f.hash_key_level == pytest.approx(0.35) and f.tag_key_level == pytest.approx(0.4)
    with pytest.raises(ValidationError):
        degraded_epsilon(F(1, 4), F(1, 10), F(1, 20), 0)
    with pytest.raises(ValidationError):
        degraded_epsilon(F(5, 4), F(1, 10), F(1, 20), 1)


@pytest.mark.parametrize("b", [3, 4, 5])
def test_forgery_witness_breaks_the_scheme(b):
    spec = HashFamilySpec(field_bits=b, message_blocks=2)
    wit = forgeable_key_distribution(spec)
    assert wit.message_delta == (1 << b) | 1  # lowest colliding difference
    assert wit.tag_delta == 0
    size = 1 << b
    expected_distance = F(size - 2, size)
    assert wit.distance == expected_distance
    u = KeyDistribution.uniform(b, mode="rational")
    assert statistical_distance(wit.distribution, u) == expected_distance
    success = attack_success(
        spec, MacKeyModel(hash_key_dist=wit.distribution), "substitution"
    )
    assert success == 1


def test_forgery_witness_needs_two_blocks():
    with pytest.raises(InfeasibleError):
        forgeable_key_distribution(HashFamilySpec(field_bits=3, message_blocks=1))

"""Information-theoretic authentication under imperfect keys.

The concrete family is polynomial evaluation over ``GF(2^b)``: a message
of ``m_blk`` field-element blocks ``c_0..c_{m_blk-1}`` is hashed with key
``alpha`` to ``sum_j c_j * alpha^(j+1)``, and the tag is the hash XOR a
(possibly imperfect) one-time mask.  With a uniform hash key the family
is almost-strongly-universal with ``eps = m_blk / 2^b``; this module
measures what survives when the keys are *not* uniform, by exhaustively
enumerating the optimal forgery against the attacker's posterior.

Two attack games are scored.  Impersonation: forge a tag with no observed
traffic.  Substitution: observe valid (message, tag) pairs, then forge on
a different message.  Because the hash is GF-linear in the message, a
substitution forgery ``(M XOR D, t XOR dt)`` succeeds exactly when
``h_alpha(D) = dt`` -- the mask cancels -- so the search space is the
(message difference, tag difference) grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Optional

from .dist import KeyDistribution, statistical_distance
from .numerics import (
    InfeasibleError,
    Number,
    ResourceLimitError,
    ValidationError,
    is_rational,
)

__all__ = [
    "HashFamilySpec",
    "MacKeyModel",
    "DegradedLevels",
    "ForgeryWitness",
    "DEFAULT_MODULI",
    "asu_epsilon",
    "attack_success",
    "degraded_epsilon",
    "forgeable_key_distribution",
]

#: irreducible moduli (bit patterns, x^b term included) for GF(2^b), b = 1..10
DEFAULT_MODULI = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x211,
    10: 0x409,
}

MAX_FIELD_BITS = 10
_MAX_MESSAGE_SPACE = 1 << 16
_WORK_CAP = 1 << 22
_MAX_TAG_TUPLES = 1 << 12


def _gf_mul(a: int, b: int, modulus: int, width: int) -> int:
    """Carry-less multiply in GF(2^width) reduced by the given modulus."""
    acc = 0
    top = 1 << width
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return acc


def _poly_mod(a: int, m: int) -> int:
    shift = a.bit_length() - m.bit_length()
    while shift >= 0:
        a ^= m << shift
        shift = a.bit_length() - m.bit_length()
    return a


def _is_irreducible(poly: int) -> bool:
    degree = poly.bit_length() - 1
    if degree < 1:
        return False
    # trial division by every polynomial of degree 1 .. degree/2
    for div in range(2, 1 << (degree // 2 + 1)):
        if _poly_mod(poly, div) == 0:
            return False
    return True


@lru_cache(maxsize=32)
def _mul_table(modulus: int, width: int):
    if width > 8:
        return None
    size = 1 << width
    return [
        [_gf_mul(a, b, modulus, width) for b in range(size)] for a in range(size)
    ]


@dataclass(frozen=True)
class HashFamilySpec:
    """Polynomial-evaluation hash over ``GF(2^field_bits)``.

    ``modulus`` is the field's irreducible polynomial as a bit pattern
    (degree ``field_bits``, x^field_bits term included); 0 selects the
    built-in default.  Tags and key values are ``field_bits`` wide;
    messages are ``message_blocks`` field elements packed little-endian
    into one integer.
    """

    field_bits: int
    message_blocks: int
    modulus: int = 0

    def __post_init__(self):
        if not isinstance(self.field_bits, int) or self.field_bits < 1:
            raise ValidationError(f"field width must be a positive integer, got {self.field_bits!r}")
        if self.field_bits > MAX_FIELD_BITS:
            raise ResourceLimitError(
                f"field width {self.field_bits} exceeds the exhaustive-enumeration cap {MAX_FIELD_BITS}"
            )
        if not isinstance(self.message_blocks, int) or self.message_blocks < 1:
            raise ValidationError(f"need at least one message block, got {self.message_blocks!r}")
        mod = self.modulus
        if mod == 0:
            mod = DEFAULT_MODULI[self.field_bits]
            object.__setattr__(self, "modulus", mod)
        if mod.bit_length() - 1 != self.field_bits:
            raise ValidationError(
                f"modulus {mod:#x} has degree {mod.bit_length() - 1}, field needs {self.field_bits}"
            )
        if not _is_irreducible(mod):
            raise ValidationError(f"modulus {mod:#x} is reducible; the quotient is not a field")

    @property
    def tag_space(self) -> int:
        return 1 << self.field_bits

    @property
    def message_space(self) -> int:
        return 1 << (self.field_bits * self.message_blocks)

    def blocks(self, message: int) -> tuple:
        if not 0 <= message < self.message_space:
            raise ValidationError(
                f"message {message} outside [0, {self.message_space}) for {self.message_blocks} blocks"
            )
        mask = self.tag_space - 1
        return tuple((message >> (j * self.field_bits)) & mask for j in range(self.message_blocks))

    def hash_value(self, alpha: int, message: int) -> int:
        """Evaluate ``sum_j c_j alpha^(j+1)`` by Horner's rule.

        The trailing multiply gives every term at least one power of the
        key, keeping the map GF-linear in the message with no constant
        part: ``h(M) XOR h(M') = h(M XOR M')``.
        """
        if not 0 <= alpha < self.tag_space:
            raise ValidationError(f"key value {alpha} outside [0, {self.tag_space})")
        blocks = self.blocks(message)
        table = _mul_table(self.modulus, self.field_bits)
        if table is not None:
            row_for = table.__getitem__
            acc = 0
            for c in reversed(blocks):
                acc = row_for(acc)[alpha] ^ c
            return row_for(acc)[alpha]
        acc = 0
        for c in reversed(blocks):
            acc = _gf_mul(acc, alpha, self.modulus, self.field_bits) ^ c
        return _gf_mul(acc, alpha, self.modulus, self.field_bits)


@dataclass(frozen=True)
class MacKeyModel:
    """Key material for the authentication game.

    ``hash_key_dist`` is the law of the evaluation point.  ``tag_key_dist``
    is the law of each tag mask; None means an ideal uniform one-time pad,
    refreshed per tag.  ``uses`` is how many (message, tag) pairs Eve
    observes under one hash key before forging (substitution only).
    """

    hash_key_dist: KeyDistribution
    tag_key_dist: Optional[KeyDistribution] = None
    uses: int = 1

    def __post_init__(self):
        if not isinstance(self.hash_key_dist, KeyDistribution):
            raise ValidationError("hash key model requires a KeyDistribution")
        if self.tag_key_dist is not None and not isinstance(self.tag_key_dist, KeyDistribution):
            raise ValidationError("tag key model must be a KeyDistribution or None")
        if not isinstance(self.uses, int) or self.uses < 1:
            raise ValidationError(f"uses must be a positive integer, got {self.uses!r}")


class DegradedLevels(NamedTuple):
    hash_key_level: Number
    tag_key_level: Number


class ForgeryWitness(NamedTuple):
    distribution: KeyDistribution
    message_delta: int
    tag_delta: int
    distance: Number


def asu_epsilon(spec: HashFamilySpec) -> Fraction:
    """The family's strong-universality level ``m_blk / 2^b``.

    For any two distinct messages and any tag pair, a uniform hash key
    collides with probability at most this (the hash difference is a
    nonzero polynomial in the key with at most ``m_blk`` roots).  Never
    below the tag-space floor ``2^-b``; vacuous if it exceeds 1.
    """
    eps = Fraction(spec.message_blocks, spec.tag_space)
    if eps < Fraction(1, spec.tag_space):
        raise RuntimeError("internal check failed: eps fell below the tag-space floor")
    return eps


def _key_dist_for(spec: HashFamilySpec, dist: KeyDistribution, what: str) -> None:
    if dist.n != spec.field_bits:
        raise ValidationError(
            f"{what} covers {dist.n}-bit values, family keys are {spec.field_bits}-bit"
        )


def _best_forgery(spec: HashFamilySpec, post) -> Number:
    """Best (message difference, tag difference) mass under a key posterior.

    Exhausts all nonzero differences; the return is unnormalized (scales
    with ``sum(post)``).
    """
    best = None
    size = spec.tag_space
    for d in range(1, spec.message_space):
        acc = [post[0] - post[0]] * size  # typed zero
        for alpha in range(size):
            acc[spec.hash_value(alpha, d)] += post[alpha]
        top = max(acc)
        if best is None or top > best:
            best = top
    return best


def attack_success(
    spec: HashFamilySpec,
    keys: MacKeyModel,
    attack: str,
    *,
    tag_averaged: bool = False,
) -> Number:
    """Exact optimal forgery probability for one attack game.

    ``attack`` is ``"impersonation"`` or ``"substitution"``.  The default
    scores the worst case over the observable transcript (message choice
    and tag values); ``tag_averaged=True`` instead averages over the tag
    randomness, which is the quantity the degradation law
    ``eps + eps_h`` speaks about.

    With the ideal mask (``tag_key_dist=None``) observed tags carry no
    information about the hash key -- the posterior equals the prior --
    so impersonation hits any fixed tag with probability exactly ``2^-b``
    and substitution reduces to the exhaustive difference search.  Passing
    an explicit ``KeyDistribution`` (even a uniform one) forces the full
    transcript enumeration, which is capped for size.

    Multi-use substitution (``uses >= 2``) scores a canonical transcript
    of distinct messages ``1..uses``; the single-use game maximizes over
    the observed message.
    """
    if attack not in ("impersonation", "substitution"):
        raise ValidationError(f"unknown attack {attack!r}; expected impersonation or substitution")
    _key_dist_for(spec, keys.hash_key_dist, "hash key distribution")
    if keys.tag_key_dist is not None:
        _key_dist_for(spec, keys.tag_key_dist, "tag key distribution")
    size = spec.tag_space
    msgs = spec.message_space
    if msgs > _MAX_MESSAGE_SPACE:
        raise ResourceLimitError(
            f"message space 2^{spec.field_bits * spec.message_blocks} exceeds the enumeration cap"
        )
    exact = keys.hash_key_dist.mode == "rational" and (
        keys.tag_key_dist is None or keys.tag_key_dist.mode == "rational"
    )
    if exact:
        prior = [Fraction(x) for x in keys.hash_key_dist.probs]
        zero, unit = Fraction(0), Fraction(1, size)
    else:
        prior = [float(x) for x in keys.hash_key_dist.probs]
        zero, unit = 0.0, 1.0 / size

    if keys.tag_key_dist is None:
        # ideal pad: posterior == prior for every transcript
        if attack == "impersonation":
            return sum(prior, zero) * unit
        if msgs * size > _WORK_CAP:
            raise ResourceLimitError(
                f"difference search of {msgs - 1} x {size} exceeds the work cap"
            )
        return _best_forgery(spec, prior)

    mask = [Fraction(x) for x in keys.tag_key_dist.probs] if exact else [
        float(x) for x in keys.tag_key_dist.probs
    ]

    if attack == "impersonation":
        if msgs * size * size > _WORK_CAP:
            raise ResourceLimitError("impersonation enumeration exceeds the work cap")
        best = zero
        for m in range(msgs):
            hashed = [zero] * size
            for alpha in range(size):
                hashed[spec.hash_value(alpha, m)] += prior[alpha]
            for t in range(size):
                hit = sum((hashed[hv] * mask[t ^ hv] for hv in range(size)), zero)
                if hit > best:
                    best = hit
        return best

    uses = keys.uses
    if uses == 1:
        if (msgs * size) * (msgs * size) > _WORK_CAP:
            raise ResourceLimitError("substitution transcript enumeration exceeds the work cap")
        best = zero
        for m in range(msgs):
            hvals = [spec.hash_value(alpha, m) for alpha in range(size)]
            acc_m = zero
            for t in range(size):
                post = [prior[a] * mask[t ^ hvals[a]] for a in range(size)]
                weight = sum(post, zero)
                if weight == 0:
                    continue
                hit = _best_forgery(spec, post)
                if tag_averaged:
                    acc_m += hit
                else:
                    cond = hit / weight
                    if cond > best:
                        best = cond
            if tag_averaged and acc_m > best:
                best = acc_m
        return best

    if uses >= msgs:
        raise ValidationError(
            f"{uses} distinct observed messages do not fit a {msgs}-message space"
        )
    tuples = size**uses
    if tuples > _MAX_TAG_TUPLES or tuples * msgs * size > _WORK_CAP:
        raise ResourceLimitError("multi-use tag-tuple enumeration exceeds the work cap")
    observed = list(range(1, uses + 1))
    hval_rows = [[spec.hash_value(alpha, m) for alpha in range(size)] for m in observed]
    best = zero
    for tags in product(range(size), repeat=uses):
        post = list(prior)
        for row, t in zip(hval_rows, tags):
            post = [post[a] * mask[t ^ row[a]] for a in range(size)]
        weight = sum(post, zero)
        if weight == 0:
            continue
        hit = _best_forgery(spec, post)
        if tag_averaged:
            best += hit
        else:
            cond = hit / weight
            if cond > best:
                best = cond
    return best


def degraded_epsilon(eps: Number, eps_h: Number, eps_t: Number, m: int) -> DegradedLevels:
    """Universality levels after substituting imperfect keys.

    A hash key within ``eps_h`` of uniform degrades the family to level
    ``eps + eps_h``; tag masks within ``eps_t`` of uniform, spent over
    ``m`` tags under one hash key, degrade it to ``eps + m * eps_t``.
    Both are clipped at 1.
    """
    for name, value in (("eps", eps), ("eps_h", eps_h), ("eps_t", eps_t)):
        if value < 0 or value > 1:
            raise ValidationError(f"{name} must lie in [0, 1], got {value!r}")
    if not isinstance(m, int) or m < 1:
        raise ValidationError(f"number of uses must be a positive integer, got {m!r}")

    def _clip(x: Number) -> Number:
        if x >= 1:
            return Fraction(1) if is_rational(x) else 1.0
        return x

    return DegradedLevels(hash_key_level=_clip(eps + eps_h), tag_key_level=_clip(eps + m * eps_t))


def forgeable_key_distribution(spec: HashFamilySpec) -> ForgeryWitness:
    """Two-point hash-key law under which substitution always succeeds.

    Searches message differences in increasing order for two key values
    hashing a difference ``D`` to the same value ``dt``; splitting the
    key mass over that pair makes the forgery ``(M XOR D, t XOR dt)``
    valid with certainty, while the key stays at distance
    ``(2^b - 2) / 2^b < 1`` from uniform.  This is the sharp end of the
    uniformity assumption: the averaged guarantee survives imperfect
    keys, the worst case does not.
    """
    if spec.message_blocks < 2:
        raise InfeasibleError(
            "single-block evaluation is injective in the key for every nonzero "
            "message difference; a colliding key pair needs at least 2 blocks"
        )
    size = spec.tag_space
    for d in range(1, spec.message_space):
        seen: dict = {}
        for alpha in range(size):
            hv = spec.hash_value(alpha, d)
            if hv in seen:
                probs = [Fraction(0)] * size
                probs[seen[hv]] = Fraction(1, 2)
                probs[alpha] = Fraction(1, 2)
                dist = KeyDistribution(spec.field_bits, probs)
                uniform = KeyDistribution.uniform(spec.field_bits, mode="rational")
                return ForgeryWitness(
                    distribution=dist,
                    message_delta=d,
                    tag_delta=hv,
                    distance=statistical_distance(dist, uniform),
                )
            seen[hv] = alpha
    raise InfeasibleError("no colliding key pair exists for this family")

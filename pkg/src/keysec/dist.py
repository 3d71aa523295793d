"""Key distributions and the distance / entropy primitives built on them.

The objects here are the vocabulary for everything else in the package:

* :class:`KeyDistribution` — a probability vector over the ``2**n`` values
  of an ``n``-bit key, indexed by the integer whose bit ``i`` (little
  endian) is key bit ``i``.
* :class:`ClassicalProbeModel` — a prior over keys together with a
  row-stochastic conditional ``p(y | k)``: the classical picture of an
  eavesdropper probing the key through some channel.
* :class:`HermitianState` — a small density matrix, for the quantum analogue
  of statistical distance.

Scalar measures: total-variation (statistical) distance, min-/Shannon
entropy, mutual information, trace distance, and the joint-vs-product
distance ``d`` that scores how much an eavesdropper's outcomes correlate
with a non-uniform key.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .numerics import (
    Number,
    ValidationError,
    VALIDATION_TOL,
    check_probability_vector,
    exact_sum,
    format_number,
    infer_mode,
    is_rational,
    parse_number,
)

__all__ = [
    "KeyDistribution",
    "ClassicalProbeModel",
    "HermitianState",
    "EntropyStats",
    "statistical_distance",
    "entropy_stats",
    "binary_entropy",
    "mutual_information",
    "trace_distance",
    "d_criterion",
]

#: largest Hilbert-space dimension accepted for density matrices
MAX_STATE_DIM = 64


class KeyDistribution:
    """Probability distribution over the values of an ``n``-bit key.

    Parameters
    ----------
    n : int
        Key length in bits, at least 1.
    probs : sequence of numbers
        ``2**n`` probabilities.  All `fractions.Fraction`/`int` entries
        select the exact backend; float entries select double precision.

    Notes
    -----
    Instances are immutable.  Equality compares bit length and entries
    exactly (no tolerance), so two float-mode distributions are equal only
    if built from identical values.
    """

    __slots__ = ("n", "probs", "mode")

    def __init__(self, n: int, probs: Sequence[Number]):
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"key length must be a positive integer, got {n!r}")
        probs = tuple(probs)
        if len(probs) != 1 << n:
            raise ValidationError(
                f"need {1 << n} probabilities for a {n}-bit key, got {len(probs)}"
            )
        mode = infer_mode(probs)
        if mode == "rational":
            probs = tuple(Fraction(p) for p in probs)
        check_probability_vector(probs, mode)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("KeyDistribution is immutable")

    @classmethod
    def uniform(cls, n: int, mode: str = "float") -> "KeyDistribution":
        """The uniform distribution on ``n``-bit keys, in the given backend."""
        size = 1 << n
        if mode == "rational":
            return cls(n, [Fraction(1, size)] * size)
        return cls(n, [1.0 / size] * size)

    @classmethod
    def point_mass(cls, n: int, at: int = 0, mode: str = "float") -> "KeyDistribution":
        size = 1 << n
        if not 0 <= at < size:
            raise ValidationError(f"point-mass location {at} outside [0, {size})")
        zero, one = (Fraction(0), Fraction(1)) if mode == "rational" else (0.0, 1.0)
        probs = [zero] * size
        probs[at] = one
        return cls(n, probs)

    @property
    def size(self) -> int:
        return 1 << self.n

    def prob_of(self, members: Iterable[int]) -> Number:
        """Total mass of a set of key values (duplicates collapse)."""
        idx = set(members)
        for k in idx:
            if not 0 <= k < self.size:
                raise ValidationError(f"key value {k} outside [0, {self.size})")
        return exact_sum([self.probs[k] for k in sorted(idx)])

    def as_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs], dtype=float)

    def to_json(self) -> str:
        """Serialize as a JSON array of strings (``"num/den"`` in exact mode)."""
        return json.dumps([format_number(p) for p in self.probs])

    @classmethod
    def from_json(cls, text: str, mode: str | None = None) -> "KeyDistribution":
        """Inverse of :meth:`to_json`.

        ``mode`` forces the backend; when omitted, entries containing a
        ``/`` are read exactly and everything else as floats.
        """
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"distribution is not valid JSON: {exc}") from exc
        if not isinstance(raw, list) or not raw:
            raise ValidationError("distribution JSON must be a non-empty array")
        entries = [str(item) for item in raw]
        if mode is None:
            mode = "rational" if any("/" in e for e in entries) else "float"
        probs = [parse_number(e, mode) for e in entries]
        n = len(probs).bit_length() - 1
        if 1 << n != len(probs) or n < 1:
            raise ValidationError(f"length {len(probs)} is not a power of two >= 2")
        return cls(n, probs)

    def __len__(self) -> int:
        return self.size

    def __getitem__(self, k: int) -> Number:
        return self.probs[k]

    def __iter__(self):
        return iter(self.probs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KeyDistribution):
            return NotImplemented
        return self.n == other.n and self.probs == other.probs

    def __hash__(self):
        return hash((self.n, self.probs))

    def __repr__(self) -> str:
        head = ", ".join(format_number(p) for p in self.probs[:4])
        tail = ", ..." if self.size > 4 else ""
        return f"KeyDistribution(n={self.n}, [{head}{tail}])"


class ClassicalProbeModel:
    """A key prior plus the conditional law of an eavesdropper's outcome.

    ``conditional[k][y]`` is ``p(y | K = k)``; each row must be a
    probability vector over the same outcome alphabet.  The backend must
    match the prior's.
    """

    __slots__ = ("prior", "conditional", "outcomes")

    def __init__(self, prior: KeyDistribution, conditional: Sequence[Sequence[Number]]):
        rows = tuple(tuple(row) for row in conditional)
        if len(rows) != prior.size:
            raise ValidationError(
                f"conditional has {len(rows)} rows, prior has {prior.size} key values"
            )
        width = len(rows[0])
        if width < 1:
            raise ValidationError("outcome alphabet must be non-empty")
        for k, row in enumerate(rows):
            if len(row) != width:
                raise ValidationError(f"conditional row {k} has {len(row)} entries, expected {width}")
            if infer_mode(row) != prior.mode:
                raise ValidationError(f"conditional row {k} does not match the prior's numeric mode")
            check_probability_vector(row, prior.mode, what=f"conditional row {k}")
        if prior.mode == "rational":
            rows = tuple(tuple(Fraction(v) for v in row) for row in rows)
        object.__setattr__(self, "prior", prior)
        object.__setattr__(self, "conditional", rows)
        object.__setattr__(self, "outcomes", width)

    def __setattr__(self, name, value):
        raise AttributeError("ClassicalProbeModel is immutable")

    @property
    def mode(self) -> str:
        return self.prior.mode

    def joint(self, k: int, y: int) -> Number:
        return self.prior[k] * self.conditional[k][y]

    def outcome_marginal(self) -> list:
        return [
            exact_sum([self.joint(k, y) for k in range(self.prior.size)])
            for y in range(self.outcomes)
        ]


class HermitianState:
    """Density matrix on a Hilbert space of dimension at most 64.

    Accepts anything `numpy.asarray` can turn into a square complex
    matrix; validates hermiticity, unit trace, and positivity up to 1e-9.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        mat = np.asarray(matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValidationError(f"state must be a square matrix, got shape {mat.shape}")
        dim = mat.shape[0]
        if dim < 1 or dim > MAX_STATE_DIM:
            raise ValidationError(f"state dimension {dim} outside [1, {MAX_STATE_DIM}]")
        if not np.allclose(mat, mat.conj().T, atol=VALIDATION_TOL):
            raise ValidationError("state is not Hermitian")
        if abs(np.trace(mat).real - 1.0) > 1e-6:
            raise ValidationError(f"state trace is {np.trace(mat).real!r}, not 1")
        eigs = np.linalg.eigvalsh(mat)
        if eigs.min() < -1e-8:
            raise ValidationError(f"state has negative eigenvalue {eigs.min()!r}")
        object.__setattr__(self, "matrix", mat)

    def __setattr__(self, name, value):
        raise AttributeError("HermitianState is immutable")

    @classmethod
    def from_distribution(cls, dist: KeyDistribution) -> "HermitianState":
        """Diagonal (classical) state embedding a key distribution."""
        if dist.size > MAX_STATE_DIM:
            raise ValidationError(
                f"distribution over {dist.size} values exceeds state cap {MAX_STATE_DIM}"
            )
        return cls(np.diag(dist.as_array()))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


class EntropyStats(NamedTuple):
    """Guessing and entropy summary of one distribution."""

    p1: Number
    min_entropy_bits: float
    shannon_bits: float


def statistical_distance(p: KeyDistribution, q: KeyDistribution) -> Number:
    """Total-variation distance ``(1/2) * sum_k |p_k - q_k|``.

    Parameters
    ----------
    p, q : KeyDistribution
        Must share the bit length.  If both are exact the result is an
        exact `Fraction`; otherwise a float.

    Returns
    -------
    Number
        A value in ``[0, 1]``; ``0`` iff the distributions are equal and
        ``1`` iff their supports are disjoint.
    """
    if p.n != q.n:
        raise ValidationError(f"bit lengths differ: {p.n} vs {q.n}")
    if p.mode == "rational" and q.mode == "rational":
        return sum((abs(a - b) for a, b in zip(p.probs, q.probs)), Fraction(0)) / 2
    return 0.5 * math.fsum(abs(float(a) - float(b)) for a, b in zip(p.probs, q.probs))


def _shannon_bits(probs: Sequence[Number]) -> float:
    # 0 log 0 = 0 by continuity
    return -math.fsum(float(p) * math.log2(float(p)) for p in probs if p > 0)


def entropy_stats(p: KeyDistribution) -> EntropyStats:
    """Best single-guess probability plus min- and Shannon entropy (bits).

    ``p1`` keeps the distribution's backend; the entropies are floats
    (``min_entropy_bits = -log2(p1)``).
    """
    p1 = max(p.probs)
    return EntropyStats(
        p1=p1,
        min_entropy_bits=-math.log2(float(p1)),
        shannon_bits=_shannon_bits(p.probs),
    )


def binary_entropy(q: Number) -> float:
    """Entropy ``h(q) = -q log2 q - (1-q) log2 (1-q)`` of a coin with bias q."""
    qf = float(q)
    if not 0.0 <= qf <= 1.0:
        raise ValidationError(f"binary entropy argument {q!r} outside [0, 1]")
    if qf == 0.0 or qf == 1.0:
        return 0.0
    return -qf * math.log2(qf) - (1.0 - qf) * math.log2(1.0 - qf)


def mutual_information(model: ClassicalProbeModel) -> float:
    """Mutual information ``I(K; Y)`` of a probe model, in bits.

    Computed as ``H(K) - sum_y p(y) H(K | Y = y)``; the result is clamped
    into ``[0, H(K)]`` to absorb float round-off near the endpoints.
    """
    prior = model.prior
    h_prior = _shannon_bits(prior.probs)
    marginal = [float(v) for v in model.outcome_marginal()]
    h_cond = 0.0
    for y, py in enumerate(marginal):
        if py <= 0.0:
            continue
        posterior = [float(model.joint(k, y)) / py for k in range(prior.size)]
        h_cond += py * _shannon_bits(posterior)
    return min(max(h_prior - h_cond, 0.0), h_prior)


def trace_distance(rho: HermitianState, sigma: HermitianState) -> float:
    """Trace distance ``(1/2) ||rho - sigma||_1`` between two states.

    For diagonal states this coincides with the statistical distance of
    the diagonals; in general it is the quantum analogue: the maximum
    bias any measurement can achieve in telling the states apart.
    """
    if rho.dim != sigma.dim:
        raise ValidationError(f"state dimensions differ: {rho.dim} vs {sigma.dim}")
    eigs = np.linalg.eigvalsh(rho.matrix - sigma.matrix)
    return float(min(max(0.5 * np.abs(eigs).sum(), 0.0), 1.0))


def d_criterion(model: ClassicalProbeModel) -> Number:
    """Distance of the joint (key, outcome) law from ideal-key behaviour.

    This is the statistical distance between ``p(k, y)`` and the product
    of a *uniform* key with the true outcome marginal:

    ``d = (1/2) sum_{k,y} | p(k) p(y|k) - pbar(y) / N |``

    ``d = 0`` iff the key is uniform and independent of the outcome;
    small ``d`` certifies that no event involving both the key and the
    eavesdropper's data shifts in probability by more than ``d``.
    """
    prior = model.prior
    size = prior.size
    marginal = model.outcome_marginal()
    if model.mode == "rational":
        total = Fraction(0)
        for k in range(size):
            for y in range(model.outcomes):
                total += abs(model.joint(k, y) - marginal[y] / size)
        return total / 2
    return 0.5 * math.fsum(
        abs(float(model.joint(k, y)) - float(marginal[y]) / size)
        for k in range(size)
        for y in range(model.outcomes)
    )

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


@pytest.fixture
def rng():
    return random.Random(20240817)


def random_rational_probs(rng: random.Random, size: int, denom: int = 720):
    """Exact probability vector with denominator dividing `denom`."""
    cuts = sorted(rng.randrange(denom + 1) for _ in range(size - 1))
    parts = []
    prev = 0
    for c in cuts + [denom]:
        parts.append(Fraction(c - prev, denom))
        prev = c
    return parts


def random_float_probs(rng: random.Random, size: int):
    raw = [rng.random() + 1e-9 for _ in range(size)]
    total = sum(raw)
    return [x / total for x in raw]


def pytest_terminal_summary(terminalreporter):
    # Replay the per-criterion acceptance lines after capture so they are
    # visible in a plain `pytest` run, not only under -s.
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULT_LINES:
            terminalreporter.write_line(line)

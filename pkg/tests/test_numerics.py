from fractions import Fraction

import pytest

from keysec.numerics import (
    ValidationError,
    check_probability_vector,
    coerce_to_mode,
    exact_sum,
    format_number,
    infer_mode,
    parse_number,
    resolve_mode,
)


def test_parse_number_rational_forms():
    assert parse_number("3/10", "rational") == Fraction(3, 10)
    assert parse_number("0.3", "rational") == Fraction(3, 10)
    assert parse_number("2", "rational") == 2
    assert parse_number(" -1/4 ", "rational") == Fraction(-1, 4)


def test_parse_number_float_accepts_fraction_notation():
    assert parse_number("1/4", "float") == 0.25
    assert parse_number("1e-3", "float") == 1e-3


@pytest.mark.parametrize("bad", ["", "abc", "1/0", "0x10"])
def test_parse_number_rejects_garbage(bad):
    with pytest.raises(ValidationError):
        parse_number(bad, "rational")
    with pytest.raises(ValidationError):
        parse_number(bad, "float")


def test_infer_mode():
    assert infer_mode([Fraction(1, 2), 1]) == "rational"
    assert infer_mode([0.5, 0.5]) == "float"
    with pytest.raises(ValidationError):
        infer_mode([0.5, Fraction(1, 2)])
    with pytest.raises(ValidationError):
        infer_mode(["0.5"])
    # bools are not numbers here
    with pytest.raises(ValidationError):
        infer_mode([True, False])


def test_resolve_mode_env(monkeypatch):
    monkeypatch.delenv("KEYSEC_NUMERIC_MODE", raising=False)
    assert resolve_mode(None) == "float"
    monkeypatch.setenv("KEYSEC_NUMERIC_MODE", "rational")
    assert resolve_mode(None) == "rational"
    assert resolve_mode("float") == "float"  # explicit argument wins
    monkeypatch.setenv("KEYSEC_NUMERIC_MODE", "bogus")
    with pytest.raises(ValidationError):
        resolve_mode(None)


def test_format_number():
    assert format_number(Fraction(1, 3)) == "1/3"
    assert format_number(2) == "2/1"
    assert format_number(0.25) == "0.25"


def test_exact_sum_stays_exact():
    vals = [Fraction(1, 3)] * 3
    assert exact_sum(vals) == 1
    assert isinstance(exact_sum(vals), Fraction)
    # float path is compensated: classic fsum example
    assert exact_sum([1e100, 1.0, -1e100]) == 1.0


def test_coerce_to_mode():
    assert coerce_to_mode(0.5, "rational") == Fraction(1, 2)
    assert coerce_to_mode(Fraction(1, 4), "float") == 0.25
    with pytest.raises(ValidationError):
        coerce_to_mode(float("nan"), "rational")


def test_check_probability_vector():
    check_probability_vector([Fraction(1, 2), Fraction(1, 2)], "rational")
    check_probability_vector([0.5, 0.5 + 1e-12], "float")
    with pytest.raises(ValidationError):
        check_probability_vector([], "float")
    with pytest.raises(ValidationError):
        check_probability_vector([Fraction(1, 2), Fraction(1, 3)], "rational")
    with pytest.raises(ValidationError):
        check_probability_vector([0.7, 0.7], "float")
    with pytest.raises(ValidationError):
        check_probability_vector([Fraction(-1, 4), Fraction(5, 4)], "rational")

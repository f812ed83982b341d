"""
Tests for the binomial normal form and the theorem classifiers
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from gorenstein.apolarity import hilbert_function, sperner_stats
from gorenstein.errors import InputError, UnsupportedCoefficientError
from gorenstein.families import (
    BinomialSpec,
    ClassificationReport,
    check_family1,
    check_family2,
    check_family3_5,
    check_family4,
    check_gcd_criterion,
    classify,
    family1_ci_ideal,
    flat_transfer,
    normalize,
    verify_ci_family1,
)
from gorenstein.polyring import OperatorPolynomial, parse_polynomial

WORKED_SPEC = BinomialSpec(3, 2, (6, 2, 0), (2, 1, 3))
CI_SPEC = BinomialSpec(3, 1, (4, 0, 0), (3, 2, 1))


def theorems(matches):
    return [m.theorem for m in matches]


def test_normalize_worked_example():
    normalized = normalize(parse_polynomial("X1^8*X2^3 - X1^6*X2^2*X3^3"))
    assert normalized.spec == WORKED_SPEC
    assert normalized.spec.d == 11
    assert normalized.permutation == (0, 1, 2)
    assert normalized.scale == 1


def test_normalize_pure_binomial():
    spec = normalize(parse_polynomial("X1^3 - X2^3")).spec
    assert (spec.r, spec.a, spec.b) == (1, (0, 0), (3, 3))


@pytest.mark.parametrize(
    "text, permutation, a",
    [
        ("X2^2*X1 - X3*X4*X2", (0, 1, 2, 3), (0, 1, 0, 0)),
        ("X3*X4*X2 - X2^2*X1", (2, 3, 0, 1), (0, 0, 0, 1)),
    ],
)
def test_normalize_reorders_variables(text, permutation, a):
    F = parse_polynomial(text)
    normalized = normalize(F)
    assert normalized.permutation == permutation
    assert normalized.spec.a == a
    assert normalized.spec.b == (1, 1, 1, 1)
    assert normalized.spec.r == 2
    assert normalized.reconstruct() == F


def test_normalize_keeps_common_scale():
    F = parse_polynomial("3*X1^2 - 3*X2^2")
    normalized = normalize(F)
    assert normalized.scale == 3
    assert normalized.reconstruct() == F


def test_normalize_rejects_non_binomials():
    with pytest.raises(UnsupportedCoefficientError):
        normalize(parse_polynomial("X1^2 - 2*X2^2"))
    with pytest.raises(InputError):
        normalize(parse_polynomial("X1^2"))
    with pytest.raises(InputError):
        normalize(parse_polynomial("X1^2 - X2"))


def test_spec_validation():
    with pytest.raises(InputError):
        BinomialSpec(3, 2, (0, 0, 0), (2, 1, 2))
    with pytest.raises(InputError):
        BinomialSpec(2, 0, (0, 0), (1, 1))
    with pytest.raises(InputError):
        BinomialSpec(2, 1, (0, 0, 0), (1, 1))


def test_spec_polynomial_and_key():
    assert WORKED_SPEC.polynomial() == parse_polynomial("X1^8*X2^3 - X1^6*X2^2*X3^3")
    assert WORKED_SPEC.key() == "n3r2a6,2,0b2,1,3"
    assert WORKED_SPEC.gcd_degree == 8
    assert WORKED_SPEC.factor_degree == 3


def test_canonical_ignores_labels_and_sign():
    swapped = BinomialSpec(3, 1, (0, 6, 2), (3, 2, 1))
    assert WORKED_SPEC.canonical() == swapped
    assert swapped.canonical() == swapped


def test_gcd_criterion():
    assert theorems(check_gcd_criterion(BinomialSpec(4, 2, (0, 0, 0, 0), (2, 1, 1, 2)))) == ["gcd-criterion"]
    assert check_gcd_criterion(WORKED_SPEC) == []
    # deg g equal to floor((d-1)/2) is outside the criterion
    assert check_gcd_criterion(BinomialSpec(2, 1, (1, 0), (2, 2))) == []


def test_family4_worked_example():
    matches = check_family4(WORKED_SPEC)
    assert theorems(matches) == ["family4i", "family4ii"]
    assert matches[0].witness == "x1"
    assert matches[0].witness_variable == 0
    assert matches[1].ns_lower_bound == 4


def test_family4_boundaries():
    assert theorems(check_family4(BinomialSpec(3, 2, (5, 0, 0), (2, 1, 3)))) == ["family4i", "family4ii"]
    matches = check_family4(BinomialSpec(3, 2, (5, 2, 0), (2, 1, 3)))
    assert theorems(matches) == ["family4ii"]
    assert matches[0].ns_lower_bound == 3


def test_family2():
    spec = normalize(parse_polynomial("X2^4*(X1^3 - X2*X3*X4)")).spec
    assert spec == BinomialSpec(4, 1, (0, 4, 0, 0), (3, 1, 1, 1))
    assert theorems(check_family2(spec)) == ["family2"]
    assert check_family1(spec) == []


def test_family1():
    assert theorems(check_family1(CI_SPEC)) == ["family1", "family1-ci"]
    assert theorems(check_family1(BinomialSpec(3, 1, (1, 0, 0), (3, 2, 1)))) == ["family1"]
    assert check_family1(WORKED_SPEC) == []


def test_family3_and_family5():
    assert theorems(check_family3_5(BinomialSpec(3, 1, (2, 1, 1), (3, 3, 0)))) == ["family3"]
    assert theorems(check_family3_5(BinomialSpec(4, 2, (0, 0, 0, 2), (2, 1, 3, 0)))) == ["family5"]
    assert check_family3_5(BinomialSpec(4, 2, (0, 0, 0, 0), (1, 1, 1, 1))) == []


@pytest.mark.parametrize("action", ["diff", "contract"])
def test_family1_complete_intersection(action):
    evidence = verify_ci_family1(CI_SPEC, action)
    assert evidence.holds
    assert all(evidence.annihilating)
    assert sorted(evidence.ci_degrees) == [2, 3, 5]
    assert evidence.hvector == [1, 3, 5, 6, 6, 5, 3, 1]
    assert evidence.ci_hvector == evidence.hvector


def test_family1_ci_ideal_coefficient():
    last = family1_ci_ideal(CI_SPEC, "diff")[-1]
    assert last == OperatorPolynomial.parse("x1^5 + 105*x1^2*x2^2*x3", nvars=3)
    assert family1_ci_ideal(CI_SPEC, "contract")[-1] == OperatorPolynomial.parse("x1^5 + x1^2*x2^2*x3", nvars=3)


def test_ci_requires_family1_with_large_gcd():
    with pytest.raises(InputError):
        verify_ci_family1(WORKED_SPEC)
    with pytest.raises(InputError):
        verify_ci_family1(BinomialSpec(3, 1, (1, 0, 0), (3, 2, 1)))


def test_flat_transfer():
    G = WORKED_SPEC.polynomial()
    match = flat_transfer(G, OperatorPolynomial.constant(3, 1))
    assert match is not None
    assert match.ns_lower_bound == 4
    short = parse_polynomial("X1^3 - X2^3")
    assert flat_transfer(short, OperatorPolynomial.parse("x1", nvars=2)) is None
    with pytest.raises(InputError):
        flat_transfer(G, OperatorPolynomial.parse("x3^4", nvars=3))


def test_classify_worked_example():
    report = classify(WORKED_SPEC)
    assert isinstance(report, ClassificationReport)
    names = theorems(report.matches)
    assert {"family4i", "family4ii", "family5"} <= set(names)
    family4i = next(m for m in report.matches if m.theorem == "family4i")
    assert family4i.witness == "x1"
    assert report.overall == "SLP"
    ns = sperner_stats(hilbert_function(WORKED_SPEC.polynomial())).flat_length
    family4ii = next(m for m in report.matches if m.theorem == "family4ii")
    assert family4ii.ns_lower_bound <= ns


def test_classify_family3_instance():
    spec = normalize(parse_polynomial("X1^2*X2*X3*(X1^2 - X2^2)")).spec
    report = classify(spec)
    assert "family3" in theorems(report.matches)
    assert report.overall == "SLP"


def test_classify_unknown():
    report = classify(BinomialSpec(4, 2, (0, 0, 0, 0), (1, 1, 1, 1)))
    assert report.overall in ("WLP", "UNKNOWN")
    assert "family3" not in theorems(report.matches)


def test_family1_needs_a_genuine_gcd():
    assert check_family1(BinomialSpec(2, 1, (0, 0), (1, 1))) == []
    cubic = BinomialSpec(3, 1, (0, 0, 0), (3, 2, 1))
    assert check_family1(cubic) == []
    assert theorems(check_gcd_criterion(cubic)) == ["gcd-criterion"]


def test_family3_allows_zero_gcd_exponents():
    assert theorems(check_family3_5(BinomialSpec(2, 1, (0, 0), (3, 3)))) == ["family3"]
    assert theorems(check_family3_5(BinomialSpec(3, 1, (0, 0, 2), (2, 2, 0)))) == ["family3"]

"""
Tests for catalecticants, Hilbert functions and graded bases of A_F
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from gorenstein.apolarity import (
    HVector,
    annihilator_membership,
    basis_images,
    catalecticant,
    ci_hilbert_function,
    graded_basis,
    hilbert_function,
    is_full_monomial_degree,
    monomial_bound,
    sperner_stats,
)
from gorenstein.errors import CapacityError, InputError
from gorenstein.exactla import rank
from gorenstein.polyring import OperatorPolynomial, parse_polynomial

WORKED = parse_polynomial("X1^8*X2^3 - X1^6*X2^2*X3^3")

SMALL_GENERATORS = [
    "X1^4",
    "X1*X2",
    "X1^3 - X2^3",
    "X1^2*X2^3",
    "X1^2*X2*X3 - X3^4",
    "X1^3*X2 - X2^2*X3*X4",
    "X1^4*X1^3 - X1^4*X2^2*X3",
]


def test_catalecticant_shapes():
    M = catalecticant(parse_polynomial("X1^2"), 1)
    assert M.shape == (1, 1)
    assert M[0, 0] == 2
    C5 = catalecticant(WORKED, 5)
    assert C5.shape == (21, 28)
    assert rank(C5) == 12


def test_hilbert_function_examples():
    assert list(hilbert_function(parse_polynomial("X1^4"))) == [1, 1, 1, 1, 1]
    assert list(hilbert_function(parse_polynomial("X1^3 - X2^3"))) == [1, 2, 2, 1]
    assert list(hilbert_function(parse_polynomial("X1^2*X2^3"))) == [1, 2, 3, 3, 2, 1]
    h = hilbert_function(WORKED)
    assert list(h) == [1, 3, 6, 10, 12, 12, 12, 12, 10, 6, 3, 1]
    assert h.socle_degree == 11
    assert h.to_text() == "(1,3,6,10,12,12,12,12,10,6,3,1)"


@pytest.mark.parametrize("text", SMALL_GENERATORS)
def test_gorenstein_duality(text):
    h = hilbert_function(parse_polynomial(text))
    assert h.is_symmetric()
    assert h[0] == 1


@pytest.mark.parametrize("text", SMALL_GENERATORS)
def test_hilbert_function_independent_of_action(text):
    F = parse_polynomial(text)
    assert hilbert_function(F, "diff") == hilbert_function(F, "contract")


@pytest.mark.parametrize("text", SMALL_GENERATORS)
def test_hilbert_function_bounded_by_monomials(text):
    F = parse_polynomial(text)
    for t, value in enumerate(hilbert_function(F)):
        assert value <= monomial_bound(F.nvars, t)


def test_invalid_dual_generators():
    with pytest.raises(InputError):
        hilbert_function(parse_polynomial("X1^2 + X2"))
    with pytest.raises(InputError):
        hilbert_function(parse_polynomial("X1 - X1"))
    with pytest.raises(InputError):
        catalecticant(WORKED, 12)
    with pytest.raises(InputError):
        catalecticant(WORKED, 2, action="integrate")


def test_capacity_limits():
    with pytest.raises(CapacityError):
        hilbert_function(parse_polynomial("X1*X2*X3*X4*X5*X6*X7"))
    with pytest.raises(CapacityError):
        hilbert_function(parse_polynomial("X1^21"))


def test_graded_basis_small():
    assert graded_basis(parse_polynomial("X1*X2"), 1).to_text() == ["x1", "x2"]
    assert graded_basis(parse_polynomial("X1^3 - X2^3"), 2).to_text() == ["x1^2", "x2^2"]


def test_graded_basis_worked_example():
    basis = graded_basis(WORKED, 5)
    assert basis.to_text() == [
        "x1^5", "x1^4*x2", "x1^4*x3", "x1^3*x2^2", "x1^3*x2*x3", "x1^3*x3^2",
        "x1^2*x2^2*x3", "x1^2*x2*x3^2", "x1^2*x3^3", "x1*x2^2*x3^2", "x1*x2*x3^3", "x2^2*x3^3",
    ]


@pytest.mark.parametrize("text", SMALL_GENERATORS)
def test_graded_basis_matches_hilbert_function(text):
    F = parse_polynomial(text)
    h = hilbert_function(F)
    for t in range(h.socle_degree + 1):
        basis = graded_basis(F, t)
        assert len(basis) == h[t]
        assert rank(basis_images(F, basis)) == h[t]


def test_sperner_stats():
    stats = sperner_stats(hilbert_function(WORKED))
    assert (stats.sperner, stats.flat_length, stats.flat_start, stats.flat_end) == (12, 4, 4, 7)
    assert stats.has_flat
    short = sperner_stats(HVector((1, 2, 2, 1)))
    assert (short.sperner, short.flat_length) == (2, 2)
    assert not short.has_flat


def test_annihilator_membership():
    F = parse_polynomial("X1*X2", nvars=3)
    assert annihilator_membership(OperatorPolynomial.parse("x3", nvars=3), F)
    assert annihilator_membership(OperatorPolynomial.parse("x1^2", nvars=3), F)
    assert not annihilator_membership(OperatorPolynomial.parse("x1*x2", nvars=3), F)
    G = parse_polynomial("X1^3 - X2^3")
    assert annihilator_membership(OperatorPolynomial.parse("x1*x2", nvars=2), G)
    assert annihilator_membership(OperatorPolynomial.parse("x1^3 + x2^3", nvars=2), G)


def test_full_monomial_degree():
    assert is_full_monomial_degree(WORKED, 3)
    assert not is_full_monomial_degree(WORKED, 4)


def test_ci_hilbert_function():
    assert list(ci_hilbert_function((5, 3, 2))) == [1, 3, 5, 6, 6, 5, 3, 1]
    assert list(ci_hilbert_function((2, 2))) == [1, 2, 1]
    with pytest.raises(InputError):
        ci_hilbert_function((0, 2))

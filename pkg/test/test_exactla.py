"""
Tests for exact rank, determinant and generic-rank decisions
"""

import os
import random
import sys
from fractions import Fraction

import pytest
import sympy

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from gorenstein.errors import CapacityError, InputError
from gorenstein.exactla import (
    PolyMatrix,
    RankCertificate,
    RationalMatrix,
    RowEchelon,
    certify_generic_rank,
    det,
    has_full_rank,
    is_det_nonzero,
    is_full_rank_generic,
    line_rank_certificate,
    modular_rank,
    rank,
    solve_coordinates,
    symbolic_det,
    symbolic_rank,
)
from gorenstein.polyring import DualPolynomial, Monomial, parse_polynomial


def random_matrix(rng, rows, cols, density=0.6):
    return [
        [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) if rng.random() < density else 0 for _ in range(cols)]
        for _ in range(rows)
    ]


def sympy_rank(data):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v
                          for v in row] for row in data]).rank()


def test_rank_basics():
    assert rank(RationalMatrix.identity(3)) == 3
    assert rank(RationalMatrix(3, 4)) == 0
    assert rank(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank(RationalMatrix(0, 5)) == 0


def test_det_small():
    assert det(RationalMatrix.from_rows([[2]])) == 2
    assert det(RationalMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det(RationalMatrix.from_rows([[1, 2], [3, 4]])) == -2
    assert det(RationalMatrix.from_rows([[Fraction(1, 2), 0], [0, Fraction(2, 3)]])) == Fraction(1, 3)
    assert det(RationalMatrix(0, 0)) == 1
    with pytest.raises(InputError):
        det(RationalMatrix(2, 3))


@pytest.mark.parametrize("seed", range(6))
def test_det_matches_sympy(seed):
    rng = random.Random(seed)
    data = random_matrix(rng, 5, 5)
    expected = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) if isinstance(v, Fraction) else v
                              for v in row] for row in data]).det()
    assert det(RationalMatrix.from_rows(data)) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))


@pytest.mark.parametrize("seed", range(6))
def test_rank_matches_sympy_and_transpose(seed):
    rng = random.Random(100 + seed)
    data = random_matrix(rng, 6, 4, density=0.4)
    M = RationalMatrix.from_rows(data)
    expected = sympy_rank(data)
    assert rank(M) == expected
    assert rank(M, prepass=True) == expected
    assert rank(M.transpose()) == expected
    assert modular_rank(M)[0] <= expected


def test_modular_rank_pivots():
    M = RationalMatrix.from_rows([[0, 1, 0], [0, 2, 0], [1, 0, 1]])
    r, pivot_rows, pivot_cols = modular_rank(M)
    assert r == 2
    assert pivot_rows == [0, 2]
    assert det(M.submatrix(pivot_rows, pivot_cols)) != 0


def test_has_full_rank():
    assert has_full_rank(RationalMatrix.from_rows([[1, 0, 0], [0, 1, 0]]))
    assert not has_full_rank(RationalMatrix.from_rows([[1, 1], [1, 1], [2, 2]]))


def test_row_echelon():
    echelon = RowEchelon()
    assert echelon.add({0: 1, 1: 2})
    assert not echelon.add({0: 2, 1: 4})
    assert echelon.add({1: Fraction(1, 3)})
    assert not echelon.add({0: 5})
    assert len(echelon) == 2


def test_solve_coordinates():
    basis = RationalMatrix.from_rows([[1, 0, 1], [0, 1, 1]])
    targets = RationalMatrix.from_rows([[2, 3, 5], [0, -1, -1]])
    assert solve_coordinates(basis, targets) == RationalMatrix.from_rows([[2, 3], [0, -1]])
    with pytest.raises(InputError):
        solve_coordinates(basis, RationalMatrix.from_rows([[1, 0, 0]]))
    with pytest.raises(InputError):
        solve_coordinates(RationalMatrix.from_rows([[1, 1], [2, 2]]), RationalMatrix.from_rows([[1, 1]]))


def poly(text, nvars):
    return parse_polynomial(text, nvars=nvars)


def test_symbolic_det_small():
    assert symbolic_det(PolyMatrix.from_rows([[poly("X1", 1)]], 1)) == poly("X1", 1)
    M = PolyMatrix.from_rows([[poly("X1", 2), poly("X2", 2)], [poly("X2", 2), poly("X1", 2)]], 2)
    assert symbolic_det(M) == poly("X1^2 - X2^2", 2)
    singular = PolyMatrix.from_rows([[poly("X1", 1), poly("X1", 1)], [poly("X1", 1), poly("X1", 1)]], 1)
    assert symbolic_det(singular).is_zero()
    assert symbolic_rank(singular) == 1


@pytest.mark.parametrize("seed", range(4))
def test_symbolic_det_commutes_with_evaluation(seed):
    rng = random.Random(seed)
    nvars = 3

    def linear():
        return DualPolynomial.from_exponents(
            nvars, [(tuple(1 if k == i else 0 for k in range(nvars)), rng.randint(-3, 3)) for i in range(nvars)]
        )

    M = PolyMatrix.from_rows([[linear() for _ in range(4)] for _ in range(4)], nvars)
    D = symbolic_det(M)
    point = [rng.randint(-4, 4) for _ in range(nvars)]
    assert D.evaluate(point) == det(M.evaluate(point))


def test_poly_matrix_rejects_mixed_degrees():
    with pytest.raises(InputError):
        PolyMatrix.from_rows([[poly("X1", 1), poly("X1^2", 1)]], 1)


def test_symbolic_cap():
    x = poly("X1", 2)
    big = PolyMatrix(15, 15, 2, {(i, i): x for i in range(15)})
    with pytest.raises(CapacityError):
        symbolic_det(big)


def test_generic_rank_positive_has_witness():
    M = PolyMatrix.from_rows([[poly("X1", 2), poly("X2", 2)], [poly("X2", 2), poly("X1", 2)]], 2)
    certificate = is_det_nonzero(M)
    assert certificate.full_rank
    assert has_full_rank(M.evaluate(certificate.witness))
    assert certificate.witness == [1, 0]


def test_generic_rank_negative_records_parameters():
    singular = PolyMatrix.from_rows([[poly("X1", 1), poly("X1", 1)], [poly("X1", 1), poly("X1", 1)]], 1)
    certificate = is_full_rank_generic(singular, seed=7)
    assert not certificate.full_rank
    assert certificate.method == "schwartz-zippel"
    assert certificate.degree_bound == 2
    assert certificate.bound == 2 * 2 ** 20
    assert certificate.samples == 2
    assert certificate.seed == 7
    with pytest.raises(InputError):
        is_det_nonzero(PolyMatrix(2, 3, 1))


def test_line_certificate():
    singular = PolyMatrix.from_rows([[poly("X1", 1), poly("X1", 1)], [poly("X1", 1), poly("X1", 1)]], 1)
    certificate = line_rank_certificate(singular, seed=3)
    assert not certificate.full_rank
    assert certificate.method == "line-interpolation"
    assert certificate.samples == 3
    assert certificate.base is not None and certificate.direction is not None
    huge = PolyMatrix(1, 1, 1, {(0, 0): DualPolynomial.from_monomial(Monomial((5000,)))})
    with pytest.raises(CapacityError):
        line_rank_certificate(huge)


def test_certify_generic_rank_symbolic():
    M = PolyMatrix.from_rows([[poly("X1", 2), poly("X2", 2)], [poly("X2", 2), poly("X1", 2)]], 2)
    certificate = certify_generic_rank(M)
    assert certificate.method == "symbolic"
    assert certificate.full_rank
    assert certificate.witness is not None


def test_certificate_serializes():
    certificate = RankCertificate(full_rank=False, method="symbolic", degree_bound=4, target_rank=2)
    assert RankCertificate.model_validate_json(certificate.model_dump_json()) == certificate

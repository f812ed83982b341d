# -*- coding: utf-8 -*-
# File: gorenstein/apolarity.py
# Inverse-system invariants of A_F = R/Ann(F)

"""
Catalecticant matrices and the graded invariants of A_F.

A_t is isomorphic to the span of {m o F : deg m = t}; the catalecticant of
degree t holds those images as rows, so h_t is its rank. Everything here
works for any nonzero homogeneous F; binomial-specific logic lives in
gorenstein.families.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

from gorenstein.config import CACHE_SIZE, MAX_DEGREE, MAX_VARS
from gorenstein.errors import CapacityError, InputError
from gorenstein.exactla import RationalMatrix, RowEchelon, rank
from gorenstein.logger import get_logger
from gorenstein.polyring import (
    ACTIONS,
    DualPolynomial,
    Monomial,
    OperatorPolynomial,
    diff_apply,
    monomial_count,
    monomials_of_degree,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class HVector:
    """Hilbert function h_0..h_d of A_F."""

    entries: Tuple[int, ...]

    @property
    def socle_degree(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, t: int) -> int:
        return self.entries[t]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def is_symmetric(self) -> bool:
        return self.entries == self.entries[::-1]

    def to_text(self) -> str:
        return "(" + ",".join(str(h) for h in self.entries) + ")"

    def to_dict(self) -> Dict[str, Any]:
        return {"entries": list(self.entries), "socle_degree": self.socle_degree}


@dataclass(frozen=True)
class GradedBasis:
    """Operator monomials of one degree whose images under F are independent."""

    degree: int
    monomials: Tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)

    def to_text(self) -> List[str]:
        return [m.to_text("x") for m in self.monomials]

    def to_dict(self) -> Dict[str, Any]:
        return {"degree": self.degree, "monomials": self.to_text()}


@dataclass(frozen=True)
class SpernerStats:
    sperner: int
    flat_length: int
    flat_start: int
    flat_end: int

    @property
    def has_flat(self) -> bool:
        return self.flat_length >= 3

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sperner": self.sperner,
            "flat_length": self.flat_length,
            "flat_start": self.flat_start,
            "flat_end": self.flat_end,
            "has_flat": self.has_flat,
        }


def _check_dual_generator(F: DualPolynomial) -> int:
    if not isinstance(F, DualPolynomial):
        raise InputError("expected a dual polynomial in X1..Xn")
    if F.is_zero():
        raise InputError("the dual generator must be nonzero")
    if not F.is_homogeneous():
        raise InputError(f"the dual generator must be homogeneous: {F}")
    d = F.degree()
    if F.nvars > MAX_VARS or d > MAX_DEGREE:
        raise CapacityError(
            f"n={F.nvars}, d={d} exceeds the caps n<={MAX_VARS}, d<={MAX_DEGREE}",
            data={"nvars": F.nvars, "degree": d},
        )
    return d


def _check_degree(t: int, d: int) -> None:
    if not 0 <= t <= d:
        raise InputError(f"degree {t} outside 0..{d}")


def image_row(F: DualPolynomial, operator: OperatorPolynomial, columns: Dict[Monomial, int]) -> Dict[int, Any]:
    """Coordinates of operator o F in the monomial basis indexed by `columns`."""
    return {columns[m]: c for m, c in diff_apply(operator, F).terms.items()}


def _catalecticant_rows(F: DualPolynomial, t: int, action: str) -> Tuple[List[Dict[int, Any]], int]:
    apply = ACTIONS[action]
    d = F.degree()
    columns = {m: j for j, m in enumerate(monomials_of_degree(F.nvars, d - t))}
    rows = []
    for m in monomials_of_degree(F.nvars, t):
        image = apply(OperatorPolynomial.from_monomial(m), F)
        rows.append({columns[u]: c for u, c in image.terms.items()})
    return rows, len(columns)


def catalecticant(F: DualPolynomial, t: int, action: str = "diff") -> RationalMatrix:
    """Rows: degree-t operator monomials; columns: degree d-t dual monomials."""
    d = _check_dual_generator(F)
    _check_degree(t, d)
    if action not in ACTIONS:
        raise InputError(f"unknown action {action!r}; use one of {sorted(ACTIONS)}")
    rows, cols = _catalecticant_rows(F, t, action)
    return RationalMatrix.from_sparse_rows(rows, cols)


@lru_cache(maxsize=CACHE_SIZE)
def _hilbert_function(F: DualPolynomial, action: str) -> HVector:
    d = F.degree()
    entries = tuple(rank(catalecticant(F, t, action)) for t in range(d + 1))
    logger.debug(f"h-vector of {F}: {entries}")
    return HVector(entries)


def hilbert_function(F: DualPolynomial, action: str = "diff") -> HVector:
    _check_dual_generator(F)
    if action not in ACTIONS:
        raise InputError(f"unknown action {action!r}; use one of {sorted(ACTIONS)}")
    return _hilbert_function(F, action)


@lru_cache(maxsize=CACHE_SIZE)
def _graded_basis(F: DualPolynomial, t: int) -> GradedBasis:
    rows, _ = _catalecticant_rows(F, t, "diff")
    listing = monomials_of_degree(F.nvars, t)
    echelon = RowEchelon()
    kept = set()
    # Lowest monomials first; the kept set is reported in listing order.
    for index in range(len(listing) - 1, -1, -1):
        if rows[index] and echelon.add(rows[index]):
            kept.add(index)
    return GradedBasis(t, tuple(listing[i] for i in sorted(kept)))


def graded_basis(F: DualPolynomial, t: int) -> GradedBasis:
    """
    Greedy basis of A_t: a monomial is kept when its catalecticant row is
    independent of the rows kept before it.

    For F = X1^8*X2^3 - X1^6*X2^2*X3^3 and t = 5 this gives the twelve
    degree-5 divisors of x1^6*x2^2*x3^3: x1^5, x1^4*x2, x1^4*x3, ..., x2^2*x3^3.
    """
    d = _check_dual_generator(F)
    _check_degree(t, d)
    return _graded_basis(F, t)


def basis_images(F: DualPolynomial, basis: GradedBasis) -> RationalMatrix:
    """Rows u o F for u in the basis, in coordinates of S_{d-t}."""
    d = F.degree()
    columns = {m: j for j, m in enumerate(monomials_of_degree(F.nvars, d - basis.degree))}
    rows = [image_row(F, OperatorPolynomial.from_monomial(u), columns) for u in basis.monomials]
    return RationalMatrix.from_sparse_rows(rows, len(columns))


def sperner_stats(h: HVector) -> SpernerStats:
    entries = list(h)
    if not entries:
        raise InputError("empty h-vector")
    top = max(entries)
    positions = [i for i, v in enumerate(entries) if v == top]
    return SpernerStats(sperner=top, flat_length=len(positions), flat_start=positions[0], flat_end=positions[-1])


def annihilator_membership(p: OperatorPolynomial, F: DualPolynomial) -> bool:
    """True iff p lies in Ann(F)."""
    return diff_apply(p, F).is_zero()


def monomial_bound(nvars: int, t: int) -> int:
    """Dimension of R_t, the upper bound for h_t."""
    return monomial_count(nvars, t)


def ci_hilbert_function(degrees: Sequence[int]) -> HVector:
    """Coefficients of prod(1 - t^e) / (1 - t)^n, the h-vector of a complete intersection."""
    if not degrees or any(e < 1 for e in degrees):
        raise InputError(f"generator degrees must be positive, got {list(degrees)}")
    coefficients = [1]
    for e in degrees:
        # Multiply by 1 + t + ... + t^(e-1)
        product = [0] * (len(coefficients) + e - 1)
        for i, c in enumerate(coefficients):
            for j in range(e):
                product[i + j] += c
        coefficients = product
    return HVector(tuple(coefficients))


def is_full_monomial_degree(F: DualPolynomial, t: int) -> bool:
    """True when no operator of degree t annihilates F."""
    return hilbert_function(F)[t] == monomial_bound(F.nvars, t)

# -*- coding: utf-8 -*-
# File: gorenstein/lefschetz.py
# Weak and strong Lefschetz properties of A_F

"""
Two routes to the Lefschetz properties of A_F.

The direct route computes the rank of x l^k : A_s -> A_{s+k} from the images
(l^k * u) o F of a basis of A_s. The Hessian route builds the mixed Hessian
((w_i * u_j) o F) over bases of A_t and A_s: evaluated at the coefficients
of l it is 1/k! times the pairing matrix of x l^k with k = d - s - t, so one
is of full rank exactly when the other is.

Candidate linear forms are tried cheapest first: coordinate forms, the
all-ones form, then seeded random forms. A verdict that the property fails
is a statement about a generic l and always carries a certificate.
"""

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, Field

from gorenstein.apolarity import GradedBasis, basis_images, graded_basis, hilbert_function, image_row
from gorenstein.config import DEFAULT_SEED, PIT_CONFIDENCE, RANDOM_CANDIDATES
from gorenstein.errors import InputError, VerificationError
from gorenstein.exactla import (
    PolyMatrix,
    RankCertificate,
    RationalMatrix,
    certify_generic_rank,
    has_full_rank,
    is_full_rank_generic,
    rank,
    solve_coordinates,
)
from gorenstein.logger import get_logger
from gorenstein.polyring import DualPolynomial, Monomial, OperatorPolynomial, Scalar, diff_apply, monomials_of_degree

logger = get_logger(__name__)

MODES = ("FAST", "CERTIFY")
RANDOM_FORM_BOUND = 2 ** 20


@dataclass(frozen=True)
class LinearForm:
    """l = c1*x1 + ... + cn*xn in the operator ring."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        if not self.coefficients:
            raise InputError("a linear form needs at least one coefficient")

    @classmethod
    def coordinate(cls, nvars: int, index: int) -> "LinearForm":
        return cls(tuple(1 if i == index else 0 for i in range(nvars)))

    @classmethod
    def ones(cls, nvars: int) -> "LinearForm":
        return cls((1,) * nvars)

    @classmethod
    def parse(cls, text: str) -> "LinearForm":
        """Comma-separated coefficients, e.g. `1,0,-2/3`."""
        try:
            return cls(tuple(Fraction(part.strip()) for part in text.split(",")))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"cannot read linear form coefficients from {text!r}")

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def to_operator(self) -> OperatorPolynomial:
        return self.power(1)

    def power(self, k: int) -> OperatorPolynomial:
        """l^k expanded with multinomial coefficients."""
        if k < 0:
            raise InputError("negative power of a linear form")
        terms: Dict[Monomial, Fraction] = {}
        for m in monomials_of_degree(self.nvars, k):
            coefficient = Fraction(math.factorial(k))
            for c, e in zip(self.coefficients, m.exponents):
                if e:
                    coefficient *= c ** e / math.factorial(e)
            if coefficient:
                terms[m] = coefficient
        return OperatorPolynomial(self.nvars, terms)

    def to_text(self) -> str:
        return self.to_operator().to_text()

    def to_list(self) -> List[str]:
        return [str(c) for c in self.coefficients]


def _check_form(F: DualPolynomial, ell: LinearForm) -> None:
    if ell.nvars != F.nvars:
        raise InputError(f"linear form has {ell.nvars} coefficients, F has {F.nvars} variables")
    if ell.is_zero():
        raise InputError("the zero form is never a Lefschetz element")


def _images(F: DualPolynomial, operator: OperatorPolynomial, basis: GradedBasis, k: int) -> RationalMatrix:
    d = F.degree()
    columns = {m: j for j, m in enumerate(monomials_of_degree(F.nvars, d - basis.degree - k))}
    rows = [image_row(F, operator * OperatorPolynomial.from_monomial(u), columns) for u in basis.monomials]
    return RationalMatrix.from_sparse_rows(rows, len(columns))


def _check_map_degrees(F: DualPolynomial, s: int, k: int) -> int:
    h = hilbert_function(F)
    d = h.socle_degree
    if s < 0 or k < 0 or s + k > d:
        raise InputError(f"map A_{s} -> A_{s + k} leaves the degree range 0..{d}")
    return d


def mult_map_matrix(F: DualPolynomial, ell: LinearForm, s: int, k: int) -> RationalMatrix:
    """
    Matrix of x l^k : A_s -> A_{s+k} in the graded bases; column j holds the
    coordinates of l^k * u_j. Shape h_{s+k} x h_s.
    """
    _check_form(F, ell)
    _check_map_degrees(F, s, k)
    domain = graded_basis(F, s)
    codomain = graded_basis(F, s + k)
    targets = _images(F, ell.power(k), domain, k)
    coordinates = solve_coordinates(basis_images(F, codomain), targets)
    return coordinates.transpose()


def map_rank(F: DualPolynomial, ell: LinearForm, s: int, k: int) -> int:
    """Rank of x l^k on A_s, read off the images (l^k * u) o F."""
    _check_form(F, ell)
    _check_map_degrees(F, s, k)
    return rank(_images(F, ell.power(k), graded_basis(F, s), k), prepass=True)


def is_wl_element(F: DualPolynomial, ell: LinearForm) -> bool:
    """Only the middle map A_m -> A_{m+1}, m = floor((d-1)/2), needs maximal rank."""
    _check_form(F, ell)
    h = hilbert_function(F)
    d = h.socle_degree
    if d == 0:
        return True
    s = (d - 1) // 2
    return map_rank(F, ell, s, 1) == min(h[s], h[s + 1])


def is_sl_element(F: DualPolynomial, ell: LinearForm) -> bool:
    """Every x l^(d-2t) : A_t -> A_{d-t}, 0 <= t < d/2, must be bijective."""
    _check_form(F, ell)
    h = hilbert_function(F)
    d = h.socle_degree
    for t in range(d // 2 + 1):
        k = d - 2 * t
        if k and map_rank(F, ell, t, k) != h[t]:
            return False
    return True


@dataclass(frozen=True)
class HessianMatrix:
    """Mixed Hessian: rows from the degree-t basis, columns from the degree-s basis."""

    s: int
    t: int
    row_basis: GradedBasis
    col_basis: GradedBasis
    matrix: PolyMatrix

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    def evaluate(self, point: Sequence[Scalar]) -> RationalMatrix:
        return self.matrix.evaluate(point)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s": self.s,
            "t": self.t,
            "rows": self.row_basis.to_text(),
            "cols": self.col_basis.to_text(),
            "entry_degree": self.matrix.degree,
            "entries": self.matrix.to_text_rows(),
        }


def mixed_hessian(F: DualPolynomial, s: int, t: int) -> HessianMatrix:
    h = hilbert_function(F)
    d = h.socle_degree
    if s < 0 or t < 0 or s + t > d:
        raise InputError(f"mixed Hessian needs s, t >= 0 and s + t <= {d}, got s={s}, t={t}")
    row_basis = graded_basis(F, t)
    col_basis = graded_basis(F, s)
    entries = {}
    for i, w in enumerate(row_basis.monomials):
        for j, u in enumerate(col_basis.monomials):
            value = diff_apply(OperatorPolynomial.from_monomial(w * u), F)
            if value:
                entries[i, j] = value
    matrix = PolyMatrix(len(row_basis), len(col_basis), F.nvars, entries)
    return HessianMatrix(s, t, row_basis, col_basis, matrix)


def hessian(F: DualPolynomial, t: int) -> HessianMatrix:
    """Hessian of order t; order 0 is the 1x1 matrix [F]."""
    d = hilbert_function(F).socle_degree
    if t < 0 or 2 * t > d:
        raise InputError(f"Hessian of order {t} needs 0 <= 2t <= {d}")
    return mixed_hessian(F, t, t)


class Verdict(BaseModel):
    """Decision on WLP or SLP with the evidence behind it."""

    property: str = Field(..., description="WLP | SLP")
    status: str = Field(..., description="HOLDS | FAILS | UNKNOWN")
    provenance: str = Field(
        ...,
        description="trivial | oracle-witness | hessian-witness | symbolic-zero | line-zero | "
        "probabilistic-zero | inconclusive-at-point | no-witness-found",
    )
    mode: Optional[str] = None
    witness: Optional[List[str]] = Field(None, description="Coefficients of a Lefschetz element")
    certificates: List[RankCertificate] = Field(default_factory=list)
    failing_degrees: List[int] = Field(default_factory=list, description="Degrees t whose map fails")
    detail: Optional[str] = None


def _zero_provenance(certificate: RankCertificate) -> str:
    return {
        "symbolic": "symbolic-zero",
        "line-interpolation": "line-zero",
    }.get(certificate.method, "probabilistic-zero")


def candidate_forms(nvars: int, seed: int = DEFAULT_SEED, count: int = RANDOM_CANDIDATES) -> Iterator[LinearForm]:
    for i in range(nvars):
        yield LinearForm.coordinate(nvars, i)
    if nvars > 1:
        yield LinearForm.ones(nvars)
    rng = random.Random(seed)
    for _ in range(count):
        coefficients = [rng.randint(-RANDOM_FORM_BOUND, RANDOM_FORM_BOUND) for _ in range(nvars)]
        if any(coefficients):
            yield LinearForm(tuple(coefficients))


def _wlp_hessian(F: DualPolynomial, d: int) -> HessianMatrix:
    t = d // 2
    if d % 2:
        return mixed_hessian(F, d - t - 1, t)
    return mixed_hessian(F, t, t - 1)


def wlp_by_hessian(F: DualPolynomial, point: Union[Sequence[Scalar], str] = "RANDOM", seed: int = DEFAULT_SEED) -> Verdict:
    """
    WLP through the mixed Hessian of the middle map. With explicit
    coordinates the verdict is HOLDS or UNKNOWN at that point; with RANDOM
    the generic rank is tested and a negative answer is probabilistic.
    """
    d = hilbert_function(F).socle_degree
    if d == 0:
        return Verdict(property="WLP", status="HOLDS", provenance="trivial", witness=LinearForm.coordinate(F.nvars, 0).to_list())
    H = _wlp_hessian(F, d)
    if isinstance(point, str):
        if point.upper() != "RANDOM":
            raise InputError(f"point must be coordinates or RANDOM, got {point!r}")
        certificate = is_full_rank_generic(H.matrix, seed=seed)
        if certificate.full_rank:
            return Verdict(
                property="WLP", status="HOLDS", provenance="hessian-witness",
                witness=[str(c) for c in certificate.witness], certificates=[certificate],
            )
        logger.info(f"WLP fails for {F}: generic Hessian rank deficient (schwartz-zippel)")
        return Verdict(
            property="WLP", status="FAILS", provenance="probabilistic-zero",
            certificates=[certificate], failing_degrees=[(d - 1) // 2],
        )
    if len(point) != F.nvars:
        raise InputError(f"point has {len(point)} coordinates, F has {F.nvars} variables")
    if has_full_rank(H.evaluate(point)):
        return Verdict(
            property="WLP", status="HOLDS", provenance="hessian-witness", witness=[str(Fraction(c)) for c in point]
        )
    return Verdict(
        property="WLP", status="UNKNOWN", provenance="inconclusive-at-point",
        detail=f"Hessian of order ({H.s},{H.t}) is rank deficient at {[str(Fraction(c)) for c in point]}",
    )


def _check_mode(mode: str) -> str:
    mode = mode.upper()
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def _generic_rank(matrix: PolyMatrix, mode: str, seed: int) -> RankCertificate:
    if mode == "FAST":
        return is_full_rank_generic(matrix, confidence=PIT_CONFIDENCE, seed=seed)
    return certify_generic_rank(matrix, seed=seed)


def decide_wlp(F: DualPolynomial, mode: str = "FAST", seed: int = DEFAULT_SEED) -> Verdict:
    mode = _check_mode(mode)
    d = hilbert_function(F).socle_degree
    if d == 0:
        return Verdict(property="WLP", status="HOLDS", provenance="trivial", mode=mode,
                       witness=LinearForm.coordinate(F.nvars, 0).to_list())
    for ell in candidate_forms(F.nvars, seed):
        if is_wl_element(F, ell):
            return Verdict(property="WLP", status="HOLDS", provenance="oracle-witness", mode=mode, witness=ell.to_list())

    H = _wlp_hessian(F, d)
    certificate = _generic_rank(H.matrix, mode, seed)
    if certificate.full_rank:
        if certificate.witness is None:
            return Verdict(property="WLP", status="UNKNOWN", provenance="no-witness-found", mode=mode,
                           certificates=[certificate])
        ell = LinearForm(tuple(certificate.witness))
        if not is_wl_element(F, ell):
            raise VerificationError(
                f"Hessian witness {ell.to_list()} is not a weak Lefschetz element of {F}",
                data={"F": F.to_text(), "witness": ell.to_list()},
            )
        return Verdict(property="WLP", status="HOLDS", provenance="hessian-witness", mode=mode,
                       witness=ell.to_list(), certificates=[certificate])
    provenance = _zero_provenance(certificate)
    logger.info(f"WLP fails for {F} ({provenance}, mode {mode})")
    return Verdict(property="WLP", status="FAILS", provenance=provenance, mode=mode,
                   certificates=[certificate], failing_degrees=[(d - 1) // 2])


def _common_sl_witness(F: DualPolynomial, degree_bound: int, seed: int) -> Optional[LinearForm]:
    """Random point avoiding the product of all Hessian determinants."""
    bound = max(degree_bound, 1) * 2 ** 20
    ratio = Fraction(degree_bound, 2 * bound + 1)
    samples = 1
    while ratio ** samples > PIT_CONFIDENCE:
        samples += 1
    rng = random.Random(seed)
    for _ in range(samples):
        point = [rng.randint(-bound, bound) for _ in range(F.nvars)]
        if any(point) and is_sl_element(F, LinearForm(tuple(point))):
            return LinearForm(tuple(point))
    return None


def decide_slp(F: DualPolynomial, mode: str = "FAST", seed: int = DEFAULT_SEED) -> Verdict:
    mode = _check_mode(mode)
    h = hilbert_function(F)
    d = h.socle_degree
    if d == 0:
        return Verdict(property="SLP", status="HOLDS", provenance="trivial", mode=mode,
                       witness=LinearForm.coordinate(F.nvars, 0).to_list())
    for ell in candidate_forms(F.nvars, seed):
        if is_sl_element(F, ell):
            return Verdict(property="SLP", status="HOLDS", provenance="oracle-witness", mode=mode, witness=ell.to_list())

    failing: List[int] = []
    certificates: List[RankCertificate] = []
    degree_bound = 0
    for t in range(d // 2 + 1):
        if d - 2 * t == 0:
            continue
        H = hessian(F, t)
        certificate = _generic_rank(H.matrix, mode, seed)
        degree_bound += certificate.degree_bound
        if not certificate.full_rank:
            failing.append(t)
            certificates.append(certificate)
    if failing:
        provenance = _zero_provenance(certificates[0])
        logger.info(f"SLP fails for {F} at degrees {failing} ({provenance}, mode {mode})")
        return Verdict(property="SLP", status="FAILS", provenance=provenance, mode=mode,
                       certificates=certificates, failing_degrees=failing)

    ell = _common_sl_witness(F, degree_bound, seed)
    if ell is None:
        return Verdict(property="SLP", status="UNKNOWN", provenance="no-witness-found", mode=mode,
                       detail="every Hessian is generically nonzero but no common witness was sampled")
    return Verdict(property="SLP", status="HOLDS", provenance="hessian-witness", mode=mode, witness=ell.to_list())

# -*- coding: utf-8 -*-
# File: gorenstein/families.py
# Binomial dual generators and sufficient conditions for Lefschetz properties

"""
Binomial normal form and classifiers.

Every homogeneous binomial c*(m1 - m2) is, after relabeling the variables,

    F = X1^a1 ... Xn^an * (X1^b1 ... Xr^br - X(r+1)^b(r+1) ... Xn^bn)

with b1 + ... + br = b(r+1) + ... + bn. BinomialSpec stores (n, r, a, b).
The checkers below test the hypotheses of known sufficient conditions for
WLP, SLP and the complete-intersection property; each ranges over every
admissible choice of distinguished variable and side itself, so the
result does not depend on how the input was labeled.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from gorenstein.apolarity import ci_hilbert_function, hilbert_function, sperner_stats
from gorenstein.errors import CapacityError, InputError, UnsupportedCoefficientError
from gorenstein.lefschetz import decide_wlp
from gorenstein.logger import get_logger
from gorenstein.polyring import (
    ACTIONS,
    DualPolynomial,
    ExponentVector,
    Monomial,
    OperatorPolynomial,
    monomials_of_degree,
)

logger = get_logger(__name__)

PROPERTY_RANK = {"SLP": 2, "WLP": 1}

CI_JUSTIFICATION = (
    "Every generator of J annihilates F, so R/J surjects onto A_F. x2..xn are nilpotent modulo J and the "
    "last generator reduces x1^(a+1) into the ideal they generate, so R/J is Artinian; n generators of an "
    "Artinian quotient of n variables form a regular sequence and R/J has the complete-intersection Hilbert "
    "series. Equal Hilbert functions and a surjection force R/J = A_F."
)


@dataclass(frozen=True)
class BinomialSpec:
    """Normal form (n, r, a, b) of a binomial dual generator."""

    n: int
    r: int
    a: Tuple[int, ...]
    b: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(ExponentVector(self.a)))
        object.__setattr__(self, "b", tuple(ExponentVector(self.b)))
        if len(self.a) != self.n or len(self.b) != self.n:
            raise InputError(f"a and b need {self.n} entries each")
        if self.n < 2 or not 1 <= self.r <= self.n - 1:
            raise InputError(f"need n >= 2 and 1 <= r <= n-1, got n={self.n}, r={self.r}")
        left, right = sum(self.b[: self.r]), sum(self.b[self.r :])
        if left != right:
            raise InputError(f"binomial factor is not homogeneous: {left} != {right}")
        if left == 0:
            raise InputError("binomial factor has degree 0, so m1 = m2")

    @property
    def g(self) -> Monomial:
        return Monomial(ExponentVector(self.a))

    @property
    def left(self) -> Monomial:
        return Monomial(ExponentVector(self.b[: self.r] + (0,) * (self.n - self.r)))

    @property
    def right(self) -> Monomial:
        return Monomial(ExponentVector((0,) * self.r + self.b[self.r :]))

    @property
    def m1(self) -> Monomial:
        return self.g * self.left

    @property
    def m2(self) -> Monomial:
        return self.g * self.right

    @property
    def gcd_degree(self) -> int:
        return sum(self.a)

    @property
    def factor_degree(self) -> int:
        return sum(self.b[: self.r])

    @property
    def d(self) -> int:
        return self.gcd_degree + self.factor_degree

    def factor_support(self) -> Tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.b) if e)

    def polynomial(self) -> DualPolynomial:
        return DualPolynomial(self.n, {self.m1: 1, self.m2: -1})

    def key(self) -> str:
        return f"n{self.n}r{self.r}a{','.join(map(str, self.a))}b{','.join(map(str, self.b))}"

    def canonical(self) -> "BinomialSpec":
        """Representative independent of variable labels and of the sign of F."""
        left = [i for i in range(self.r) if self.b[i]]
        right = [i for i in range(self.r, self.n) if self.b[i]]
        unused = sorted((self.a[i] for i in range(self.n) if not self.b[i]), reverse=True)

        def pairs(indices):
            return sorted(((self.b[i], self.a[i]) for i in indices), reverse=True)

        first, second = max((pairs(left), pairs(right)), (pairs(right), pairs(left)))
        b = [p[0] for p in first] + [p[0] for p in second] + [0] * len(unused)
        a = [p[1] for p in first] + [p[1] for p in second] + unused
        return BinomialSpec(self.n, len(first), tuple(a), tuple(b))

    def every_variable_occurs(self) -> bool:
        return all(x or y for x, y in zip(self.a, self.b))

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "r": self.r, "a": list(self.a), "b": list(self.b), "d": self.d, "key": self.key()}


@dataclass(frozen=True)
class NormalizedBinomial:
    """F = scale * spec.polynomial() with variable i of the spec being input variable permutation[i]."""

    spec: BinomialSpec
    permutation: Tuple[int, ...]
    scale: Fraction

    def reconstruct(self) -> DualPolynomial:
        inverse = [0] * len(self.permutation)
        for i, j in enumerate(self.permutation):
            inverse[j] = i
        return self.spec.polynomial().permute(inverse).scale(self.scale)

    def to_dict(self) -> Dict[str, Any]:
        return {"spec": self.spec.to_dict(), "permutation": list(self.permutation), "scale": str(self.scale)}


def normalize(F: DualPolynomial) -> NormalizedBinomial:
    if not isinstance(F, DualPolynomial):
        raise InputError("expected a dual polynomial in X1..Xn")
    if len(F) != 2:
        raise InputError(f"expected a binomial, got {len(F)} terms: {F}")
    if not F.is_homogeneous():
        raise InputError(f"binomial is not homogeneous: {F}")
    (first, c_first), (second, c_second) = sorted(F.terms.items())
    if c_first + c_second != 0:
        raise UnsupportedCoefficientError(
            f"coefficients {c_first} and {c_second} are not of the form c, -c",
            data={"coefficients": [str(c_first), str(c_second)]},
        )
    m1, m2 = (first, second) if c_first > 0 else (second, first)
    g = m1.gcd(m2)
    left, right = m1.quotient(g), m2.quotient(g)

    def by_exponent(monomial: Monomial) -> List[int]:
        return sorted(monomial.support(), key=lambda i: (-monomial.exponents[i], i))

    left_vars, right_vars = by_exponent(left), by_exponent(right)
    unused = [i for i in range(F.nvars) if i not in left_vars and i not in right_vars]
    permutation = tuple(left_vars + right_vars + unused)
    spec = BinomialSpec(
        F.nvars,
        len(left_vars),
        tuple(g.exponents[i] for i in permutation),
        tuple(left.exponents[i] + right.exponents[i] for i in permutation),
    )
    return NormalizedBinomial(spec, permutation, abs(c_first))


class TheoremMatch(BaseModel):
    theorem: str = Field(..., description="Theorem id")
    property: str = Field(..., description="WLP | SLP | CI | NS")
    witness: Optional[str] = Field(None, description="Lefschetz element guaranteed by the theorem")
    witness_variable: Optional[int] = Field(None, description="0-based variable index of the witness")
    ns_lower_bound: Optional[int] = None
    detail: Optional[str] = None


class ClassificationReport(BaseModel):
    spec: Dict[str, Any]
    matches: List[TheoremMatch] = Field(default_factory=list)
    overall: str = Field("UNKNOWN", description="SLP | WLP | UNKNOWN")


def check_gcd_criterion(spec: BinomialSpec) -> List[TheoremMatch]:
    """WLP when deg g < floor((d-1)/2)."""
    bound = (spec.d - 1) // 2
    if spec.gcd_degree < bound:
        return [TheoremMatch(theorem="gcd-criterion", property="WLP", detail=f"deg g = {spec.gcd_degree} < {bound}")]
    return []


def check_family4(spec: BinomialSpec) -> List[TheoremMatch]:
    """
    Distinguished variable i: the theorem's right-hand sum a_rest + b_right
    equals d - a_i on the side of the binomial not containing X_i, so
    (i) reads 2a_i > d and (ii) reads 2a_i >= d with b_i > 0.
    """
    matches = []
    for i, a_i in enumerate(spec.a):
        if 2 * a_i > spec.d:
            matches.append(
                TheoremMatch(
                    theorem="family4i", property="WLP", witness=f"x{i + 1}", witness_variable=i,
                    detail=f"2*a{i + 1} = {2 * a_i} > d = {spec.d}",
                )
            )
        if 2 * a_i >= spec.d and spec.b[i] > 0:
            matches.append(
                TheoremMatch(
                    theorem="family4ii", property="NS", witness_variable=i, ns_lower_bound=3 + 2 * a_i - spec.d,
                    detail=f"2*a{i + 1} = {2 * a_i} >= d = {spec.d}, b{i + 1} = {spec.b[i]} > 0",
                )
            )
    return matches


def _pure_power(monomial: Monomial) -> Optional[Tuple[int, int]]:
    support = monomial.support()
    if len(support) == 1:
        return support[0], monomial.exponents[support[0]]
    return None


def _gcd_variable(spec: BinomialSpec) -> Optional[Tuple[int, int]]:
    return _pure_power(spec.g)


def check_family2(spec: BinomialSpec) -> List[TheoremMatch]:
    """F = X_v^a (X_u^b - M) with a >= 1 and u != v."""
    g = _gcd_variable(spec)
    if g is None:
        return []
    v, a = g
    for side in (spec.left, spec.right):
        pure = _pure_power(side)
        if pure and pure[0] != v:
            u, b = pure
            return [TheoremMatch(theorem="family2", property="WLP", detail=f"g = X{v + 1}^{a}, pure side X{u + 1}^{b}")]
    return []


def _family1_roles(spec: BinomialSpec) -> Optional[Tuple[int, int, int, Monomial]]:
    """(u, a, b, M) with F = +-X_u^a (X_u^b - M), or None."""
    g = _gcd_variable(spec)
    if g is None:
        return None
    u, a = g
    for side, other in ((spec.left, spec.right), (spec.right, spec.left)):
        pure = _pure_power(side)
        if pure and pure[0] == u:
            return u, a, pure[1], other
    return None


def check_family1(spec: BinomialSpec) -> List[TheoremMatch]:
    """
    F = X_u^a (X_u^b - M) with a >= 1: WLP, and a complete intersection when
    a >= b - 1. With a = 0 the gcd is 1 and no match is reported; X1^b - M is
    then covered by the gcd criterion when b >= 3.
    """
    roles = _family1_roles(spec)
    if roles is None:
        return []
    u, a, b, _ = roles
    matches = [TheoremMatch(theorem="family1", property="WLP", detail=f"g = X{u + 1}^{a}, pure side X{u + 1}^{b}")]
    if a >= b - 1:
        matches.append(
            TheoremMatch(theorem="family1-ci", property="CI", detail=f"a = {a} >= b - 1 = {b - 1}")
        )
    return matches


def check_family3_5(spec: BinomialSpec) -> List[TheoremMatch]:
    """
    SLP when the binomial factor involves two (or three) variables. The
    exponents of g may be zero: A_F is the tensor product of a monomial
    complete intersection and an algebra of codimension two (or a codimension
    three binomial algebra), whichever variables g actually uses.
    """
    support = spec.factor_support()
    if len(support) == 2:
        return [TheoremMatch(theorem="family3", property="SLP", detail=f"factor support {[i + 1 for i in support]}")]
    if len(support) == 3:
        return [TheoremMatch(theorem="family5", property="SLP", detail=f"factor support {[i + 1 for i in support]}")]
    return []


def family1_ci_ideal(spec: BinomialSpec, action: str = "diff") -> List[OperatorPolynomial]:
    """
    Generators x_j^(M_j + 1) for j != u and x_u^(a+1) + c * x_u^(a-b+1) * x^M.
    Under differentiation c = (a+b)!/(a! * prod M_j!); under contraction c = 1.
    """
    roles = _family1_roles(spec)
    if roles is None:
        raise InputError(f"{spec.key()} is not of the form X_u^a (X_u^b - M)")
    u, a, b, other = roles
    if a < b - 1:
        raise InputError(f"{spec.key()}: a = {a} < b - 1 = {b - 1}, no complete-intersection ideal")
    if action not in ACTIONS:
        raise InputError(f"unknown action {action!r}; use one of {sorted(ACTIONS)}")
    n = spec.n
    generators = [
        OperatorPolynomial.from_monomial(Monomial.variable(n, j, other.exponents[j] + 1)) for j in range(n) if j != u
    ]
    if action == "diff":
        c = Fraction(math.factorial(a + b), math.factorial(a) * math.prod(math.factorial(e) for e in other.exponents))
    else:
        c = Fraction(1)
    mixed = Monomial.variable(n, u, a - b + 1) * other
    generators.append(
        OperatorPolynomial(n, {Monomial.variable(n, u, a + 1): 1, mixed: c})
    )
    return generators


class CIEvidence(BaseModel):
    holds: bool
    action: str
    generators: List[str]
    annihilating: List[bool]
    ci_degrees: List[int]
    ci_hvector: List[int]
    hvector: List[int]
    justification: str = CI_JUSTIFICATION


def verify_ci_family1(spec: BinomialSpec, action: str = "diff") -> CIEvidence:
    """J annihilates F and the complete-intersection series of J equals h(A_F)."""
    generators = family1_ci_ideal(spec, action)
    F = spec.polynomial()
    apply = ACTIONS[action]
    annihilating = [apply(p, F).is_zero() for p in generators]
    degrees = [p.degree() for p in generators]
    ci_h = ci_hilbert_function(degrees)
    h = hilbert_function(F)
    holds = all(annihilating) and ci_h == h
    if not holds:
        logger.warning(f"complete-intersection check failed for {spec.key()} ({action})")
    return CIEvidence(
        holds=holds,
        action=action,
        generators=[p.to_text() for p in generators],
        annihilating=annihilating,
        ci_degrees=degrees,
        ci_hvector=list(ci_h),
        hvector=list(h),
    )


def flat_transfer(G: DualPolynomial, p: OperatorPolynomial, seed: int = 0) -> Optional[TheoremMatch]:
    """
    WLP for F = p o G from WLP of A_G and a flat of length >= deg p + 2, with
    NS_F >= 2*floor(NS_G / 2) - deg p.
    """
    F = ACTIONS["diff"](p, G)
    if F.is_zero():
        raise InputError("p o G = 0, there is no algebra to transfer to")
    if not p.is_homogeneous():
        raise InputError(f"operator must be homogeneous: {p}")
    deg_p = p.degree()
    if decide_wlp(G, seed=seed).status != "HOLDS":
        return None
    ns = sperner_stats(hilbert_function(G)).flat_length
    if ns < deg_p + 2:
        return None
    return TheoremMatch(
        theorem="flat-transfer", property="WLP", ns_lower_bound=2 * (ns // 2) - deg_p,
        detail=f"NS_G = {ns} >= deg p + 2 = {deg_p + 2}",
    )


def _theorem_matches(spec: BinomialSpec) -> List[TheoremMatch]:
    return (
        check_gcd_criterion(spec)
        + check_family4(spec)
        + check_family2(spec)
        + check_family1(spec)
        + check_family3_5(spec)
    )


def _theorem_flat_transfer(spec: BinomialSpec) -> List[TheoremMatch]:
    """
    G = X^alpha * F with deg alpha <= 2 is again a binomial and alpha o G is F
    up to a diagonal change of variables. When the theorems give G the WLP and
    the flat of A_G has length NS_G >= deg alpha + 2, F inherits WLP.

    Only lifts meeting the family4 (ii) hypothesis are tried. NS_G is read off
    the computed h-vector of G: the family4 (ii) bound itself overshoots for
    some generators, e.g. X1^3 (X1^3 - X2^2 X3).
    """
    best: Optional[TheoremMatch] = None
    for degree in (1, 2):
        for alpha in monomials_of_degree(spec.n, degree):
            lifted = BinomialSpec(spec.n, spec.r, tuple(x + y for x, y in zip(spec.a, alpha.exponents)), spec.b)
            matches = _theorem_matches(lifted)
            if not any(m.property in PROPERTY_RANK for m in matches):
                continue
            if not any(m.theorem == "family4ii" for m in matches):
                continue
            try:
                ns = sperner_stats(hilbert_function(lifted.polynomial())).flat_length
            except CapacityError:
                continue
            if ns < degree + 2:
                continue
            bound = 2 * (ns // 2) - degree
            if best is None or bound > best.ns_lower_bound:
                best = TheoremMatch(
                    theorem="flat-transfer", property="WLP", ns_lower_bound=bound,
                    detail=f"G = {alpha.to_text('X')} * F, NS_G = {ns}",
                )
    return [best] if best else []


def overall_property(matches: Sequence[TheoremMatch]) -> str:
    ranked = [PROPERTY_RANK[m.property] for m in matches if m.property in PROPERTY_RANK]
    if not ranked:
        return "UNKNOWN"
    return "SLP" if max(ranked) == 2 else "WLP"


def classify(spec: BinomialSpec) -> ClassificationReport:
    matches = _theorem_matches(spec) + _theorem_flat_transfer(spec)
    matches.sort(key=lambda m: (m.theorem, m.witness_variable if m.witness_variable is not None else -1))
    return ClassificationReport(spec=spec.to_dict(), matches=matches, overall=overall_property(matches))

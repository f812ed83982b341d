# -*- coding: utf-8 -*-
# File: gorenstein/polyring.py
# Sparse polynomials with exact rational coefficients.

"""
Polynomial rings of a Macaulay inverse system.

The dual ring S = K[X1..Xn] holds the dual generator F, the operator ring
R = K[x1..xn] acts on it by differentiation (xi = d/dXi). Both rings are
represented sparsely: a polynomial is a map from Monomial to a nonzero
Fraction. Values are immutable and hashable.
"""

import math
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Type, TypeVar, Union

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import BasePolynomialError

from gorenstein.errors import InputError

Scalar = Union[int, Fraction]
P = TypeVar("P", bound="SparsePolynomial")

_TRANSFORMATIONS = standard_transformations + (convert_xor,)


class ExponentVector(tuple):
    """Fixed-length tuple of non-negative integer exponents."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]):
        values = tuple(int(e) for e in entries)
        if any(e < 0 for e in values):
            raise InputError(f"negative exponent in {values}")
        return super().__new__(cls, values)

    @property
    def degree(self) -> int:
        return sum(self)

    def dominates(self, other: "ExponentVector") -> bool:
        return all(a >= b for a, b in zip(self, other))


@dataclass(frozen=True, order=True, slots=True)
class Monomial:
    """A monomial, ordered by its exponent tuple (x1 > x2 > ... > xn)."""

    exponents: ExponentVector

    def __post_init__(self):
        if not isinstance(self.exponents, ExponentVector):
            object.__setattr__(self, "exponents", ExponentVector(self.exponents))

    @classmethod
    def one(cls, nvars: int) -> "Monomial":
        return cls(ExponentVector((0,) * nvars))

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "Monomial":
        exps = [0] * nvars
        exps[index] = power
        return cls(ExponentVector(exps))

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return self.exponents.degree

    def divides(self, other: "Monomial") -> bool:
        return other.exponents.dominates(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(ExponentVector(a + b for a, b in zip(self.exponents, other.exponents)))

    def quotient(self, divisor: "Monomial") -> "Monomial":
        return Monomial(ExponentVector(a - b for a, b in zip(self.exponents, divisor.exponents)))

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(ExponentVector(min(a, b) for a, b in zip(self.exponents, other.exponents)))

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e)

    def permute(self, permutation: Sequence[int]) -> "Monomial":
        """Relabel variables: position i of the result holds exponent permutation[i]."""
        return Monomial(ExponentVector(self.exponents[j] for j in permutation))

    def to_text(self, prefix: str = "X") -> str:
        factors = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                factors.append(f"{prefix}{i + 1}")
            elif e > 1:
                factors.append(f"{prefix}{i + 1}^{e}")
        return "*".join(factors) if factors else "1"


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class SparsePolynomial:
    """Immutable sparse polynomial over Q in a fixed number of variables."""

    __slots__ = ("_nvars", "_terms", "_hash")
    VARIABLE_PREFIX = "X"

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, Scalar]] = None):
        if nvars < 1:
            raise InputError("a polynomial ring needs at least one variable")
        cleaned: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if m.nvars != nvars:
                raise InputError(f"monomial {m.exponents} does not live in {nvars} variables")
            c = Fraction(c)
            if c:
                cleaned[m] = c
        self._nvars = nvars
        self._terms = cleaned
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls: Type[P], nvars: int) -> P:
        return cls(nvars)

    @classmethod
    def constant(cls: Type[P], nvars: int, value: Scalar) -> P:
        return cls(nvars, {Monomial.one(nvars): value})

    @classmethod
    def variable(cls: Type[P], nvars: int, index: int) -> P:
        return cls(nvars, {Monomial.variable(nvars, index): 1})

    @classmethod
    def from_monomial(cls: Type[P], monomial: Monomial, coefficient: Scalar = 1) -> P:
        return cls(monomial.nvars, {monomial: coefficient})

    @classmethod
    def from_exponents(cls: Type[P], nvars: int, items: Iterable[Tuple[Sequence[int], Scalar]]) -> P:
        terms: Dict[Monomial, Fraction] = defaultdict(Fraction)
        for exps, c in items:
            terms[Monomial(ExponentVector(exps))] += Fraction(c)
        return cls(nvars, terms)

    @classmethod
    def parse(cls: Type[P], text: str, nvars: Optional[int] = None) -> P:
        return parse_polynomial(text, nvars=nvars, kind=cls)

    # -- inspection ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def monomials(self) -> List[Monomial]:
        """Support, highest degree first, then descending exponent order."""
        return sorted(self._terms, key=lambda m: (m.degree, m), reverse=True)

    def degree(self) -> int:
        if not self._terms:
            raise InputError("the zero polynomial has no degree")
        return max(m.degree for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self._terms}) <= 1

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        """Largest monomial in lexicographic order and its coefficient."""
        m = max(self._terms)
        return m, self._terms[m]

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self._nvars:
            raise InputError(f"point has {len(point)} coordinates, ring has {self._nvars} variables")
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for v, e in zip(values, m.exponents):
                if e:
                    term *= v ** e
                    if not term:
                        break
            total += term
        return total

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "SparsePolynomial") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other._nvars != self._nvars:
            raise InputError(f"variable-count mismatch: {self._nvars} vs {other._nvars}")

    def _new(self: P, terms: Mapping[Monomial, Fraction]) -> P:
        return type(self)(self._nvars, terms)

    def __add__(self: P, other: P) -> P:
        self._check_compatible(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return self._new(terms)

    def __sub__(self: P, other: P) -> P:
        return self + (-other)

    def __neg__(self: P) -> P:
        return self._new({m: -c for m, c in self._terms.items()})

    def scale(self: P, factor: Scalar) -> P:
        factor = Fraction(factor)
        return self._new({m: c * factor for m, c in self._terms.items()})

    def __mul__(self: P, other) -> P:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_compatible(other)
        terms: Dict[Monomial, Fraction] = defaultdict(Fraction)
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                terms[m1 * m2] += c1 * c2
        return self._new(terms)

    def __rmul__(self: P, other) -> P:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self: P, exponent: int) -> P:
        if exponent < 0:
            raise InputError("negative powers are not polynomials")
        result = type(self).constant(self._nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def divide_exact(self: P, divisor: P) -> P:
        """Quotient of an exact division; raises ArithmeticError when a remainder is left."""
        self._check_compatible(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_m, lead_c = divisor.leading_term()
        remainder = dict(self._terms)
        quotient: Dict[Monomial, Fraction] = {}
        while remainder:
            m = max(remainder)
            if not lead_m.divides(m):
                raise ArithmeticError("division is not exact")
            q_m = m.quotient(lead_m)
            q_c = remainder[m] / lead_c
            quotient[q_m] = q_c
            for dm, dc in divisor._terms.items():
                key = q_m * dm
                value = remainder.get(key, 0) - q_c * dc
                if value:
                    remainder[key] = value
                else:
                    remainder.pop(key, None)
        return self._new(quotient)

    def permute(self: P, permutation: Sequence[int]) -> P:
        return self._new({m.permute(permutation): c for m, c in self._terms.items()})

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._nvars, frozenset(self._terms.items())))
        return self._hash

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m in self.monomials():
            c = self._terms[m]
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            body = m.to_text(self.VARIABLE_PREFIX)
            if body == "1":
                text = _format_coefficient(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{_format_coefficient(magnitude)}*{body}"
            pieces.append((sign, text))
        first_sign, first_text = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_text()!r}, nvars={self._nvars})"


class DualPolynomial(SparsePolynomial):
    """Element of the dual ring S = K[X1..Xn]."""

    __slots__ = ()
    VARIABLE_PREFIX = "X"


class OperatorPolynomial(SparsePolynomial):
    """Element of the operator ring R = K[x1..xn], xi acting as d/dXi."""

    __slots__ = ()
    VARIABLE_PREFIX = "x"


_VARIABLE_NAME = re.compile(r"^([A-Za-z])(\d+)$")


def parse_polynomial(
    text: str, nvars: Optional[int] = None, kind: Type[P] = DualPolynomial
) -> P:
    """
    Parse `c*X1^a1*...*Xn^an +- ...`. Products and powers of sums are
    expanded, rational coefficients are written p/q. Variable names are the
    ring's prefix (either case) followed by a 1-based index.
    """
    try:
        expr = parse_expr(text, transformations=_TRANSFORMATIONS)
    except Exception as e:
        raise InputError(f"cannot parse polynomial {text!r}: {e}")
    if not isinstance(expr, sympy.Expr):
        raise InputError(f"{text!r} is not a polynomial expression")
    prefix = kind.VARIABLE_PREFIX.lower()
    by_index: Dict[int, sympy.Symbol] = {}
    for symbol in expr.free_symbols:
        match = _VARIABLE_NAME.match(symbol.name)
        if not match or match.group(1).lower() != prefix or int(match.group(2)) < 1:
            raise InputError(
                f"unknown variable {symbol.name!r}; use {kind.VARIABLE_PREFIX}1, {kind.VARIABLE_PREFIX}2, ..."
            )
        index = int(match.group(2))
        if index in by_index:
            raise InputError(f"variable {index} is written in two different cases")
        by_index[index] = symbol
    highest = max(by_index, default=0)
    if nvars is None:
        if highest == 0:
            raise InputError("cannot infer the number of variables of a constant; pass nvars")
        nvars = highest
    elif nvars < highest:
        raise InputError(f"polynomial uses variable {highest} but nvars={nvars}")
    gens = [by_index.get(i, sympy.Symbol(f"{kind.VARIABLE_PREFIX}{i}")) for i in range(1, nvars + 1)]
    try:
        poly = sympy.Poly(expr, *gens, domain="QQ")
    except BasePolynomialError as e:
        raise InputError(f"{text!r} is not a polynomial: {e}")
    items = []
    for exps, coeff in poly.terms():
        rational = sympy.Rational(coeff)
        items.append((exps, Fraction(int(rational.p), int(rational.q))))
    return kind.from_exponents(nvars, items)


def _check_action_operands(p: OperatorPolynomial, F: DualPolynomial) -> None:
    if not isinstance(p, OperatorPolynomial) or not isinstance(F, DualPolynomial):
        raise InputError("the action takes an operator polynomial and a dual polynomial")
    if p.nvars != F.nvars:
        raise InputError(f"variable-count mismatch: operator has {p.nvars}, dual has {F.nvars}")


def _act(p: OperatorPolynomial, F: DualPolynomial, with_factorials: bool) -> DualPolynomial:
    _check_action_operands(p, F)
    result: Dict[Monomial, Fraction] = defaultdict(Fraction)
    for alpha, c in p.terms.items():
        for beta, f in F.terms.items():
            if not beta.exponents.dominates(alpha.exponents):
                continue
            coeff = c * f
            if with_factorials:
                coeff *= math.prod(math.perm(b, a) for b, a in zip(beta.exponents, alpha.exponents))
            result[beta.quotient(alpha)] += coeff
    return DualPolynomial(F.nvars, result)


def diff_apply(p: OperatorPolynomial, F: DualPolynomial) -> DualPolynomial:
    """p o F with xi acting as the partial derivative d/dXi."""
    return _act(p, F, with_factorials=True)


def contract_apply(p: OperatorPolynomial, F: DualPolynomial) -> DualPolynomial:
    """p o F with x^a o X^b = X^(b-a) (no factorials)."""
    return _act(p, F, with_factorials=False)


ACTIONS = {"diff": diff_apply, "contract": contract_apply}


def _compositions(nvars: int, total: int) -> Iterator[Tuple[int, ...]]:
    if nvars == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(nvars - 1, total - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _monomials_of_degree(nvars: int, degree: int) -> Tuple[Monomial, ...]:
    return tuple(Monomial(ExponentVector(e)) for e in _compositions(nvars, degree))


def monomials_of_degree(nvars: int, degree: int) -> List[Monomial]:
    """
    All monomials of the given degree, x1-heaviest first (descending exponent
    tuples): for n=3, t=5 the list starts x1^5, x1^4*x2, x1^4*x3, x1^3*x2^2.
    """
    if nvars < 1 or degree < 0:
        raise InputError(f"need nvars >= 1 and degree >= 0, got ({nvars}, {degree})")
    return list(_monomials_of_degree(nvars, degree))


def monomial_count(nvars: int, degree: int) -> int:
    return math.comb(degree + nvars - 1, nvars - 1)

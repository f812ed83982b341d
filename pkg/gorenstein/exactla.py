# -*- coding: utf-8 -*-
# File: gorenstein/exactla.py
# Exact linear algebra over Q and over Q[X1..Xn]

"""
Exact linear algebra for catalecticants, multiplication maps and Hessians.

Rank and determinant use fraction-free (Bareiss) elimination on sparse
integer rows; rows with rational entries are cleared of denominators first,
which changes neither the rank nor, up to the recorded scale, the
determinant. Pivots follow the Markowitz rule (least fill), ties broken by
the lowest (row, col).

Polynomial matrices are eliminated the same way over Q[X1..Xn], with exact
polynomial division. Deciding whether a large Hessian determinant vanishes
identically is randomized (Schwartz-Zippel) or certified along a random
line; every parameter of those decisions is part of the returned
certificate.
"""

import math
import random
from collections import Counter
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from gorenstein.config import DEFAULT_SEED, MAX_LINE_POINTS, MODULAR_PRIME, PIT_CONFIDENCE, SYMBOLIC_DET_CAP
from gorenstein.errors import CapacityError, InputError
from gorenstein.logger import get_logger
from gorenstein.polyring import DualPolynomial, Scalar

logger = get_logger(__name__)

Index = Tuple[int, int]


class RationalMatrix:
    """Immutable sparse matrix over Q; zero entries are never stored."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Index, Scalar]] = None):
        if rows < 0 or cols < 0:
            raise InputError(f"invalid shape {rows}x{cols}")
        cleaned: Dict[Index, Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise InputError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            v = Fraction(v)
            if v:
                cleaned[i, j] = v
        self.rows = rows
        self.cols = cols
        self._entries = cleaned

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[Scalar]]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        if any(len(r) != cols for r in data):
            raise InputError("ragged rows")
        return cls(rows, cols, {(i, j): v for i, r in enumerate(data) for j, v in enumerate(r)})

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, Scalar]], cols: int) -> "RationalMatrix":
        return cls(len(rows), cols, {(i, j): v for i, r in enumerate(rows) for j, v in r.items()})

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls(size, size, {(i, i): 1 for i in range(size)})

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> Mapping[Index, Fraction]:
        return dict(self._entries)

    def __getitem__(self, index: Index) -> Fraction:
        return self._entries.get(index, Fraction(0))

    def nnz(self) -> int:
        return len(self._entries)

    def sparse_rows(self) -> List[Dict[int, Fraction]]:
        out: List[Dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        col_pos = {c: k for k, c in enumerate(cols)}
        row_pos = {r: k for k, r in enumerate(rows)}
        return RationalMatrix(
            len(rows),
            len(cols),
            {(row_pos[i], col_pos[j]): v for (i, j), v in self._entries.items() if i in row_pos and j in col_pos},
        )

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"


def _integer_rows(matrix: RationalMatrix) -> Tuple[Dict[int, Dict[int, int]], List[int]]:
    """Nonzero rows scaled to integers, keyed by row index, plus every row's scale."""
    rows: Dict[int, Dict[int, int]] = {}
    scales = [1] * matrix.rows
    for i, row in enumerate(matrix.sparse_rows()):
        if not row:
            continue
        scale = math.lcm(*(v.denominator for v in row.values()))
        scales[i] = scale
        rows[i] = {j: int(v * scale) for j, v in row.items()}
    return rows, scales


def _markowitz_pivot(rows: Mapping[int, Mapping[int, object]], weight=None) -> Index:
    col_counts = Counter(j for row in rows.values() for j in row)
    best: Optional[Tuple] = None
    for i, row in rows.items():
        r = len(row) - 1
        for j, v in row.items():
            key = (r * (col_counts[j] - 1), weight(v) if weight else 0, i, j)
            if best is None or key < best:
                best = key
    return best[-2], best[-1]


def _bareiss(rows: Dict[int, Dict[int, int]]) -> Tuple[List[Index], int]:
    """Fraction-free elimination; returns the pivot positions and the last pivot."""
    prev = 1
    pivots: List[Index] = []
    while rows:
        i, j = _markowitz_pivot(rows)
        prow = rows.pop(i)
        p = prow[j]
        for k in list(rows):
            row = rows[k]
            a = row.get(j, 0)
            if a:
                new = {}
                for c in row.keys() | prow.keys():
                    v = p * row.get(c, 0) - a * prow.get(c, 0)
                    if v:
                        new[c] = v // prev
            else:
                new = {c: p * v // prev for c, v in row.items()}
            if new:
                rows[k] = new
            else:
                del rows[k]
        pivots.append((i, j))
        prev = p
    return pivots, prev


def _permutation_sign(pivots: Sequence[Index]) -> int:
    """Sign of the permutation sending pivot row i_k to pivot column j_k."""
    mapping = {i: j for i, j in pivots}
    sign, seen = 1, set()
    for start in mapping:
        if start in seen:
            continue
        length, node = 0, start
        while node not in seen:
            seen.add(node)
            node = mapping[node]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def modular_rank(matrix: RationalMatrix, prime: int = MODULAR_PRIME) -> Tuple[int, List[int], List[int]]:
    """Rank over GF(prime) with the pivot rows and columns that realize it."""
    rows, _ = _integer_rows(matrix)
    basis: List[Tuple[int, Dict[int, int]]] = []
    pivot_rows: List[int] = []
    for i in sorted(rows):
        vec = {j: v % prime for j, v in rows[i].items() if v % prime}
        for pc, b in basis:
            a = vec.get(pc)
            if a:
                for c, bv in b.items():
                    v = (vec.get(c, 0) - a * bv) % prime
                    if v:
                        vec[c] = v
                    else:
                        vec.pop(c, None)
        if vec:
            pc = min(vec)
            inv = pow(vec[pc], -1, prime)
            basis.append((pc, {c: v * inv % prime for c, v in vec.items()}))
            pivot_rows.append(i)
    return len(basis), pivot_rows, [pc for pc, _ in basis]


def rank(matrix: RationalMatrix, prepass: bool = False) -> int:
    """
    Exact rank over Q. With prepass, a full modular rank confirmed by an exact
    nonzero determinant on its pivot minor is returned without the full
    elimination; every other case falls through to Bareiss.
    """
    if prepass:
        r, pivot_rows, pivot_cols = modular_rank(matrix)
        if r == min(matrix.shape) and det(matrix.submatrix(pivot_rows, pivot_cols)) != 0:
            return r
    rows, _ = _integer_rows(matrix)
    pivots, _ = _bareiss(rows)
    return len(pivots)


def has_full_rank(matrix: RationalMatrix) -> bool:
    return rank(matrix, prepass=True) == min(matrix.shape)


def det(matrix: RationalMatrix) -> Fraction:
    """Exact determinant of a square matrix."""
    if matrix.rows != matrix.cols:
        raise InputError(f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix")
    if matrix.rows == 0:
        return Fraction(1)
    rows, scales = _integer_rows(matrix)
    if len(rows) < matrix.rows:
        return Fraction(0)
    pivots, last = _bareiss(rows)
    if len(pivots) < matrix.rows:
        return Fraction(0)
    return Fraction(_permutation_sign(pivots) * last, math.prod(scales))


class RowEchelon:
    """Incrementally grown echelon basis of integer row vectors."""

    def __init__(self):
        self._basis: List[Tuple[int, Dict[int, int]]] = []

    def __len__(self) -> int:
        return len(self._basis)

    def reduce(self, vector: Mapping[int, Scalar]) -> Dict[int, int]:
        vec = _clear_denominators(vector)
        for pc, b in self._basis:
            a = vec.get(pc)
            if not a:
                continue
            bp = b[pc]
            new = {}
            for c in vec.keys() | b.keys():
                v = bp * vec.get(c, 0) - a * b.get(c, 0)
                if v:
                    new[c] = v
            content = math.gcd(*new.values()) if new else 1
            vec = {c: v // content for c, v in new.items()}
        return vec

    def add(self, vector: Mapping[int, Scalar]) -> bool:
        """Insert the vector; False when it already lies in the span."""
        vec = self.reduce(vector)
        if not vec:
            return False
        self._basis.append((min(vec), vec))
        return True


def _clear_denominators(vector: Mapping[int, Scalar]) -> Dict[int, int]:
    values = {j: Fraction(v) for j, v in vector.items() if v}
    if not values:
        return {}
    scale = math.lcm(*(v.denominator for v in values.values()))
    return {j: int(v * scale) for j, v in values.items()}


def solve_coordinates(basis: RationalMatrix, targets: RationalMatrix) -> RationalMatrix:
    """
    Coordinates C with C * basis = targets, for a basis of independent rows.
    Row i of the result expresses target row i in the basis rows.
    """
    if basis.cols != targets.cols:
        raise InputError("basis and targets live in spaces of different dimension")
    h, m = basis.rows, targets.rows
    # Solve basis^T * C^T = targets^T by Gauss-Jordan on the augmented columns.
    system = [[basis[i, j] for i in range(h)] + [targets[t, j] for t in range(m)] for j in range(basis.cols)]
    pivot_cols: List[int] = []
    r = 0
    for c in range(h):
        pivot = next((k for k in range(r, len(system)) if system[k][c]), None)
        if pivot is None:
            raise InputError("basis rows are linearly dependent")
        system[r], system[pivot] = system[pivot], system[r]
        inv = 1 / system[r][c]
        system[r] = [v * inv for v in system[r]]
        for k in range(len(system)):
            if k != r and system[k][c]:
                factor = system[k][c]
                system[k] = [v - factor * w for v, w in zip(system[k], system[r])]
        pivot_cols.append(c)
        r += 1
    if any(v for row in system[r:] for v in row[h:]):
        raise InputError("a target vector is not in the span of the basis")
    return RationalMatrix(m, h, {(t, c): system[c][h + t] for c in range(h) for t in range(m)})


class PolyMatrix:
    """Sparse matrix of homogeneous dual polynomials sharing one degree."""

    __slots__ = ("rows", "cols", "nvars", "degree", "_entries")

    def __init__(self, rows: int, cols: int, nvars: int, entries: Optional[Mapping[Index, DualPolynomial]] = None):
        cleaned: Dict[Index, DualPolynomial] = {}
        degrees = set()
        for (i, j), poly in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise InputError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            if poly.nvars != nvars:
                raise InputError("entry lives in a ring with a different number of variables")
            if poly.is_zero():
                continue
            if not poly.is_homogeneous():
                raise InputError(f"entry ({i}, {j}) is not homogeneous")
            degrees.add(poly.degree())
            cleaned[i, j] = poly
        if len(degrees) > 1:
            raise InputError(f"entries have mixed degrees {sorted(degrees)}")
        self.rows = rows
        self.cols = cols
        self.nvars = nvars
        self.degree = degrees.pop() if degrees else 0
        self._entries = cleaned

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[DualPolynomial]], nvars: int) -> "PolyMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, nvars, {(i, j): p for i, r in enumerate(data) for j, p in enumerate(r)})

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> Mapping[Index, DualPolynomial]:
        return dict(self._entries)

    def __getitem__(self, index: Index) -> DualPolynomial:
        return self._entries.get(index, DualPolynomial.zero(self.nvars))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.cols, self.rows, self.nvars, {(j, i): p for (i, j), p in self._entries.items()})

    def evaluate(self, point: Sequence[Scalar]) -> RationalMatrix:
        return RationalMatrix(self.rows, self.cols, {ij: p.evaluate(point) for ij, p in self._entries.items()})

    def to_text_rows(self) -> List[List[str]]:
        return [[self[i, j].to_text() for j in range(self.cols)] for i in range(self.rows)]

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols}, degree={self.degree}, nnz={len(self._entries)})"


def _poly_bareiss(matrix: PolyMatrix) -> Tuple[List[Index], DualPolynomial]:
    rows: Dict[int, Dict[int, DualPolynomial]] = {}
    for (i, j), p in matrix.entries.items():
        rows.setdefault(i, {})[j] = p
    prev = DualPolynomial.constant(matrix.nvars, 1)
    pivots: List[Index] = []
    while rows:
        i, j = _markowitz_pivot(rows, weight=len)
        prow = rows.pop(i)
        p = prow[j]
        for k in list(rows):
            row = rows[k]
            a = row.get(j)
            new = {}
            for c in (row.keys() | prow.keys()) if a else row.keys():
                v = p * row[c] if c in row else DualPolynomial.zero(matrix.nvars)
                if a and c in prow:
                    v = v - a * prow[c]
                if v:
                    new[c] = v.divide_exact(prev)
            if new:
                rows[k] = new
            else:
                del rows[k]
        pivots.append((i, j))
        prev = p
    return pivots, prev


def _check_symbolic_cap(matrix: PolyMatrix, cap: int) -> None:
    if max(matrix.shape) > cap:
        raise CapacityError(
            f"{matrix.rows}x{matrix.cols} matrix exceeds the symbolic cap {cap}; use is_det_nonzero",
            data={"rows": matrix.rows, "cols": matrix.cols, "cap": cap},
        )


def symbolic_det(matrix: PolyMatrix, cap: int = SYMBOLIC_DET_CAP) -> DualPolynomial:
    """Exact determinant over Q[X1..Xn] by fraction-free elimination."""
    if matrix.rows != matrix.cols:
        raise InputError(f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix")
    _check_symbolic_cap(matrix, cap)
    if matrix.rows == 0:
        return DualPolynomial.constant(matrix.nvars, 1)
    pivots, last = _poly_bareiss(matrix)
    if len(pivots) < matrix.rows:
        return DualPolynomial.zero(matrix.nvars)
    return last.scale(_permutation_sign(pivots))


def symbolic_rank(matrix: PolyMatrix, cap: int = SYMBOLIC_DET_CAP) -> int:
    """Rank over the function field Q(X1..Xn)."""
    _check_symbolic_cap(matrix, cap)
    pivots, _ = _poly_bareiss(matrix)
    return len(pivots)


class RankCertificate(BaseModel):
    """Outcome of a generic full-rank decision and the parameters that produced it."""

    full_rank: bool = Field(..., description="True when a witness point was found")
    method: str = Field(..., description="schwartz-zippel | line-interpolation | symbolic")
    witness: Optional[List[int]] = Field(None, description="Point where the evaluated matrix has full rank")
    degree_bound: int = Field(..., description="Degree bound of the maximal minors")
    target_rank: int
    seed: Optional[int] = None
    bound: Optional[int] = Field(None, description="Coordinates sampled from [-bound, bound]")
    samples: int = Field(0, description="Random points evaluated")
    confidence: Optional[str] = Field(None, description="Failure probability bound of a negative answer")
    base: Optional[List[int]] = None
    direction: Optional[List[int]] = None


def _structured_points(nvars: int) -> Iterable[List[int]]:
    for i in range(nvars):
        yield [1 if k == i else 0 for k in range(nvars)]
    if nvars > 1:
        yield [1] * nvars


def _full_rank_at(matrix: PolyMatrix, point: Sequence[int]) -> bool:
    return has_full_rank(matrix.evaluate(point))


def is_full_rank_generic(
    matrix: PolyMatrix, confidence: Fraction = PIT_CONFIDENCE, seed: int = DEFAULT_SEED
) -> RankCertificate:
    """
    Decide whether the maximal minors of a polynomial matrix vanish
    identically. A positive answer carries a witness point and is always
    right; a negative answer is wrong with probability at most `confidence`.
    """
    confidence = Fraction(confidence)
    if not 0 < confidence < 1:
        raise InputError(f"confidence must lie in (0, 1), got {confidence}")
    target = min(matrix.shape)
    degree_bound = target * matrix.degree
    if target == 0:
        return RankCertificate(
            full_rank=True, method="schwartz-zippel", witness=[1] + [0] * (matrix.nvars - 1),
            degree_bound=0, target_rank=0,
        )
    for point in _structured_points(matrix.nvars):
        if _full_rank_at(matrix, point):
            return RankCertificate(
                full_rank=True, method="schwartz-zippel", witness=point,
                degree_bound=degree_bound, target_rank=target,
            )
    if degree_bound == 0:
        # Constant matrix: one evaluation decides.
        return RankCertificate(
            full_rank=False, method="schwartz-zippel", degree_bound=0,
            target_rank=target, samples=0, confidence="0",
        )
    bound = degree_bound * 2 ** 20
    ratio = Fraction(degree_bound, 2 * bound + 1)
    samples = 1
    while ratio ** samples > confidence:
        samples += 1
    logger.debug(
        f"schwartz-zippel on {matrix.rows}x{matrix.cols}: degree bound {degree_bound}, "
        f"B={bound}, k={samples}, seed={seed}"
    )
    rng = random.Random(seed)
    for _ in range(samples):
        point = [rng.randint(-bound, bound) for _ in range(matrix.nvars)]
        if _full_rank_at(matrix, point):
            return RankCertificate(
                full_rank=True, method="schwartz-zippel", witness=point, degree_bound=degree_bound,
                target_rank=target, seed=seed, bound=bound, samples=samples, confidence=str(confidence),
            )
    return RankCertificate(
        full_rank=False, method="schwartz-zippel", degree_bound=degree_bound, target_rank=target,
        seed=seed, bound=bound, samples=samples, confidence=str(confidence),
    )


def is_det_nonzero(
    matrix: PolyMatrix, confidence: Fraction = PIT_CONFIDENCE, seed: int = DEFAULT_SEED
) -> RankCertificate:
    """Schwartz-Zippel test that det(matrix) is not the zero polynomial."""
    if matrix.rows != matrix.cols:
        raise InputError(f"determinant of a non-square {matrix.rows}x{matrix.cols} matrix")
    return is_full_rank_generic(matrix, confidence=confidence, seed=seed)


def line_rank_certificate(
    matrix: PolyMatrix, seed: int = DEFAULT_SEED, max_points: int = MAX_LINE_POINTS
) -> RankCertificate:
    """
    Evaluate along the random line base + s*direction at degree_bound + 1
    distinct parameters. Each maximal minor restricted to the line has degree
    at most degree_bound, so rank deficiency at every parameter proves the
    minors vanish on the whole line.
    """
    target = min(matrix.shape)
    degree_bound = target * matrix.degree
    points = degree_bound + 1
    if points > max_points:
        raise CapacityError(
            f"line certificate needs {points} evaluations, cap is {max_points}",
            data={"points": points, "cap": max_points},
        )
    bound = max(degree_bound, 1) * 2 ** 20
    rng = random.Random(seed)
    base = [rng.randint(-bound, bound) for _ in range(matrix.nvars)]
    direction = [rng.randint(-bound, bound) for _ in range(matrix.nvars)]
    logger.debug(f"line certificate: {points} points, seed={seed}")
    for s in range(points):
        point = [b + s * v for b, v in zip(base, direction)]
        if _full_rank_at(matrix, point):
            return RankCertificate(
                full_rank=True, method="line-interpolation", witness=point, degree_bound=degree_bound,
                target_rank=target, seed=seed, bound=bound, samples=s + 1, base=base, direction=direction,
            )
    return RankCertificate(
        full_rank=False, method="line-interpolation", degree_bound=degree_bound, target_rank=target,
        seed=seed, bound=bound, samples=points, base=base, direction=direction,
    )


def certify_generic_rank(matrix: PolyMatrix, seed: int = DEFAULT_SEED) -> RankCertificate:
    """
    Decide generic full rank with a proof: symbolic elimination within the
    symbolic cap, the line certificate beyond it.
    """
    target = min(matrix.shape)
    degree_bound = target * matrix.degree
    if max(matrix.shape) <= SYMBOLIC_DET_CAP:
        full = symbolic_rank(matrix) == target
        witness = None
        if full:
            found = is_full_rank_generic(matrix, seed=seed)
            witness = found.witness
        return RankCertificate(
            full_rank=full, method="symbolic", witness=witness, degree_bound=degree_bound, target_rank=target,
            seed=seed,
        )
    return line_rank_certificate(matrix, seed=seed)

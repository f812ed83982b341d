# -*- coding: utf-8 -*-
# File: gorenstein/harness.py
# Enumerate binomial dual generators and cross-check classifiers against the rank oracle

import hashlib
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Dict, Iterator, List, Optional, Set, Tuple

from pydantic import BaseModel, Field
from tqdm import tqdm

from gorenstein.apolarity import catalecticant, graded_basis, hilbert_function, sperner_stats
from gorenstein.config import DEFAULT_SEED
from gorenstein.errors import CapacityError, InputError
from gorenstein.exactla import has_full_rank, rank, symbolic_det
from gorenstein.families import (
    BinomialSpec,
    ClassificationReport,
    PROPERTY_RANK,
    classify,
    verify_ci_family1,
)
from gorenstein.lefschetz import (
    LinearForm,
    Verdict,
    decide_slp,
    decide_wlp,
    hessian,
    is_sl_element,
    is_wl_element,
    map_rank,
    mixed_hessian,
)
from gorenstein.logger import get_logger
from gorenstein.polyring import DualPolynomial, Monomial, monomials_of_degree, parse_polynomial

logger = get_logger(__name__)


class SweepBounds(BaseModel):
    max_vars: int = Field(..., ge=1)
    max_degree: int = Field(..., ge=1)
    min_vars: int = Field(2, ge=1)
    max_gcd_degree: Optional[int] = Field(None, ge=0)
    large_gcd_only: bool = Field(False, description="Only deg g >= floor((d-1)/2)")
    mode: str = Field("FAST", pattern="^(FAST|CERTIFY)$")
    seed: int = Field(DEFAULT_SEED, ge=0)
    jobs: int = Field(1, ge=1)


class CrossCheckRecord(BaseModel):
    key: str
    spec: Dict
    seed: int
    mode: str
    status: str = Field(..., description="OK | SKIPPED")
    hvector: Optional[List[int]] = None
    sperner: Optional[Dict] = None
    classification: Optional[ClassificationReport] = None
    wlp: Optional[Verdict] = None
    slp: Optional[Verdict] = None
    ci_verified: Optional[bool] = None
    violations: List[str] = Field(default_factory=list)
    unconfirmed: List[str] = Field(default_factory=list, description="Guaranteed properties without a HOLDS verdict")
    ns_refutations: List[str] = Field(default_factory=list, description="Published NS bounds above the computed NS")
    agreement: bool = True
    reason: Optional[str] = None
    elapsed_ms: int = 0


class SweepSummary(BaseModel):
    total: int = 0
    computed: int = 0
    resumed: int = 0
    agreements: int = 0
    disagreements: int = 0
    theorem_covered: int = 0
    unknown: int = 0
    wlp_failures: int = 0
    slp_failures: int = 0
    skipped: int = 0
    uncertified_failures: int = 0
    unconfirmed: int = 0
    ns_refutations: int = 0

    def add(self, record: CrossCheckRecord) -> None:
        self.total += 1
        if record.unconfirmed:
            self.unconfirmed += 1
        if record.status == "SKIPPED":
            self.skipped += 1
            return
        if record.agreement:
            self.agreements += 1
        else:
            self.disagreements += 1
        if record.ns_refutations:
            self.ns_refutations += 1
        if record.classification and record.classification.overall != "UNKNOWN":
            self.theorem_covered += 1
        else:
            self.unknown += 1
        for verdict in (record.wlp, record.slp):
            if verdict and verdict.status == "FAILS":
                if verdict.property == "WLP":
                    self.wlp_failures += 1
                else:
                    self.slp_failures += 1
                if not verdict.certificates:
                    self.uncertified_failures += 1


def _partitions(total: int, parts: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Non-increasing tuples of `parts` positive integers summing to total."""
    largest = total if largest is None else largest
    if parts == 1:
        if 1 <= total <= largest:
            yield (total,)
        return
    for first in range(min(total - parts + 1, largest), 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _gcd_exponents(n: int, degree: int, unused: int) -> Iterator[Tuple[int, ...]]:
    """Exponent vectors of g; the last `unused` variables need a positive exponent."""
    for m in monomials_of_degree(n, degree):
        exps = m.exponents
        if all(exps[i] > 0 for i in range(n - unused, n)):
            yield tuple(exps)


def enumerate_specs(bounds: SweepBounds) -> Iterator[BinomialSpec]:
    """Canonical specs in which every variable occurs, sorted by (n, r, a, b)."""
    found: Dict[str, BinomialSpec] = {}
    for n in range(max(bounds.min_vars, 2), bounds.max_vars + 1):
        for d in range(1, bounds.max_degree + 1):
            for e in range(1, d + 1):
                gcd_degree = d - e
                if bounds.max_gcd_degree is not None and gcd_degree > bounds.max_gcd_degree:
                    continue
                if bounds.large_gcd_only and gcd_degree < (d - 1) // 2:
                    continue
                for r in range(1, n):
                    for q in range(1, n - r + 1):
                        unused = n - r - q
                        for left in _partitions(e, r):
                            for right in _partitions(e, q):
                                b = left + right + (0,) * unused
                                for a in _gcd_exponents(n, gcd_degree, unused):
                                    spec = BinomialSpec(n, r, a, b).canonical()
                                    found.setdefault(spec.key(), spec)
    yield from sorted(found.values(), key=lambda s: (s.n, s.r, s.a, s.b))


def derive_seed(seed: int, key: str) -> int:
    """Per-spec seed, independent of scheduling."""
    digest = hashlib.sha256(f"{seed}:{key}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def _check_theorems(spec: BinomialSpec, F: DualPolynomial, report: ClassificationReport, ns: int,
                    wlp: Verdict, slp: Verdict) -> Tuple[List[str], List[str], Optional[bool]]:
    """Property violations, NS bound refutations and the CI verification result."""
    violations: List[str] = []
    refutations: List[str] = []
    ci_verified: Optional[bool] = None
    for match in report.matches:
        if match.property in ("WLP", "SLP") and wlp.status == "FAILS":
            violations.append(f"{match.theorem} guarantees WLP, oracle says FAILS")
        if match.property == "SLP" and slp.status == "FAILS":
            violations.append(f"{match.theorem} guarantees SLP, oracle says FAILS")
        if match.witness_variable is not None and match.property == "WLP":
            if not is_wl_element(F, LinearForm.coordinate(spec.n, match.witness_variable)):
                violations.append(f"{match.theorem} witness {match.witness} is not a weak Lefschetz element")
        if match.ns_lower_bound is not None and match.ns_lower_bound > ns:
            refutations.append(f"{match.theorem} bound NS >= {match.ns_lower_bound} exceeds computed NS = {ns}")
        if match.theorem == "family1-ci":
            ci_verified = verify_ci_family1(spec).holds
            if not ci_verified:
                violations.append("family1-ci ideal does not present A_F")
    if slp.status == "HOLDS" and wlp.status == "FAILS":
        violations.append("SLP holds but WLP fails")
    return violations, refutations, ci_verified


def _unconfirmed(report: ClassificationReport, wlp: Verdict, slp: Verdict) -> List[str]:
    """Guaranteed properties without a HOLDS verdict; SLP confirms WLP."""
    missing: List[str] = []
    for match in report.matches:
        if match.property == "SLP" and slp.status != "HOLDS":
            missing.append(f"{match.theorem} guarantees SLP, oracle says {slp.status}")
        elif match.property == "WLP" and "HOLDS" not in (wlp.status, slp.status):
            missing.append(f"{match.theorem} guarantees WLP, oracle says {wlp.status}")
    return missing


def cross_check(spec: BinomialSpec, bounds: SweepBounds) -> CrossCheckRecord:
    start = time.perf_counter()
    seed = derive_seed(bounds.seed, spec.key())
    record = {"key": spec.key(), "spec": spec.to_dict(), "seed": seed, "mode": bounds.mode}
    report: Optional[ClassificationReport] = None
    try:
        F = spec.polynomial()
        h = hilbert_function(F)
        stats = sperner_stats(h)
        report = classify(spec)
        wlp = decide_wlp(F, mode=bounds.mode, seed=seed)
        slp = decide_slp(F, mode=bounds.mode, seed=seed)
        violations, refutations, ci_verified = _check_theorems(spec, F, report, stats.flat_length, wlp, slp)
    except CapacityError as e:
        logger.warning(f"{spec.key()} skipped: {e.message}")
        unconfirmed = []
        if report is not None:
            unconfirmed = [
                f"{m.theorem} guarantees {m.property}, skipped" for m in report.matches if m.property in PROPERTY_RANK
            ]
        return CrossCheckRecord(
            **record, status="SKIPPED", reason=e.message, classification=report, unconfirmed=unconfirmed,
            elapsed_ms=int((time.perf_counter() - start) * 1000),
        )
    unconfirmed = _unconfirmed(report, wlp, slp)
    if violations:
        logger.error(f"{spec.key()} disagrees with the theorems: {violations}")
    if unconfirmed:
        logger.warning(f"{spec.key()} has unconfirmed guarantees: {unconfirmed}")
    if refutations:
        logger.warning(f"{spec.key()} refutes an NS bound: {refutations}")
    return CrossCheckRecord(
        **record,
        status="OK",
        hvector=list(h),
        sperner=stats.to_dict(),
        classification=report,
        wlp=wlp,
        slp=slp,
        ci_verified=ci_verified,
        violations=violations,
        unconfirmed=unconfirmed,
        ns_refutations=refutations,
        agreement=not violations,
        elapsed_ms=int((time.perf_counter() - start) * 1000),
    )


def _cross_check_all(specs: List[BinomialSpec], bounds: SweepBounds) -> Iterator[CrossCheckRecord]:
    """Records in the order of specs; bounds.jobs > 1 fans out over processes."""
    task = partial(cross_check, bounds=bounds)
    if bounds.jobs <= 1:
        yield from map(task, specs)
        return
    executor = ProcessPoolExecutor(max_workers=bounds.jobs)
    try:
        yield from executor.map(task, specs, chunksize=4)
    finally:
        executor.shutdown(cancel_futures=True)


def _to_line(record: CrossCheckRecord) -> str:
    payload = record.model_dump(mode="json")
    return json.dumps(payload, separators=(",", ":"), ensure_ascii=False) + "\n"


def load_records(path: str) -> List[CrossCheckRecord]:
    """
    Records already written to path. A truncated last line (interrupted run)
    is dropped from the file so appending continues on a clean boundary.
    """
    if not os.path.exists(path):
        return []
    records: List[CrossCheckRecord] = []
    kept: List[str] = []
    with open(path, "r", encoding="utf-8") as f_in:
        lines = f_in.readlines()
    for i, line in enumerate(lines):
        try:
            records.append(CrossCheckRecord.model_validate(json.loads(line)))
        except (json.JSONDecodeError, ValueError):
            if i == len(lines) - 1:
                logger.warning(f"dropping truncated last line of {path}")
                break
            raise InputError(f"{path}:{i + 1} is not a cross-check record")
        kept.append(line if line.endswith("\n") else line + "\n")
    if kept != lines:
        with open(path, "w", encoding="utf-8") as f_out:
            f_out.writelines(kept)
    return records


def run_sweep(bounds: SweepBounds, output_path: str, progress: bool = True) -> SweepSummary:
    """Cross-check every enumerated spec, appending one JSONL record per spec."""
    existing = load_records(output_path)
    done: Set[str] = {r.key for r in existing}
    summary = SweepSummary()
    for record in existing:
        summary.add(record)
    summary.resumed = len(existing)
    pending = [spec for spec in enumerate_specs(bounds) if spec.key() not in done]
    logger.info(
        f"sweep n<={bounds.max_vars}, d<={bounds.max_degree}, mode {bounds.mode}: "
        f"{len(pending)} specs to check, {len(done)} already in {output_path}"
    )
    directory = os.path.dirname(output_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(output_path, "a", encoding="utf-8") as f_out:
        results = _cross_check_all(pending, bounds)
        for record in tqdm(results, total=len(pending), disable=not progress, desc="cross-check"):
            f_out.write(_to_line(record))
            f_out.flush()
            summary.add(record)
            summary.computed += 1
    logger.info(f"sweep finished: {summary.model_dump()}")
    return summary


# -- acceptance suite -------------------------------------------------------

WORKED_EXAMPLE = "X1^8*X2^3 - X1^6*X2^2*X3^3"
WORKED_HVECTOR = [1, 3, 6, 10, 12, 12, 12, 12, 10, 6, 3, 1]
WORKED_BASIS = [
    "x1^5", "x1^4*x2", "x1^4*x3", "x1^3*x2^2", "x1^3*x2*x3", "x1^3*x3^2",
    "x1^2*x2^2*x3", "x1^2*x2*x3^2", "x1^2*x3^3", "x1*x2^2*x3^2", "x1*x2*x3^3", "x2^2*x3^3",
]

SCALES = {
    "quick": {
        "duality": (3, 6), "monomial_slp": (3, 5), "equivalence": (4, 6, 40), "soundness": (3, 6),
        "convention": 20, "failure": (4, 7),
    },
    "full": {
        "duality": (4, 10), "monomial_slp": (4, 8), "equivalence": (4, 10, 200), "soundness": (5, 10),
        "convention": 100, "failure": (4, 12),
    },
}


class CheckItem(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    elapsed_ms: int = 0


class AcceptanceReport(BaseModel):
    scale: str
    items: List[CheckItem] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items)


CHECKS: Dict[str, Callable] = {}


def register_check(name: str):
    def decorator(func: Callable):
        CHECKS[name] = func
        return func
    return decorator


@register_check("worked-example")
def _check_worked_example(scale: Dict, seed: int, jobs: int = 1) -> Tuple[bool, str]:
    F = parse_polynomial(WORKED_EXAMPLE)
    failures = []
    h = hilbert_function(F)
    if list(h) != WORKED_HVECTOR:
        failures.append(f"h-vector {h.to_text()}")
    stats = sperner_stats(h)
    if (stats.sperner, stats.flat_length) != (12, 4):
        failures.append(f"S={stats.sperner}, NS={stats.flat_length}")
    basis = graded_basis(F, 5).to_text()
    if basis != WORKED_BASIS:
        failures.append(f"degree-5 basis {basis}")
    H = hessian(F, 5)
    if H.shape != (12, 12):
        failures.append(f"Hess5 shape {H.shape}")
    det = symbolic_det(H.matrix)
    if det.is_zero() or set(det.terms) != {Monomial.variable(3, 0, 12)}:
        failures.append(f"det Hess5 = {det}")
    if not has_full_rank(H.evaluate([1, 0, 0])):
        failures.append("Hess5 vanishes at (1,0,0)")
    if not is_wl_element(F, LinearForm.coordinate(3, 0)):
        failures.append("x1 is not a weak Lefschetz element")
    return not failures, "; ".join(failures) or f"h={h.to_text()}, det Hess5 = {det}"


@register_check("gorenstein-duality")
def _check_duality(scale: Dict, seed: int, jobs: int = 1) -> Tuple[bool, str]:
    n, d = scale["duality"]
    bad, count = [], 0
    for spec in enumerate_specs(SweepBounds(max_vars=n, max_degree=d)):
        count += 1
        if not hilbert_function(spec.polynomial()).is_symmetric():
            bad.append(spec.key())
    return not bad, f"{count} specs, asymmetric: {bad[:5]}"


def _all_monomials(n: int, d: int) -> Iterator[DualPolynomial]:
    for nvars in range(1, n + 1):
        for degree in range(1, d + 1):
            for m in monomials_of_degree(nvars, degree):
                yield DualPolynomial.from_monomial(m)


@register_check("monomial-slp")
def _check_monomial_slp(scale: Dict, seed: int, jobs: int = 1) -> Tuple[bool, str]:
    n, d = scale["monomial_slp"]
    bad, count = [], 0
    for F in _all_monomials(n, d):
        count += 1
        if not is_sl_element(F, LinearForm.ones(F.nvars)):
            bad.append(F.to_text())
    return not bad, f"{count} monomials, failures: {bad[:5]}"


@register_check("criterion-equivalence")
def _check_equivalence(scale: Dict, seed: int, jobs: int = 1) -> Tuple[bool, str]:
    rng = random.Random(seed)
    n, d, samples = scale["equivalence"]
    specs = list(enumerate_specs(SweepBounds(max_vars=n, max_degree=d)))
    bad = []
    for _ in range(samples):
        spec = rng.choice(specs)
        F = spec.polynomial()
        socle = spec.d
        s = rng.randint(0, socle)
        t = rng.randint(0, socle - s)
        coefficients = [rng.randint(-3, 3) for _ in range(spec.n)]
        if not any(coefficients):
            coefficients[0] = 1
        ell = LinearForm(tuple(coefficients))
        h = hilbert_function(F)
        oracle = map_rank(F, ell, s, socle - s - t) == min(h[s], h[socle - t])
        via_hessian = has_full_rank(mixed_hessian(F, s, t).evaluate(ell.coefficients))
        if oracle != via_hessian:
            bad.append(f"{spec.key()} s={s} t={t} l={ell.to_list()}")
    return not bad, f"{samples} samples, mismatches: {bad[:5]}"


def _sweep_records(n: int, d: int, seed: int, jobs: int, **extra) -> Iterator[CrossCheckRecord]:
    bounds = SweepBounds(max_vars=n, max_degree=d, mode="CERTIFY", seed=seed, jobs=jobs, **extra)
    yield from _cross_check_all(list(enumerate_specs(bounds)), bounds)


@register_check("theorem-soundness")
def _check_soundness(scale: Dict, seed: int, jobs: int = 1) -> Tuple[bool, str]:
    n, d = scale["soundness"]
    summary = SweepSummary()
    bad, unconfirmed, skipped, refuted = [], [], [], []
    ci_checked, ci_failed = 0, 0
    for record in _sweep_records(n, d, seed, jobs):
        summary.add(record)
        if not record.agreement:
            bad.append(record.key)
        if record.unconfirmed:
            unconfirmed.append(record.key)
        if record.status == "SKIPPED":
            skipped.append(record.key)
        if record.ns_refutations:
            refuted.append(record.key)
        if record.ci_verified is not None:
            ci_checked += 1
            ci_failed += not record.ci_verified
    detail = (
        f"{summary.total} specs, {summary.theorem_covered} covered, skipped: {len(skipped)} {skipped[:3]}, "
        f"{ci_checked} complete intersections checked, disagreements: {bad[:5]}, "
        f"unconfirmed: {len(unconfirmed)} {unconfirmed[:5]}, "
        f"NS bounds refuted: {summary.ns_refutations} {refuted[:3]}"
    )
    return not bad and not ci_failed and not unconfirmed, detail


@register_check("convention-invariance")
def _check_convention(scale: Dict, seed: int, jobs: int = 1) -> Tuple[bool, str]:
    rng = random.Random(seed + 1)
    specs = list(enumerate_specs(SweepBounds(max_vars=4, max_degree=8)))
    bad = []
    for _ in range(scale["convention"]):
        F = rng.choice(specs).polynomial()
        for t in range(F.degree() + 1):
            if rank(catalecticant(F, t, "diff")) != rank(catalecticant(F, t, "contract")):
                bad.append(f"{F} t={t}")
    return not bad, f"{scale['convention']} polynomials, mismatches: {bad[:5]}"


@register_check("failure-discovery")
def _check_failure_discovery(scale: Dict, seed: int, jobs: int = 1) -> Tuple[bool, str]:
    n, d = scale["failure"]
    failures, uncertified, count = [], [], 0
    for record in _sweep_records(n, d, seed, jobs, min_vars=n, large_gcd_only=True):
        count += 1
        if record.wlp and record.wlp.status == "FAILS":
            failures.append(record.key)
            if not record.wlp.certificates:
                uncertified.append(record.key)
    found = f"WLP failures: {failures[:5]}" if failures else "complete scan, no WLP failure"
    return not uncertified, f"{count} codimension-{n} specs; {found}"


def verify_paper(scale: str = "quick", seed: int = DEFAULT_SEED, jobs: int = 1) -> AcceptanceReport:
    if scale not in SCALES:
        raise InputError(f"scale must be one of {sorted(SCALES)}, got {scale!r}")
    if jobs < 1:
        raise InputError(f"jobs must be positive, got {jobs}")
    report = AcceptanceReport(scale=scale)
    for name, check in CHECKS.items():
        start = time.perf_counter()
        try:
            passed, detail = check(SCALES[scale], seed, jobs)
        except CapacityError as e:
            passed, detail = False, f"capacity exceeded: {e.message}"
        elapsed_ms = int((time.perf_counter() - start) * 1000)
        level = logger.info if passed else logger.error
        level(f"[{'PASS' if passed else 'FAIL'}] {name} ({elapsed_ms} ms): {detail}")
        report.items.append(CheckItem(name=name, passed=passed, detail=detail, elapsed_ms=elapsed_ms))
    return report

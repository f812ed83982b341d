# -*- coding: utf-8 -*-
# File: gorenstein/main.py
# Command-line entry point
import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from gorenstein.apolarity import graded_basis, hilbert_function, sperner_stats
from gorenstein.config import DEFAULT_SEED
from gorenstein.errors import GorensteinError, InputError, VerificationError, create_error_report
from gorenstein.exactla import has_full_rank, rank, symbolic_det
from gorenstein.families import classify, normalize
from gorenstein.harness import SweepBounds, run_sweep, verify_paper
from gorenstein.lefschetz import (
    LinearForm,
    Verdict,
    decide_slp,
    decide_wlp,
    hessian,
    is_sl_element,
    is_wl_element,
    mixed_hessian,
)
from gorenstein.logger import get_logger, log_command, stop_logger
from gorenstein.polyring import DualPolynomial, parse_polynomial

logger = get_logger(__name__)

# Command handlers registry: name -> (handler, help, argument specs)
COMMANDS: Dict[str, Tuple[Callable, str, List[Tuple[tuple, dict]]]] = {}


def argument(*flags, **kwargs) -> Tuple[tuple, dict]:
    return flags, kwargs


def register_command(name: str, help_text: str, arguments: Sequence[Tuple[tuple, dict]] = ()):
    """Decorator registering a subcommand handler returning (payload, text)."""
    def decorator(func: Callable):
        COMMANDS[name] = (log_command(name)(func), help_text, list(arguments))
        return func
    return decorator


POLYNOMIAL = argument("polynomial", help="Dual generator, e.g. 'X1^8*X2^3 - X1^6*X2^2*X3^3'")
NVARS = argument("--nvars", type=int, default=None, help="Number of variables (default: highest index used)")
SEED = argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for randomized steps")


def _parse_dual(args) -> DualPolynomial:
    return parse_polynomial(args.polynomial, nvars=args.nvars)


def _parse_point(text: str, nvars: int) -> list:
    point = LinearForm.parse(text)
    if point.nvars != nvars:
        raise InputError(f"expected {nvars} coordinates, got {point.nvars}")
    return list(point.coefficients)


def _verdict_text(verdict: Verdict) -> str:
    lines = [f"{verdict.property}: {verdict.status} ({verdict.provenance})"]
    if verdict.witness:
        lines.append(f"witness: ({', '.join(verdict.witness)})")
    if verdict.failing_degrees:
        lines.append(f"failing degrees: {verdict.failing_degrees}")
    for certificate in verdict.certificates:
        lines.append(
            f"certificate: {certificate.method}, degree bound {certificate.degree_bound}, "
            f"seed {certificate.seed}, samples {certificate.samples}"
        )
    if verdict.detail:
        lines.append(verdict.detail)
    return "\n".join(lines)


@register_command(
    "hilbert", "h-vector and Sperner statistics of A_F",
    [POLYNOMIAL, NVARS, argument("--action", choices=["diff", "contract"], default="diff")],
)
def handle_hilbert(args):
    F = _parse_dual(args)
    h = hilbert_function(F, action=args.action)
    stats = sperner_stats(h)
    payload = {"polynomial": F.to_text(), "hvector": list(h), "socle_degree": h.socle_degree, **stats.to_dict()}
    text = (
        f"h = {h.to_text()}\n"
        f"S = {stats.sperner}, NS = {stats.flat_length}, degrees {stats.flat_start}..{stats.flat_end}"
    )
    return payload, text


@register_command(
    "basis", "Greedy monomial basis of A_t",
    [POLYNOMIAL, NVARS, argument("--degree", type=int, required=True)],
)
def handle_basis(args):
    F = _parse_dual(args)
    basis = graded_basis(F, args.degree)
    return basis.to_dict(), ", ".join(basis.to_text())


@register_command(
    "hessian", "Hessian or mixed Hessian of F",
    [
        POLYNOMIAL, NVARS,
        argument("--t", type=int, required=True, dest="t"),
        argument("--s", type=int, default=None, dest="s", help="Column degree (default: t)"),
        argument("--eval", default=None, help="Evaluate at a1,..,an"),
        argument("--symbolic", action="store_true", help="Compute the determinant symbolically"),
    ],
)
def handle_hessian(args):
    F = _parse_dual(args)
    H = hessian(F, args.t) if args.s is None else mixed_hessian(F, args.s, args.t)
    payload: Dict[str, Any] = H.to_dict()
    lines = [f"Hessian of order ({H.s},{H.t}): {H.shape[0]}x{H.shape[1]}, entries of degree {H.matrix.degree}"]
    if args.eval is not None:
        evaluated = H.evaluate(_parse_point(args.eval, F.nvars))
        r = rank(evaluated)
        payload["evaluated_rank"] = r
        payload["full_rank"] = has_full_rank(evaluated)
        lines.append(f"rank at ({args.eval}) = {r}")
    if args.symbolic:
        det = symbolic_det(H.matrix)
        payload["determinant"] = det.to_text()
        lines.append(f"det = {det}")
    return payload, "\n".join(lines)


def _property_command(args, property_name: str):
    F = _parse_dual(args)
    mode = "CERTIFY" if args.certify else "FAST"
    if args.ell is not None:
        ell = LinearForm.parse(args.ell)
        check = is_wl_element if property_name == "WLP" else is_sl_element
        if check(F, ell):
            verdict = Verdict(property=property_name, status="HOLDS", provenance="oracle-witness", witness=ell.to_list())
        else:
            verdict = Verdict(
                property=property_name, status="UNKNOWN", provenance="inconclusive-at-point",
                detail=f"{ell.to_text()} is not a Lefschetz element; the generic form may still be",
            )
    else:
        decide = decide_wlp if property_name == "WLP" else decide_slp
        verdict = decide(F, mode=mode, seed=args.seed)
    return verdict, _verdict_text(verdict)


PROPERTY_ARGUMENTS = [
    POLYNOMIAL, NVARS, SEED,
    argument("--ell", default=None, help="Test the linear form c1,..,cn only"),
    argument("--certify", action="store_true", help="Prove negative verdicts"),
]


@register_command("wlp", "Decide the weak Lefschetz property", PROPERTY_ARGUMENTS)
def handle_wlp(args):
    return _property_command(args, "WLP")


@register_command("slp", "Decide the strong Lefschetz property", PROPERTY_ARGUMENTS)
def handle_slp(args):
    return _property_command(args, "SLP")


@register_command("classify", "Sufficient conditions satisfied by a binomial", [POLYNOMIAL, NVARS])
def handle_classify(args):
    normalized = normalize(_parse_dual(args))
    report = classify(normalized.spec)
    payload = {"normalized": normalized.to_dict(), "report": report.model_dump(mode="json")}
    lines = [f"spec {normalized.spec.key()}, variable order {[i + 1 for i in normalized.permutation]}"]
    for match in report.matches:
        extra = []
        if match.witness:
            extra.append(f"witness {match.witness}")
        if match.ns_lower_bound is not None:
            extra.append(f"NS >= {match.ns_lower_bound}")
        lines.append(f"  {match.theorem}: {match.property} {' '.join(extra)}".rstrip())
    lines.append(f"overall: {report.overall}")
    return payload, "\n".join(lines)


@register_command(
    "search", "Cross-check classifiers against the oracle over enumerated binomials",
    [
        argument("--max-vars", type=int, required=True),
        argument("--max-degree", type=int, required=True),
        argument("--min-vars", type=int, default=2),
        argument("--max-gcd-degree", type=int, default=None),
        argument("--large-gcd-only", action="store_true", help="Only deg g >= floor((d-1)/2)"),
        argument("--certify", action="store_true"),
        argument("--out", required=True, help="JSONL output, resumed when it exists"),
        argument("--jobs", type=int, default=1),
        argument("--no-progress", action="store_true"),
        SEED,
    ],
)
def handle_search(args):
    bounds = SweepBounds(
        max_vars=args.max_vars,
        max_degree=args.max_degree,
        min_vars=args.min_vars,
        max_gcd_degree=args.max_gcd_degree,
        large_gcd_only=args.large_gcd_only,
        mode="CERTIFY" if args.certify else "FAST",
        seed=args.seed,
        jobs=args.jobs,
    )
    summary = run_sweep(bounds, args.out, progress=not args.no_progress)
    if summary.disagreements:
        raise VerificationError(
            f"{summary.disagreements} records contradict a theorem, see {args.out}", data=summary.model_dump()
        )
    text = "\n".join(f"{name}: {value}" for name, value in summary.model_dump().items())
    return summary, text


@register_command(
    "verify-paper", "Run the acceptance checks on the worked example and the sweeps",
    [
        argument("--scale", choices=["quick", "full"], default="quick"),
        argument("--jobs", type=int, default=1, help="Worker processes for the sweeps"),
        SEED,
    ],
)
def handle_verify_paper(args):
    report = verify_paper(scale=args.scale, seed=args.seed, jobs=args.jobs)
    text = "\n".join(
        f"[{'PASS' if item.passed else 'FAIL'}] {item.name} ({item.elapsed_ms} ms): {item.detail}"
        for item in report.items
    )
    if not report.passed:
        failed = [item.name for item in report.items if not item.passed]
        raise VerificationError(f"acceptance checks failed: {failed}\n{text}", data=report.model_dump())
    return report, text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gorenstein", description="Lefschetz properties of Gorenstein algebras A_F")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, arguments) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, parents=[common])
        for flags, kwargs in arguments:
            sub.add_argument(*flags, **kwargs)
    return parser


def _emit(payload: Any, as_json: bool, text: str) -> None:
    if as_json:
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="json")
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the command line."""
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        payload, text = handler(args)
        _emit(payload, args.json, text)
        return 0
    except GorensteinError as e:
        report = create_error_report(e)
        if args.json:
            print(json.dumps(report.model_dump(mode="json"), indent=2, ensure_ascii=False))
        else:
            print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    finally:
        stop_logger()


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line front end.

Subcommands wire the engines to JSON artifact files and print a JSON
report to stdout. Exit codes: 0 success, 2 parse error, 3 precondition
violation, 4 verification failure. With --skip-verify a generating
command still runs its verification but reports failure as a warning
instead of exiting 4.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import files
from .bounds import exponent_report, solve_alpha
from .errors import VerificationError
from .geometry import DEFAULT_TOL
from .illumination import (
    CapBody,
    DirectionSet,
    SpikyBall,
    illuminate_cap_body,
    is_cap_body,
    sweep_alpha,
    verifies_illumination,
)
from .lowerbound import (
    build_lower_bound_body,
    construct_separated_set,
    multiplicity_report,
    symmetrize,
)
from .piercing import (
    BallFamily,
    PiercingConfig,
    first_non_intersecting_pair,
    pierce,
    verify_piercing,
)
from .sphere_cover import Cover, PackParams, greedy_cover, maximal_packing, verify_cover

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_VERIFICATION = 4


def _emit(report: dict) -> None:
    sys.stdout.write(files.dumps_document(report))


def _deliver(doc: dict, output: str | None, report: dict) -> None:
    """Write the artifact to ``output`` or inline it into the report."""
    if output:
        files.write_document(doc, output)
        report["output"] = output
    else:
        report["artifact"] = doc
    _emit(report)


def _certificate_dict(cert) -> dict:
    out = {
        "method": cert.method,
        "resolution_or_samples": cert.resolution_or_samples,
        "margin": cert.margin,
        "passed": cert.passed,
    }
    if cert.undetected_measure is not None:
        out["undetected_measure"] = cert.undetected_measure
    return out


def cmd_pierce(args) -> int:
    dim, balls = files.parse_ball_family(files.load_document(args.input))
    pair = first_non_intersecting_pair(balls, args.tol)
    if pair is not None:
        _emit({"error": "precondition", "detail": "family is not pairwise intersecting",
               "pair": list(pair)})
        return EXIT_PRECONDITION
    family = BallFamily(dim, tuple(balls))
    config = PiercingConfig(seed=args.seed, tol=args.tol)
    verified = True
    try:
        result = pierce(family, config)
        witness = None
    except VerificationError as exc:
        from .piercing import PiercingSet

        if not args.skip_verify or not isinstance(exc.result, PiercingSet):
            _emit({"error": "verification", "detail": str(exc), "witness": exc.witness})
            return EXIT_VERIFICATION
        print(f"warning: {exc}", file=sys.stderr)
        result, witness, verified = exc.result, exc.witness, False
    acct = result.accounting
    report = {
        "report": {
            "dimension": dim,
            "balls": len(family),
            "points": len(result),
            "large_count": acct.large_count,
            "scale_cover_counts": {str(k): c for k, c in acct.scale_cover_counts},
            "t": acct.t,
            "lambda": acct.lam,
            "seed": args.seed,
            "verified": verified,
            "witness": witness,
        }
    }
    doc = files.point_set_document(
        dim,
        result.points,
        result.provenance,
        meta={
            "seed": args.seed,
            "large_count": acct.large_count,
            "scale_cover_counts": {str(k): c for k, c in acct.scale_cover_counts},
            "t": acct.t,
            "lambda": acct.lam,
        },
    )
    _deliver(doc, args.output, report)
    return EXIT_OK


def cmd_illuminate(args) -> int:
    body = files.parse_spiky_body(files.load_document(args.input))
    ok, pair = is_cap_body(body, args.tol)
    if not ok and not args.skip_cap_check:
        _emit({"error": "precondition", "detail": "input is not a cap body",
               "pair": list(pair)})
        return EXIT_PRECONDITION
    target = CapBody(body) if ok else body
    alpha = args.alpha if args.alpha is not None else solve_alpha(1e-9)
    verified = True
    witness = None
    try:
        if args.sweep > 0:
            grid = np.linspace(0.1, math.pi / 2 - 0.1, args.sweep)
            alpha, result = sweep_alpha(target, grid, args.seed, args.tol)
        else:
            result = illuminate_cap_body(target, alpha, args.seed, args.tol)
    except VerificationError as exc:
        if not args.skip_verify or not isinstance(exc.result, DirectionSet):
            _emit({"error": "verification", "detail": str(exc), "witness": exc.witness})
            return EXIT_VERIFICATION
        print(f"warning: {exc}", file=sys.stderr)
        result, witness, verified = exc.result, exc.witness, False
    u1 = sum(1 for tag in result.provenance if tag.startswith("U1:"))
    u2 = len(result) - u1
    report = {
        "report": {
            "dimension": body.dimension,
            "vertices": len(body),
            "alpha": alpha,
            "u1_count": u1,
            "u2_count": u2,
            "directions": len(result),
            "seed": args.seed,
            "verified": verified,
            "witness": witness,
        }
    }
    doc = files.direction_set_document(result, meta={"alpha": alpha, "seed": args.seed})
    _deliver(doc, args.output, report)
    return EXIT_OK


def cmd_bounds(args) -> int:
    report = exponent_report().to_dict()
    if args.output:
        files.write_document(report, args.output)
        _emit({"report": report, "output": args.output})
    else:
        _emit({"report": report})
    return EXIT_OK


def cmd_cover(args) -> int:
    cover = greedy_cover(args.dimension, args.theta, args.seed)
    dirs = DirectionSet(args.dimension, cover.centers)
    meta = {
        "angular_radius": args.theta,
        "seed": args.seed,
        "certificate": _certificate_dict(cover.certificate),
    }
    report = {
        "report": {
            "dimension": args.dimension,
            "theta": args.theta,
            "size": len(cover),
            "certificate": meta["certificate"],
            "seed": args.seed,
        }
    }
    _deliver(files.direction_set_document(dirs, meta=meta), args.output, report)
    return EXIT_OK


def cmd_pack(args) -> int:
    params = PackParams(max_points=args.max_points)
    packing = maximal_packing(args.dimension, args.theta, args.seed, params)
    dirs = DirectionSet(args.dimension, packing.centers)
    meta = {
        "separation": args.theta,
        "seed": args.seed,
        "saturated": packing.saturated,
    }
    report = {
        "report": {
            "dimension": args.dimension,
            "theta": args.theta,
            "size": len(packing),
            "saturated": packing.saturated,
            "seed": args.seed,
        }
    }
    _deliver(files.direction_set_document(dirs, meta=meta), args.output, report)
    return EXIT_OK


def cmd_lowerbound(args) -> int:
    separated = construct_separated_set(args.dimension, args.target, args.seed)
    symmetric = symmetrize(separated)
    body = build_lower_bound_body(symmetric)
    stats = multiplicity_report(symmetric, args.samples, args.seed, args.tol)
    report = {
        "report": {
            "dimension": args.dimension,
            "target": args.target,
            "reached_target": separated.reached_target,
            "separated_size": len(separated),
            "symmetric_size": len(symmetric),
            "vertices": len(body),
            "multiplicity": stats.to_dict(),
            "seed": args.seed,
        }
    }
    doc = files.spiky_body_document(
        body, meta={"seed": args.seed, "target": args.target}
    )
    _deliver(doc, args.output, report)
    return EXIT_OK


def cmd_verify(args) -> int:
    chosen = [bool(args.family), bool(args.body), bool(args.cover)]
    if sum(chosen) != 1:
        raise ValueError("choose exactly one of --family, --body, --cover")

    if args.family:
        if not args.points:
            raise ValueError("--family requires --points")
        dim, balls = files.parse_ball_family(files.load_document(args.family))
        pdim, points, _ = files.parse_point_set(files.load_document(args.points))
        if pdim != dim:
            raise ValueError(f"dimension mismatch: family {dim}, points {pdim}")
        family = BallFamily(dim, tuple(balls))
        ok, witness = verify_piercing(family, points, args.tol)
        _emit({"report": {"passed": ok, "witness": witness}})
        return EXIT_OK if ok else EXIT_VERIFICATION

    if args.body:
        if not args.directions:
            raise ValueError("--body requires --directions")
        body = files.parse_spiky_body(files.load_document(args.body))
        dirs = files.parse_direction_set(files.load_document(args.directions))
        ok, witness = verifies_illumination(body, dirs, args.tol)
        _emit({"report": {"passed": ok, "witness": witness}})
        return EXIT_OK if ok else EXIT_VERIFICATION

    dirs = files.parse_direction_set(files.load_document(args.cover))
    doc = files.load_document(args.cover)
    theta = args.theta
    if theta is None:
        theta = (doc.get("meta") or {}).get("angular_radius")
    if theta is None:
        raise ValueError("cover verification needs --theta or meta.angular_radius")
    cover = Cover(dirs.dimension, float(theta), dirs.directions)
    resolution = args.resolution if args.method == "net" else args.samples
    cert = verify_cover(cover, args.method, resolution, seed=args.seed, tol=args.tol)
    _emit({"report": {"passed": cert.passed, "certificate": _certificate_dict(cert)}})
    return EXIT_OK if cert.passed else EXIT_VERIFICATION


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gallai",
        description="Piercing sets for intersecting balls, illumination of "
        "spiky balls and cap bodies, sphere covers and packings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="comparison tolerance (default 1e-9)")
        if output:
            p.add_argument("--output", help="write the artifact to this path")

    p = sub.add_parser("pierce", help="construct a verified piercing set")
    p.add_argument("input", help="ball-family JSON file")
    p.add_argument("--skip-verify", action="store_true",
                   help="report verification failure as a warning, not exit 4")
    common(p)
    p.set_defaults(func=cmd_pierce)

    p = sub.add_parser("illuminate", help="construct a verified direction set")
    p.add_argument("input", help="spiky-body JSON file")
    p.add_argument("--alpha", type=float, default=None,
                   help="far/near split angle (default: exponent balance point)")
    p.add_argument("--sweep", type=int, default=0,
                   help="sweep this many alphas and keep the smallest output")
    p.add_argument("--skip-cap-check", action="store_true",
                   help="accept raw spiky balls; only verification decides")
    p.add_argument("--skip-verify", action="store_true",
                   help="report verification failure as a warning, not exit 4")
    common(p)
    p.set_defaults(func=cmd_illuminate)

    p = sub.add_parser("bounds", help="print the exponent report")
    p.add_argument("--output", help="also write the report to this path")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("cover", help="construct a certified sphere cover")
    p.add_argument("--dimension", "-n", type=int, required=True)
    p.add_argument("--theta", type=float, required=True, help="cap angular radius")
    common(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("pack", help="construct a separated packing")
    p.add_argument("--dimension", "-n", type=int, required=True)
    p.add_argument("--theta", type=float, required=True, help="minimum separation")
    p.add_argument("--max-points", type=int, default=0,
                   help="stop after this many points (0 = saturate)")
    common(p)
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("lowerbound", help="symmetric separated set and its cap body")
    p.add_argument("--dimension", "-n", type=int, required=True)
    p.add_argument("--target", type=int, required=True,
                   help="separated points to aim for before symmetrizing")
    p.add_argument("--samples", type=int, default=10_000,
                   help="directions sampled for the multiplicity report")
    common(p)
    p.set_defaults(func=cmd_lowerbound)

    p = sub.add_parser("verify", help="verify an artifact")
    p.add_argument("--family", help="ball-family file (with --points)")
    p.add_argument("--points", help="point-set file to check against --family")
    p.add_argument("--body", help="spiky-body file (with --directions)")
    p.add_argument("--directions", help="direction-set file to check against --body")
    p.add_argument("--cover", help="direction-set file to certify as a cover")
    p.add_argument("--method", choices=["net", "sampled"], default="sampled")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--resolution", type=float, default=None,
                   help="net resolution for --method net")
    p.add_argument("--theta", type=float, default=None,
                   help="cover cap radius if the file has no meta.angular_radius")
    common(p, output=False)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except files.FileFormatError as exc:
        _emit({"error": "parse", "detail": str(exc)})
        return EXIT_PARSE
    except VerificationError as exc:
        _emit({"error": "verification", "detail": str(exc), "witness": exc.witness})
        return EXIT_VERIFICATION
    except ValueError as exc:
        _emit({"error": "precondition", "detail": str(exc)})
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())

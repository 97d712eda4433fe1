"""Command-line surface.

Subcommands:
  factor         exact factorisation of an LMP-JSON matrix file
  certify        run the stability certificate over a range of N
  reproduce      emit the full table/plot-data/figure set for a family
  bounds         criterion plus factor-accuracy bounds at a single N
  optimize-zeta  pick an admissible (zeta1, zeta2) by grid search

All numeric inputs are exact rationals in `p/q` form; floats are rejected.
Exit codes: 0 success (certified, for `certify`), 1 I/O or argument error,
2 non-monomial determinant, 3 verification failure, 10 certificate not
reached within the scanned range.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .accuracy import ACCURACY_CSV_HEADER
from .criterion import certify_stability, first_certified, write_criterion_csv
from .errors import NotMonomialDetError, VerificationFailedError, WhcertError
from .exactmath import DEFAULT_TOL, as_fraction, fraction_str, sci_str
from .factorise import right_factorise, verify_factorisation
from .families import FAMILY_DEFAULTS, family_from_spec
from .harness import accuracy_for_report, reproduce
from .laurent import lmp_from_json, lmp_to_json
from .normalise import p_normalise
from .report import write_table
from .tailbounds import BoundContext, GridSpec, optimize_zeta

EXIT_OK = 0
EXIT_IO = 1
EXIT_NOT_MONOMIAL = 2
EXIT_VERIFICATION = 3
EXIT_NOT_CERTIFIED = 10


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not an exact rational; use p/q form (floats are rejected)"
        ) from exc


def _family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=sorted(FAMILY_DEFAULTS) + ["finite"],
                   help="built-in stream family")
    p.add_argument("--spec", type=Path, help="stream spec JSON file")
    p.add_argument("--k1", type=_rational, help="family parameter k1 (p/q)")
    p.add_argument("--k2", type=_rational, help="family parameter k2 (p/q)")
    p.add_argument("--theta", type=int, help="winding of the determinant")


def _zeta_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--zeta1", type=_rational, help="minus-side radius (p/q)")
    p.add_argument("--zeta2", type=_rational, help="plus-side radius (p/q)")
    p.add_argument("--optimize-zeta", action="store_true", dest="optimize_zeta",
                   help="grid-optimise (zeta1, zeta2) per N")
    p.add_argument("--epsilon", type=_rational, default=Fraction(1, 100),
                   help="compact-rectangle margin (default 1/100)")


def _common_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--normalise", default="auto",
                   choices=["auto", "raw", "i2", "j2", "minus-infinity-identity"])
    p.add_argument("--tol", type=_rational, default=DEFAULT_TOL,
                   help="certified-bound tolerance (default 1/10^15)")
    p.add_argument("--jobs", type=int, default=1, help="parallel factorisations")
    p.add_argument("--no-timestamp", action="store_true",
                   help="suppress the provenance timestamp line")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def _load_family(args: argparse.Namespace):
    if args.spec:
        spec = json.loads(Path(args.spec).read_text(encoding="utf-8"))
    elif args.family:
        spec = {"family": args.family}
    else:
        raise SystemExit("one of --family or --spec is required")
    if args.k1 is not None:
        spec["k1"] = fraction_str(args.k1)
    if args.k2 is not None:
        spec["k2"] = fraction_str(args.k2)
    if args.theta is not None:
        spec["theta"] = args.theta
    return family_from_spec(spec)


def _context(args: argparse.Namespace, family) -> BoundContext | None:
    if args.optimize_zeta:
        return None
    z1 = args.zeta1 if args.zeta1 is not None else family.default_zeta[0]
    z2 = args.zeta2 if args.zeta2 is not None else family.default_zeta[1]
    return BoundContext(z1, z2, args.epsilon)


def _cmd_factor(args: argparse.Namespace) -> int:
    data = json.loads(Path(args.input).read_text(encoding="utf-8"))
    a = lmp_from_json(data)
    fact = right_factorise(a)
    if fact.stable and args.normalise != "raw":
        fact = p_normalise(fact, args.normalise)
    report = verify_factorisation(a, fact)
    out = {
        "a_minus": lmp_to_json(fact.a_minus),
        "indices": list(fact.indices),
        "a_plus": lmp_to_json(fact.a_plus),
        "normalisation": fact.normalisation,
        "stable": fact.stable,
        "verification": {
            "product_ok": report.product_ok,
            "support_ok": report.support_ok,
            "determinant_ok": report.determinant_ok,
            "index_sum_ok": report.index_sum_ok,
        },
    }
    text = json.dumps(out, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def _cmd_certify(args: argparse.Namespace) -> int:
    family = _load_family(args)
    ctx = _context(args, family)
    reports = certify_stability(
        family.streams,
        family.theta,
        range(1, args.nmax + 1),
        ctx,
        eps=args.epsilon,
        normalise=args.normalise,
        tol=args.tol,
        jobs=args.jobs,
    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    header = _provenance(args, family)
    path = out_dir / f"{family.id}_criterion.csv"
    write_criterion_csv(path, reports, header)
    if args.format == "json":
        jpath = out_dir / f"{family.id}_criterion.json"
        jpath.write_text(json.dumps(_reports_json(args, family, reports), indent=2),
                         encoding="utf-8")
    hit = first_certified(reports)
    if hit is None:
        print(f"NOT CERTIFIED within N <= {args.nmax} ({path})")
        return EXIT_NOT_CERTIFIED
    print(f"CERTIFIED at N={hit.n} (indices {hit.indices[0]},{hit.indices[1]}; "
          f"q_N={sci_str(hit.q_n.value, 6)}; {path})")
    return EXIT_OK


def _reports_json(args, family, reports) -> dict:
    return {
        "config": {
            "family": family.id,
            "k1": fraction_str(family.k1),
            "k2": fraction_str(family.k2),
            "theta": family.theta,
            "normalise": args.normalise,
            "tol": fraction_str(args.tol),
        },
        "rows": [
            {
                "N": r.n,
                "delta_N": sci_str(r.delta_n.value),
                "delta_N_exact": fraction_str(r.delta_n.value),
                "norm_inv_plus": sci_str(r.norm_inv_plus.bound.value),
                "norm_inv_minus": sci_str(r.norm_inv_minus.bound.value),
                "sigma": r.sigma,
                "q_N": sci_str(r.q_n.value),
                "q_N_exact": fraction_str(r.q_n.value),
                "rho1": r.indices[0],
                "rho2": r.indices[1],
                "zeta1": fraction_str(r.zeta[0]),
                "zeta2": fraction_str(r.zeta[1]),
                "verdict": r.verdict,
            }
            for r in reports
        ],
    }


def _provenance(args: argparse.Namespace, family) -> list[str]:
    lines = [
        f"family={family.id} k1={fraction_str(family.k1)} k2={fraction_str(family.k2)} "
        f"theta={family.theta}",
        f"normalise={args.normalise} tol={fraction_str(args.tol)} "
        f"epsilon={fraction_str(args.epsilon)}",
    ]
    if not args.no_timestamp:
        import datetime as _dt

        lines.append(f"generated={_dt.datetime.now(_dt.timezone.utc).isoformat()}")
    return lines


def _cmd_reproduce(args: argparse.Namespace) -> int:
    family = _load_family(args)
    zeta = None
    if args.zeta1 is not None and args.zeta2 is not None:
        zeta = (args.zeta1, args.zeta2)
    result = reproduce(
        family,
        args.nmax,
        args.out,
        distance_ref=args.distance_ref,
        factor_ref=args.factor_ref,
        zeta=zeta,
        eps=args.epsilon,
        normalise=args.normalise,
        tol=args.tol,
        jobs=args.jobs,
        timestamp=not args.no_timestamp,
        figures=args.figures,
    )
    for path in result.files:
        print(path)
    return EXIT_OK


def _cmd_bounds(args: argparse.Namespace) -> int:
    family = _load_family(args)
    ctx = _context(args, family)
    reports = certify_stability(
        family.streams, family.theta, [args.n], ctx,
        eps=args.epsilon, normalise=args.normalise, tol=args.tol,
    )
    rep = reports[0]
    acc = accuracy_for_report(rep, args.tol)
    print(f"N={rep.n} indices=({rep.indices[0]},{rep.indices[1]}) verdict={rep.verdict}")
    print(f"delta_N={sci_str(rep.delta_n.value, 6)} q_N={sci_str(rep.q_n.value, 6)}")
    for name, item in (
        ("delta_plus", acc.delta_plus),
        ("delta_minus", acc.delta_minus),
        ("gamma_N", acc.gamma_n),
        ("q_plus_N", acc.q_plus_n),
    ):
        print(f"{name}={sci_str(item.value, 6) if item else 'unavailable'}")
    if acc.reason:
        print(f"note: {acc.reason}")
    if args.out:
        row = [
            str(rep.n),
            sci_str(acc.delta_plus.value) if acc.delta_plus else "",
            sci_str(acc.delta_minus.value) if acc.delta_minus else "",
            sci_str(acc.gamma_n.value) if acc.gamma_n else "",
            sci_str(acc.q_plus_n.value) if acc.q_plus_n else "",
            acc.flags,
        ]
        write_table(args.out, _provenance(args, family), ACCURACY_CSV_HEADER.split(","), [row])
    return EXIT_OK


def _cmd_optimize_zeta(args: argparse.Namespace) -> int:
    family = _load_family(args)
    spec = GridSpec(cap=args.cap)
    z1, z2, delta = optimize_zeta(family.streams, args.n, args.epsilon, spec, args.tol)
    print(f"zeta1={fraction_str(z1)} zeta2={fraction_str(z2)} "
          f"delta_N={sci_str(delta.value, 6)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="whcert",
        description="Certified stable Wiener-Hopf factorisation of 2x2 matrix "
        "functions over the Gaussian rationals",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="factorise an LMP-JSON matrix")
    p.add_argument("input", type=Path, help="LMP-JSON input file")
    p.add_argument("--out", type=Path, help="output JSON path (stdout otherwise)")
    p.add_argument("--normalise", default="auto",
                   choices=["auto", "raw", "i2", "j2", "minus-infinity-identity"])
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("certify", help="run the stability certificate")
    _family_args(p)
    _zeta_args(p)
    _common_args(p)
    p.add_argument("--nmax", type=int, default=30)
    p.add_argument("--out", type=Path, default=Path("."))
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("reproduce", help="emit the full report set for a family")
    _family_args(p)
    _zeta_args(p)
    _common_args(p)
    p.add_argument("--nmax", type=int, default=30)
    p.add_argument("--distance-ref", type=int, default=None, dest="distance_ref")
    p.add_argument("--factor-ref", type=int, default=None, dest="factor_ref")
    p.add_argument("--figures", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("bounds", help="criterion and accuracy bounds at one N")
    _family_args(p)
    _zeta_args(p)
    _common_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", type=Path, help="optional accuracy CSV path")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("optimize-zeta", help="grid-optimise (zeta1, zeta2)")
    _family_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=_rational, default=Fraction(1, 100))
    p.add_argument("--cap", type=_rational, default=Fraction(16),
                   help="zeta2 search cap for entire plus sides")
    p.add_argument("--tol", type=_rational, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_optimize_zeta)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotMonomialDetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_MONOMIAL
    except VerificationFailedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except (OSError, json.JSONDecodeError, WhcertError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

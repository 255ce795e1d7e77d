"""Command-line front end: profile file I/O, batch evaluation, JSON reports.

Every command prints a single deterministic JSON report (for several input
files, a JSON array of reports in input order).  Exit codes: 0 on success,
1 on validation or hypothesis-contradiction errors, 2 on malformed input.
The two commands that produce profiles (``catalog`` and ``blowup``)
write a profile file instead, either to ``--output`` or to standard
output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import catalog as catalog_mod
from .bounds import (
    Certificate,
    FlagContradictionError,
    bound_bs,
    bound_fukuma_gap,
    bound_fukuma_ka,
    bound_nefbig,
    certify_h0_adjoint,
    certify_h0_bs,
    miyaoka_c2_inequality,
)
from .birational import blow_up_curve, blow_up_point
from .core import CalcError, UnknownSymbolError, format_rational, rat
from .profile import MissingFlagError, ThreefoldProfile
from .profile_io import (
    DivisorParseError,
    ProfileFormatError,
    format_divisor,
    load_profile,
    resolve_divisor,
    serialize_profile,
)
from .riemann_roch import NonIntegerChiError, chi_identity_suite, chi_line_bundle

EXIT_OK = 0
EXIT_OPERATION = 1
EXIT_MALFORMED = 2

_MALFORMED_ERRORS = (
    ProfileFormatError,
    DivisorParseError,
    UnknownSymbolError,
    catalog_mod.UnknownEntryError,
)
_OPERATION_ERRORS = (
    MissingFlagError,
    FlagContradictionError,
    NonIntegerChiError,
    catalog_mod.WitnessNotFoundError,
)

_BOUND_RULES = {
    "fukuma-ka": bound_fukuma_ka,
    "fukuma-gap": bound_fukuma_gap,
    "nefbig": bound_nefbig,
    "bs": bound_bs,
}


def _error_record(exc: Exception) -> dict:
    return {"type": type(exc).__name__, "message": str(exc)}


def _bound_result(value: Fraction) -> dict:
    ceiling = math.ceil(value)
    return {
        "rational": format_rational(value),
        "ceiling": ceiling,
        "display": f"{format_rational(value)} (ceil {ceiling})",
    }


def _certificate_record(cert: Certificate, basis) -> dict:
    return {
        "conclusion": cert.conclusion.value,
        "route": cert.route,
        "rational_bound": None
        if cert.rational_bound is None
        else format_rational(cert.rational_bound),
        "integer_bound": cert.integer_bound,
        "hypotheses_used": [
            {
                "kind": f.kind.value,
                "subject": None if f.subject is None else format_divisor(f.subject, basis),
            }
            for f in cert.hypotheses_used
        ],
        "citations": list(cert.citations),
    }


def _load_valid_profile(path: str) -> tuple[ThreefoldProfile | None, list[str]]:
    profile = load_profile(path)
    return profile, profile.validate()


def _run_per_file(args, worker) -> list[tuple[dict, int]]:
    """Evaluate one report per input file, optionally in parallel.

    The interpreter serializes the pure-python arithmetic, so the thread
    pool only overlap waits on file I/O; output order always follows the
    input order regardless of completion order.
    """

    def safe(path: str) -> tuple[dict, int]:
        try:
            return worker(path)
        except _MALFORMED_ERRORS as exc:
            return (
                {"command": args.command, "inputs": {"file": path}, "error": _error_record(exc)},
                EXIT_MALFORMED,
            )
        except _OPERATION_ERRORS as exc:
            return (
                {"command": args.command, "inputs": {"file": path}, "error": _error_record(exc)},
                EXIT_OPERATION,
            )

    jobs = max(1, getattr(args, "jobs", 1))
    if jobs == 1 or len(args.files) == 1:
        return [safe(path) for path in args.files]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(safe, args.files))


def _emit(reports: list[tuple[dict, int]]) -> int:
    if len(reports) == 1:
        body = reports[0][0]
    else:
        body = [r for r, _ in reports]
    print(json.dumps(body, indent=2))
    return max(code for _, code in reports)


def _cmd_validate(args) -> int:
    def worker(path: str) -> tuple[dict, int]:
        profile = load_profile(path)
        violations = profile.validate()
        report = {
            "command": "validate",
            "inputs": {"file": path},
            "result": {"valid": not violations},
            "violations": violations,
        }
        return report, EXIT_OK if not violations else EXIT_OPERATION

    return _emit(_run_per_file(args, worker))


def _cmd_chi(args) -> int:
    def worker(path: str) -> tuple[dict, int]:
        profile, violations = _load_valid_profile(path)
        inputs = {"file": path, "divisor": args.divisor}
        if violations:
            return (
                {"command": "chi", "inputs": inputs, "violations": violations},
                EXIT_OPERATION,
            )
        divisor = resolve_divisor(profile, args.divisor)
        value = chi_line_bundle(profile, divisor)
        report = {
            "command": "chi",
            "inputs": inputs,
            "result": {
                "divisor": format_divisor(divisor, profile.basis),
                "chi": format_rational(value),
            },
        }
        return report, EXIT_OK

    return _emit(_run_per_file(args, worker))


def _cmd_bound(args) -> int:
    def worker(path: str) -> tuple[dict, int]:
        profile, violations = _load_valid_profile(path)
        inputs = {"file": path, "divisor": args.divisor, "rule": args.rule}
        if violations:
            return (
                {"command": "bound", "inputs": inputs, "violations": violations},
                EXIT_OPERATION,
            )
        ample_divisor = resolve_divisor(profile, args.divisor)
        if args.rule == "miyaoka":
            pairing = resolve_divisor(profile, args.ample or args.divisor)
            inputs["ample"] = args.ample or args.divisor
            lhs, rhs, holds, met = miyaoka_c2_inequality(profile, ample_divisor, pairing)
            result = {
                "lhs": format_rational(lhs),
                "rhs": format_rational(rhs),
                "holds": holds,
                "hypotheses_met": met,
            }
        else:
            result = _bound_result(_BOUND_RULES[args.rule](profile, ample_divisor))
        return {"command": "bound", "inputs": inputs, "result": result}, EXIT_OK

    return _emit(_run_per_file(args, worker))


def _cmd_certify(args) -> int:
    def worker(path: str) -> tuple[dict, int]:
        profile, violations = _load_valid_profile(path)
        inputs = {"file": path, "divisor": args.divisor, "target": args.target}
        if violations:
            return (
                {"command": "certify", "inputs": inputs, "violations": violations},
                EXIT_OPERATION,
            )
        ample_divisor = resolve_divisor(profile, args.divisor)
        certifier = certify_h0_adjoint if args.target == "adjoint" else certify_h0_bs
        cert = certifier(profile, ample_divisor)
        record = _certificate_record(cert, profile.basis)
        report = {
            "command": "certify",
            "inputs": inputs,
            "result": {"conclusion": record["conclusion"], "route": record["route"]},
            "certificate": record,
        }
        return report, EXIT_OK

    return _emit(_run_per_file(args, worker))


def _parse_curve_spec(text: str) -> tuple[int, dict[str, Fraction]]:
    genus: int | None = None
    degrees: dict[str, Fraction] = {}
    for part in text.split(","):
        part = part.strip()
        if part.startswith("g="):
            genus = int(part[2:])
        elif part.startswith("deg="):
            for pair in part[4:].split(";"):
                sym, sep, value = pair.partition(":")
                if not sep:
                    raise DivisorParseError(f"curve degree '{pair}' is not SYM:value")
                degrees[sym.strip()] = rat(value)
        else:
            raise DivisorParseError(f"unrecognized curve component '{part}'")
    if genus is None:
        raise DivisorParseError("curve specification needs g=<genus>")
    return genus, degrees


def _cmd_blowup(args) -> int:
    profile, violations = _load_valid_profile(args.file)
    inputs = {"file": args.file, "symbol": args.symbol}
    if violations:
        print(json.dumps({"command": "blowup", "inputs": inputs, "violations": violations}, indent=2))
        return EXIT_OPERATION
    if args.curve is not None:
        genus, degrees = _parse_curve_spec(args.curve)
        inputs["curve"] = args.curve
        transformed, _ = blow_up_curve(profile, args.symbol, genus, degrees)
    else:
        inputs["point"] = True
        transformed, _ = blow_up_point(profile, args.symbol)
    text = serialize_profile(transformed)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        report = {
            "command": "blowup",
            "inputs": inputs,
            "result": {"output": args.output, "basis": list(transformed.basis)},
        }
        print(json.dumps(report, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_identities(args) -> int:
    results = chi_identity_suite()
    report = {
        "command": "identities",
        "inputs": {},
        "result": [
            {"identity": name, "status": "PASS" if ok else "FAIL"}
            for name, ok in results
        ],
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK if all(ok for _, ok in results) else EXIT_OPERATION


def _cmd_catalog(args) -> int:
    entry = catalog_mod.get(args.name)
    text = serialize_profile(entry.profile)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        report = {
            "command": "catalog",
            "inputs": {"name": args.name},
            "result": {"output": args.output, "entry": entry.name},
        }
        print(json.dumps(report, indent=2))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_witness(args) -> int:
    profile, violations = _load_valid_profile(args.file)
    inputs = {"file": args.file}
    if violations:
        print(
            json.dumps(
                {"command": "witness-bad-anticanonical", "inputs": inputs, "violations": violations},
                indent=2,
            )
        )
        return EXIT_OPERATION
    eps_list = [rat(e) for e in args.eps] if args.eps else None
    eps, value = catalog_mod.bad_anticanonical_witness(profile, eps_list)
    polarization = profile.named_divisors.get("H")
    if polarization is None:
        polarization = resolve_divisor(profile, "H")
    candidate = profile.named_divisors["F"] + eps * polarization
    report = {
        "command": "witness-bad-anticanonical",
        "inputs": inputs,
        "result": {
            "eps": format_rational(eps),
            "value": format_rational(value),
            "candidate": format_divisor(candidate, profile.basis),
        },
    }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adjoint3",
        description=(
            "Exact intersection-theory calculator for adjoint-bundle "
            "section bounds on smooth projective threefolds."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_files(p):
        p.add_argument("files", nargs="+", help="profile JSON file(s)")
        p.add_argument(
            "--jobs",
            type=int,
            default=1,
            help="evaluate multiple files concurrently (output keeps input order)",
        )

    p = sub.add_parser("validate", help="check profile invariants")
    add_files(p)

    p = sub.add_parser("chi", help="Euler characteristic of a line bundle")
    add_files(p)
    p.add_argument("--divisor", required=True, help="divisor name or expression")

    p = sub.add_parser("bound", help="evaluate a section lower bound")
    add_files(p)
    p.add_argument("--divisor", required=True, help="the ample divisor A")
    p.add_argument("--rule", required=True, choices=[*_BOUND_RULES, "miyaoka"])
    p.add_argument(
        "--ample",
        help="second divisor for the miyaoka rule (defaults to --divisor)",
    )

    p = sub.add_parser("certify", help="run a non-vanishing certification")
    add_files(p)
    p.add_argument("--divisor", required=True, help="the ample divisor A")
    p.add_argument("--target", required=True, choices=["adjoint", "bs"])

    p = sub.add_parser("blowup", help="transform a profile under a blow-up")
    p.add_argument("file", help="profile JSON file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--point", action="store_true", help="blow up a point")
    group.add_argument(
        "--curve",
        help="blow up a curve: 'g=<genus>,deg=SYM:val[;SYM:val...]'",
    )
    p.add_argument("--symbol", required=True, help="name of the exceptional symbol")
    p.add_argument("-o", "--output", help="write the profile here instead of stdout")

    p = sub.add_parser("identities", help="verify the symbolic identity suite")

    p = sub.add_parser("catalog", help="write a built-in profile")
    p.add_argument("name", help=f"one of {', '.join(catalog_mod.names())} or hypersurface(d)")
    p.add_argument("-o", "--output", help="write the profile here instead of stdout")

    p = sub.add_parser(
        "witness-bad-anticanonical",
        help="scan for eps with K.(F + eps*H)^2 > 0",
    )
    p.add_argument("file", help="profile JSON file with a named divisor F")
    p.add_argument("--eps", nargs="*", help="explicit rationals to scan")

    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "chi": _cmd_chi,
    "bound": _cmd_bound,
    "certify": _cmd_certify,
    "blowup": _cmd_blowup,
    "identities": _cmd_identities,
    "catalog": _cmd_catalog,
    "witness-bad-anticanonical": _cmd_witness,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        return handler(args)
    except _MALFORMED_ERRORS as exc:
        print(
            json.dumps(
                {"command": args.command, "error": _error_record(exc)}, indent=2
            )
        )
        return EXIT_MALFORMED
    except _OPERATION_ERRORS as exc:
        print(
            json.dumps(
                {"command": args.command, "error": _error_record(exc)}, indent=2
            )
        )
        return EXIT_OPERATION
    except OSError as exc:
        print(
            json.dumps(
                {"command": args.command, "error": _error_record(exc)}, indent=2
            )
        )
        return EXIT_MALFORMED
    except CalcError as exc:
        print(
            json.dumps(
                {"command": args.command, "error": _error_record(exc)}, indent=2
            )
        )
        return EXIT_OPERATION


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 on success (classification verdicts always exit 0), 1 when a
mathematical check fails (invalid net, identity breach, congruence
violation), 2 for usage and I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certifier import DomainError, classify, main_inequality, out_of_domain
from .dedekind_defect import dedekind_sum, reciprocity_check, signature_defect
from .divisor_lattice import canonical_class, chern_numbers, euler_chars, intersect
from .exact_arith import FieldDescriptor, format_fraction
from .hj_chains import CongruenceError, InadmissiblePrimeError, chain_signature, hj_chain, singularity_census
from .net_geometry import (
    InconsistentProfileError,
    MultiplicityProfile,
    NetError,
    NetRealization,
    delete_class,
    fermat_net,
    hesse_net,
    load_net,
    load_profile,
    multiplicity_profile,
    pencil_rank,
    profile_identities,
    profile_to_json,
    smallest_root_prime,
    validate_net,
)
from .signature_engine import consistency_report

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Violation(Exception):
    """Carries a payload to print before exiting with status 1."""

    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload


def builtin_net(name: str, cyclotomic: bool = False) -> NetRealization | None:
    if name == "hesse":
        return hesse_net(FieldDescriptor.cyclotomic(3))
    if name == "deleted-hesse":
        return delete_class(hesse_net(FieldDescriptor.cyclotomic(3)), 0)
    if name.startswith("fermat:"):
        try:
            d = int(name.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad builtin {name!r}; expected fermat:<d>") from None
        if cyclotomic:
            field = FieldDescriptor.cyclotomic(d)
        else:
            field = FieldDescriptor.prime(smallest_root_prime(d, d + 2))
        return fermat_net(d, field)
    return None


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _net_arg(source: str, cyclotomic: bool) -> NetRealization:
    net = builtin_net(source, cyclotomic)
    if net is not None:
        return net
    _read_json(source)
    try:
        return load_net(source)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed net file {source}: {exc}") from None


def _profile_arg(source: str, cyclotomic: bool = False) -> MultiplicityProfile:
    net = builtin_net(source, cyclotomic)
    if net is not None:
        return multiplicity_profile(net)
    _read_json(source)
    try:
        return load_profile(source)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed profile file {source}: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands; each returns a JSON-ready dict


def cmd_check_net(args) -> dict:
    net = _net_arg(args.net, args.cyclotomic)
    report = validate_net(net)
    out = {"field": net.field.to_json(), "validation": report.to_json()}
    if not report.valid:
        raise Violation("net fails the axioms", out)
    profile = multiplicity_profile(net)
    check = profile_identities(profile)
    out["profile"] = profile_to_json(profile)
    out["f0"], out["f1"] = profile.f0, profile.f1
    out["identities"] = check.to_json()
    out["pencil_rank"] = pencil_rank(net)
    if not check.passed or out["pencil_rank"] != 2:
        raise Violation("net invariants fail", out)
    return out


def cmd_invariants(args) -> dict:
    profile = _profile_arg(args.profile, args.cyclotomic)
    check = profile_identities(profile)
    if not check.passed:
        raise Violation("profile fails the counting identities", {"profile": profile_to_json(profile), "identities": check.to_json()})
    k = canonical_class(profile.d)
    c1_sq, c2 = chern_numbers(profile.d)
    return {
        "profile": profile_to_json(profile),
        "identities": check.to_json(),
        "chern_numbers": {"c1_sq": c1_sq, "c2": c2},
        "canonical_class_sq": intersect(k, k),
        "euler_chars": euler_chars(profile).to_json(),
    }


def cmd_hj(args) -> dict:
    chain = hj_chain(args.n, args.r)
    return {
        "n": chain.n,
        "r": chain.r,
        "length": chain.t,
        "self_intersections": list(chain.self_intersections),
        "alphas": [format_fraction(a) for a in chain.alphas],
        "delta_q_sq": format_fraction(chain.delta_q_sq),
        "chain_signature": chain_signature(chain),
    }


def cmd_dedekind(args) -> dict:
    s = dedekind_sum(args.h, args.k)
    out = {"h": args.h, "k": args.k, "s": format_fraction(s)}
    if args.h > 0:
        rec = reciprocity_check(args.h, args.k)
        out["reciprocity"] = {"lhs": format_fraction(rec.lhs), "rhs": format_fraction(rec.rhs), "passed": rec.passed}
    return out


def cmd_defect(args) -> dict:
    return signature_defect(args.n, args.r).to_json()


def cmd_signature(args) -> dict:
    profile = _profile_arg(args.profile, args.cyclotomic)
    check = profile_identities(profile)
    if not check.passed:
        raise Violation("profile fails the counting identities", {"profile": profile_to_json(profile), "identities": check.to_json()})
    report = consistency_report(profile, args.n).to_json()
    if args.n is not None:
        report["census"] = singularity_census(profile, args.n).to_json()
    return report


def cmd_classify(args) -> dict:
    try:
        cert = classify(args.m, args.d, cyclotomic=args.cyclotomic)
    except DomainError:
        cert = out_of_domain(args.m, args.d)
    return cert.to_json()


def cmd_table(args) -> dict:
    rows = []
    for m in range(3, args.m_max + 1):
        for d in range(3, args.d_max + 1):
            cert = classify(m, d, cyclotomic=args.cyclotomic)
            row = {"m": m, "d": d, "verdict": cert.verdict}
            if m >= 4 and d >= m:
                row["main_inequality"] = main_inequality(m, d)[0]
            rows.append(row)
    return {"m_max": args.m_max, "d_max": args.d_max, "cells": rows}


# ---------------------------------------------------------------------------


def _render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {val}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def _render_table(payload: dict) -> str:
    lines = [f"{'m':>3} {'d':>3}  verdict"]
    for row in payload["cells"]:
        extra = f"  ((m-3)d-3)(d-1) = {row['main_inequality']}" if "main_inequality" in row else ""
        lines.append(f"{row['m']:>3} {row['d']:>3}  {row['verdict']}{extra}")
    return "\n".join(lines)


def _emit(payload: dict, args, text_renderer=_render_text) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2)
    else:
        text = text_renderer(payload)
    if args.output:
        try:
            Path(args.output).write_text(text + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write {args.output}: {exc}") from None
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    def global_options(defaults: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global flags; SUPPRESS keeps them from clobbering earlier values
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--format", choices=("json", "text"), default="text" if defaults else argparse.SUPPRESS)
        p.add_argument("--output", metavar="PATH", default=None if defaults else argparse.SUPPRESS)
        p.add_argument("--cyclotomic", action="store_true", default=False if defaults else argparse.SUPPRESS,
                       help="realize Fermat witnesses over Q(zeta_d) instead of a prime field")
        return p

    common = global_options(False)
    parser = argparse.ArgumentParser(prog="netcert", description=__doc__.splitlines()[0],
                                     parents=[global_options(True)])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-net", parents=[common], help="validate a net and report its profile")
    p.add_argument("net", help="net JSON file or builtin: fermat:<d>, hesse, deleted-hesse")
    p.set_defaults(func=cmd_check_net)

    p = sub.add_parser("invariants", parents=[common], help="Chern numbers and Euler characteristics")
    p.add_argument("profile", help="profile JSON file or builtin")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("hj", parents=[common], help="resolution chain of u^n = x y^r")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_hj)

    p = sub.add_parser("dedekind", parents=[common], help="Dedekind sum s(h, k)")
    p.add_argument("h", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_dedekind)

    p = sub.add_parser("defect", parents=[common], help="signature defect of u^n = x y^r")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("signature", parents=[common], help="compare the two signature evaluations")
    p.add_argument("profile", help="profile JSON file or builtin")
    p.add_argument("--n", type=int, default=None, help="admissible prime for the exact K_Y^2")
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("classify", parents=[common], help="existence certificate for (m, d)")
    p.add_argument("m", type=int)
    p.add_argument("d", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("table", parents=[common], help="classification grid")
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.set_defaults(func=cmd_table)
    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    renderer = _render_table if args.command == "table" else _render_text
    try:
        payload = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Violation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        if exc.payload is not None:
            try:
                _emit(exc.payload, args)
            except UsageError as err:
                print(f"error: {err}", file=sys.stderr)
                return EXIT_USAGE
        return EXIT_VIOLATION
    except CongruenceError as exc:
        print(f"congruence violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InadmissiblePrimeError, InconsistentProfileError, NetError, ValueError) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    try:
        _emit(payload, args, renderer)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()

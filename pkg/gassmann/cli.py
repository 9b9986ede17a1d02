"""Command line: build subgroups, classify elements, test (local) conjugacy,
run the verification suites and export tables.

Exit codes: 0 success, 1 a claim was refuted, 2 usage error, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

import pandas as pd

from gassmann import tables
from gassmann.conjcls import class_invariant, similarity_rep
from gassmann.errors import BadParameter, GassmannError
from gassmann.families import (
    KERNEL_FAMILIES,
    NAMED,
    borel_pair,
    cartan_pair,
    glp_pair,
    kernel_family,
    named,
)
from gassmann.literals import parse_matrix, parse_subgroup
from gassmann.residue import Modulus
from gassmann.subgrp import are_conjugate, are_locally_conjugate, small_subgroups
from gassmann.utils import configure_logging, configure_tracing, export_settings, get_settings
from gassmann.verify import CLAIMS, get_claim, run_claim
from gassmann.verify.census import SubgroupCensus, all_images, borel_images, cartan_images, nonsplit_images
from gassmann.verify.kernel import enumerate_kernel_subgroups

logger = logging.getLogger("gassmann.cli")

EXIT_OK, EXIT_REFUTED, EXIT_BUDGET = 0, 1, 3
PAIRS = {"glp-pair": glp_pair, "cartan-pair": cartan_pair, "borel-pair": borel_pair}
IMAGES = {"borel": borel_images, "cartan": cartan_images, "nonsplit": nonsplit_images, "all": all_images}
TABLES = ("similarity-reps", "classes", "fingerprint", "kernel-orbits")
SUPPORTED_PRIMES = (3, 5, 7)


def parse_budget(text: str) -> float:
    raw = text.strip().lower().removesuffix("s")
    try:
        seconds = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"takes seconds such as 3600 or 3600s, got {text!r}") from None
    if seconds <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return seconds


def parse_params(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise BadParameter(f"--param takes key=value, got {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise BadParameter(f"--param {key} must be an integer, got {value!r}") from None
    return out


# -- output ------------------------------------------------------------------

def emit(payload, fmt: str):
    if isinstance(payload, pd.DataFrame):
        if fmt == "csv":
            sys.stdout.write(payload.to_csv(index=False))
        elif fmt == "text":
            print(payload.to_string(index=False))
        else:
            print(payload.to_json(orient="records"))
        return
    if fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        sys.stdout.write(pd.json_normalize(rows).to_csv(index=False))
    elif fmt == "text" and isinstance(payload, dict):
        for key, value in payload.items():
            print(f"{key}: {value if not isinstance(value, (dict, list)) else json.dumps(value)}")
    else:
        print(json.dumps(payload, indent=2))


# -- commands ----------------------------------------------------------------

def _modulus(args) -> Modulus:
    return Modulus(args.p, args.k)


def cmd_classify(args):
    g = parse_matrix(args.g, _modulus(args))
    return {"matrix": str(g), **class_invariant(g).to_json()}


def cmd_similarity(args):
    A = parse_matrix(args.g, Modulus(args.p, 1))
    rep = similarity_rep(A)
    return {"matrix": str(A), **rep.to_json(), "representative": str(rep.matrix(args.p))}


def _pair(args):
    modulus = _modulus(args)
    return parse_subgroup(args.h1, modulus), parse_subgroup(args.h2, modulus)


def cmd_locconj(args):
    H1, H2 = _pair(args)
    out = {"locally_conjugate": are_locally_conjugate(H1, H2), "orders": [H1.order, H2.order]}
    x = are_conjugate(H1, H2, get_settings().full_scan_limit)
    out["conjugate"] = x is not None
    if x is not None:
        out["witness"] = str(x)
    return out


def cmd_conjugate(args):
    H1, H2 = _pair(args)
    x = are_conjugate(H1, H2, get_settings().full_scan_limit)
    return {"conjugate": x is not None, "witness": str(x) if x is not None else None}


def cmd_family(args):
    params = parse_params(args.param)
    if args.name in PAIRS:
        if not args.D:
            raise BadParameter(f"{args.name} needs -D")
        D = parse_subgroup(args.D, _modulus(args))
        if args.name == "borel-pair":
            pair = borel_pair(args.tau, params.get("a", 0), args.kk, D)
        else:
            pair = PAIRS[args.name](D)
        H1, H2 = pair
        return {"H1": H1.to_json(), "H2": H2.to_json(), "locally_conjugate": are_locally_conjugate(H1, H2)}
    if args.name in NAMED:
        return named(args.name, args.p, args.k).to_json()
    if args.name.lower() in KERNEL_FAMILIES:
        return kernel_family(args.name, args.p, **params).to_json()
    choices = ", ".join(list(NAMED) + list(KERNEL_FAMILIES) + list(PAIRS))
    raise BadParameter(f"unknown family {args.name!r}; expected one of {choices}")


def cmd_enumerate(args):
    if args.what == "kernel":
        return [H.to_json() for H in enumerate_kernel_subgroups(args.p)]
    if args.what == "kernel-orbits":
        return tables.kernel_orbit_table(args.p)
    if args.what == "subgroups":
        if args.H is None:
            raise BadParameter("enumerate subgroups needs -H")
        return [S.to_json() for S in small_subgroups(parse_subgroup(args.H, _modulus(args)))]
    census = SubgroupCensus.build(args.p, IMAGES[args.images](args.p))
    return {
        "classes": [c.to_json() for c in census.classes],
        "nontrivial_pairs": [list(pair) for pair in census.nontrivial_pairs()],
        "incomplete": census.incomplete,
    }


def cmd_verify(args):
    if args.list:
        return [{"claim": c.id, "statement": c.statement, "primes": list(c.primes),
                 "slow_primes": list(c.slow_primes)} for c in CLAIMS.values()]
    if not args.claim:
        raise BadParameter("verify needs --claim ID, --claim all or --list")
    if args.claim == "all":
        claims = [c for c in CLAIMS.values() if not args.p_given or args.p in c.primes + c.slow_primes]
    else:
        claims = [get_claim(args.claim)]
    reports = []
    for claim in claims:
        primes = [args.p] if args.p_given else list(claim.primes + (claim.slow_primes if args.slow else ()))
        for p in primes:
            reports.append(run_claim(claim.id, p, args.budget))
    return [r.to_json() for r in reports] if len(reports) != 1 else reports[0].to_json()


def cmd_export(args):
    if args.table == "similarity-reps":
        return tables.similarity_table(args.p)
    if args.table == "classes":
        return tables.class_table(args.p, args.k)
    if args.table == "fingerprint":
        if args.H is None:
            raise BadParameter("export --table fingerprint needs -H")
        return tables.fingerprint_table(parse_subgroup(args.H, _modulus(args)))
    return tables.kernel_orbit_table(args.p)


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, default=None, help="odd prime (3, 5 or 7)")
    common.add_argument("-k", type=int, default=2, choices=(1, 2))
    common.add_argument("--format", choices=("json", "csv", "text"), default=None, help="json (csv for export)")
    common.add_argument("--jobs", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=parse_budget, default=None, help="seconds, e.g. 3600 or 3600s")
    common.add_argument("--log-level", default=None)

    parser = argparse.ArgumentParser(prog="gassmann", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="conjugacy-class invariant of an element")
    p.add_argument("-g", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("similarity", parents=[common], help="table representative of a matrix mod p")
    p.add_argument("-g", required=True)
    p.set_defaults(func=cmd_similarity)

    for name, func in (("locconj", cmd_locconj), ("conjugate", cmd_conjugate)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("-H1", "--H1", dest="h1", required=True)
        p.add_argument("-H2", "--H2", dest="h2", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("family", parents=[common], help="named subgroup, kernel family or pair")
    p.add_argument("name")
    p.add_argument("--param", action="append", help="key=value, repeatable")
    p.add_argument("-D", default=None, help="diagonal subgroup literal for the pair families")
    p.add_argument("--tau", default="plain")
    p.add_argument("--kk", default="I", help="k element kind of a Borel pair")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("enumerate", parents=[common])
    p.add_argument("what", choices=("kernel", "kernel-orbits", "subgroups", "census"))
    p.add_argument("-H", default=None)
    p.add_argument("--images", choices=tuple(IMAGES), default="borel")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--claim", default=None)
    p.add_argument("--list", action="store_true")
    p.add_argument("--slow", action="store_true", help="also run the long primes")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common])
    p.add_argument("--table", choices=TABLES, required=True)
    p.add_argument("-H", default=None)
    p.set_defaults(func=cmd_export)
    return parser


def _exit_code(payload) -> int:
    reports = payload if isinstance(payload, list) else [payload]
    statuses = {r.get("status") for r in reports if isinstance(r, dict)}
    if "refuted" in statuses:
        return EXIT_REFUTED
    if any(isinstance(r, dict) and r.get("stats", {}).get("reason") == "budget" for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.p_given = args.p is not None
    args.p = args.p if args.p_given else 3
    fmt = args.format or ("csv" if args.command == "export" else "json")
    try:
        if args.p not in SUPPORTED_PRIMES:
            raise BadParameter(f"-p must be one of {SUPPORTED_PRIMES}, got {args.p}")
        settings = get_settings().override(jobs=args.jobs, seed=args.seed, budget_seconds=args.budget,
                                           log_level=args.log_level)
        export_settings(settings)
        configure_logging(settings.log_level)
        configure_tracing(settings.trace)
        payload = args.func(args)
    except GassmannError as exc:
        logger.debug("command failed", exc_info=True)
        print(json.dumps(exc.to_json()), file=sys.stderr)
        return exc.exit_code
    emit(payload, fmt)
    return _exit_code(payload) if args.command == "verify" else EXIT_OK


def main():
    sys.exit(run())

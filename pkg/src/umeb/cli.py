"""Command-line interface: ``umeb {construct,verify,table,enumerate,search}``.

Exit codes: 0 success / verification pass, 1 verification fail (or an
extending vector found by ``search``), 2 bad flags or input.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import io
from .construct import PROP1, PROP2, available_constructions, build
from .errors import UMEBError
from .linalg import BipartiteDims, orthonormal_complement
from .search import DEFAULT_RESTARTS, DEFAULT_STEPS, default_seed, numerical_search
from .tables import OffGridWarning, render_table
from .verify import VerifyConfig, verify_umeb

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _add_generator_flags(p, required):
    p.add_argument("--d", type=int, required=required, help="first subsystem dimension")
    p.add_argument("--dprime", type=int, required=required, help="second subsystem dimension")
    p.add_argument("--method", choices=[PROP1, PROP2], required=required)
    p.add_argument("--m", type=int, help="modulus for prop2")


def _add_search_flags(p):
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--seed", type=int, default=None, help="default: $UMEB_SEED or 0")
    p.add_argument("--workers", type=int, default=1)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="umeb", description="Unextendible maximally entangled bases in C^d x C^d'."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="generate a closed-form UMEB")
    _add_generator_flags(p, required=True)
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--unicode", action="store_true", help="print w as ω in tables")

    p = sub.add_parser("verify", help="check the UMEB conditions")
    p.add_argument("--in", dest="in_path", help="StateSetDocument to verify")
    _add_generator_flags(p, required=False)
    _add_search_flags(p)
    p.add_argument("--cross-check", action="store_true", help="also run the numerical search")
    p.add_argument("--json", action="store_true", help="print the report as JSON")

    p = sub.add_parser("table", help="print a document as a table")
    p.add_argument("--in", dest="in_path", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", dest="symbolic", action="store_true", default=True)
    mode.add_argument("--numeric", dest="symbolic", action="store_false")
    p.add_argument("--unicode", action="store_true")
    p.add_argument("--precision", type=int, default=4)

    p = sub.add_parser("enumerate", help="list available constructions")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--dprime", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("search", help="search a document's complement for a maximally entangled vector")
    p.add_argument("--in", dest="in_path", required=True)
    _add_search_flags(p)
    p.add_argument("--json", action="store_true")
    return parser


def _load_set(args):
    if args.in_path:
        return io.load(args.in_path)
    if args.d is None or args.dprime is None or args.method is None:
        raise UMEBError("give --in PATH or all of --d, --dprime, --method")
    return build(BipartiteDims(args.d, args.dprime), args.method, args.m)


def _emit(text, out=None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(state_set, **kwargs):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", OffGridWarning)
        text = render_table(state_set, **kwargs)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return text


def cmd_construct(args):
    state_set = build(BipartiteDims(args.d, args.dprime), args.method, args.m)
    if args.format == "table":
        _emit(_table(state_set, unicode=args.unicode), args.out)
    else:
        _emit(io.dumps(state_set), args.out)
    return EXIT_OK


def _fmt_vector(vec):
    dims = vec.dims
    terms = []
    for flat, a in enumerate(vec.amplitudes):
        if abs(a) > 1e-9:
            i, j = dims.ket_of(flat)
            terms.append(f"({a.real:+.6f}{a.imag:+.6f}i)|{i},{j}>")
    return " ".join(terms)


def format_report(report) -> str:
    d, dp = report.dims
    lines = [f"members: {report.members} in C^{d} x C^{dp} (provenance: {report.provenance})"]
    yes = {True: "PASS", False: "FAIL", None: "SKIPPED"}
    lines.append(
        f"orthonormal:          {yes[report.orthonormal.passed]}  "
        f"max |G - I| = {report.orthonormal.residual:.3e}"
    )
    lines.append(
        f"maximally entangled:  {yes[report.maximally_entangled.passed]}  "
        f"worst |sigma - 1/sqrt(d)| = {report.maximally_entangled.residual:.3e}"
        f" (state {report.maximally_entangled.worst_index})"
    )
    lines.append(f"unextendible:         {yes[report.unextendible]}  decided by {report.decided_by}")
    s = report.structural
    if s is not None:
        lines.append(
            f"  structural: column support {list(s.column_support)}, rank bound {s.rank_bound}, "
            f"d = {s.d} -> {'valid' if s.valid else 'inconclusive'} ({s.complement_source} complement)"
        )
    n = report.numerical
    if n is not None:
        lines.append(
            f"  numerical: best min Schmidt {n.best_min_schmidt:.9f} vs 1/sqrt(d) = {n.target:.9f} "
            f"(restarts={n.restarts}, steps={n.steps}, seed={n.seed}, backend={n.backend})"
        )
        if n.found_maximally_entangled:
            lines.append(f"  witness: {_fmt_vector(n.best_vector)}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    lines.append(f"overall: {yes[report.overall]}")
    return "\n".join(lines) + "\n"


def cmd_verify(args):
    state_set = _load_set(args)
    seed = default_seed() if args.seed is None else args.seed
    config = VerifyConfig(
        restarts=args.restarts,
        steps=args.steps,
        seed=seed,
        cross_check=args.cross_check,
        workers=args.workers,
    )
    report = verify_umeb(state_set, config)
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(), indent=1) + "\n")
    else:
        sys.stdout.write(format_report(report))
    return EXIT_OK if report.overall else EXIT_FAIL


def cmd_table(args):
    state_set = io.load(args.in_path)
    sys.stdout.write(
        _table(state_set, symbolic=args.symbolic, unicode=args.unicode, precision=args.precision)
    )
    return EXIT_OK


def cmd_enumerate(args):
    dims = BipartiteDims(args.d, args.dprime)
    options = available_constructions(dims)
    sizes = sorted({o.size for o in options})
    if args.json:
        doc = {
            "d": dims.d,
            "d_prime": dims.d_prime,
            "constructions": [{"method": o.method, "m": o.m_param, "size": o.size} for o in options],
            "prop1_available": dims.r > 0,
            "distinct_sizes": sizes,
        }
        sys.stdout.write(json.dumps(doc, indent=1) + "\n")
        return EXIT_OK
    out = [f"C^{dims.d} x C^{dims.d_prime}: q={dims.q}, r={dims.r}"]
    if dims.r == 0:
        out.append("prop1: unavailable (r = 0)")
    for o in options:
        tag = "prop1" if o.method == PROP1 else f"prop2 m={o.m_param}"
        out.append(f"{tag}: {o.size} members")
    out.append(f"distinct sizes: {len(sizes)} {sizes}")
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_search(args):
    state_set = io.load(args.in_path)
    complement = orthonormal_complement(state_set.as_basis())
    seed = default_seed() if args.seed is None else args.seed
    cert = numerical_search(
        complement, restarts=args.restarts, seed=seed, steps=args.steps, workers=args.workers
    )
    if args.json:
        doc = cert.to_dict()
        doc["complement_dimension"] = len(complement)
        sys.stdout.write(json.dumps(doc, indent=1) + "\n")
    else:
        verdict = (
            "maximally entangled vector FOUND: set is extendible"
            if cert.found_maximally_entangled
            else "no maximally entangled vector found (evidence, not proof)"
        )
        sys.stdout.write(
            f"complement dimension: {len(complement)}\n"
            f"best min Schmidt: {cert.best_min_schmidt:.9f} (target {cert.target:.9f})\n"
            f"witness: {_fmt_vector(cert.best_vector)}\n{verdict}\n"
        )
    return EXIT_FAIL if cert.found_maximally_entangled else EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "table": cmd_table,
    "enumerate": cmd_enumerate,
    "search": cmd_search,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UMEBError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands:

  verify       identity suites for one algebra (field identities for every
               generator, sl(2) ladders, gradient independence, triangular
               decomposition, shifted-gradient rank)
  index        the full pipeline for one nilpotent orbit
  table        the pipeline swept over every valid partition of a size
  decompose    the triangular decomposition bases
  convolution  the alpha table and proportionality-constant audit

Exit codes: 0 all checks passed; 1 a check failed; 2 the orbit violates
the spanning hypothesis (reported, not a failure); 3 usage error.  Output
is JSON (default) or CSV, deterministic for a fixed seed; rationals are
serialized as exact "p/q" strings.  NILAB_THREADS caps the number of
worker processes a table sweep may use.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from ._scalar import rat_str
from .algebras import build_algebra
from .errors import ContractError, HypothesisViolation, NilabError, IdentityError
from .index import (
    analyze_orbit,
    bracket_matrix,
    build_pair_data,
    convolution_at,
    sweep,
)
from .invariants import (
    generators,
    kostant_independence,
    make_samples,
    mf_shift_rank,
    sl2_vectors,
    triangular_decomposition,
    verify_field_identities,
)
from .reports import CheckReport, coords_strs
from .triples import (
    Partition,
    _validate_partition,
    nilpotent_from_partition,
    principal_triplet,
    sl2_complete,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_HYPOTHESIS = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _meta(args, alg, partition=None) -> dict:
    return {
        "family": alg.family,
        "rank": alg.rank_r,
        "n": alg.matrix_size_N,
        "partition": str(partition) if partition is not None else None,
        "seed": getattr(args, "seed", 0),
        "version": __version__,
    }


def _emit(args, payload: dict, rows=None) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        if rows is None:
            raise ContractError("this command has no CSV form")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in rows:
            writer.writerow(row)
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _rank_for(args) -> int:
    family = args.family.upper()
    if getattr(args, "rank", None) is not None:
        return args.rank
    n = args.n
    if family == "A":
        return n - 1
    if family == "B":
        if n % 2 == 0:
            raise ContractError("B family needs odd n")
        return (n - 1) // 2
    if family in ("C", "D"):
        if n % 2 == 1:
            raise ContractError(f"{family} family needs even n")
        return n // 2
    raise ContractError(f"unknown family {args.family!r}")


def _cmd_verify(args) -> int:
    alg = build_algebra(args.family, args.rank)
    samples = make_samples(alg, args.samples, args.seed)
    checks = []
    for gen in generators(alg):
        checks.append(verify_field_identities(alg, gen.index_j, samples).to_dict())
    triple = principal_triplet(alg)
    ladder = CheckReport(f"{alg.name} sl(2) ladders")
    try:
        sl2_vectors(alg, triple)
        ladder.add("eigen-ladders", True)
    except IdentityError as exc:
        ladder.add("eigen-ladders", False, str(exc))
    checks.append(ladder.to_dict())
    try:
        checks.append(kostant_independence(alg, triple).to_dict())
    except IdentityError as exc:
        failed = CheckReport(f"{alg.name} gradient independence at regular e")
        failed.add("independence", False, str(exc))
        checks.append(failed.to_dict())
    tri = CheckReport(f"{alg.name} triangular decomposition")
    try:
        decomposition = triangular_decomposition(alg, triple)
        tri.add(
            "dims",
            True,
            f"({decomposition.h_space.dim}, {decomposition.n_plus.dim}, "
            f"{decomposition.n_minus.dim})",
        )
    except IdentityError as exc:
        tri.add("dims", False, str(exc))
    checks.append(tri.to_dict())
    shifts = list(range(1, max(alg.exponents) + 2))
    rank = mf_shift_rank(alg, triple, shifts)
    half_orbit = (alg.dim - alg.rank_r) // 2
    shift_report = CheckReport(f"{alg.name} shifted-gradient span")
    shift_report.add(
        "half-orbit-dimension", rank == half_orbit, f"rank {rank}, expected {half_orbit}"
    )
    checks.append(shift_report.to_dict())
    payload = {
        "meta": _meta(args, alg),
        "algebra": alg.describe(),
        "checks": checks,
        "results": {"all_pass": all(c["pass"] for c in checks)},
    }
    _emit(args, payload)
    return EXIT_OK if payload["results"]["all_pass"] else EXIT_CHECK_FAILED


def _cmd_index(args) -> int:
    alg = build_algebra(args.family, _rank_for(args))
    partition = Partition.parse(args.partition)
    _validate_partition(alg, partition)  # usage errors exit 3, not 1
    report = analyze_orbit(alg, partition, seed=args.seed)
    payload = {
        "meta": _meta(args, alg, partition),
        "checks": report.to_dict()["checks"],
        "results": {
            "ind": report.ind,
            "hypothesis_ok": report.hypothesis_ok,
            "s": report.s,
            "dims": report.dims,
            "pair_exponents": list(report.pair_exponents),
            "det_consistent": report.det_consistent,
            "note": report.note,
            "error": report.error,
        },
    }
    _emit(args, payload)
    if report.error or (not report.skipped and report.hypothesis_ok and not report.passed):
        return EXIT_CHECK_FAILED
    if not report.hypothesis_ok and not report.skipped:
        return EXIT_HYPOTHESIS
    return EXIT_OK


def _csv_rows(reports):
    rows = [["partition", "dim_delta", "s", "ind", "hypothesis_ok", "gamma_nonzero"]]
    for rep in reports:
        if rep.skipped:
            rows.append([rep.partition, "", "", "", "", ""])
            continue
        rows.append(
            [
                rep.partition,
                rep.dims.get("delta", ""),
                rep.s,
                rep.ind if rep.ind is not None else "",
                rep.hypothesis_ok,
                rep.gamma_nonzero if rep.gamma_nonzero is not None else "",
            ]
        )
    return rows


def _cmd_table(args) -> int:
    workers = int(os.environ.get("NILAB_THREADS", "1") or "1")
    reports = sweep(args.family, args.n, seed=args.seed, workers=max(1, workers))
    alg = build_algebra(args.family, _rank_for(args))
    payload = {
        "meta": _meta(args, alg),
        "checks": [],
        "results": {"orbits": [rep.to_dict() for rep in reports]},
    }
    _emit(args, payload, rows=_csv_rows(reports))
    failed = any(rep.error or (rep.hypothesis_ok and not rep.passed) for rep in reports)
    if failed:
        return EXIT_CHECK_FAILED
    if any(not rep.hypothesis_ok and not rep.skipped for rep in reports):
        return EXIT_HYPOTHESIS
    return EXIT_OK


def _cmd_decompose(args) -> int:
    alg = build_algebra(args.family, args.rank)
    decomposition = triangular_decomposition(alg)
    payload = {
        "meta": _meta(args, alg),
        "checks": [],
        "results": {
            "h_basis": [coords_strs(el) for el in decomposition.h_space.basis],
            "n_plus_basis": [coords_strs(el) for el in decomposition.n_plus.basis],
            "n_minus_basis": [coords_strs(el) for el in decomposition.n_minus.basis],
            "dims": {
                "h": decomposition.h_space.dim,
                "n_plus": decomposition.n_plus.dim,
                "n_minus": decomposition.n_minus.dim,
            },
        },
    }
    _emit(args, payload)
    return EXIT_OK


def _cmd_convolution(args) -> int:
    alg = build_algebra(args.family, _rank_for(args))
    partition = Partition.parse(args.partition)
    _validate_partition(alg, partition)
    e = nilpotent_from_partition(alg, partition)
    if e.is_zero():
        print("zero orbit has no pipeline", file=sys.stderr)
        return EXIT_USAGE
    triple = sl2_complete(alg, e)
    pd = build_pair_data(alg, triple)
    if not pd.hypothesis_ok:
        payload = {
            "meta": _meta(args, alg, partition),
            "checks": [],
            "results": {"hypothesis_ok": False},
        }
        _emit(args, payload)
        return EXIT_HYPOTHESIS
    bracket_matrix(pd)  # validates membership and symmetry
    table = {}
    audit = {}
    for i in range(1, pd.s + 1):
        for j in range(i, pd.s + 1):
            conv = convolution_at(pd, i, j)
            key = f"{i},{j}"
            table[key] = [rat_str(a) for a in conv.alphas]
            audit[key] = {
                "c_observed": rat_str(conv.c_observed)
                if conv.c_observed is not None
                else None,
                "c_reference": rat_str(conv.c_reference),
            }
    payload = {
        "meta": _meta(args, alg, partition),
        "checks": [],
        "results": {
            "hypothesis_ok": True,
            "s": pd.s,
            "pair_exponents": list(pd.pair_exponents),
            "alphas": table,
            "const_audit": audit,
        },
    }
    _emit(args, payload)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nilab", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, needs_n=False, needs_rank=False, needs_partition=False):
        p.add_argument("--family", required=True, choices=list("ABCD"))
        if needs_rank:
            p.add_argument("--rank", required=True, type=int)
        if needs_n:
            p.add_argument("--n", required=True, type=int)
        if needs_partition:
            p.add_argument("--partition", required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--output", default=None)

    p_verify = sub.add_parser("verify", help="run the identity suites")
    common(p_verify, needs_rank=True)
    p_verify.add_argument("--samples", type=int, default=20)
    p_verify.set_defaults(func=_cmd_verify)

    p_index = sub.add_parser("index", help="pipeline for one orbit")
    common(p_index, needs_n=True, needs_partition=True)
    p_index.set_defaults(func=_cmd_index)

    p_table = sub.add_parser("table", help="pipeline for every partition")
    common(p_table, needs_n=True)
    p_table.set_defaults(func=_cmd_table)

    p_dec = sub.add_parser("decompose", help="triangular decomposition bases")
    common(p_dec, needs_rank=True)
    p_dec.set_defaults(func=_cmd_decompose)

    p_conv = sub.add_parser("convolution", help="alpha table and constant audit")
    common(p_conv, needs_n=True, needs_partition=True)
    p_conv.set_defaults(func=_cmd_convolution)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ContractError as exc:
        print(f"nilab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypothesisViolation as exc:
        print(f"nilab: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except NilabError as exc:
        print(f"nilab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

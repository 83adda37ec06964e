"""Command-line entry point ``homolog``.

Exit status: 0 success, 1 an expectation or certificate failed, 2 bad input,
3 a cap was hit or the answer is undecided.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .bounds import ITCertificate, best_V_search, check_it_certificate, derived_dim_bounds
from .bracket import UNKNOWN, BracketSearch
from .corpus import run_verification
from .decompose import IsoRegistry
from .errors import CapError, HomologError, InputError
from .invariants import DEFAULT_DEPTH, DEFAULT_SCAN_CAP, compute_invariants, document_vertex_set
from .io import Document, emit_report, parse_file
from .modules import Representation, direct_sum_module, random_module, standard_module
from .syzygy import DEFAULT_CUTOFF, syzygy_scan
from .torsion import vertex_set

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _load(path: str) -> Document:
    try:
        return parse_file(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def resolve_module(doc: Document, A, text: str) -> Representation:
    """A module named in the file, a standard module like ``P:1``, or a ``+`` separated sum of these."""
    parts = []
    for tok in text.split("+"):
        tok = tok.strip()
        if ":" in tok:
            kind, v = tok.split(":", 1)
            try:
                parts.append(standard_module(A, kind, v))
            except ValueError as exc:
                raise InputError(str(exc)) from None
        else:
            parts.append(doc.module(tok, A))
    return parts[0] if len(parts) == 1 else direct_sum_module(parts, A)


def _out(data) -> None:
    sys.stdout.write(emit_report(data))


def cmd_invariants(args) -> int:
    doc = _load(args.file)
    A = doc.algebra()
    rep = compute_invariants(A, document_vertex_set(doc, A), args.cutoff, args.depth, args.seed,
                             scan_dim_cap=args.dim_cap, timing=args.timing)
    if args.json:
        _out(rep)
        return EXIT_OK
    data = rep.as_json()
    for key in ("dimension", "loewy_length", "gldim", "selfinjective", "right_injective_dimension",
                "left_injective_dimension", "V", "pd_V", "ll_tV", "itdim_upper"):
        val = data[key]
        print(f"{key}: {val}")
    print(f"bounds: best {data['bounds']['best']}")
    for name, e in data["bounds"]["entries"].items():
        print(f"  {name}: {e['value']}  [{e['formula']}]")
    print(f"syzygy_scan: {data['syzygy_scan']['verdict']}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    doc = _load(args.file)
    A = doc.algebra()
    if args.best_v:
        V, rep = best_V_search(A, args.cutoff)
    else:
        if args.simples is not None:
            V = vertex_set(A, [s for s in args.simples.split(",") if s])
        else:
            V = document_vertex_set(doc, A)
        rep = derived_dim_bounds(A, V, args.cutoff)
    _out(rep.as_json())
    return EXIT_OK


def cmd_syzygy_scan(args) -> int:
    doc = _load(args.file)
    A = doc.algebra()
    res = syzygy_scan(A, depth=args.depth, dim_cap=args.dim_cap, seed=args.seed)
    _out(res.as_json())
    return EXIT_OK


def cmd_oracle(args) -> int:
    doc = _load(args.file)
    A = doc.algebra()
    if args.level < 1:
        raise InputError("level must be at least 1")
    M = resolve_module(doc, A, args.module)
    T = resolve_module(doc, A, args.generator)
    search = BracketSearch(IsoRegistry(args.seed), dim_cap=args.dim_cap)
    res = search.power_membership(M, T, args.level, mode=args.mode)
    _out(res.as_json())
    return EXIT_CAP if res.answer == UNKNOWN else EXIT_OK


def cmd_it_check(args) -> int:
    doc = _load(args.file)
    A = doc.algebra()
    V = resolve_module(doc, A, args.module)
    try:
        cert = ITCertificate(args.m, args.n, V)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rng = np.random.default_rng(args.seed)
    samples = [random_module(A, rng, args.max_dim) for _ in range(args.samples)]
    verdict = check_it_certificate(A, cert, samples, registry=IsoRegistry(args.seed))
    _out(verdict.as_json())
    return {"verified-on-samples": EXIT_OK, "refuted": EXIT_FAIL}.get(verdict.verdict, EXIT_CAP)


def cmd_check_corpus(args) -> int:
    rep = run_verification(args.names or None, args.cutoff, args.seed, args.depth, args.timing)
    sys.stdout.write(rep.emit())
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homolog", description="Homological invariants of bound quiver algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", help="dimensions, layer lengths, bounds and a syzygy scan")
    s.add_argument("file")
    s.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    s.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    s.add_argument("--dim-cap", type=int, default=DEFAULT_SCAN_CAP)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")
    s.add_argument("--timing", action="store_true", help="add wall-clock milliseconds to the JSON")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("bounds", help="upper bounds for the derived dimension")
    s.add_argument("file")
    s.add_argument("--simples", help="comma separated vertex ids (default: the file's meta V)")
    s.add_argument("--best-v", action="store_true", help="search for the vertex set giving the best bound")
    s.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("syzygy-scan", help="indecomposable syzygy summands by depth")
    s.add_argument("file")
    s.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    s.add_argument("--dim-cap", type=int, default=256)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_syzygy_scan)

    s = sub.add_parser("oracle", help="brute-force decision procedures")
    osub = s.add_subparsers(dest="oracle", required=True)
    b = osub.add_parser("bracket", help="is MODULE in the level-N class generated by GENERATOR")
    b.add_argument("file")
    b.add_argument("--module", required=True)
    b.add_argument("--generator", required=True)
    b.add_argument("--level", type=int, required=True)
    b.add_argument("--mode", choices=("direct", "summand"), default="direct")
    b.add_argument("--dim-cap", type=int, default=12)
    b.add_argument("--seed", type=int, default=0)
    b.set_defaults(func=cmd_oracle)

    s = sub.add_parser("it-check", help="test an Igusa-Todorov certificate on random modules")
    s.add_argument("file")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--module", required=True)
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--max-dim", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_it_check)

    s = sub.add_parser("check-corpus", help="verify the built-in corpus against its expectations")
    s.add_argument("names", nargs="*")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    s.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_check_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapError as exc:
        print(f"cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HomologError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

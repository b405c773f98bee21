"""Command-line interface.

Exit codes: 0 success, 2 solver failure, 3 unreadable or invalid input,
4 verification failure.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import gram
from .complex import metric_from_squares, num_classes
from .documents import EmbeddingDocument, parse_complex_document
from .errors import (
    ComplexMismatch,
    EmbedError,
    ParseError,
    RetriesExhausted,
    SingularFamily,
    SolverDiverged,
    UnknownFamily,
    VerificationFailed,
)
from .families import FAMILIES, make_family
from .gluing import GluingOptions, solve_gluing
from .greene import GreeneOptions, solve_greene, target_half_dimension
from .spanning import solve_spanning
from .verify import check_mode, verify, verify_isometry

EXIT_OK, EXIT_SOLVER, EXIT_PARSE, EXIT_VERIFY = 0, 2, 3, 4
MODE_NAMES = {"embedding": "embedding", "local": "local_embedding", "immersion": "immersion"}
DEFAULT_TOL = {"greene": 1e-10, "spanning": 1e-8, "gluing": 1e-10}


def default_seed() -> int:
    return int(os.environ.get("INDEF_EMBED_SEED", "0"))


def run_method(c, m, method: str, mode: str, seed: int, tol: float | None = None):
    """Solve with one of the three constructions.

    Returns ``(map, extra, iterations)`` where ``extra`` holds the records
    that go into the embedding document.
    """
    tol = tol if tol is not None else DEFAULT_TOL[method]
    if method == "greene":
        res = solve_greene(c, m, GreeneOptions(tol=tol, seed=seed, mode=mode))
        extra = {
            "lambda_final": res.lam,
            "newton_iters": res.newton_iters,
            "lambda_doublings": res.lambda_doublings,
        }
        return res.map, extra, res.newton_iters
    if method == "spanning":
        if mode != "embedding":
            raise ParseError("the spanning method only supports embedding mode")
        z, sol = solve_spanning(c, m, np.random.default_rng(seed))
        extra = {
            "alphas": [float(a) for a in sol.alphas],
            "condition": sol.condition,
            "base_dimension": sol.base.dim,
        }
        return z, extra, sol.family.draws
    if method == "gluing":
        res = solve_gluing(c, m, GluingOptions(tol=tol, seed=seed, mode=mode))
        extra = {
            "partition": [list(k) for k in res.partition.classes],
            "mu": list(res.partition.mu),
            "half_dimension": res.q,
            "classes": res.partition.size,
        }
        iters = sum(s.newton_iters for s in res.star_solutions)
        return res.map, extra, iters
    raise ParseError(f"unknown method {method!r}")


def cmd_embed(args) -> int:
    c, m = parse_complex_document(args.input)
    mode = MODE_NAMES[args.mode]
    tol = args.tol if args.tol is not None else DEFAULT_TOL[args.method]
    try:
        f, extra, _ = run_method(c, m, args.method, mode, args.seed, tol)
    except (SolverDiverged, RetriesExhausted, SingularFamily) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    iso = verify_isometry(f, m, tol)
    doc = EmbeddingDocument(args.method, mode, args.seed, f.signature, f.coords, iso.max_edge_residual, extra)
    text = doc.dumps()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.export_csv:
        with open(args.export_csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["vertex", "label"] + [f"x{k}" for k in range(f.dim)])
            for v, row in enumerate(f.coords):
                w.writerow([v, c.vertex_labels[v]] + [repr(float(x)) for x in row])
    geo = check_mode(f, mode)
    if not iso.passed or not geo.ok:
        print(
            f"verification failed: residual {iso.max_edge_residual:.3e} "
            f"(threshold {iso.threshold:.3e}), {mode} check {geo.ok}",
            file=sys.stderr,
        )
        return EXIT_VERIFY
    print(
        f"{args.method}: p={f.signature.p} q={f.signature.q} residual={iso.max_edge_residual:.3e}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    c, m = parse_complex_document(args.complex)
    doc = EmbeddingDocument.parse(args.embedding)
    if len(doc.coordinates) != c.vertex_count:
        raise ComplexMismatch(
            f"embedding has {len(doc.coordinates)} vertices, complex has {c.vertex_count}"
        )
    f = doc.to_map(c)
    rep = verify(f, m, args.tol)
    worst = "-" if rep.worst_edge is None else f"{list(c.edges[rep.worst_edge])}"
    print(f"signature        p={f.signature.p} q={f.signature.q}")
    print(f"max_residual     {rep.max_edge_residual:.6e}")
    print(f"worst_edge       {worst}")
    print(f"isometric        {rep.isometric}")
    print(f"embedding        {rep.is_embedding}")
    print(f"local_embedding  {rep.is_local_embedding}")
    print(f"immersion        {rep.is_immersion}")
    required = {"embedding": rep.is_embedding, "local_embedding": rep.is_local_embedding,
                "immersion": rep.is_immersion}.get(doc.mode, rep.is_embedding)
    return EXIT_OK if rep.isometric and required else EXIT_VERIFY


def cmd_classify(args) -> int:
    c, m = parse_complex_document(args.input)
    cls = gram.classify(c, m, args.zero_tol)
    print(cls.kind.value)
    print(f"margin {cls.margin:.6e}")
    print("simplex\tn_plus\tn_zero\tn_minus")
    for s, t in cls.table.items():
        print(f"{list(s)}\t{t.n_plus}\t{t.n_zero}\t{t.n_minus}")
    return EXIT_OK


def cmd_obstruct(args) -> int:
    c, m = parse_complex_document(args.input)
    ob = gram.obstruction(c, m, args.clique_cap, cliques=not args.simplices_only)
    print(f"p_min {ob.p_min}")
    print(f"q_min {ob.q_min}")
    if ob.truncated:
        print("note: some cliques were truncated to the cap", file=sys.stderr)
    return EXIT_OK


def cmd_info(args) -> int:
    c, m = parse_complex_document(args.input)
    n, d = c.dimension, c.max_degree
    D = num_classes(d)
    q = target_half_dimension(c)
    print(f"vertices   {c.vertex_count}")
    print(f"edges      {c.num_edges}")
    print(f"dimension  {n}")
    print(f"max_degree {d}")
    print(f"greene     R^{q}_{q}")
    print(f"spanning   p+q = {2 * n + 1 + c.num_edges}")
    print(f"gluing     R^{2 * q * D}_{2 * q * D} (D = {D})")
    return EXIT_OK


BENCH_COLUMNS = ["family", "size", "method", "n", "d", "V", "E", "p", "q", "residual", "iters", "millis"]


def bench_rows(family: str, sizes, seed: int, methods=("greene", "spanning", "gluing"), timing=True):
    if family not in FAMILIES:
        raise UnknownFamily(f"unknown family {family!r}; choose from {FAMILIES}")
    for size in sizes:
        c = make_family(family, size)
        rng = np.random.default_rng([seed, size])
        m = metric_from_squares(c, rng.uniform(-10.0, 10.0, c.num_edges))
        for method in methods:
            t0 = time.perf_counter()
            f, _, iters = run_method(c, m, method, "embedding", seed)
            millis = (time.perf_counter() - t0) * 1e3 if timing else 0.0
            res = verify_isometry(f, m).max_edge_residual
            yield {
                "family": family, "size": size, "method": method,
                "n": c.dimension, "d": c.max_degree, "V": c.vertex_count, "E": c.num_edges,
                "p": f.signature.p, "q": f.signature.q,
                "residual": f"{res:.3e}", "iters": iters, "millis": f"{millis:.1f}",
            }


def cmd_bench(args) -> int:
    out = io.StringIO()
    w = csv.DictWriter(out, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    w.writeheader()
    methods = tuple(args.methods.split(",")) if args.methods else ("greene", "spanning", "gluing")
    for row in bench_rows(args.family, args.sizes, args.seed, methods, not args.no_timing):
        w.writerow(row)
    if args.output:
        Path(args.output).write_text(out.getvalue())
    else:
        sys.stdout.write(out.getvalue())
    return EXIT_OK


def _sizes(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()] if text.strip() else []


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="indefembed", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="compute a simplicial isometric embedding")
    p.add_argument("input")
    p.add_argument("--method", choices=["greene", "spanning", "gluing"], default="greene")
    p.add_argument("--mode", choices=list(MODE_NAMES), default="embedding")
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--output", "-o")
    p.add_argument("--export-csv")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify", help="check an embedding document against a complex")
    p.add_argument("embedding")
    p.add_argument("complex")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="Euclidean / Minkowski / Degenerate")
    p.add_argument("input")
    p.add_argument("--zero-tol", type=float, default=gram.ZERO_TOL)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("obstruct", help="lower bounds on the target signature")
    p.add_argument("input")
    p.add_argument("--clique-cap", type=int, default=12)
    p.add_argument("--simplices-only", action="store_true")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("info", help="sizes and target dimensions")
    p.add_argument("input")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("bench", help="CSV benchmark over a generated family")
    p.add_argument("--family", required=True)
    p.add_argument("--sizes", type=_sizes, default=[])
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--methods", default="")
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ComplexMismatch, UnknownFamily) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SolverDiverged, RetriesExhausted, SingularFamily) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except EmbedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: ``solve``, ``solve-multi``, ``stream``, ``penrose``,
``profile``. Vectors are printed one entry per line as ``re imag``;
matrices as Matrix Market text; diagnostics as ``key: value`` lines
under a ``# summary`` heading. Exit status: 0 ok, 1 inconsistent system
under ``--strict``, 2 bad arguments or unreadable input.

The default factorization tolerance can be set with ``INSITU_TOL``;
``--tol`` takes precedence.
"""
from __future__ import annotations

import argparse
import os
import sys
from contextlib import contextmanager

import numpy as np

from .errors import ArgumentError, ComputationError, ParseError, StateError
from .instrument import added_complexity, profile_col_solver, profile_row_solver
from .mmio import parse_complex, read_matrix, read_vector, write_matrix_market
from .penrose import penrose_check
from .factorize import col_orthonormalize, row_orthonormalize
from .solve_batch import gen_inverse_col, gen_inverse_row, solve_col_lsq, solve_matrix_rhs, solve_row_minnorm
from .solve_online import OnlineColState, OnlineRowState

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE = 0, 1, 2


def _tol(args):
    if args.tol is not None:
        return args.tol
    env = os.environ.get("INSITU_TOL")
    if env:
        try:
            value = float(env)
        except ValueError:
            raise ArgumentError(f"INSITU_TOL={env!r} is not a number") from None
        if not value > 0:
            raise ArgumentError("INSITU_TOL must be positive")
        return value
    return None


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if x is None:
        return "none"
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


def _vector_lines(v):
    return [f"{float(z.real)!r} {float(z.imag)!r}" for z in np.asarray(v).ravel()]


def _summary(out, **items):
    out.write("# summary\n")
    for key, val in items.items():
        out.write(f"{key}: {_fmt(val)}\n")


@contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _emit_result(out, res, emit_g, emit_p, extra=None):
    out.write("# x_p\n")
    out.write("".join(line + "\n" for line in _vector_lines(res.x_p)))
    if emit_g and res.g is not None:
        out.write("# G\n")
        write_matrix_market(res.g, out)
    if emit_p and res.p is not None:
        out.write("# P\n")
        write_matrix_market(res.p, out)
    items = dict(mode=res.mode, rank=res.rank, residual_norm=res.residual_norm)
    if res.b_projected_norm is not None:
        items["b_projected_norm"] = res.b_projected_norm
    items.update(inconsistent=res.inconsistent, tol=res.tol, consistency_tol=res.consistency_tol)
    if res.truncated:
        items["truncated"] = True
    items.update(extra or {})
    _summary(out, **items)


def cmd_solve(args):
    a = read_matrix(args.matrix)
    b = read_vector(args.rhs)
    solver = solve_row_minnorm if args.mode == "row" else solve_col_lsq
    res = solver(a, b, tol=_tol(args), want_g=args.emit_g, want_p=args.emit_p,
                 consistency_tol=args.consistency_tol)
    with _output(args.out) as out:
        _emit_result(out, res, args.emit_g, args.emit_p)
    return EXIT_INCONSISTENT if args.strict and res.inconsistent else EXIT_OK


def cmd_solve_multi(args):
    a = read_matrix(args.matrix)
    b = read_matrix(args.rhs)
    res = solve_matrix_rhs(a, b, mode=args.mode, tol=_tol(args))
    with _output(args.out) as out:
        out.write("# X_p\n")
        write_matrix_market(res.x_p, out)
        if args.emit_g:
            out.write("# G\n")
            write_matrix_market(res.g, out)
        if args.emit_p:
            out.write("# P\n")
            write_matrix_market(res.p, out)
        _summary(out, mode=res.mode, rank=res.rank, columns=b.shape[1],
                 max_residual_norm=float(np.max(res.residual_norms)))
    return EXIT_OK


def _stream_lines(fh):
    for lineno, line in enumerate(fh, start=1):
        text = line.strip()
        if not text:
            continue
        if text.startswith("#"):
            if text.lower() == "#end":
                return
            continue
        yield lineno, [parse_complex(t, lineno) for t in text.split()]


def cmd_stream(args):
    tol = _tol(args)
    want_g = args.emit_g
    src = sys.stdin if args.input in (None, "-") else open(args.input)
    state = None
    try:
        for lineno, values in _stream_lines(src):
            if args.mode == "row":
                if len(values) < 2:
                    raise ParseError("a row needs at least one coefficient and b_i", lineno)
                if state is None:
                    state = OnlineRowState(len(values) - 1, tol=tol, accumulate_g=want_g,
                                           expected_rows=args.expected)
                if len(values) != state.n + 1:
                    raise ParseError(f"expected {state.n + 1} entries, got {len(values)}", lineno)
                rep = state.push(values[:-1], values[-1])
            else:
                if state is None:
                    if args.rhs is None:
                        raise ArgumentError("--rhs is required in column mode")
                    state = OnlineColState(read_vector(args.rhs), tol=tol, accumulate_g=want_g,
                                           expected_cols=args.expected)
                if len(values) != state.m:
                    raise ParseError(f"expected {state.m} entries, got {len(values)}", lineno)
                rep = state.push(values)
            if args.watch:
                line = (f"step {rep.index} increment_norm {float(np.linalg.norm(rep.increment))!r} "
                        f"running_norm {rep.running_norm!r} dependent {_fmt(rep.was_dependent)}")
                if rep.inconsistent:
                    line += " inconsistent true"
                print(line, flush=True)
    finally:
        if src is not sys.stdin:
            src.close()
    if state is None:
        raise ParseError("no data in stream")
    res = state.finalize(want_p=args.emit_p)
    with _output(args.out) as out:
        _emit_result(out, res, args.emit_g, args.emit_p, extra={"steps": len(state.counter.per_step)})
    return EXIT_INCONSISTENT if args.strict and res.inconsistent else EXIT_OK


def cmd_penrose(args):
    a = read_matrix(args.matrix)
    tol = _tol(args)
    if args.mode == "row":
        f = row_orthonormalize(a, tol)
        g = gen_inverse_row(f)
    else:
        f = col_orthonormalize(a, tol)
        g = gen_inverse_col(f)
    rep = penrose_check(a, g, args.penrose_tol)
    print(rep.class_label)
    _summary(sys.stdout, mode=args.mode, rank=f.rank, class_label=rep.class_label,
             **{f"c{k + 1}_defect": d for k, d in enumerate(rep.defects)},
             **{f"c{k + 1}_holds": h for k, h in enumerate(rep.holds)},
             penrose_tol=rep.tol)
    return EXIT_OK


def cmd_profile(args):
    modes = ["row", "col"] if args.mode == "both" else [args.mode]
    for mode in modes:
        fn = profile_row_solver if mode == "row" else profile_col_solver
        rep = fn(args.m, args.n, args.trials, seed=args.seed)
        print(f"# profile {mode}")
        for line in rep.lines():
            print(line)
        for tau in args.tau or []:
            print(f"added_complexity(tau={tau!r}): {added_complexity(rep.per_step, tau)!r}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="insitu", description="In situ orthonormalization solvers for Ax=b.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--mode", choices=["row", "col"], default="row")
        p.add_argument("--tol", type=float, default=None, help="zero-vector threshold (overrides INSITU_TOL)")

    p = sub.add_parser("solve", help="batch solve of A x = b")
    common(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--emit-g", action="store_true")
    p.add_argument("--emit-p", action="store_true")
    p.add_argument("--consistency-tol", type=float, default=None)
    p.add_argument("--strict", action="store_true", help="exit 1 if the system is inconsistent")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("solve-multi", help="batch solve of A X = B")
    common(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--emit-g", action="store_true")
    p.add_argument("--emit-p", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve_multi)

    p = sub.add_parser("stream", help="online solve, one row (row mode: coefficients then b_i) or column per line")
    common(p)
    p.add_argument("--input", default="-", help="file to read (default: standard input)")
    p.add_argument("--rhs", help="right-hand side (column mode)")
    p.add_argument("--expected", type=int, default=None, help="announced number of rows/columns")
    p.add_argument("--watch", action="store_true", help="print each increment and the running norm")
    p.add_argument("--emit-g", action="store_true")
    p.add_argument("--emit-p", action="store_true")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stream)

    p = sub.add_parser("penrose", help="classify the generalized inverse by Penrose conditions")
    common(p)
    p.add_argument("--matrix", required=True)
    p.add_argument("--penrose-tol", type=float, default=None)
    p.set_defaults(func=cmd_penrose)

    p = sub.add_parser("profile", help="operation counts of the online solvers")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--mode", choices=["row", "col", "both"], default="both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tau", type=float, action="append", help="data-arrival interval in op units (repeatable)")
    p.set_defaults(func=cmd_profile)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ArgumentError, ComputationError, ParseError, StateError, OSError, ValueError) as exc:
        print(f"insitu {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run_cli())

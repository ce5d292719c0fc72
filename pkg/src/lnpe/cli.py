"""``lnpe`` command line: generate datasets, embed them, evaluate embeddings.

Exit status: 0 success, 1 invalid arguments or I/O problems, 2 singular
local system, 3 disconnected neighbor graph.  Failures print one JSON line
``{"error": ..., "message": ...}`` to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys

import numpy as np

from . import __version__
from .datasets import DATASETS, generate
from .exceptions import DisconnectedGraphError, SingularSystemError
from .io import read_csv, split_columns, write_csv, write_json, write_svg
from .metrics import quality_report
from .neighbors import knn_graph
from .pipeline import lnpe
from .propagation import PropagationConfig, run_propagation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SINGULAR = 2
EXIT_DISCONNECTED = 3

# reference sample sizes and ridge strengths per dataset; k is the smaller
# of the two neighborhood sizes compared per dataset
DATASET_DEFAULTS = {
    "s-curve": {"n": 1000, "sigma": 1e-3, "k": 7, "grid": False},
    "swiss-roll": {"n": 1000, "sigma": 1e-4, "k": 7, "grid": False},
    "sphere": {"n": 300, "sigma": 1e-2, "k": 5, "grid": False},
    # random sampling of a 1-D curve leaves gaps that split a 5-NN graph
    "helix": {"n": 500, "sigma": 1e-2, "k": 5, "grid": True},
}
INPUT_DEFAULTS = {"sigma": 1e-3, "k": 7}
DEFAULT_T = 2
DEFAULT_D = 2
DEFAULT_K_EVAL = 12


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(kind: str, message: str, code: int) -> int:
    line = json.dumps({"error": kind, "message": " ".join(str(message).split())})
    print(line, file=sys.stderr)
    return code


def _add_source_args(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--dataset", choices=sorted(DATASETS))
    src.add_argument("--input", metavar="CSV", help="CSV with x0..x{D-1}[,p0..] columns")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--grid",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="grid instead of random sampling (dataset-dependent default)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lnpe", description="Local Neighbor Propagation Embedding")
    parser.add_argument("--version", action="version", version=f"lnpe {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a synthetic dataset as CSV")
    g.add_argument("--dataset", required=True, choices=sorted(DATASETS))
    g.add_argument("--n", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--grid", action=argparse.BooleanOptionalAction, default=None)
    g.add_argument("--output", default="-")
    g.add_argument("--serial", action="store_true")

    e = sub.add_parser("embed", help="run LNPE and write the embedding as CSV")
    _add_source_args(e)
    e.add_argument("--method", choices=("lnpe", "lle"), default="lnpe",
                   help="lle is LNPE with --t 0")
    e.add_argument("--k", type=int)
    e.add_argument("--t", type=int, default=DEFAULT_T)
    e.add_argument("--sigma", type=float)
    e.add_argument("--d", type=int, default=DEFAULT_D)
    e.add_argument("--output", default="-")
    e.add_argument("--svg", metavar="PATH")
    e.add_argument("--trace", metavar="PATH")
    e.add_argument("--serial", action="store_true")

    v = sub.add_parser("evaluate", help="score an embedding against its input")
    _add_source_args(v)
    v.add_argument("--embedding", required=True, metavar="CSV",
                   help="CSV with y0.. columns (x0.. used if no y columns)")
    v.add_argument("--k-eval", dest="k_eval", type=int, default=DEFAULT_K_EVAL)
    v.add_argument("--k", type=int, help="recompute the reconstruction residual with this k")
    v.add_argument("--t", type=int, default=DEFAULT_T)
    v.add_argument("--sigma", type=float)
    v.add_argument("--output", default="-")
    v.add_argument("--serial", action="store_true")
    return parser


def _check_writable(path):
    if path in (None, "-"):
        return
    parent = os.path.dirname(os.path.abspath(path)) or "."
    if os.path.isdir(path):
        raise UsageError(f"output path is a directory: {path}")
    if not os.path.isdir(parent):
        raise UsageError(f"output directory does not exist: {parent}")
    if not os.access(parent, os.W_OK) or (os.path.exists(path) and not os.access(path, os.W_OK)):
        raise UsageError(f"output path is not writable: {path}")


def _load_source(args):
    """Return ``(data, params, defaults, echo)`` for --dataset or --input."""
    if args.input is not None:
        if args.n is not None or args.grid is not None:
            raise UsageError("--n/--grid apply only to --dataset")
        try:
            header, table = read_csv(args.input)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        data, params = split_columns(header, table, "x")
        if data is None:
            raise UsageError(f"{args.input}: no x0.. columns")
        if not np.all(np.isfinite(data)):
            raise UsageError(f"{args.input}: non-finite values")
        return data, params, INPUT_DEFAULTS, {"input": args.input}
    name = args.dataset or "swiss-roll"
    defaults = DATASET_DEFAULTS[name]
    n = defaults["n"] if args.n is None else args.n
    grid = defaults["grid"] if args.grid is None else args.grid
    if n < 1:
        raise UsageError(f"--n must be positive, got {n}")
    ds = generate(name, n, args.seed, grid=grid)
    echo = {"dataset": name, "n": n, "seed": args.seed, "grid": grid}
    return ds.points, ds.intrinsic_params, defaults, echo


def _validate_embed(n, k, t, sigma, d):
    if not 1 <= k <= n - 1:
        raise UsageError(f"--k must lie in [1, {n - 1}], got {k}")
    if t < 0:
        raise UsageError(f"--t must be >= 0, got {t}")
    if not (np.isfinite(sigma) and sigma >= 0):
        raise UsageError(f"--sigma must be finite and >= 0, got {sigma}")
    if not 1 <= d <= n - 2:
        raise UsageError(f"--d must lie in [1, {n - 2}], got {d}")


def cmd_generate(args) -> int:
    defaults = DATASET_DEFAULTS[args.dataset]
    n = defaults["n"] if args.n is None else args.n
    grid = defaults["grid"] if args.grid is None else args.grid
    if n < 1:
        raise UsageError(f"--n must be positive, got {n}")
    _check_writable(args.output)
    ds = generate(args.dataset, n, args.seed, grid=grid)
    p = ds.intrinsic_params.shape[1]
    header = ["x0", "x1", "x2"] + [f"p{j}" for j in range(p)]
    write_csv(args.output, header, [ds.points, ds.intrinsic_params])
    return EXIT_OK


def cmd_embed(args) -> int:
    for path in (args.output, args.svg, args.trace):
        _check_writable(path)
    data, params, defaults, _ = _load_source(args)
    k = defaults["k"] if args.k is None else args.k
    sigma = defaults["sigma"] if args.sigma is None else args.sigma
    t = 0 if args.method == "lle" else args.t
    _validate_embed(data.shape[0], k, t, sigma, args.d)

    result = lnpe(data, k=k, d=args.d, t=t, sigma=sigma)
    for msg in result.embedding.warnings:
        print(json.dumps({"warning": msg}), file=sys.stderr)

    coords = result.coords
    header = [f"y{j}" for j in range(coords.shape[1])]
    blocks = [coords]
    if params is not None:
        header += [f"p{j}" for j in range(params.shape[1])]
        blocks.append(params)
    write_csv(args.output, header, blocks)

    if args.svg:
        color = params[:, 0] if params is not None else None
        write_svg(args.svg, coords, color, title=f"LNPE k={k} t={t} sigma={sigma:g}")
    if args.trace:
        tr = result.trace
        write_csv(
            args.trace,
            ["pass", "residual", "density"],
            [np.arange(1, len(tr) + 1), tr.residuals, tr.densities],
        )
    return EXIT_OK


def cmd_evaluate(args) -> int:
    _check_writable(args.output)
    data, _, defaults, echo = _load_source(args)
    try:
        header, table = read_csv(args.embedding)
    except OSError as exc:
        raise UsageError(f"cannot read {args.embedding}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    low, _ = split_columns(header, table, "y")
    if low is None:
        low, _ = split_columns(header, table, "x")
    if low is None:
        raise UsageError(f"{args.embedding}: no y0.. or x0.. columns")
    n = data.shape[0]
    if low.shape[0] != n:
        raise UsageError(f"row count mismatch: {n} input rows vs {low.shape[0]} embedding rows")
    if not 1 <= args.k_eval < n / 2:
        raise UsageError(f"--k-eval must satisfy 1 <= k_eval < n/2 = {n / 2}, got {args.k_eval}")

    residual = None
    config = dict(echo, k_eval=args.k_eval, embedding=args.embedding)
    if args.k is not None:
        sigma = defaults["sigma"] if args.sigma is None else args.sigma
        _validate_embed(n, args.k, args.t, sigma, 1 if n >= 3 else 0)
        graph = knn_graph(data, args.k)
        _, trace = run_propagation(data, graph, PropagationConfig(args.t, args.k, sigma))
        residual = trace.final_residual
        config.update(k=args.k, t=args.t, sigma=sigma)

    report = quality_report(data, low, args.k_eval, residual)
    out = report.to_dict()
    out["config"] = config
    write_json(args.output, out)
    return EXIT_OK


COMMANDS = {"generate": cmd_generate, "embed": cmd_embed, "evaluate": cmd_evaluate}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail("invalid_argument", exc, EXIT_USAGE)
    except SystemExit as exc:
        # --help / --version
        return int(exc.code or 0)

    ctx = contextlib.nullcontext()
    if args.serial:
        from threadpoolctl import threadpool_limits

        ctx = threadpool_limits(limits=1)
    try:
        with ctx:
            return COMMANDS[args.command](args)
    except UsageError as exc:
        return _fail("invalid_argument", exc, EXIT_USAGE)
    except SingularSystemError as exc:
        return _fail("singular_system", exc, EXIT_SINGULAR)
    except DisconnectedGraphError as exc:
        return _fail("disconnected_graph", exc, EXIT_DISCONNECTED)
    except ValueError as exc:
        return _fail("invalid_argument", exc, EXIT_USAGE)
    except OSError as exc:
        return _fail("io_error", f"{exc.filename}: {exc.strerror}", EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())

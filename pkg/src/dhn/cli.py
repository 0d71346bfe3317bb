"""Command-line interface: cluster a graph, or re-score a stored assignment.

Exit codes: 0 success, 2 usage error, 3 edge-list parse error, 4 numeric or
degenerate-input error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .clustering import InstanceTooLargeError, WeightedGraph
from .core import ConvergenceCriterion
from .embedding import run_cleora, write_embedding
from .io import (
    METHODS,
    EdgeListParseError,
    RunConfig,
    load_edge_list,
    load_result,
    result_document,
    score_assignment,
    write_result,
)
from .modularity import DegenerateGraphError, DegenerateSpectrumError, newman_bisect, run_lms, run_plms
from .stiefel import run_gnm, run_gnm_plus_lms, run_sgnm

__all__ = ["cluster_command", "eval_command", "main"]

USAGE_ERROR, PARSE_ERROR, NUMERIC_ERROR = 2, 3, 4


class UsageError(ValueError):
    """Method/config mismatch detected before any computation."""


def _check_config(config: RunConfig, graph: WeightedGraph) -> None:
    if config.method == "newman" and config.dim != 2:
        raise UsageError("method 'newman' always produces 2 clusters; use --dim 2")
    if config.method in ("gnm", "sgnm", "gnm-lms") and config.dim > graph.n:
        raise UsageError(
            f"method {config.method!r} needs --dim <= node count ({config.dim} > {graph.n})"
        )


def cluster_command(config: RunConfig, graph: WeightedGraph) -> dict:
    """Run the configured method on a graph and assemble its result document."""
    _check_config(config, graph)
    crit = ConvergenceCriterion(
        epsilon=config.epsilon, window=config.window, max_iters=config.max_iters
    )
    start = time.perf_counter()
    clustering = None
    embedding_path = None
    iterations = None
    outcome = None
    energy_trace = None
    if config.method == "lms":
        clustering, report = run_lms(graph, crit=crit)
    elif config.method == "plms":
        clustering, report = run_plms(graph, config.dim, seed=config.seed, crit=crit)
    elif config.method == "gnm":
        clustering, report = run_gnm(graph, config.dim, seed=config.seed, crit=crit)
    elif config.method == "sgnm":
        clustering, report = run_sgnm(graph, config.dim, seed=config.seed, crit=crit)
    elif config.method == "gnm-lms":
        clustering, report = run_gnm_plus_lms(graph, config.dim, seed=config.seed, crit=crit)
    elif config.method == "newman":
        clustering, report = newman_bisect(graph, seed=config.seed, crit=crit), None
    elif config.method == "cleora":
        embedding = run_cleora(graph, config.dim, iters=config.max_iters, seed=config.seed)
        embedding_path = config.output + ".emb"
        write_embedding(embedding_path, embedding, labels=graph.labels())
        report = None
        iterations = config.max_iters
    else:  # unreachable: RunConfig validates the method
        raise UsageError(f"unknown method {config.method!r}")
    if config.method not in ("newman", "cleora"):
        iterations = report.iterations
        outcome = report.outcome.value
        energy_trace = report.energy_trace
    wall_time_s = time.perf_counter() - start
    return result_document(
        config, graph, clustering, embedding_path, iterations, outcome, energy_trace, wall_time_s
    )


def eval_command(graph: WeightedGraph, assignment_path) -> dict:
    """Re-score the assignment stored in a result document (or bare JSON)."""
    document = load_result(assignment_path)
    assignment = document.get("assignment") if isinstance(document, dict) else None
    if assignment is None:
        raise ValueError(f"{assignment_path} contains no 'assignment' mapping")
    return score_assignment(graph, assignment)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dhn", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    cluster = sub.add_parser("cluster", help="cluster a graph and store the result")
    cluster.add_argument("--method", required=True, choices=METHODS)
    cluster.add_argument("--input", required=True, help="edge-list file")
    cluster.add_argument("--output", required=True, help="result JSON path")
    cluster.add_argument("--dim", type=int, default=2, help="cluster/embedding dimension")
    cluster.add_argument("--seed", type=int, default=None, help="RNG seed (or env DHN_SEED)")
    cluster.add_argument("--epsilon", type=float, default=1e-8)
    cluster.add_argument("--window", type=int, default=2)
    cluster.add_argument("--max-iters", type=int, default=1000)
    cluster.add_argument("--directed-reject", action="store_true")

    evaluate = sub.add_parser("eval", help="re-score a stored assignment")
    evaluate.add_argument("--input", required=True, help="edge-list file")
    evaluate.add_argument("--assignment", required=True, help="result JSON with an assignment")
    evaluate.add_argument("--directed-reject", action="store_true")
    return parser


def _resolve_seed(seed) -> int:
    if seed is not None:
        return seed
    return int(os.environ.get("DHN_SEED", "0"))


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "cluster":
            config = RunConfig(
                method=args.method,
                dim=args.dim,
                seed=_resolve_seed(args.seed),
                epsilon=args.epsilon,
                window=args.window,
                max_iters=args.max_iters,
                input=args.input,
                output=args.output,
                directed_reject=args.directed_reject,
            )
            graph = load_edge_list(args.input, directed_reject=args.directed_reject)
            document = cluster_command(config, graph)
            write_result(document, args.output)
            if document["modularity"] is not None:
                print(f"modularity {document['modularity']:.6f}  d-cut {document['d_cut']:.6f}")
            print(f"wrote {args.output}")
        else:
            graph = load_edge_list(args.input, directed_reject=args.directed_reject)
            scores = eval_command(graph, args.assignment)
            print(f"modularity {scores['modularity']:.17g}")
            print(f"d_cut {scores['d_cut']:.17g}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except EdgeListParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    except (DegenerateGraphError, DegenerateSpectrumError, InstanceTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NUMERIC_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NUMERIC_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())

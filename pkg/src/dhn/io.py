"""Edge-list ingestion, run configuration, and result documents.

The edge-list format is line-oriented: ``source target [weight]`` with
whitespace separation, ``#`` starting a comment line, default weight 1.0.
Results are stored as JSON documents with a fixed field order and full
round-trip float precision, so re-scoring a stored assignment reproduces the
stored numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .clustering import Clustering, WeightedGraph, d_cut_value
from .modularity import modularity_score

__all__ = [
    "EdgeListParseError",
    "RunConfig",
    "load_edge_list",
    "load_result",
    "result_document",
    "score_assignment",
    "write_edge_list",
    "write_result",
]

RESULT_FORMAT_VERSION = 1

METHODS = ("lms", "plms", "gnm", "sgnm", "gnm-lms", "newman", "cleora")


class EdgeListParseError(ValueError):
    """A malformed edge-list line; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


@dataclass(frozen=True)
class RunConfig:
    """Everything a clustering run needs besides the graph itself."""

    method: str
    dim: int = 2
    seed: int = 0
    epsilon: float = 1e-8
    window: int = 2
    max_iters: int = 1000
    input: str = ""
    output: str = ""
    directed_reject: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose one of {', '.join(METHODS)}")
        if self.dim < 1:
            raise ValueError("dimension must be positive")


def load_edge_list(path, directed_reject: bool = False) -> WeightedGraph:
    """Parse a whitespace-separated edge list into a weighted graph.

    Node labels become indices 0..n-1 in order of first appearance.  Repeated
    records of the same (unordered) pair sum their weights and the matrix is
    symmetrized.  With ``directed_reject`` records are taken as directed
    entries instead and any asymmetry in the resulting matrix is an error.
    """
    index: dict = {}
    records = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) not in (2, 3):
                raise EdgeListParseError(
                    f"expected 'source target [weight]', got {len(tokens)} tokens", lineno
                )
            u, v = tokens[0], tokens[1]
            weight = 1.0
            if len(tokens) == 3:
                try:
                    weight = float(tokens[2])
                except ValueError:
                    raise EdgeListParseError(f"weight {tokens[2]!r} is not a number", lineno) from None
            for label in (u, v):
                if label not in index:
                    index[label] = len(index)
            records.append((index[u], index[v], weight))
    if not records:
        raise EdgeListParseError("edge list contains no edges", 0)
    n = len(index)
    w = np.zeros((n, n))
    if directed_reject:
        for i, j, weight in records:
            w[i, j] += weight
        if float(np.max(np.abs(w - w.T))) > 0.0:
            raise ValueError("edge list is not symmetric (running with --directed-reject)")
    else:
        for i, j, weight in records:
            w[i, j] += weight
            if i != j:
                w[j, i] += weight
    return WeightedGraph(w, node_labels=tuple(index))


def write_edge_list(graph: WeightedGraph, path) -> None:
    """Write each undirected edge once as ``u v weight``.

    Edges are grouped by their larger endpoint in increasing order, so that
    whenever every node (after the first) has a lower-index neighbor, loading
    the file reproduces the graph's node order exactly.
    """
    labels = graph.labels()
    with open(path, "w") as fh:
        for k in range(graph.n):
            for j in range(k + 1):
                if graph.weights[j, k] != 0.0:
                    fh.write(f"{labels[j]} {labels[k]} {graph.weights[j, k]:.17g}\n")


def score_assignment(graph: WeightedGraph, assignment_by_label: dict) -> dict:
    """Re-score a stored label->cluster mapping on a graph.

    Every graph node must be covered and every mapped label must exist; the
    offending label is named otherwise.  Returns modularity and d-cut.
    """
    labels = graph.labels()
    known = set(labels)
    for label in assignment_by_label:
        if label not in known:
            raise ValueError(f"assignment mentions unknown node label {label!r}")
    missing = [label for label in labels if label not in assignment_by_label]
    if missing:
        raise ValueError(f"assignment does not cover node label {missing[0]!r}")
    values = [int(assignment_by_label[label]) for label in labels]
    clustering = Clustering(values, max(values) + 1)
    return {
        "modularity": modularity_score(graph, clustering),
        "d_cut": d_cut_value(graph, clustering),
        "clusters": clustering.d,
    }


def result_document(
    config: RunConfig,
    graph: WeightedGraph,
    clustering: Optional[Clustering],
    embedding_path: Optional[str],
    iterations: Optional[int],
    outcome: Optional[str],
    energy_trace,
    wall_time_s: float,
) -> dict:
    """Assemble the result document with a fixed field order."""
    assignment = None
    modularity = None
    d_cut = None
    if clustering is not None:
        assignment = dict(zip(graph.labels(), (int(a) for a in clustering.assignment)))
        modularity = modularity_score(graph, clustering)
        d_cut = d_cut_value(graph, clustering)
    return {
        "format_version": RESULT_FORMAT_VERSION,
        "method": config.method,
        "config": {
            "dim": config.dim,
            "seed": config.seed,
            "epsilon": config.epsilon,
            "window": config.window,
            "max_iters": config.max_iters,
            "input": config.input,
            "directed_reject": config.directed_reject,
        },
        "n_nodes": graph.n,
        "assignment": assignment,
        "embedding_path": embedding_path,
        "modularity": modularity,
        "d_cut": d_cut,
        "energy_trace": list(energy_trace) if energy_trace is not None else None,
        "iterations": iterations,
        "outcome": outcome,
        "wall_time_s": wall_time_s,
    }


def write_result(document: dict, path) -> None:
    with open(path, "w") as fh:
        json.dump(document, fh, indent=2)
        fh.write("\n")


def load_result(path) -> dict:
    with open(path) as fh:
        return json.load(fh)

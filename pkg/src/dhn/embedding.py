"""Embedding propagation: iterated neighbor averaging with row normalization.

Each node carries a d-dimensional embedding row.  One propagation step
replaces every row by the weighted sum of its neighbors' rows and rescales it
to unit length; this is exactly a parallel network step with the row
normalizer as activation and zero bias.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .clustering import WeightedGraph
from .core import l2_normalize_rows

__all__ = ["l2_normalize_rows", "run_cleora", "write_embedding"]


def run_cleora(
    graph: WeightedGraph,
    d: int,
    iters: int = 3,
    seed: Optional[int] = None,
) -> np.ndarray:
    """Propagate seeded random embeddings through the graph.

    The n x d start matrix has i.i.d. uniform(-1, 1) entries drawn from
    ``seed``; each of the ``iters`` steps computes l2_normalize_rows(W X).
    With iters = 0 the start matrix is returned unchanged.  Rows that become
    exactly zero stay zero.
    """
    if d < 1:
        raise ValueError("embedding dimension d must be positive")
    if iters < 0:
        raise ValueError("iteration count must be nonnegative")
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0, 1.0, size=(graph.n, d))
    for _ in range(iters):
        x = l2_normalize_rows(graph.weights @ x)
    return x


def write_embedding(path, embedding: np.ndarray, labels=None) -> None:
    """Write one node per line: its label then d decimals with 17 significant digits."""
    embedding = np.asarray(embedding, dtype=float)
    if labels is None:
        labels = [str(i) for i in range(embedding.shape[0])]
    if len(labels) != embedding.shape[0]:
        raise ValueError("label count must match the number of embedding rows")
    with open(path, "w") as fh:
        for label, row in zip(labels, embedding):
            fh.write(str(label) + " " + " ".join(f"{v:.17g}" for v in row) + "\n")

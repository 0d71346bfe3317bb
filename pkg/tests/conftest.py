"""Shared random-instance builders for the test suite."""

import numpy as np

import dhn


def random_symmetric(rng, n, scale=1.0, diag="nonneg"):
    """Random symmetric n x n matrix; diag is 'nonneg', 'zero', or 'any'."""
    a = rng.uniform(-scale, scale, size=(n, n))
    w = (a + a.T) / 2.0
    if diag == "zero":
        np.fill_diagonal(w, 0.0)
    elif diag == "nonneg":
        np.fill_diagonal(w, np.abs(np.diagonal(w)))
    elif diag != "any":
        raise ValueError(diag)
    return w


def random_onehot(rng, n, d):
    return dhn.clustering_to_matrix(dhn.Clustering(rng.integers(0, d, size=n), d))


def random_classification_net(rng, n, d, diag="nonneg", with_bias=True):
    w = random_symmetric(rng, n, diag=diag)
    b = rng.uniform(-1.0, 1.0, size=(n, d)) if with_bias else np.zeros((n, d))
    return dhn.DhnNetwork(w, b, dhn.Activation.CLASSIFICATION)


def random_positive_graph(rng, n, density=0.6):
    """Random symmetric graph with nonnegative weights, zero diagonal, volume > 0."""
    mask = rng.random((n, n)) < density
    w = rng.uniform(0.2, 2.0, size=(n, n)) * mask
    w = np.triu(w, k=1)
    w = w + w.T
    if w.sum() == 0.0:  # guarantee at least one edge
        w[0, 1] = w[1, 0] = 1.0
    return dhn.WeightedGraph(w)

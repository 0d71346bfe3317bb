"""Multidimensional Hopfield networks: states, activations, and discrete dynamics.

A network couples n neurons through an n x n weight matrix W and an n x d bias
matrix B.  Each neuron carries a d-dimensional state row; the state of the whole
network is an n x d matrix X.  A serial update recomputes one row of X from the
pre-activation H = W X + B, a parallel update recomputes all rows at once.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np
import scipy.sparse as sp

__all__ = [
    "Activation",
    "ConvergenceCriterion",
    "DENSE_WEIGHT_LIMIT",
    "DhnNetwork",
    "Outcome",
    "RunReport",
    "classify",
    "classify_rows",
    "energy",
    "energy_delta",
    "l2_normalize_rows",
    "parallel_step",
    "run_parallel",
    "run_serial",
    "serial_step",
    "stiefel_project",
]

# Weight matrices up to this many neurons are stored dense; larger ones are
# converted to CSR with canonical (sorted, deduplicated) structure.
DENSE_WEIGHT_LIMIT = 4096

# Rows with l2 norm below this are treated as exactly zero by the row
# normalizer, so near-underflow rows cannot blow up.
_ZERO_ROW_NORM = 1e-300

WeightMatrix = Union[np.ndarray, sp.csr_array]


class Activation(Enum):
    """Activation kinds a network can carry.

    The first three act row by row on the state matrix; STIEFEL_PROJECTION acts
    on the whole matrix at once and is only meaningful in parallel mode.
    """

    CLASSIFICATION = "classification"
    L2_NORMALIZE = "l2_normalize"
    IDENTITY = "identity"
    STIEFEL_PROJECTION = "stiefel_projection"


class Outcome(Enum):
    """How a run terminated."""

    STABLE = "stable"
    TWO_CYCLE = "two_cycle"
    CYCLE = "cycle"
    BUDGET_EXHAUSTED = "budget_exhausted"


def classify(v: Sequence[float]) -> np.ndarray:
    """One-hot indicator of the argmax coordinate; ties go to the lowest index."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("classify expects a nonempty 1-d vector")
    out = np.zeros(v.shape[0])
    out[int(np.argmax(v))] = 1.0
    return out


def classify_rows(m: np.ndarray) -> np.ndarray:
    """Apply :func:`classify` to every row of an n x d matrix."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[1] == 0:
        raise ValueError("classify_rows expects an n x d matrix with d >= 1")
    out = np.zeros(m.shape)
    out[np.arange(m.shape[0]), np.argmax(m, axis=1)] = 1.0
    return out


def l2_normalize_rows(m: np.ndarray) -> np.ndarray:
    """Scale every nonzero row to unit l2 norm; (near-)zero rows stay zero."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError("l2_normalize_rows expects a 2-d matrix")
    norms = np.linalg.norm(m, axis=1)
    out = np.zeros(m.shape)
    keep = norms >= _ZERO_ROW_NORM
    out[keep] = m[keep] / norms[keep, None]
    return out


def stiefel_project(m: np.ndarray) -> np.ndarray:
    """Project an n x d matrix onto the orthonormal d-frames in R^n.

    Returns the polar factor U Vt of the thin singular decomposition
    M = U S Vt.  This is the frame maximizing Tr(St M), equivalently the
    closest frame in Frobenius norm.  A rank-deficient input still yields a
    valid frame, but the maximizer is not unique; a warning is emitted.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError("stiefel_project expects a 2-d matrix")
    n, d = m.shape
    if d > n:
        raise ValueError(f"no orthonormal {d}-frame exists in R^{n} (d > n)")
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    if s[-1] <= s[0] * 1e-13:
        warnings.warn(
            "rank-deficient input: the orthonormal-frame projection is not unique",
            RuntimeWarning,
            stacklevel=2,
        )
    return u @ vt


def _as_weight_matrix(weights) -> WeightMatrix:
    if sp.issparse(weights):
        w = sp.csr_array(weights)
        w.sum_duplicates()
        w.sort_indices()
        return w
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError("weights must be a square matrix")
    if w.shape[0] > DENSE_WEIGHT_LIMIT:
        return _as_weight_matrix(sp.csr_array(w))
    return w


@dataclass(frozen=True)
class DhnNetwork:
    """A d-dimensional Hopfield network with n neurons: (weights, bias, activation).

    ``weights`` is n x n (dense ndarray, or CSR above DENSE_WEIGHT_LIMIT
    neurons), ``bias`` is n x d.  Instances are treated as immutable; all
    dynamics functions are pure and safe to share across threads.
    """

    weights: WeightMatrix
    bias: np.ndarray
    activation: Activation = Activation.CLASSIFICATION

    def __post_init__(self):
        object.__setattr__(self, "weights", _as_weight_matrix(self.weights))
        bias = np.asarray(self.bias, dtype=float)
        if bias.ndim != 2:
            raise ValueError("bias must be an n x d matrix")
        object.__setattr__(self, "bias", bias)
        if self.weights.shape[0] != bias.shape[0]:
            raise ValueError(
                f"weights are {self.weights.shape[0]}x{self.weights.shape[1]} "
                f"but bias has {bias.shape[0]} rows"
            )
        if not isinstance(self.activation, Activation):
            raise TypeError("activation must be an Activation member")

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def d(self) -> int:
        return self.bias.shape[1]

    def weights_dense(self) -> np.ndarray:
        w = self.weights
        return w.toarray() if sp.issparse(w) else w

    def validate_energy_hypotheses(self, tol: float = 1e-12) -> None:
        """Check the hypotheses behind the serial-convergence guarantee.

        Weights must be symmetric within ``tol`` and have a nonnegative
        diagonal.  Raises ValueError otherwise.  Runs on networks failing this
        check carry no convergence guarantee and may only stop on budget.
        """
        w = self.weights
        if sp.issparse(w):
            asym = abs(w - w.T)
            max_asym = asym.max() if asym.nnz else 0.0
        else:
            max_asym = float(np.max(np.abs(w - w.T))) if self.n else 0.0
        if max_asym > tol:
            raise ValueError(f"weights are asymmetric: max |W - Wt| = {max_asym:g}")
        diag = w.diagonal()
        if np.any(diag < 0):
            raise ValueError("weights have a negative diagonal entry")


@dataclass(frozen=True)
class ConvergenceCriterion:
    """Stopping rule shared by the iterative runs.

    ``epsilon`` and ``window`` implement the directional criterion: halt when
    the normalized state X / ||X||_F comes within ``epsilon`` (Frobenius) of
    one of the previous ``window`` normalized states.  Classification runs
    compare states exactly instead (``normalize`` defaults accordingly and can
    be forced either way).  ``max_iters`` bounds sweeps in serial mode and
    steps in parallel mode.
    """

    epsilon: float = 1e-8
    window: int = 2
    max_iters: int = 1000
    normalize: Optional[bool] = None

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")
        if self.window < 1:
            raise ValueError("window must be at least 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")

    def resolved_normalize(self, activation: Activation) -> bool:
        if self.normalize is not None:
            return self.normalize
        return activation is not Activation.CLASSIFICATION


@dataclass
class RunReport:
    """Trajectory metadata for one run.

    ``iterations`` counts sweeps for serial runs and parallel steps otherwise.
    ``cycle_length`` is 1 for a stable state, 2 for a two-cycle, k for a longer
    detected cycle, None when the budget ran out.  ``energy_trace`` is recorded
    for classification runs only: one entry for the initial state plus one per
    update step.
    """

    final_state: np.ndarray
    iterations: int
    outcome: Outcome
    cycle_length: Optional[int] = None
    energy_trace: Optional[list] = None
    schedule_seed: Optional[int] = None


def preactivation(net: DhnNetwork, x: np.ndarray) -> np.ndarray:
    """H = W X + B for the full state matrix."""
    return net.weights @ np.asarray(x, dtype=float) + net.bias


def _row_preactivation(net: DhnNetwork, x: np.ndarray, i: int) -> np.ndarray:
    w = net.weights
    if sp.issparse(w):
        row = (w[[i], :] @ x).ravel()
    else:
        row = w[i] @ x
    return row + net.bias[i]


def _apply_rowwise(activation: Activation, v: np.ndarray) -> np.ndarray:
    if activation is Activation.CLASSIFICATION:
        return classify(v)
    if activation is Activation.L2_NORMALIZE:
        norm = np.linalg.norm(v)
        return v / norm if norm >= _ZERO_ROW_NORM else np.zeros_like(v)
    if activation is Activation.IDENTITY:
        return np.asarray(v, dtype=float)
    raise ValueError(f"{activation} is a whole-matrix activation; serial mode is undefined for it")


def _apply_matrix(activation: Activation, m: np.ndarray) -> np.ndarray:
    if activation is Activation.CLASSIFICATION:
        return classify_rows(m)
    if activation is Activation.L2_NORMALIZE:
        return l2_normalize_rows(m)
    if activation is Activation.IDENTITY:
        return np.array(m, dtype=float)
    if activation is Activation.STIEFEL_PROJECTION:
        return stiefel_project(m)
    raise ValueError(f"unknown activation {activation!r}")


def serial_step(net: DhnNetwork, x: np.ndarray, neuron: int) -> np.ndarray:
    """Update one neuron: row ``neuron`` becomes activation(W X + B) for that row.

    All other rows are unchanged.  Neurons are indexed 0..n-1.  Undefined for
    whole-matrix activations.
    """
    x = np.asarray(x, dtype=float)
    if not 0 <= neuron < net.n:
        raise IndexError(f"neuron index {neuron} out of range for n={net.n}")
    h = _row_preactivation(net, x, neuron)
    out = x.copy()
    out[neuron] = _apply_rowwise(net.activation, h)
    return out


def parallel_step(net: DhnNetwork, x: np.ndarray) -> np.ndarray:
    """Update all neurons simultaneously: activation(W X + B)."""
    return _apply_matrix(net.activation, preactivation(net, x))


def energy(net: DhnNetwork, x: np.ndarray) -> float:
    """V(X) = -Tr(Xt W X + 2 Xt B).

    Nonincreasing along serial classification runs when W is symmetric with a
    nonnegative diagonal.
    """
    x = np.asarray(x, dtype=float)
    wx = net.weights @ x
    return float(-np.sum(x * wx) - 2.0 * np.sum(x * net.bias))


def energy_delta(net: DhnNetwork, x: np.ndarray, delta: np.ndarray) -> float:
    """Energy change for X -> X + delta without recomputing V from scratch.

    Equals -2 Tr(Dt H) - Tr(Dt W D) with H = W X + B, which matches
    energy(X + delta) - energy(X) whenever W is symmetric.
    """
    x = np.asarray(x, dtype=float)
    delta = np.asarray(delta, dtype=float)
    h = preactivation(net, x)
    wd = net.weights @ delta
    return float(-2.0 * np.sum(delta * h) - np.sum(delta * wd))


def _row_update_energy_delta(h_row, old_row, new_row, w_diag_entry) -> float:
    # single-row instance of the incremental energy formula
    delta_row = new_row - old_row
    return float(-2.0 * (delta_row @ h_row) - w_diag_entry * (delta_row @ delta_row))


def run_serial(
    net: DhnNetwork,
    x0: np.ndarray,
    schedule: str = "cyclic",
    crit: Optional[ConvergenceCriterion] = None,
    seed: Optional[int] = None,
    track_energy: bool = True,
) -> RunReport:
    """Run serial sweeps until one full sweep changes no row.

    Parameters
    ----------
    schedule : "cyclic" visits neurons 0..n-1 in order every sweep;
        "random" uses a fresh seeded permutation per sweep.
    crit : only ``max_iters`` (sweep budget) is consulted here; stability is
        an exact fixed-point check.
    track_energy : record a per-step energy trace (classification only).

    With symmetric weights, nonnegative diagonal and classification activation
    the run is guaranteed to reach a stable state; other configurations may
    terminate only through the budget.
    """
    crit = crit if crit is not None else ConvergenceCriterion()
    if schedule not in ("cyclic", "random"):
        raise ValueError(f"unknown schedule {schedule!r}")
    x = np.array(x0, dtype=float)
    if x.shape != (net.n, net.d):
        raise ValueError(f"state must be {net.n}x{net.d}, got {x.shape}")
    rng = np.random.default_rng(seed) if schedule == "random" else None

    trace = None
    if track_energy and net.activation is Activation.CLASSIFICATION:
        trace = [energy(net, x)]
    w_diag = net.weights.diagonal()

    for sweep in range(1, crit.max_iters + 1):
        order = rng.permutation(net.n) if rng is not None else range(net.n)
        changed = False
        for i in order:
            h = _row_preactivation(net, x, i)
            new_row = _apply_rowwise(net.activation, h)
            if not np.array_equal(new_row, x[i]):
                if trace is not None:
                    trace.append(trace[-1] + _row_update_energy_delta(h, x[i], new_row, w_diag[i]))
                x[i] = new_row
                changed = True
            elif trace is not None:
                trace.append(trace[-1])
        if not changed:
            return RunReport(x, sweep, Outcome.STABLE, 1, trace, seed)
    return RunReport(x, crit.max_iters, Outcome.BUDGET_EXHAUSTED, None, trace, seed)


def _direction(x: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(x)
    return x / norm if norm > 0 else x


def run_parallel(
    net: DhnNetwork,
    x0: np.ndarray,
    crit: Optional[ConvergenceCriterion] = None,
    track_energy: bool = True,
) -> RunReport:
    """Run parallel steps until the state revisits one of the last few states.

    Classification states are compared exactly; continuous states by the
    directional criterion ||X^(t) - X^(t-k)||_F < epsilon over k = 1..window,
    where X^ is X normalized to unit Frobenius norm (see
    ConvergenceCriterion).  A revisit at lag 1 is a stable state, lag 2 a
    two-cycle; with symmetric weights classification runs never need more.
    """
    crit = crit if crit is not None else ConvergenceCriterion()
    x = np.array(x0, dtype=float)
    if x.shape != (net.n, net.d):
        raise ValueError(f"state must be {net.n}x{net.d}, got {x.shape}")
    normalize = crit.resolved_normalize(net.activation)
    exact = net.activation is Activation.CLASSIFICATION and not normalize

    trace = None
    if track_energy and net.activation is Activation.CLASSIFICATION:
        trace = [energy(net, x)]

    def comparable(state):
        return _direction(state) if normalize else state

    history = deque([comparable(x)], maxlen=crit.window)
    for step in range(1, crit.max_iters + 1):
        x = parallel_step(net, x)
        if trace is not None:
            trace.append(energy(net, x))
        cmp = comparable(x)
        for lag, prev in enumerate(reversed(history), start=1):
            if exact:
                hit = np.array_equal(cmp, prev)
            else:
                hit = np.linalg.norm(cmp - prev) < crit.epsilon
            if hit:
                if lag == 1:
                    outcome = Outcome.STABLE
                elif lag == 2:
                    outcome = Outcome.TWO_CYCLE
                else:
                    outcome = Outcome.CYCLE
                return RunReport(x, step, outcome, lag, trace)
        history.append(cmp)
    return RunReport(x, crit.max_iters, Outcome.BUDGET_EXHAUSTED, None, trace)

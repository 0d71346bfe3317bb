"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Tolerances are pinned in the assertions below.
"""

import functools
import itertools
import json
import time

import numpy as np
import pytest

import dhn
from dhn.cli import eval_command, main
from dhn.core import Outcome
from dhn.graphs import disjoint_pairs_graph, karate_club
from dhn.io import load_result, write_edge_list
from dhn.modularity import modularity_matrix

from conftest import random_onehot, random_symmetric


def criterion(num, description):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            started = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"[criterion {num:02d}] FAIL  {description}")
                raise
            elapsed = time.perf_counter() - started
            print(f"[criterion {num:02d}] PASS  {description}  ({elapsed:.2f}s)")

        return wrapper

    return decorate


def serial_instances(seed, count):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n, d = int(rng.integers(2, 21)), int(rng.integers(1, 6))
        w = random_symmetric(rng, n)
        b = rng.uniform(-2.0, 2.0, size=(n, d))
        yield dhn.DhnNetwork(w, b), random_onehot(rng, n, d)


@criterion(1, "serial energy steps: dV <= 0, strict exactly at state changes (500 instances)")
def test_c01_energy_monotonicity():
    started = time.perf_counter()
    checked_steps = 0
    for net, x in serial_instances(101, 500):
        before = dhn.energy(net, x)
        for _sweep in range(1000):
            changed = False
            for i in range(net.n):
                stepped = dhn.serial_step(net, x, i)
                after = dhn.energy(net, stepped)  # full recomputation oracle
                if np.array_equal(stepped, x):
                    assert after == before
                else:
                    assert after < before
                    changed = True
                x, before = stepped, after
                checked_steps += 1
            if not changed:
                break
        else:
            raise AssertionError("serial run failed to stabilize")
    assert checked_steps >= 10_000
    assert time.perf_counter() - started < 10.0


@criterion(2, "serial runs all reach Stable within the sweep budget (500 instances)")
def test_c02_serial_convergence():
    for net, x0 in serial_instances(202, 500):
        report = dhn.run_serial(net, x0)
        assert report.outcome is Outcome.STABLE
        trace = np.array(report.energy_trace)
        assert np.all(np.diff(trace) <= 0.0)


@criterion(3, "parallel runs end Stable or TwoCycle, never longer (500 instances)")
def test_c03_parallel_period_bound():
    rng = np.random.default_rng(303)
    for _ in range(500):
        n, d = int(rng.integers(2, 21)), int(rng.integers(1, 6))
        net = dhn.DhnNetwork(
            random_symmetric(rng, n, diag="any"), rng.uniform(-2, 2, size=(n, d))
        )
        report = dhn.run_parallel(net, random_onehot(rng, n, d))
        assert report.outcome in (Outcome.STABLE, Outcome.TWO_CYCLE)


@criterion(4, "incremental energy delta matches recomputation to 1e-9 relative (1000 pairs)")
def test_c04_energy_delta_identity():
    rng = np.random.default_rng(404)
    for case in range(1000):
        n, d = int(rng.integers(2, 9)), int(rng.integers(1, 5))
        net = dhn.DhnNetwork(random_symmetric(rng, n, diag="any"), rng.uniform(-2, 2, (n, d)))
        x = rng.normal(size=(n, d))
        if case % 2:
            delta = np.zeros((n, d))
            delta[int(rng.integers(n))] = rng.normal(size=d)
        else:
            delta = rng.normal(size=(n, d))
        expected = dhn.energy(net, x + delta) - dhn.energy(net, x)
        got = dhn.energy_delta(net, x, delta)
        assert abs(got - expected) <= 1e-9 * max(1.0, abs(expected))


@criterion(5, "cut via trace == direct double sum (exact on 500 integer cases, 1e-9 on reals)")
def test_c05_cut_trace_identity():
    rng = np.random.default_rng(505)
    for _ in range(500):
        n, d = int(rng.integers(2, 13)), int(rng.integers(1, 5))
        w = rng.integers(-3, 4, size=(n, n))
        w = np.triu(w, 1) + np.triu(w, 1).T + np.diag(rng.integers(0, 4, n))
        g = dhn.WeightedGraph(w.astype(float))
        c = dhn.Clustering(rng.integers(0, d, n), d)
        assert dhn.d_cut_value(g, c) == dhn.d_cut_via_trace(g, dhn.clustering_to_matrix(c))
    for _ in range(200):
        n, d = int(rng.integers(2, 13)), int(rng.integers(1, 5))
        g = dhn.WeightedGraph(random_symmetric(rng, n, diag="any"))
        c = dhn.Clustering(rng.integers(0, d, n), d)
        direct = dhn.d_cut_value(g, c)
        trace = dhn.d_cut_via_trace(g, dhn.clustering_to_matrix(c))
        assert abs(direct - trace) <= 1e-9 * max(1.0, abs(direct))


@criterion(6, "global min-cut partition is a stable state under the anchor coupling (100 instances)")
def test_c06_global_minimizer_stability():
    started = time.perf_counter()
    rng = np.random.default_rng(606)
    for _ in range(100):
        n, d = int(rng.integers(2, 7)), int(rng.integers(2, 4))
        w = random_symmetric(rng, n)
        b = rng.uniform(-1.5, 1.5, size=(n, d))
        policy = dhn.kappa_policy(w, b)
        ext = dhn.build_extended_graph(w, b, policy.coupling(d))
        best, _value = dhn.brute_force_min_dcut(ext.as_graph(), d)
        anchors = best.assignment[n:]
        assert len(set(anchors)) == d  # the coupling forces anchors apart
        relabel = {cluster: j for j, cluster in enumerate(anchors)}
        aligned = dhn.Clustering([relabel[a] for a in best.assignment[:n]], d)
        census = dhn.stable_states_census(dhn.DhnNetwork(w, b))
        assert aligned in census
    assert time.perf_counter() - started < 60.0


@criterion(7, "greedy modularity move == network serial step, all nodes (200 graphs)")
def test_c07_louvain_equivalence():
    rng = np.random.default_rng(707)
    for _ in range(200):
        n = int(rng.integers(3, 13))
        mask = np.triu(rng.random((n, n)) < 0.5, k=1)
        w = np.where(mask, rng.uniform(0.2, 2.0, (n, n)), 0.0)
        w = w + w.T
        if w.sum() == 0.0:
            w[0, 1] = w[1, 0] = 1.0
        g = dhn.WeightedGraph(w)
        for _rep in range(2):
            d = int(rng.integers(2, 5))
            c = dhn.Clustering(rng.integers(0, d, n), d)
            net = dhn.build_lms_network(g, d)
            x = dhn.clustering_to_matrix(c)
            for u in range(n):
                via_louvain = dhn.louvain_update(g, c, u)
                via_network = dhn.clustering_from_matrix(dhn.serial_step(net, x, u))
                assert via_network.same_partition(via_louvain)


@criterion(8, "rowwise argmax is the closest/most-aligned clustering matrix (exhaustive)")
def test_c08_classification_projection_optimality():
    rng = np.random.default_rng(808)
    for n in range(1, 7):
        for d in range(1, 4):
            assignments = np.array(list(itertools.product(range(d), repeat=n)), dtype=int)
            rows = np.arange(n)
            for _ in range(100):
                m = rng.normal(size=(n, d))
                cl = dhn.classify_rows(m)
                cl_trace = float(np.sum(cl * m))
                cl_dist = float(np.linalg.norm(cl - m))
                traces = m[rows, assignments].sum(axis=1)
                assert np.all(cl_trace >= traces - 1e-12)
                onehots = np.zeros((assignments.shape[0], n, d))
                onehots[np.arange(assignments.shape[0])[:, None], rows, assignments] = 1.0
                dists = np.linalg.norm(onehots - m, axis=(1, 2))
                assert np.all(cl_dist <= dists + 1e-12)


@criterion(9, "power method: residual <= 1e-6 and cosine >= 1 - 1e-6 vs dense eigensolver (100)")
def test_c09_power_method():
    rng = np.random.default_rng(909)
    for _ in range(100):
        n = int(rng.integers(3, 51))
        basis = np.linalg.qr(rng.normal(size=(n, n)))[0]
        spectrum = np.concatenate([[1.0], rng.uniform(-0.9, 0.9, size=n - 1)])
        m = (basis * spectrum) @ basis.T
        m = (m + m.T) / 2.0
        u = dhn.power_method(m, seed=int(rng.integers(1 << 31)))
        rho = float(u @ m @ u)
        assert np.linalg.norm(m @ u - rho * u) <= 1e-6
        eigvals, eigvecs = np.linalg.eigh(m)
        dominant = eigvecs[:, int(np.argmax(np.abs(eigvals)))]
        assert abs(float(dominant @ u)) >= 1.0 - 1e-6


@criterion(10, "frame projection: validity, trace maximality, power-method reduction at d=1")
def test_c10_stiefel_projection():
    rng = np.random.default_rng(1010)
    for _ in range(10):
        n = int(rng.integers(2, 10))
        d = int(rng.integers(1, n + 1))
        m = rng.normal(size=(n, d))
        p = dhn.stiefel_project(m)
        assert np.linalg.norm(p.T @ p - np.eye(d)) <= 1e-10
        best = float(np.sum(p * m))
        for _ in range(1000):
            s = dhn.stiefel_project(rng.normal(size=(n, d)))
            assert best >= float(np.sum(s * m)) - 1e-10
    for d in (1, 2, 3):
        m = rng.normal(size=(d, d))
        p = dhn.stiefel_project(m)
        best = float(np.sum(p * m))
        for perm in itertools.permutations(range(d)):
            base = np.eye(d)[:, perm]
            for signs in itertools.product((-1.0, 1.0), repeat=d):
                s = base * np.array(signs)
                assert best >= float(np.sum(s * m)) - 1e-10
    # d = 1 frame iteration is the normalized power method, same seed
    graph = karate_club()
    q = modularity_matrix(graph).q
    net = dhn.DhnNetwork(q, np.zeros((graph.n, 1)), dhn.Activation.STIEFEL_PROJECTION)
    seed = 3
    x = dhn.stiefel_project(np.random.default_rng(seed).uniform(-1, 1, (graph.n, 1)))
    v = np.random.default_rng(seed).uniform(-1, 1, graph.n)
    v = v / np.linalg.norm(v)
    for _ in range(40):
        x = dhn.parallel_step(net, x)
        w = q @ v
        v = w / np.linalg.norm(w)
        assert np.linalg.norm(x.ravel() - v) <= 1e-8


@criterion(11, "golden small graphs: every method hits the enumerated optimum exactly")
def test_c11_small_graph_golden():
    pairs = disjoint_pairs_graph(2)
    best = max(
        dhn.modularity_score(pairs, dhn.Clustering(a, 4))
        for a in itertools.product(range(4), repeat=4)
    )
    assert best == pytest.approx(0.5, abs=1e-15)
    lms_c, _ = dhn.run_lms(pairs)
    assert dhn.modularity_score(pairs, lms_c) == pytest.approx(0.5, abs=1e-15)
    gnm_c, _ = dhn.run_gnm(pairs, 2, seed=1)
    assert dhn.modularity_score(pairs, gnm_c) == pytest.approx(0.5, abs=1e-15)
    both_c, _ = dhn.run_gnm_plus_lms(pairs, 2, seed=1)
    assert dhn.modularity_score(pairs, both_c) == pytest.approx(0.5, abs=1e-15)
    newman_c = dhn.newman_bisect(pairs, seed=0)
    assert dhn.modularity_score(pairs, newman_c) == pytest.approx(0.5, abs=1e-15)

    edge = dhn.WeightedGraph([[0.0, 1.0], [1.0, 0.0]])
    values = {
        a: dhn.modularity_score(edge, dhn.Clustering(a, 2))
        for a in itertools.product(range(2), repeat=2)
    }
    assert max(values.values()) == 0.0 and min(values.values()) == pytest.approx(-0.5)
    edge_c, _ = dhn.run_lms(edge)
    assert edge_c.canonical().assignment == (0, 0)
    assert dhn.modularity_score(edge, edge_c) == 0.0


@criterion(12, "karate club: LMS >= 0.38 and one greedy sweep never hurts GNM (32 seeds)")
def test_c12_karate_floor():
    started = time.perf_counter()
    g = karate_club()
    lms_c, _ = dhn.run_lms(g)
    assert dhn.modularity_score(g, lms_c) >= 0.38
    for seed in range(32):
        gnm_c, _ = dhn.run_gnm(g, 4, seed=seed)
        both_c, _ = dhn.run_gnm_plus_lms(g, 4, seed=seed)
        assert (
            dhn.modularity_score(g, both_c) >= dhn.modularity_score(g, gnm_c) - 1e-12
        )
    assert time.perf_counter() - started < 5.0


@criterion(13, "embedding propagation: exact network equivalence and byte-exact determinism")
def test_c13_cleora_contract():
    g = disjoint_pairs_graph(3)
    net = dhn.DhnNetwork(g.weights, np.zeros((g.n, 4)), dhn.Activation.L2_NORMALIZE)
    for iters in (0, 1, 2, 5):
        direct = dhn.run_cleora(g, 4, iters=iters, seed=99)
        x = np.random.default_rng(99).uniform(-1, 1, size=(g.n, 4))
        for _ in range(iters):
            x = dhn.parallel_step(net, x)
        assert np.array_equal(direct, x)
        if iters > 0:
            norms = np.linalg.norm(direct, axis=1)
            assert np.all((np.abs(norms - 1.0) <= 1e-12) | (norms == 0.0))
    a = dhn.run_cleora(g, 4, iters=3, seed=99)
    b = dhn.run_cleora(g, 4, iters=3, seed=99)
    assert a.tobytes() == b.tobytes()


@criterion(14, "CLI round-trip: re-scoring matches storage, same seed gives identical bytes")
def test_c14_cli_round_trip(tmp_path):
    graph = karate_club()
    graph_path = tmp_path / "karate.edges"
    write_edge_list(graph, graph_path)
    for method in ("lms", "plms", "gnm", "sgnm", "gnm-lms", "newman", "cleora"):
        dim = "2" if method == "newman" else "4"
        documents, embeddings = [], []
        for attempt in ("a", "b"):
            out = tmp_path / f"{method}-{attempt}.json"
            code = main(
                [
                    "cluster", "--method", method, "--dim", dim, "--seed", "7",
                    "--max-iters", "400" if method != "cleora" else "3",
                    "--input", str(graph_path), "--output", str(out),
                ]
            )
            assert code == 0, method
            doc = load_result(out)
            if doc["assignment"] is not None:
                rescored = eval_command(graph, out)
                assert rescored["modularity"] == pytest.approx(doc["modularity"], abs=1e-9)
                assert rescored["d_cut"] == pytest.approx(doc["d_cut"], abs=1e-9)
            else:
                embeddings.append((tmp_path / f"{method}-{attempt}.json.emb").read_text())
            doc["wall_time_s"] = None
            embedded = doc.pop("embedding_path", None)
            if embedded is not None:
                assert embedded.endswith(".emb")
            documents.append(json.dumps(doc))
        assert documents[0] == documents[1]
        if embeddings:
            assert embeddings[0] == embeddings[1]

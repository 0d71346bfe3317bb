#!/usr/bin/env python3
"""Orthonormal-frame dynamics: d coupled eigendirections at once.

Instead of one sign vector, the state is an n x d orthonormal frame pushed
through X <- P(Q X), where P is the polar-factor projection.  Rowwise argmax
then reads off up to d clusters.  A single greedy sweep afterwards is cheap
and can only help, which is the best combination on the karate club.
"""

import numpy as np

import dhn
from dhn.graphs import karate_club

rng = np.random.default_rng(0)

print("=" * 70)
print("1. The projection onto orthonormal frames")
print("=" * 70)
m = rng.normal(size=(5, 2))
p = dhn.stiefel_project(m)
print("random 5x2 matrix projected; frame error ||PtP - I|| =",
      f"{np.linalg.norm(p.T @ p - np.eye(2)):.2e}")
print("trace alignment Tr(Pt M) =", f"{np.sum(p * m):.4f}",
      " (no frame scores higher)")
for _ in range(3):
    s = dhn.stiefel_project(rng.normal(size=(5, 2)))
    print("   random frame scores    ", f"{np.sum(s * m):.4f}")

print()
print("=" * 70)
print("2. With d = 1 the iteration is the normalized power method")
print("=" * 70)
karate = karate_club()
q = dhn.modularity_matrix(karate).q
net1 = dhn.DhnNetwork(q, np.zeros((34, 1)), dhn.Activation.STIEFEL_PROJECTION)
x = dhn.stiefel_project(np.random.default_rng(5).uniform(-1, 1, (34, 1)))
v = np.random.default_rng(5).uniform(-1, 1, 34)
v /= np.linalg.norm(v)
for step in range(20):
    x = dhn.parallel_step(net1, x)
    v = q @ v
    v /= np.linalg.norm(v)
print("max |frame - power vector| over 20 steps:",
      f"{np.abs(x.ravel() - v).max():.2e}")

print()
print("=" * 70)
print("3. The method family on the karate club (d = 4)")
print("=" * 70)
rows = []
for seed in range(8):
    gnm_c, gnm_rep = dhn.run_gnm(karate, 4, seed=seed)
    sg_c, sg_rep = dhn.run_sgnm(karate, 4, seed=seed)
    both_c, _ = dhn.run_gnm_plus_lms(karate, 4, seed=seed)
    rows.append(
        (
            seed,
            dhn.modularity_score(karate, gnm_c),
            dhn.modularity_score(karate, sg_c),
            dhn.modularity_score(karate, both_c),
        )
    )
lms_c, _ = dhn.run_lms(karate)
lms_m = dhn.modularity_score(karate, lms_c)
print("seed    GNM     SGNM   GNM+sweep")
for seed, a, b, c in rows:
    print(f"  {seed}   {a:+.4f} {b:+.4f}  {c:+.4f}")
print(f"\ngreedy-only baseline (LMS): {lms_m:+.4f}")
print("the post-GNM sweep never lowered the score:",
      all(c >= a - 1e-12 for _, a, _, c in rows))
best = max(c for *_, c in rows)
print(f"best GNM+sweep over 8 seeds: {best:+.4f}")

"""Pauli coefficients of 3-qubit states and their local-unitary invariants.

Shows the coefficient blocks for a few named states, then sweeps Haar-random
pure states to exhibit the two norm identities (two-body blocks sum to 3,
three-body plus local blocks sum to 4) and the resulting range 1 <= |Q| <= 2,
with product states at the bottom and the maximally entangled state at the top.
"""

import numpy as np

from tribell import (
    decompose,
    ghz,
    invariant_norms,
    maximally_mixed,
    q_norm,
    random_pure,
    w_state,
)
from tribell.states import apply_local_unitaries, random_local_unitaries

print("== named states ==")
for label, state in [("GHZ", ghz()), ("W", w_state()), ("I/8", maximally_mixed())]:
    d = decompose(state)
    two_body, q_local = invariant_norms(d)
    print(f"{label:>4}: |R|^2+|S|^2+|T|^2 = {two_body:.6f}   |Q|^2+locals = {q_local:.6f}   |Q| = {q_norm(d):.6f}")

d = decompose(ghz())
print("\nGHZ three-body tensor entries (only 4 are nonzero):")
for idx in np.argwhere(np.abs(d.Q) > 1e-12):
    print(f"  Q[{idx[0]+1},{idx[1]+1},{idx[2]+1}] = {d.Q[tuple(idx)]:+.1f}")

print("\n== 2000 Haar-random pure states ==")
qs = []
for seed in range(2000):
    dd = decompose(random_pure(seed))
    two_body, q_local = invariant_norms(dd)
    assert abs(two_body - 3) < 1e-9 and abs(q_local - 4) < 1e-9
    qs.append(q_norm(dd))
qs = np.array(qs)
print(f"norm identities hold for all; |Q| in [{qs.min():.6f}, {qs.max():.6f}]")
hist, edges = np.histogram(qs, bins=10, range=(1.0, 2.0))
for count, lo, hi in zip(hist, edges, edges[1:]):
    print(f"  |Q| in [{lo:.2f},{hi:.2f}): {'#' * (count // 20)} {count}")

print("\n== invariance under local rotations ==")
rng = np.random.default_rng(0)
psi = random_pure(42)
rotated = apply_local_unitaries(psi, random_local_unitaries(rng))
print("original :", invariant_norms(decompose(psi)), q_norm(decompose(psi)))
print("rotated  :", invariant_norms(decompose(rotated)), q_norm(decompose(rotated)))

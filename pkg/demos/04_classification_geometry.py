"""Class exclusion reports and the projected region geometry.

Classifies a few states against the cube/cuboid bounds, then samples each
source class and projects onto the (D1, D2) plane, tabulating how the
regions fill in: I is the unit square, II/III are the cuboid side lobes of
the two classes whose distinguished axis survives the projection, and the
corners hold states outside every bi-separable class.
"""

from collections import Counter

import numpy as np

from tribell import classify, figure_projection, ghz, sample_region, to_density
from tribell.states import PureState, phi_plus_otimes_zero

print("== exclusion reports ==")
amp = np.zeros(8, dtype=complex)
amp[0] = 1.0
for label, state in [
    ("|000>", PureState(amp)),
    ("pair (x) |0>", phi_plus_otimes_zero()),
    ("GHZ", ghz()),
]:
    report = classify(to_density(state))
    print(f"{label:>12}: m = ({report.m[0]:.6f}, {report.m[1]:.6f}, {report.m[2]:.6f})")
    print(f"{'':>12}  excluded: {list(report.excluded) or 'none'}"
          + ("   << genuine tripartite entanglement indicated" if report.genuine_indicated else ""))

print("\n== region occupancy, optimized coordinates, plane (D1, D2) ==")
table = {}
for source in ("fully-separable", "1-23", "2-13", "ghz-family"):
    points = sample_region(source, 60, seed=14, mode="optimized")
    rows = figure_projection(points, "12")
    table[source] = Counter(region for _, _, region, _ in rows)
print(f"{'class':<18} {'I':>5} {'II':>5} {'III':>5} {'corner':>7}")
for source, counts in table.items():
    print(f"{source:<18} {counts.get('I', 0):>5} {counts.get('II', 0):>5} "
          f"{counts.get('III', 0):>5} {counts.get('corner', 0):>7}")
print("\nSeparable states stay in I; 1-23 states spill only sideways (II), 2-13")
print("only vertically (III); the GHZ family reaches the corners.")

print("\n== fixed-settings cloud stays inside the ball for these classes ==")
points = sample_region("haar-pure", 400, seed=15, mode="fixed-settings")
radii = [np.sqrt(p.d1**2 + p.d2**2 + p.d3**2) for p in points]
print(f"400 Haar states at one shared random setting: max radius {max(radii):.6f} (sqrt(3) = {np.sqrt(3):.6f})")

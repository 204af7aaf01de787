"""The group as a Siegel-domain boundary: Cayley transform, distributions,
and the J-squared obstruction to extending the boundary structure inward.

Floating point throughout; errors printed so the tolerances are visible.
"""

import numpy as np

from htype import (
    DivisionAlgebra,
    boundary_identity_error,
    build_hn,
    build_hprime,
    cayley,
    cayley_inverse,
    extension_verdict,
    find_j2_violation,
    j2_test,
    limiting_plane_experiment,
    round_trip_error,
    siegel_point,
)

print("== the boundary identity t = |X|^2 / 4 survives the transform ==")
for alg in [build_hn(DivisionAlgebra.R, 1), build_hn(DivisionAlgebra.C, 1),
            build_hprime(DivisionAlgebra.H, 1, 0)]:
    err = boundary_identity_error(alg, samples=2000, seed=3)
    print(f"  {alg.name}: max residual {err:.2e} over 2000 boundary points")

print()
print("== Cayley round trips ==")
h1c = build_hn(DivisionAlgebra.C, 1)
p = siegel_point(h1c, X=[0.3, -1.2, 0.5, 0.8], Z=[0.7, 0.1], t=2.5)
b = cayley(h1c, p)
back = cayley_inverse(h1c, b)
print(f"  Siegel (X, Z, t) -> ball |b| = {np.linalg.norm(b.vector):.6f} -> Siegel")
print(f"  X error {np.max(np.abs(back.X - p.X)):.2e}, "
      f"Z error {np.max(np.abs(back.Z - p.Z)):.2e}, t error {abs(back.t - p.t):.2e}")
print(f"  {h1c.name}: worst of 1000 random round trips: "
      f"{round_trip_error(h1c, samples=1000, seed=4):.2e}")

print()
print("== do the mixed products J_Z J_W X stay in span{J_Z' X}? ==")
holds = build_hprime(DivisionAlgebra.H, 2, 0)
fails = build_hn(DivisionAlgebra.C, 1)
for alg in [holds, fails]:
    res = j2_test(alg, sample_count=200, seed=9)
    print(f"  {alg.name}: holds = {res.holds}, max residual {res.max_residual:.2e}")

print()
print("== when it fails, a structured witness triple exists ==")
search = find_j2_violation(fails, seed=9)
w = search.witness
print(f"  {fails.name}: {search.to_report()['verdict']} "
      f"after {search.evaluations} evaluations")
print(f"  J_Z J_W X sticks out of span(X, J_z X): "
      f"in-span projection {search.best_score:.1e}")

print()
print("== the witness planes straighten out at infinity ==")
rep = limiting_plane_experiment(fails, w, seed=10)
for row in rep.rows:
    print(f"  radius {row.radius:>8.0f}: distance to limit planes "
          f"{row.part_i:.2e} / {row.part_ii:.2e} / {row.part_iii:.2e}")
print(f"  verdict: {rep.verdict}")
print(f"  worst inner product between the three limits: {rep.orthogonality:.2e}")

print()
print("== the combined verdict ==")
for alg in [holds, fails]:
    v = extension_verdict(alg, seed=0)
    print(f"  {alg.name}: boundary structure {v.verdict}")

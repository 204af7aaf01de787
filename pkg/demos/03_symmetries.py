"""Derivation algebras and Tanaka prolongation.

The headline dichotomy: for the division-algebra families the prolongation
either terminates after exactly two nonzero positive components whose
dimensions mirror (dim v, dim z), or it is trivial from the start.
"""

from htype import (
    BudgetExceeded,
    DivisionAlgebra,
    build_hn,
    build_hprime,
    build_htype_from_clifford,
    full_derivations,
    graded_derivations,
    symmetry_excess,
    tanaka_prolong,
)

print("== graded vs full derivations on h1(R) ==")
h1r = build_hn(DivisionAlgebra.R, 1)
gr = graded_derivations(h1r)
full = full_derivations(h1r)
print(f"  graded: {gr.dimension}   full: {full.dimension}")
# v -> z shifts are never constrained in a 2-step algebra, so the gap
# is exactly dim v * dim z
assert full.dimension == gr.dimension + h1r.dim_v * h1r.dim_z
print(f"  gap {full.dimension - gr.dimension} = dim v * dim z: "
      "the unconstrained v -> z shifts")

print()
print("== big systems refuse loudly instead of grinding ==")
h10o = build_hprime(DivisionAlgebra.O, 1, 0)
try:
    tanaka_prolong(h10o, max_degree=3)
except BudgetExceeded as exc:
    print(f"  {h10o.name}: {exc}")
print("  raise the cap explicitly (or via DIVH_BUDGET) to proceed:")

print()
print("== prolongation completes with mirrored components ==")
for alg in [build_hn(DivisionAlgebra.H, 1), h10o]:
    res = tanaka_prolong(alg, max_degree=3, budget=10**8)
    assert res.completed and res.component_dims == (alg.dim_v, alg.dim_z)
    print(f"  {alg.name}: g0 = {res.g0_dim}, components {res.component_dims} "
          f"= (dim v, dim z), total {res.total_dim}")

print()
print("== or it is trivial from degree one on ==")
for m, k in [(5, 1), (6, 1)]:
    alg = build_htype_from_clifford(m, k)
    res = tanaka_prolong(alg, max_degree=1)
    assert res.trivial
    print(f"  {alg.name}: g1 = 0, prolongation stops at g0 (dim {res.g0_dim})")

print()
print("== h1(R) never stops: contact vector fields are infinite type ==")
res = tanaka_prolong(build_hn(DivisionAlgebra.R, 1), max_degree=3)
print(f"  components so far: {res.component_dims}, completed = {res.completed}")

print()
print("== symmetry excess over the trivial bound ==")
for alg, deg in [(build_hn(DivisionAlgebra.H, 1), 3),
                 (build_htype_from_clifford(5, 1), 1)]:
    res = tanaka_prolong(alg, max_degree=deg, budget=10**8)
    exc = symmetry_excess(alg, res)
    dim_n = alg.dim_v + alg.dim_z
    label = ("rigid: total = g0 + dim n" if exc.is_rigid
             else f"excess {exc.infinitesimal_excess} >= 2 dim n = {2 * dim_n}")
    print(f"  {alg.name}: total {exc.total_dim}, g0 {exc.g0_dim}, {label}")

"""Walking the catalog of maximal parabolics with Heisenberg-type nilradical.

Each table row names a simple Lie algebra family; instantiating a row at
concrete parameters yields the Langlands pieces m, a, n and the dimension
identity dim g = dim m + dim a + 2 dim n is checked per instance.
"""

from htype import (
    SimpleAlgebraDescriptor,
    default_grid,
    instantiate,
    langlands_annotations,
    row_by_name,
    table_rows,
    tower,
    verify_all,
    verify_row,
)

rows = table_rows()
print(f"== {len(rows)} catalog rows ==")
exceptional = [r for r in rows if not r.name.startswith(("sl", "su", "sp", "so"))]
print(f"  classical: {len(rows) - len(exceptional)}, exceptional: {len(exceptional)}")
print("  sample exceptional rows: "
      + ", ".join(r.name for r in exceptional[:5]) + ", ...")

print()
print("== one row up close: su(p,q) at (3, 1) ==")
row = row_by_name("su(p,q)")
inst = instantiate(row, (3, 1))
print(f"  g = {inst.g.name}: dim g = {inst.g.dimension}")
print(f"  m: {inst.dim_m}  a: {inst.dim_a}  n: {inst.dim_n} "
      f"(v: {inst.dim_v}, z: {inst.dim_z})")
assert inst.g.dimension == inst.dim_m + inst.dim_a + 2 * inst.dim_n
report = verify_row(row, (3, 1))
print(f"  verify_row: identity {report.identity_ok}, "
      f"restricted-root count {report.sigma_ok}")

print()
print("== Langlands bookkeeping: the spin factor inside m ==")
for name, params in [("su(p,q)", (3, 1)), ("sp(p,q)", (2, 1))]:
    one = instantiate(row_by_name(name), params)
    ann = langlands_annotations(one)
    print(f"  {one.g.name}: dim spin(z) = {ann['dim_spin_factor']}, "
          f"remainder m_o = {ann['dim_m_o']}, "
          f"a = a_o + a_delta = {ann['dim_a_o']} + {ann['dim_a_delta']}")

print()
print("== the whole default grid, verified ==")
summary = verify_all()
n_exc = summary.count(exceptional=True)
print(f"  {len(summary.reports)} instantiations, all pass: {summary.all_pass}")
print(f"  exceptional instantiations: {n_exc}")

print()
print("== iterated nilradical towers ==")
# repeat the construction on the semisimple part of m, keeping factors
# that again carry a Heisenberg-type parabolic
desc = SimpleAlgebraDescriptor("su", (3, 2))
rep = tower(desc)
chain = " -> ".join(f"{s.g.name} (n: {s.nilradical_dim})" for s in rep.steps)
print(f"  {chain}")
print(f"  nilradical dims sum to {rep.total_nilradical_dim}, "
      f"maximal nilpotent subalgebra has dim {rep.maximal_nilpotent_dim}, "
      f"discrepancy {rep.discrepancy}")

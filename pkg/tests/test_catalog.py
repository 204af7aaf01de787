"""Catalog rows, dimension identities, towers, and dataset integrity."""

import dataclasses
import time

import pytest

from htype.catalog import (
    SimpleAlgebraDescriptor as D,
    compute_checksum,
    default_grid,
    instantiate,
    langlands_annotations,
    load_table,
    nilradical_dims,
    row_by_name,
    table_rows,
    tower,
    verify_all,
    verify_row,
)
from htype.division import DivisionAlgebra as DA
from htype.errors import DatasetError, StructureError
from htype.nilpotent import build_hn, build_hprime


def test_dataset_loads_and_counts():
    version, raw = load_table()
    assert version == "1.0"
    rows = table_rows()
    assert len(rows) == 27
    assert sum(1 for r in rows if r.exceptional) == 17


def test_checksum_catches_any_field_corruption():
    _, raw = load_table()
    recorded = compute_checksum(raw)
    # corrupt one field at a time across different field kinds
    mutations = [
        lambda r: r[0].__setitem__("dim_a", r[0]["dim_a"] + 1),
        lambda r: r[3]["nilradical"].__setitem__("algebra", "C"),
        lambda r: r[5]["sigma"][0].__setitem__(0, "3"),
        lambda r: r[12]["m_factors"][0].__setitem__("params", ["2", "4"]),
        lambda r: r[7].__setitem__("validity", "True"),
        lambda r: r[20].__setitem__("m_abelian", 1),
    ]
    import copy
    for mutate in mutations:
        rows = copy.deepcopy(raw)
        mutate(rows)
        assert compute_checksum(rows) != recorded


def test_semantic_mutation_fails_verification():
    row = row_by_name("sp(n,R)")
    bad = dataclasses.replace(row, dim_a=2)
    assert not verify_row(bad, (3,)).passed


# frozen identity examples, each term re-derivable from the closed forms
IDENTITY_CASES = [
    ("G", (), 14, 3, 1, 5),
    ("EVIII", (), 248, 133, 1, 57),
    ("su(p,q)", (2, 3), 24, 9, 1, 7),
    ("EIV", (), 78, 28, 2, 24),
    ("FII", (), 52, 21, 1, 15),
    ("su*(2n)", (3,), 35, 9, 2, 12),
    ("sp(p,q)", (1, 2), 21, 6, 1, 7),
    ("so(p,q)", (3, 4), 21, 6, 1, 7),
    ("E8", (), 496, 267, 1, 114),
]


@pytest.mark.parametrize("name,params,dg,dm,da,dn", IDENTITY_CASES)
def test_row_identities(name, params, dg, dm, da, dn):
    rep = verify_row(row_by_name(name), params)
    assert (rep.dim_g, rep.dim_m, rep.dim_a, rep.dim_n) == (dg, dm, da, dn)
    assert rep.passed


def test_verify_all_default_grid():
    t0 = time.time()
    summary = verify_all()
    assert summary.all_pass
    assert summary.count() >= 60
    assert summary.count(exceptional=True) == 17
    assert time.time() - t0 < 5.0
    csv = summary.to_csv()
    assert csv.splitlines()[0] == "row,params,dim_g,dim_m,dim_a,dim_n,pass"
    assert all(line.endswith(",true") for line in csv.splitlines()[1:])


def test_empty_grid_runs_exceptional_only():
    summary = verify_all(grid=[])
    assert summary.count() == 17
    assert summary.all_pass


def test_sigma_orbits_match_dim_a_everywhere():
    for row, ps in list(default_grid(300)):
        inst = instantiate(row, ps)
        assert len(inst.sigma) == inst.dim_a
    # the one row whose printed root set has two entries in a single orbit
    inst = instantiate(row_by_name("su(p,q)"), (1, 2))
    assert inst.sigma == (("alpha_1", "alpha_2"),)
    assert inst.dim_a == 1


def test_maximality_exceptions():
    non_maximal = {r.name for r in table_rows() if not r.maximal}
    assert non_maximal == {"sl(n,R)", "sl(n,C)", "su*(2n)", "EIV"}
    for r in table_rows():
        assert r.maximal == (r.dim_a == 1)


MINIMAL_CASES = [
    ("su(p,q)", (1, 4), True), ("su(p,q)", (2, 2), False),
    ("sp(p,q)", (1, 2), True), ("sp(p,q)", (2, 2), False),
    ("su*(2n)", (3,), True), ("su*(2n)", (4,), False),
    ("sl(n,R)", (3,), True), ("sl(n,R)", (4,), False),
    ("sl(n,C)", (3,), True), ("sl(n,C)", (4,), False),
    ("EIV", (), True), ("FII", (), True), ("EI", (), False),
]


@pytest.mark.parametrize("name,params,want", MINIMAL_CASES)
def test_minimal_flags(name, params, want):
    assert instantiate(row_by_name(name), params).minimal is want


def test_structure_flags():
    for r in table_rows():
        assert r.complex_structure == (r.nil_series == "hn" and r.nil_algebra == "C")
        assert r.quaternionic_structure == (r.nil_series == "hn" and r.nil_algebra == "H")
    assert row_by_name("su*(2n)").quaternionic_structure
    assert row_by_name("E6").complex_structure
    assert not row_by_name("FII").complex_structure


def test_classical_rows_keep_type():
    for r in table_rows():
        if r.exceptional:
            continue
        g_type = D(r.g_family, (5, 5)[:len(r.param_names)] or (5,)).type_letter
        for fam, _ in r.m_factors:
            sub_type = D(fam, ()).type_letter if fam in ("EV", "EVII", "E7") else \
                D(fam, (3, 3)).type_letter if fam in ("su", "sp", "so") else \
                D(fam, (3,)).type_letter
            # every S-eligible factor family shares the type letter
            if sub_type == g_type:
                break
        else:
            pytest.fail(f"{r.name}: no same-type factor in m")


def test_nilradical_dims_match_built_algebras():
    cases = [("hn", "R", (3,)), ("hn", "C", (2,)), ("hn", "H", (1,)),
             ("hn", "O", (1,)), ("hprime", "H", (1, 1)), ("hprime", "O", (1, 0))]
    for series, tag, ps in cases:
        dv, dz = nilradical_dims(series, tag, ps)
        alg = (build_hn(DA.from_tag(tag), ps[0]) if series == "hn"
               else build_hprime(DA.from_tag(tag), *ps))
        assert (dv, dz) == (alg.dim_v, alg.dim_z)


def test_out_of_range_params_rejected():
    with pytest.raises(ValueError):
        instantiate(row_by_name("sl(n,R)"), (2,))
    with pytest.raises(ValueError):
        instantiate(row_by_name("so(p,q)"), (1, 5))
    with pytest.raises(ValueError):
        verify_row(row_by_name("sp(p,q)"), (1, 1, 1))


def test_tower_sl5():
    rep = tower(D("sl_R", (5,)))
    assert [s.g.name for s in rep.steps] == ["sl(5,R)", "sl(3,R)"]
    assert [s.nilradical_dim for s in rep.steps] == [7, 3]
    assert rep.total_nilradical_dim == 10
    assert rep.maximal_nilpotent_dim == 10
    assert not rep.discrepancy


def test_tower_su23():
    rep = tower(D("su", (2, 3)))
    assert [s.g.name for s in rep.steps] == ["su(2,3)", "su(1,2)"]
    assert rep.total_nilradical_dim == 10 == rep.maximal_nilpotent_dim


def test_tower_sp22_stops_at_so14_isomorph():
    rep = tower(D("sp", (2, 2)))
    assert len(rep.steps) == 1
    assert rep.steps[0].nilradical_dim == 11  # h'_{1,1}(H)
    assert ("sp(1,1)", 10) in rep.steps[0].dropped_factors


def test_tower_sl4_discrepancy_flagged():
    rep = tower(D("sl_R", (4,)))
    assert rep.total_nilradical_dim == 5
    assert rep.maximal_nilpotent_dim == 6
    assert rep.discrepancy  # reported, not a failure


def test_tower_exceptional_chain():
    rep = tower(D("EVIII", ()))
    assert [s.g.name for s in rep.steps] == ["EVIII", "EV", "so(6,6)", "so(4,4)"]
    assert rep.total_nilradical_dim == 57 + 33 + 17 + 9


def test_tower_rejects_non_S():
    with pytest.raises(StructureError):
        tower(D("sp", (1, 1)))
    with pytest.raises(StructureError):
        tower(D("so", (1, 9)))


def test_annotations():
    ann = langlands_annotations(instantiate(row_by_name("su*(2n)"), (4,)))
    # dim z = 4, so(4) = 6 = dim su(2)^2; what remains is su*(4)
    assert ann["dim_spin_factor"] == 6
    assert ann["dim_m_o"] == D("su_star", (2,)).dimension
    assert ann["dim_a_o"] == 1

    ann = langlands_annotations(instantiate(row_by_name("sp(p,q)"), (2, 1)))
    assert ann["dim_spin_factor"] == 3
    assert ann["dim_m_o"] == D("sp", (1, 0)).dimension

    ann = langlands_annotations(instantiate(row_by_name("sl(n,R)"), (6,)))
    assert ann["dim_spin_factor"] == 0
    assert ann["dim_m_o"] == D("sl_R", (4,)).dimension

    for row, ps in default_grid(400):
        assert langlands_annotations(instantiate(row, ps))["dim_m_o"] >= 0


def test_in_S_exclusions():
    assert not D("sp", (1, 1)).in_S      # so(1,4)
    assert not D("su_star", (2,)).in_S   # su*(4) = so(1,5) boundary is n>=3
    assert not D("sl_R", (2,)).in_S      # so(1,2)
    assert not D("so", (2, 2)).in_S      # not simple
    assert not D("su", (3, 0)).in_S      # compact
    assert D("su_star", (3,)).in_S
    assert D("sp", (1, 2)).in_S
    assert D("EIV", ()).in_S

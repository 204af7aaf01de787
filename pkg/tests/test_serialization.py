"""Algebra JSON round trips and input validation."""

import json

import pytest

from htype.division import DivisionAlgebra as DA
from htype.errors import StructureError
from htype.nilpotent import build_hn, build_hprime, make_custom
from htype.serialization import from_json_dict, load_algebra, save_algebra, to_json_dict


@pytest.mark.parametrize("make", [
    lambda: build_hn(DA.R, 2),
    lambda: build_hn(DA.O, 1),
    lambda: build_hprime(DA.H, 1, 1),
    lambda: make_custom("pair", 3, 2, [(0, 1, 0, 1), (0, 2, 1, -2)]),
])
def test_round_trip(make, tmp_path):
    alg = make()
    path = tmp_path / "alg.json"
    save_algebra(alg, path)
    back = load_algebra(path)
    assert back.structure == alg.structure
    assert back.name == alg.name and back.family == alg.family
    assert (back.dim_v, back.dim_z) == (alg.dim_v, alg.dim_z)
    assert back.params == alg.params and back.abelian == alg.abelian


def test_save_is_byte_deterministic(tmp_path):
    alg = build_hn(DA.C, 1)
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_algebra(alg, p1)
    save_algebra(alg, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_only_nonzero_entries_stored():
    doc = to_json_dict(build_hn(DA.R, 1))
    assert doc["structure"] == [[0, 1, 0, "1"], [1, 0, 0, "-1"]]


def test_fractions_survive():
    alg = make_custom("thirds", 2, 1, [(0, 1, 0, "2/3")])
    back = from_json_dict(to_json_dict(alg))
    assert back.structure[0][1][0] == back.bracket_basis(0, 1)[0]
    assert str(back.structure[0][1][0]) == "2/3"


def test_missing_keys_rejected():
    with pytest.raises(StructureError, match="malformed"):
        from_json_dict({"dim_v": 2})


def test_negative_dimension_rejected():
    with pytest.raises(StructureError, match="negative"):
        from_json_dict({"dim_v": -1, "dim_z": 1, "structure": []})


def test_bad_entry_shape_rejected():
    base = {"dim_v": 2, "dim_z": 1}
    with pytest.raises(StructureError, match="bad structure entry"):
        from_json_dict({**base, "structure": [[0, 1, 0]]})
    with pytest.raises(StructureError, match="out of range"):
        from_json_dict({**base, "structure": [[0, 5, 0, "1"]]})


def test_antisymmetry_revalidated_on_load():
    # one partner missing: post_init must catch it
    with pytest.raises(StructureError, match="antisymmetry"):
        from_json_dict({"dim_v": 2, "dim_z": 1,
                        "structure": [[0, 1, 0, "1"]]})


def test_unreadable_file(tmp_path):
    with pytest.raises(StructureError, match="cannot read"):
        load_algebra(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(StructureError, match="cannot read"):
        load_algebra(bad)


def test_defaults_for_optional_fields(tmp_path):
    p = tmp_path / "min.json"
    p.write_text(json.dumps({"dim_v": 0, "dim_z": 1, "structure": []}))
    alg = load_algebra(p)
    assert alg.name == "unnamed" and alg.family == "custom"
    assert alg.basis_convention == "unspecified" and not alg.abelian

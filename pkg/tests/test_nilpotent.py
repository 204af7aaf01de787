"""Constructors, brackets, J-maps and structure predicates."""

import random
from fractions import Fraction

import pytest

from htype.division import DivisionAlgebra as DA
from htype.errors import CenterDimensionError, StructureError
from htype.nilpotent import (
    GradedNilpotent,
    bracket,
    build_hn,
    build_hprime,
    check_symplectic_isomorphic,
    dims,
    element,
    is_nonsingular,
    is_type_h,
    jmap,
    make_custom,
    random_two_step,
)


def _rand_v(alg, rng):
    return element(alg, v=[Fraction(rng.randint(-6, 6), 3)
                           for _ in range(alg.dim_v)])


# --- constructors -----------------------------------------------------------


@pytest.mark.parametrize("tag,n", [("R", 1), ("R", 3), ("C", 2), ("H", 1), ("O", 1)])
def test_hn_dimensions(tag, n):
    alg = build_hn(DA.from_tag(tag), n)
    d = DA.from_tag(tag).dimension
    assert dims(alg) == (2 * n * d, d, 2 * n * d + d)
    assert alg.name == f"h{n}({tag})"
    assert alg.family == "hn" and alg.params == {"n": n}


@pytest.mark.parametrize("tag,p,q", [("C", 1, 0), ("C", 2, 1), ("H", 1, 1), ("O", 1, 0)])
def test_hprime_dimensions(tag, p, q):
    alg = build_hprime(DA.from_tag(tag), p, q)
    d = DA.from_tag(tag).dimension
    assert dims(alg) == ((p + q) * d, d - 1, (p + q) * d + d - 1)
    assert alg.family == "hprime" and alg.params == {"p": p, "q": q}


def test_h1r_structure_oracle():
    # h1(R) is the 3-dimensional Heisenberg algebra: [x, y] = Z
    alg = build_hn(DA.R, 1)
    assert alg.structure[0][1][0] == 1
    assert alg.structure[1][0][0] == -1


def test_hprime_real_case_is_abelian():
    alg = build_hprime(DA.R, 2, 1)
    assert alg.dim_z == 0 and alg.abelian
    assert all(not any(cij) for ci in alg.structure for cij in ci)
    res = is_type_h(alg)
    assert res.holds and res.degenerate


def test_h0_is_just_the_center():
    alg = build_hn(DA.C, 0)
    assert dims(alg) == (0, 2, 2)


def test_constructor_errors():
    with pytest.raises(ValueError):
        build_hn(DA.R, -1)
    with pytest.raises(ValueError):
        build_hprime(DA.H, 0, 0)
    with pytest.raises(ValueError):
        build_hprime(DA.H, -1, 2)


def test_post_init_rejects_bad_tensors():
    f0, f1 = Fraction(0), Fraction(1)
    with pytest.raises(StructureError, match="antisymmetry"):
        GradedNilpotent("bad", "custom", None, {}, 2, 1,
                        (((f0,), (f1,)), ((f1,), (f0,))), "test")
    with pytest.raises(StructureError, match="z-dimension"):
        GradedNilpotent("bad", "custom", None, {}, 1, 2,
                        (((f0,),),), "test")
    with pytest.raises(StructureError, match="v-dimension"):
        GradedNilpotent("bad", "custom", None, {}, 2, 1,
                        (((f0,), (f0,)),), "test")


def test_make_custom_antisymmetrizes():
    alg = make_custom("pair", 3, 1, [(0, 1, 0, Fraction(2))])
    assert alg.structure[0][1][0] == 2 and alg.structure[1][0][0] == -2
    with pytest.raises(StructureError, match="diagonal"):
        make_custom("bad", 2, 1, [(1, 1, 0, 1)])


def test_random_two_step_deterministic():
    a = random_two_step(4, 2, random.Random(9))
    b = random_two_step(4, 2, random.Random(9))
    assert a.structure == b.structure
    assert dims(a) == (4, 2, 6)


# --- elements and brackets --------------------------------------------------


def test_bracket_antisymmetric_and_bilinear():
    alg = build_hn(DA.C, 2)
    rng = random.Random(10)
    for _ in range(20):
        x, y, w = (_rand_v(alg, rng) for _ in range(3))
        xy = bracket(alg, x, y)
        assert bracket(alg, y, x).z_part == tuple(-c for c in xy.z_part)
        s = Fraction(3, 2)
        xs = element(alg, v=[s * c for c in x.v_part])
        lhs = bracket(alg, xs, y).z_part
        assert lhs == tuple(s * c for c in xy.z_part)
        both = element(alg, v=[a + b for a, b in zip(x.v_part, w.v_part)])
        sums = tuple(a + b for a, b in zip(xy.z_part, bracket(alg, w, y).z_part))
        assert bracket(alg, both, y).z_part == sums


def test_bracket_lands_in_center():
    alg = build_hprime(DA.H, 1, 1)
    rng = random.Random(11)
    x, y = _rand_v(alg, rng), _rand_v(alg, rng)
    b = bracket(alg, x, y)
    assert all(c == 0 for c in b.v_part)
    assert bracket(alg, b, x).is_zero()


def test_element_validation():
    alg = build_hn(DA.R, 1)
    with pytest.raises(StructureError):
        element(alg, v=[1, 2, 3])
    with pytest.raises(StructureError):
        bracket(alg, element(alg), element(build_hn(DA.R, 2)))


# --- J-maps -----------------------------------------------------------------


@pytest.mark.parametrize("make", [
    lambda: build_hn(DA.C, 1),
    lambda: build_hprime(DA.H, 1, 1),
    lambda: build_hn(DA.O, 1),
])
def test_jmap_defining_identity(make):
    # <J_Z X, Y> = <Z, [X, Y]> over random exact samples
    alg = make()
    rng = random.Random(12)
    for _ in range(10):
        Z = [Fraction(rng.randint(-4, 4)) for _ in range(alg.dim_z)]
        J = jmap(alg, Z).matrix
        x, y = _rand_v(alg, rng), _rand_v(alg, rng)
        jx = [sum(J[a][b] * x.v_part[b] for b in range(alg.dim_v))
              for a in range(alg.dim_v)]
        lhs = sum(a * b for a, b in zip(jx, y.v_part))
        rhs = sum(z * c for z, c in zip(Z, bracket(alg, x, y).z_part))
        assert lhs == rhs


def test_jmap_is_skew():
    alg = build_hn(DA.H, 1)
    J = jmap(alg, [1, 2, 0, -1]).matrix
    n = alg.dim_v
    assert all(J[a][b] == -J[b][a] for a in range(n) for b in range(n))


def test_jmap_dimension_check():
    with pytest.raises(StructureError):
        jmap(build_hn(DA.R, 1), [1, 2])


def test_jmap_squares_to_minus_norm():
    alg = build_hprime(DA.O, 1, 0)
    Z = [Fraction(k - 3) for k in range(alg.dim_z)]
    J = jmap(alg, Z).matrix
    n = alg.dim_v
    nsq = sum(z * z for z in Z)
    for a in range(n):
        for b in range(n):
            val = sum(J[a][t] * J[t][b] for t in range(n))
            assert val == (-nsq if a == b else 0)


# --- predicates -------------------------------------------------------------


def test_type_h_families():
    for alg in (build_hn(DA.R, 2), build_hn(DA.C, 1), build_hn(DA.H, 1),
                build_hprime(DA.H, 2, 0), build_hprime(DA.O, 1, 0)):
        res = is_type_h(alg)
        assert res.holds and not res.degenerate and not res.failing_pairs
        assert bool(res)


def test_type_h_detects_violation():
    # [e1, e2] = z1 and [e1, e3] = z1 makes J_1 singular
    alg = make_custom("junk", 3, 1, [(0, 1, 0, 1), (0, 2, 0, 1)])
    res = is_type_h(alg)
    assert not res.holds and res.failing_pairs == ((0, 0),)


def test_nonsingular_type_h_shortcut():
    res = is_nonsingular(build_hn(DA.H, 1))
    assert res.verdict is True and "type H" in res.certificate


def test_nonsingular_center_dim_one():
    skew = make_custom("scaled", 4, 1, [(0, 1, 0, 1), (2, 3, 0, 2)])
    res = is_nonsingular(skew)
    assert res.verdict is True and "det" in res.certificate
    dead = make_custom("dead", 3, 1, [(0, 1, 0, 1)])
    assert is_nonsingular(dead).verdict is False


def test_nonsingular_pencil_branch():
    # quaternionic pair with J_2 rescaled: not type H, still nonsingular
    entries_1 = [(0, 1, 0, 1), (2, 3, 0, 1)]
    entries_2 = [(0, 2, 1, 2), (3, 1, 1, 2)]
    alg = make_custom("pencil", 4, 2, entries_1 + entries_2)
    assert not is_type_h(alg).holds
    res = is_nonsingular(alg)
    assert res.verdict is True and "no real roots" in res.certificate

    flat = make_custom("flat", 4, 2, entries_1)
    assert is_nonsingular(flat).verdict is False


def test_nonsingular_undetermined():
    alg = make_custom("wide", 4, 3,
                      [(0, 1, 0, 1), (0, 2, 1, 1), (0, 3, 2, 1)])
    res = is_nonsingular(alg)
    assert res.verdict is None and "undetermined" in res.certificate


# --- graded isomorphism witness ---------------------------------------------


def test_symplectic_witness_to_heisenberg():
    a = build_hprime(DA.C, 1, 1)
    b = build_hn(DA.R, 2)
    ok, M = check_symplectic_isomorphic(a, b)
    assert ok
    # transport: [Mu, Mw]_b = [u, w]_a
    rng = random.Random(13)
    n = a.dim_v
    for _ in range(10):
        u = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
        w = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
        Mu = [sum(M[i][j] * u[j] for j in range(n)) for i in range(n)]
        Mw = [sum(M[i][j] * w[j] for j in range(n)) for i in range(n)]
        assert (bracket(b, element(b, v=Mu), element(b, v=Mw)).z_part
                == bracket(a, element(a, v=u), element(a, v=w)).z_part)


def test_symplectic_witness_negative_cases():
    assert check_symplectic_isomorphic(
        build_hn(DA.R, 1), build_hn(DA.R, 2)) == (False, None)
    degenerate = make_custom("dead", 4, 1, [(0, 1, 0, 1)])
    assert check_symplectic_isomorphic(
        degenerate, build_hn(DA.R, 2)) == (False, None)
    odd = make_custom("odd", 3, 1, [(0, 1, 0, 1)])
    assert check_symplectic_isomorphic(odd, odd) == (False, None)


def test_symplectic_witness_needs_line_center():
    with pytest.raises(CenterDimensionError):
        check_symplectic_isomorphic(build_hn(DA.C, 1), build_hn(DA.C, 1))

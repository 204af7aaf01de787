"""Minimal real Clifford-module generators J_1..J_m and the H-type
algebras they induce.

The generators satisfy J_i J_j + J_j J_i = -2 delta_ij I with entries in
{-1, 0, 1}, built from division-algebra multiplications:

    m = 1        rotation [[0,-1],[1,0]] on R^2
    m = 2, 3     left multiplication by e_1..e_m on H          (d = 4)
    m = 4        doubled H: J_u(x,y) = (-u y, conj(u) x),
                 u in (1, e_1, e_2, e_3)                       (d = 8)
    m = 5, 6, 7  left multiplication by e_1..e_m on O          (d = 8)
    m = 8        doubled O, u over the full basis              (d = 16)

Left multiplications by orthonormal imaginary units anticommute by
linearized alternativity; the doubling adds one extra generator (u = 1).
These dimensions d(m) = 2, 4, 4, 8, 8, 8, 8, 16 are minimal, witnessed
by the commutant of the generated matrix algebra staying <= 4-dimensional
(an irreducible module over R, C or H).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import division as da
from .division import DivisionAlgebra
from .errors import StructureError
from .linalg import nullspace
from .nilpotent import GradedNilpotent, _freeze, _zeros

__all__ = ["CliffordGenerators", "clifford_generators", "build_htype_from_clifford",
           "REP_DIMS"]

Matrix = tuple[tuple[Fraction, ...], ...]

REP_DIMS = {1: 2, 2: 4, 3: 4, 4: 8, 5: 8, 6: 8, 7: 8, 8: 16}


@dataclass(frozen=True)
class CliffordGenerators:
    m: int
    rep_dim: int
    generators: tuple[Matrix, ...]
    commutant_dim: int


def _left_mult_matrix(algebra: DivisionAlgebra, index: int) -> list[list[Fraction]]:
    d = algebra.dimension
    u = da.basis_element(algebra, index)
    cols = [da.mul(u, da.basis_element(algebra, j)).coefficients for j in range(d)]
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def _doubled(algebra: DivisionAlgebra) -> list[list[list[Fraction]]]:
    """J_u(x, y) = (-u y, conj(u) x) over the full basis of the algebra."""
    d = algebra.dimension
    zero = Fraction(0)
    out = []
    for idx in range(d):
        lu = _left_mult_matrix(algebra, idx)
        # conj(e_0) = e_0, conj(e_i) = -e_i
        lconj = lu if idx == 0 else [[-x for x in row] for row in lu]
        mat = [[zero] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            for j in range(d):
                mat[i][d + j] = -lu[i][j]
                mat[d + i][j] = lconj[i][j]
        out.append(mat)
    return out


def _generator_matrices(m: int) -> list[list[list[Fraction]]]:
    if m == 1:
        o, l = Fraction(1), Fraction(0)
        return [[[l, -o], [o, l]]]
    if m in (2, 3):
        return [_left_mult_matrix(DivisionAlgebra.H, i + 1) for i in range(m)]
    if m == 4:
        return _doubled(DivisionAlgebra.H)
    if m in (5, 6, 7):
        return [_left_mult_matrix(DivisionAlgebra.O, i + 1) for i in range(m)]
    if m == 8:
        return _doubled(DivisionAlgebra.O)
    raise ValueError("m must be between 1 and 8")


def _commutant_dimension(mats: list[list[list[Fraction]]]) -> int:
    """dim of {A : A J_i = J_i A for all i}, computed exactly."""
    d = len(mats[0])
    rows = []
    for j in mats:
        for r in range(d):
            for c in range(d):
                # (A J - J A)[r][c] = sum_t A[r][t] J[t][c] - J[r][t] A[t][c]
                row = [Fraction(0)] * (d * d)
                for t in range(d):
                    row[r * d + t] += j[t][c]
                    row[t * d + c] -= j[r][t]
                rows.append(row)
    return nullspace(rows, d * d).dimension


def clifford_generators(m: int) -> CliffordGenerators:
    if not 1 <= m <= 8:
        raise ValueError("m must be between 1 and 8")
    mats = _generator_matrices(m)
    d = len(mats[0])
    # verify anticommutation and skewness exactly before returning
    for a in range(m):
        ja = mats[a]
        for i in range(d):
            for j in range(d):
                if ja[i][j] != -ja[j][i]:
                    raise StructureError(f"J_{a} is not skew")  # pragma: no cover
        for b in range(a, m):
            jb = mats[b]
            for i in range(d):
                for j in range(d):
                    s = sum(ja[i][t] * jb[t][j] + jb[i][t] * ja[t][j] for t in range(d))
                    want = Fraction(-2) if (a == b and i == j) else Fraction(0)
                    if s != want:
                        raise StructureError(  # pragma: no cover
                            f"anticommutation fails for ({a},{b})")
    com = _commutant_dimension(mats)
    if com > 4:
        raise StructureError(  # pragma: no cover
            f"commutant dimension {com} > 4: representation not minimal")
    return CliffordGenerators(
        m=m, rep_dim=d,
        generators=tuple(tuple(tuple(row) for row in j) for j in mats),
        commutant_dim=com,
    )


def build_htype_from_clifford(m: int, k: int) -> GradedNilpotent:
    """H-type algebra with v = k copies of the Clifford module, z = R^m."""
    if k < 1:
        raise ValueError("k must be >= 1")
    gens = clifford_generators(m)
    d = gens.rep_dim
    dim_v, dim_z = k * d, m
    c = _zeros(dim_v, dim_z)
    for l, j in enumerate(gens.generators):
        for copy in range(k):
            off = copy * d
            for a in range(d):
                for b in range(d):
                    # <z_l, [v_i, v_j]> = <J_l v_i, v_j>
                    if j[b][a]:
                        c[off + a][off + b][l] = j[b][a]
    return GradedNilpotent(
        name=f"clifford({m},{k})",
        family="clifford",
        algebra_tag=None,
        params={"m": m, "k": k},
        dim_v=dim_v,
        dim_z=dim_z,
        structure=_freeze(c),
        basis_convention=(
            f"v: {k} copies of the {d}-dim Clifford module; z: R^{m} standard basis"
        ),
    )

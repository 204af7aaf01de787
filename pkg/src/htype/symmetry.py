"""Derivation algebras and Tanaka prolongations as exact nullspaces.

Graded derivations are pairs (A, B) with B[x,y] = [Ax,y] + [x,Ay]; full
derivations add C: v -> z (always unconstrained) and a z -> v block that
the equations force to zero whenever the brackets span the center.

The prolongation g_K (K >= 1) consists of degree-K maps f sending v ->
g_{K-1} and z -> g_{K-2} subject to f([u,w]) = [f(u),w] + [u,f(w)] for
all u, w in n, where bracketing a positive-degree element against n means
applying the map. Each degree is one exact nullspace; iteration stops at
the first zero component (transitivity kills everything above) or at
max_degree. The per-degree system size is capped by a configurable entry
budget so desk-scale refusals are loud rather than slow.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, StructureError
from .linalg import NullspaceResult, check_budget, nullity_float, nullspace
from .nilpotent import GradedNilpotent

__all__ = [
    "DerivationSpace",
    "ProlongationResult",
    "DEFAULT_BUDGET",
    "default_budget",
    "graded_derivations",
    "full_derivations",
    "verify_graded_derivation",
    "tanaka_prolong",
    "symmetry_excess",
]

Matrix = tuple[tuple[Fraction, ...], ...]

DEFAULT_BUDGET = 200_000


def default_budget() -> int:
    """Entry cap per assembled system; DIVH_BUDGET overrides."""
    raw = os.environ.get("DIVH_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"DIVH_BUDGET must be an integer, got {raw!r}") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class DerivationSpace:
    algebra: GradedNilpotent
    graded_only: bool
    basis: tuple[tuple[Matrix, Matrix, Matrix | None], ...]  # (A, B, C)
    dimension: int
    method: str
    offgrade_dimension: int = 0  # z->v solutions (degenerate algebras only)


@dataclass(frozen=True)
class ProlongationResult:
    algebra_name: str
    g0_dim: int
    component_dims: tuple[int, ...]  # positive-degree dims, zero excluded
    total_dim: int
    trivial: bool
    completed: bool  # a zero component was reached
    arithmetic: str
    elapsed_ms: int
    budget: int
    float_tolerance: float | None = None
    bases: tuple | None = None

    def to_json_dict(self) -> dict:
        return {
            "algebra_name": self.algebra_name,
            "g0_dim": self.g0_dim,
            "component_dims": list(self.component_dims),
            "total_dim": self.total_dim,
            "trivial": self.trivial,
            "completed": self.completed,
            "arithmetic": self.arithmetic,
            "elapsed_ms": self.elapsed_ms,
            "budget": self.budget,
        }


def _unflatten(vec: Sequence[Fraction], shapes: list[tuple[int, int]]):
    """Split a flat vector into row-major matrices of the given shapes."""
    out = []
    pos = 0
    for rows, cols in shapes:
        mat = tuple(tuple(vec[pos + r * cols + c] for c in range(cols))
                    for r in range(rows))
        out.append(mat)
        pos += rows * cols
    return out


def _derivation_rows(alg: GradedNilpotent, ncols: int, acol, bcol):
    """Rows of B c(x,y) - c(Ax,y) - c(x,Ay) = 0 over basis pairs."""
    n, m = alg.dim_v, alg.dim_z
    c = alg.structure
    zero = Fraction(0)
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = c[i][j]
            for k in range(m):
                row = [zero] * ncols
                for l in range(m):
                    if cij[l]:
                        row[bcol(k, l)] += cij[l]
                for t in range(n):
                    v = c[t][j][k]
                    if v:
                        row[acol(t, i)] -= v
                    v = c[i][t][k]
                    if v:
                        row[acol(t, j)] -= v
                rows.append(row)
    return rows


def graded_derivations(alg: GradedNilpotent) -> DerivationSpace:
    """All (A, B) with B[x,y] = [Ax,y] + [x,Ay], as a certified basis."""
    n, m = alg.dim_v, alg.dim_z
    ncols = n * n + m * m
    rows = _derivation_rows(
        alg, ncols,
        acol=lambda t, s: t * n + s,
        bcol=lambda k, l: n * n + k * m + l,
    )
    res = nullspace(rows, ncols)
    basis = []
    for vec in res.basis:
        a, b = _unflatten(vec, [(n, n), (m, m)])
        basis.append((a, b, None))
    return DerivationSpace(alg, True, tuple(basis), res.dimension, res.method)


def full_derivations(alg: GradedNilpotent) -> DerivationSpace:
    """Derivations without the grading restriction.

    Unknown blocks: A: v->v, B: z->z, C: v->z (never constrained in a
    2-step algebra), E: z->v. The equations are the graded ones plus
    [x, Ez] = 0; E-solutions exist only when the skew forms share a
    kernel vector. Basis entries are (A, B, C) for the E = 0 vectors;
    offgrade_dimension counts the rest.
    """
    n, m = alg.dim_v, alg.dim_z
    ncols = n * n + m * m + m * n + n * m
    c_off = n * n + m * m
    e_off = c_off + m * n
    rows = _derivation_rows(
        alg, ncols,
        acol=lambda t, s: t * n + s,
        bcol=lambda k, l: n * n + k * m + l,
    )
    zero = Fraction(0)
    c = alg.structure
    for s in range(n):
        for k in range(m):
            for kp in range(m):
                row = [zero] * ncols
                any_nz = False
                for t in range(n):
                    v = c[s][t][kp]
                    if v:
                        row[e_off + t * m + k] += v
                        any_nz = True
                if any_nz:
                    rows.append(row)
    res = nullspace(rows, ncols)
    basis = []
    offgrade = 0
    for vec in res.basis:
        a, b, cm, e = _unflatten(vec, [(n, n), (m, m), (m, n), (n, m)])
        if any(x != 0 for r in e for x in r):
            offgrade += 1
        else:
            basis.append((a, b, cm))
    return DerivationSpace(alg, False, tuple(basis), res.dimension, res.method,
                           offgrade_dimension=offgrade)


def verify_graded_derivation(alg: GradedNilpotent, a: Matrix, b: Matrix) -> bool:
    """Direct substitution check of B[x,y] = [Ax,y] + [x,Ay]."""
    n, m = alg.dim_v, alg.dim_z
    c = alg.structure
    for i in range(n):
        for j in range(i + 1, n):
            cij = c[i][j]
            for k in range(m):
                lhs = sum(b[k][l] * cij[l] for l in range(m) if cij[l])
                rhs = sum(a[t][i] * c[t][j][k] + a[t][j] * c[i][t][k]
                          for t in range(n))
                if lhs != rhs:
                    return False
    return True


class _Exact:
    """Exact-arithmetic prolongation backend."""

    arithmetic = "exact"

    def __init__(self, alg: GradedNilpotent):
        self.alg = alg
        self.zero = Fraction(0)

    def solve(self, rows, ncols):
        res = nullspace(rows, ncols)
        return res.dimension, res.basis

    def row(self, ncols):
        return [self.zero] * ncols

    def coeff(self, x):
        return x


class _Float:
    """float64 backend: same systems, SVD nullity, SVD nullspace bases."""

    arithmetic = "float64"

    def __init__(self, alg: GradedNilpotent, tol: float):
        self.alg = alg
        self.tol = tol

    def solve(self, rows, ncols):
        if not rows:
            basis = [tuple(1.0 if c == f else 0.0 for c in range(ncols))
                     for f in range(ncols)]
            return ncols, basis
        mat = np.array(rows, dtype=float)
        u, s, vh = np.linalg.svd(mat)
        cutoff = self.tol * max(1.0, s[0] if s.size else 1.0)
        rank = int(np.sum(s > cutoff))
        basis = [tuple(map(float, vh[r])) for r in range(rank, ncols)]
        return ncols - rank, basis

    def row(self, ncols):
        return [0.0] * ncols

    def coeff(self, x):
        return float(x)


def tanaka_prolong(alg: GradedNilpotent,
                   g0_mode: str = "full_graded_derivations",
                   max_degree: int = 3,
                   arithmetic: str = "exact",
                   budget: int | None = None,
                   supplied_g0: Sequence[tuple[Matrix, Matrix]] | None = None,
                   float_tol: float = 1e-8,
                   store_bases: bool = False) -> ProlongationResult:
    """Degree-by-degree prolongation of (n, g0).

    g0_mode "full_graded_derivations" computes g0 = Der_gr(n) first (its
    system also counts against the budget); "supplied_subalgebra" takes
    explicit (A, B) pairs, each re-verified to be a graded derivation.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if arithmetic not in ("exact", "float64"):
        raise ValueError(f"unknown arithmetic {arithmetic!r}")
    if budget is None:
        budget = default_budget()
    t0 = time.perf_counter()
    n, m = alg.dim_v, alg.dim_z
    backend = _Exact(alg) if arithmetic == "exact" else _Float(alg, float_tol)

    # level data: ev_v[j][a] is a D(j-1) x n matrix, ev_z[j][a] a D(j-2) x m
    ev_v: dict[int, list] = {}
    ev_z: dict[int, list] = {}
    c = alg.structure
    co = backend.coeff
    ev_v[-1] = [
        [[co(c[i][t][s]) for t in range(n)] for s in range(m)]
        for i in range(n)
    ]

    if g0_mode == "full_graded_derivations":
        npairs = n * (n - 1) // 2
        check_budget(npairs * m, n * n + m * m, budget, "degree-0 derivation system")
        if arithmetic == "exact":
            der = graded_derivations(alg)
            g0_basis = [(a, b) for a, b, _ in der.basis]
        else:
            rows = _derivation_rows(
                alg, n * n + m * m,
                acol=lambda t, s: t * n + s,
                bcol=lambda k, l: n * n + k * m + l,
            )
            rows = [[co(x) for x in r] for r in rows]
            _, vecs = backend.solve(rows, n * n + m * m)
            g0_basis = []
            for vec in vecs:
                a = [[vec[t * n + s] for s in range(n)] for t in range(n)]
                b = [[vec[n * n + k * m + l] for l in range(m)] for k in range(m)]
                g0_basis.append((a, b))
    elif g0_mode == "supplied_subalgebra":
        if not supplied_g0:
            raise ValueError("supplied_subalgebra mode needs supplied_g0")
        for a, b in supplied_g0:
            if not verify_graded_derivation(alg, a, b):
                raise StructureError("supplied g0 element is not a graded derivation")
        g0_basis = [([[co(x) for x in row] for row in a],
                     [[co(x) for x in row] for row in b]) for a, b in supplied_g0]
    else:
        raise ValueError(f"unknown g0_mode {g0_mode!r}")

    ev_v[0] = [a for a, _ in g0_basis]
    ev_z[0] = [b for _, b in g0_basis]
    g0_dim = len(g0_basis)
    level_dims = {-2: m, -1: n, 0: g0_dim}

    def dfun(j: int) -> int:
        return level_dims.get(j, 0)

    component_dims: list[int] = []
    all_bases = [] if store_bases else None
    completed = False
    for K in range(1, max_degree + 1):
        d_prev = dfun(K - 1)   # image of v
        d_prev2 = dfun(K - 2)  # image of z
        p_cols = d_prev * n
        ncols = p_cols + d_prev2 * m
        n_rows = ((n * (n - 1) // 2) * dfun(K - 2)
                  + n * m * dfun(K - 3)
                  + (m * (m - 1) // 2) * dfun(K - 4))
        check_budget(n_rows, ncols, budget, f"degree-{K} prolongation system")
        rows = []
        evp_v, evp_z = ev_v[K - 1], ev_z.get(K - 1)
        ev2_v = ev_v[K - 2] if K - 2 >= -1 else None
        ev2_z = ev_z.get(K - 2)
        # f([x_i, x_j]) = [f(x_i), x_j] + [x_i, f(x_j)], values in g_{K-2}
        for i in range(n):
            for j in range(i + 1, n):
                cij = c[i][j]
                for r in range(d_prev2):
                    row = backend.row(ncols)
                    for k in range(m):
                        if cij[k]:
                            row[p_cols + r * m + k] += co(cij[k])
                    for a in range(d_prev):
                        ev = evp_v[a]
                        x = ev[r][j]
                        if x:
                            row[a * n + i] -= x
                        x = ev[r][i]
                        if x:
                            row[a * n + j] += x
                    rows.append(row)
        # 0 = [f(x_i), z_l] + [x_i, f(z_l)], values in g_{K-3}
        d3 = dfun(K - 3)
        if d3:
            for i in range(n):
                for l in range(m):
                    for s in range(d3):
                        row = backend.row(ncols)
                        if evp_z is not None:
                            for a in range(d_prev):
                                x = evp_z[a][s][l]
                                if x:
                                    row[a * n + i] += x
                        for b in range(d_prev2):
                            x = ev2_v[b][s][i]
                            if x:
                                row[p_cols + b * m + l] -= x
                        rows.append(row)
        # 0 = [f(z_l), z_l'] + [z_l, f(z_l')], values in g_{K-4}
        d4 = dfun(K - 4)
        if d4 and ev2_z is not None:
            for l in range(m):
                for lp in range(l + 1, m):
                    for u_ in range(d4):
                        row = backend.row(ncols)
                        for b in range(d_prev2):
                            x = ev2_z[b][u_][lp]
                            if x:
                                row[p_cols + b * m + l] += x
                            x = ev2_z[b][u_][l]
                            if x:
                                row[p_cols + b * m + lp] -= x
                        rows.append(row)

        dim_k, vecs = backend.solve(rows, ncols)
        if dim_k == 0:
            completed = True
            break
        component_dims.append(dim_k)
        level_dims[K] = dim_k
        # the new basis vectors are the evaluation tensors of level K
        ev_v[K] = []
        ev_z[K] = []
        for vec in vecs:
            p = [[vec[a * n + i] for i in range(n)] for a in range(d_prev)]
            q = [[vec[p_cols + b * m + l] for l in range(m)] for b in range(d_prev2)]
            ev_v[K].append(p)
            ev_z[K].append(q)
        if store_bases:
            all_bases.append((tuple(map(tuple, ev_v[K])), tuple(map(tuple, ev_z[K]))))

    total = n + m + g0_dim + sum(component_dims)
    trivial = completed and not component_dims
    elapsed = int((time.perf_counter() - t0) * 1000)
    return ProlongationResult(
        algebra_name=alg.name,
        g0_dim=g0_dim,
        component_dims=tuple(component_dims),
        total_dim=total,
        trivial=trivial,
        completed=completed,
        arithmetic=arithmetic,
        elapsed_ms=elapsed,
        budget=budget,
        float_tolerance=float_tol if arithmetic == "float64" else None,
        bases=tuple(all_bases) if store_bases else None,
    )


@dataclass(frozen=True)
class SymmetryExcess:
    algebra_name: str
    total_dim: int
    g0_dim: int
    dim_n: int
    positive_mass: int       # total - g0 - dim n
    infinitesimal_excess: int  # total - g0

    @property
    def meets_divh_bound(self) -> bool:
        return self.infinitesimal_excess >= 2 * self.dim_n

    @property
    def is_rigid(self) -> bool:
        return self.infinitesimal_excess == self.dim_n


def symmetry_excess(alg: GradedNilpotent, result: ProlongationResult) -> SymmetryExcess:
    """Dimension bookkeeping of the prolongation vs. the base algebra."""
    dim_n = alg.dim_v + alg.dim_z
    return SymmetryExcess(
        algebra_name=alg.name,
        total_dim=result.total_dim,
        g0_dim=result.g0_dim,
        dim_n=dim_n,
        positive_mass=result.total_dim - result.g0_dim - dim_n,
        infinitesimal_excess=result.total_dim - result.g0_dim,
    )

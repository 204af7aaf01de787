"""Exact nullspace computation for sparse integer/rational systems.

Rank decisions downstream (derivation dimensions, prolongation components)
must be exact, so every returned basis is certified over Q:

1. Rows are scaled to primitive integer vectors.
2. Small systems go straight to Fraction Gauss-Jordan.
3. Large systems are row-reduced modulo a 31-bit prime in int64 numpy,
   candidate basis vectors are lifted back to Q by rational reconstruction,
   and each lifted vector is re-checked against the integer matrix exactly.
   Since nullity over Q never exceeds nullity mod p, a verified set of
   nullity_p independent vectors certifies the dimension.
4. Any reconstruction/verification failure escalates: second prime, CRT
   combination, then the Fraction path as the final authority.

The basis returned is the canonical reduced-echelon nullspace basis (one
vector per free column, entry 1 there), so results are deterministic and
method-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded

__all__ = [
    "NullspaceResult",
    "nullspace",
    "check_budget",
    "rank_of_vectors",
    "integerize_row",
]

# 31-bit primes: products stay inside int64 during elimination.
_PRIMES = (2147483647, 2147483629, 2147483587)

# Below this entry count the pure-Fraction path is fast enough.
_FRACTION_CUTOFF = 20000


@dataclass(frozen=True)
class NullspaceResult:
    dimension: int
    basis: tuple[tuple[Fraction, ...], ...]
    method: str  # "fraction" | "modp" | "modp-crt"


def check_budget(nrows: int, ncols: int, budget: int | None, context: str = "") -> None:
    if budget is not None and nrows * ncols > budget:
        raise BudgetExceeded(nrows * ncols, budget, context)


def integerize_row(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row to a primitive integer row."""
    denoms = [f.denominator for f in row if f != 0]
    if not denoms:
        return [0] * len(row)
    scale = math.lcm(*denoms)
    ints = [int(f * scale) for f in row]
    g = math.gcd(*ints)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _frac_rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        prow = mat[r]
        for i, row in enumerate(mat):
            if i != r and row[c] != 0:
                f = row[c]
                mat[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def _basis_from_rref(rref, pivots: list[int], ncols: int, zero, one):
    """Canonical nullspace basis: one vector per free column."""
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -rref[r][f]
        basis.append(tuple(v))
    return basis


def _nullspace_fraction(int_rows: list[list[int]], ncols: int) -> NullspaceResult:
    frac_rows = [[Fraction(v) for v in row] for row in int_rows]
    rref, pivots = _frac_rref(frac_rows, ncols)
    basis = _basis_from_rref(rref, pivots, ncols, Fraction(0), Fraction(1))
    return NullspaceResult(len(basis), tuple(basis), "fraction")


def _rref_modp(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = mat.copy()
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _rat_reconstruct(a: int, modulus: int) -> Fraction | None:
    """Wang's algorithm: the unique n/d with |n|, d <= sqrt(modulus/2)."""
    bound = math.isqrt(modulus // 2)
    a %= modulus
    r0, r1 = modulus, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if math.gcd(r1, abs(t1)) != 1:
        return None
    n, d = (r1, t1) if t1 > 0 else (-r1, -t1)
    return Fraction(n, d)


def _verify_exact(int_rows: list[list[int]], vec: tuple[Fraction, ...]) -> bool:
    ints = integerize_row(vec)
    max_a = max((max(abs(v) for v in row) for row in int_rows if row), default=0)
    max_v = max((abs(v) for v in ints), default=0)
    n = len(ints)
    if max_a and max_v and max_a * max_v * n < 2**62:
        a = np.array(int_rows, dtype=np.int64)
        v = np.array(ints, dtype=np.int64)
        return not np.any(a @ v)
    for row in int_rows:
        if sum(r * x for r, x in zip(row, ints) if r):
            return False
    return True


def _nullspace_modp(int_rows: list[list[int]], ncols: int) -> NullspaceResult | None:
    obj = np.array(int_rows, dtype=object)
    reductions = {}

    def reduced(p):
        if p not in reductions:
            reductions[p] = np.array(obj % p, dtype=np.int64)
        return reductions[p]

    attempts: list[tuple[int, ...]] = [(_PRIMES[0],), (_PRIMES[1],),
                                       (_PRIMES[0], _PRIMES[1]), (_PRIMES[2],),
                                       _PRIMES]
    rref_cache: dict[int, tuple[np.ndarray, list[int]]] = {}
    for primes in attempts:
        infos = []
        for p in primes:
            if p not in rref_cache:
                rref_cache[p] = _rref_modp(reduced(p), p)
            infos.append(rref_cache[p])
        pivots = infos[0][1]
        if any(info[1] != pivots for info in infos[1:]):
            continue  # primes disagree; this combination is unusable
        modulus = math.prod(primes)
        pivot_set = set(pivots)
        free = [c for c in range(ncols) if c not in pivot_set]
        basis = []
        ok = True
        for f in free:
            entries = [Fraction(1) if c == f else Fraction(0) for c in range(ncols)]
            for r, pc in enumerate(pivots):
                residues = [int(info[0][r, f]) for info in infos]
                if len(primes) == 1:
                    a = residues[0]
                else:
                    a = _crt(residues, primes)
                val = _rat_reconstruct((-a) % modulus, modulus)
                if val is None:
                    ok = False
                    break
                entries[pc] = val
            if not ok:
                break
            vec = tuple(entries)
            if not _verify_exact(int_rows, vec):
                ok = False
                break
            basis.append(vec)
        if ok:
            method = "modp" if len(primes) == 1 else "modp-crt"
            return NullspaceResult(len(basis), tuple(basis), method)
    return None


def _crt(residues: list[int], primes: Sequence[int]) -> int:
    x, m = residues[0], primes[0]
    for r, p in zip(residues[1:], primes[1:]):
        h = ((r - x) * pow(m, -1, p)) % p
        x += m * h
        m *= p
    return x % m


def nullspace(rows: Iterable[Sequence[Fraction]], ncols: int,
              budget: int | None = None, context: str = "") -> NullspaceResult:
    """Certified exact nullspace of the system rows . v = 0.

    Accepts dense rational rows; zero rows are dropped. The budget, if
    given, caps nrows*ncols before any heavy work happens.
    """
    int_rows = []
    for row in rows:
        ints = integerize_row(row)
        if any(ints):
            int_rows.append(ints)
    check_budget(len(int_rows), ncols, budget, context)
    if ncols == 0:
        return NullspaceResult(0, (), "fraction")
    if not int_rows:
        basis = tuple(
            tuple(Fraction(1) if c == f else Fraction(0) for c in range(ncols))
            for f in range(ncols)
        )
        return NullspaceResult(ncols, basis, "fraction")
    if len(int_rows) * ncols <= _FRACTION_CUTOFF:
        return _nullspace_fraction(int_rows, ncols)
    result = _nullspace_modp(int_rows, ncols)
    if result is not None:
        return result
    return _nullspace_fraction(int_rows, ncols)


def rank_of_vectors(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank of a (small) list of rational vectors."""
    if not vectors:
        return 0
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    rref, pivots = _frac_rref(rows, len(rows[0]))
    return len(pivots)


def nullity_float(rows: np.ndarray, tol: float = 1e-8) -> int:
    """Float64 nullity by singular values; used only as a cross-check."""
    if rows.size == 0:
        return rows.shape[1] if rows.ndim == 2 else 0
    s = np.linalg.svd(rows, compute_uv=False)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    return rows.shape[1] - rank

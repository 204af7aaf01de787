"""2-step graded metric nilpotent Lie algebras n = v (+) z.

An algebra is a dense rational structure tensor c with [v_i, v_j] =
sum_k c[i][j][k] z_k; the metric is the coordinate inner product on both
layers. The two division-algebra series are

    h_n(A)      = (A^n (+) A^n) (+) A,        [x+y, x^+y^] = sum x_i y^_i - x^_i y_i
    h'_{p,q}(A) = (A^p (+) A^q) (+) Im(A),    [.,.] = -Im(sum x_j conj(x^_j)
                                                         + sum conj(y^_k) y_k)

expanded over the standard real basis of A. The v-basis order is the
x-block then the y-block, each A-slot over (1, e1, ..., e_{d-1}); the
z-basis is the standard (or imaginary) basis of A. J-maps are defined by
<J_Z X, Y> = <Z, [X, Y]>.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from . import division as da
from .division import DivisionAlgebra
from .errors import CenterDimensionError, StructureError

__all__ = [
    "GradedNilpotent",
    "NilpotentElement",
    "JMap",
    "TypeHResult",
    "NonsingularResult",
    "build_hn",
    "build_hprime",
    "make_custom",
    "random_two_step",
    "bracket",
    "jmap",
    "is_type_h",
    "is_nonsingular",
    "check_symplectic_isomorphic",
    "dims",
]

Structure = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class GradedNilpotent:
    name: str
    family: str  # "hn" | "hprime" | "clifford" | "custom"
    algebra_tag: str | None
    params: dict
    dim_v: int
    dim_z: int
    structure: Structure  # c[i][j][k]
    basis_convention: str
    abelian: bool = False

    def __post_init__(self):
        c = self.structure
        if len(c) != self.dim_v or any(len(ci) != self.dim_v for ci in c):
            raise StructureError("structure tensor v-dimensions inconsistent")
        for ci in c:
            for cij in ci:
                if len(cij) != self.dim_z:
                    raise StructureError("structure tensor z-dimension inconsistent")
        for i in range(self.dim_v):
            for j in range(i + 1):
                for k in range(self.dim_z):
                    if c[i][j][k] != -c[j][i][k]:
                        raise StructureError(
                            f"antisymmetry violated at ({i},{j},{k})"
                        )

    @property
    def dim_total(self) -> int:
        return self.dim_v + self.dim_z

    def bracket_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.structure[i][j]


@dataclass(frozen=True)
class NilpotentElement:
    v_part: tuple[Fraction, ...]
    z_part: tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.v_part) and all(c == 0 for c in self.z_part)


@dataclass(frozen=True)
class JMap:
    Z: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class TypeHResult:
    holds: bool
    degenerate: bool
    failing_pairs: tuple[tuple[int, int], ...]
    certificate: str

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class NonsingularResult:
    verdict: bool | None  # None = undetermined
    degenerate: bool
    certificate: str


def _zeros(dim_v: int, dim_z: int) -> list[list[list[Fraction]]]:
    return [[[Fraction(0)] * dim_z for _ in range(dim_v)] for _ in range(dim_v)]


def _freeze(c: list[list[list[Fraction]]]) -> Structure:
    return tuple(tuple(tuple(e) for e in row) for row in c)


def build_hn(algebra: DivisionAlgebra, n: int) -> GradedNilpotent:
    """h_n(A): v = A^n (x-block) (+) A^n (y-block), z = A."""
    if n < 0:
        raise ValueError("n must be >= 0")
    d = algebra.dimension
    dim_v, dim_z = 2 * n * d, d
    c = _zeros(dim_v, dim_z)
    basis = [da.basis_element(algebra, a) for a in range(d)]
    for slot in range(n):
        for a in range(d):
            for b in range(d):
                prod = da.mul(basis[a], basis[b]).coefficients
                i = slot * d + a              # x_slot = e_a
                j = n * d + slot * d + b      # y^_slot = e_b
                for k in range(d):
                    c[i][j][k] += prod[k]
                    c[j][i][k] -= prod[k]
    return GradedNilpotent(
        name=f"h{n}({algebra.value})",
        family="hn",
        algebra_tag=algebra.value,
        params={"n": n},
        dim_v=dim_v,
        dim_z=dim_z,
        structure=_freeze(c),
        basis_convention=(
            "v: x-block then y-block, each slot over (1,e1,...,e_{d-1}); "
            "z: standard basis of the coefficient algebra"
        ),
    )


def build_hprime(algebra: DivisionAlgebra, p: int, q: int) -> GradedNilpotent:
    """h'_{p,q}(A): v = A^p (+) A^q, z = Im(A). Abelian when A = R."""
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError("need p, q >= 0 with p + q >= 1")
    d = algebra.dimension
    dim_v, dim_z = (p + q) * d, d - 1
    c = _zeros(dim_v, dim_z)
    basis = [da.basis_element(algebra, a) for a in range(d)]
    # x-slots: -Im(x_j conj(x^_j)); first argument supplies x, second x^.
    for slot in range(p):
        for a in range(d):
            for b in range(d):
                prod = da.mul(basis[a], da.conj(basis[b])).coefficients
                i, j = slot * d + a, slot * d + b
                for k in range(dim_z):
                    c[i][j][k] -= prod[k + 1]
    # y-slots: -Im(conj(y^_k) y_k); first argument supplies y, second y^.
    for slot in range(q):
        for a in range(d):
            for b in range(d):
                prod = da.mul(da.conj(basis[b]), basis[a]).coefficients
                i = (p + slot) * d + a
                j = (p + slot) * d + b
                for k in range(dim_z):
                    c[i][j][k] -= prod[k + 1]
    return GradedNilpotent(
        name=f"h'{p},{q}({algebra.value})",
        family="hprime",
        algebra_tag=algebra.value,
        params={"p": p, "q": q},
        dim_v=dim_v,
        dim_z=dim_z,
        structure=_freeze(c),
        basis_convention=(
            "v: x-block then y-block, each slot over (1,e1,...,e_{d-1}); "
            "z: imaginary basis (e1,...,e_{d-1})"
        ),
        abelian=(dim_z == 0),
    )


def make_custom(name: str, dim_v: int, dim_z: int,
                entries: Sequence[tuple[int, int, int, Fraction]],
                family: str = "custom") -> GradedNilpotent:
    """Build from sparse (i, j, k, value) entries; antisymmetry is filled in."""
    c = _zeros(dim_v, dim_z)
    for i, j, k, val in entries:
        if i == j:
            raise StructureError("diagonal bracket entry must vanish")
        val = Fraction(val)
        c[i][j][k] += val
        c[j][i][k] -= val
    return GradedNilpotent(
        name=name, family=family, algebra_tag=None,
        params={}, dim_v=dim_v, dim_z=dim_z, structure=_freeze(c),
        basis_convention="custom",
    )


def random_two_step(dim_v: int, dim_z: int, rng: random.Random,
                    denom: int = 4) -> GradedNilpotent:
    """Random rational structure tensor; for genericity experiments."""
    entries = []
    for i in range(dim_v):
        for j in range(i + 1, dim_v):
            for k in range(dim_z):
                entries.append((i, j, k, Fraction(rng.randint(-denom, denom), denom)))
    return make_custom(f"random({dim_v},{dim_z})", dim_v, dim_z, entries)


def bracket(alg: GradedNilpotent, u: NilpotentElement, w: NilpotentElement) -> NilpotentElement:
    if len(u.v_part) != alg.dim_v or len(w.v_part) != alg.dim_v:
        raise StructureError("element dimension mismatch")
    z = [Fraction(0)] * alg.dim_z
    c = alg.structure
    for i, ui in enumerate(u.v_part):
        if ui == 0:
            continue
        for j, wj in enumerate(w.v_part):
            if wj == 0:
                continue
            cij = c[i][j]
            s = ui * wj
            for k in range(alg.dim_z):
                if cij[k]:
                    z[k] += s * cij[k]
    return NilpotentElement((Fraction(0),) * alg.dim_v, tuple(z))


def element(alg: GradedNilpotent, v=None, z=None) -> NilpotentElement:
    v = tuple(Fraction(x) for x in (v if v is not None else [0] * alg.dim_v))
    z = tuple(Fraction(x) for x in (z if z is not None else [0] * alg.dim_z))
    if len(v) != alg.dim_v or len(z) != alg.dim_z:
        raise StructureError("element dimension mismatch")
    return NilpotentElement(v, z)


def jmap(alg: GradedNilpotent, Z: Sequence) -> JMap:
    """<J_Z X, Y> = <Z, [X, Y]>: (J_Z)_{ab} = sum_k Z_k c[b][a][k]."""
    Zf = tuple(Fraction(z) for z in Z)
    if len(Zf) != alg.dim_z:
        raise StructureError("Z dimension mismatch")
    c = alg.structure
    n = alg.dim_v
    matrix = tuple(
        tuple(sum((zk * c[b][a][k] for k, zk in enumerate(Zf) if zk), Fraction(0))
              for b in range(n))
        for a in range(n)
    )
    return JMap(Zf, matrix)


def _jmat(alg: GradedNilpotent, k: int) -> list[list[Fraction]]:
    """J for the k-th z-basis vector, as lists."""
    c = alg.structure
    n = alg.dim_v
    return [[c[b][a][k] for b in range(n)] for a in range(n)]


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)]


def is_type_h(alg: GradedNilpotent) -> TypeHResult:
    """J_Z^2 = -|Z|^2 I on a z-basis plus polarization on all pairs."""
    if alg.dim_z == 0:
        return TypeHResult(True, True, (), "vacuous: dim z = 0, no J-maps exist")
    js = [_jmat(alg, k) for k in range(alg.dim_z)]
    n = alg.dim_v
    failing = []
    for a in range(alg.dim_z):
        for b in range(a, alg.dim_z):
            anti = _matmul(js[a], js[b])
            if a != b:
                other = _matmul(js[b], js[a])
                anti = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(anti, other)]
                target = Fraction(0)
            else:
                anti = [[2 * x for x in row] for row in anti]
                target = Fraction(-2)
            ok = all(
                anti[i][j] == (target if i == j else 0)
                for i in range(n) for j in range(n)
            )
            if not ok:
                failing.append((a, b))
    if failing:
        return TypeHResult(False, False, tuple(failing),
                           f"{len(failing)} basis pair(s) violate the J-identity")
    return TypeHResult(True, False, (),
                       "J_a J_b + J_b J_a = -2 delta_ab I verified exactly on the z-basis")


def _det_exact(mat: list[list[Fraction]]) -> Fraction:
    m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                      for row in mat])
    d = sympy.Rational(m.det())
    return Fraction(int(d.p), int(d.q))


def is_nonsingular(alg: GradedNilpotent) -> NonsingularResult:
    """Is ad_X: v -> z surjective for every nonzero X?"""
    if alg.dim_z == 0:
        return NonsingularResult(True, True, "vacuous: dim z = 0")
    th = is_type_h(alg)
    if th.holds and not th.degenerate:
        return NonsingularResult(True, False,
                                 "type H implies non-singular: J_Z X != 0 for Z, X != 0")
    # ad_X surjective for all X != 0  <=>  J_Z nonsingular for all Z != 0
    # (failure of surjectivity pairs with a Z annihilating the image).
    if alg.dim_z == 1:
        det = _det_exact(_jmat(alg, 0))
        if det != 0:
            return NonsingularResult(True, False, f"det J = {det} != 0")
        return NonsingularResult(False, False, "det J = 0: singular direction exists")
    if alg.dim_z == 2:
        j1 = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                           for row in _jmat(alg, 0)])
        j2 = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                           for row in _jmat(alg, 1)])
        if j2.det() == 0:
            return NonsingularResult(False, False, "det J_2 = 0")
        t = sympy.Symbol("t")
        poly = sympy.Poly((j1 + t * j2).det(), t)
        if poly.is_zero:
            return NonsingularResult(False, False, "pencil determinant vanishes identically")
        n_real = sympy.polys.polytools.count_roots(poly, -sympy.oo, sympy.oo)
        if n_real == 0:
            return NonsingularResult(
                True, False,
                "pencil det(J_1 + t J_2) has no real roots and det J_2 != 0")
        return NonsingularResult(False, False,
                                 f"pencil determinant has {n_real} real root(s)")
    return NonsingularResult(None, False,
                             "undetermined: dim z > 2 without type H structure")


def _skew_form(alg: GradedNilpotent) -> list[list[Fraction]]:
    if alg.dim_z != 1:
        raise CenterDimensionError("only center-dimension-1 supported")
    return [[alg.structure[i][j][0] for j in range(alg.dim_v)] for i in range(alg.dim_v)]


def _darboux(S: list[list[Fraction]]) -> list[list[Fraction]] | None:
    """Columns of the returned P form a Darboux basis: P^T S P = standard
    symplectic form [[0, I], [-I, 0]]. None if S is degenerate."""
    n = len(S)
    if n % 2:
        return None

    def form(u, v):
        return sum(ui * sum(sij * vj for sij, vj in zip(Si, v))
                   for ui, Si in zip(u, S))

    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    us, vs = [], []
    pool = list(basis)
    while pool:
        u = pool.pop(0)
        partner = next((w for w in pool if form(u, w) != 0), None)
        if partner is None:
            return None
        pool.remove(partner)
        s = form(u, partner)
        v = [x / s for x in partner]
        # strip symplectic components: w' = w + form(v,w) u - form(u,w) v
        new_pool = []
        for w in pool:
            a, b = form(u, w), form(v, w)
            w2 = [wi + b * ui - a * vi for wi, ui, vi in zip(w, u, v)]
            if any(x != 0 for x in w2):
                new_pool.append(w2)
        pool = new_pool
        us.append(u)
        vs.append(v)
    cols = us + vs
    return [[cols[j][i] for j in range(n)] for i in range(n)]  # columns -> matrix


def check_symplectic_isomorphic(a: GradedNilpotent, b: GradedNilpotent):
    """Graded isomorphism witness for center-dimension-1 algebras.

    Returns (True, M) with exact M such that M^T S_b M = S_a (so
    (v, z) |-> (M^{-1} v, z) carries a to b), or (False, None).
    """
    Sa, Sb = _skew_form(a), _skew_form(b)
    if a.dim_v != b.dim_v:
        return False, None
    Pa, Pb = _darboux(Sa), _darboux(Sb)
    if Pa is None or Pb is None:
        return False, None
    # S_a = Pa^{-T} Omega Pa^{-1}; same for b. M = Pb Pa^{-1} gives
    # M^T S_b M = S_a.
    Pa_inv = _invert(Pa)
    M = _matmul(Pb, Pa_inv)
    # exact transport check
    n = a.dim_v
    Mt = [[M[j][i] for j in range(n)] for i in range(n)]
    transported = _matmul(Mt, _matmul(Sb, M))
    for i in range(n):
        for j in range(n):
            if transported[i][j] != Sa[i][j]:
                raise StructureError("witness transport failed")  # pragma: no cover
    return True, tuple(tuple(row) for row in M)


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for c in range(n):
        pr = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[pr] = aug[pr], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def dims(alg: GradedNilpotent) -> tuple[int, int, int]:
    return alg.dim_v, alg.dim_z, alg.dim_v + alg.dim_z

"""Cayley transform, sphere distributions, and the J^2 extension experiments.

Float-valued companion to the exact constructors.  Maps the Siegel-domain
model U = {t > |X|^2/4} onto the unit ball, pushes the contact planes of
the boundary forward to the sphere, and decides whether those sphere
planes extend across the puncture left by the point at infinity.

Witness convention: a J^2 violation is recorded as a triple (X, Z, W)
with X a unit horizontal vector and Z, W orthonormal central vectors,
such that J_Z J_W X is (numerically) orthogonal to J_z X + R X.  The
achieved norm of [X, J_Z J_W X - proj] is stored on the witness.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.optimize

from .errors import (
    ConvergenceError,
    CrossValidationError,
    DomainError,
    StructureError,
)
from .nilpotent import GradedNilpotent, is_type_h

__all__ = [
    "SiegelPoint",
    "BallPoint",
    "TangentPlane",
    "J2Witness",
    "J2Result",
    "ViolationSearch",
    "PlaneConvergenceRow",
    "LimitingPlaneReport",
    "ExtensionVerdict",
    "siegel_point",
    "cayley",
    "cayley_inverse",
    "boundary_cayley",
    "boundary_distribution",
    "sphere_distribution",
    "directional_derivative",
    "j2_test",
    "find_j2_violation",
    "limiting_plane_experiment",
    "extension_verdict",
    "puncture_point",
    "group_product",
    "translation_invariance_check",
    "grassmann_distance",
    "random_boundary_pair",
    "boundary_identity_error",
    "round_trip_error",
]

# Tolerance ladder: exact identities / round trips / plane comparisons.
IDENTITY_TOL = 1e-12
ROUND_TRIP_TOL = 1e-8
PLANE_TOL = 1e-6
NEWTON_TOL = 1e-10
BALL_MARGIN = 1e-9
FD_STEP = 1e-4  # Richardson pair uses FD_STEP and FD_STEP / 2


class _FloatModel:
    """Float structure constants and J-matrices for one type-H algebra."""

    def __init__(self, alg: GradedNilpotent):
        cert = is_type_h(alg)
        if not cert.holds or cert.degenerate:
            raise StructureError(
                f"{alg.name}: boundary maps are defined for type-H algebras only"
            )
        self.alg = alg
        self.n = alg.dim_v
        self.m = alg.dim_z
        self.c = np.array(
            [[[float(x) for x in cij] for cij in ci] for ci in alg.structure]
        )
        # (J_Z)_{ab} = sum_k Z_k c[b][a][k]
        self.jmats = np.ascontiguousarray(np.transpose(self.c, (2, 1, 0)))

    def jz(self, Z: np.ndarray) -> np.ndarray:
        return np.tensordot(Z, self.jmats, axes=(0, 0))

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("ijk,i,j->k", self.c, x, y)


_MODELS: dict[int, _FloatModel] = {}


def _model(alg: GradedNilpotent) -> _FloatModel:
    got = _MODELS.get(id(alg))
    if got is None or got.alg is not alg:
        got = _FloatModel(alg)
        _MODELS[id(alg)] = got
    return got


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """Point (X, Z, t) of the closed domain t >= |X|^2 / 4."""

    X: np.ndarray
    Z: np.ndarray
    t: float

    @property
    def height_excess(self) -> float:
        return self.t - 0.25 * float(self.X @ self.X)

    @property
    def is_interior(self) -> bool:
        return self.height_excess > 0

    def ambient(self) -> np.ndarray:
        return np.concatenate([self.X, self.Z, [self.t]])


@dataclass(frozen=True, eq=False)
class BallPoint:
    vector: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))


@dataclass(frozen=True, eq=False)
class TangentPlane:
    """Orthonormal basis (rows) of a plane at a base point."""

    base: np.ndarray
    basis: np.ndarray

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]


def siegel_point(alg: GradedNilpotent, X, Z, t: float | None = None) -> SiegelPoint:
    """Validated point; t = |X|^2 / 4 (boundary) when omitted."""
    mod = _model(alg)
    Xa = np.asarray(X, dtype=float)
    Za = np.asarray(Z, dtype=float)
    if Xa.shape != (mod.n,) or Za.shape != (mod.m,):
        raise StructureError(
            f"point dimensions {Xa.shape}/{Za.shape} do not match "
            f"({mod.n},)/({mod.m},)"
        )
    if t is None:
        t = 0.25 * float(Xa @ Xa)
    return SiegelPoint(Xa, Za, float(t))


def _cayley_arrays(mod: _FloatModel, X, Z, t) -> np.ndarray:
    zz = float(Z @ Z)
    D = (1.0 + t) ** 2 + zz
    head = (1.0 + t) * X - mod.jz(Z) @ X
    return np.concatenate([head, 2.0 * Z, [t * t + zz - 1.0]]) / D


def cayley(alg: GradedNilpotent, p: SiegelPoint, tol: float = 1e-9) -> BallPoint:
    """Ball model of p; requires p in the closure of the domain."""
    mod = _model(alg)
    if p.height_excess < -tol * max(1.0, float(p.X @ p.X)):
        raise DomainError(
            f"point with height excess {p.height_excess:.3e} lies outside "
            "the closed Siegel domain"
        )
    return BallPoint(_cayley_arrays(mod, p.X, p.Z, p.t))


def boundary_cayley(alg: GradedNilpotent, X, Z) -> np.ndarray:
    """Ball coordinates of the boundary point over (X, Z)."""
    mod = _model(alg)
    Xa = np.asarray(X, dtype=float)
    Za = np.asarray(Z, dtype=float)
    return _cayley_arrays(mod, Xa, Za, 0.25 * float(Xa @ Xa))


def _dcayley(mod: _FloatModel, X, Z, t, Y, W, s) -> np.ndarray:
    """Directional derivative of the Cayley map at (X,Z,t) along (Y,W,s)."""
    zz = float(Z @ Z)
    zw = float(Z @ W)
    D = (1.0 + t) ** 2 + zz
    N = np.concatenate([(1.0 + t) * X - mod.jz(Z) @ X, 2.0 * Z, [t * t + zz - 1.0]])
    dD = 2.0 * (1.0 + t) * s + 2.0 * zw
    dN = np.concatenate(
        [s * X + (1.0 + t) * Y - mod.jz(W) @ X - mod.jz(Z) @ Y,
         2.0 * W,
         [2.0 * t * s + 2.0 * zw]]
    )
    return (dN - (dD / D) * N) / D


def directional_derivative(alg: GradedNilpotent, p: SiegelPoint, Y, W, s) -> np.ndarray:
    """Closed-form d(cayley) at p applied to the tangent vector (Y, W, s)."""
    mod = _model(alg)
    return _dcayley(mod, p.X, p.Z, p.t,
                    np.asarray(Y, dtype=float), np.asarray(W, dtype=float), float(s))


def _dcayley_boundary(mod: _FloatModel, X, Z, Y, W) -> np.ndarray:
    # The boundary is the graph t = |X|^2/4, so dt = <X, Y>/2.
    return _dcayley(mod, X, Z, 0.25 * float(X @ X), Y, W, 0.5 * float(X @ Y))


def _fd_boundary_jacobian(mod: _FloatModel, X, Z, step: float = FD_STEP) -> np.ndarray:
    """Jacobian of (X,Z) -> boundary Cayley point, central FD with Richardson."""
    q0 = np.concatenate([X, Z])
    n = mod.n

    def f(q):
        return _cayley_arrays(mod, q[:n], q[n:], 0.25 * float(q[:n] @ q[:n]))

    cols = []
    for i in range(q0.size):
        e = np.zeros_like(q0)
        e[i] = 1.0

        def central(h):
            return (f(q0 + h * e) - f(q0 - h * e)) / (2.0 * h)

        a1 = central(step)
        a2 = central(step / 2.0)
        cols.append((4.0 * a2 - a1) / 3.0)
    return np.column_stack(cols)


def _orthonormal_rows(rows: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    u, s, vh = np.linalg.svd(np.atleast_2d(rows), full_matrices=False)
    keep = s > tol * max(1.0, s[0] if s.size else 0.0)
    basis = vh[keep]
    gram = basis @ basis.T
    if np.max(np.abs(gram - np.eye(basis.shape[0]))) > 1e-10:
        raise CrossValidationError("orthonormalization",
                                   float(np.max(np.abs(gram - np.eye(basis.shape[0])))),
                                   1e-10)
    return basis


def grassmann_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Chordal distance between the row spans of a and b."""
    angles = scipy.linalg.subspace_angles(np.atleast_2d(a).T, np.atleast_2d(b).T)
    return float(np.linalg.norm(np.sin(angles)))


def cayley_inverse(alg: GradedNilpotent, b, tol: float = NEWTON_TOL,
                   max_iter: int = 50) -> SiegelPoint:
    """Inverse Cayley map for interior ball points (norm < 1 - 1e-9).

    Deterministic closed-form seed polished by Newton iteration; raises
    ConvergenceError if the residual target is not met within max_iter.
    """
    mod = _model(alg)
    vec = b.vector if isinstance(b, BallPoint) else np.asarray(b, dtype=float)
    n, m = mod.n, mod.m
    if vec.shape != (n + m + 1,):
        raise StructureError(f"ball point has shape {vec.shape}, expected ({n + m + 1},)")
    if float(np.linalg.norm(vec)) >= 1.0 - BALL_MARGIN:
        raise DomainError("ball point is not strictly inside the unit sphere")

    V, W, s = vec[:n], vec[n:n + m], float(vec[-1])
    # Solving the three scalar relations of the ball map for (t, Z) gives
    # this seed in closed form; for exact type-H data it is already exact.
    D = 4.0 / ((1.0 - s) ** 2 + float(W @ W))
    t = D * (1.0 - s) / 2.0 - 1.0
    Z = D * W / 2.0
    denom = (1.0 + t) ** 2 + float(Z @ Z)
    X = ((1.0 + t) * (D * V) + mod.jz(Z) @ (D * V)) / denom

    p = np.concatenate([X, Z, [t]])
    resid = _cayley_arrays(mod, p[:n], p[n:n + m], p[-1]) - vec
    it = 0
    while float(np.linalg.norm(resid)) > tol and it < max_iter:
        cols = []
        for i in range(n + m + 1):
            Y = np.zeros(n)
            Wd = np.zeros(m)
            sd = 0.0
            if i < n:
                Y[i] = 1.0
            elif i < n + m:
                Wd[i - n] = 1.0
            else:
                sd = 1.0
            cols.append(_dcayley(mod, p[:n], p[n:n + m], p[-1], Y, Wd, sd))
        jac = np.column_stack(cols)
        p = p + np.linalg.solve(jac, -resid)
        resid = _cayley_arrays(mod, p[:n], p[n:n + m], p[-1]) - vec
        it += 1
    rnorm = float(np.linalg.norm(resid))
    if rnorm > tol:
        raise ConvergenceError(rnorm, tol, it)
    return SiegelPoint(p[:n], p[n:n + m], float(p[-1]))


def boundary_distribution(alg: GradedNilpotent, X, Z) -> TangentPlane:
    """Contact plane {(Y, [X,Y]/2, <X,Y>/2)} at a boundary point, orthonormal."""
    mod = _model(alg)
    Xa = np.asarray(X, dtype=float)
    Za = np.asarray(Z, dtype=float)
    rows = np.zeros((mod.n, mod.n + mod.m + 1))
    for i in range(mod.n):
        e = np.zeros(mod.n)
        e[i] = 1.0
        rows[i, :mod.n] = e
        rows[i, mod.n:mod.n + mod.m] = 0.5 * mod.bracket(Xa, e)
        rows[i, -1] = 0.5 * Xa[i]
    basis = _orthonormal_rows(rows)
    # Membership in T(boundary) = {(2Y, W, <X,Y>)}: last = <X, head>/2.
    scale = max(1.0, float(Xa @ Xa))
    for u in basis:
        err = abs(u[-1] - 0.5 * float(Xa @ u[:mod.n]))
        if err > IDENTITY_TOL * scale:
            raise CrossValidationError("boundary tangency", err, IDENTITY_TOL * scale)
    base = np.concatenate([Xa, Za, [0.25 * float(Xa @ Xa)]])
    return TangentPlane(base, basis)


def sphere_distribution(alg: GradedNilpotent, X, Z,
                        validate_fraction: float = 0.05) -> TangentPlane:
    """Contact plane pushed to the sphere through the finite-difference
    Jacobian of the boundary Cayley map, spot-checked against the
    closed-form directional derivative."""
    mod = _model(alg)
    Xa = np.asarray(X, dtype=float)
    Za = np.asarray(Z, dtype=float)
    jac = _fd_boundary_jacobian(mod, Xa, Za)
    dirs = []
    for i in range(mod.n):
        e = np.zeros(mod.n)
        e[i] = 1.0
        dirs.append(np.concatenate([e, 0.5 * mod.bracket(Xa, e)]))
    pushed = np.vstack([jac @ d for d in dirs])

    # Deterministic spot check of ~5% of the pushed directions.
    count = max(1, round(validate_fraction * mod.n))
    digest = hashlib.sha256(Xa.tobytes() + Za.tobytes()).digest()
    picks = sorted({digest[j] % mod.n for j in range(count)})
    for i in picks:
        closed = _dcayley_boundary(mod, Xa, Za, dirs[i][:mod.n], dirs[i][mod.n:])
        err = float(np.linalg.norm(pushed[i] - closed))
        rel = err / max(1.0, float(np.linalg.norm(closed)))
        if rel > PLANE_TOL:
            raise CrossValidationError("sphere Jacobian spot check", rel, PLANE_TOL)

    basis = _orthonormal_rows(pushed)
    base = _cayley_arrays(mod, Xa, Za, 0.25 * float(Xa @ Xa))
    for u in basis:
        tangency = abs(float(u @ base))
        if tangency > ROUND_TRIP_TOL:
            raise CrossValidationError("sphere tangency", tangency, ROUND_TRIP_TOL)
    return TangentPlane(base, basis)


# ---------------------------------------------------------------------------
# J^2 condition


@dataclass(frozen=True, eq=False)
class J2Witness:
    X: np.ndarray
    Z: np.ndarray
    W: np.ndarray
    residual: float
    perp: np.ndarray
    bracket_norm: float

    def to_dict(self) -> dict:
        return {
            "X": self.X.tolist(),
            "Z": self.Z.tolist(),
            "W": self.W.tolist(),
            "residual": self.residual,
            "bracket_norm": self.bracket_norm,
        }


@dataclass(frozen=True, eq=False)
class J2Result:
    algebra: str
    holds: bool
    vacuous: bool
    max_residual: float
    samples: int
    tol: float
    seed: int | None
    witness: J2Witness | None

    def to_report(self) -> dict:
        return {
            "algebra": self.algebra,
            "operation": "j2_test",
            "samples": self.samples,
            "tolerances": {"residual": self.tol},
            "verdict": "holds" if self.holds else "fails",
            "witnesses": [self.witness.to_dict()] if self.witness else [],
            "convergence_table": [],
            "seed": self.seed,
        }


def _candidate_vectors(n: int) -> list[np.ndarray]:
    eye = np.eye(n)
    out = [eye[i] for i in range(n)]
    r = 1.0 / math.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            out.append(r * (eye[i] + eye[j]))
            out.append(r * (eye[i] - eye[j]))
    return out


def _span_projector(mod: _FloatModel, X: np.ndarray, include_x: bool) -> np.ndarray:
    cols = [mod.jmats[k] @ X for k in range(mod.m)]
    if include_x:
        cols.append(X)
    q, _ = np.linalg.qr(np.column_stack(cols))
    return q


def j2_test(alg: GradedNilpotent, sample_count: int = 200, tol: float = 1e-8,
            seed: int | None = None) -> J2Result:
    """Does J_Z J_W X stay inside span{J_Z' X} for all orthonormal Z ⊥ W?

    Vacuous (holds) when dim z <= 1.  Checks all ordered central basis
    pairs on a structured sweep of X plus sample_count random draws; by
    bilinearity in (Z, W) the basis pairs decide each X exactly.
    """
    mod = _model(alg)
    if mod.m <= 1:
        return J2Result(alg.name, True, True, 0.0, 0, tol, seed, None)
    if sample_count > 0 and seed is None:
        raise ValueError("seed is required when sample_count > 0")

    xs = _candidate_vectors(mod.n)
    rng = np.random.default_rng(seed)
    for _ in range(sample_count):
        v = rng.standard_normal(mod.n)
        xs.append(v / np.linalg.norm(v))

    eye_m = np.eye(mod.m)
    worst = 0.0
    witness = None
    for X in xs:
        q = _span_projector(mod, X, include_x=False)
        nx = float(np.linalg.norm(X))
        for k in range(mod.m):
            jk = mod.jmats[k]
            for l in range(mod.m):
                if k == l:
                    continue
                u = jk @ (mod.jmats[l] @ X)
                perp = u - q @ (q.T @ u)
                res = float(np.linalg.norm(perp)) / nx
                if res > worst:
                    worst = res
                    if res > tol:
                        witness = J2Witness(
                            X.copy(), eye_m[k].copy(), eye_m[l].copy(), res,
                            perp, float(np.linalg.norm(mod.bracket(X, perp))))
    return J2Result(alg.name, worst <= tol, False, worst,
                    len(xs), tol, seed, witness)


@dataclass(frozen=True, eq=False)
class ViolationSearch:
    algebra: str
    witness: J2Witness | None
    best_score: float
    evaluations: int
    restarts_used: int
    seed: int
    tol: float

    def to_report(self) -> dict:
        return {
            "algebra": self.algebra,
            "operation": "find_j2_violation",
            "samples": self.evaluations,
            "tolerances": {"projection": self.tol},
            "verdict": "witness_found" if self.witness else "no_witness_found",
            "witnesses": [self.witness.to_dict()] if self.witness else [],
            "convergence_table": [],
            "seed": self.seed,
        }


def _violation_score(mod: _FloatModel, X, Z, W) -> tuple[float, np.ndarray]:
    """Norm of the projection of J_Z J_W X onto span{J_z X} + R X, and the
    complementary component (the violation direction)."""
    q = _span_projector(mod, X, include_x=True)
    u = mod.jz(Z) @ (mod.jz(W) @ X)
    proj = q @ (q.T @ u)
    return float(np.linalg.norm(proj)) / float(np.linalg.norm(X)), u - proj


def _make_violation_witness(mod: _FloatModel, alg_name, X, Z, W, score, perp):
    return J2Witness(X / np.linalg.norm(X), Z / np.linalg.norm(Z),
                     W / np.linalg.norm(W), score, perp,
                     float(np.linalg.norm(mod.bracket(X, perp))))


def find_j2_violation(alg: GradedNilpotent, seed: int, tol: float = 1e-8,
                      restarts: int = 8, sweep: bool = True) -> ViolationSearch:
    """Search for a unitary triple (X, Z, W) with J_Z J_W X orthogonal to
    span{J_z X} + R X: structured sweep first, then seeded local
    minimization of the projection norm."""
    mod = _model(alg)
    if mod.m <= 1:
        return ViolationSearch(alg.name, None, math.inf, 0, 0, seed, tol)

    evals = 0
    best = (math.inf, None)
    eye_m = np.eye(mod.m)
    if sweep:
        for X in _candidate_vectors(mod.n):
            for k in range(mod.m):
                for l in range(k + 1, mod.m):
                    score, perp = _violation_score(mod, X, eye_m[k], eye_m[l])
                    evals += 1
                    if score < best[0]:
                        best = (score, (X, eye_m[k], eye_m[l], perp))
    if best[0] <= tol:
        X, Z, W, perp = best[1]
        witness = _make_violation_witness(mod, alg.name, X, Z, W, best[0], perp)
        return ViolationSearch(alg.name, witness, best[0], evals, 0, seed, tol)

    # Local minimization over (X, Z, W) with Gram-Schmidt inside the
    # objective so the iterate is always a unitary triple.
    n, m = mod.n, mod.m

    def unpack(theta):
        x = theta[:n]
        z = theta[n:n + m]
        w = theta[n + m:]
        nx, nz = np.linalg.norm(x), np.linalg.norm(z)
        if nx < 1e-8 or nz < 1e-8:
            return None
        x = x / nx
        z = z / nz
        w = w - (w @ z) * z
        nw = np.linalg.norm(w)
        if nw < 1e-8:
            return None
        return x, z, w / nw

    def objective(theta):
        triple = unpack(theta)
        if triple is None:
            return 1e6
        score, _ = _violation_score(mod, *triple)
        return score * score

    rng = np.random.default_rng(seed)
    used = 0
    for _ in range(restarts):
        used += 1
        theta0 = rng.standard_normal(n + 2 * m)
        res = scipy.optimize.minimize(objective, theta0, method="BFGS",
                                      options={"maxiter": 200})
        evals += int(res.nfev)
        triple = unpack(res.x)
        if triple is None:
            continue
        score, perp = _violation_score(mod, *triple)
        if score < best[0]:
            best = (score, (*triple, perp))
        if score <= tol:
            break
    if best[0] <= tol and best[1] is not None:
        X, Z, W, perp = best[1]
        witness = _make_violation_witness(mod, alg.name, X, Z, W, best[0], perp)
        return ViolationSearch(alg.name, witness, best[0], evals, used, seed, tol)
    return ViolationSearch(alg.name, None, best[0], evals, used, seed, tol)


# ---------------------------------------------------------------------------
# Limiting planes at the puncture


@dataclass(frozen=True, eq=False)
class PlaneConvergenceRow:
    radius: float
    part_i: float
    part_ii: float
    part_iii: float

    @property
    def grassmann_distance(self) -> float:
        return max(self.part_i, self.part_ii, self.part_iii)

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "grassmann_distance": self.grassmann_distance,
            "part_i": self.part_i,
            "part_ii": self.part_ii,
            "part_iii": self.part_iii,
        }


@dataclass(frozen=True, eq=False)
class LimitingPlaneReport:
    algebra: str
    witness: J2Witness
    rows: tuple[PlaneConvergenceRow, ...]
    limit_v_plane: np.ndarray
    limit_v_plane_2: np.ndarray
    limit_z_line: np.ndarray
    orthogonality: float
    verdict: str
    seed: int | None

    def to_report(self) -> dict:
        return {
            "algebra": self.algebra,
            "operation": "limiting_plane_experiment",
            "samples": len(self.rows),
            "tolerances": {"plane": PLANE_TOL, "final_distance": 1e-3},
            "verdict": self.verdict,
            "witnesses": [self.witness.to_dict()],
            "convergence_table": [r.to_dict() for r in self.rows],
            "seed": self.seed,
        }


def limiting_plane_experiment(alg: GradedNilpotent, witness: J2Witness,
                              radii=(10.0, 100.0, 1000.0, 10000.0),
                              seed: int | None = None) -> LimitingPlaneReport:
    """Track three families of pushed contact planes near the puncture.

    The witness spans two copies of the 3-dimensional Heisenberg algebra
    through the same center direction: span{X, J_Z X, Z} and
    span{J_W X, J_Z J_W X, Z}.  Each copy traces a curve with
    1 + |Z|^2 = |X|^4 / 16 into the puncture; the contact planes pushed
    along them converge to two orthogonal v-direction planes, while the
    horizontal field of part (iii) degenerates to the central line
    (0, RW, 0).  Distinct limits along distinct approaches are the
    obstruction to extending the sphere distribution.
    """
    mod = _model(alg)
    x = np.asarray(witness.X, dtype=float)
    z = np.asarray(witness.Z, dtype=float)
    w = np.asarray(witness.W, dtype=float)
    x = x / np.linalg.norm(x)
    z = z / np.linalg.norm(z)
    w = w - (w @ z) * z
    if np.linalg.norm(w) < 1e-8:
        raise StructureError("witness W is parallel to Z")
    w = w / np.linalg.norm(w)
    score, _ = _violation_score(mod, x, z, w)
    if score > PLANE_TOL:
        raise StructureError(
            f"witness does not violate the J^2 condition: projection "
            f"residual {score:.3e} > {PLANE_TOL:.1e}"
        )

    n, m = mod.n, mod.m
    jz_hat = mod.jz(z)
    jw_hat = mod.jz(w)
    a1, a2 = x, jz_hat @ x
    b1 = jw_hat @ x
    b2 = jz_hat @ b1

    def embed_v(v):
        return np.concatenate([v, np.zeros(m + 1)])

    limit1 = _orthonormal_rows(np.vstack([embed_v(a1), embed_v(a2)]))
    limit2 = _orthonormal_rows(np.vstack([embed_v(b1), embed_v(b2)]))
    limit3 = _orthonormal_rows(
        np.concatenate([np.zeros(n), w, [0.0]])[None, :])
    orth = 0.0
    for pa, pb in ((limit1, limit2), (limit1, limit3), (limit2, limit3)):
        orth = max(orth, float(np.max(np.abs(pa @ pb.T))))

    def push_at(Xp, Zp, t, Y):
        Wz = 0.5 * mod.bracket(Xp, Y)
        s = 0.5 * float(Xp @ Y)
        return _dcayley(mod, Xp, Zp, t, Y, Wz, s)

    rows = []
    for r in radii:
        if r <= 2.0:
            raise ValueError("radii must exceed 2 so the curve is real")
        zr = math.sqrt(r ** 4 / 16.0 - 1.0)
        Zp = zr * z
        t = r * r / 4.0

        Xp1 = r * x
        p1 = _orthonormal_rows(np.vstack([push_at(Xp1, Zp, t, a1),
                                          push_at(Xp1, Zp, t, a2)]))
        d1 = grassmann_distance(p1, limit1)

        # Second copy: the same curve construction along J_W X.
        Xp2 = r * b1
        p2 = _orthonormal_rows(np.vstack([push_at(Xp2, Zp, t, b1),
                                          push_at(Xp2, Zp, t, b2)]))
        d2 = grassmann_distance(p2, limit2)

        # Horizontal field whose v-component cancels on the first curve
        # (needs [X, J_Z J_W X] = 0, i.e. the witness): its pushforward
        # points along (0, RW, 0) exactly.
        yw = (1.0 + t) * (jw_hat @ Xp1) + mod.jz(Zp) @ (jw_hat @ Xp1)
        v3 = push_at(Xp1, Zp, t, yw)
        v3 = v3 / np.linalg.norm(v3)
        d3 = float(np.linalg.norm(v3 - limit3.T @ (limit3 @ v3)))
        rows.append(PlaneConvergenceRow(float(r), d1, d2, d3))

    final = rows[-1]
    ok = (final.grassmann_distance <= 1e-3) and orth <= PLANE_TOL
    verdict = "planes_collapse_to_orthogonal_limits" if ok else "inconclusive"
    return LimitingPlaneReport(alg.name, witness, tuple(rows),
                               limit1, limit2, limit3, orth, verdict, seed)


@dataclass(frozen=True, eq=False)
class ExtensionVerdict:
    algebra: str
    verdict: str  # "extends" | "does_not_extend"
    j2: J2Result
    search: ViolationSearch | None
    experiment: LimitingPlaneReport | None

    def to_report(self) -> dict:
        rep = {
            "algebra": self.algebra,
            "operation": "extension_verdict",
            "samples": self.j2.samples,
            "tolerances": {"residual": self.j2.tol},
            "verdict": self.verdict,
            "witnesses": ([self.j2.witness.to_dict()] if self.j2.witness else []),
            "convergence_table": ([r.to_dict() for r in self.experiment.rows]
                                  if self.experiment else []),
            "seed": self.j2.seed,
        }
        return rep


def extension_verdict(alg: GradedNilpotent, sample_count: int = 200,
                      tol: float = 1e-8, seed: int = 0,
                      radii=(10.0, 100.0, 1000.0, 10000.0)) -> ExtensionVerdict:
    """Sphere planes extend across the puncture iff the J^2 condition
    holds; the negative verdict ships a violation witness plus the
    limiting-plane experiment as evidence."""
    j2 = j2_test(alg, sample_count=sample_count, tol=tol, seed=seed)
    if j2.holds:
        return ExtensionVerdict(alg.name, "extends", j2, None, None)
    search = find_j2_violation(alg, seed=seed, tol=tol)
    experiment = None
    if search.witness is not None:
        experiment = limiting_plane_experiment(alg, search.witness, radii, seed=seed)
    return ExtensionVerdict(alg.name, "does_not_extend", j2, search, experiment)


def puncture_point(alg: GradedNilpotent, seed: int = 0, directions: int = 6,
                   radius: float = 1e9, tol: float = 1e-8) -> np.ndarray:
    """Common limit of the boundary Cayley map as |X| grows, checked to be
    direction-independent; this is the puncture of the sphere model."""
    mod = _model(alg)
    rng = np.random.default_rng(seed)
    xs = [np.eye(mod.n)[0]]
    for _ in range(max(1, directions - 1)):
        v = rng.standard_normal(mod.n)
        xs.append(v / np.linalg.norm(v))
    zs = [np.zeros(mod.m)]
    if mod.m:
        zs.append(0.5 * np.eye(mod.m)[0])
    pts = [boundary_cayley(alg, radius * x, z) for x in xs for z in zs]
    spread = max(
        float(np.linalg.norm(p - q)) for i, p in enumerate(pts) for q in pts[i + 1:]
    )
    if spread > tol:
        raise CrossValidationError("puncture limit spread", spread, tol)
    return np.mean(pts, axis=0)


def group_product(alg: GradedNilpotent, g1, g2):
    """Group law on the boundary (2-step BCH, exact): (X, Z) pairs."""
    mod = _model(alg)
    X1, Z1 = (np.asarray(a, dtype=float) for a in g1)
    X2, Z2 = (np.asarray(a, dtype=float) for a in g2)
    return X1 + X2, Z1 + Z2 + 0.5 * mod.bracket(X1, X2)


def translation_invariance_check(alg: GradedNilpotent, X, Z,
                                 tol: float = PLANE_TOL) -> float:
    """Sphere plane computed in place vs the base-point plane transported
    by the group translation (X, Z) = g . (0, 0); returns the Grassmann
    distance and raises if it exceeds tol."""
    mod = _model(alg)
    Xa = np.asarray(X, dtype=float)
    Za = np.asarray(Z, dtype=float)
    in_place = sphere_distribution(alg, Xa, Za)

    # d(C o L_g) at the identity applied to the flat base plane (Y, 0):
    # the translated curve is s -> (X + sY, Z + s[X,Y]/2) by the group law.
    rows = []
    for i in range(mod.n):
        Y = np.zeros(mod.n)
        Y[i] = 1.0
        Wd = 0.5 * mod.bracket(Xa, Y)

        def curve(s):
            return _cayley_arrays(mod, Xa + s * Y, Za + s * Wd,
                                  0.25 * float((Xa + s * Y) @ (Xa + s * Y)))

        h = FD_STEP
        a1 = (curve(h) - curve(-h)) / (2.0 * h)
        a2 = (curve(h / 2) - curve(-h / 2)) / h
        rows.append((4.0 * a2 - a1) / 3.0)
    transported = _orthonormal_rows(np.vstack(rows))
    dist = grassmann_distance(in_place.basis, transported)
    if dist > tol:
        raise CrossValidationError("translation invariance", dist, tol)
    return dist


# ---------------------------------------------------------------------------
# Sampled invariants


def random_boundary_pair(mod_or_alg, rng: np.random.Generator):
    mod = mod_or_alg if isinstance(mod_or_alg, _FloatModel) else _model(mod_or_alg)
    return rng.standard_normal(mod.n), rng.standard_normal(mod.m)


def boundary_identity_error(alg: GradedNilpotent, samples: int = 10_000,
                            seed: int = 0) -> float:
    """max | |C(p)|^2 - 1 | over random boundary points (vectorized)."""
    mod = _model(alg)
    rng = np.random.default_rng(seed)
    Xs = rng.standard_normal((samples, mod.n))
    Zs = rng.standard_normal((samples, mod.m))
    ts = 0.25 * np.einsum("ij,ij->i", Xs, Xs)
    JZX = np.einsum("kab,ik,ib->ia", mod.jmats, Zs, Xs)
    zz = np.einsum("ij,ij->i", Zs, Zs)
    D = (1.0 + ts) ** 2 + zz
    head = (1.0 + ts)[:, None] * Xs - JZX
    norm_sq = (np.einsum("ij,ij->i", head, head) + 4.0 * zz
               + (ts * ts + zz - 1.0) ** 2) / D ** 2
    return float(np.max(np.abs(norm_sq - 1.0)))


def round_trip_error(alg: GradedNilpotent, samples: int = 1000,
                     seed: int = 0) -> float:
    """max |p - cayley_inverse(cayley(p))| over random interior points."""
    mod = _model(alg)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        X = rng.standard_normal(mod.n)
        Z = rng.standard_normal(mod.m)
        t = 0.25 * float(X @ X) + float(rng.uniform(0.05, 2.0))
        p = SiegelPoint(X, Z, t)
        q = cayley_inverse(alg, cayley(alg, p))
        worst = max(worst, float(np.linalg.norm(p.ambient() - q.ambient())))
    return worst

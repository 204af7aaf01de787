"""Catalog of simple Lie algebras whose parabolics have the type-H nilradicals.

The dataset (data/parabolic_table.json, checksummed) holds one row per
simple-algebra family: the Levi factors m, dim a, the nilradical series
and parameters, and the crossed-root set Sigma grouped into involution
orbits so that the orbit count equals dim a in every row. Verification
instantiates rows over a parameter grid and checks the Langlands
dimension identity dim g = dim m + dim a + 2 dim n exactly.

The tower recursion follows m' (the factors staying in the class S of
simple non-compact algebras other than so(1,n)) downward, stacking
nilradical dimensions into a maximal nilpotent subalgebra.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Iterator

from .division import DivisionAlgebra
from .errors import DatasetError, StructureError

__all__ = [
    "SimpleAlgebraDescriptor",
    "TableRow",
    "InstantiatedRow",
    "RowReport",
    "VerificationSummary",
    "TowerStep",
    "TowerReport",
    "load_table",
    "table_rows",
    "compute_checksum",
    "instantiate",
    "verify_row",
    "default_grid",
    "verify_all",
    "tower",
    "langlands_annotations",
]

_EXCEPTIONAL_DIMS = {
    "EI": 78, "EII": 78, "EIII": 78, "EIV": 78, "E6": 156,
    "EV": 133, "EVI": 133, "EVII": 133, "E7": 266,
    "EVIII": 248, "EIX": 248, "E8": 496,
    "FI": 52, "FII": 52, "F4": 104, "G": 14, "G2": 28,
}

# type letter for the same-classical-type property of the tower
_TYPE_LETTER = {
    "sl_R": "sl", "sl_C": "sl", "su_star": "su", "su": "su",
    "sp_R": "sp", "sp": "sp", "sp_C": "sp",
    "so": "so", "so_star": "so", "so_C": "so",
}


@dataclass(frozen=True)
class SimpleAlgebraDescriptor:
    """A simple (or small degenerate) real Lie algebra, by family and params."""

    family: str
    params: tuple[int, ...] = ()

    @property
    def dimension(self) -> int:
        f, p = self.family, self.params
        if f == "sl_R":
            return p[0] ** 2 - 1
        if f == "sl_C":
            return 2 * (p[0] ** 2 - 1)
        if f == "su_star":  # su*(2n), n = p[0]
            return 4 * p[0] ** 2 - 1
        if f == "su":
            return (p[0] + p[1]) ** 2 - 1
        if f == "sp_R":
            return p[0] * (2 * p[0] + 1)
        if f == "sp":
            s = p[0] + p[1]
            return s * (2 * s + 1)
        if f == "sp_C":
            return 2 * p[0] * (2 * p[0] + 1)
        if f == "so":
            s = p[0] + p[1]
            return s * (s - 1) // 2
        if f == "so_star":  # so*(2n)
            return p[0] * (2 * p[0] - 1)
        if f == "so_C":
            return p[0] * (p[0] - 1)
        if f in _EXCEPTIONAL_DIMS:
            return _EXCEPTIONAL_DIMS[f]
        raise StructureError(f"unknown family {f!r}")

    @property
    def name(self) -> str:
        f, p = self.family, self.params
        if f == "sl_R":
            return f"sl({p[0]},R)"
        if f == "sl_C":
            return f"sl({p[0]},C)"
        if f == "su_star":
            return f"su*({2 * p[0]})"
        if f == "su":
            return f"su({p[0]},{p[1]})"
        if f == "sp_R":
            return f"sp({p[0]},R)"
        if f == "sp":
            return f"sp({p[0]},{p[1]})"
        if f == "sp_C":
            return f"sp({p[0]},C)"
        if f == "so":
            return f"so({p[0]},{p[1]})"
        if f == "so_star":
            return f"so*({2 * p[0]})"
        if f == "so_C":
            return f"so({p[0]},C)"
        return f

    @property
    def is_compact(self) -> bool:
        f, p = self.family, self.params
        if f in ("su", "sp", "so"):
            return p[0] == 0 or p[1] == 0
        if f == "su_star":
            return p[0] <= 1  # su*(2) = su(2)
        return False

    @property
    def in_S(self) -> bool:
        """Simple, non-compact, and not isomorphic to any so(1,n).

        Low-dimensional exclusions: sl(2,R) = su(1,1) = sp(1,R) = so(1,2),
        sl(2,C) = sp(1,C) = so(3,C) = so(1,3), sp(1,1) = so(1,4),
        su*(4) = so(1,5), plus the non-simple so(2,2), so*(4), so(4,C).
        """
        f, p = self.family, self.params
        if f in ("sl_R", "sl_C", "su_star", "so_star"):
            return p[0] >= 3
        if f in ("su", "sp"):
            return p[0] >= 1 and p[1] >= 1 and p[0] + p[1] >= 3
        if f in ("sp_R", "sp_C"):
            return p[0] >= 2
        if f == "so":
            return p[0] >= 2 and p[1] >= 2 and p[0] + p[1] >= 5
        if f == "so_C":
            return p[0] >= 5
        return f in _EXCEPTIONAL_DIMS

    @property
    def type_letter(self) -> str | None:
        return _TYPE_LETTER.get(self.family)


@dataclass(frozen=True)
class TableRow:
    """One parameterized catalog row."""

    name: str
    param_names: tuple[str, ...]
    validity: str
    g_family: str
    g_params: tuple[str, ...]
    m_factors: tuple[tuple[str, tuple[str, ...]], ...]
    m_abelian: int
    dim_a: int
    nil_series: str
    nil_algebra: str
    nil_params: tuple[str, ...]
    sigma: tuple[tuple[str, ...], ...]  # orbits of crossed simple roots
    maximal: bool
    minimal_when: str
    exceptional: bool

    @property
    def complex_structure(self) -> bool:
        return self.nil_series == "hn" and self.nil_algebra == "C"

    @property
    def quaternionic_structure(self) -> bool:
        return self.nil_series == "hn" and self.nil_algebra == "H"


def _eval(expr: str, env: dict[str, int]):
    return eval(expr, {"__builtins__": {}, "min": min, "max": max}, env)


def compute_checksum(rows_json: list) -> str:
    blob = json.dumps(rows_json, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def load_table(verify_checksum: bool = True) -> tuple[str, list]:
    """Raw dataset (version, rows-json); DatasetError on checksum mismatch."""
    text = resources.files("htype.data").joinpath("parabolic_table.json").read_text()
    doc = json.loads(text)
    if verify_checksum:
        actual = compute_checksum(doc["rows"])
        if actual != doc["checksum"]:
            raise DatasetError(
                f"table checksum mismatch: recorded {doc['checksum'][:12]}..., "
                f"computed {actual[:12]}...")
    return doc["version"], doc["rows"]


_cached_rows: tuple[TableRow, ...] | None = None


def table_rows() -> tuple[TableRow, ...]:
    global _cached_rows
    if _cached_rows is None:
        _, raw = load_table()
        _cached_rows = tuple(
            TableRow(
                name=r["name"],
                param_names=tuple(r["param_names"]),
                validity=r["validity"],
                g_family=r["g"]["family"],
                g_params=tuple(r["g"]["params"]),
                m_factors=tuple((f["family"], tuple(f["params"]))
                                for f in r["m_factors"]),
                m_abelian=r["m_abelian"],
                dim_a=r["dim_a"],
                nil_series=r["nilradical"]["series"],
                nil_algebra=r["nilradical"]["algebra"],
                nil_params=tuple(r["nilradical"]["params"]),
                sigma=tuple(tuple(orbit) for orbit in r["sigma"]),
                maximal=r["maximal"],
                minimal_when=r["minimal_when"],
                exceptional=r["exceptional"],
            )
            for r in raw)
    return _cached_rows


def row_by_name(name: str) -> TableRow:
    for r in table_rows():
        if r.name == name:
            return r
    raise StructureError(f"no catalog row named {name!r}")


def nilradical_dims(series: str, algebra_tag: str, params: tuple[int, ...]) -> tuple[int, int]:
    """(dim v, dim z) of h_n(A) or h'_{p,q}(A) without building the tensor."""
    d = DivisionAlgebra.from_tag(algebra_tag).dimension
    if series == "hn":
        return 2 * params[0] * d, d
    if series == "hprime":
        return (params[0] + params[1]) * d, d - 1
    raise StructureError(f"unknown nilradical series {series!r}")


@dataclass(frozen=True)
class InstantiatedRow:
    row: TableRow
    params: tuple[int, ...]
    g: SimpleAlgebraDescriptor
    m_descriptors: tuple[SimpleAlgebraDescriptor, ...]
    m_abelian: int
    dim_m: int
    dim_a: int
    nil_params: tuple[int, ...]
    dim_v: int
    dim_z: int
    dim_n: int
    sigma: tuple[tuple[str, ...], ...]
    maximal: bool
    minimal: bool

    @property
    def name(self) -> str:
        return self.g.name


def instantiate(row: TableRow, params: Iterable[int] = ()) -> InstantiatedRow:
    params = tuple(params)
    if len(params) != len(row.param_names):
        raise ValueError(f"{row.name} expects params {row.param_names}, got {params}")
    env = dict(zip(row.param_names, params))
    if not _eval(row.validity, env):
        raise ValueError(f"params {params} out of range for {row.name} ({row.validity})")
    g = SimpleAlgebraDescriptor(row.g_family,
                                tuple(_eval(e, env) for e in row.g_params))
    m_desc = tuple(SimpleAlgebraDescriptor(f, tuple(_eval(e, env) for e in exprs))
                   for f, exprs in row.m_factors)
    nil_params = tuple(_eval(e, env) for e in row.nil_params)
    dim_v, dim_z = nilradical_dims(row.nil_series, row.nil_algebra, nil_params)
    sigma = tuple(tuple(f"alpha_{_eval(e, env)}" for e in orbit)
                  for orbit in row.sigma)
    return InstantiatedRow(
        row=row,
        params=params,
        g=g,
        m_descriptors=m_desc,
        m_abelian=row.m_abelian,
        dim_m=sum(f.dimension for f in m_desc) + row.m_abelian,
        dim_a=row.dim_a,
        nil_params=nil_params,
        dim_v=dim_v,
        dim_z=dim_z,
        dim_n=dim_v + dim_z,
        sigma=sigma,
        maximal=row.maximal,
        minimal=bool(_eval(row.minimal_when, env)),
    )


@dataclass(frozen=True)
class RowReport:
    name: str
    params: tuple[int, ...]
    dim_g: int
    dim_m: int
    dim_a: int
    dim_n: int
    sigma_orbits: int
    identity_ok: bool
    sigma_ok: bool

    @property
    def passed(self) -> bool:
        return self.identity_ok and self.sigma_ok

    def terms(self) -> str:
        return (f"{self.dim_g} = {self.dim_m} + {self.dim_a} + 2*{self.dim_n}"
                f" [{'ok' if self.identity_ok else 'FAIL'}],"
                f" |sigma| = {self.sigma_orbits} vs dim_a = {self.dim_a}"
                f" [{'ok' if self.sigma_ok else 'FAIL'}]")


def verify_row(row: TableRow, params: Iterable[int] = ()) -> RowReport:
    inst = instantiate(row, params)
    dim_g = inst.g.dimension
    identity_ok = dim_g == inst.dim_m + inst.dim_a + 2 * inst.dim_n
    sigma_ok = len(inst.sigma) == inst.dim_a
    return RowReport(
        name=row.name, params=inst.params,
        dim_g=dim_g, dim_m=inst.dim_m, dim_a=inst.dim_a, dim_n=inst.dim_n,
        sigma_orbits=len(inst.sigma),
        identity_ok=identity_ok, sigma_ok=sigma_ok,
    )


def default_grid(max_dim: int = 500) -> Iterator[tuple[TableRow, tuple[int, ...]]]:
    """Every valid classical parameter choice with dim g <= max_dim."""
    for row in table_rows():
        if row.exceptional:
            continue
        if len(row.param_names) == 1:
            n = 1
            while True:
                n += 1
                env = {row.param_names[0]: n}
                if not _eval(row.validity, env):
                    continue
                g = SimpleAlgebraDescriptor(
                    row.g_family, tuple(_eval(e, env) for e in row.g_params))
                if g.dimension > max_dim:
                    break
                yield row, (n,)
        else:
            # dim g depends only on p + q for the two-parameter families,
            # so termination keys on the size, never on validity gaps
            # (so(p,q) has none below p + q = 5)
            s = 2
            while True:
                s += 1
                probe = {"p": 1, "q": s - 1}
                g = SimpleAlgebraDescriptor(
                    row.g_family, tuple(_eval(e, probe) for e in row.g_params))
                if g.dimension > max_dim:
                    break
                for p in range(1, s):
                    q = s - p
                    if p > q:
                        break
                    env = {"p": p, "q": q}
                    if not _eval(row.validity, env):
                        continue
                    yield row, (p, q)


@dataclass(frozen=True)
class VerificationSummary:
    reports: tuple[RowReport, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def failures(self) -> tuple[RowReport, ...]:
        return tuple(r for r in self.reports if not r.passed)

    def count(self, exceptional: bool | None = None) -> int:
        if exceptional is None:
            return len(self.reports)
        names = {r.name for r in table_rows() if r.exceptional == exceptional}
        return sum(1 for r in self.reports if r.name in names)

    def to_csv(self) -> str:
        lines = ["row,params,dim_g,dim_m,dim_a,dim_n,pass"]
        for r in self.reports:
            ps = ";".join(map(str, r.params))
            lines.append(f"{r.name},{ps},{r.dim_g},{r.dim_m},{r.dim_a},"
                         f"{r.dim_n},{str(r.passed).lower()}")
        return "\n".join(lines) + "\n"


def verify_all(grid: Iterable[tuple[TableRow, tuple[int, ...]]] | None = None,
               max_dim: int = 500) -> VerificationSummary:
    """Exceptional rows always run; classical rows come from the grid
    (default: every valid choice with dim g <= max_dim). An explicitly
    empty grid therefore checks the exceptional rows alone."""
    if grid is None:
        grid = default_grid(max_dim)
    reports = [verify_row(row) for row in table_rows() if row.exceptional]
    reports.extend(verify_row(row, ps) for row, ps in grid)
    return VerificationSummary(tuple(reports))


_CLASSICAL_ROW_BY_FAMILY = None


def _row_for(desc: SimpleAlgebraDescriptor) -> tuple[TableRow, tuple[int, ...]]:
    global _CLASSICAL_ROW_BY_FAMILY
    if _CLASSICAL_ROW_BY_FAMILY is None:
        _CLASSICAL_ROW_BY_FAMILY = {r.g_family: r for r in table_rows()}
    row = _CLASSICAL_ROW_BY_FAMILY.get(desc.family)
    if row is None:
        raise StructureError(f"no catalog row for family {desc.family!r}")
    return row, desc.params


@dataclass(frozen=True)
class TowerStep:
    level: int
    g: SimpleAlgebraDescriptor
    nilradical_dim: int
    m_prime_factors: tuple[SimpleAlgebraDescriptor, ...]
    dropped_factors: tuple[tuple[str, int], ...]  # (name, dimension)


@dataclass(frozen=True)
class TowerReport:
    steps: tuple[TowerStep, ...]
    total_nilradical_dim: int
    maximal_nilpotent_dim: int | None  # closed form where embedded
    discrepancy: bool


def _maximal_nilpotent_dim(desc: SimpleAlgebraDescriptor) -> int | None:
    # closed forms embedded for two families only: upper-triangular count
    # for sl(n,R), restricted-root count with multiplicity for su(p,q)
    if desc.family == "sl_R":
        n = desc.params[0]
        return n * (n - 1) // 2
    if desc.family == "su":
        p, q = desc.params
        return 2 * p * q - min(p, q)
    return None


def tower(desc: SimpleAlgebraDescriptor) -> TowerReport:
    """Iterate g^{-i-1} = m(g^{-i})', keeping only factors in S."""
    if not desc.in_S:
        raise StructureError(f"{desc.name} is not in S")
    steps = []
    level = 0
    current: SimpleAlgebraDescriptor | None = desc
    while current is not None:
        row, params = _row_for(current)
        report = verify_row(row, params)
        if not report.passed:
            raise StructureError(f"tower step {current.name} fails verification")
        inst = instantiate(row, params)
        in_s = [f for f in inst.m_descriptors if f.in_S]
        dropped = tuple((f.name, f.dimension)
                        for f in inst.m_descriptors if not f.in_S)
        if len(in_s) > 1:
            raise StructureError("tower branching not supported")
        steps.append(TowerStep(
            level=level, g=current, nilradical_dim=inst.dim_n,
            m_prime_factors=tuple(in_s), dropped_factors=dropped))
        current = in_s[0] if in_s else None
        level += 1
    total = sum(s.nilradical_dim for s in steps)
    closed = _maximal_nilpotent_dim(desc)
    return TowerReport(
        steps=tuple(steps),
        total_nilradical_dim=total,
        maximal_nilpotent_dim=closed,
        discrepancy=closed is not None and closed != total,
    )


def langlands_annotations(inst: InstantiatedRow) -> dict[str, int]:
    """spin(n) = so(z) bookkeeping inside m; m_o is what remains."""
    m = inst.dim_z
    spin = m * (m - 1) // 2
    dim_m_o = inst.dim_m - spin
    if dim_m_o < 0:
        raise StructureError(f"negative m_o for {inst.name}")
    return {
        "dim_spin_factor": spin,
        "dim_a_o": inst.dim_a - 1,
        "dim_a_delta": 1,
        "dim_m_o": dim_m_o,
    }

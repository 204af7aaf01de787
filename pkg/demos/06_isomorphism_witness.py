"""The complex h' family collapses onto the real h family.

h'_{p,q}(C) and h_{p+q}(R) share dimensions (2(p+q), 1); the witness is an
exact change of basis M with M^T S_b M = S_a for the center pairing. The
transport check below confirms M carries brackets to brackets.
"""

import random
from fractions import Fraction

from htype import (
    CenterDimensionError,
    DivisionAlgebra,
    bracket,
    build_hn,
    build_hprime,
    check_symplectic_isomorphic,
    element,
)


def matvec(M, v):
    return [sum(Fraction(M[i][j]) * v[j] for j in range(len(v)))
            for i in range(len(M))]


rng = random.Random(6)
print("== signature does not matter over C ==")
for p, q in [(1, 0), (1, 1), (2, 1), (3, 0)]:
    a = build_hprime(DivisionAlgebra.C, p, q)
    b = build_hn(DivisionAlgebra.R, p + q)
    ok, M = check_symplectic_isomorphic(a, b)
    assert ok
    print(f"  {a.name} ~ {b.name}: witness found, "
          f"{len(M)}x{len(M[0])} exact matrix")

print()
print("== transport check on h'2,1(C) ~ h3(R) ==")
a = build_hprime(DivisionAlgebra.C, 2, 1)
b = build_hn(DivisionAlgebra.R, 3)
ok, M = check_symplectic_isomorphic(a, b)
for trial in range(3):
    u = [Fraction(rng.randint(-5, 5), 2) for _ in range(a.dim_v)]
    w = [Fraction(rng.randint(-5, 5), 2) for _ in range(a.dim_v)]
    lhs = bracket(b, element(b, v=matvec(M, u)), element(b, v=matvec(M, w)))
    rhs = bracket(a, element(a, v=u), element(a, v=w))
    assert list(lhs.z_part) == list(rhs.z_part)
print("  [Mu, Mw] = M[u, w] on random exact vectors: brackets transport")

print()
print("== quaternions refuse: dim z = 3 is out of scope for the witness ==")
a = build_hprime(DivisionAlgebra.H, 1, 1)
b = build_hprime(DivisionAlgebra.H, 2, 0)
try:
    check_symplectic_isomorphic(a, b)
except CenterDimensionError as exc:
    print(f"  CenterDimensionError: {exc}")

"""Exact arithmetic in the four normed division algebras.

Every coefficient is a Fraction, so the identities printed below hold
exactly, not up to rounding.
"""

import random
from fractions import Fraction

from htype import DivisionAlgebra, basis_element, conj, mul, norm_sq, random_element

rng = random.Random(1)

print("== quaternion multiplication table ==")
H = DivisionAlgebra.H
units = [basis_element(H, i) for i in range(4)]
names = ["1", "i", "j", "k"]
for i, ei in enumerate(units):
    row = []
    for ej in units:
        p = mul(ei, ej)
        k = next(idx for idx, c in enumerate(p.coefficients) if c != 0)
        sign = "-" if p.coefficients[k] < 0 else " "
        row.append(f"{sign}{names[k]}")
    print(f"  {names[i]}: " + "  ".join(row))

print()
print("== composition law |xy|^2 = |x|^2 |y|^2, exact ==")
for alg in DivisionAlgebra:
    x = random_element(alg, rng)
    y = random_element(alg, rng)
    lhs = norm_sq(mul(x, y))
    rhs = norm_sq(x) * norm_sq(y)
    assert lhs == rhs
    print(f"  {alg.name}: |xy|^2 = {lhs} = |x|^2 |y|^2  (Fractions, equality is ==)")

print()
print("== associativity stops at the octonions ==")
O = DivisionAlgebra.O
e1, e2, e4 = basis_element(O, 1), basis_element(O, 2), basis_element(O, 4)
left = mul(mul(e1, e2), e4)
right = mul(e1, mul(e2, e4))
print(f"  (e1 e2) e4 = {[str(c) for c in left.coefficients]}")
print(f"  e1 (e2 e4) = {[str(c) for c in right.coefficients]}")
print("  associator is nonzero: the octonions are not associative")

print()
print("== but they are alternative ==")
for _ in range(5):
    x = random_element(O, rng)
    y = random_element(O, rng)
    assert mul(mul(x, x), y) == mul(x, mul(x, y))
    assert mul(mul(y, x), x) == mul(y, mul(x, x))
print("  (xx)y = x(xy) and (yx)x = y(xx) on random octonion pairs")

print()
print("== conjugation recovers the norm ==")
x = random_element(O, rng)
p = mul(x, conj(x))
assert p.coefficients[0] == norm_sq(x)
assert all(c == 0 for c in p.coefficients[1:])
print(f"  x conj(x) = |x|^2 1 with |x|^2 = {norm_sq(x)}")

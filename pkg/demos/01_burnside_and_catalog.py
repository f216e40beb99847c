"""The Burnside functor, its norm, and the small catalog of Mackey functors.

Run:  python demos/01_burnside_and_catalog.py
"""

from mackey_tor import burnside, catalog_cell, catalog_sum, check_axioms, identify
from mackey_tor.mackey import CATALOG_NAMES

p = 3
A = burnside(p)

# The fixed level of A is Z{1, t} with t^2 = p t; the underlying level is Z.
t = A.fixed_t()
print("t * t =", t * t)
print("res(t) =", t.res())

# The norm of an integer a is a + (a^p - a)/p t; it is multiplicative.
for a in (2, -1, 5):
    print(f"nm({a}) =", A.norm(A.unit_monomial, a))
print("nm(2) nm(5) == nm(10):",
      A.norm(A.unit_monomial, 2) * A.norm(A.unit_monomial, 5) == A.norm(A.unit_monomial, 10))

# Every Tor cell we meet is a sum of five small Mackey functors.
print()
for name in CATALOG_NAMES:
    c = catalog_cell(name, p)
    print(f"{name:7s} fixed {str(c.fixed.invariants):4s} underlying {str(c.under.invariants):4s}"
          f" axioms ok: {check_axioms(c).ok}")

# identify() recovers multiplicities from direct-sum invariants alone.
M = catalog_sum({"A": 1, "L∨": 2, "g": 3}, p)
print()
print("identify(A + 2 L∨ + 3 g) ->", identify(M).describe())

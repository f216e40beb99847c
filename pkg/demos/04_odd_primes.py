"""Odd primes: the equivariant Koszul complex and what it leaves behind.

Run:  python demos/04_odd_primes.py
"""

from mackey_tor import GREEN, compute_tor
from mackey_tor.checks import koszul_report
from mackey_tor.resolutions import koszul_index_set
from mackey_tor.tor import oracle_mismatches

# Orbit representatives of n-subsets of Z/p index the Koszul generators.
for p in (3, 5):
    print(f"p={p}:", {n: koszul_index_set(p, n) for n in range(1, p)})
    rep = koszul_report(p)
    print("   top kernel element is a cycle:", rep["kernel_element_is_cycle"],
          "| equals res of a transfer:", rep["equals_res_of_transfer"])

# For p = 3 the Tor table matches the g families except in one cell:
# Tor_3 at internal degree 3 is a copy of the constant Mackey functor Z
# (res = 1, tr = 3).  Its underlying Z is the top exterior power of Z^3,
# which the classical Koszul complex forces.
table = compute_tor(GREEN, 3, 12, 8, jobs=1)
c = table.cell(3, 3)
print()
print("Tor_3 at d=3:", table.identification(3, 3).describe(),
      f"res={c.res.tolist()} tr={c.tr.tolist()} conj={c.conj.tolist()}")
print("cells differing from the closed form:", [(i, d) for i, d, _, _ in oracle_mismatches(table)])

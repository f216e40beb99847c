"""Tor over the free Tambara functor A[x_G]: the table and its growth.

Run:  python demos/03_tambara_tor_growth.py
"""

from mackey_tor import TAMBARA, compute_tor, rank_growth_report
from mackey_tor.resolutions import discover_tail_shifts

p = 2
table = compute_tor(TAMBARA, p, 2 * p + 10, 13, jobs=1)

# Low degrees: A; A + L; L; 0; 0; g; g; 0; 0 (summed over internal degree).
for i in range(9):
    parts = [f"d={d}: {table.identification(i, d).describe()}"
             for d in range(table.max_degree + 1) if not table.identification(i, d).is_zero()]
    print(f"Tor_{i}:", "; ".join(parts) or "0")

# Ranks grow: r_i = 2 r_(i-4) + r_(i-5) from i = 9 on.
rep = rank_growth_report(table)
print()
print("ranks:", [rep["ranks"][i] for i in range(14)])
print("residuals r_i - 2r_(i-4) - r_(i-5):", rep["recursion_residual"])

# The resolution tail repeats with internal shifts: F_k = F_(k-4) + F_(k-4)[p] + F_(k-5)[p].
print("tail shifts found:", discover_tail_shifts(table.resolution))

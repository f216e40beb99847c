"""A free resolution of A over A[x_e] for p = 2, and Tor read off from it.

Run:  python demos/02_c2_green_resolution.py
"""

from mackey_tor import GREEN, ResolutionSpec, build_resolution, compute_tor
from mackey_tor.checks import resolution_report
from mackey_tor.tor import reduced_images, to_csv

spec = ResolutionSpec(GREEN, p=2, max_degree=10, max_hdegree=7)
res = build_resolution(spec)

# The first terms are written down by hand; from F_7 on the kernel engine
# takes over.  Generators are (name, level, internal degree, weight).
for k in range(4):
    gens = ", ".join(f"{g.name}@{g.level}{g.degree}" for g in res.modules[k].generators)
    print(f"F_{k}: {gens}")
print("F_5 generator counts:", res.generator_counts(5))

# d^2 = 0 and exactness are checked degree by degree.
rep = resolution_report(res)
print("d^2 defects:", rep["d_squared"], " homology defects:", rep["exactness"])

# After applying - ⊠ A only a few generators survive; the differentials
# become small integer matrices.  The image of b_j is tr(a_j) - 2 a_j.
print("reduced d_4:", reduced_images(res, 4))

table = compute_tor(GREEN, 2, 10, 7, jobs=1, resolution=res)
print()
print(to_csv(table))

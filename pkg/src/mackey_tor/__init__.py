"""Mackey functor-valued Tor over free C_p Green and Tambara functors.

Exact integer linear algebra, Mackey functors over C_p with a catalog of
small examples, free resolutions of the Burnside functor over A[x_e] and
A[x_G], and the reduced complexes whose homology gives Tor_R(A, A).
"""

from .linalg import (
    AbelianGroupInvariants,
    CompositeNotZero,
    IntegerMatrix,
    cokernel_invariants,
    homology,
    image_invariants,
    invariant_factors,
    kernel_basis,
    smith_normal_form,
)
from .mackey import (
    CATALOG_NAMES,
    MackeyCell,
    MackeyComplex,
    MackeyFunctor,
    MackeyMorphism,
    PrimeMismatch,
    catalog_cell,
    catalog_functor,
    catalog_sum,
    check_axioms,
    direct_sum,
    homology_of_complex,
    identify,
)
from .modules import FreeModuleMorphism, FreeRModule, Generator, InhomogeneousImage
from .resolutions import (
    Resolution,
    ResolutionSpec,
    SpecMismatch,
    TruncationTooTight,
    build_c2_green_resolution,
    build_koszul_green_resolution,
    build_resolution,
    build_tambara_resolution,
    extend_by_kernel,
)
from .rings import (
    BURNSIDE,
    GREEN,
    TAMBARA,
    NotPrime,
    burnside,
    free_green_underlying,
    free_tambara_fixed,
    make_ring,
)
from .tor import (
    InsufficientTruncation,
    NonFreeTerm,
    TorTable,
    box_with_A,
    closed_form_oracle,
    compute_tor,
    rank_growth_report,
)

__version__ = "0.1.0"

import pytest

from mackey_tor.mackey import check_axioms, identify
from mackey_tor.modules import (
    FreeModuleMorphism,
    FreeRModule,
    Generator,
    InhomogeneousImage,
    expand_morphism,
)
from mackey_tor.rings import free_green_underlying, free_tambara_fixed


@pytest.mark.parametrize("p", [2, 3])
def test_free_module_levels_in_degree_zero(p):
    R = free_green_underlying(p, 4)
    F = FreeRModule(R, [Generator("u", "G", 0, (0,) * p), Generator("v", "e", 0, (0,) * p)])
    M = F.as_mackey()
    assert check_axioms(M).ok
    # R{u_G} starts with A, R{v_e} with A{z_e}
    assert identify(M, 0).entries == {"A": 1, "A{z_e}": 1}


def test_underlying_ranks_of_free_modules():
    p = 3
    R = free_green_underlying(p, 5)
    F = FreeRModule(R, [Generator("v", "e", 1, (1, 0, 0))])
    # underlying basis in degree d: p * #monomials of degree d - 1
    assert [len(F.basis(d, "e")) for d in range(5)] == [0, 3, 9, 18, 30]


def test_duplicate_and_bad_generators():
    R = free_green_underlying(2, 4)
    with pytest.raises(ValueError):
        FreeRModule(R, [("a", "G", 0), ("a", "G", 0)])
    with pytest.raises(ValueError):
        FreeRModule(R, [Generator("a", "G", 1, (1, 0))])  # not a fixed weight
    with pytest.raises(ValueError):
        FreeRModule(R, [("a", "X", 0)])


def test_inhomogeneous_image_rejected():
    R = free_green_underlying(2, 4)
    F0 = FreeRModule(R, [Generator("y", "G", 0, (0, 0))])
    F1 = FreeRModule(R, [Generator("z", "e", 1, (1, 0))])
    with pytest.raises(InhomogeneousImage):
        FreeModuleMorphism(F1, F0, {"z": R.x(0) * R.x(1) * F0.R("y")})
    with pytest.raises(InhomogeneousImage):
        FreeModuleMorphism(F1, F0, {"z": F0.gen("y")})


def test_morphism_is_equivariant_and_commutes_with_transfer():
    R = free_green_underlying(2, 6)
    x0, x1 = R.x(0), R.x(1)
    F0 = FreeRModule(R, [Generator("y", "G", 0, (0, 0))])
    F1 = FreeRModule(R, [Generator("z", "e", 1, (1, 0))])
    d1 = FreeModuleMorphism(F1, F0, {"z": x0 * F0.R("y")})
    assert d1.apply(F1.gen("z", 1)) == x1 * F0.R("y")
    assert d1.apply(F1.T("z")) == (x0 * F0.R("y")).tr()
    M = expand_morphism(d1, 5)
    assert M.commutes() == []


def test_tambara_module_fixed_generator():
    p = 2
    R = free_tambara_fixed(p, 6)
    F = FreeRModule(R, [Generator("z", "G", 1, (1,))])
    # fixed level of R{z_G} in degree 1 + d is the fixed level of R in degree d
    for d in range(5):
        assert len(F.basis(d + 1, "G")) == len(R.fixed_basis(d))
    assert check_axioms(F.as_mackey(6)).ok

from math import comb

import pytest

from mackey_tor.checks import koszul_report, resolution_report
from mackey_tor.modules import FreeModuleMorphism, FreeRModule, Generator
from mackey_tor.resolutions import (
    ResolutionSpec,
    SpecMismatch,
    TruncationTooTight,
    build_by_kernel,
    build_c2_green_resolution,
    build_resolution,
    d_squared_defects,
    discover_tail_shifts,
    exactness_defects,
    extend_by_kernel,
    koszul_index_set,
    tail_rank_mismatches,
)
from mackey_tor.rings import GREEN, TAMBARA, NotPrime


def test_spec_validation():
    with pytest.raises(NotPrime):
        ResolutionSpec(GREEN, 4, 10, 5)
    with pytest.raises(TruncationTooTight):
        ResolutionSpec(GREEN, 3, 4, 5)
    with pytest.raises(SpecMismatch):
        ResolutionSpec("free-monoid", 2, 10, 5)
    with pytest.raises(SpecMismatch):
        ResolutionSpec(GREEN, 2, 10, 0)
    with pytest.raises(SpecMismatch):
        build_c2_green_resolution(ResolutionSpec(GREEN, 3, 10, 5))


def _table(res, upto):
    return {k: [(g.name, g.level, g.degree) for g in res.modules[k].generators]
            for k in range(upto + 1)}


def test_c2_green_low_terms():
    res = build_resolution(ResolutionSpec(GREEN, 2, 8, 6))
    t = _table(res, 2)
    assert t == {0: [("y", "G", 0)], 1: [("z", "e", 1)], 2: [("w", "e", 2)]}
    # F_3 = sum_j R{a_j} with a_j a fixed generator in degree 2(j + 1)
    assert res.generator_counts(3) == {("G", d): 1 for d in (2, 4, 6, 8)}
    assert res.explicit_through == 6
    assert res.findings == []


@pytest.mark.parametrize("p", [2, 3])
def test_tambara_generator_degrees(p):
    res = build_resolution(ResolutionSpec(TAMBARA, p, 2 * p + 4, 8))
    deg = {"y": 0, "z": 1, "w": p, "a": p + 1, "b": p, "c": p + 1, "d": p, "h": p, "f": p + 1,
           "m": p + 1, "s": 2 * p, "delta": p, "u": 2 * p + 1, "v": p + 1, "xi": 2 * p,
           "zeta": p, "theta": 2 * p, "alpha": 2 * p + 1, "alpha_bar": p + 1, "beta": 2 * p,
           "beta_bar": p, "eps": 2 * p + 1, "omega": 2 * p}
    level_e = {"b", "c", "d", "f", "xi", "zeta", "alpha", "beta", "alpha_bar", "beta_bar",
               "omega"}
    seen = set()
    for k in range(8):
        for g in res.modules[k].generators:
            assert g.degree == deg[g.name], g
            assert (g.level == "e") == (g.name in level_e), g
            seen.add(g.name)
    assert seen == set(deg)


CASES = [(GREEN, 2, 12, 9), (GREEN, 3, 10, 7), (TAMBARA, 2, 12, 10), (TAMBARA, 3, 12, 10)]


@pytest.mark.parametrize("flavor,p,D,N", CASES)
def test_resolution_is_exact(flavor, p, D, N):
    res = build_resolution(ResolutionSpec(flavor, p, D, N))
    rep = resolution_report(res)
    assert rep["d_squared"] == []
    assert rep["exactness"] == {}


@pytest.mark.parametrize("p", [2, 3])
def test_engine_alone_matches_explicit_green(p):
    spec = ResolutionSpec(GREEN, p, 9, 6)
    explicit = build_resolution(spec)
    engine = build_by_kernel(spec)
    for k in range(7):
        assert engine.generator_counts(k) == explicit.generator_counts(k)


def test_broken_differential_detected():
    res = build_resolution(ResolutionSpec(GREEN, 2, 8, 4))
    F2, F1 = res.modules[2], res.modules[1]
    ring = res.ring
    # doubling d_2 keeps d^2 = 0 but leaves Z/2 homology at F_1
    doubled = FreeModuleMorphism(F2, F1, {"w": 2 * res.differentials[2].image("w")})
    bad = exactness_defects(doubled, res.differentials[1], 8)
    assert bad and bad[0][0] == 2
    # and a wrong sign in d_2 breaks d^2 = 0
    x0, x1 = ring.x(0), ring.x(1)
    res.differentials[2] = FreeModuleMorphism(
        F2, F1, {"w": x0 * F1.gen("z", 1) + x1 * F1.gen("z", 0)})
    assert d_squared_defects(res)


def test_engine_on_exact_pair_adds_nothing_new():
    # cover the kernel of an injective map: the next term is zero
    res = build_resolution(ResolutionSpec(GREEN, 2, 8, 3))
    R = res.ring
    F = FreeRModule(R, [Generator("u", "G", 0, (0, 0))])
    G = FreeRModule(R, [Generator("v", "G", 0, (0, 0))])
    iso = FreeModuleMorphism(F, G, {"u": G.gen("v")})
    mod, _, added = extend_by_kernel(iso, 8)
    assert len(mod.generators) == 0 and added == []


@pytest.mark.parametrize("p", [3, 5, 7])
def test_koszul_orbit_counts(p):
    for n in range(1, p):
        assert len(koszul_index_set(p, n)) == comb(p, n) // p


@pytest.mark.parametrize("p", [3, 5])
def test_koszul_identities(p):
    rep = koszul_report(p)
    assert rep["kernel_element_is_cycle"]
    assert rep["equals_res_of_transfer"]
    assert rep["transfer_is_cycle"]
    assert rep["orbit_counts_ok"]
    assert rep["classical_ranks_ok"]


def test_green_tail_shifts(green2):
    res = green2.resolution
    # F_k = sum_i F_(k-4)[2i] + F_(k-3)[2i + 2]
    assert tail_rank_mismatches(res) == []
    assert discover_tail_shifts(res) == [(0, 2)]
    assert tail_rank_mismatches(res, (0, 0))


@pytest.mark.parametrize("fixture,p", [("tambara2", 2), ("tambara3", 3)])
def test_tambara_tail_shifts(request, fixture, p):
    res = request.getfixturevalue(fixture).resolution
    assert tail_rank_mismatches(res) == []
    assert discover_tail_shifts(res) == [(0, p, p)]

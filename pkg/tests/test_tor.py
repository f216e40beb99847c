import csv
import io
import json

import pytest

from mackey_tor.goldens import GOLDEN_CASES, GOLDEN_DIR, golden_filename, listed_reduced, load_golden
from mackey_tor.checks import golden_report
from mackey_tor.mackey import check_axioms
from mackey_tor.resolutions import ResolutionSpec, build_resolution
from mackey_tor.rings import GREEN, TAMBARA
from mackey_tor.suite import tor_table
from mackey_tor.tor import (
    InsufficientTruncation,
    box_with_A,
    closed_form_oracle,
    compute_tor,
    export,
    oracle_mismatches,
    rank_growth_report,
    reduced_images,
)


def test_low_degrees_green_p2(green2):
    T = green2
    assert T.multiset(0, 0) == {"A": 1}
    assert T.multiset(1, 1) == {"A{z_e}": 1}
    assert T.multiset(2, 2) == {"L∨": 1}
    assert T.multiset(3, 4) == {"g": 1}
    assert T.multiset(3, 2) == {}
    assert T.multiset(6, 8) == {"g": 2}


def test_green_p2_matches_closed_form(green2):
    assert oracle_mismatches(green2) == []
    assert green2.axiom_failures() == {}


def test_green_p3_low_degrees(green3):
    T = green3
    assert T.multiset(0, 0) == {"A": 1}
    assert T.multiset(1, 1) == {"A{z_e}": 1}
    assert T.multiset(2, 2) == {"A{z_e}": 1}
    assert T.multiset(3, 6) == {"g": 1}


def test_green_p3_extra_constant_summand(green3):
    # Tor_3 in degree 3 is the constant Mackey functor: Z at both levels,
    # res = +-1, tr = +-3, trivial conjugation
    c = green3.cell(3, 3)
    assert str(c.fixed.invariants) == "Z" and str(c.under.invariants) == "Z"
    assert abs(c.res[0, 0]) == 1 and abs(c.tr[0, 0]) == 3 and c.conj[0, 0] == 1
    assert check_axioms(c).ok
    assert [(i, d) for i, d, _, _ in oracle_mismatches(green3)] == [(3, 3)]


@pytest.mark.parametrize("fixture", ["tambara2", "tambara3"])
def test_tambara_matches_closed_form(request, fixture):
    T = request.getfixturevalue(fixture)
    assert oracle_mismatches(T) == []
    assert T.axiom_failures() == {}


@pytest.mark.parametrize("fixture", ["tambara2", "tambara3"])
def test_tambara_rank_recursion(request, fixture):
    T = request.getfixturevalue(fixture)
    rep = rank_growth_report(T)
    assert all(v == 0 for v in rep["recursion_residual"].values())
    assert [rep["ranks"][i] for i in range(14)] == [3, 4, 1, 0, 0, 1, 1, 0, 0, 2, 3, 1, 0, 4]


def test_rank_report_needs_room():
    T = tor_table(TAMBARA, 2, 10, 4)
    with pytest.raises(InsufficientTruncation):
        rank_growth_report(T)


def test_oracle_edges():
    assert closed_form_oracle(GREEN, 2, 0, 0) == {"A": 1}
    assert closed_form_oracle(GREEN, 2, 0, 3) == {}
    assert closed_form_oracle(GREEN, 2, -1, 4) == {}
    assert closed_form_oracle(GREEN, 3, 3, 9) == {"g": 1}


def test_parallel_matches_serial():
    a = compute_tor(GREEN, 2, 8, 5, jobs=1)
    b = compute_tor(GREEN, 2, 8, 5, jobs=2)
    assert export(a, "json") == export(b, "json")


def test_exports_are_deterministic(green2):
    for fmt in ("csv", "json", "latex"):
        assert export(green2, fmt) == export(green2, fmt)
    rows = list(csv.reader(io.StringIO(export(green2, "csv"))))
    assert rows[0][:3] == ["i", "d=0", "d=1"]
    assert len(rows) == green2.max_hdegree + 2
    assert rows[3][3] == "L∨ ×1"
    data = json.loads(export(green2, "json"))
    assert data["flavor"] == GREEN and len(data["cells"]) == 11 * 15
    tex = export(green2, "latex")
    assert tex.startswith(r"\begin{tabular}") and r"\underline{L}^{\vee}" in tex
    with pytest.raises(ValueError):
        export(green2, "xml")


def test_box_with_A_is_a_complex(green2):
    C = box_with_A(green2.resolution)
    C.check_composites()


@pytest.mark.parametrize("flavor,p,D", GOLDEN_CASES)
def test_golden_files(flavor, p, D):
    fl, pp, DD, expected = load_golden(GOLDEN_DIR / golden_filename(flavor, p, D))
    assert (fl, pp, DD) == (flavor, p, D)
    # the shipped file is the hand-written list
    assert expected == listed_reduced(flavor, p, D)
    res = build_resolution(ResolutionSpec(flavor, p, D, 8))
    assert golden_report(res, expected) == []


def test_reduced_images_examples():
    res = build_resolution(ResolutionSpec(TAMBARA, 3, 12, 9))
    assert reduced_images(res, 5) == {"m": {"T(f)": 1}, "s": {}, "delta": {"h": -3, "t*h": 1}}
    assert reduced_images(res, 2) == {"a": {}, "b": {"R(w)": 1}}


@pytest.mark.parametrize("fixture,p", [("green2", 2), ("green3", 3)])
def test_underlying_level_is_classical_koszul(request, fixture, p):
    # the underlying level of Tor over A[x_e] is Tor over Z[x_0..x_{p-1}]:
    # an exterior algebra, free of rank C(p, i) in internal degree i
    from math import comb

    T = request.getfixturevalue(fixture)
    for i in range(T.max_hdegree + 1):
        for d in range(T.max_degree + 1):
            inv = T.cell(i, d).under.invariants
            want = comb(p, i) if d == i and i <= p else 0
            assert (inv.free_rank, inv.torsion) == (want, ()), (i, d)

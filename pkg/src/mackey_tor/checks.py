"""Verification routines shared by the test-suite, the CLI and the demos."""

from itertools import product
from math import comb

from .goldens import golden_diff, listed_reduced
from .resolutions import (
    Augmentation,
    _wedge_name,
    d_squared_defects,
    exactness_defects,
    koszul_index_set,
    koszul_rank_check,
    koszul_terms,
    koszul_top_kernel_element,
    tail_rank_mismatches,
)
from .rings import GREEN, burnside


# -- ring axioms ------------------------------------------------------------------

def _fixed_elems(ring, max_degree):
    for d in range(max_degree + 1):
        for f in ring.fixed_basis(d):
            yield ring.fixed({f: 1})


def _under_elems(ring, max_degree):
    for d in range(max_degree + 1):
        for m in ring.under_basis(d):
            yield ring.under({m: 1})


def ring_axiom_failures(ring, max_degree):
    """Failures of the Green (and, where present, Tambara) axioms on basis elements.

    Checked: conj^p = id, tr o conj = tr, res o tr = orbit sum (additive
    double coset), res multiplicative, Frobenius reciprocity
    tr(res(a) m) = a tr(m), and for rings with a norm the multiplicative
    double coset res(nm(m)) = prod_k conj^k(m) and nm(m m') = nm(m) nm(m').
    """
    p = ring.p
    bad = []
    fixed = list(_fixed_elems(ring, max_degree))
    under = list(_under_elems(ring, max_degree))
    for m in under:
        if m.conj(p) != m:
            bad.append(("conj^p", m))
        if m.conj(1).tr() != m.tr():
            bad.append(("tr o conj", m))
        orbit = ring.under({})
        for k in range(p):
            orbit = orbit + m.conj(k)
        if m.tr().res() != orbit:
            bad.append(("double coset", m))
    for a in fixed:
        if a.res().conj(1) != a.res():
            bad.append(("res invariant", a))
        for b in fixed:
            if ring.fixed_degree(next(iter(a.terms))) + ring.fixed_degree(next(iter(b.terms))) > max_degree:
                continue
            if (a * b).res() != a.res() * b.res():
                bad.append(("res multiplicative", a, b))
            if a * b != b * a:
                bad.append(("commutative", a, b))
        for m in under:
            if (a.res() * m).tr() != a * m.tr():
                bad.append(("Frobenius", a, m))
    if ring.has_norm:
        for m in under:
            (mono, _), = m.terms.items()
            prod_ = ring.under_one()
            for k in range(p):
                prod_ = prod_ * m.conj(k)
            if ring.norm(mono).res() != prod_:
                bad.append(("multiplicative double coset", m))
            for m2 in under:
                (mono2, _), = m2.terms.items()
                both = ring.under_mul(mono, mono2)
                if ring.norm(both) != ring.norm(mono) * ring.norm(mono2):
                    bad.append(("norm multiplicative", m, m2))
    return bad


def burnside_norm_failures(p, bound=10):
    """nm(ab) = nm(a) nm(b), res nm(a) = a^p and the additive norm formula, |a|, |b| <= bound."""
    A = burnside(p)
    bad = []

    def nm(a):
        return A.norm(A.unit_monomial, a) if a else A.fixed({})

    for a, b in product(range(-bound, bound + 1), repeat=2):
        if nm(a * b) != nm(a) * nm(b):
            bad.append(("multiplicative", a, b))
        # nm(a + b) = nm(a) + nm(b) + ((a + b)^p - a^p - b^p) / p * t
        cross = ((a + b) ** p - a ** p - b ** p) // p
        want = nm(a) + nm(b) + A.fixed({A.t: cross})
        if nm(a + b) != want:
            bad.append(("additive", a, b))
    for a in range(-bound, bound + 1):
        if nm(a).res() != A.under({A.unit_monomial: a ** p}):
            bad.append(("restriction", a))
    return bad


# -- resolutions ------------------------------------------------------------------

def resolution_report(res):
    """d^2, exactness and tail checks of a built resolution, as plain data."""
    D = res.spec.max_degree
    exact = {}
    for k in range(len(res.modules) - 1):
        out = Augmentation(res.modules[0]) if k == 0 else res.differentials[k]
        bad = exactness_defects(res.differentials[k + 1], out, D)
        if bad:
            exact[k] = bad
    return {
        "d_squared": d_squared_defects(res),
        "exactness": exact,
        "tail": tail_rank_mismatches(res),
        "findings": list(res.findings),
    }


def koszul_report(p, max_degree=None):
    """Koszul identities for odd p, as a dict of booleans and counts."""
    from .resolutions import ResolutionSpec

    D = max_degree if max_degree is not None else p + 2
    spec = ResolutionSpec(GREEN, p, D, p)
    mods, diffs = koszul_terms(spec)
    ring = spec.ring()
    el = koszul_top_kernel_element(spec, mods)
    top = mods[p - 1].gen(_wedge_name(tuple(range(p - 1))))
    lifted = (ring.x(p - 1) * top).tr()
    sizes = {n: len(koszul_index_set(p, n)) for n in range(1, p)}
    return {
        "kernel_element_is_cycle": diffs[p - 1].apply(el).is_zero(),
        "equals_res_of_transfer": el == lifted.res(),
        "transfer_is_cycle": diffs[p - 1].apply(lifted).is_zero(),
        "orbit_counts": sizes,
        "orbit_counts_ok": all(sizes[n] == comb(p, n) // p for n in range(1, p)),
        "classical_ranks_ok": not koszul_rank_check(spec, mods),
    }


def golden_report(res, expected=None):
    """Disagreements between the machine-reduced differentials and a hand-written list."""
    from .tor import reduced_images

    spec = res.spec
    if expected is None:
        expected = listed_reduced(spec.flavor, spec.p, spec.max_degree)
    machine = {k: reduced_images(res, k) for k in expected}
    return golden_diff(machine, expected)


__all__ = [
    "ring_axiom_failures", "burnside_norm_failures", "resolution_report",
    "koszul_report", "golden_report",
]

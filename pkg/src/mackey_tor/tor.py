"""Mackey-valued Tor_R(A, A) from a free resolution.

Tensoring a free R-module with A over R keeps, degree by degree, exactly the
basis elements whose ring coefficient has degree 0: a generator at level G
contributes a copy of A, a generator at level e a copy of A{z_e}.  The
differential of the reduced complex is the original one followed by the
projection that forgets all terms with positive-degree coefficients.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .linalg import IntegerMatrix
from .mackey import (
    CATALOG_NAMES,
    MackeyCell,
    MackeyComplex,
    MackeyFunctor,
    MackeyMorphism,
    Level,
    cell_homology,
    identify_cell,
)
from .resolutions import ResolutionSpec, build_resolution
from .rings import GREEN, TAMBARA


class NonFreeTerm(TypeError):
    pass


class InsufficientTruncation(ValueError):
    pass


# -- reduction --------------------------------------------------------------------

@dataclass
class ReducedTerm:
    """F_k tensored with A, one internal degree at a time."""

    module: object
    max_degree: int

    def labels(self, d, level):
        return self.module.generator_part(d, level)

    def cell(self, d):
        M = self.module
        G, E = self.labels(d, "G"), self.labels(d, "e")
        gi = {lab: j for j, lab in enumerate(G)}
        ei = {lab: j for j, lab in enumerate(E)}

        def mat(src, tgt_index, fn):
            cols = []
            for lab in src:
                col = [0] * len(tgt_index)
                for k, c in fn(lab).items():
                    i = tgt_index.get(k)
                    if i is not None:
                        col[i] += c
                cols.append(col)
            return IntegerMatrix.from_columns(cols, len(tgt_index))

        return MackeyCell(
            M.p,
            Level.free(len(G), [M.format_label(x) for x in G]),
            Level.free(len(E), [M.format_label(x) for x in E]),
            mat(G, ei, M.res_of), mat(E, gi, M.tr_of), mat(E, ei, M.conj_of))

    def functor(self):
        return MackeyFunctor(self.module.p, self.max_degree,
                             cells={d: self.cell(d) for d in range(self.max_degree + 1)})


def reduced_matrices(diff, d):
    """(fixed, underlying) matrices of the reduced differential at degree d."""
    src, tgt = diff.source, diff.target
    out = []
    for level in ("G", "e"):
        out.append(diff.matrix(d, level, src.generator_part(d, level),
                               tgt.generator_part(d, level)))
    return tuple(out)


def box_with_A(res):
    """The complex F_* tensored with A over R, as a MackeyComplex."""
    from .modules import FreeRModule

    D = res.spec.max_degree
    for F in res.modules:
        if not isinstance(F, FreeRModule):
            raise NonFreeTerm(f"{type(F).__name__} is not a free module")
    terms = [ReducedTerm(F, D).functor() for F in res.modules]
    diffs = {}
    for k, f in res.differentials.items():
        mats = {d: reduced_matrices(f, d) for d in range(D + 1)}
        diffs[k] = MackeyMorphism(terms[k], terms[k - 1],
                                  {d: m[0] for d, m in mats.items()},
                                  {d: m[1] for d, m in mats.items()})
    return MackeyComplex(terms, diffs)


def reduced_images(res, k):
    """Readable reduced differential on generators: {generator: {target label: coeff}}.

    Only generator parts survive, so each image is a combination of the
    target's basis elements with coefficient 1 or t (fixed) or of the
    conjugates of its generators (underlying).
    """
    f = res.differentials[k]
    src, tgt = f.source, f.target
    out = {}
    for i, g in enumerate(src.generators):
        lab = ("G", i, src.ring.one) if g.level == "G" else ("U", i, src.ring.unit_monomial, 0)
        level = "G" if g.level == "G" else "e"
        keep = set(tgt.generator_part(g.degree, level))
        img = {tgt.format_label(t): c for t, c in f.image_of(lab).items() if t in keep}
        out[g.name] = dict(sorted(img.items()))
    return out


# -- homology ------------------------------------------------------------------------

def _cell_job(args):
    term, din, dout = args
    cell, _ = cell_homology(term, din, dout)
    return cell


def default_jobs():
    env = os.environ.get("MACKEY_TOR_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class TorTable:
    flavor: str
    p: int
    max_degree: int
    max_hdegree: int
    cells: dict  # (i, d) -> MackeyCell
    identifications: dict  # (i, d) -> Identification
    findings: list = field(default_factory=list)
    resolution: object = None

    def trusted(self, i, d):
        # every map preserves internal degree and F_{N+1} is built, so every
        # cell with i <= N and d <= D is computed exactly
        return 0 <= i <= self.max_hdegree and 0 <= d <= self.max_degree

    def cell(self, i, d):
        return self.cells[(i, d)]

    def identification(self, i, d):
        return self.identifications[(i, d)]

    def multiset(self, i, d):
        ident = self.identifications[(i, d)]
        return dict(ident.entries) if ident.identified else None

    def functor(self, i):
        return MackeyFunctor(self.p, self.max_degree,
                             cells={d: self.cells[(i, d)] for d in range(self.max_degree + 1)})

    def degree_rank(self, i, d):
        """Generators of both levels (free rank plus number of cyclic torsion factors)."""
        c = self.cells[(i, d)]
        return len(c.fixed.orders) + len(c.under.orders)

    def rank(self, i, up_to=None):
        D = self.max_degree if up_to is None else up_to
        return sum(self.degree_rank(i, d) for d in range(D + 1))

    def summand_count(self, i, up_to=None):
        D = self.max_degree if up_to is None else up_to
        total = 0
        for d in range(D + 1):
            ms = self.multiset(i, d)
            if ms is None:
                return None
            total += sum(ms.values())
        return total

    def axiom_failures(self):
        return {key: c.axiom_failures() for key, c in self.cells.items() if c.axiom_failures()}


def compute_tor(flavor, p, max_degree, max_hdegree, jobs=None, resolution=None):
    spec = ResolutionSpec(flavor, p, max_degree, max_hdegree)
    res = resolution if resolution is not None else build_resolution(spec)
    D, N = max_degree, max_hdegree
    jobs = default_jobs() if jobs is None else max(1, jobs)
    terms = [ReducedTerm(F, D) for F in res.modules]
    work, keys = [], []
    for i in range(N + 1):
        for d in range(D + 1):
            term = terms[i].cell(d)
            nf, nu = term.fixed.rank, term.under.rank
            if i + 1 in res.differentials:
                din = reduced_matrices(res.differentials[i + 1], d)
            else:
                din = (IntegerMatrix.zeros(nf, 0), IntegerMatrix.zeros(nu, 0))
            if i >= 1:
                dout = reduced_matrices(res.differentials[i], d)
            else:
                dout = (IntegerMatrix.zeros(0, nf), IntegerMatrix.zeros(0, nu))
            work.append((term, din, dout))
            keys.append((i, d))
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cell_job, work, chunksize=8))
    else:
        results = [_cell_job(w) for w in work]
    cells = dict(zip(keys, results))
    idents = {key: identify_cell(c) for key, c in cells.items()}
    return TorTable(flavor, p, D, N, cells, idents, list(res.findings), res)


# -- closed forms -------------------------------------------------------------------

def green_start(p):
    """Homological degree of the first g-family for A[x_e]."""
    return 3 if p == 2 else p


def _add(acc, ms, k=1):
    for name, m in ms.items():
        if m:
            acc[name] = acc.get(name, 0) + k * m
    return acc


def closed_form_oracle(flavor, p, i, d, shifts=None):
    """Expected catalog multiset of Tor_i in internal degree d.

    The infinite sums are graded by the degrees of the generators that
    produce them; the recursive part uses the tail shifts (defaults: the
    shifts carried by the resolution's generators, see
    ``resolutions.predicted_tail_counts``).
    """
    if d < 0 or i < 0:
        return {}
    if i == 0:
        return {"A": 1} if d == 0 else {}
    if flavor == TAMBARA:
        s0, s1, s2 = shifts or (0, p, p)
        table = {
            1: {1: {"A": 1}, p: {"L": 1}},
            2: {p + 1: {"L": 1}},
            3: {}, 4: {},
            5: {2 * p: {"g": 1}},
            6: {2 * p + 1: {"g": 1}},
            7: {}, 8: {},
        }
        if i in table:
            return dict(table[i].get(d, {}))
        out = {}
        _add(out, closed_form_oracle(flavor, p, i - 4, d - s0, shifts))
        _add(out, closed_form_oracle(flavor, p, i - 4, d - s1, shifts))
        _add(out, closed_form_oracle(flavor, p, i - 5, d - s2, shifts))
        return out
    if flavor != GREEN:
        raise ValueError(f"unknown flavor {flavor!r}")
    s = green_start(p)
    s0, s1 = shifts or (0, p)
    if i < s:
        if p == 2:
            return {1: {"A{z_e}": 1} if d == 1 else {}, 2: {"L∨": 1} if d == 2 else {}}[i]
        return {"A{z_e}": comb(p, i) // p} if d == i else {}
    if i == s:
        # one g for each a_j with j >= 1, in degree p (j + 1)
        return {"g": 1} if d % p == 0 and d // p >= 2 else {}
    if i in (s + 1, s + 2):
        return {}
    if i == s + 3:
        # zeta_{i', j} with i' >= 1, j >= 0 in degree p (i' + j + 2)
        m = d // p if d % p == 0 else 0
        return {"g": m - 2} if m >= 3 else {}
    out = {}
    for k in range(d // p + 1):
        _add(out, closed_form_oracle(flavor, p, i - 4, d - p * k - s0, shifts))
        _add(out, closed_form_oracle(flavor, p, i - 3, d - p * k - s1, shifts))
    return out


def oracle_mismatches(table, shifts=None):
    """[(i, d, machine description, expected multiset)] over trusted cells."""
    bad = []
    for (i, d), ident in sorted(table.identifications.items()):
        if not table.trusted(i, d):
            continue
        want = {k: v for k, v in closed_form_oracle(table.flavor, table.p, i, d, shifts).items() if v}
        got = ident.entries if ident.identified else None
        if got != want:
            bad.append((i, d, ident.describe(), want))
    return bad


def rank_growth_report(table, smaller=None):
    """Growth data for the two rank statements.

    Returns a dict with per-i ranks, and, for the Tambara flavor, the
    residuals of r_i - 2 r_{i-4} - r_{i-5} for 9 <= i <= N.
    """
    p, D, N = table.p, table.max_degree, table.max_hdegree
    if D < 2 * p + 8:
        raise InsufficientTruncation(f"growth needs D >= 2p + 8 = {2 * p + 8}")
    ranks = {i: table.rank(i) for i in range(N + 1)}
    out = {"ranks": ranks}
    if smaller is not None:
        out["ranks_smaller"] = {i: smaller.rank(i) for i in range(min(N, smaller.max_hdegree) + 1)}
        out["nondecreasing"] = all(out["ranks_smaller"][i] <= ranks[i] for i in out["ranks_smaller"])
    if table.flavor == TAMBARA:
        out["recursion_residual"] = {i: ranks[i] - 2 * ranks[i - 4] - ranks[i - 5]
                                     for i in range(9, N + 1)}
        out["support_max"] = {i: max([d for d in range(D + 1) if table.degree_rank(i, d)],
                                     default=None) for i in range(N + 1)}
    return out


# -- export --------------------------------------------------------------------------

def cell_text(ident):
    return ident.describe()


def to_csv(table):
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i"] + [f"d={d}" for d in range(table.max_degree + 1)])
    for i in range(table.max_hdegree + 1):
        w.writerow([i] + [cell_text(table.identifications[(i, d)])
                          for d in range(table.max_degree + 1)])
    return buf.getvalue()


def to_json(table):
    import json

    rows = []
    for (i, d), ident in sorted(table.identifications.items()):
        c = table.cells[(i, d)]
        rows.append({
            "i": i, "d": d,
            "summands": dict(sorted(ident.entries.items())) if ident.identified else None,
            "text": ident.describe(),
            "fixed": str(c.fixed.invariants),
            "underlying": str(c.under.invariants),
            "trusted": table.trusted(i, d),
        })
    data = {"flavor": table.flavor, "p": table.p, "max_degree": table.max_degree,
            "max_hdegree": table.max_hdegree, "findings": table.findings, "cells": rows}
    return json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


_TEX = {"A": r"\underline{A}", "A{z_e}": r"\underline{A}\{z_e\}", "L": r"\underline{L}",
        "L∨": r"\underline{L}^{\vee}", "g": r"\underline{g}"}


def to_latex(table):
    D = table.max_degree
    lines = [r"\begin{tabular}{r|" + "c" * (D + 1) + "}",
             " & ".join(["$i$"] + [f"${d}$" for d in range(D + 1)]) + r" \\ \hline"]
    for i in range(table.max_hdegree + 1):
        row = [f"${i}$"]
        for d in range(D + 1):
            ident = table.identifications[(i, d)]
            if not ident.identified:
                row.append("?")
            elif ident.is_zero():
                row.append("$0$")
            else:
                parts = []
                for name in CATALOG_NAMES:
                    m = ident.entries.get(name, 0)
                    if m:
                        parts.append(_TEX[name] if m == 1 else f"{_TEX[name]}^{{{m}}}")
                row.append("$" + r" \oplus ".join(parts) + "$")
        lines.append(" & ".join(row) + r" \\")
    lines.append(r"\end{tabular}")
    return "\n".join(lines) + "\n"


def export(table, fmt):
    if fmt == "csv":
        return to_csv(table)
    if fmt == "json":
        return to_json(table)
    if fmt == "latex":
        return to_latex(table)
    raise ValueError(f"unknown format {fmt!r}")


__all__ = [
    "NonFreeTerm", "InsufficientTruncation", "TorTable", "box_with_A", "reduced_images",
    "compute_tor", "closed_form_oracle", "oracle_mismatches", "rank_growth_report",
    "export", "to_csv", "to_json", "to_latex",
]

"""Mackey functors for C_p as graded pairs of abelian groups.

A ``MackeyCell`` is an ungraded Mackey functor: a fixed level M(C_p/C_p), an
underlying level M(C_p/e), and integer matrices for restriction, transfer and
the action of a chosen generator gamma.  Levels are finitely generated
abelian groups Z^n / diag(orders) (order 0 = free generator), so homology
with torsion is representable; maps are taken modulo the target orders.

A ``MackeyFunctor`` is a family of cells indexed by internal degree 0..D.
"""

import json
from dataclasses import dataclass, field

from .linalg import (
    AbelianGroupInvariants,
    CompositeNotZero,
    IntegerMatrix,
    cokernel_invariants,
    homology,
    image_invariants,
)


class PrimeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Level:
    orders: tuple = ()
    labels: tuple = None

    @classmethod
    def free(cls, n, labels=None):
        return cls((0,) * n, tuple(labels) if labels is not None else None)

    @property
    def rank(self):
        return len(self.orders)

    @property
    def is_free(self):
        return all(o == 0 for o in self.orders)

    @property
    def invariants(self):
        return AbelianGroupInvariants.from_orders(self.orders)

    def reduce(self, vec):
        return [v % o if o else v for v, o in zip(vec, self.orders)]


def _reduce_matrix(M, orders):
    rows = M.tolist()
    for i, o in enumerate(orders):
        if o:
            rows[i] = [e % o for e in rows[i]]
    return IntegerMatrix(rows, M.nrows, M.ncols)


def _eq_mod(A, B, orders):
    return A.shape == B.shape and _reduce_matrix(A - B, orders).is_zero()


def _cyclic(p):
    """Permutation matrix of e_k -> e_{k+1 mod p}."""
    return IntegerMatrix([[int(i == (j + 1) % p) for j in range(p)] for i in range(p)], p, p)


def _block_diag(mats, nrows, ncols):
    out = [[0] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for M in mats:
        for i in range(M.nrows):
            for j in range(M.ncols):
                out[r0 + i][c0 + j] = M[i, j]
        r0 += M.nrows
        c0 += M.ncols
    return IntegerMatrix(out, nrows, ncols)


class MackeyCell:
    """One internal degree of a Mackey functor."""

    def __init__(self, p, fixed, under, res=None, tr=None, conj=None):
        self.p = p
        self.fixed = fixed if isinstance(fixed, Level) else Level(tuple(fixed))
        self.under = under if isinstance(under, Level) else Level(tuple(under))
        nf, nu = self.fixed.rank, self.under.rank
        self.res = IntegerMatrix.zeros(nu, nf) if res is None else _as(res, nu, nf)
        self.tr = IntegerMatrix.zeros(nf, nu) if tr is None else _as(tr, nf, nu)
        self.conj = IntegerMatrix.identity(nu) if conj is None else _as(conj, nu, nu)
        if self.res.shape != (nu, nf) or self.tr.shape != (nf, nu) or self.conj.shape != (nu, nu):
            raise ValueError("structure maps do not match the level ranks")

    @classmethod
    def zero(cls, p):
        return cls(p, Level(), Level())

    def is_zero(self):
        return self.fixed.invariants.is_zero() and self.under.invariants.is_zero()

    def conj_power(self, k):
        out = IntegerMatrix.identity(self.under.rank)
        for _ in range(k):
            out = self.conj @ out
        return out

    def orbit_sum(self):
        n = self.under.rank
        out = IntegerMatrix.zeros(n, n)
        c = IntegerMatrix.identity(n)
        for _ in range(self.p):
            out = out + c
            c = self.conj @ c
        return out

    def axiom_failures(self):
        """Names of the violated axioms (empty when the cell is a Mackey functor)."""
        fails = []
        fo, uo = self.fixed.orders, self.under.orders
        for name, M, so, to in (("res well-defined", self.res, fo, uo),
                                ("tr well-defined", self.tr, uo, fo),
                                ("conj well-defined", self.conj, uo, uo)):
            for j, o in enumerate(so):
                if o and any(((o * M[i, j]) % t if t else o * M[i, j]) for i, t in enumerate(to)):
                    fails.append(name)
                    break
        n = self.under.rank
        if not _eq_mod(self.conj_power(self.p), IntegerMatrix.identity(n), uo):
            fails.append("conj^p = id")
        if not _eq_mod(self.res @ self.tr, self.orbit_sum(), uo):
            fails.append("double coset")
        if not _eq_mod(self.tr @ self.conj, self.tr, fo):
            fails.append("tr equivariance")
        if not _eq_mod(self.conj @ self.res, self.res, uo):
            fails.append("res equivariance")
        return fails

    def fingerprint(self):
        """Direct-sum additive invariants used to recognise catalog functors."""
        fo, uo = self.fixed.orders, self.under.orders
        n = self.under.rank
        maps = (
            ("res", self.res, uo),
            ("tr", self.tr, fo),
            ("res.tr", self.res @ self.tr, uo),
            ("tr.res", self.tr @ self.res, fo),
            ("conj-id", self.conj - IntegerMatrix.identity(n), uo),
            ("orbit-sum", self.orbit_sum(), uo),
        )
        out = [("fixed", self.fixed.invariants), ("underlying", self.under.invariants)]
        for name, M, to in maps:
            out.append((name, image_invariants(M, to), cokernel_invariants(M, to)))
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, MackeyCell):
            return NotImplemented
        return (self.p == other.p and self.fixed.orders == other.fixed.orders
                and self.under.orders == other.under.orders and self.res == other.res
                and self.tr == other.tr and self.conj == other.conj)

    def __repr__(self):
        return (f"MackeyCell(p={self.p}, fixed={self.fixed.invariants}, "
                f"underlying={self.under.invariants})")


def _as(M, nrows, ncols):
    if isinstance(M, IntegerMatrix):
        return M
    M = list(M)
    if not M:
        return IntegerMatrix.zeros(nrows, ncols)
    return IntegerMatrix(M, nrows, ncols)


def direct_sum_cells(cells):
    cells = list(cells)
    if not cells:
        raise ValueError("empty direct sum needs a prime")
    p = cells[0].p
    if any(c.p != p for c in cells):
        raise PrimeMismatch("cells over different primes")
    fo = sum((c.fixed.orders for c in cells), ())
    uo = sum((c.under.orders for c in cells), ())
    nf, nu = len(fo), len(uo)
    return MackeyCell(
        p, Level(fo), Level(uo),
        _block_diag([c.res for c in cells], nu, nf),
        _block_diag([c.tr for c in cells], nf, nu),
        _block_diag([c.conj for c in cells], nu, nu),
    )


class MackeyFunctor:
    """A Mackey functor graded by internal degree 0..max_degree."""

    def __init__(self, prime, max_degree, fixed=None, under=None, res=None, tr=None, conj=None,
                 cells=None):
        self.prime = prime
        self.max_degree = max_degree
        if cells is None:
            cells = {}
            for d in range(max_degree + 1):
                cells[d] = MackeyCell(prime, fixed[d], under[d], res.get(d), tr.get(d),
                                      conj.get(d))
        self.cells = {d: cells.get(d, MackeyCell.zero(prime)) for d in range(max_degree + 1)}

    @classmethod
    def concentrated(cls, cell, degree, max_degree):
        return cls(cell.p, max_degree, cells={degree: cell})

    @classmethod
    def zero(cls, prime, max_degree):
        return cls(prime, max_degree, cells={})

    def __getitem__(self, d):
        return self.cells[d]

    @property
    def fixed_level(self):
        return {d: c.fixed for d, c in self.cells.items()}

    @property
    def underlying_level(self):
        return {d: c.under for d, c in self.cells.items()}

    @property
    def res(self):
        return {d: c.res for d, c in self.cells.items()}

    @property
    def tr(self):
        return {d: c.tr for d, c in self.cells.items()}

    @property
    def conj(self):
        return {d: c.conj for d, c in self.cells.items()}

    def is_zero(self):
        return all(c.is_zero() for c in self.cells.values())

    def support(self):
        return [d for d, c in self.cells.items() if not c.is_zero()]

    def __eq__(self, other):
        if not isinstance(other, MackeyFunctor):
            return NotImplemented
        return (self.prime == other.prime and self.max_degree == other.max_degree
                and self.cells == other.cells)

    def __repr__(self):
        parts = ", ".join(f"{d}: {c.fixed.invariants} / {c.under.invariants}"
                          for d, c in self.cells.items() if not c.is_zero())
        return f"MackeyFunctor(p={self.prime}, D={self.max_degree}, {{{parts}}})"


@dataclass
class AxiomReport:
    ok: bool
    failures: list = field(default_factory=list)  # (degree, axiom)

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None

    def __bool__(self):
        return self.ok


def check_axioms(M):
    """Check conj^p = id, the double coset formula and equivariance in every degree."""
    cells = {0: M} if isinstance(M, MackeyCell) else M.cells
    failures = []
    for d in sorted(cells):
        for name in cells[d].axiom_failures():
            failures.append((d, name))
    return AxiomReport(not failures, failures)


def direct_sum(Ms):
    Ms = list(Ms)
    if not Ms:
        raise ValueError("empty direct sum")
    if isinstance(Ms[0], MackeyCell):
        return direct_sum_cells(Ms)
    p, D = Ms[0].prime, Ms[0].max_degree
    if any(M.prime != p for M in Ms):
        raise PrimeMismatch("Mackey functors over different primes")
    if any(M.max_degree != D for M in Ms):
        raise ValueError("Mackey functors truncated at different degrees")
    return MackeyFunctor(p, D, cells={d: direct_sum_cells([M[d] for M in Ms])
                                      for d in range(D + 1)})


class MackeyMorphism:
    def __init__(self, source, target, fixed_map, underlying_map):
        self.source = source
        self.target = target
        self.fixed_map = dict(fixed_map)
        self.underlying_map = dict(underlying_map)

    def commutes(self):
        """Degrees where the morphism fails to commute with res, tr or conj."""
        bad = []
        for d in range(self.source.max_degree + 1):
            s, t = self.source[d], self.target[d]
            fG, fe = self.fixed_map[d], self.underlying_map[d]
            if (t.res @ fG != fe @ s.res or t.tr @ fe != fG @ s.tr
                    or t.conj @ fe != fe @ s.conj):
                bad.append(d)
        return bad


class MackeyComplex:
    """terms[k] for k = 0..N with differentials[k]: terms[k] -> terms[k-1] (k >= 1)."""

    def __init__(self, terms, differentials):
        self.terms = list(terms)
        self.differentials = dict(differentials)
        for k in self.differentials:
            if not 1 <= k < len(self.terms):
                raise ValueError(f"differential {k} out of range")

    def check_composites(self):
        for k in range(2, len(self.terms)):
            if k not in self.differentials or k - 1 not in self.differentials:
                continue
            a, b = self.differentials[k], self.differentials[k - 1]
            for d in a.fixed_map:
                if not (b.fixed_map[d] @ a.fixed_map[d]).is_zero():
                    raise CompositeNotZero(f"fixed level, homological {k}, degree {d}")
                if not (b.underlying_map[d] @ a.underlying_map[d]).is_zero():
                    raise CompositeNotZero(f"underlying level, homological {k}, degree {d}")


def _zero_mat(m, n):
    return IntegerMatrix.zeros(m, n)


def cell_homology(term, d_in, d_out):
    """Homology at one degree of  C_{k+1} -> C_k -> C_{k-1}  with induced structure.

    ``term`` is the MackeyCell C_k (free levels); ``d_in``/``d_out`` are pairs
    (fixed matrix, underlying matrix).  Returns (MackeyCell, (hG, he)).
    """
    if not (term.fixed.is_free and term.under.is_free):
        raise ValueError("homology needs free terms")
    _, hG = homology(d_in[0], d_out[0])
    _, he = homology(d_in[1], d_out[1])
    res = [he.classes(term.res @ hG.lift(_unit(hG.ngens, i))) for i in range(hG.ngens)]
    tr = [hG.classes(term.tr @ he.lift(_unit(he.ngens, i))) for i in range(he.ngens)]
    conj = [he.classes(term.conj @ he.lift(_unit(he.ngens, i))) for i in range(he.ngens)]
    cell = MackeyCell(
        term.p, Level(tuple(hG.orders)), Level(tuple(he.orders)),
        IntegerMatrix.from_columns(res, he.ngens) if hG.ngens else None,
        IntegerMatrix.from_columns(tr, hG.ngens) if he.ngens else None,
        IntegerMatrix.from_columns(conj, he.ngens) if he.ngens else None,
    )
    return cell, (hG, he)


def _unit(n, i):
    return [int(j == i) for j in range(n)]


def homology_of_complex(C):
    """Homology Mackey functors H_0..H_N of a complex of free Mackey functors.

    The last term has no incoming differential, so H_N is its cycles.
    """
    C.check_composites()
    out = []
    N = len(C.terms) - 1
    for k, term in enumerate(C.terms):
        cells = {}
        for d in range(term.max_degree + 1):
            cell = term[d]
            nf, nu = cell.fixed.rank, cell.under.rank
            if k + 1 <= N and (k + 1) in C.differentials:
                din = (C.differentials[k + 1].fixed_map[d], C.differentials[k + 1].underlying_map[d])
            else:
                din = (_zero_mat(nf, 0), _zero_mat(nu, 0))
            if k >= 1 and k in C.differentials:
                dout = (C.differentials[k].fixed_map[d], C.differentials[k].underlying_map[d])
            else:
                dout = (_zero_mat(0, nf), _zero_mat(0, nu))
            cells[d], _ = cell_homology(cell, din, dout)
        out.append(MackeyFunctor(term.prime, term.max_degree, cells=cells))
    return out


# -- catalog --------------------------------------------------------------------

CATALOG_NAMES = ("A", "A{z_e}", "L", "L∨", "g")


def catalog_cell(name, p):
    if name == "A":
        return MackeyCell(p, Level.free(2, ["1", "t"]), Level.free(1, ["1"]),
                          [[1, p]], [[0], [1]], [[1]])
    if name == "A{z_e}":
        return MackeyCell(p, Level.free(1, ["tr(z)"]), Level.free(p, [f"z^({k})" for k in range(p)]),
                          [[1] for _ in range(p)], [[1] * p], _cyclic(p))
    if name == "L":
        return MackeyCell(p, Level.free(1, ["x"]), Level())
    if name == "L∨":
        n = p - 1
        conj = [[0] * n for _ in range(n)]
        for j in range(n):
            if j + 1 < n:
                conj[j + 1][j] = 1
            else:
                for i in range(n):
                    conj[i][j] = -1
        return MackeyCell(p, Level(), Level.free(n, [f"x_{i}" for i in range(n)]),
                          None, None, IntegerMatrix(conj, n, n) if n else None)
    if name == "g":
        return MackeyCell(p, Level((p,), ("1",)), Level())
    raise KeyError(name)


def catalog_functor(name, p, degree, max_degree):
    return MackeyFunctor.concentrated(catalog_cell(name, p), degree, max_degree)


def catalog_sum(multiset, p):
    """Direct sum of catalog cells with the given multiplicities."""
    cells = []
    for name in CATALOG_NAMES:
        cells.extend([catalog_cell(name, p)] * multiset.get(name, 0))
    return direct_sum_cells(cells) if cells else MackeyCell.zero(p)


@dataclass
class Identification:
    entries: dict  # catalog name -> multiplicity
    identified: bool
    fixed: AbelianGroupInvariants = None
    underlying: AbelianGroupInvariants = None

    def is_zero(self):
        return self.identified and not any(self.entries.values())

    def describe(self):
        if not self.identified:
            return f"?[{self.fixed} | {self.underlying}]"
        parts = [f"{n} ×{m}" for n, m in self.entries.items() if m]
        return "; ".join(parts) if parts else "0"


def identify_cell(cell):
    """Decompose a cell into catalog functors by fingerprint, if possible."""
    p = cell.p
    fp = cell.fingerprint()
    inv = dict((x[0], x[1:]) for x in fp)
    fixed, under = inv["fixed"][0], inv["underlying"][0]
    img_res = inv["res"][0]
    a = inv["orbit-sum"][1].p_rank(p)
    b = img_res.free_rank - a
    c = fixed.free_rank - 2 * a - b
    rest = under.free_rank - a - p * b
    e = rest // (p - 1) if rest >= 0 and rest % (p - 1) == 0 else -1
    f = fixed.p_rank(p)
    mult = {"A": a, "A{z_e}": b, "L": c, "L∨": e, "g": f}
    if min(mult.values()) >= 0 and catalog_sum(mult, p).fingerprint() == fp:
        return Identification({k: v for k, v in mult.items() if v}, True, fixed, under)
    return Identification({}, False, fixed, under)


def identify(M, degree=None):
    if isinstance(M, MackeyCell):
        return identify_cell(M)
    return identify_cell(M[degree])


# -- JSON ---------------------------------------------------------------------------

def to_json_dict(M):
    levels = {"fixed": [], "underlying": []}
    maps = {"res": [], "tr": [], "conj": []}
    for d in range(M.max_degree + 1):
        c = M[d]
        for key, lev in (("fixed", c.fixed), ("underlying", c.under)):
            entry = {"degree": d, "rank": lev.rank,
                     "labels": list(lev.labels) if lev.labels is not None else None}
            if not lev.is_free:
                entry["orders"] = list(lev.orders)
            levels[key].append(entry)
        for key, mat in (("res", c.res), ("tr", c.tr), ("conj", c.conj)):
            maps[key].append({"degree": d, "matrix": mat.tolist()})
    return {"prime": M.prime, "max_degree": M.max_degree, "levels": levels, "maps": maps}


def from_json_dict(data):
    p, D = data["prime"], data["max_degree"]
    lv = {}
    for key in ("fixed", "underlying"):
        lv[key] = {}
        for e in data["levels"][key]:
            orders = tuple(e.get("orders", [0] * e["rank"]))
            labels = tuple(e["labels"]) if e.get("labels") is not None else None
            lv[key][e["degree"]] = Level(orders, labels)
    mats = {k: {e["degree"]: e["matrix"] for e in data["maps"][k]} for k in ("res", "tr", "conj")}
    cells = {}
    for d in range(D + 1):
        fl, ul = lv["fixed"].get(d, Level()), lv["underlying"].get(d, Level())
        cells[d] = MackeyCell(p, fl, ul,
                              _as(mats["res"].get(d, []), ul.rank, fl.rank),
                              _as(mats["tr"].get(d, []), fl.rank, ul.rank),
                              _as(mats["conj"].get(d, []), ul.rank, ul.rank))
    return MackeyFunctor(p, D, cells=cells)


def dumps(M):
    return json.dumps(to_json_dict(M), sort_keys=True, ensure_ascii=False)


def loads(s):
    return from_json_dict(json.loads(s))

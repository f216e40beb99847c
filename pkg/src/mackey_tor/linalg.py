"""Exact integer linear algebra.

Everything here works over the integers with Python's arbitrary precision
ints: Smith normal form with transforms, saturated kernels, cokernel and
image invariants, and the homology of a pair of composable maps together
with the data needed to move between cycles and homology classes.

Matrices act on column vectors, so a map Z^n -> Z^m is an m x n matrix.
"""

from dataclasses import dataclass
from math import gcd


class CompositeNotZero(ValueError):
    """Raised when two maps that should compose to zero do not."""


class IntegerMatrix:
    """A dense matrix of exact integers.

    Instances are treated as immutable; all arithmetic returns new objects.
    The shape is stored explicitly so that 0 x n and m x 0 matrices are
    representable.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows, nrows=None, ncols=None):
        rows = tuple(tuple(int(e) for e in row) for row in rows)
        if nrows is None:
            nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("entries do not match the declared shape")
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns, nrows):
        columns = [list(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(nrows)], nrows, len(columns))

    @classmethod
    def diagonal(cls, entries, nrows=None, ncols=None):
        k = len(entries)
        nrows = k if nrows is None else nrows
        ncols = k if ncols is None else ncols
        m = [[0] * ncols for _ in range(nrows)]
        for i, e in enumerate(entries):
            m[i][i] = e
        return cls(m, nrows, ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def tolist(self):
        return [list(r) for r in self._rows]

    def row(self, i):
        return list(self._rows[i])

    def column(self, j):
        return [r[j] for r in self._rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"IntegerMatrix({self.tolist()!r}, {self.nrows}, {self.ncols})"

    @property
    def T(self):
        return IntegerMatrix(
            [[r[j] for r in self._rows] for j in range(self.ncols)], self.ncols, self.nrows
        )

    def __matmul__(self, other):
        if isinstance(other, IntegerMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
            out = []
            for r in self._rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append([sum(a * c[k] for k, a in nz) for c in cols])
            return IntegerMatrix(out, self.nrows, other.ncols)
        v = list(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(r, v) if a) for r in self._rows]

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntegerMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)],
            self.nrows,
            self.ncols,
        )

    def __neg__(self):
        return IntegerMatrix([[-a for a in r] for r in self._rows], self.nrows, self.ncols)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return IntegerMatrix([[k * a for a in r] for r in self._rows], self.nrows, self.ncols)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(any(r) for r in self._rows)

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return IntegerMatrix(
            [list(a) + list(b) for a, b in zip(self._rows, other._rows)],
            self.nrows,
            self.ncols + other.ncols,
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return IntegerMatrix(self._rows + other._rows, self.nrows + other.nrows, self.ncols)

    def submatrix(self, rows, cols):
        return IntegerMatrix([[self._rows[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[-1][-1] if n else 1


def as_matrix(m):
    return m if isinstance(m, IntegerMatrix) else IntegerMatrix(m)


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and d_i >= 2."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in t):
            raise ValueError("torsion coefficients must be >= 2")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError("torsion coefficients must form a divisibility chain")

    @classmethod
    def from_orders(cls, orders):
        """Normalise generator orders (0 = infinite cyclic, 1 = trivial)."""
        free = sum(1 for o in orders if o == 0)
        tors = [o for o in orders if o not in (0, 1)]
        if not tors:
            return cls(free, ())
        return cls(free, tuple(invariant_factors(IntegerMatrix.diagonal(tors))))

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def p_rank(self, p):
        return sum(1 for d in self.torsion if d % p == 0)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for r in a:
        r[i], r[j] = r[j], r[i]


def _snf_inplace(a, m, n, u=None, v=None, uinv=None):
    """Reduce the m x n list-matrix ``a`` to Smith form.

    Row operations are mirrored on ``u`` (m x m) and column operations on
    ``v`` (n x n) when given; ``uinv`` tracks the inverse of ``u``.
    Pivots are the smallest nonzero magnitude, ties broken by position.
    """
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            ai = a[i]
            for j in range(t, n):
                e = ai[j]
                if e and (best is None or abs(e) < best[0]):
                    best = (abs(e), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            _swap_rows(a, i, t)
            if u is not None:
                _swap_rows(u, i, t)
            if uinv is not None:
                _swap_cols(uinv, i, t)
        if j != t:
            _swap_cols(a, j, t)
            if v is not None:
                _swap_cols(v, j, t)
        while True:
            piv = a[t][t]
            dirty = False
            at = a[t]
            for i in range(t + 1, m):
                e = a[i][t]
                if e:
                    q = e // piv
                    ai = a[i]
                    for j in range(t, n):
                        if at[j]:
                            ai[j] -= q * at[j]
                    if u is not None:
                        ut, ui = u[t], u[i]
                        for j in range(m):
                            if ut[j]:
                                ui[j] -= q * ut[j]
                    if uinv is not None:
                        for r in uinv:
                            if r[i]:
                                r[t] += q * r[i]
                    if ai[t]:
                        dirty = True
            for j in range(t + 1, n):
                e = at[j]
                if e:
                    q = e // piv
                    for r in a:
                        if r[t]:
                            r[j] -= q * r[t]
                    if v is not None:
                        for r in v:
                            if r[t]:
                                r[j] -= q * r[t]
                    if at[j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t onto the pivot
                best = (abs(a[t][t]), t, t)
                for i in range(t + 1, m):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, n):
                    if at[j] and abs(at[j]) < best[0]:
                        best = (abs(at[j]), t, j)
                _, i, j = best
                if i != t:
                    _swap_rows(a, i, t)
                    if u is not None:
                        _swap_rows(u, i, t)
                    if uinv is not None:
                        _swap_cols(uinv, i, t)
                if j != t:
                    _swap_cols(a, j, t)
                    if v is not None:
                        _swap_cols(v, j, t)
                continue
            piv = a[t][t]
            bad = None
            for i in range(t + 1, m):
                ai = a[i]
                for j in range(t + 1, n):
                    if ai[j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # fold the offending row into the pivot row and keep going
            ab, at = a[bad], a[t]
            for j in range(t, n):
                at[j] += ab[j]
            if u is not None:
                ub, ut = u[bad], u[t]
                for j in range(m):
                    ut[j] += ub[j]
            if uinv is not None:
                for r in uinv:
                    if r[t]:
                        r[bad] -= r[t]
        if a[t][t] < 0:
            a[t] = [-e for e in a[t]]
            if u is not None:
                u[t] = [-e for e in u[t]]
            if uinv is not None:
                for r in uinv:
                    r[t] = -r[t]
        t += 1


def smith_normal_form(M):
    """Return (U, D, V) with U @ M @ V == D, U and V unimodular.

    D is diagonal with nonnegative entries d_1 | d_2 | ... (zeros last).
    """
    M = as_matrix(M)
    m, n = M.shape
    a = M.tolist()
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    _snf_inplace(a, m, n, u, v)
    return IntegerMatrix(u, m, m), IntegerMatrix(a, m, n), IntegerMatrix(v, n, n)


def smith_normal_form_with_inverse(M):
    """Like smith_normal_form but also returns U^{-1}: (U, U_inv, D, V)."""
    M = as_matrix(M)
    m, n = M.shape
    a = M.tolist()
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    ui = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    _snf_inplace(a, m, n, u, v, ui)
    return (IntegerMatrix(u, m, m), IntegerMatrix(ui, m, m),
            IntegerMatrix(a, m, n), IntegerMatrix(v, n, n))


def invariant_factors(M):
    """Nonzero diagonal entries of the Smith form of M, in order."""
    M = as_matrix(M)
    m, n = M.shape
    a = M.tolist()
    _snf_inplace(a, m, n)
    return [a[i][i] for i in range(min(m, n)) if a[i][i]]


def rank(M):
    return len(invariant_factors(M))


def _column_reduce(rows, nrows, ncols, want_inverse):
    """Unimodular column reduction of a sparse matrix.

    ``rows`` is a list of dicts {col: value}.  Returns (kernel columns,
    left-inverse rows or None, reduced pivot columns), all as sparse dicts.
    Pivot columns are in echelon form: the leading row of each is its pivot.
    """
    cols = [dict() for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j, e in r.items():
            if e:
                cols[j][i] = e
    trans = [{j: 1} for j in range(ncols)]
    inv = [{j: 1} for j in range(ncols)] if want_inverse else None
    active = list(range(ncols))

    def axpy(dst, src, q):
        # dst -= q * src
        for k, e in src.items():
            val = dst.get(k, 0) - q * e
            if val:
                dst[k] = val
            else:
                dst.pop(k, None)

    for i in range(nrows):
        cand = [j for j in active if cols[j].get(i)]
        while len(cand) > 1:
            j0 = min(cand, key=lambda j: (abs(cols[j][i]), j))
            piv = cols[j0][i]
            nxt = [j0]
            for j in cand:
                if j == j0:
                    continue
                q = cols[j][i] // piv
                axpy(cols[j], cols[j0], q)
                axpy(trans[j], trans[j0], q)
                if inv is not None:
                    axpy(inv[j0], inv[j], -q)
                if cols[j].get(i):
                    nxt.append(j)
            cand = nxt
        if cand:
            active.remove(cand[0])
    kernel = [trans[j] for j in active]
    left = [inv[j] for j in active] if inv is not None else None
    rest = set(active)
    pivots = [cols[j] for j in range(ncols) if j not in rest]
    return kernel, left, pivots


def _dense_rows_to_sparse(M):
    return [{j: e for j, e in enumerate(r) if e} for r in M.tolist()]


def _sparse_to_matrix_cols(cols, n):
    return IntegerMatrix.from_columns([[c.get(i, 0) for i in range(n)] for c in cols], n)


def _sparse_to_matrix_rows(rows, n):
    return IntegerMatrix([[r.get(j, 0) for j in range(n)] for r in rows], len(rows), n)


def kernel_basis(M):
    """Columns of the result form a basis of the (saturated) integer kernel."""
    M = as_matrix(M)
    ker, _, _ = _column_reduce(_dense_rows_to_sparse(M), M.nrows, M.ncols, False)
    return _sparse_to_matrix_cols(ker, M.ncols)


def kernel_with_left_inverse(M):
    """Kernel basis K (n x r) and L (r x n) with L @ K = I.

    For any v in the kernel lattice, L @ v gives its coordinates in K.
    """
    M = as_matrix(M)
    ker, left, _ = _column_reduce(_dense_rows_to_sparse(M), M.nrows, M.ncols, True)
    return _sparse_to_matrix_cols(ker, M.ncols), _sparse_to_matrix_rows(left, M.ncols)


def sparse_kernel(rows, nrows, ncols):
    """Kernel of a matrix given as sparse rows; returns (basis, left inverse) as sparse dicts."""
    ker, left, _ = _column_reduce(rows, nrows, ncols, True)
    return ker, left


def column_span_basis(columns, nrows):
    """An echelon basis (sparse dict columns) of the lattice spanned by ``columns``."""
    rows = [dict() for _ in range(nrows)]
    for j, c in enumerate(columns):
        for i, e in c.items():
            if e:
                rows[i][j] = e
    return _column_reduce(rows, nrows, len(columns), False)[2]


def quotient_generators_sparse(columns, nrows):
    """Generators of Z^nrows / span(columns): (dense vectors, orders), orders != 1.

    The span is put in echelon form, every pivot equal to +-1 is eliminated
    sparsely together with its row, and only the remaining small block goes
    through a dense Smith normal form.
    """
    cols = column_span_basis(columns, nrows)
    unit, rest = [], []
    for c in cols:
        r = min(c)
        (unit if abs(c[r]) == 1 else rest).append((r, c))
    removed = set()
    for r, c in unit:
        lead = c[r]
        for _, other in unit + rest:
            if other is c:
                continue
            q = other.get(r)
            if q:
                for k, e in c.items():
                    val = other.get(k, 0) - q * lead * e
                    if val:
                        other[k] = val
                    else:
                        other.pop(k, None)
        removed.add(r)
    keep = [i for i in range(nrows) if i not in removed]
    if not keep:
        return [], []
    X = IntegerMatrix([[c.get(i, 0) for _, c in rest] for i in keep], len(keep), len(rest))
    vecs, orders = quotient_generators(X)
    out = []
    for v in vecs:
        full = [0] * nrows
        for i, e in zip(keep, v):
            full[i] = e
        out.append(full)
    return out, orders


def cokernel_invariants(F, target_orders=None):
    """Invariants of B / F(A) where B = Z^m / diag(target_orders)."""
    F = as_matrix(F)
    rel = _relations(F.nrows, target_orders)
    full = F.hstack(rel) if rel.ncols else F
    facs = invariant_factors(full)
    orders = [d for d in facs] + [0] * (F.nrows - len(facs))
    return AbelianGroupInvariants.from_orders(orders)


def _relations(m, orders):
    if not orders:
        return IntegerMatrix.zeros(m, 0)
    cols = []
    for i, o in enumerate(orders):
        if o:
            c = [0] * m
            c[i] = o
            cols.append(c)
    return IntegerMatrix.from_columns(cols, m)


def image_invariants(F, target_orders=None):
    """Invariants of the image F(A) inside B = Z^m / diag(target_orders)."""
    F = as_matrix(F)
    m = F.nrows
    rel = _relations(m, target_orders)
    full = F.hstack(rel) if rel.ncols else F
    if full.ncols == 0:
        return AbelianGroupInvariants()
    U, D, _ = smith_normal_form(full)
    r = len([1 for i in range(min(D.shape)) if D[i, i]])
    if rel.ncols == 0:
        return AbelianGroupInvariants(r, ())
    # coordinates of the relations in the basis d_i * Uinv e_i of the span
    urel = U @ rel
    coords = [[urel[i, j] // D[i, i] for j in range(rel.ncols)] for i in range(r)]
    facs = invariant_factors(IntegerMatrix(coords, r, rel.ncols)) if r else []
    return AbelianGroupInvariants.from_orders(facs + [0] * (r - len(facs)))


@dataclass
class HomologyData:
    """Projection and lifting data for ker(d_out) / im(d_in).

    Homology generators are the SNF basis vectors with invariant factor not
    equal to 1; ``orders[g]`` is 0 for a free generator.
    """

    cycles: IntegerMatrix  # K: n x r
    left_inverse: IntegerMatrix  # L: r x n
    u: IntegerMatrix  # r x r
    u_inv: IntegerMatrix
    kept: list
    orders: list

    @property
    def invariants(self):
        return AbelianGroupInvariants.from_orders(self.orders)

    @property
    def ngens(self):
        return len(self.kept)

    def classes(self, z):
        """Class coordinates of a cycle, reduced modulo the generator orders."""
        c = self.u @ (self.left_inverse @ list(z))
        out = []
        for idx, o in zip(self.kept, self.orders):
            out.append(c[idx] % o if o else c[idx])
        return out

    def lift(self, coords):
        """A representative cycle for the given class coordinates."""
        r = self.cycles.ncols
        e = [0] * r
        for idx, a in zip(self.kept, coords):
            e[idx] = a
        return self.cycles @ (self.u_inv @ e)


def homology(d_in, d_out):
    """Homology of Z^m --d_in--> Z^n --d_out--> Z^k at the middle term.

    Returns (AbelianGroupInvariants, HomologyData).
    """
    d_in, d_out = as_matrix(d_in), as_matrix(d_out)
    if d_in.nrows != d_out.ncols:
        raise ValueError("maps are not composable")
    if d_in.ncols and d_out.nrows and not (d_out @ d_in).is_zero():
        raise CompositeNotZero("d_out @ d_in != 0")
    K, L = kernel_with_left_inverse(d_out)
    r = K.ncols
    X = L @ d_in if r else IntegerMatrix.zeros(0, d_in.ncols)
    if r and d_in.ncols and K @ X != d_in:
        raise CompositeNotZero("image of d_in is not inside ker d_out")
    if r == 0:
        data = HomologyData(K, L, IntegerMatrix.zeros(0, 0), IntegerMatrix.zeros(0, 0), [], [])
        return data.invariants, data
    U, Uinv, D, _ = smith_normal_form_with_inverse(X)
    kept, orders = [], []
    for i in range(r):
        d = D[i, i] if i < min(D.shape) else 0
        if d != 1:
            kept.append(i)
            orders.append(d)
    data = HomologyData(K, L, U, Uinv, kept, orders)
    return data.invariants, data


def solve_in_lattice(K, L, v):
    """Coordinates of v in the saturated basis K, or None if v is not in span(K)."""
    c = L @ list(v)
    if K @ c != list(v):
        return None
    return c


def quotient_generators(X):
    """Generators of Z^r / col-span(X), as (vectors, orders) with orders != 1."""
    r = X.nrows
    if r == 0:
        return [], []
    if X.ncols == 0:
        return [[int(i == j) for i in range(r)] for j in range(r)], [0] * r
    _, Uinv, D, _ = smith_normal_form_with_inverse(X)
    vecs, orders = [], []
    for i in range(r):
        d = D[i, i] if i < min(D.shape) else 0
        if d != 1:
            vecs.append(Uinv.column(i))
            orders.append(d)
    return vecs, orders


def vector_gcd(v):
    g = 0
    for e in v:
        g = gcd(g, e)
    return g

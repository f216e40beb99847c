"""Monomial-basis presentations of the Green/Tambara functors over C_p.

Three rings are provided, each truncated at an internal degree D:

* ``burnside(p)``: the Burnside functor A, fixed level Z{1, t}, underlying Z.
* ``free_green_underlying(p, D)``: A[x_e], underlying Z[x^(0), ..., x^(p-1)]
  with cyclic action; fixed level spanned by 1, t and t_v for orbit
  representatives v != 0.
* ``free_tambara_fixed(p, D)``: A[x_G], underlying Z[x], fixed level
  Z[t, n, x] / (t^2 = pt, t x^p = t n) with additive basis x^a n^b and t x^a.

Basis labels are plain tuples.  Underlying monomials are exponent tuples;
fixed-level labels are ``("1",)``, ``("t",)``, ``("tv", v)`` for the Green
ring and ``("x", a, b)`` (= x^a n^b), ``("tx", a)`` for the Tambara ring.

Every basis element also carries a *weight*: the exponent vector for the
Green ring (C_p permutes weights cyclically) and the total degree otherwise.
All maps in the resolutions are weight-homogeneous, which splits the linear
algebra into small blocks.
"""

from functools import lru_cache

from .elements import Element, add_into

GREEN = "green-underlying"
TAMBARA = "tambara-fixed"
BURNSIDE = "burnside"


class NotPrime(ValueError):
    pass


def is_prime(p):
    if not isinstance(p, int) or p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _check_prime(p):
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def _compositions(d, k):
    """Exponent vectors of length k and total d, in lexicographic order."""
    if k == 0:
        return [()] if d == 0 else []
    if k == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, k - 1):
            out.append((first,) + rest)
    return sorted(out)


class GreenRing:
    """Common interface; concrete rings override the label-level maps."""

    flavor = None
    has_norm = False

    def __init__(self, p, max_degree):
        _check_prime(p)
        self.p = p
        self.max_degree = max_degree
        self._ubasis = {}
        self._fbasis = {}

    # -- underlying level ---------------------------------------------------

    nvars = 0

    @property
    def unit_monomial(self):
        return (0,) * self.nvars

    def under_degree(self, m):
        return sum(m)

    def under_basis(self, d):
        if d not in self._ubasis:
            self._ubasis[d] = tuple(_compositions(d, self.nvars)) if d >= 0 else ()
        return self._ubasis[d]

    def under_mul(self, m1, m2):
        return tuple(a + b for a, b in zip(m1, m2))

    def conj_monomial(self, m, k=1):
        return m

    def weight(self, m):
        return m

    def conj_weight(self, w, k=1):
        return w

    def weight_class(self, w):
        return w

    def weight_is_fixed(self, w):
        return self.conj_weight(w) == w

    # -- fixed level ----------------------------------------------------------

    one = ("1",)
    t = ("t",)

    def fixed_basis(self, d):
        raise NotImplementedError

    def fixed_degree(self, f):
        raise NotImplementedError

    def fixed_weight(self, f):
        raise NotImplementedError

    def fixed_mul(self, f, g):
        raise NotImplementedError

    def res_label(self, f):
        raise NotImplementedError

    def tr_label(self, m):
        raise NotImplementedError

    def norm_label(self, m):
        raise NotImplementedError(f"{self.flavor} carries no norm")

    # -- Element plumbing (the ring is a module over itself) ------------------

    def label_degree(self, level, label):
        return self.fixed_degree(label) if level == "G" else self.under_degree(label)

    def label_weight(self, level, label):
        return self.fixed_weight(label) if level == "G" else self.weight(label)

    def act(self, level, r, label):
        if level == "G":
            return self.fixed_mul(r, label)
        return {self.under_mul(r, label): 1}

    def res_of(self, label):
        return self.res_label(label)

    def tr_of(self, label):
        return self.tr_label(label)

    def conj_of(self, label, k=1):
        return {self.conj_monomial(label, k): 1}

    # -- element constructors -------------------------------------------------

    def fixed(self, terms):
        return Element(self, "G", terms)

    def under(self, terms):
        return Element(self, "e", terms)

    def fixed_one(self):
        return self.fixed({self.one: 1})

    def fixed_t(self):
        return self.fixed({self.t: 1})

    def under_one(self):
        return self.under({self.unit_monomial: 1})

    def norm(self, m, coeff=1):
        """Norm of coeff * m for an underlying monomial m, as a fixed element.

        nm is multiplicative, so nm(c m) = nm(c) nm(m) with the Burnside norm
        nm(c) = c + (c^p - c)/p t on integers.
        """
        base = self.norm_label(m)
        p = self.p
        nc = {self.one: coeff}
        extra = (coeff ** p - coeff) // p
        if extra:
            nc[self.t] = extra
        out = {}
        for a, ca in nc.items():
            for b, cb in base.items():
                add_into(out, self.fixed_mul(a, b), ca * cb)
        return self.fixed(out)

    def augmentation_kills(self, level, label):
        """True if the label lies in the augmentation ideal (positive degree)."""
        return self.label_degree(level, label) > 0

    def __repr__(self):
        return f"{type(self).__name__}(p={self.p}, max_degree={self.max_degree})"


class BurnsideRing(GreenRing):
    flavor = BURNSIDE
    has_norm = True
    nvars = 0

    def __init__(self, p):
        super().__init__(p, 0)

    def fixed_basis(self, d):
        return (self.one, self.t) if d == 0 else ()

    def fixed_degree(self, f):
        return 0

    def fixed_weight(self, f):
        return ()

    def fixed_mul(self, f, g):
        if f == self.one:
            return {g: 1}
        if g == self.one:
            return {f: 1}
        return {self.t: self.p}

    def res_label(self, f):
        return {(): 1 if f == self.one else self.p}

    def tr_label(self, m):
        return {self.t: 1}

    def norm_label(self, m):
        return {self.one: 1}

    def norm_int(self, a):
        """nm(a) = a + (a^p - a)/p t, returned as (coefficient of 1, coefficient of t)."""
        return a, (a ** self.p - a) // self.p


class FreeGreenUnderlying(GreenRing):
    """A[x_e]: free Green functor on an underlying generator."""

    flavor = GREEN

    def __init__(self, p, max_degree):
        super().__init__(p, max_degree)
        self.nvars = p

    def conj_monomial(self, m, k=1):
        k %= self.p
        if k == 0:
            return m
        # gamma x^(i) = x^(i+1): exponent of x^(i+1) becomes that of x^(i)
        return m[-k:] + m[:-k]

    def conj_weight(self, w, k=1):
        return self.conj_monomial(w, k)

    def weight_class(self, w):
        return min(self.conj_monomial(w, k) for k in range(self.p))

    def orbit_rep(self, v):
        return self.weight_class(tuple(v))

    def fixed_basis(self, d):
        if d not in self._fbasis:
            if d == 0:
                self._fbasis[d] = (self.one, self.t)
            elif d < 0:
                self._fbasis[d] = ()
            else:
                reps = sorted({self.orbit_rep(v) for v in self.under_basis(d)})
                self._fbasis[d] = tuple(("tv", v) for v in reps)
        return self._fbasis[d]

    def fixed_degree(self, f):
        return sum(f[1]) if f[0] == "tv" else 0

    def fixed_weight(self, f):
        return f[1] if f[0] == "tv" else (0,) * self.p

    def _tv(self, v):
        return ("tv", self.orbit_rep(v)) if any(v) else self.t

    def fixed_mul(self, f, g):
        if f == self.one:
            return {g: 1}
        if g == self.one:
            return {f: 1}
        if f == self.t:
            return {g: self.p}
        if g == self.t:
            return {f: self.p}
        v, w = f[1], g[1]
        out = {}
        for k in range(self.p):
            gw = self.conj_monomial(w, k)
            lab = self._tv(tuple(a + b for a, b in zip(v, gw)))
            out[lab] = out.get(lab, 0) + 1
        return out

    def res_label(self, f):
        if f == self.one:
            return {self.unit_monomial: 1}
        if f == self.t:
            return {self.unit_monomial: self.p}
        out = {}
        for k in range(self.p):
            m = self.conj_monomial(f[1], k)
            out[m] = out.get(m, 0) + 1
        return out

    def tr_label(self, m):
        return {self._tv(m): 1}

    def norm_element(self):
        """The invariant monomial x^(0) x^(1) ... x^(p-1) (underlying level)."""
        return self.under({(1,) * self.p: 1})

    def x(self, i):
        e = [0] * self.p
        e[i % self.p] = 1
        return self.under({tuple(e): 1})


class FreeTambaraFixed(GreenRing):
    """A[x_G]: free Tambara functor on a fixed generator."""

    flavor = TAMBARA
    has_norm = True
    nvars = 1
    one = ("x", 0, 0)
    t = ("tx", 0)

    def fixed_basis(self, d):
        if d not in self._fbasis:
            if d < 0:
                self._fbasis[d] = ()
            else:
                labs = [("x", d - self.p * b, b) for b in range(d // self.p + 1)]
                labs.append(("tx", d))
                self._fbasis[d] = tuple(labs)
        return self._fbasis[d]

    def fixed_degree(self, f):
        return f[1] + self.p * f[2] if f[0] == "x" else f[1]

    def fixed_weight(self, f):
        return (self.fixed_degree(f),)

    def fixed_mul(self, f, g):
        p = self.p
        if f[0] == "x" and g[0] == "x":
            return {("x", f[1] + g[1], f[2] + g[2]): 1}
        if f[0] == "tx" and g[0] == "tx":
            return {("tx", f[1] + g[1]): p}
        if f[0] == "tx":
            f, g = g, f
        # t x^c * x^a n^b = t x^(a + c + p b), using t n = t x^p
        return {("tx", g[1] + f[1] + p * f[2]): 1}

    def res_label(self, f):
        if f[0] == "x":
            return {(f[1] + self.p * f[2],): 1}
        return {(f[1],): self.p}

    def tr_label(self, m):
        return {("tx", m[0]): 1}

    def norm_label(self, m):
        return {("x", 0, m[0]): 1}

    def fx(self, a=1):
        return self.fixed({("x", a, 0): 1})

    def fn(self, b=1):
        return self.fixed({("x", 0, b): 1})

    def ux(self, a=1):
        return self.under({(a,): 1})


@lru_cache(maxsize=None)
def burnside(p):
    return BurnsideRing(p)


@lru_cache(maxsize=None)
def free_green_underlying(p, max_degree):
    return FreeGreenUnderlying(p, max_degree)


@lru_cache(maxsize=None)
def free_tambara_fixed(p, max_degree):
    return FreeTambaraFixed(p, max_degree)


def make_ring(flavor, p, max_degree):
    if flavor == GREEN:
        return free_green_underlying(p, max_degree)
    if flavor == TAMBARA:
        return free_tambara_fixed(p, max_degree)
    if flavor == BURNSIDE:
        return burnside(p)
    raise ValueError(f"unknown flavor {flavor!r}")

"""Free modules over the Green rings and morphisms between them.

For a generator w at level G the module R{w_G} has fixed basis f.w (f a
fixed-level ring label) and underlying basis m.res(w).  For a generator at
level e, R{w_e} has underlying basis m.w^(k), k = 0..p-1, and fixed basis
tr(m.w^(0)) for every underlying monomial m.  Labels:

    ("G", i, f)     f . w_i                 (w_i at level G)
    ("R", i, m)     m . res(w_i)            (w_i at level G)
    ("T", i, m)     tr(m . w_i^(0))         (w_i at level e)
    ("U", i, m, k)  m . w_i^(k)             (w_i at level e)

A morphism is given by the image of each generator (a fixed element for
level-G generators, the image of w^(0) for level-e ones) and is extended
R-linearly, equivariantly and compatibly with transfer.
"""

from collections import namedtuple

from .elements import Element, add_into
from .linalg import IntegerMatrix


class InhomogeneousImage(ValueError):
    pass


Generator = namedtuple("Generator", "name level degree weight")


class FreeRModule:
    def __init__(self, ring, generators):
        self.ring = ring
        self.p = ring.p
        gens = []
        for g in generators:
            if not isinstance(g, Generator):
                g = Generator(*g) if len(g) == 4 else Generator(g[0], g[1], g[2], None)
            if g.level not in ("G", "e"):
                raise ValueError(f"bad level for generator {g.name}")
            if g.degree < 0:
                raise ValueError("generator degrees must be nonnegative")
            w = g.weight
            if w is None:
                w = self._default_weight(g.degree)
            w = tuple(w)
            if g.level == "G" and not ring.weight_is_fixed(w):
                raise ValueError(f"level-G generator {g.name} needs a C_p-fixed weight")
            gens.append(Generator(g.name, g.level, g.degree, w))
        self.generators = tuple(gens)
        self.index = {g.name: i for i, g in enumerate(gens)}
        if len(self.index) != len(gens):
            raise ValueError("duplicate generator names")
        self._basis_cache = {}

    def _default_weight(self, d):
        ring = self.ring
        if ring.nvars == 0:
            return ()
        if ring.nvars == 1:
            return (d,)
        if d % ring.p:
            raise ValueError("a weight is required for this generator")
        return (d // ring.p,) * ring.p

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        gs = ", ".join(f"{g.name}_{g.level}[{g.degree}]" for g in self.generators)
        return f"FreeRModule({gs})"

    # -- labels ---------------------------------------------------------------

    def _wadd(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def label_degree(self, level, lab):
        g = self.generators[lab[1]]
        if lab[0] == "G":
            return self.ring.fixed_degree(lab[2]) + g.degree
        return self.ring.under_degree(lab[2]) + g.degree

    def label_weight(self, level, lab):
        ring = self.ring
        g = self.generators[lab[1]]
        kind = lab[0]
        if kind == "G":
            return ring.weight_class(self._wadd(ring.fixed_weight(lab[2]), g.weight))
        if kind == "T":
            return ring.weight_class(self._wadd(ring.weight(lab[2]), g.weight))
        if kind == "R":
            return self._wadd(ring.weight(lab[2]), g.weight)
        return self._wadd(ring.weight(lab[2]), ring.conj_weight(g.weight, lab[3]))

    def basis(self, d, level):
        key = (d, level)
        if key not in self._basis_cache:
            ring = self.ring
            out = []
            for i, g in enumerate(self.generators):
                e = d - g.degree
                if e < 0:
                    continue
                if level == "G":
                    if g.level == "G":
                        out.extend(("G", i, f) for f in ring.fixed_basis(e))
                    else:
                        out.extend(("T", i, m) for m in ring.under_basis(e))
                else:
                    if g.level == "G":
                        out.extend(("R", i, m) for m in ring.under_basis(e))
                    else:
                        for m in ring.under_basis(e):
                            out.extend(("U", i, m, k) for k in range(self.p))
            self._basis_cache[key] = tuple(out)
        return self._basis_cache[key]

    def blocks(self, d, level):
        """Basis at degree d split by weight (underlying) or weight class (fixed)."""
        key = (d, level, "blocks")
        if key not in self._basis_cache:
            out = {}
            for lab in self.basis(d, level):
                out.setdefault(self.label_weight(level, lab), []).append(lab)
            self._basis_cache[key] = {w: tuple(v) for w, v in out.items()}
        return self._basis_cache[key]

    def generator_part(self, d, level):
        """Basis elements at degree d whose ring coefficient has degree 0."""
        ring = self.ring
        return tuple(lab for lab in self.basis(d, level)
                     if not ring.augmentation_kills("G" if lab[0] == "G" else "e", lab[2]))

    # -- structure maps on labels ---------------------------------------------

    def act(self, level, r, lab):
        ring = self.ring
        kind, i = lab[0], lab[1]
        if level == "G":
            if kind == "G":
                return {("G", i, f): c for f, c in ring.fixed_mul(r, lab[2]).items()}
            out = {}
            for m, c in ring.res_label(r).items():
                k = ("T", i, ring.under_mul(m, lab[2]))
                out[k] = out.get(k, 0) + c
            return out
        m = ring.under_mul(r, lab[2])
        if kind == "R":
            return {("R", i, m): 1}
        return {("U", i, m, lab[3]): 1}

    def res_of(self, lab):
        ring = self.ring
        kind, i = lab[0], lab[1]
        if kind == "G":
            return {("R", i, m): c for m, c in ring.res_label(lab[2]).items()}
        out = {}
        for k in range(self.p):
            key = ("U", i, ring.conj_monomial(lab[2], k), k)
            out[key] = out.get(key, 0) + 1
        return out

    def tr_of(self, lab):
        ring = self.ring
        kind, i = lab[0], lab[1]
        if kind == "R":
            return {("G", i, f): c for f, c in ring.tr_label(lab[2]).items()}
        k = lab[3]
        return {("T", i, ring.conj_monomial(lab[2], -k % self.p)): 1}

    def conj_of(self, lab, k=1):
        ring = self.ring
        if lab[0] == "R":
            return {("R", lab[1], ring.conj_monomial(lab[2], k)): 1}
        return {("U", lab[1], ring.conj_monomial(lab[2], k), (lab[3] + k) % self.p): 1}

    # -- element constructors -------------------------------------------------

    def gen(self, name, k=0):
        """The generator w (level G) or its conjugate w^(k) (level e)."""
        i = self.index[name]
        g = self.generators[i]
        if g.level == "G":
            return Element(self, "G", {("G", i, self.ring.one): 1})
        return Element(self, "e", {("U", i, self.ring.unit_monomial, k % self.p): 1})

    def R(self, name):
        return self.gen(name).res()

    def T(self, name):
        return self.gen(name).tr()

    def zero(self, level):
        return Element(self, level, {})

    # -- dense structure maps -------------------------------------------------

    def structure_matrix(self, d, which):
        """Dense res / tr / conj matrix at degree d."""
        src_level = "G" if which == "res" else "e"
        tgt_level = "e" if which in ("res", "conj") else "G"
        src = self.basis(d, src_level)
        tgt = self.basis(d, tgt_level)
        idx = {lab: j for j, lab in enumerate(tgt)}
        fn = {"res": self.res_of, "tr": self.tr_of, "conj": self.conj_of}[which]
        cols = []
        for lab in src:
            col = [0] * len(tgt)
            for k, c in fn(lab).items():
                col[idx[k]] += c
            cols.append(col)
        return IntegerMatrix.from_columns(cols, len(tgt))

    def as_mackey(self, max_degree=None, labels=True):
        from .mackey import MackeyFunctor, Level

        D = self.ring.max_degree if max_degree is None else max_degree
        fixed, under, res, tr, conj = {}, {}, {}, {}, {}
        for d in range(D + 1):
            fb, ub = self.basis(d, "G"), self.basis(d, "e")
            fixed[d] = Level.free(len(fb), [self.format_label(x) for x in fb] if labels else None)
            under[d] = Level.free(len(ub), [self.format_label(x) for x in ub] if labels else None)
            res[d] = self.structure_matrix(d, "res")
            tr[d] = self.structure_matrix(d, "tr")
            conj[d] = self.structure_matrix(d, "conj")
        return MackeyFunctor(self.p, D, fixed, under, res, tr, conj)

    def format_label(self, lab):
        name = self.generators[lab[1]].name
        mono = _fmt_ring_label(self.ring, lab[2])
        if lab[0] == "G":
            return f"{mono}*{name}" if mono != "1" else name
        if lab[0] == "R":
            return f"{mono}*R({name})" if mono != "1" else f"R({name})"
        if lab[0] == "T":
            return f"T({mono}*{name})" if mono != "1" else f"T({name})"
        return f"{mono}*{name}^({lab[3]})" if mono != "1" else f"{name}^({lab[3]})"


def _fmt_ring_label(ring, lab):
    if lab and isinstance(lab[0], str):
        if lab[0] in ("1", "t"):
            return lab[0]
        if lab[0] == "tv":
            return "t_" + "".join(str(a) for a in lab[1])
        if lab[0] == "x":
            a, b = lab[1], lab[2]
            s = "".join(
                part for part in (
                    ("x" if a == 1 else f"x^{a}") if a else "",
                    ("n" if b == 1 else f"n^{b}") if b else "",
                )
            )
            return s or "1"
        if lab[0] == "tx":
            return "t" + (("x" if lab[1] == 1 else f"x^{lab[1]}") if lab[1] else "")
    if not any(lab):
        return "1"
    if len(lab) == 1:
        return "x" if lab[0] == 1 else f"x^{lab[0]}"
    out = []
    for i, a in enumerate(lab):
        if a:
            out.append(f"x{i}" if a == 1 else f"x{i}^{a}")
    return "".join(out)


class FreeModuleMorphism:
    """R-linear map between free modules, given on generators."""

    def __init__(self, source, target, images, check=True):
        if source.ring is not target.ring:
            raise ValueError("source and target live over different rings")
        self.source = source
        self.target = target
        imgs = []
        for g in source.generators:
            img = images.get(g.name)
            if img is None or (isinstance(img, int) and img == 0):
                img = target.zero(g.level)
            if img.space is not target:
                raise TypeError(f"image of {g.name} is not in the target module")
            if img.level != g.level:
                raise InhomogeneousImage(f"image of {g.name} lives at the wrong level")
            if check and img.terms:
                if img.degrees() != {g.degree}:
                    raise InhomogeneousImage(
                        f"image of {g.name} has degrees {sorted(img.degrees())}, expected {g.degree}")
                ring = source.ring
                want = ring.weight_class(g.weight) if g.level == "G" else g.weight
                if img.weights() != {want}:
                    raise InhomogeneousImage(f"image of {g.name} is not weight-homogeneous")
            imgs.append(img)
        self.images = tuple(imgs)
        self._res_cache = {}
        self._conj_cache = {}
        self._col_cache = {}

    def image(self, name):
        return self.images[self.source.index[name]]

    def image_of(self, lab):
        """Image of a source basis label, as a dict over target labels."""
        hit = self._col_cache.get(lab)
        if hit is not None:
            return hit
        tgt = self.target
        kind, i = lab[0], lab[1]
        img = self.images[i]
        out = {}
        if kind == "G":
            for b, c in img.terms.items():
                add_into(out, tgt.act("G", lab[2], b), c)
        elif kind == "T":
            for b, c in img.terms.items():
                for b2, c2 in tgt.act("e", lab[2], b).items():
                    add_into(out, tgt.tr_of(b2), c * c2)
        elif kind == "R":
            r = self._res_cache.get(i)
            if r is None:
                r = self._res_cache[i] = img.res().terms
            for b, c in r.items():
                add_into(out, tgt.act("e", lab[2], b), c)
        else:
            key = (i, lab[3])
            r = self._conj_cache.get(key)
            if r is None:
                r = self._conj_cache[key] = img.conj(lab[3]).terms
            for b, c in r.items():
                add_into(out, tgt.act("e", lab[2], b), c)
        self._col_cache[lab] = out
        return out

    def apply(self, elem):
        out = {}
        for lab, c in elem.terms.items():
            add_into(out, self.image_of(lab), c)
        return Element(self.target, elem.level, out)

    def matrix(self, d, level, source_labels=None, target_labels=None):
        """Matrix of the map between the given label lists (default: full degree d)."""
        src = self.source.basis(d, level) if source_labels is None else source_labels
        tgt = self.target.basis(d, level) if target_labels is None else target_labels
        idx = {lab: j for j, lab in enumerate(tgt)}
        rows = [[0] * len(src) for _ in range(len(tgt))]
        for j, lab in enumerate(src):
            for k, c in self.image_of(lab).items():
                i = idx.get(k)
                if i is None:
                    if target_labels is None:
                        raise KeyError(f"image term {k} outside the target basis")
                    continue
                rows[i][j] += c
        return IntegerMatrix(rows, len(tgt), len(src))

    def sparse_rows(self, src, tgt):
        """Matrix between label lists as sparse rows {col: value}."""
        idx = {lab: j for j, lab in enumerate(tgt)}
        rows = [dict() for _ in tgt]
        for j, lab in enumerate(src):
            for k, c in self.image_of(lab).items():
                i = idx[k]
                rows[i][j] = rows[i].get(j, 0) + c
        return rows

    def compose(self, other):
        """self o other."""
        if other.target is not self.source:
            raise ValueError("maps are not composable")
        imgs = {g.name: self.apply(img) for g, img in zip(other.source.generators, other.images)}
        return FreeModuleMorphism(other.source, self.target, imgs, check=False)

    def is_zero(self):
        return all(img.is_zero() for img in self.images)


def free_module(ring, gens):
    return FreeRModule(ring, gens)


def expand_morphism(f, max_degree=None):
    """The degreewise matrices of f as a MackeyMorphism between the expansions."""
    from .mackey import MackeyMorphism

    D = f.source.ring.max_degree if max_degree is None else max_degree
    src = f.source.as_mackey(D, labels=False)
    tgt = f.target.as_mackey(D, labels=False)
    fixed = {d: f.matrix(d, "G") for d in range(D + 1)}
    under = {d: f.matrix(d, "e") for d in range(D + 1)}
    return MackeyMorphism(src, tgt, fixed, under)

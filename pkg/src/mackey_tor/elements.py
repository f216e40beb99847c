"""Sparse elements of Green rings and their free modules.

An ``Element`` is a finite integer combination of basis labels at one level
("G" for C_p/C_p, "e" for C_p/e) of some *space*: a ring or a free module.
The space supplies the label-level structure maps; this class only does the
bookkeeping, so ring and module elements share one arithmetic.
"""


def add_into(acc, terms, scale=1):
    for k, v in terms.items():
        nv = acc.get(k, 0) + scale * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


class Element:
    __slots__ = ("space", "level", "terms")

    def __init__(self, space, level, terms=None):
        if level not in ("G", "e"):
            raise ValueError(f"bad level {level!r}")
        self.space = space
        self.level = level
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def _check(self, other):
        if not isinstance(other, Element) or other.space is not self.space:
            raise TypeError("elements live in different spaces")
        if other.level != self.level:
            raise TypeError("elements live at different levels")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return Element(self.space, self.level, add_into(dict(self.terms), other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        self._check(other)
        return Element(self.space, self.level, add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return Element(self.space, self.level, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return Element(self.space, self.level, {k: other * v for k, v in self.terms.items()})
        if isinstance(other, Element):
            # ring element times ring or module element at the same level
            return other.scaled_by(self)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, k):
        if self.space is not getattr(self.space, "ring", self.space):
            raise TypeError("only ring elements can be raised to powers")
        out = Element(self.space, self.level, {self._unit(): 1})
        for _ in range(k):
            out = self * out
        return out

    def _unit(self):
        ring = self.space
        return ring.one if self.level == "G" else ring.unit_monomial

    def scaled_by(self, r):
        """r * self, where r is a ring element at the same level."""
        ring = getattr(self.space, "ring", self.space)
        if r.space is not ring:
            raise TypeError("coefficient is not in the ground ring")
        if r.level != self.level:
            raise TypeError("coefficient and element live at different levels")
        out = {}
        for a, ca in r.terms.items():
            for b, cb in self.terms.items():
                add_into(out, self.space.act(self.level, a, b), ca * cb)
        return Element(self.space, self.level, out)

    def res(self):
        if self.level != "G":
            raise TypeError("restriction starts at the fixed level")
        out = {}
        for k, v in self.terms.items():
            add_into(out, self.space.res_of(k), v)
        return Element(self.space, "e", out)

    def tr(self):
        if self.level != "e":
            raise TypeError("transfer starts at the underlying level")
        out = {}
        for k, v in self.terms.items():
            add_into(out, self.space.tr_of(k), v)
        return Element(self.space, "G", out)

    def conj(self, k=1):
        if self.level != "e":
            return self
        out = {}
        for lab, v in self.terms.items():
            add_into(out, self.space.conj_of(lab, k), v)
        return Element(self.space, "e", out)

    def degrees(self):
        return {self.space.label_degree(self.level, k) for k in self.terms}

    def weights(self):
        return {self.space.label_weight(self.level, k) for k in self.terms}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Element):
            return NotImplemented
        return (self.space is other.space and self.level == other.level
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.space), self.level, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{v}*{k}" for k, v in sorted(self.terms.items(), key=repr)]
        return " + ".join(parts)

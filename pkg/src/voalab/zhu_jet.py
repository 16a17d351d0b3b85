"""Zhu's commutative algebra via C2 spans, and jet/arc ring presentations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import Poly, PolyRing, parse_poly
from .lca_engine import State, basis_w2, nth_product
from .linalg import Echelon, rank
from .orbifold import ClassicalAction, DiagonalAction, QuadraticFamily, WordSpace

ARC = "inf"


class ZhuError(ValueError):
    pass


# ---------------------------------------------------------------------------
# presentations

@dataclass(frozen=True)
class Presentation:
    """C[vars] / (relations) with doubled variable weights."""
    variables: tuple            # ((name, weight2x), ...)
    relations: tuple = ()       # Poly over self.ring

    def __post_init__(self):
        names = [v[0] for v in self.variables]
        if len(set(names)) != len(names):
            raise ZhuError("variable names must be distinct")
        for f in self.relations:
            if f.ring != self.ring:
                raise ZhuError("relation lives in a different ring")
            if not f.is_homogeneous():
                raise ZhuError(f"relation {f} is not homogeneous")

    @property
    def ring(self):
        return PolyRing([v[0] for v in self.variables], [v[1] for v in self.variables])

    @classmethod
    def parse(cls, variables, relations=()):
        """variables: [(name, weight)] with weight a half-integer; relations as strings."""
        vs = tuple((n, int(Fraction(w) * 2)) for n, w in variables)
        if len({v[0] for v in vs}) != len(vs):
            raise ZhuError("variable names must be distinct")
        ring = PolyRing([v[0] for v in vs], [v[1] for v in vs])
        return cls(vs, tuple(parse_poly(r, ring) for r in relations))

    @classmethod
    def from_json(cls, obj):
        vs = tuple((v["name"], int(v["weight2x"])) for v in obj["vars"])
        ring = PolyRing([v[0] for v in vs], [v[1] for v in vs])
        return cls(vs, tuple(parse_poly(r, ring) for r in obj.get("relations", [])))

    def to_json(self):
        return {"vars": [{"name": n, "weight2x": w} for n, w in self.variables],
                "relations": [str(f) for f in self.relations]}


@dataclass(frozen=True)
class JetPresentation:
    source: Presentation
    m: object                   # int, or ARC together with a weight cutoff
    presentation: Presentation
    cutoff: object = None

    @property
    def variables(self):
        return self.presentation.variables

    @property
    def relations(self):
        return self.presentation.relations

    def to_json(self):
        out = self.presentation.to_json()
        out["m"] = self.m
        if self.cutoff is not None:
            out["cutoff"] = str(self.cutoff)
        return out


def jet_name(name, i):
    return f"{name}_{i}"


def _lift(f, ring, names):
    # y -> y_0
    idx = [ring.index[jet_name(n, 0)] for n in names]
    terms = {}
    for e, c in f.terms.items():
        big = [0] * len(ring)
        for i, x in zip(idx, e):
            big[i] = x
        terms[tuple(big)] = c
    return Poly(ring, terms)


def jet_presentation(p, m, cutoff=None):
    """m-jets of Spec R (m an int), or the arc ring truncated at weight `cutoff` (m = ARC)."""
    base = p.variables
    if m == ARC:
        if cutoff is None:
            raise ZhuError("the arc ring needs a weight cutoff")
        c2 = int(Fraction(cutoff) * 2)
        if any(w <= 0 for _, w in base):
            raise ZhuError("infinite graded pieces")
        top = {n: max(-1, (c2 - w) // 2) for n, w in base}
    else:
        if not isinstance(m, int) or m < 0:
            raise ZhuError("m must be a nonnegative integer")
        top = {n: m for n, _ in base}
    vs = []
    for n, w in base:
        for i in range(top[n] + 1):
            vs.append((jet_name(n, i), w + 2 * i))
    if any(top[n] < 0 for n, _ in base):
        raise ZhuError("cutoff below a base variable weight")
    ring = PolyRing([v[0] for v in vs], [v[1] for v in vs])
    D = {jet_name(n, i): ring.gen(jet_name(n, i + 1)) for n, _ in base for i in range(top[n])}
    names = [n for n, _ in base]
    rels = []
    for f in p.relations:
        g = _lift(f, ring, names)
        s = 0
        while True:
            if m != ARC and s > m:
                break
            if m == ARC and (not g or g.weights2x()[0] > c2):
                break
            rels.append(g)
            g = g.derive(D)
            s += 1
    return JetPresentation(p, m, Presentation(tuple(vs), tuple(rels)), cutoff)


@dataclass
class GradedDims:
    dims: dict = field(default_factory=dict)    # weight (Fraction) -> int

    def __getitem__(self, w):
        return self.dims[Fraction(w)]

    def as_tuple(self, integral=True):
        ws = sorted(self.dims)
        if integral:
            ws = [w for w in ws if w.denominator == 1]
        return tuple(self.dims[w] for w in ws)

    def to_json(self):
        return {str(w): d for w, d in sorted(self.dims.items())}


def _half_steps(weights2x):
    return any(w % 2 for w in weights2x)


def truncated_hilbert(p, maxweight):
    """Dimensions of the weight pieces of C[vars]/(relations) up to maxweight."""
    if isinstance(p, JetPresentation):
        p = p.presentation
    ring = p.ring
    if any(w <= 0 for w in ring.weights2x):
        raise ZhuError("infinite graded pieces")
    top = int(Fraction(maxweight) * 2)
    step = 1 if _half_steps(ring.weights2x) else 2
    rels = [(f.weights2x()[0], f) for f in p.relations if f]
    out = GradedDims()
    for w2 in range(0, top + 1, step):
        monos = ring.monomials_of_weight(w2)
        vecs = []
        for rw, f in rels:
            if rw > w2:
                continue
            for e in ring.monomials_of_weight(w2 - rw):
                vecs.append({tuple(a + b for a, b in zip(e, k)): c for k, c in f.terms.items()})
        out.dims[Fraction(w2, 2)] = len(monos) - rank(vecs)
    return out


# ---------------------------------------------------------------------------
# subalgebra selectors

class Full:
    name = "full"

    def validate(self, h, maxweight):
        pass

    def basis(self, h, w2):
        return [State(h, {m: 1}) for m in basis_w2(h, w2)]


class Invariants:
    """Fixed points of a DiagonalAction, a ClassicalAction or a QuadraticFamily's group."""
    name = "invariants"

    def __init__(self, action):
        if isinstance(action, QuadraticFamily):
            action = action.action()
        if not isinstance(action, (DiagonalAction, ClassicalAction)):
            raise ZhuError("unsupported action")
        self.action = action

    def validate(self, h, maxweight):
        self.action.validate(h)

    def basis(self, h, w2):
        return [State(h, v) for v in self.action.invariant_vectors(h, w2)]


class GeneratedBy:
    """Span of normally ordered words in the given states and their derivatives."""
    name = "generated-by"

    def __init__(self, generators, names=None):
        self.generators = generators
        self.names = names
        self._space = None

    def space(self, h):
        if self._space is None or self._space.h is not h:
            self._space = WordSpace(h, self.generators, self.names)
        return self._space

    def validate(self, h, maxweight):
        sp = self.space(h)
        top = int(Fraction(maxweight) * 2)
        for i, a in enumerate(sp.gens):
            for j, b in enumerate(sp.gens):
                for n in range(0, (sp.w2[i] + sp.w2[j]) // 2):
                    r = nth_product(a, n, b)
                    if not r:
                        continue
                    w2 = r.weights2x()[0]
                    if w2 > top:
                        continue
                    e, _ = sp.echelon(w2)
                    if not e.contains(r.terms):
                        raise ZhuError(f"selector not product-closed: "
                                       f"({sp.names[i]})_({n})({sp.names[j]}) = {r}")

    def basis(self, h, w2):
        sp = self.space(h)
        e = Echelon()
        out = []
        for wd in sp.words(w2):
            st = sp.evaluate(wd)
            if e.insert(st.terms) is None:
                out.append(st)
        return out


def _selector(sel):
    if sel is None or sel == "full":
        return Full()
    if isinstance(sel, (Full, Invariants, GeneratedBy)):
        return sel
    if isinstance(sel, (DiagonalAction, ClassicalAction, QuadraticFamily)):
        return Invariants(sel)
    if isinstance(sel, (list, tuple)):
        return GeneratedBy(sel)
    raise ZhuError(f"unknown selector {sel!r}")


# ---------------------------------------------------------------------------
# C2 spans

class ZhuComputation:
    """Caches subalgebra bases and C2 echelons weight by weight."""

    def __init__(self, h, selector=None, strong_generators=None):
        self.h = h
        self.sel = _selector(selector)
        self.strong = strong_generators
        self._basis = {}
        self._c2 = {}
        self._validated = -1

    def validate(self, maxweight):
        top = int(Fraction(maxweight) * 2)
        if top > self._validated:
            self.sel.validate(self.h, maxweight)
            self._validated = top

    def basis(self, w2):
        b = self._basis.get(w2)
        if b is None:
            b = self.sel.basis(self.h, w2)
            self._basis[w2] = b
        return b

    def c2(self, w2):
        e = self._c2.get(w2)
        if e is not None:
            return e
        e = Echelon()
        if self.strong is None:
            # a_(-2)b with wt a + wt b + 1 = w, a and b running over bases
            for wa in range(1, w2 - 1):
                wb = w2 - 2 - wa
                if wb < 0:
                    break
                for a in self.basis(wa):
                    for b in self.basis(wb):
                        r = nth_product(a, -2, b)
                        if r:
                            e.insert(r.terms)
        else:
            # strongly generated: x_(-n)b for strong generators x and n >= 2 span C2
            for x in self.strong:
                wx = x.weights2x()[0]
                n = 2
                while wx + 2 * (n - 1) <= w2:
                    wb = w2 - wx - 2 * (n - 1)
                    for b in self.basis(wb):
                        r = nth_product(x, -n, b)
                        if r:
                            e.insert(r.terms)
                    n += 1
        self._c2[w2] = e
        return e

    def dims(self, maxweight, step=2):
        self.validate(maxweight)
        out = GradedDims()
        for w2 in range(0, int(Fraction(maxweight) * 2) + 1, step):
            e = Echelon()
            for st in self.basis(w2):
                e.insert(st.terms)
            out.dims[Fraction(w2, 2)] = len(e) - len(self.c2(w2))
        return out

    def contains(self, expr):
        ws = expr.weights2x()
        if not ws:
            return True
        if len(ws) != 1:
            raise ZhuError("expression is not homogeneous")
        w2 = ws[0]
        sub = Echelon()
        for st in self.basis(w2):
            sub.insert(st.terms)
        if not sub.contains(expr.terms):
            raise ZhuError("expression is not in the selected subalgebra")
        return self.c2(w2).contains(expr.terms)


def _step(h):
    return 1 if any(w % 2 for w in h.w2) else 2


def c2_graded_dims(h, selector=None, maxweight=4, strong_generators=None):
    """dim V_w - dim C2(V)_w for the selected subalgebra V."""
    z = ZhuComputation(h, selector, strong_generators)
    return z.dims(maxweight, _step(h))


def relation_in_zhu(h, selector, expr, strong_generators=None, computation=None):
    """True iff expr lies in the C2 span of the selected subalgebra (its image in R vanishes)."""
    z = computation or ZhuComputation(h, selector, strong_generators)
    ws = expr.weights2x()
    if ws:
        z.validate(Fraction(ws[-1], 2))
    return z.contains(expr)


# ---------------------------------------------------------------------------
# classical freeness

@dataclass
class ProbeReport:
    rows: list = field(default_factory=list)     # (weight, arc dim, voa dim)

    @property
    def strict(self):
        return [r[0] for r in self.rows if r[1] > r[2]]

    def equal_through(self):
        last = None
        for w, a, v in self.rows:
            if a != v:
                break
            last = w
        return last

    def to_json(self):
        return {"rows": [{"weight": str(w), "arc": a, "voa": v, "equal": a == v} for w, a, v in self.rows],
                "strict": [str(w) for w in self.strict]}


def classical_freeness_probe(h, selector, presentation, maxweight):
    """Compare the truncated arc ring of R with the graded dimensions of the subalgebra."""
    arc = truncated_hilbert(jet_presentation(presentation, ARC, maxweight), maxweight)
    z = ZhuComputation(h, selector)
    rep = ProbeReport()
    for w2 in range(0, int(Fraction(maxweight) * 2) + 1, _step(h)):
        e = Echelon()
        for st in z.basis(w2):
            e.insert(st.terms)
        w = Fraction(w2, 2)
        a = arc.dims.get(w, 0)
        if a < len(e):
            raise ZhuError(f"arc dimension {a} below vertex algebra dimension {len(e)} at weight {w}")
        rep.rows.append((w, a, len(e)))
    return rep


__all__ = ["ARC", "ZhuError", "Presentation", "JetPresentation", "GradedDims", "jet_presentation",
           "jet_name", "truncated_hilbert", "Full", "Invariants", "GeneratedBy", "ZhuComputation",
           "c2_graded_dims", "relation_in_zhu", "ProbeReport", "classical_freeness_probe"]

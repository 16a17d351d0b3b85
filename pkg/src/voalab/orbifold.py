"""Invariant subalgebras, decoupling relations and the Pfaffian coefficients R_n(I)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial, prod

from .exact import PolyRing, Poly, fmt_coeff
from .lca_engine import (EVEN, ODD, AlgebraError, GeneratorDecl, LieConformalSpec, State,
                         basis_w2, build_algebra, derivative, iterated_wick, nth_product,
                         o_ev, o_odd, s_ev, s_odd)
from .linalg import Echelon, kernel


# ---------------------------------------------------------------------------
# group actions

def _linear_terms(st):
    """Map a linear state to {(gen, k): c} plus its vacuum part."""
    out, vac = {}, 0
    for m, c in st.terms.items():
        if not m:
            vac = c
        elif len(m) == 1:
            out[m[0]] = c
        else:
            raise AlgebraError("bracket output is not linear")
    return out, vac


@dataclass
class DiagonalAction:
    """Z/d acting on generator g by exp(2 pi i charge[g] / d)."""
    modulus: int
    charge: dict

    def __post_init__(self):
        if self.modulus < 2 and any(self.charge.values()):
            raise AlgebraError("modulus must be >= 2")

    def gen_charge(self, h, g):
        return self.charge.get(h.names[g], 0) % max(self.modulus, 1)

    def mono_charge(self, h, m):
        return sum(self.gen_charge(h, g) for g, _ in m) % max(self.modulus, 1)

    def validate(self, h):
        for name in self.charge:
            if name not in h.index:
                raise AlgebraError(f"action refers to unknown generator {name!r}")
        for (a, b, j), br in h._br.items():
            want = (self.gen_charge(h, a) + self.gen_charge(h, b)) % self.modulus
            for m in br:
                if self.mono_charge(h, m) != want:
                    raise AlgebraError(
                        f"action does not preserve ({h.names[a]})_({j})({h.names[b]})")

    def invariant_vectors(self, h, w2):
        return [{m: 1} for m in invariant_monomials_w2(h, self, w2)]


def invariant_monomials_w2(h, act, w2):
    act.validate(h)
    return [m for m in basis_w2(h, w2) if act.mono_charge(h, m) == 0]


def invariant_basis(h, act, weight):
    return invariant_monomials_w2(h, act, int(Fraction(weight) * 2))


class ClassicalAction:
    """A connected group given by a torus grading and its simple raising operators,
    optionally extended by finitely many automorphisms (component representatives).

    Derivations and automorphisms are dicts generator -> {generator: coeff} on generators,
    extended to derivatives and to normally ordered monomials.
    Invariants = torus weight zero, killed by the raising operators, fixed by automorphisms.
    """

    def __init__(self, torus=None, raising=(), automorphisms=()):
        self.torus = torus or {}
        self.raising = list(raising)
        self.automorphisms = list(automorphisms)

    def _tor(self, h, m):
        dim = max((len(v) for v in self.torus.values()), default=0)
        tot = [0] * dim
        for g, _ in m:
            for i, c in enumerate(self.torus.get(h.names[g], ())):
                tot[i] += c
        return tuple(tot)

    def _map_linear(self, h, mp, st, deriv):
        lin, vac = _linear_terms(st)
        out = {}
        for (g, k), c in lin.items():
            for g2, c2 in mp.get(h.names[g], {} if deriv else {h.names[g]: 1}).items():
                key = ((h.index[g2], k),)
                out[key] = out.get(key, 0) + c * c2
        if vac and not deriv:
            out[()] = vac
        return State(h, out)

    def validate(self, h):
        zero = self._tor(h, ())
        for (a, b, j), br in h._br.items():
            want = tuple(x + y for x, y in itertools.zip_longest(
                self._tor(h, ((a, 0),)), self._tor(h, ((b, 0),)), fillvalue=0))
            for m in br:
                got = self._tor(h, m) if m else zero
                if got != want and not (not m and not any(want)):
                    raise AlgebraError("torus grading does not preserve the brackets")
        top = max(h.w2) + 1
        gens = [h.gen(n) for n in h.names]
        for D in self.raising:
            for x, y in itertools.product(gens, gens):
                for j in range(top):
                    lhs = self._map_linear(h, D, nth_product(x, j, y), True)
                    rhs = (nth_product(self._map_linear(h, D, x, True), j, y)
                           + nth_product(x, j, self._map_linear(h, D, y, True)))
                    if lhs != rhs:
                        raise AlgebraError("raising operator is not a derivation")
        for g in self.automorphisms:
            for x, y in itertools.product(gens, gens):
                for j in range(top):
                    lhs = self._map_linear(h, g, nth_product(x, j, y), False)
                    rhs = nth_product(self._map_linear(h, g, x, False), j, self._map_linear(h, g, y, False))
                    if lhs != rhs:
                        raise AlgebraError("automorphism does not preserve the brackets")

    def apply_derivation(self, h, D, m):
        out = {}
        for i, (g, k) in enumerate(m):
            for g2, c in D.get(h.names[g], {}).items():
                letters = list(m)
                letters[i] = (h.index[g2], k)
                for mm, v in _wick_letters(h, letters).items():
                    out[mm] = out.get(mm, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def apply_automorphism(self, h, g, m):
        choices = []
        for gi, k in m:
            img = g.get(h.names[gi], {h.names[gi]: 1})
            choices.append([((h.index[n2], k), c) for n2, c in img.items()])
        out = {}
        for combo in itertools.product(*choices):
            c = prod(t[1] for t in combo)
            for mm, v in _wick_letters(h, [t[0] for t in combo]).items():
                out[mm] = out.get(mm, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def invariant_vectors(self, h, w2):
        zero = self._tor(h, ())
        cand = [m for m in basis_w2(h, w2) if self._tor(h, m) == zero]
        if not self.raising and not self.automorphisms:
            return [{m: 1} for m in cand]
        images = []
        for m in cand:
            v = {}
            for j, D in enumerate(self.raising):
                for mm, c in self.apply_derivation(h, D, m).items():
                    v[(0, j, mm)] = c
            for j, g in enumerate(self.automorphisms):
                img = self.apply_automorphism(h, g, m)
                img[m] = img.get(m, 0) - 1
                for mm, c in img.items():
                    if c:
                        v[(1, j, mm)] = c
            images.append(v)
        return [{cand[i]: c for i, c in k.items()} for k in kernel(images)]


def _wick_letters(h, letters):
    out = {(): h.one}
    for x in reversed(letters):
        acc = {}
        for m, c in out.items():
            for mm, v in h.wick_letter(x, m).items():
                acc[mm] = acc.get(mm, 0) + c * v
        out = {k: v for k, v in acc.items() if v}
    return out


def invariant_space(h, act, weight):
    """Basis (as states) of the invariant subspace at the given weight."""
    w2 = int(Fraction(weight) * 2)
    return [State(h, v) for v in act.invariant_vectors(h, w2)]


# ---------------------------------------------------------------------------
# quadratic families

FAMILIES = ("S_ev-Sp", "O_odd-O", "S_odd-Sp", "O_ev-O", "S_ev-GL", "O_ev-GL", "S_odd-GL", "O_odd-GL")


def _split_orthogonal(n, k, parity):
    """Rank-n orthogonal free field algebra in a Witt basis e_p, f_p (+ z if n is odd)."""
    m = n // 2
    e = [f"e{p}" for p in range(1, m + 1)]
    f = [f"f{p}" for p in range(1, m + 1)]
    names = e + f + (["z"] if n % 2 else [])
    gens = [GeneratorDecl(x, parity, k) for x in names]
    br = {}
    for x, y in zip(e, f):
        br[(x, y, k - 1)] = ({}, Fraction(1))
        br[(y, x, k - 1)] = ({}, Fraction(1))
    if n % 2:
        br[("z", "z", k - 1)] = ({}, Fraction(1))
    return build_algebra(LieConformalSpec(gens, br)), e, f


def _gl_raising(x, y, n):
    # E_{i,i+1}: x^{i+1} -> x^i, y^i -> -y^{i+1}
    return [{x[i + 1]: {x[i]: 1}, y[i]: {y[i + 1]: -1}} for i in range(n - 1)]


def _gl_torus(x, y, n):
    t = {}
    for i in range(n):
        v = [0] * n
        v[i] = 1
        t[x[i]] = tuple(v)
        t[y[i]] = tuple(-c for c in v)
    return t


@dataclass(frozen=True)
class QuadraticFamily:
    tag: str
    n: int
    k: int

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise AlgebraError(f"unknown family {self.tag!r}")
        if self.n < 1:
            raise AlgebraError("rank must be >= 1")
        odd_k = self.tag in ("S_ev-Sp", "O_odd-O", "S_ev-GL", "O_odd-GL")
        if self.k < 1 or (self.k % 2 == 1) != odd_k:
            raise AlgebraError(f"{self.tag} needs {'odd' if odd_k else 'even'} k >= 1")

    # algebra, action and generator names
    @cached_property
    def _setup(self):
        n, k, tag = self.n, self.k, self.tag
        if tag in ("S_ev-Sp", "S_odd-Sp", "S_ev-GL", "S_odd-GL"):
            h = (s_ev if tag.startswith("S_ev") else s_odd)(n, k)
            a = [h.names[i] for i in range(n)]
            b = [h.names[n + i] for i in range(n)]
            raising = _gl_raising(a, b, n)
            if tag.endswith("Sp"):
                raising.append({b[-1]: {a[-1]: 1}})
            return h, ClassicalAction(_gl_torus(a, b, n), raising), a, b
        if tag in ("O_ev-GL", "O_odd-GL"):
            h, e, f = _split_orthogonal(2 * n, k, EVEN if tag == "O_ev-GL" else ODD)
            return h, ClassicalAction(_gl_torus(e, f, n), _gl_raising(e, f, n)), e, f
        # orthogonal groups
        parity = EVEN if tag == "O_ev-O" else ODD
        if n == 1:
            h = o_ev(1, k) if parity == EVEN else o_odd(1, k)
            x = h.names[0]
            return h, ClassicalAction({}, [], [{x: {x: -1}}]), [], []
        h, e, f = _split_orthogonal(n, k, parity)
        m = n // 2
        raising = _gl_raising(e, f, m)
        if n % 2 == 0:
            if m >= 2:
                raising.append({f[m - 1]: {e[m - 2]: 1}, f[m - 2]: {e[m - 1]: -1}})
            autos = [{e[m - 1]: {f[m - 1]: 1}, f[m - 1]: {e[m - 1]: 1}}]
        else:
            raising.append({"z": {e[m - 1]: 1}, f[m - 1]: {"z": -1}})
            autos = [{"z": {"z": -1}}]
        return h, ClassicalAction(_gl_torus(e, f, m), raising, autos), e, f

    def algebra(self):
        return self._setup[0]

    def action(self):
        return self._setup[1]

    def indices(self):
        n, k, tag = self.n, self.k, self.tag
        if tag == "S_ev-Sp":
            return list(range(1, 2 * n * n + 3 * n - 1 + n * k + 1, 2))
        if tag == "S_odd-Sp":
            return list(range(0, k * n - 2 + 1, 2))
        if tag == "O_odd-O":
            return list(range(1, n * k + n - 1 + 1, 2))
        if tag == "O_ev-O":
            return list(range(0, (n + 1) * k + n * (n + 1) - k - 2 + 1, 2))
        if tag in ("S_ev-GL", "O_ev-GL"):
            return list(range(0, n * (n + 1) + n * k))
        return list(range(0, n * k))

    def labels(self):
        return [f"w{j}" for j in self.indices()]

    def omega(self, j):
        h, _, x, y = self._setup
        tag = self.tag
        half = Fraction(1, 2)

        def w(p, q, order):
            return iterated_wick([derivative(h[p], order[0]), derivative(h[q], order[1])])

        out = h.zero()
        if tag in ("S_ev-Sp", "S_odd-Sp"):
            s = -1 if tag == "S_ev-Sp" else 1
            for p, q in zip(x, y):
                out = out + (w(p, q, (0, j)) + w(p, q, (j, 0)) * s) * half
        elif tag in ("S_ev-GL", "S_odd-GL", "O_ev-GL", "O_odd-GL"):
            for p, q in zip(x, y):
                out = out + w(p, q, (0, j))
        else:
            # orthogonal: sum_i :phi^i d^j phi^i: in the Witt basis; k minimal uses :(d^j phi)phi:
            lead = (self.tag == "O_odd-O" and self.k == 1) or (self.tag == "O_ev-O" and self.k == 2)
            c = half if (self.tag == "O_odd-O" or lead) else 1
            order = (j, 0) if lead else (0, j)
            if self.n == 1:
                g = h.names[0]
                return w(g, g, order) * c
            for p, q in zip(x, y):
                out = out + (w(p, q, order) + w(q, p, order)) * c
            if self.n % 2:
                out = out + w("z", "z", order) * c
        return out


def omega_generators(family):
    return [family.omega(j) for j in family.indices()]


# ---------------------------------------------------------------------------
# words in generators

def _as_named(generators, names=None):
    gens = list(generators)
    if gens and isinstance(gens[0], tuple):
        names = [g[0] for g in gens]
        gens = [g[1] for g in gens]
    names = list(names) if names else [f"g{i}" for i in range(len(gens))]
    for g in gens:
        if not isinstance(g, State):
            raise AlgebraError("generators must be states")
    return gens, names


class WordSpace:
    """Normally ordered words in a list of homogeneous generators and their derivatives."""

    def __init__(self, h, generators, names=None):
        self.h = h
        self.gens, self.names = _as_named(generators, names)
        self.w2 = []
        for g in self.gens:
            if g.voa is not h:
                raise AlgebraError("generator from a different algebra")
            ws = g.weights2x()
            if len(ws) != 1:
                raise AlgebraError("generators must be homogeneous and nonzero")
            self.w2.append(ws[0])
            if ws[0] <= 0:
                raise AlgebraError("generators must have positive weight")
        self._letters = {}
        self._words = {}

    def letter(self, x):
        st = self._letters.get(x)
        if st is None:
            st = derivative(self.gens[x[0]], x[1])
            self._letters[x] = st
        return st

    def words(self, w2):
        letters = []
        for i, wg in enumerate(self.w2):
            k = 0
            while wg + 2 * k <= w2:
                letters.append((i, k))
                k += 1
        out = []

        def rec(start, left, cur):
            if left == 0:
                out.append(tuple(cur))
                return
            for t in range(start, len(letters)):
                x = letters[t]
                lw = self.w2[x[0]] + 2 * x[1]
                if lw <= left:
                    cur.append(x)
                    rec(t, left - lw, cur)
                    cur.pop()

        if w2 == 0:
            return [()]
        rec(0, w2, [])
        out.sort(key=lambda wd: (len(wd), wd))
        return out

    def evaluate(self, word):
        st = self._words.get(word)
        if st is None:
            st = self.h.vacuum() if not word else iterated_wick([self.letter(x) for x in word])
            self._words[word] = st
        return st

    def format_word(self, word):
        def let(x, bare):
            name = self.names[x[0]]
            if x[1] == 0:
                return name
            d = "d" if x[1] == 1 else f"d^{x[1]}"
            return f"{d} {name}" if bare else f"({d} {name})"
        if not word:
            return "1"
        if len(word) == 1:
            return let(word[0], True)
        return ":" + " ".join(let(x, False) for x in word) + ":"

    def echelon(self, w2):
        e = Echelon(track=True)
        used = []
        for wd in self.words(w2):
            if e.insert(self.evaluate(wd).terms, wd) is None:
                used.append(wd)
        return e, used


@dataclass
class Relation:
    target: State
    names: list
    terms: list            # [(coeff, word)]
    space: WordSpace = field(repr=False)
    verified: bool = False

    def rhs(self):
        out = self.target.voa.zero()
        for c, wd in self.terms:
            out = out + self.space.evaluate(wd) * c
        return out

    def coefficient(self, word):
        for c, wd in self.terms:
            if wd == tuple(word):
                return c
        return 0

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, wd in self.terms:
            neg = c < 0 if not hasattr(c, "num") else False
            mag = -c if neg else c
            body = self.space.format_word(wd)
            cs = "" if mag == 1 else fmt_coeff(mag) + " "
            parts.append(("-" if neg else "+", cs + body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sg, body in parts[1:]:
            s += f" {sg} {body}"
        return s

    def to_json(self):
        return [{"coeff": fmt_coeff(c), "word": [[self.names[g], k] for g, k in wd]} for c, wd in self.terms]


def _solve(space, target):
    ws = target.weights2x()
    if len(ws) > 1:
        raise AlgebraError("target must be homogeneous")
    w2 = ws[0] if ws else 0
    e, _ = space.echelon(w2)
    combo = e.express(target.terms)
    if combo is None:
        return None
    terms = sorted(((c, wd) for wd, c in combo.items() if c), key=lambda t: (-len(t[1]), t[1]))
    rel = Relation(target, space.names, terms, space)
    rel.verified = rel.rhs() == target
    if not rel.verified:
        raise AlgebraError("internal error: decoupling relation failed re-verification")
    return rel


def decouple(h, generators, target, names=None):
    """Express target as a normally ordered polynomial in the generators, or return None."""
    if target.voa is not h:
        raise AlgebraError("target from a different algebra")
    return _solve(WordSpace(h, generators, names), target)


@dataclass
class BootstrapStep:
    target: State
    factor: object                     # coefficient of the new target in pump_(1)(previous)
    intermediate: list                 # [(coeff, field label, derivative order)] of the remainder
    relation: Relation
    label: str = ""


def decouple_bootstrap(h, generators, pump, start_relation, count, targets=None, names=None,
                       target_names=None, start_name="t0"):
    """Iterate pump_(1) on a decoupling relation to decouple the next targets.

    targets: the fields to be decoupled in turn (targets[0] follows start_relation.target).
    With targets=None the next field is pump_(1) applied to the previous one.
    """
    gens, names = _as_named(generators, names)
    space = WordSpace(h, gens, names)
    if count <= 0:
        return []
    if not start_relation.verified or start_relation.rhs() != start_relation.target:
        raise AlgebraError("start relation is not verified")
    fields = [(n, g) for n, g in zip(names, gens)]
    prev_t, prev_rhs = start_relation.target, start_relation.rhs()
    fields.append((start_name, prev_t))
    out = []
    for step in range(count):
        lhs = nth_product(pump, 1, prev_t)
        if targets is None:
            new_t = lhs
        else:
            if step >= len(targets):
                raise AlgebraError("not enough targets")
            new_t = targets[step]
        label = (target_names[step] if target_names and step < len(target_names) else f"t{step + 1}")
        # lhs = a * new_t + linear combination of derivatives of known fields
        lin = WordSpace(h, [g for _, g in fields] + [new_t], [n for n, _ in fields] + [label])
        w2 = lhs.weights2x()[0]
        e = Echelon(track=True)
        for i, wg in enumerate(lin.w2):
            if (w2 - wg) % 2 == 0 and w2 >= wg:
                x = (i, (w2 - wg) // 2)
                e.insert(lin.evaluate((x,)).terms, (x,))
        combo = e.express(lhs.terms)
        if combo is None:
            raise AlgebraError(f"step {step + 1}: pump image is not linear in known fields")
        idx_new = len(fields)
        a = combo.get(((idx_new, 0),), 0)
        if not a:
            raise AlgebraError(f"step {step + 1}: target coefficient vanishes")
        inter = [(c, lin.names[wd[0][0]], wd[0][1]) for wd, c in combo.items() if c]
        # new_t = (pump_(1) prev_rhs - remainder) / a, with known fields replaced by their relations
        rhs = nth_product(pump, 1, prev_rhs)
        for wd, c in combo.items():
            if wd[0][0] == idx_new:
                continue
            i, kk = wd[0]
            fld = fields[i][1]
            if i >= len(gens):
                fld = _known_rhs(out, start_relation, i - len(gens))
            rhs = rhs - derivative(fld, kk) * c
        rhs = rhs * (1 / a)
        if rhs != new_t:
            raise AlgebraError(f"step {step + 1}: bootstrap relation failed verification")
        rel = _solve(space, rhs)
        if rel is None:
            raise AlgebraError(f"step {step + 1}: result is not a polynomial in the generators")
        rel.target = new_t
        rel.verified = rel.rhs() == new_t
        out.append(BootstrapStep(new_t, a, inter, rel, label))
        fields.append((label, new_t))
        prev_t, prev_rhs = new_t, rel.rhs()
    return out


def _known_rhs(steps, start, i):
    if i == 0:
        return start.rhs()
    return steps[i - 1].relation.rhs()


# ---------------------------------------------------------------------------
# strong generation

@dataclass
class StrongGenReport:
    rows: list = field(default_factory=list)     # (weight, invariant dim, span dim, ok)

    @property
    def ok(self):
        return all(r[3] for r in self.rows)

    def first_deficit(self):
        for r in self.rows:
            if not r[3]:
                return r
        return None


def verify_strong_generation(h, action, generators, maxweight, names=None, integral_only=False):
    """Compare span of words in the generators with the invariant subspace, weight by weight."""
    if isinstance(action, QuadraticFamily):
        action = action.action()
    action.validate(h)
    space = WordSpace(h, generators, names)
    rep = StrongGenReport()
    for w2 in range(0, int(Fraction(maxweight) * 2) + 1):
        if integral_only and w2 % 2:
            continue
        inv = action.invariant_vectors(h, w2)
        e = Echelon()
        for v in inv:
            e.insert(v)
        d_inv = len(e)
        ws = Echelon()
        outside = False
        for wd in space.words(w2):
            t = space.evaluate(wd).terms
            if ws.insert(t) is None and not e.contains(t):
                outside = True
        d_span = len(ws)
        rep.rows.append((Fraction(w2, 2), d_inv, d_span, d_span == d_inv and not outside))
    return rep


# ---------------------------------------------------------------------------
# Pfaffians and R_n(I)

def _perm_sign(seq):
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
            elif seq[i] == seq[j]:
                return 0
    return s


def _check_list(I):
    I = tuple(int(x) for x in I)
    if len(I) < 2 or len(I) % 2:
        raise AlgebraError("list must have even length >= 2")
    if any(x < 0 for x in I):
        raise AlgebraError("entries must be nonnegative")
    return I


def pfaffian(I):
    """p_I in the indeterminates Q_a_b (a < b), Q_b_a = -Q_a_b."""
    I = _check_list(I)
    if len(I) < 4:
        raise AlgebraError("pfaffian needs at least 4 entries")
    vals = sorted(set(I))
    pairs = [(a, b) for a, b in itertools.combinations(vals, 2)]
    ring = PolyRing([f"Q{a}_{b}" for a, b in pairs])
    if len(set(I)) < len(I):
        return ring.zero()

    def q(a, b):
        if a < b:
            return ring.gen(f"Q{a}_{b}")
        return ring.gen(f"Q{b}_{a}") * -1

    def rec(L):
        if len(L) == 2:
            return q(L[0], L[1])
        out = ring.zero()
        for r in range(1, len(L)):
            rest = L[1:r] + L[r + 1:]
            out = out + q(L[0], L[r]) * rec(rest) * (-1) ** (r + 1)
        return out

    return rec(I)


def rn_closed(I):
    I = _check_list(I)
    if len(set(I)) < len(I):
        return Fraction(0)
    ev = [x for x in I if x % 2 == 0]
    od = [x for x in I if x % 2]
    if len(ev) != len(od):
        return Fraction(0)
    n = len(ev) - 1
    target = [t for pair in zip(ev, od) for t in pair]
    sign = _perm_sign([I.index(t) for t in target])
    num = factorial(n) * (n + 1 + sum(I))
    for k in range(n + 1):
        for l in range(k + 1, n + 1):
            num *= (ev[k] - ev[l]) * (od[k] - od[l])
    den = prod(1 + e + o for e in ev for o in od)
    return sign * Fraction(num, den)


def rn_recursion(I, _memo=None):
    I = _check_list(I)
    memo = {} if _memo is None else _memo
    if I in memo:
        return memo[I]
    if len(I) == 2:
        val = rn_closed(I)
    else:
        i0 = I[0]
        tot = Fraction(0)
        for r in range(1, len(I)):
            ir = I[r]
            Ir = I[1:r] + I[r + 1:]
            A = B = Fraction(0)
            for pos, ia in enumerate(Ir):
                J = Ir[:pos] + (ia + i0 + ir + 1,) + Ir[pos + 1:]
                v = rn_recursion(J, memo)
                if v:
                    A += v / (i0 + ia + 1)
                    B += v / (ir + ia + 1)
            tot += (-1) ** (r + 1) * ((-1) ** i0 * A + (-1) ** (ir + 1) * B)
        val = -tot / 2
    memo[I] = val
    return val

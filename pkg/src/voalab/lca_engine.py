"""Universal enveloping vertex algebras of linear Lie conformal algebras.

States are exact linear combinations of PBW monomials.  A monomial is a tuple
of letters ``(g, k)`` meaning the k-th derivative of generator g; the tuple is
the right-nested Wick product of its letters.  PBW order: generator index
ascending, derivative order descending (strictly for odd generators).

Every product a_(n)b is reduced with four rules:

* letter Wick insertion, via the commutator formula at r = s = -1;
* generator-on-monomial products (n >= 0), via the non-commutative Wick rule;
* letter-letter brackets, via (da)_(n) = -n a_(n-1) and the dual rule for d on the right;
* composite left operands, via the Borcherds expansion of (x_(-1)A')_(n)B.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .exact import ExactError, RatFunc, fmt_coeff, parse_coeff, ratfunc_limit_infinity

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class AlgebraError(ValueError):
    pass


EVEN, ODD = 0, 1


def _falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def _inv_fact(k):
    return Fraction(1, factorial(k))


def _add(dst, src, s=1):
    for m, c in src.items():
        v = dst.get(m)
        v = c * s if v is None else v + c * s
        if v:
            dst[m] = v
        else:
            dst.pop(m, None)


def _scaled(src, s):
    if not s:
        return {}
    if s == 1:
        return dict(src)
    return {m: c * s for m, c in src.items()}


# ---------------------------------------------------------------------------
# specs

@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    parity: int
    weight2x: int

    def __post_init__(self):
        if self.weight2x <= 0:
            raise AlgebraError(f"generator {self.name}: weight must be positive")
        if self.parity not in (EVEN, ODD):
            raise AlgebraError(f"generator {self.name}: bad parity")

    @property
    def weight(self):
        return Fraction(self.weight2x, 2)


@dataclass
class LieConformalSpec:
    """Generators plus the table a_(j)b for j >= 0.

    ``brackets[(a, b, j)] = (terms, central)`` with ``terms`` a dict
    ``(generator name, derivative order) -> coeff``.  Missing entries are 0.
    ``param`` is None for rational coefficients, else the RatFunc parameter.
    """
    generators: list
    brackets: dict = field(default_factory=dict)
    param: str | None = None

    def gen_names(self):
        return [g.name for g in self.generators]


# ---------------------------------------------------------------------------
# states

class State:
    __slots__ = ("voa", "terms")

    def __init__(self, voa, terms=None):
        self.voa = voa
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def _same(self, other):
        if not isinstance(other, State):
            raise AlgebraError("operand is not a state")
        if other.voa is not self.voa:
            raise AlgebraError("states belong to different algebras")

    def __add__(self, other):
        self._same(other)
        t = dict(self.terms)
        _add(t, other.terms)
        return State(self.voa, t)

    def __sub__(self, other):
        self._same(other)
        t = dict(self.terms)
        _add(t, other.terms, -1)
        return State(self.voa, t)

    def __neg__(self):
        return State(self.voa, {m: -c for m, c in self.terms.items()})

    def __mul__(self, s):
        if isinstance(s, State):
            raise AlgebraError("use wick() or nth_product() for products of states")
        if isinstance(s, str):
            s = parse_coeff(s, self.voa.param)
        return State(self.voa, _scaled(self.terms, s))

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / Fraction(s) if isinstance(s, (int, Fraction)) else s.inverse())

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, State):
            return NotImplemented
        return self.voa is other.voa and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def weights2x(self):
        return sorted({self.voa.mono_w2(m) for m in self.terms})

    def weight(self):
        ws = self.weights2x()
        if len(ws) != 1:
            raise AlgebraError("state is not homogeneous")
        return Fraction(ws[0], 2)

    def parity(self):
        ps = {self.voa.mono_par(m) for m in self.terms}
        if len(ps) > 1:
            raise AlgebraError("state is not parity-homogeneous")
        return ps.pop() if ps else EVEN

    def coeff(self, mono):
        return self.terms.get(tuple(mono), 0)

    def vacuum_coeff(self):
        return self.terms.get((), 0)

    def d(self, k=1):
        return derivative(self, k)

    def n(self, n, other):
        return nth_product(self, n, other)

    def __str__(self):
        return self.voa.format_state(self)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# the engine

class VOA:
    """Handle for a freely generated vertex algebra (memoizes products)."""

    def __init__(self, spec, validate=True):
        self.spec = spec
        gens = spec.generators
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise AlgebraError("generator names must be unique")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.par = [g.parity for g in gens]
        self.w2 = [g.weight2x for g in gens]
        self.param = spec.param
        self.one = RatFunc.const(spec.param, 1) if spec.param else Fraction(1)
        self._br = {}
        for (a, b, j), (terms, central) in spec.brackets.items():
            if a not in self.index or b not in self.index:
                raise AlgebraError(f"bracket refers to unknown generator ({a}, {b})")
            if j < 0:
                raise AlgebraError("bracket index must be >= 0")
            ia, ib = self.index[a], self.index[b]
            out = {}
            for (g, k), c in terms.items():
                if g not in self.index:
                    raise AlgebraError(f"bracket term refers to unknown generator {g}")
                c = self._coerce(c)
                if c:
                    out[((self.index[g], k),)] = out.get(((self.index[g], k),), 0) + c
            central = self._coerce(central)
            if central:
                out[()] = central
            want = self.w2[ia] + self.w2[ib] - 2 * j - 2
            for m in out:
                if self.mono_w2(m) != want:
                    raise AlgebraError(f"bracket ({a})_({j})({b}) is not of weight {Fraction(want, 2)}")
            if out:
                self._br[(ia, ib, j)] = out
        self.family = None
        self._wick = {}
        self._lbr = {}
        self._lprod = {}
        self._mprod = {}
        self._der = {}
        if validate:
            self._validate()

    # -- coefficients
    def _coerce(self, c):
        if isinstance(c, str):
            return parse_coeff(c, self.param)
        if isinstance(c, RatFunc):
            if self.param is None:
                if c.is_const():
                    return c.const_value()
                raise AlgebraError("rational-function coefficient in a rational algebra")
            if c.param != self.param:
                raise AlgebraError(f"parameter mismatch: {c.param} vs {self.param}")
            return c
        if isinstance(c, (int, Fraction)):
            return Fraction(c)
        raise AlgebraError(f"bad coefficient {c!r}")

    # -- bookkeeping
    def mono_w2(self, m):
        w2 = self.w2
        return sum(w2[g] + 2 * k for g, k in m)

    def mono_par(self, m):
        par = self.par
        return sum(par[g] for g, _ in m) & 1

    def key(self, x):
        return (x[0], -x[1])

    def is_normal(self, m):
        for x, y in zip(m, m[1:]):
            kx, ky = self.key(x), self.key(y)
            if kx > ky or (kx == ky and self.par[x[0]]):
                return False
        return True

    def gen(self, name, k=0):
        if name not in self.index:
            raise AlgebraError(f"unknown generator {name!r}")
        return State(self, {((self.index[name], k),): self.one})

    def __getitem__(self, name):
        return self.gen(name)

    def vacuum(self):
        return State(self, {(): self.one})

    def zero(self):
        return State(self, {})

    def monomial(self, letters):
        """Iterated Wick product of letters given as (name, k) pairs, in the given order."""
        out = self.vacuum().terms
        for name, k in reversed(list(letters)):
            x = (self.index[name], k)
            acc = {}
            for m, c in out.items():
                _add(acc, self.wick_letter(x, m), c)
            out = acc
        return State(self, out)

    # -- generator table
    def gen_bracket(self, a, j, b):
        return self._br.get((a, b, j), {})

    def letter_bracket(self, x, i, y):
        """x_(i)y for letters x, y and i >= 0 (a linear state)."""
        key = (x, i, y)
        hit = self._lbr.get(key)
        if hit is not None:
            return hit
        a, p = x
        b, q = y
        out = {}
        if i >= p:
            s = (-1) ** p * _falling(i, p)
            m = i - p
            for t in range(0, min(q, m) + 1):
                c = comb(q, t) * _falling(m, t) * s
                if not c:
                    continue
                r = q - t
                for mono, v in self.gen_bracket(a, m - t, b).items():
                    if not mono:
                        if r == 0:
                            _add(out, {(): v}, c)
                        continue
                    (g, k), = mono
                    _add(out, {((g, k + r),): v}, c)
        self._lbr[key] = out
        return out

    # -- Wick insertion of a letter into a normal monomial
    def wick_letter(self, x, mono):
        key = (x, mono)
        hit = self._wick.get(key)
        if hit is not None:
            return hit
        if not mono:
            out = {(x,): self.one}
        else:
            y = mono[0]
            kx, ky = self.key(x), self.key(y)
            if kx < ky or (kx == ky and not self.par[x[0]]):
                out = {(x,) + mono: self.one}
            else:
                rest = mono[1:]
                corr = {}
                top = (self.w2[x[0]] + self.w2[y[0]] + 2 * x[1] + 2 * y[1]) // 2
                for i in range(top):
                    br = self.letter_bracket(x, i, y)
                    if not br:
                        continue
                    s = Fraction((-1) ** i, factorial(i + 1))
                    for z, c in br.items():
                        if not z:
                            continue  # vacuum_(-2-i) vanishes
                        (g, k), = z
                        _add(corr, self.wick_letter((g, k + i + 1), rest), c * s)
                if x == y:
                    # odd letter squared: :x:xR:: = -:x:xR:: + corr
                    out = _scaled(corr, Fraction(1, 2))
                else:
                    sgn = -1 if (self.par[x[0]] and self.par[y[0]]) else 1
                    out = corr
                    for m, c in self.wick_letter(x, rest).items():
                        _add(out, self.wick_letter(y, m), c * sgn)
        self._wick[key] = out
        return out

    # -- letter on the left
    def letter_prod(self, x, n, mono):
        if self.w2[x[0]] + 2 * x[1] + self.mono_w2(mono) - 2 * n - 2 < 0:
            return {}
        key = (x, n, mono)
        hit = self._lprod.get(key)
        if hit is not None:
            return hit
        if n < 0:
            k = -n - 1
            out = _scaled(self.wick_letter((x[0], x[1] + k), mono), _inv_fact(k))
        elif not mono:
            out = {}
        else:
            y, rest = mono[0], mono[1:]
            out = {}
            # :(x_(n)y) rest:
            for z, c in self.letter_bracket(x, n, y).items():
                if not z:
                    _add(out, {rest: c})
                else:
                    _add(out, self.wick_letter(z[0], rest), c)
            # sign * :y (x_(n) rest):
            sgn = -1 if (self.par[x[0]] and self.par[y[0]]) else 1
            for m, c in self.letter_prod(x, n, rest).items():
                _add(out, self.wick_letter(y, m), c * sgn)
            # sum_{i=1}^n C(n,i) (x_(n-i)y)_(i-1) rest
            for i in range(1, n + 1):
                for z, c in self.letter_bracket(x, n - i, y).items():
                    if z:
                        _add(out, self.letter_prod(z[0], i - 1, rest), c * comb(n, i))
        self._lprod[key] = out
        return out

    # -- monomial on the left
    def mono_prod(self, A, n, B):
        if not A:
            return {B: self.one} if n == -1 else {}
        wA, wB = self.mono_w2(A), self.mono_w2(B)
        if wA + wB - 2 * n - 2 < 0:
            return {}
        if len(A) == 1:
            return self.letter_prod(A[0], n, B)
        key = (A, n, B)
        hit = self._mprod.get(key)
        if hit is not None:
            return hit
        if not B:
            if n >= 0:
                out = {}
            else:
                k = -n - 1
                out = _scaled(self.deriv_mono(A, k), _inv_fact(k))
        else:
            x, R = A[0], A[1:]
            wR = self.mono_w2(R)
            out = {}
            # sum_j x_(-1-j) (R_(n+j) B)
            j = 0
            while wR + wB - 2 * (n + j) - 2 >= 0:
                inner = self.mono_prod(R, n + j, B)
                if inner:
                    xj = (x[0], x[1] + j)
                    s = _inv_fact(j)
                    for m, c in inner.items():
                        _add(out, self.wick_letter(xj, m), c * s)
                j += 1
            # sign * sum_j R_(n-1-j) (x_(j) B)
            sgn = -1 if (self.par[x[0]] and self.mono_par(R)) else 1
            wx = self.w2[x[0]] + 2 * x[1]
            j = 0
            while wx + wB - 2 * j - 2 >= 0:
                xb = self.letter_prod(x, j, B)
                for m, c in xb.items():
                    _add(out, self.mono_prod(R, n - 1 - j, m), c * sgn)
                j += 1
        self._mprod[key] = out
        return out

    # -- derivative
    def deriv_mono(self, m, k=1):
        if k == 0:
            return {m: self.one}
        key = (m, k)
        hit = self._der.get(key)
        if hit is not None:
            return hit
        if k > 1:
            out = {}
            for mm, c in self.deriv_mono(m, k - 1).items():
                _add(out, self.deriv_mono(mm, 1), c)
        elif not m:
            out = {}
        else:
            x, R = m[0], m[1:]
            out = {((x[0], x[1] + 1),) + R: self.one}
            for mm, c in self.deriv_mono(R, 1).items():
                _add(out, self.wick_letter(x, mm), c)
        self._der[key] = out
        return out

    # -- state level
    def prod_terms(self, A, n, B):
        out = {}
        for ma, ca in A.items():
            for mb, cb in B.items():
                r = self.mono_prod(ma, n, mb)
                if r:
                    _add(out, r, ca * cb)
        return out

    def deriv_terms(self, A, k=1):
        out = {}
        for m, c in A.items():
            _add(out, self.deriv_mono(m, k), c)
        return out

    # -- validation
    def _validate(self):
        G = range(len(self.names))
        for a, b in itertools.product(G, G):
            top = (self.w2[a] + self.w2[b]) // 2
            sgn = -1 if (self.par[a] and self.par[b]) else 1
            for j in range(top + 1):
                lhs = self.gen_bracket(a, j, b)
                rhs = {}
                for i in range(0, top + 1 - j):
                    br = self.gen_bracket(b, j + i, a)
                    if not br:
                        continue
                    s = Fraction((-1) ** (j + i + 1), factorial(i)) * sgn
                    _add(rhs, self.deriv_terms(br, i), s)
                if lhs != rhs:
                    raise AlgebraError(
                        f"inconsistent bracket table: ({self.names[a]})_({j})({self.names[b]})")
        for a, b, c in itertools.product(G, G, G):
            sgn = -1 if (self.par[a] and self.par[b]) else 1
            ta = (self.w2[a] + self.w2[b] + self.w2[c]) // 2 + 1
            for r in range(ta):
                for s in range(ta - r):
                    xa, xb, xc = ((a, 0),), ((b, 0),), ((c, 0),)
                    lhs = self.prod_terms({xa: 1}, r, self.mono_prod(xb, s, xc))
                    rhs = _scaled(self.prod_terms({xb: 1}, s, self.mono_prod(xa, r, xc)), sgn)
                    for i in range(r + 1):
                        _add(rhs, self.prod_terms(self.mono_prod(xa, i, xb), r + s - i, {xc: 1}), comb(r, i))
                    if lhs != rhs:
                        raise AlgebraError(
                            f"not a Lie conformal algebra: Jacobi fails on "
                            f"({self.names[a]}, {self.names[b]}, {self.names[c]}) at r={r}, s={s}")

    # -- printing
    def format_letter(self, x):
        g, k = x
        name = self.names[g]
        if k == 0:
            return name
        if k == 1:
            return f"(d {name})"
        return f"(d^{k} {name})"

    def format_mono(self, m):
        if not m:
            return "1"
        if len(m) == 1:
            return self.format_letter(m[0])
        return ":" + " ".join(self.format_letter(x) for x in m) + ":"

    def format_state(self, st):
        if not st.terms:
            return "0"
        items = sorted(st.terms.items(), key=lambda t: (-self.mono_w2(t[0]), len(t[0]), t[0]))
        parts = []
        for m, c in items:
            mono = self.format_mono(m)
            neg = False
            if isinstance(c, Fraction):
                neg = c < 0
                mag = -c if neg else c
                cs = "" if mag == 1 else fmt_coeff(mag) + " "
                if mono == "1":
                    cs = fmt_coeff(mag)
                    mono = ""
            else:
                cs = f"({fmt_coeff(c)}) "
                if mono == "1":
                    cs = f"({fmt_coeff(c)})"
                    mono = ""
            parts.append((neg, cs + mono))
        s = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            s += (" - " if neg else " + ") + body
        return s


# ---------------------------------------------------------------------------
# public operations

def build_algebra(spec, validate=True):
    return VOA(spec, validate=validate)


def _check_pair(a, b):
    if not isinstance(a, State) or not isinstance(b, State):
        raise AlgebraError("operands must be states")
    if a.voa is not b.voa:
        raise AlgebraError("operands belong to different algebras")


def derivative(a, k=1):
    return State(a.voa, a.voa.deriv_terms(a.terms, k))


def nth_product(a, n, b):
    _check_pair(a, b)
    return State(a.voa, a.voa.prod_terms(a.terms, n, b.terms))


def wick(a, b):
    return nth_product(a, -1, b)


def iterated_wick(states):
    states = list(states)
    if not states:
        raise AlgebraError("empty product")
    out = states[-1]
    for s in reversed(states[:-1]):
        out = wick(s, out)
    return out


def _to_w2(weight):
    w2 = Fraction(weight) * 2
    if w2.denominator != 1:
        raise AlgebraError("weights must be half-integers")
    return int(w2)


def basis_w2(h, w2):
    """PBW monomials of doubled weight w2, in a fixed order."""
    letters = []
    for g in range(len(h.names)):
        k = 0
        while h.w2[g] + 2 * k <= w2:
            letters.append((g, k))
            k += 1
    letters.sort(key=h.key)
    out = []

    def rec(i, left, cur):
        if left == 0:
            out.append(tuple(cur))
            return
        if i == len(letters):
            return
        x = letters[i]
        lw = h.w2[x[0]] + 2 * x[1]
        maxc = 1 if h.par[x[0]] else left // lw
        for c in range(min(maxc, left // lw), -1, -1):
            cur.extend([x] * c)
            rec(i + 1, left - c * lw, cur)
            del cur[len(cur) - c:]

    if w2 < 0:
        return []
    rec(0, w2, [])
    return out


def basis(h, weight):
    return basis_w2(h, _to_w2(weight))


def graded_dimension(h, weight):
    return len(basis(h, weight))


def shapovalov_gram(h, weight):
    """Gram matrix of <u,v> = u_(2w-1)v on the weight-w PBW basis, plus its determinant."""
    from .linalg import det
    w2 = _to_w2(weight)
    B = basis_w2(h, w2)
    G = []
    for u in B:
        row = []
        for v in B:
            r = h.mono_prod(u, w2 - 1, v)
            row.append(r.get((), 0) * 1)
        G.append(row)
    one = h.one
    return G, (det(G) if G else one)


# ---------------------------------------------------------------------------
# standard algebras

def _decl(name, parity, w2):
    return GeneratorDecl(name, parity, w2)


def _tagged(h, *family):
    h.family = family
    return h


def _names(stem, n):
    return [stem] if n == 1 else [f"{stem}{i}" for i in range(1, n + 1)]


def heisenberg(n=1, form=None, names=None):
    names = names or _names("a", n)
    form = form or [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    gens = [_decl(x, EVEN, 2) for x in names]
    br = {}
    for i in range(n):
        for j in range(n):
            if form[i][j]:
                br[(names[i], names[j], 1)] = ({}, Fraction(form[i][j]))
    return _tagged(build_algebra(LieConformalSpec(gens, br)), "heisenberg", n, form)


def abelian(n=1, weight2x=2, names=None):
    names = names or _names("a", n)
    return _tagged(build_algebra(LieConformalSpec([_decl(x, EVEN, weight2x) for x in names], {})), "abelian", n)


def o_ev(n, k, form=None, names=None):
    if k < 2 or k % 2:
        raise AlgebraError("o_ev requires even k >= 2")
    names = names or _names("a", n)
    form = form or [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    gens = [_decl(x, EVEN, k) for x in names]
    br = {}
    for i in range(n):
        for j in range(n):
            if form[i][j]:
                br[(names[i], names[j], k - 1)] = ({}, Fraction(form[i][j]))
    return _tagged(build_algebra(LieConformalSpec(gens, br)), "o_ev", n, k)


def o_odd(n, k, form=None, names=None):
    if k < 1 or k % 2 == 0:
        raise AlgebraError("o_odd requires odd k >= 1")
    names = names or _names("phi", n)
    form = form or [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    gens = [_decl(x, ODD, k) for x in names]
    br = {}
    for i in range(n):
        for j in range(n):
            if form[i][j]:
                br[(names[i], names[j], k - 1)] = ({}, Fraction(form[i][j]))
    return _tagged(build_algebra(LieConformalSpec(gens, br)), "o_odd", n, k)


def _symplectic_pairs(n, k, parity, stems):
    a_names, b_names = _names(stems[0], n), _names(stems[1], n)
    gens = [_decl(x, parity, k) for x in a_names + b_names]
    br = {}
    for a, b in zip(a_names, b_names):
        br[(a, b, k - 1)] = ({}, Fraction(1))
        br[(b, a, k - 1)] = ({}, Fraction(-1))
    return gens, br


def s_ev(n, k, stems=("a", "b")):
    if k < 1 or k % 2 == 0:
        raise AlgebraError("s_ev requires odd k >= 1")
    gens, br = _symplectic_pairs(n, k, EVEN, stems)
    return _tagged(build_algebra(LieConformalSpec(gens, br)), "s_ev", n, k)


def s_odd(n, k, stems=("a", "b")):
    if k < 2 or k % 2:
        raise AlgebraError("s_odd requires even k >= 2")
    gens, br = _symplectic_pairs(n, k, ODD, stems)
    return _tagged(build_algebra(LieConformalSpec(gens, br)), "s_odd", n, k)


def free_fermion(n=1):
    return _tagged(o_odd(n, 1, names=_names("phi", n)), "free_fermion", n)


def beta_gamma(n=1):
    return _tagged(s_ev(n, 1, stems=("beta", "gamma")), "beta_gamma", n)


def symplectic_fermion(n=1):
    return _tagged(s_odd(n, 2, stems=("e", "f")), "symplectic_fermion", n)


def bc(n=1):
    bn, cn = _names("b", n), _names("c", n)
    gens = [_decl(x, ODD, 1) for x in bn + cn]
    br = {}
    for b, c in zip(bn, cn):
        br[(b, c, 0)] = ({}, Fraction(1))
        br[(c, b, 0)] = ({}, Fraction(1))
    return _tagged(build_algebra(LieConformalSpec(gens, br)), "bc", n)


def virasoro(c):
    """Virasoro algebra; c may be a rational or a RatFunc (its parameter becomes the field)."""
    param = c.param if isinstance(c, RatFunc) else None
    half = c * Fraction(1, 2)
    br = {("L", "L", 0): ({("L", 1): 1}, 0),
          ("L", "L", 1): ({("L", 0): 2}, 0),
          ("L", "L", 3): ({}, half)}
    return _tagged(build_algebra(LieConformalSpec([_decl("L", EVEN, 4)], br, param)), "virasoro", c)


@dataclass(frozen=True)
class LieData:
    """Structure constants [x_i, x_j] = sum_k f[i][j][k] x_k and an invariant form."""
    names: tuple
    f: dict           # (i, j) -> {k: coeff}
    form: tuple       # form[i][j]
    parities: tuple = None

    def dim(self):
        return len(self.names)


def sl2_data():
    # basis e, h, f with the normalized trace form (e|f) = 1, (h|h) = 2
    f = {(0, 1): {0: -2}, (1, 0): {0: 2},
         (0, 2): {1: 1}, (2, 0): {1: -1},
         (1, 2): {2: -2}, (2, 1): {2: 2}}
    form = ((0, 0, 1), (0, 2, 0), (1, 0, 0))
    return LieData(("e", "h", "f"), f, form)


def so3_data():
    # orthonormal basis with [x_i, x_j] = eps_ijk x_k; sl2 over C
    f = {}
    for i, j, k in itertools.permutations(range(3)):
        sign = 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
        f[(i, j)] = {k: sign}
    form = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    return LieData(("x1", "x2", "x3"), f, form)


def _check_lie(data):
    n = data.dim()

    def br(i, j):
        return data.f.get((i, j), {})

    for i in range(n):
        for j in range(n):
            a, b = br(i, j), br(j, i)
            for k in set(a) | set(b):
                if a.get(k, 0) + b.get(k, 0) != 0:
                    raise AlgebraError("structure constants are not antisymmetric")
            if data.form[i][j] != data.form[j][i]:
                raise AlgebraError("form is not symmetric")
    # invariance ([x,y]|z) = (x|[y,z])
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = sum(c * data.form[m][k] for m, c in br(i, j).items())
        rhs = sum(c * data.form[i][m] for m, c in br(j, k).items())
        if lhs != rhs:
            raise AlgebraError("form is not invariant")


def affine(data, level, names=None):
    _check_lie(data)
    names = list(names or data.names)
    param = level.param if isinstance(level, RatFunc) else None
    pars = data.parities or tuple(EVEN for _ in names)
    gens = [_decl(x, p, 2) for x, p in zip(names, pars)]
    br = {}
    n = data.dim()
    for i in range(n):
        for j in range(n):
            terms = {(names[k], 0): c for k, c in data.f.get((i, j), {}).items() if c}
            if terms:
                br[(names[i], names[j], 0)] = (terms, 0)
            if data.form[i][j]:
                br[(names[i], names[j], 1)] = ({}, level * data.form[i][j])
    return _tagged(build_algebra(LieConformalSpec(gens, br, param)), "affine", data, level)


def deformable_affine(data=None, param="kappa", names=None):
    """a_(1)b = (a|b), a_(0)b = (1/kappa) a^{[a,b]} over rational functions in kappa.

    The basis must be orthonormal for the supplied form.
    """
    data = data or so3_data()
    _check_lie(data)
    n = data.dim()
    for i in range(n):
        for j in range(n):
            if data.form[i][j] != (1 if i == j else 0):
                raise AlgebraError("deformable_affine needs an orthonormal basis")
    names = list(names or [f"a{i + 1}" for i in range(n)])
    inv = RatFunc(param, (1,), (0, 1))
    gens = [_decl(x, EVEN, 2) for x in names]
    br = {}
    for i in range(n):
        br[(names[i], names[i], 1)] = ({}, RatFunc.const(param, 1))
        for j in range(n):
            terms = {(names[k], 0): inv * c for k, c in data.f.get((i, j), {}).items() if c}
            if terms:
                br[(names[i], names[j], 0)] = (terms, 0)
    return _tagged(build_algebra(LieConformalSpec(gens, br, param)), "deformable_affine", data)


def standard_algebra(kind, *args):
    kinds = {
        "heisenberg": heisenberg, "free_fermion": free_fermion, "beta_gamma": beta_gamma,
        "bc": bc, "symplectic_fermion": symplectic_fermion, "o_ev": o_ev, "o_odd": o_odd,
        "s_ev": s_ev, "s_odd": s_odd, "affine": affine, "virasoro": virasoro,
        "abelian": abelian,
    }
    if kind not in kinds:
        raise AlgebraError(f"unknown algebra kind {kind!r}")
    if kind in ("heisenberg", "free_fermion", "beta_gamma", "bc", "symplectic_fermion",
                "o_ev", "o_odd", "s_ev", "s_odd", "abelian") and args and args[0] < 1:
        raise AlgebraError("rank must be >= 1")
    return kinds[kind](*args)


# ---------------------------------------------------------------------------
# deformable limits

@dataclass
class LimitResult:
    algebra: VOA
    phi: object


def limit_infinity(h):
    """Coefficient-wise limit at infinity of an algebra over rational functions."""
    if h.param is None:
        return LimitResult(h, lambda s: s)
    br = {}
    for (a, b, j), (terms, central) in h.spec.brackets.items():
        try:
            t2 = {k: ratfunc_limit_infinity(v) if not isinstance(v, str)
                  else ratfunc_limit_infinity(parse_coeff(v, h.param)) for k, v in terms.items()}
            c2 = ratfunc_limit_infinity(parse_coeff(central, h.param) if isinstance(central, str) else central)
        except ExactError:
            raise AlgebraError("no free-field limit") from None
        t2 = {k: v for k, v in t2.items() if v}
        if t2 or c2:
            br[(a, b, j)] = (t2, c2)
    lim = build_algebra(LieConformalSpec(list(h.spec.generators), br, None))

    def phi(st):
        if st.voa is not h:
            raise AlgebraError("state is not from the deformable family")
        out = {}
        for m, c in st.terms.items():
            try:
                v = ratfunc_limit_infinity(c)
            except ExactError:
                raise AlgebraError("no free-field limit") from None
            if v:
                out[m] = v
        return State(lim, out)

    return LimitResult(lim, phi)


# ---------------------------------------------------------------------------
# identity checker

@dataclass
class IdentityReport:
    results: dict = field(default_factory=dict)   # identity -> list of failing witnesses
    checked: dict = field(default_factory=dict)   # identity -> number of instances

    @property
    def ok(self):
        return all(not v for v in self.results.values())

    def summary(self):
        return {k: ("pass" if not v else f"FAIL ({len(v)})") for k, v in self.results.items()}


IDENTITIES = ("derivation", "skew_symmetry", "quasi_associativity", "wick", "commutator")


def check_identities(h, a, b, c, nmax=3):
    """Check the five standard vertex algebra identities on (a, b, c)."""
    for s in (a, b, c):
        if s.voa is not h:
            raise AlgebraError("states must belong to the handle")
    pa, pb = a.parity(), b.parity()
    sab = -1 if (pa and pb) else 1
    rep = IdentityReport({k: [] for k in IDENTITIES}, {k: 0 for k in IDENTITIES})

    def top(x, y):
        # largest n with x_(n)y possibly nonzero
        wx = max(x.weights2x(), default=0)
        wy = max(y.weights2x(), default=0)
        return (wx + wy) // 2

    def fail(name, **wit):
        rep.results[name].append(wit)

    # 1. (da)_(n) b = -n a_(n-1) b
    da = derivative(a)
    for n in range(-nmax, nmax + 1):
        rep.checked["derivation"] += 1
        if nth_product(da, n, b) != nth_product(a, n - 1, b) * (-n):
            fail("derivation", n=n)
    # 2. skew-symmetry
    tba = top(b, a)
    for n in range(-nmax, nmax + 1):
        rep.checked["skew_symmetry"] += 1
        rhs = h.zero()
        for i in range(0, max(tba - n, 0) + 1):
            p = nth_product(b, n + i, a)
            if p:
                rhs = rhs + derivative(p, i) * (Fraction(-1 if (n + i + 1) % 2 else 1, factorial(i)) * sab)
        if nth_product(a, n, b) != rhs:
            fail("skew_symmetry", n=n)
    # 3. quasi-associativity
    rep.checked["quasi_associativity"] += 1
    lhs = wick(wick(a, b), c) - wick(a, wick(b, c))
    rhs = h.zero()
    for n in range(0, max(top(b, c), top(a, c)) + 1):
        s = _inv_fact(n + 1)
        bc_ = nth_product(b, n, c)
        if bc_:
            rhs = rhs + wick(derivative(a, n + 1), bc_) * s
        ac_ = nth_product(a, n, c)
        if ac_:
            rhs = rhs + wick(derivative(b, n + 1), ac_) * (s * sab)
    if lhs != rhs:
        fail("quasi_associativity")
    # 4. a_(n) :bc: (n >= 0)
    bcw = wick(b, c)
    for n in range(0, nmax + 1):
        rep.checked["wick"] += 1
        lhs = nth_product(a, n, bcw) - wick(nth_product(a, n, b), c) - wick(b, nth_product(a, n, c)) * sab
        rhs = h.zero()
        for i in range(1, n + 1):
            rhs = rhs + nth_product(nth_product(a, n - i, b), i - 1, c) * comb(n, i)
        if lhs != rhs:
            fail("wick", n=n)
    # 5. commutator formula (r, s >= 0)
    for r in range(0, nmax + 1):
        for s in range(0, nmax + 1):
            rep.checked["commutator"] += 1
            lhs = nth_product(a, r, nth_product(b, s, c))
            rhs = nth_product(b, s, nth_product(a, r, c)) * sab
            for i in range(r + 1):
                rhs = rhs + nth_product(nth_product(a, i, b), r + s - i, c) * comb(r, i)
            if lhs != rhs:
                fail("commutator", r=r, s=s)
    return rep


# ---------------------------------------------------------------------------
# JSON spec files

def spec_from_json(obj):
    field_ = obj.get("field", {"kind": "rational"})
    param = field_.get("param") if field_.get("kind") == "ratfunc" else None
    gens = [GeneratorDecl(g["name"], 1 if g.get("parity") in ("odd", 1, "1") else 0, int(g["weight2x"]))
            for g in obj["generators"]]
    br = {}
    for e in obj.get("brackets", []):
        terms = {}
        for t in e.get("terms", []):
            terms[(t["gen"], int(t.get("dz", 0)))] = parse_coeff(t["coeff"], param)
        central = parse_coeff(e.get("central", "0"), param)
        br[(e["a"], e["b"], int(e["j"]))] = (terms, central)
    return LieConformalSpec(gens, br, param)


def spec_to_json(spec):
    def cs(c):
        return fmt_coeff(c)
    out = {"generators": [{"name": g.name, "parity": "odd" if g.parity else "even",
                           "weight2x": g.weight2x} for g in spec.generators],
           "field": {"kind": "ratfunc", "param": spec.param} if spec.param else {"kind": "rational"},
           "brackets": []}
    for (a, b, j), (terms, central) in sorted(spec.brackets.items()):
        out["brackets"].append({"a": a, "b": b, "j": j,
                                "terms": [{"gen": g, "dz": k, "coeff": cs(c)} for (g, k), c in terms.items()],
                                "central": cs(central)})
    return out

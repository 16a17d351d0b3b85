"""Exact arithmetic: rationals, weighted polynomials, univariate rational functions.

Rationals are plain ``fractions.Fraction``.  Weights are stored doubled so that
half-integer gradings stay integral.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction


class ExactError(ValueError):
    pass


def as_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not a rational: {x!r}")


def fmt_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# dense univariate polynomials: tuples of Fractions, constant term first

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _uadd(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n))


def _uneg(a):
    return tuple(-x for x in a)


def _umul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _uscale(a, s):
    if s == 0:
        return ()
    return tuple(x * s for x in a)


def _udivmod(a, b):
    if not b:
        raise ExactError("zero divisor")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
        a = list(_trim(a))
    return _trim(q), _trim(a)


def _umonic(a):
    if not a:
        return a
    return _uscale(a, 1 / Fraction(a[-1]))


def _ugcd(a, b):
    while b:
        a, b = b, _udivmod(a, b)[1]
    return _umonic(a)


def _ueval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _uterms_str(a, var):
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = fmt_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{fmt_rational(mag)}*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


class RatFunc:
    """Univariate rational function num/den over Q in a named parameter.

    The denominator is monic and coprime to the numerator, so ``==`` is
    mathematical equality.
    """

    __slots__ = ("param", "num", "den", "_hash")

    def __init__(self, param, num, den=(Fraction(1),), _reduced=False):
        self.param = param
        num = _trim(Fraction(x) for x in num)
        den = _trim(Fraction(x) for x in den)
        if not den:
            raise ExactError("zero divisor")
        if not _reduced:
            if not num:
                den = (Fraction(1),)
            else:
                g = _ugcd(num, den)
                if len(g) > 1:
                    num = _udivmod(num, g)[0]
                    den = _udivmod(den, g)[0]
                lead = den[-1]
                if lead != 1:
                    num = _uscale(num, 1 / lead)
                    den = _uscale(den, 1 / lead)
        self.num = num
        self.den = den
        self._hash = None

    # constructors
    @classmethod
    def const(cls, param, c):
        return cls(param, (as_rational(c),), _reduced=True) if c else cls(param, ())

    @classmethod
    def var(cls, param):
        return cls(param, (Fraction(0), Fraction(1)), _reduced=True)

    @classmethod
    def parse(cls, param, src):
        return parse_ratfunc(src, param)

    # structure
    def degree(self):
        if not self.num:
            return None
        return (len(self.num) - 1) - (len(self.den) - 1)

    def is_const(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def const_value(self):
        if not self.is_const():
            raise ExactError("not a constant")
        return self.num[0] if self.num else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.param != self.param:
                raise ExactError(f"parameter mismatch: {self.param} vs {other.param}")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.param, (Fraction(other),), _reduced=True) if other else RatFunc(self.param, ())
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.param, _uadd(self.num, o.num), self.den)
        return RatFunc(self.param,
                       _uadd(_umul(self.num, o.den), _umul(o.num, self.den)),
                       _umul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.param, _uneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc(self.param, ())
            return RatFunc(self.param, _uscale(self.num, Fraction(other)), self.den, _reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.param, _umul(self.num, o.num), _umul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ExactError("zero divisor")
        return RatFunc(self.param, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(self.param, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RatFunc) else other
        if o is None:
            return NotImplemented
        return self.param == o.param and self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.is_const():
                self._hash = hash(self.const_value())
            else:
                self._hash = hash((self.param, self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __call__(self, x):
        """Evaluate at a rational point."""
        d = _ueval(self.den, Fraction(x))
        if d == 0:
            raise ExactError("pole")
        return _ueval(self.num, Fraction(x)) / d

    def __str__(self):
        p = self.param
        if len(self.den) == 1:
            return _uterms_str(self.num, p)
        return f"({_uterms_str(self.num, p)})/({_uterms_str(self.den, p)})"

    def __repr__(self):
        return f"RatFunc({self.param}: {self})"


def ratfunc_arith(a, b, op):
    if isinstance(a, RatFunc) and isinstance(b, RatFunc) and a.param != b.param:
        raise ExactError(f"parameter mismatch: {a.param} vs {b.param}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ExactError("zero divisor")
        return a / b
    raise ExactError(f"unknown op {op!r}")


def ratfunc_substitute(f, g):
    """Composition f(g(param)); g may also be a rational constant."""
    if isinstance(g, RatFunc) and g.param != f.param:
        raise ExactError(f"parameter mismatch: {f.param} vs {g.param}")
    if not isinstance(g, RatFunc):
        g = RatFunc.const(f.param, as_rational(g))

    # evaluate num(g) and den(g) with a common power of g.den cleared
    dn = len(f.num) - 1
    dd = len(f.den) - 1
    top = max(dn, dd, 0)

    def homog(coeffs):
        acc = ()
        for k, c in enumerate(coeffs):
            if c == 0:
                continue
            term = (Fraction(c),)
            for _ in range(k):
                term = _umul(term, g.num)
            for _ in range(top - k):
                term = _umul(term, g.den)
            acc = _uadd(acc, term)
        return acc

    num = homog(f.num)
    den = homog(f.den)
    if not den:
        raise ExactError("substitution gives identically zero denominator")
    return RatFunc(f.param, num, den)


def ratfunc_limit_infinity(f):
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    deg = f.degree()
    if deg is None or deg < 0:
        return Fraction(0)
    if deg > 0:
        raise ExactError("unbounded at infinity")
    return f.num[-1] / f.den[-1]


def mobius(param, a, b, c, d):
    """(a*x + b)/(c*x + d) as a RatFunc."""
    return RatFunc(param, (as_rational(b), as_rational(a)), (as_rational(d), as_rational(c)))


# ---------------------------------------------------------------------------
# weighted multivariate polynomials

class PolyRing:
    """Named variables with doubled weights; fixed variable order."""

    def __init__(self, names, weights2x=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ExactError("duplicate variable names")
        self.names = names
        self.weights2x = tuple(weights2x) if weights2x is not None else tuple(2 for _ in names)
        self.index = {n: i for i, n in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.weights2x == other.weights2x

    def __hash__(self):
        return hash((self.names, self.weights2x))

    def __len__(self):
        return len(self.names)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * len(self.names): Fraction(1)})

    def const(self, c):
        return Poly(self, {(0,) * len(self.names): as_rational(c)})

    def gen(self, name):
        e = [0] * len(self.names)
        e[self.index[name]] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.gen(n) for n in self.names]

    def parse(self, src):
        return parse_poly(src, self)

    def monomials_of_weight(self, w2):
        """All exponent vectors of doubled weight w2 (weights must be > 0)."""
        ws = self.weights2x
        if any(x <= 0 for x in ws):
            raise ExactError("infinite graded pieces")
        out = []
        n = len(ws)

        def rec(i, left, cur):
            if i == n:
                if left == 0:
                    out.append(tuple(cur))
                return
            for e in range(left // ws[i] + 1):
                cur.append(e)
                rec(i + 1, left - e * ws[i], cur)
                cur.pop()

        rec(0, w2, [])
        return out


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: Fraction(c) for e, c in terms.items() if c != 0}

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        if not isinstance(other, Poly):
            return None
        if other.ring != self.ring:
            raise ExactError("polynomials from different rings")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.ring, {e: c * other for e, c in self.terms.items()})
        o = self._check(other)
        if o is None:
            return NotImplemented
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._check(other) if not isinstance(other, Poly) else other
        if o is None:
            return NotImplemented
        return self.ring == o.ring and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def term_weight2x(self, e):
        return sum(x * w for x, w in zip(e, self.ring.weights2x))

    def weights2x(self):
        return sorted({self.term_weight2x(e) for e in self.terms})

    def is_homogeneous(self):
        return len(self.weights2x()) <= 1

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def diff(self, name):
        i = self.ring.index[name]
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = t.get(tuple(e2), 0) + c * e[i]
        return Poly(self.ring, t)

    def derive(self, images):
        """Apply the derivation sending variable v to images[v] (missing -> 0)."""
        out = self.ring.zero()
        for v, img in images.items():
            if img:
                out = out + self.diff(v) * img
        return out

    def sorted_terms(self):
        # descending weight, then descending exponents
        return sorted(self.terms.items(),
                      key=lambda t: (-self.term_weight2x(t[0]), tuple(-x for x in t[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(n if x == 1 else f"{n}^{x}"
                            for n, x in zip(self.ring.names, e) if x)
            mag = abs(c)
            if not mono:
                body = fmt_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{fmt_rational(mag)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __repr__ = __str__


# ---------------------------------------------------------------------------
# a small expression parser shared by Poly and RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(src):
    pos = 0
    toks = []
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ExactError(f"syntax error at position {pos}: {src[pos:pos + 10]!r}")
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("num", int(num), start))
        elif name is not None:
            toks.append(("name", name, start))
        else:
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, len(src)))
    return toks


class _Parser:
    def __init__(self, src, leaf, one, allow_div):
        self.toks = _tokenize(src)
        self.i = 0
        self.leaf = leaf
        self.one = one
        self.allow_div = allow_div

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, val=None):
        t = self.toks[self.i]
        if (kind and t[0] != kind) or (val is not None and t[1] != val):
            raise ExactError(f"syntax error at position {t[2]}: expected {val or kind}")
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek()[0] != "end":
            raise ExactError(f"syntax error at position {self.peek()[2]}")
        return v

    def expr(self):
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        v = self.term()
        if sign < 0:
            v = -v
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            v = v + t if op == "+" else v - t
        return v

    def term(self):
        v = self.factor()
        while True:
            t = self.peek()
            if t[:2] == ("op", "*"):
                self.take()
                v = v * self.factor()
            elif t[:2] == ("op", "/"):
                self.take()
                d = self.factor()
                v = self.allow_div(v, d, t[2])
            elif t[0] in ("num", "name") or t[:2] == ("op", "("):
                v = v * self.factor()  # implicit multiplication
            else:
                return v

    def factor(self):
        b = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            e = self.take("num")[1]
            if neg:
                b = self.allow_div(self.one(), b ** e, self.peek()[2])
            else:
                b = b ** e
        return b

    def atom(self):
        t = self.peek()
        if t[0] == "num":
            self.take()
            return self.leaf(Fraction(t[1]), None, t[2])
        if t[0] == "name":
            self.take()
            return self.leaf(None, t[1], t[2])
        if t[:2] == ("op", "("):
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        if t[:2] == ("op", "-"):
            self.take()
            return -self.factor()
        raise ExactError(f"syntax error at position {t[2]}")


def parse_poly(src, ring):
    def leaf(num, name, pos):
        if name is None:
            return ring.const(num)
        if name not in ring.index:
            raise ExactError(f"unknown variable {name!r} at position {pos}")
        return ring.gen(name)

    def div(a, b, pos):
        if len(b.terms) == 1 and next(iter(b.terms)) == (0,) * len(ring.names):
            return a * (1 / next(iter(b.terms.values())))
        raise ExactError(f"division by a non-constant at position {pos}")

    return _Parser(src, leaf, ring.one, div).parse()


def parse_ratfunc(src, param):
    def leaf(num, name, pos):
        if name is None:
            return RatFunc.const(param, num)
        if name != param:
            raise ExactError(f"unknown symbol {name!r} at position {pos}")
        return RatFunc.var(param)

    def div(a, b, pos):
        if not b:
            raise ExactError("zero divisor")
        return a / b

    return _Parser(src, leaf, lambda: RatFunc.const(param, 1), div).parse()


def parse_coeff(src, param=None):
    """Parse "p/q" to a Fraction, or a rational-function string to a RatFunc."""
    src = str(src).strip()
    if param is None:
        try:
            return Fraction(src)
        except ValueError:
            pass

        def leaf(num, name, pos):
            if name is not None:
                raise ExactError(f"unknown symbol {name!r} at position {pos}")
            return num

        return Fraction(_Parser(src, leaf, lambda: Fraction(1), lambda a, b, pos: a / b).parse())
    return parse_ratfunc(src, param)


def fmt_coeff(c):
    if isinstance(c, RatFunc):
        if c.is_const():
            return fmt_rational(c.const_value())
        return str(c)
    return fmt_rational(c)

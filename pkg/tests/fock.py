"""Independent mode-algebra model of the rank one Heisenberg Fock space.

States are polynomials in creation modes a_{-m} (m >= 1) on the vacuum, stored as
{sorted tuple of m: coeff}.  a_m for m > 0 acts as m * d/d(a_{-m}), a_0 = 0.
"""

from collections import defaultdict
from fractions import Fraction
from math import factorial


def _clean(d):
    return {k: v for k, v in d.items() if v}


def mode(n, vec):
    """Apply a_n."""
    out = defaultdict(Fraction)
    for word, c in vec.items():
        if n < 0:
            out[tuple(sorted(word + (-n,)))] += c
        elif n > 0:
            k = word.count(n)
            if k:
                w = list(word)
                w.remove(n)
                out[tuple(w)] += c * n * k
    return _clean(out)


def add(x, y, s=1):
    out = defaultdict(Fraction, x)
    for k, v in y.items():
        out[k] += v * s
    return _clean(out)


def deriv_mode(k, n, vec):
    """(d^k alpha)_(n) = (-1)^k n(n-1)...(n-k+1) a_{n-k}."""
    f = 1
    for i in range(k):
        f *= n - i
    f *= (-1) ** k
    return {w: c * f for w, c in mode(n - k, vec).items()} if f else {}


def weight(word):
    return sum(word)


def quadratic_mode(i, j, n, vec):
    """Modes of :(d^i alpha)(d^j alpha):, from the normally ordered product formula
    :ab:_(n) = sum_{p>=0} a_(-1-p) b_(n+p) + b_(n-1-p) a_(p)."""
    top = max((weight(w) for w in vec), default=0) + i + j + abs(n) + 4
    out = {}
    for p in range(top):
        out = add(out, deriv_mode(i, -1 - p, deriv_mode(j, n + p, vec)))
        out = add(out, deriv_mode(j, n - 1 - p, deriv_mode(i, p, vec)))
    return out


def from_monomial(mono):
    """Engine PBW monomial ((0, k1), (0, k2), ...) to a Fock vector."""
    c = Fraction(1)
    word = []
    for _, k in mono:
        c *= factorial(k)
        word.append(k + 1)
    return {tuple(sorted(word)): c}


def from_state(st):
    out = {}
    for m, c in st.terms.items():
        out = add(out, from_monomial(m), c)
    return out

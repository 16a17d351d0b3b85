"""Virasoro vectors: standard choices, central charges, Sugawara, primary checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lca_engine import AlgebraError, State, derivative, nth_product, wick


class ConformalError(AlgebraError):
    pass


@dataclass
class VirasoroVector:
    state: State
    c: object

    def __str__(self):
        return f"{self.state}  (c = {self.c})"


def central_charge(L):
    """c from L_(3)L = (c/2) vacuum, after checking the full Virasoro OPE."""
    if isinstance(L, VirasoroVector):
        L = L.state
    h = L.voa
    checks = [(0, derivative(L)), (1, L * 2), (2, h.zero())]
    for n, want in checks:
        got = nth_product(L, n, L)
        if got != want:
            raise ConformalError(f"not a conformal vector: L_({n})L = {got}")
    top = nth_product(L, 3, L)
    if any(m for m in top.terms):
        raise ConformalError(f"not a conformal vector: L_(3)L = {top}")
    for n in range(4, 2 * max(L.weights2x(), default=0) + 2):
        got = nth_product(L, n, L)
        if got:
            raise ConformalError(f"not a conformal vector: L_({n})L = {got}")
    return top.vacuum_coeff() * 2


def _vv(L):
    return VirasoroVector(L, central_charge(L))


def standard_virasoro(h, lam=None):
    """The standard conformal vector of a free field algebra (lam only for beta_gamma and bc)."""
    fam = h.family
    if not fam:
        raise ConformalError("unsupported algebra: no standard conformal vector")
    kind = fam[0]
    half = Fraction(1, 2)
    if lam is not None and kind not in ("beta_gamma", "bc"):
        raise ConformalError("lambda applies only to beta_gamma and bc")
    if kind == "heisenberg":
        n, form = fam[1], fam[2]
        if any(form[i][j] != (i == j) for i in range(n) for j in range(n)):
            raise ConformalError("standard conformal vector needs an orthonormal Heisenberg basis")
        L = h.zero()
        for x in h.names:
            L = L + wick(h[x], h[x]) * half
        return _vv(L)
    if kind == "free_fermion":
        L = h.zero()
        for x in h.names:
            L = L - wick(h[x], h[x].d()) * half
        return _vv(L)
    if kind in ("beta_gamma", "bc"):
        lam = half if lam is None else Fraction(lam)
        n = fam[1]
        # the fermionic version carries the opposite overall sign
        s = 1 if kind == "beta_gamma" else -1
        L = h.zero()
        for b, g in zip(h.names[:n], h.names[n:]):
            L = L + (wick(h[b], h[g].d()) * lam - wick(h[b].d(), h[g]) * (1 - lam)) * s
        return _vv(L)
    if kind == "symplectic_fermion":
        n = fam[1]
        L = h.zero()
        for e, f in zip(h.names[:n], h.names[n:]):
            L = L - wick(h[e], h[f])
        return _vv(L)
    if kind == "virasoro":
        return _vv(h["L"])
    if kind == "affine":
        raise ConformalError("use sugawara() for affine algebras")
    raise ConformalError(f"unsupported algebra: {kind}")


def _is_zero(x):
    return not x


def sugawara(h, dual_basis=None, h_vee=None, level=None):
    """(1/2(k+h^vee)) sum :X^xi X^xi': for dual bases (xi'|eta) = delta.

    dual_basis: list of (name, {name: coeff}) giving xi and xi' in generator coordinates.
    Defaults are read off an algebra built by affine().
    """
    fam = h.family or ()
    if dual_basis is None:
        if not fam or fam[0] != "affine":
            raise ConformalError("dual basis required for a non-affine handle")
        data = fam[1]
        dual_basis = _dual_from_form(h, data)
    if h_vee is None:
        raise ConformalError("h_vee required")
    if level is None:
        if fam and fam[0] == "affine":
            level = fam[2]
        else:
            x, xd = dual_basis[0]
            pair = h.zero()
            for y, c in xd.items():
                pair = pair + nth_product(h[x], 1, h[y]) * c
            level = pair.vacuum_coeff()
    if isinstance(level, int):
        level = Fraction(level)
    if isinstance(h_vee, int):
        h_vee = Fraction(h_vee)
    shifted = level + h_vee
    if _is_zero(shifted):
        raise ConformalError("critical level")
    L = h.zero()
    for x, xd in dual_basis:
        for y, c in xd.items():
            L = L + wick(h[x], h[y]) * c
    L = L * (1 / (shifted * 2))
    vv = _vv(L)
    for x in h.names:
        res = is_primary(vv, h[x])
        if not res.primary or res.weight != 1:
            raise ConformalError(f"generator {x} is not primary of weight one")
    return vv


def _dual_from_form(h, data):
    n = data.dim()
    form = [[Fraction(data.form[i][j]) for j in range(n)] for i in range(n)]
    # invert the Gram matrix
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(form)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ConformalError("degenerate invariant form")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    inv = [row[n:] for row in aug]
    names = h.names
    return [(names[i], {names[j]: inv[j][i] for j in range(n) if inv[j][i]}) for i in range(n)]


@dataclass
class PrimaryResult:
    primary: bool
    weight: object = None
    witness: str = ""

    def __str__(self):
        if self.primary:
            return f"primary of weight {self.weight}"
        return f"not primary ({self.witness})"


def is_primary(L, a):
    if isinstance(L, VirasoroVector):
        L = L.state
    l1 = nth_product(L, 1, a)
    w = None
    for m, c in a.terms.items():
        w = l1.terms.get(m, 0) / c
        break
    if w is None:
        return PrimaryResult(False, None, "zero state")
    if l1 != a * w:
        return PrimaryResult(False, None, "L_(1)a is not proportional to a")
    top = (max(L.weights2x()) + max(a.weights2x())) // 2
    for n in range(2, top + 1):
        r = nth_product(L, n, a)
        if r:
            return PrimaryResult(False, w, f"L_({n})a = {r}")
    return PrimaryResult(True, w)


@dataclass
class WAlgCharacterData:
    sdim_g: int
    h_vee: Fraction
    level: object
    x_norm: Fraction
    plus_part: list = field(default_factory=list)   # (m_alpha, parity)
    sdim_g_half: int = 0

    def __post_init__(self):
        for m, _ in self.plus_part:
            if Fraction(m) <= 0:
                raise ConformalError("plus_part entries need m_alpha > 0")


def walg_central_charge(d):
    k = Fraction(d.level) if isinstance(d.level, int) else d.level
    if _is_zero(k + d.h_vee):
        raise ConformalError("critical level")
    c = k * d.sdim_g / (k + d.h_vee) - k * 12 * Fraction(d.x_norm)
    for m, par in d.plus_part:
        m = Fraction(m)
        c = c - (-1) ** int(par) * (12 * m * m - 12 * m + 2)
    return c - Fraction(d.sdim_g_half, 2)


def sl2_principal(level):
    return WAlgCharacterData(3, Fraction(2), level, Fraction(1, 2), [(1, 0)], 0)

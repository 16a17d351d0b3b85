"""Truncation curves of W(c, lambda) quotients as exact rational functions of psi."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import ExactError, RatFunc, mobius, ratfunc_substitute

PSI = "psi"


class TruncationError(ValueError):
    pass


def _psi():
    return RatFunc.var(PSI)


@dataclass(frozen=True)
class CurvePoint:
    c: RatFunc
    lam: RatFunc          # None where the printed lambda formula degenerates
    in_range: bool = True

    def at(self, x):
        if self.lam is None:
            raise TruncationError("lambda is undefined for this label")
        return self.c(x), self.lam(x)

    def compose(self, g):
        lam = None if self.lam is None else ratfunc_substitute(self.lam, g)
        return CurvePoint(ratfunc_substitute(self.c, g), lam, self.in_range)

    def to_json(self):
        return {"c": str(self.c), "lambda": None if self.lam is None else str(self.lam)}


@dataclass(frozen=True)
class CosetLabel:
    family: str
    n: int
    m: int

    def __post_init__(self):
        if self.family not in ("C", "D"):
            raise TruncationError("family must be C or D")
        if self.n < 0 or self.m < 0:
            raise TruncationError("n and m must be nonnegative")

    def in_curve_range(self):
        if self.m == 0:
            return self.n >= 3
        return self.n >= (0 if self.family == "C" else 1)


def _curve(label):
    # C and D differ by the sign of m inside the linear factors
    p = _psi()
    n = label.n
    mm = -label.m if label.family == "C" else label.m
    c = coset_central_charge(label)
    den = (n * p + mm - n - 2) * (n * p - 2 * p + mm - n + 2) * (n * p + 2 * p + mm - n)
    lam = -((p - 1) * p) / den if den else None
    return CurvePoint(c, lam, label.in_curve_range())


def curve_C(n, m):
    return _curve(CosetLabel("C", n, m))


def curve_D(n, m):
    return _curve(CosetLabel("D", n, m))


def coset_central_charge(label):
    p = _psi()
    n, m = label.n, label.m
    mm = -m if label.family == "C" else m
    return -((n * p + mm - n - 1) * (n * p - p + mm - n + 1) * (n * p + p + mm - n)) / ((p - 1) * p)


def psi_prime():
    """psi' with 1/psi + 1/psi' = 1."""
    return mobius(PSI, 1, 0, 1, -1)


def psi_inverse():
    return mobius(PSI, 0, 1, 1, 0)


@dataclass
class Report:
    ok: bool = True
    checks: list = field(default_factory=list)   # (name, passed, detail)

    def add(self, name, passed, detail=""):
        self.checks.append((name, bool(passed), detail))
        if not passed:
            self.ok = False

    def to_json(self):
        return {"ok": self.ok, "checks": [{"name": a, "passed": b, "detail": c} for a, b, c in self.checks]}


def _cmp(rep, name, lhs, rhs):
    d_c = lhs.c - rhs.c
    rep.add(name + " [c]", not d_c, "" if not d_c else f"difference {d_c}")
    if lhs.lam is None or rhs.lam is None:
        same = lhs.lam is None and rhs.lam is None
        rep.add(name + " [lambda]", same, "lambda degenerate on both sides" if same
                else "lambda degenerate on one side only")
        return
    d_l = lhs.lam - rhs.lam
    rep.add(name + " [lambda]", not d_l, "" if not d_l else f"difference {d_l}")


def verify_triality(n, m):
    """D(n,m)(psi) = C(n-m,m)(1/psi) = D(m,n)(psi') as rational function identities."""
    if not (n >= m >= 0):
        raise TruncationError("triality needs n >= m >= 0")
    rep = Report()
    d = curve_D(n, m)
    cc = curve_C(n - m, m).compose(psi_inverse())
    dd = curve_D(m, n).compose(psi_prime())
    _cmp(rep, f"D({n},{m})(psi) = C({n - m},{m})(1/psi)", d, cc)
    _cmp(rep, f"D({n},{m})(psi) = D({m},{n})(psi')", d, dd)
    return rep


@dataclass
class Coincidence:
    psi: Fraction
    c: Fraction
    lam: Fraction
    r: Fraction
    report: Report


def intersection_with_principal(n, m, s):
    if n == 0:
        raise TruncationError("parametrization pole")
    if s < 3 or m < 1 or n < 0:
        raise TruncationError("needs s >= 3, m >= 1, n >= 0")
    psi = Fraction(m + n + s, n)
    r = -s + Fraction(m + s, m + n + s)
    c_star = Fraction(-(s - 1) * (n * s - m - s) * (m + n + s + n * s), (m + s) * (m + n + s))
    lam_den = (s - 2) * (2 * m + 2 * s - n * s) * (2 * m + 2 * n + 2 * s + n * s)
    lam_star = Fraction((m + s) * (m + n + s), lam_den) if lam_den else None
    rep = Report()
    C = curve_C(n, m)
    try:
        cv, lv = C.at(psi)
    except ExactError as e:
        rep.add(f"C({n},{m}) at psi*", False, str(e))
        return Coincidence(psi, c_star, lam_star, r, rep)
    rep.add(f"C({n},{m}).c(psi*) = c*", cv == c_star, f"{cv} vs {c_star}")
    rep.add(f"C({n},{m}).lambda(psi*) = lambda*", lv == lam_star, f"{lv} vs {lam_star}")
    # the principal W-algebra of sl_s at level r sits on C(s,0) at psi = r + s
    P = curve_C(s, 0)
    try:
        pc, pl = P.at(r + s)
        rep.add(f"C({s},0) at r+s", pc == c_star and pl == lam_star, f"({pc}, {pl})")
    except ExactError as e:
        rep.add(f"C({s},0) at r+s", False, str(e))
    return Coincidence(psi, c_star, lam_star, r, rep)


# ---------------------------------------------------------------------------
# Jacobi bootstrap

@dataclass
class BootstrapData:
    n: int
    m: int
    alpha: tuple          # (a0/a3, a1/a3, a2/a3)
    K: RatFunc
    a3_squared: RatFunc = None
    b0: RatFunc = None
    b1_over_a3: RatFunc = None
    lam: RatFunc = None
    residuals: dict = field(default_factory=dict)


def _K(n, m):
    p = _psi()
    return n - Fraction(m * m - 1, m) / (p - 1) - Fraction(m + n, m) / (n * p - m - n)


def _solve_dense(A, b):
    """Gaussian elimination over RatFunc; raises on a singular system."""
    k = len(A)
    M = [list(r) + [v] for r, v in zip(A, b)]
    for col in range(k):
        piv = next((r for r in range(col, k) if M[r][col]), None)
        if piv is None:
            raise TruncationError("singular system in the bootstrap elimination")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(k):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][k] for r in range(k)]


def bootstrap_alpha(n, m):
    if m < 1 or n < 0:
        raise TruncationError("bootstrap needs m >= 1, n >= 0")
    K = _K(n, m)
    c = coset_central_charge(CosetLabel("C", n, m))
    one = RatFunc.const(PSI, 1)
    zero = RatFunc.const(PSI, 0)
    # unknowns a0, a1, a2 with a3 = 1
    A = [[one * -3, 1 + K, zero],
         [one * -6, zero, 2 + c / 2 + 2 * K],
         [zero, one * -4, one * 3]]
    b = [zero, -(3 + 3 * K), -(4 + 2 * K)]
    try:
        a0, a1, a2 = _solve_dense(A, b)
    except ExactError:
        raise TruncationError("singular system in the bootstrap elimination") from None
    data = BootstrapData(n, m, (a0, a1, a2), K)
    p = _psi()
    q = n * p - m - n
    printed = ((n * p - m - n - 2) * (n * p - m - n - 1) * (n * p + p - m - n) * (n * p + 2 * p - m - n)
               / (6 * (p - 1) ** 2 * q ** 2),
               (n * p - m - n - 2) * (n * p + 2 * p - m - n) / (2 * (p - 1) * q),
               -2 * p / ((p - 1) * q))
    data.residuals["first"] = -3 * a0 + a1 + a1 * K
    data.residuals["second"] = -6 * a0 + 2 * a2 + 3 + a2 * c / 2 + (2 * a2 + 3) * K
    data.residuals["third"] = -4 * a1 + 3 * a2 + 4 + 2 * K
    for i, (got, want) in enumerate(zip((a0, a1, a2), printed)):
        data.residuals[f"alpha{i} - printed"] = got - want
    return data


def _lam_term(a0, c, lam, printed):
    # the a0-term shared by the (W3, W4, G) identities
    mu = (2 + c) * lam
    if printed:
        return 5 * a0 * (mu - 16)
    return 16 * a0 * (2 * mu - 5)


def bootstrap_lambda(n, m, printed_term=False):
    """Solve the (W3, W3, G) and (W3, W4, G) identities for a3^2, b0, b1/a3 and lambda.

    printed_term=True uses 5 a0((2+c)lam - 16) in place of 16 a0(2(2+c)lam - 5); that
    variant lands on 32/5 times the curve lambda.
    """
    data = bootstrap_alpha(n, m)
    a0, a1, a2 = data.alpha
    K = data.K
    p = _psi()
    c = coset_central_charge(CosetLabel("C", n, m))
    # unknowns A = a3^2 and b0:  gen1: 3 a0 a1 A - b0 = -(1 + K);  jac2: 6 a0 (a2 + 2) A - 2 b0 = -(1 + K)
    one = RatFunc.const(PSI, 1)
    A_, b0 = _solve_dense([[3 * a0 * a1, -one], [6 * a0 * (a2 + 2), one * -2]], [-(1 + K), -(1 + K)])
    X = (m * n * p + m * p - m * m - m * n - m + 1) / (m * (p - 1))
    Y = Fraction(m + n, m) / (n * p - m - n)
    R = 8 * a2 * X + a2 * (3 * c + 8 * b0) - 8 * a2 * Y
    # gen4 gives 2 b1 = 8 a1 b0 - Z; then gen3 / a3 reads Z = 16 a1 b0 - 40 b0 - 2 R
    z0 = _lam_term(a0, c, 0 * one, printed_term)
    z1 = _lam_term(a0, c, one, printed_term) - z0
    if not z1:
        raise TruncationError("elimination degenerates: lambda coefficient vanishes")
    lam = (16 * a1 * b0 - 40 * b0 - 2 * R - z0) / z1
    Z = _lam_term(a0, c, lam, printed_term)
    b1 = (8 * a1 * b0 - Z) / 2
    data.a3_squared, data.b0, data.b1_over_a3, data.lam = A_, b0, b1, lam
    data.residuals["gen1"] = 1 + 3 * a0 * a1 * A_ - b0 + K
    data.residuals["jac2"] = 1 + 6 * a0 * (a2 + 2) * A_ - 2 * b0 + K
    data.residuals["gen3"] = (-40 * b0 + Z + 4 * b1) / 2 - R
    data.residuals["gen4"] = -8 * a1 * b0 + Z + 2 * b1
    data.residuals["lambda - curve"] = lam - curve_C(n, m).lam
    return data


# ---------------------------------------------------------------------------
# B/C/D parameter maps

def _inv_rel(a, b, total):
    """psi'' from a/psi + b/psi'' = total, i.e. psi'' = b psi / (total psi - a)."""
    return mobius(PSI, b, 0, total, -a)


BCD_MAPS = {
    "2b2b2o": (mobius(PSI, 0, 1, 4, 0), _inv_rel(1, 1, 2)),
    "1c1c2c": (mobius(PSI, 0, 1, 2, 0), _inv_rel(1, 1, 1)),
    "2d1d1o": (mobius(PSI, 0, 1, 2, 0), _inv_rel(Fraction(1, 2), 1, 1)),
    "1o1b2d": (mobius(PSI, 0, 1, 1, 0), _inv_rel(1, Fraction(1, 2), 1)),
}


def bcd_parameter_consistency():
    rep = Report()
    psi = _psi()
    for name, (f1, f2) in BCD_MAPS.items():
        rep.add(f"{name}: psi -> psi' is an involution", ratfunc_substitute(f1, f1) == psi)
        if name in ("2b2b2o", "1c1c2c"):
            # both ends are the same family with (n, m) swapped, so psi -> psi'' must be an involution
            rep.add(f"{name}: psi -> psi'' is an involution", ratfunc_substitute(f2, f2) == psi)
    # 2D(n,m) -> 1O(m,n-1) by 2d1d1o, then 1O(m,n-1) -> 2D(n,m) by 1o1b2d
    g = ratfunc_substitute(BCD_MAPS["1o1b2d"][1], BCD_MAPS["2d1d1o"][1])
    rep.add("2d1d1o then 1o1b2d returns to 2D(n,m) at psi", g == psi, str(g))
    # 1C(n,m) at psi'' then back: closed cycle on labels (n,m) -> (m,n) -> (n,m)
    f = BCD_MAPS["1c1c2c"][1]
    rep.add("1c1c2c: (n,m) -> (m,n) -> (n,m) closes", ratfunc_substitute(f, f) == psi)
    return rep

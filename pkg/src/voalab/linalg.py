"""Exact sparse linear algebra over Q or Q(param).

Vectors are dicts key -> coeff with comparable keys.  Echelon rows are keyed by
their largest key, so reduction only ever introduces smaller keys.
"""

from fractions import Fraction


def _size(c):
    if isinstance(c, Fraction):
        return c.numerator.bit_length() + c.denominator.bit_length()
    return len(c.num) + len(c.den)


def _axpy(dst, src, s):
    for k, v in src.items():
        w = dst.get(k, 0) + v * s
        if w:
            dst[k] = w
        else:
            dst.pop(k, None)


class Echelon:
    """Incremental row echelon form with optional combination tracking."""

    def __init__(self, track=False):
        self.rows = {}      # pivot -> (vec normalized so vec[pivot] == 1, combo)
        self.track = track

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, combo=None):
        v = {k: x for k, x in vec.items() if x}
        cmb = dict(combo) if combo else {}
        done = {}
        while v:
            p = max(v)
            c = v[p]
            row = self.rows.get(p)
            if row is None:
                done[p] = v.pop(p)
                continue
            _axpy(v, row[0], -c)
            if self.track:
                _axpy(cmb, row[1], -c)
        return done, cmb

    def insert(self, vec, tag=None):
        """Add vec; returns None if independent, else the combination of tags equal to vec."""
        start = {tag: 1} if self.track else None
        res, cmb = self.reduce(vec, start)
        if not res:
            if not self.track:
                return {}
            # 0 = vec + sum(cmb - tag) -> vec = -(cmb without tag)
            return {t: -c for t, c in cmb.items() if t != tag}
        p = max(res)
        inv = 1 / res[p]
        res = {k: x * inv for k, x in res.items()}
        cmb = {k: x * inv for k, x in cmb.items()} if self.track else None
        self.rows[p] = (res, cmb)
        return None

    def contains(self, vec):
        res, _ = self.reduce(vec)
        return not res

    def express(self, vec):
        """Coefficients over inserted tags with sum == vec, or None if vec is outside the span."""
        if not self.track:
            raise ValueError("express needs a tracking echelon")
        res, cmb = self.reduce(vec, {})
        if res:
            return None
        return {t: -c for t, c in cmb.items()}


def rank(vectors):
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return len(e)


def kernel(images):
    """Basis of {x : sum x_i images[i] = 0} as dicts index -> coeff."""
    e = Echelon(track=True)
    out = []
    for i, v in enumerate(images):
        dep = e.insert(v, i)
        if dep is not None:
            k = {t: -c for t, c in dep.items()}
            k[i] = 1
            out.append(k)
    return out


def det(M):
    """Determinant of a square matrix (list of lists) by elimination."""
    n = len(M)
    A = [list(r) for r in M]
    if any(len(r) != n for r in A):
        raise ValueError("matrix is not square")
    d = 1
    for col in range(n):
        best = None
        for r in range(col, n):
            if A[r][col]:
                if best is None or _size(A[r][col]) < _size(A[best][col]):
                    best = r
        if best is None:
            return A[0][0] * 0 if n else 0
        if best != col:
            A[col], A[best] = A[best], A[col]
            d = -d
        piv = A[col][col]
        d = d * piv
        inv = 1 / piv
        for r in range(col + 1, n):
            f = A[r][col]
            if f:
                f = f * inv
                row, prow = A[r], A[col]
                for j in range(col, n):
                    if prow[j]:
                        row[j] = row[j] - f * prow[j]
    return d

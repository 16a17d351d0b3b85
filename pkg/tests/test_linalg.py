from fractions import Fraction as F
from itertools import permutations
from math import prod

from hypothesis import given, settings, strategies as st

from voalab.exact import RatFunc
from voalab.linalg import Echelon, det, kernel, rank


def leibniz_det(M):
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inv * prod(M[i][p[i]] for i in range(n))
    return total


matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5).map(F), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(matrices)
def test_det_against_leibniz(M):
    assert det(M) == leibniz_det(M)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 4), st.integers(-3, 3).map(F), max_size=4), max_size=6))
def test_kernel_vectors_annihilate(vecs):
    for k in kernel(vecs):
        tot = {}
        for i, c in k.items():
            for key, v in vecs[i].items():
                tot[key] = tot.get(key, 0) + c * v
        assert not any(tot.values())
    assert rank(vecs) + len(kernel(vecs)) == len(vecs)


def test_express_roundtrip():
    e = Echelon(track=True)
    e.insert({0: F(1), 1: F(2)}, "a")
    e.insert({1: F(1), 2: F(1)}, "b")
    combo = e.express({0: F(2), 1: F(7), 2: F(3)})
    assert combo == {"a": 2, "b": 3}
    assert e.express({3: F(1)}) is None


def test_det_over_ratfunc():
    k = RatFunc.var("k")
    one = RatFunc.const("k", 1)
    assert det([[k, one], [one, k]]) == k * k - one

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from voalab.lca_engine import abelian, affine, graded_dimension, heisenberg, sl2_data, wick
from voalab.orbifold import DiagonalAction
from voalab.zhu_jet import (ARC, GeneratedBy, Presentation, ZhuComputation, ZhuError,
                            c2_graded_dims, classical_freeness_probe, jet_presentation,
                            relation_in_zhu, truncated_hilbert)

H1 = heisenberg(1)
a = H1["a"]
Z2 = DiagonalAction(2, {"a": 1})
R_Z2 = Presentation.parse([("l", 2), ("w", 4)], ["w^2 - l^2*w", "l^3*w"])


def test_jets_of_double_point():
    y = Presentation.parse([("y", 1)], ["y^2"])
    j1 = jet_presentation(y, 1)
    assert [v[0] for v in j1.variables] == ["y_0", "y_1"]
    assert [str(f) for f in j1.relations] == ["y_0^2", "2*y_0*y_1"]
    j2 = jet_presentation(y, 2)
    ring = j2.presentation.ring
    assert j2.relations[2] == ring.parse("2*y_1^2 + 2*y_0*y_2")
    assert len(j2.relations) == 3


def test_jet_weights_and_counts():
    for m in range(4):
        jp = jet_presentation(R_Z2, m)
        assert len(jp.relations) == (m + 1) * 2
        for s in range(m + 1):
            assert jp.relations[s].weights2x() == [16 + 2 * s]
    free = jet_presentation(Presentation.parse([("y", 1)]), 3)
    assert free.relations == () and len(free.variables) == 4


def test_arc_needs_cutoff():
    with pytest.raises(ZhuError):
        jet_presentation(R_Z2, ARC)
    with pytest.raises(ZhuError, match="infinite graded pieces"):
        truncated_hilbert(Presentation.parse([("z", 0)]), 3)
    with pytest.raises(ZhuError):
        Presentation.parse([("x", 1), ("x", 2)])
    with pytest.raises(ZhuError, match="not homogeneous"):
        Presentation.parse([("x", 1), ("y", 2)], ["x + y"])


def test_hilbert_of_orbifold_presentation():
    dims = truncated_hilbert(R_Z2, 12).as_tuple()
    assert dims == (1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 1, 0, 1)
    free = truncated_hilbert(Presentation.parse([("l", 2)]), 8).as_tuple()
    assert free == (1, 0, 1, 0, 1, 0, 1, 0, 1)


def free_count(weights, w):
    p = [1] + [0] * w
    for k in weights:
        for t in range(k, w + 1):
            p[t] += p[t - k]
    return p[w]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_free_ring_hilbert(weights):
    p = Presentation.parse([(f"x{i}", w) for i, w in enumerate(weights)])
    dims = truncated_hilbert(p, 8).as_tuple()
    assert dims == tuple(free_count(weights, w) for w in range(9))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(-3, 3)), min_size=1, max_size=3))
def test_derivation_leibniz_on_jets(terms):
    p = Presentation.parse([("u", 1), ("v", 2)])
    jp = jet_presentation(p, ARC, 12)
    ring = jp.presentation.ring
    D = {n: ring.gen(f"{n[:-2]}_{int(n[-1]) + 1}") for n, _ in jp.variables
         if f"{n[:-2]}_{int(n[-1]) + 1}" in ring.index}
    f = ring.zero()
    for i, j, c in terms:
        f = f + ring.gen("u_0") ** i * ring.gen("v_0") ** j * c
    g = ring.gen("u_1") * ring.gen("v_0") + ring.gen("u_0") ** 2
    assert (f * g).derive(D) == f.derive(D) * g + f * g.derive(D)
    if f and f.is_homogeneous():
        df = f.derive(D)
        assert not df or df.weights2x() == [f.weights2x()[0] + 2]


def test_zhu_heisenberg():
    assert c2_graded_dims(H1, "full", 5).as_tuple() == (1,) * 6
    H2 = heisenberg(2)
    assert c2_graded_dims(H2, "full", 4).as_tuple() == (1, 2, 3, 4, 5)
    assert c2_graded_dims(abelian(1), "full", 3).as_tuple() == (1, 1, 1, 1)


def test_zhu_quotient_bound():
    d = c2_graded_dims(H1, Z2, 8).as_tuple()
    for w, x in enumerate(d):
        assert x <= graded_dimension(H1, w)


def test_zhu_orbifold_relations():
    z = ZhuComputation(H1, Z2)
    assert z.dims(10).as_tuple() == truncated_hilbert(R_Z2, 10).as_tuple()
    L = wick(a, a) * F(1, 2)
    W = wick(a.d(2), a) * F(35, 132)
    assert relation_in_zhu(H1, Z2, wick(W, W) - wick(W, wick(L, L)), computation=z)
    assert relation_in_zhu(H1, Z2, wick(L, wick(L, wick(L, W))), computation=z)
    assert not relation_in_zhu(H1, Z2, wick(W, W), computation=z)
    assert not relation_in_zhu(H1, Z2, H1.vacuum(), computation=z)
    with pytest.raises(ZhuError, match="not in the selected subalgebra"):
        relation_in_zhu(H1, Z2, a, computation=z)


def test_generated_by_closure():
    h = affine(sl2_data(), 1)
    with pytest.raises(ZhuError, match="not product-closed"):
        c2_graded_dims(h, GeneratedBy([h["e"], h["f"]]), 2)
    sub = GeneratedBy([wick(a, a)])
    assert c2_graded_dims(H1, sub, 4)[2] == 1


def test_probe():
    rep = classical_freeness_probe(H1, Z2, R_Z2, 10)
    assert rep.equal_through() >= 7
    assert all(arc >= voa for _, arc, voa in rep.rows)
    free = classical_freeness_probe(H1, "full", Presentation.parse([("a", 1)]), 6)
    assert free.strict == []

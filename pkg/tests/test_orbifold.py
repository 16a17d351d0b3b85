from fractions import Fraction as F
from itertools import combinations

import pytest

from voalab.lca_engine import AlgebraError, abelian, basis, derivative, heisenberg, nth_product, wick
from voalab.orbifold import (DiagonalAction, QuadraticFamily, decouple, decouple_bootstrap,
                             invariant_basis, omega_generators, pfaffian, rn_closed, rn_recursion,
                             verify_strong_generation)

H1 = heisenberg(1)
a = H1["a"]
Z2 = DiagonalAction(2, {"a": 1})


def om(i, j, h=H1):
    x = h[h.names[0]]
    return wick(x.d(i), x.d(j))


def test_invariant_basis_examples():
    assert invariant_basis(H1, Z2, 2) == [((0, 0), (0, 0))]
    h = heisenberg(2, form=[[0, 1], [1, 0]], names=["b1", "b2"])
    act = DiagonalAction(3, {"b1": 1, "b2": 2})
    mons = invariant_basis(h, act, 3)
    assert ((0, 0),) * 3 in mons
    for m in mons:
        n1 = sum(1 for g, _ in m if g == 0)
        n2 = len(m) - n1
        assert (n1 - n2) % 3 == 0
    assert invariant_basis(h, DiagonalAction(3, {}), 3) == basis(h, 3)


def charge_zero_count(weight, charges, d):
    # independent count: colored partitions graded by charge mod d
    table = {(0, 0): 1}
    for part in range(1, weight + 1):
        for q in charges:
            new = {}
            for (w, c), n in table.items():
                k = 0
                while w + k * part <= weight:
                    key = (w + k * part, (c + k * q) % d)
                    new[key] = new.get(key, 0) + n
                    k += 1
            table = new
    return table.get((weight, 0), 0)


@pytest.mark.parametrize("w", range(0, 7))
def test_invariant_dims_match_character(w):
    h = heisenberg(2, form=[[0, 1], [1, 0]], names=["b1", "b2"])
    act = DiagonalAction(3, {"b1": 1, "b2": 2})
    assert len(invariant_basis(h, act, w)) == charge_zero_count(w, [1, 2], 3)
    assert len(invariant_basis(H1, Z2, w)) == charge_zero_count(w, [1], 2)


def test_invalid_action():
    with pytest.raises(AlgebraError):
        invariant_basis(H1, DiagonalAction(3, {"a": 1}), 2)
    with pytest.raises(AlgebraError):
        invariant_basis(H1, DiagonalAction(2, {"zz": 1}), 2)


def test_omega_generators():
    fam = QuadraticFamily("S_ev-Sp", 1, 1)
    h = fam.algebra()
    b, g = (h[x] for x in h.names)
    assert fam.indices() == [1, 3, 5]
    for j, w in zip(fam.indices(), omega_generators(fam)):
        assert w == (wick(b, g.d(j)) - wick(b.d(j), g)) * F(1, 2)
    fam = QuadraticFamily("O_odd-O", 1, 1)
    phi = fam.algebra()[fam.algebra().names[0]]
    assert omega_generators(fam) == [wick(phi.d(), phi) * F(1, 2)]
    fam = QuadraticFamily("S_ev-GL", 1, 1)
    h = fam.algebra()
    x, y = (h[n] for n in h.names)
    assert omega_generators(fam) == [wick(x, y.d(j)) for j in range(3)]
    with pytest.raises(AlgebraError):
        QuadraticFamily("S_ev-Sp", 1, 2)
    with pytest.raises(AlgebraError):
        QuadraticFamily("X", 1, 1)


def test_heisenberg_relation_golden():
    w00, w20, w40 = om(0, 0), om(2, 0), om(4, 0)
    rel = decouple(H1, [w00, w20], w40, names=["w00", "w20"])
    assert rel is not None and rel.verified
    assert rel.rhs() == w40
    want = {((0, 0), (0, 2)): F(-2, 5), ((0, 0), (1, 0)): F(4, 5), ((0, 1), (0, 1)): F(1, 5),
            ((1, 2),): F(7, 5), ((0, 4),): F(-7, 30)}
    got = {tuple(sorted(wd)): c for c, wd in rel.terms}
    assert got == want


def test_decouple_trivial_and_none():
    w00, w20, w40 = om(0, 0), om(2, 0), om(4, 0)
    rel = decouple(H1, [w00, w20], w20)
    assert rel.terms == [(1, ((1, 0),))]
    assert decouple(H1, [w00], w40) is None
    # minimality: neither generator is a polynomial in the other
    assert decouple(H1, [w20], w00) is None
    assert decouple(H1, [w00], w20) is None


def test_pump_identities():
    w00, w20, w40, w60 = om(0, 0), om(2, 0), om(4, 0), om(6, 0)
    assert nth_product(w20, 1, w40) == w60 * 16 - w40.d(2) * 16 + w20.d(4) * 20 - w00.d(6) * 4
    assert nth_product(w20, 1, w20) == w40 * 12 - w20.d(2) * 8 + w00.d(4) * 2
    assert nth_product(w20, 1, w20.d(2)) == w40.d(2) * 24 - w20.d(4) * 22 + w00.d(6) * 5
    assert nth_product(w20, 1, w00.d(2)) == w20.d(2) * 20 - w00.d(4) * 2
    assert nth_product(w20, 1, w00.d(1)) == w20.d(1) * 14 - w00.d(3)
    assert nth_product(w20, 1, w00) == w20 * 8


def test_bootstrap():
    w00, w20 = om(0, 0), om(2, 0)
    start = decouple(H1, [w00, w20], om(4, 0))
    assert decouple_bootstrap(H1, [w00, w20], w20, start, 0) == []
    steps = decouple_bootstrap(H1, [w00, w20], w20, start, 2, targets=[om(6, 0), om(8, 0)])
    assert [s.factor for s in steps][0] == 16
    for s, t in zip(steps, (om(6, 0), om(8, 0))):
        assert s.relation.verified and s.relation.rhs() == t


def test_strong_generation_heisenberg_z2():
    rep = verify_strong_generation(H1, Z2, [om(0, 0) * F(1, 2), om(2, 0)], 8)
    assert rep.ok


def test_abelian_orbifold_deficit():
    h = abelian(1)
    rep = verify_strong_generation(h, DiagonalAction(2, {"a": 1}), [om(0, 0, h), om(2, 0, h)], 6)
    assert not rep.ok
    assert rep.first_deficit()[0] == 6


def test_pfaffian():
    p = pfaffian((0, 1, 2, 3))
    assert str(p) == "Q0_1*Q2_3 - Q0_2*Q1_3 + Q0_3*Q1_2"
    assert not pfaffian((0, 1, 2, 2))
    p6 = pfaffian((0, 1, 2, 3, 4, 5))
    assert len(p6.terms) == 15
    assert pfaffian((1, 0, 2, 3, 4, 5)) == -p6


def test_rn_examples():
    assert rn_closed((0, 1, 2, 3)) == F(1, 6)
    assert rn_recursion((0, 1, 2, 3)) == F(1, 6)
    assert rn_closed((0, 2, 4, 6)) == 0
    assert rn_recursion((0, 2, 4, 6)) == 0
    for n in range(1, 5):
        assert rn_closed(tuple(range(2 * n + 2)))
    with pytest.raises(AlgebraError):
        rn_closed((0, 1, 2))


def test_rn_antisymmetry():
    base = rn_closed((0, 1, 2, 3, 4, 5))
    assert rn_closed((2, 1, 0, 3, 4, 5)) == -base
    assert rn_closed((0, 3, 2, 1, 4, 5)) == -base
    assert rn_closed((0, 1, 0, 3)) == 0


@pytest.mark.parametrize("length", [4, 6])
def test_rn_recursion_matches_closed(length):
    for I in combinations(range(9), length):
        assert rn_recursion(I) == rn_closed(I), I

from fractions import Fraction as F

import pytest

from voalab.exact import RatFunc, parse_ratfunc, ratfunc_substitute
from voalab.truncation import (CosetLabel, TruncationError, bcd_parameter_consistency, bootstrap_alpha,
                               bootstrap_lambda, coset_central_charge, curve_C, curve_D,
                               intersection_with_principal, psi_inverse, psi_prime, verify_triality)

psi = RatFunc.var("psi")


def P(s):
    return parse_ratfunc(s, "psi")


def printed_c(n, m, sign):
    # direct transcription of the displayed coset central charges, sign = -1 for C, +1 for D
    mm = sign * m
    return -((n * psi + mm - n - 1) * (n * psi - psi + mm - n + 1) * (n * psi + psi + mm - n)) / ((psi - 1) * psi)


def test_principal_curve_c():
    c = curve_C(2, 0).c
    assert c == P("13 - 6*psi - 6/psi")
    assert c == -(2 * psi - 3) * (3 * psi - 2) / psi
    assert curve_C(2, 0).lam is None


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("m", range(4))
def test_curve_c_matches_display(n, m):
    assert curve_C(n, m).c == printed_c(n, m, -1)
    assert curve_D(n, m).c == printed_c(n, m, 1)


def test_coset_labels():
    assert coset_central_charge(CosetLabel("D", 2, 1)) == printed_c(2, 1, 1)
    assert coset_central_charge(CosetLabel("D", 2, 1)) != coset_central_charge(CosetLabel("C", 2, 1))
    # the displayed formula evaluated at the degenerate label
    assert coset_central_charge(CosetLabel("C", 0, 0)) == -1
    with pytest.raises(TruncationError):
        CosetLabel("E", 1, 1)
    with pytest.raises(TruncationError):
        CosetLabel("C", -1, 1)


def test_feigin_frenkel_pattern():
    # D(n,0) against C(n,0) at 1/psi
    d, cc = curve_D(3, 0), curve_C(3, 0).compose(psi_inverse())
    assert d.c == cc.c and d.lam == cc.lam


def test_psi_maps():
    assert ratfunc_substitute(psi_prime(), psi_prime()) == psi
    assert 1 / psi + 1 / psi_prime() == 1


@pytest.mark.parametrize("n", range(5))
def test_triality(n):
    for m in range(n + 1):
        rep = verify_triality(n, m)
        assert rep.ok, rep.checks


def test_triality_range():
    with pytest.raises(TruncationError):
        verify_triality(1, 2)


def test_coincidence_example():
    pt = intersection_with_principal(1, 1, 3)
    assert pt.psi == 5 and pt.c == F(4, 5)
    assert curve_C(1, 1).c(5) == F(4, 5)
    # coincidence lambda (m+s)(m+n+s)/((s-2)(2m+2s-ns)(2m+2n+2s+ns)) at (1,1,3)
    assert pt.lam == F(4 * 5, 1 * 5 * 13)
    assert pt.report.ok
    with pytest.raises(TruncationError, match="parametrization pole"):
        intersection_with_principal(0, 1, 3)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("s", [3, 4, 5])
def test_coincidences(n, m, s):
    assert intersection_with_principal(n, m, s).report.ok


def test_alpha_closed_form():
    d = bootstrap_alpha(1, 1)
    assert d.alpha[2] == -2 * psi / ((psi - 1) * (psi - 2))
    assert all(not r for r in d.residuals.values())
    assert all(not r for r in bootstrap_alpha(2, 1).residuals.values())
    with pytest.raises(TruncationError):
        bootstrap_alpha(1, 0)


@pytest.mark.parametrize("nm", [(1, 1), (2, 1), (2, 2), (3, 1)])
def test_bootstrap_lambda(nm):
    d = bootstrap_lambda(*nm)
    assert d.lam == curve_C(*nm).lam
    assert all(not r for r in d.residuals.values()), d.residuals


def test_bootstrap_printed_variant_scale():
    d = bootstrap_lambda(2, 1, printed_term=True)
    assert d.lam == curve_C(2, 1).lam * F(32, 5)


def test_bcd_maps():
    rep = bcd_parameter_consistency()
    assert rep.ok
    assert len(rep.checks) >= 7

#!/usr/bin/env python3
"""Triality checks, coincidence points and the Jacobi bootstrap for the truncation curves."""

import argparse

from voalab.truncation import (bcd_parameter_consistency, bootstrap_lambda, curve_C,
                               intersection_with_principal, verify_triality)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=4)
    args = ap.parse_args()
    ok = True
    print("triality D(n,m) = C(n-m,m)(1/psi) = D(m,n)(psi')")
    for n in range(args.nmax + 1):
        row = []
        for m in range(n + 1):
            rep = verify_triality(n, m)
            ok &= rep.ok
            row.append("ok" if rep.ok else "FAIL")
        print(f"  n={n}: {' '.join(row)}")
    print("\ncoincidences with the principal curve C(s,0)")
    for n in (1, 2):
        for m in (1, 2):
            for s in (3, 4, 5):
                pt = intersection_with_principal(n, m, s)
                ok &= pt.report.ok
                print(f"  (n,m,s)=({n},{m},{s}) psi*={pt.psi} c*={pt.c} lambda*={pt.lam} "
                      f"{'ok' if pt.report.ok else 'FAIL'}")
    print("\nbootstrap lambda vs curve lambda")
    for n, m in ((1, 1), (2, 1), (2, 2), (3, 1), (3, 2)):
        d = bootstrap_lambda(n, m)
        same = d.lam == curve_C(n, m).lam
        ok &= same
        print(f"  ({n},{m}) lambda = {d.lam}  {'ok' if same else 'FAIL'}")
    rep = bcd_parameter_consistency()
    ok &= rep.ok
    print(f"\nBCD parameter maps: {'ok' if rep.ok else 'FAIL'} ({len(rep.checks)} checks)")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()

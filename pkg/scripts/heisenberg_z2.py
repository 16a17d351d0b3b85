#!/usr/bin/env python3
"""The Z/2 orbifold of the rank one Heisenberg algebra: decoupling, strong generation, Zhu ring."""

import argparse
from fractions import Fraction

from voalab.lca_engine import heisenberg, wick
from voalab.orbifold import DiagonalAction, decouple, decouple_bootstrap, verify_strong_generation
from voalab.zhu_jet import Presentation, ZhuComputation, classical_freeness_probe, truncated_hilbert


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--maxweight", type=int, default=10)
    ap.add_argument("--bootstrap", type=int, default=2, help="number of pump steps after omega(4,0)")
    args = ap.parse_args()

    h = heisenberg(1)
    a = h["a"]
    act = DiagonalAction(2, {"a": 1})

    def om(i, j):
        return wick(a.d(i), a.d(j))

    gens, names = [om(0, 0), om(2, 0)], ["w00", "w20"]
    rel = decouple(h, gens, om(4, 0), names)
    print(f"w40 = {rel}")
    targets = [om(2 * k + 6, 0) for k in range(args.bootstrap)]
    for s in decouple_bootstrap(h, gens, om(2, 0), rel, args.bootstrap, targets=targets, names=names):
        print(f"step {s.label}: factor {s.factor}, {len(s.relation.terms)} terms, verified {s.relation.verified}")

    print("\nstrong generation (weight, invariant, spanned):")
    for w, di, ds, ok in verify_strong_generation(h, act, gens, args.maxweight).rows:
        if w.denominator == 1:
            print(f"  {str(w):>3} {di:>4} {ds:>4} {'ok' if ok else 'DEFICIT'}")

    R = Presentation.parse([("l", 2), ("w", 4)], ["w^2 - l^2*w", "l^3*w"])
    z = ZhuComputation(h, act)
    print("\nZhu ring dims   ", z.dims(args.maxweight).as_tuple())
    print("presentation    ", truncated_hilbert(R, args.maxweight).as_tuple())
    L, W = wick(a, a) * Fraction(1, 2), wick(a.d(2), a) * Fraction(35, 132)
    print("w(w - l^2) in C2:", z.contains(wick(W, W) - wick(W, wick(L, L))))
    print("l^3 w in C2:     ", z.contains(wick(L, wick(L, wick(L, W)))))
    print("\narc ring vs vertex algebra:")
    for w, arc, voa in classical_freeness_probe(h, act, R, args.maxweight).rows:
        print(f"  {str(w):>3} {arc:>4} {voa:>4}{'' if arc == voa else '  strict'}")


if __name__ == "__main__":
    main()

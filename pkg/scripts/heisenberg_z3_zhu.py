#!/usr/bin/env python3
"""Relations in Zhu's C2 algebra of the Z/3 orbifold of the rank two Heisenberg algebra."""

import argparse
import time
from fractions import Fraction

from voalab.lca_engine import heisenberg, nth_product, wick
from voalab.orbifold import DiagonalAction
from voalab.zhu_jet import ZhuComputation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--brute", action="store_true", help="use the full a_(-2)b span instead of strong generators")
    ap.add_argument("--dims", type=int, default=0, help="also print C2 quotient dims up to this weight")
    args = ap.parse_args()

    h = heisenberg(2, form=[[0, 1], [1, 0]], names=["b1", "b2"])
    b1, b2 = h["b1"], h["b2"]
    act = DiagonalAction(3, {"b1": 1, "b2": 2})
    L = wick(b1, b2)
    W3 = (wick(b1, b2.d()) - wick(b1.d(), b2)) * Fraction(1, 2)
    W4 = nth_product(W3, 1, W3)
    W5 = nth_product(W3, 1, W4)
    C3, D3 = wick(b1, wick(b1, b1)), wick(b2, wick(b2, b2))
    C5, D5 = wick(b1.d(2), wick(b1, b1)), wick(b2.d(2), wick(b2, b2))
    strong = None if args.brute else [L, W3, W4, W5, C3, D3, C5, D5]
    z = ZhuComputation(h, act, strong_generators=strong)
    rels = {
        "C3 D3 + 117 W3^2 - 33 L W4 - L^3": wick(C3, D3) + wick(W3, W3) * 117 - wick(L, W4) * 33
        - wick(L, wick(L, L)),
        "W3^3 - 8/27 L W3 W4 + 1/108 L^2 W5 - 1/1296 W4 W5": wick(W3, wick(W3, W3))
        - wick(L, wick(W3, W4)) * Fraction(8, 27) + wick(L, wick(L, W5)) * Fraction(1, 108)
        - wick(W4, W5) * Fraction(1, 1296),
        "W4^3": wick(W4, wick(W4, W4)),
        "W5^2": wick(W5, W5),
        "C5^2": wick(C5, C5),
        "D5^2": wick(D5, D5),
    }
    for name, st in rels.items():
        t = time.time()
        print(f"{name:52s} in C2: {z.contains(st)}  ({time.time() - t:.2f}s)")
    if args.dims:
        print("dims", z.dims(args.dims).as_tuple())


if __name__ == "__main__":
    main()

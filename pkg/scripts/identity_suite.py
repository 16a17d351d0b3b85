#!/usr/bin/env python3
"""Randomized check of the five vertex algebra identities on standard free field algebras."""

import argparse
import random
import time
from fractions import Fraction

from voalab.lca_engine import (State, basis_w2, beta_gamma, check_identities, free_fermion, heisenberg,
                               o_ev, s_ev, symplectic_fermion)

ALGEBRAS = {
    "heisenberg2": lambda: heisenberg(2),
    "fermion2": lambda: free_fermion(2),
    "betagamma1": lambda: beta_gamma(1),
    "symplectic1": lambda: symplectic_fermion(1),
    "sev13": lambda: s_ev(1, 3),
    "oev14": lambda: o_ev(1, 4),
}


def random_state(h, rng, w2):
    b = basis_w2(h, w2)
    if not b:
        return None
    par = h.mono_par(rng.choice(b))
    b = [m for m in b if h.mono_par(m) == par]
    out = h.zero()
    for m in rng.sample(b, min(len(b), rng.randint(1, 3))):
        out = out + State(h, {m: Fraction(rng.randint(1, 5) * rng.choice((1, -1)))})
    return out


def random_triple(h, rng, maxweight):
    top = 2 * maxweight
    while True:
        ws = [rng.randint(min(h.w2), top) for _ in range(3)]
        if sum(ws) <= top:
            sts = [random_state(h, rng, w) for w in ws]
            if all(sts):
                return sts


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--triples", type=int, default=200)
    ap.add_argument("--maxweight", type=int, default=6, help="bound on the total weight of a triple")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--only", choices=sorted(ALGEBRAS))
    args = ap.parse_args()
    names = [args.only] if args.only else list(ALGEBRAS)
    failed = 0
    for name in names:
        h = ALGEBRAS[name]()
        rng = random.Random(args.seed)
        t = time.time()
        bad = 0
        for _ in range(args.triples):
            rep = check_identities(h, *random_triple(h, rng, args.maxweight))
            if not rep.ok:
                bad += 1
                print(f"  {name}: {rep.summary()}")
        failed += bad
        print(f"{name:12s} {args.triples - bad}/{args.triples} triples pass  ({time.time() - t:.1f}s)")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()

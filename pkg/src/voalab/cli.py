"""Command line front end.

Expression grammar (whitespace-insensitive except for the colon rule below):

    expr    := term (("+" | "-") term)*
    term    := "-" term | prod
    prod    := nprod (("*" | "/")? nprod)*          juxtaposition multiplies by scalars
    nprod   := power ("_(" int ")" power)*           a _(n) b is the n-th product
    power   := atom ("^" int)?                       scalars only
    atom    := number | param | generator | "(" expr ")"
             | "d" ("^" int)? power                  derivative
             | ":" item item* ":"                    right-nested normally ordered product
             | "omega(" int "," int ")"              sum over generators of :(d^i x)(d^j x):

Inside a ":...:" group with at least one item, a colon closes the group unless it has
whitespace before it and an item directly after it, in which case it opens a nested group.
So ":a :a a::" is :a :a a:: and ":a :b c: d:" is :a :b c: d:.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import conformal, lca_engine, orbifold, truncation, zhu_jet
from .exact import ExactError, RatFunc, fmt_coeff, parse_coeff
from .lca_engine import AlgebraError, State, derivative, iterated_wick, nth_product, wick


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# expression parser

class ParseError(UsageError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(src):
    toks = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        space = i > 0 and src[i - 1].isspace()
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(("num", int(src[i:j]), i, space))
            i = j
        elif ch.isalpha() or ch == "_" and not src.startswith("_(", i):
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_") and not src.startswith("_(", j):
                j += 1
            toks.append(("name", src[i:j], i, space))
            i = j
        elif src.startswith("_(", i):
            toks.append(("nth", "_(", i, space))
            i += 2
        elif ch in "+-*/^():,":
            toks.append(("op", ch, i, space))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("end", None, n, False))
    return toks


class _Scalar:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v


class ExprParser:
    def __init__(self, h, src):
        self.h = h
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    # helpers
    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind=None, val=None):
        t = self.peek()
        if (kind and t[0] != kind) or (val is not None and t[1] != val):
            want = val if val is not None else kind
            raise ParseError(f"expected {want!r}", t[2])
        self.i += 1
        return t

    def is_op(self, val, k=0):
        t = self.peek(k)
        return t[0] == "op" and t[1] == val

    def starts_atom(self, k=0):
        t = self.peek(k)
        return t[0] in ("num", "name") or (t[0] == "op" and t[1] in "(:")

    # values
    def scalar(self, c):
        if self.h.param is not None and not isinstance(c, RatFunc):
            c = RatFunc.const(self.h.param, c)
        return _Scalar(c)

    def state(self, v, pos):
        if isinstance(v, _Scalar):
            return self.h.vacuum() * v.v
        return v

    def mul(self, a, b, pos):
        if isinstance(a, _Scalar) and isinstance(b, _Scalar):
            return _Scalar(a.v * b.v)
        if isinstance(a, _Scalar):
            return b * a.v
        if isinstance(b, _Scalar):
            return a * b.v
        raise ParseError("product of two states needs :...: or _(n)", pos)

    def add(self, a, b, sign):
        if isinstance(a, _Scalar) and isinstance(b, _Scalar):
            return _Scalar(a.v + b.v * sign)
        a, b = self.state(a, 0), self.state(b, 0)
        return a + b * sign

    # grammar
    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected {t[1]!r}", t[2])
        return self.state(v, 0)

    def expr(self):
        v = self.term()
        while self.is_op("+") or self.is_op("-"):
            sign = 1 if self.take()[1] == "+" else -1
            v = self.add(v, self.term(), sign)
        return v

    def term(self):
        if self.is_op("-"):
            self.take()
            return self.mul(_Scalar(-1), self.term(), 0)
        return self.prod()

    def prod(self, group=False):
        v = self.nprod()
        while True:
            t = self.peek()
            if self.is_op("*"):
                self.take()
                v = self.mul(v, self.nprod(), t[2])
            elif self.is_op("/"):
                self.take()
                d = self.nprod()
                if not isinstance(d, _Scalar):
                    raise ParseError("can only divide by a scalar", t[2])
                if not d.v:
                    raise ParseError("division by zero", t[2])
                v = self.mul(v, _Scalar(1 / d.v if not isinstance(d.v, int) else Fraction(1, d.v)), t[2])
            elif self.starts_atom() and not self.is_op(":"):
                v = self.mul(v, self.nprod(), t[2])
            elif self.is_op(":") and not group and isinstance(v, _Scalar):
                v = self.mul(v, self.nprod(), t[2])
            else:
                return v

    def nprod(self):
        v = self.power()
        while self.peek()[0] == "nth":
            pos = self.take()[2]
            neg = self.is_op("-")
            if neg:
                self.take()
            n = self.take("num")[1] * (-1 if neg else 1)
            self.take("op", ")")
            b = self.power()
            v = nth_product(self.state(v, pos), n, self.state(b, pos))
        return v

    def power(self):
        v = self.atom()
        if self.is_op("^"):
            pos = self.take()[2]
            e = self.take("num")[1]
            if not isinstance(v, _Scalar):
                raise ParseError("powers apply to scalars only", pos)
            v = _Scalar(v.v ** e)
        return v

    def atom(self):
        t = self.peek()
        kind, val, pos, _ = t
        if kind == "num":
            self.take()
            return self.scalar(Fraction(val))
        if kind == "name":
            self.take()
            if val == "d":
                k = 1
                if self.is_op("^"):
                    self.take()
                    k = self.take("num")[1]
                return derivative(self.state(self.power(), pos), k)
            if val == "omega" and self.is_op("("):
                return self.omega(pos)
            if val in self.h.index:
                return self.h[val]
            if self.h.param is not None and val == self.h.param:
                return _Scalar(RatFunc.var(val))
            raise ParseError(f"unknown generator {val!r}", pos)
        if kind == "op" and val == "(":
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        if kind == "op" and val == ":":
            return self.group()
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", pos)

    def omega(self, pos):
        self.take("op", "(")
        i = self.take("num")[1]
        self.take("op", ",")
        j = self.take("num")[1]
        self.take("op", ")")
        out = self.h.zero()
        for x in self.h.names:
            out = out + wick(derivative(self.h[x], i), derivative(self.h[x], j))
        return out

    def group(self):
        start = self.take("op", ":")[2]
        items = []
        while True:
            t = self.peek()
            if t[0] == "end":
                raise ParseError("unclosed ':'", start)
            if self.is_op(":") and items:
                nxt = self.peek(1)
                opener = t[3] and nxt[3] is False and self.starts_atom(1) and not (
                    nxt[0] == "op" and nxt[1] == ":")
                if not opener:
                    self.take()
                    break
            items.append(self.item())
        states = [self.state(v, start) for v in items]
        return iterated_wick(states)

    def item(self):
        # an item is a product without juxtaposed states; scalars may prefix it
        v = self.nprod()
        while isinstance(v, _Scalar) and self.starts_atom() and not self.is_op(":"):
            v = self.mul(v, self.nprod(), self.peek()[2])
        return v


def parse_expr(src, h):
    return ExprParser(h, src).parse()


# ---------------------------------------------------------------------------
# builtin algebras and selectors

def _num(s):
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"expected an integer, got {s!r}") from None


def _coeff(s):
    s = s.strip()
    try:
        return Fraction(s)
    except ValueError:
        pass
    for p in ("k", "c", "kappa", "psi"):
        try:
            return parse_coeff(s, p)
        except (ExactError, ValueError):
            continue
    raise UsageError(f"cannot parse coefficient {s!r}")


BUILTINS = {
    "heisenberg": "heisenberg:n", "fermion": "fermion:n", "betagamma": "betagamma:n", "bc": "bc:n",
    "symplectic": "symplectic:n", "abelian": "abelian:n", "sev": "sev:n:k", "sodd": "sodd:n:k",
    "oev": "oev:n:k", "oodd": "oodd:n:k", "virasoro": "virasoro:c", "affine-sl2": "affine-sl2:k",
    "deformable-sl2": "deformable-sl2", "family": "family:TAG:n:k",
}


def builtin_algebra(name):
    """Returns (handle, default action or None, family or None)."""
    parts = name.split(":")
    kind, args = parts[0], parts[1:]
    simple = {"heisenberg": lca_engine.heisenberg, "fermion": lca_engine.free_fermion,
              "betagamma": lca_engine.beta_gamma, "bc": lca_engine.bc,
              "symplectic": lca_engine.symplectic_fermion, "abelian": lca_engine.abelian}
    pair = {"sev": lca_engine.s_ev, "sodd": lca_engine.s_odd, "oev": lca_engine.o_ev, "oodd": lca_engine.o_odd}
    if kind in simple:
        return simple[kind](_num(args[0]) if args else 1), None, None
    if kind in pair:
        if len(args) != 2:
            raise UsageError(f"{kind} needs n:k")
        return pair[kind](_num(args[0]), _num(args[1])), None, None
    if kind == "virasoro":
        return lca_engine.virasoro(_coeff(args[0]) if args else RatFunc.var("c")), None, None
    if kind == "affine-sl2":
        lev = _coeff(args[0]) if args else RatFunc.var("k")
        return lca_engine.affine(lca_engine.sl2_data(), lev), None, None
    if kind == "deformable-sl2":
        return lca_engine.deformable_affine(), None, None
    if kind == "family":
        if len(args) != 3:
            raise UsageError("family needs TAG:n:k")
        fam = orbifold.QuadraticFamily(args[0], _num(args[1]), _num(args[2]))
        return fam.algebra(), fam.action(), fam
    raise UsageError(f"unknown builtin {name!r}; known: {', '.join(BUILTINS.values())}")


def parse_invariant(spec, h):
    """'z2' (every generator odd), or 'z3:b1=1,b2=2' with explicit charges."""
    if not spec.startswith("z"):
        raise UsageError(f"bad invariant spec {spec!r}")
    head, _, rest = spec.partition(":")
    d = _num(head[1:])
    if rest:
        charge = {}
        for item in rest.split(","):
            g, _, c = item.partition("=")
            charge[g.strip()] = _num(c)
    else:
        charge = {x: 1 for x in h.names}
    act = orbifold.DiagonalAction(d, charge)
    act.validate(h)
    return act


# ---------------------------------------------------------------------------
# output helpers

def _s(x):
    if isinstance(x, State):
        return str(x)
    if isinstance(x, (Fraction, RatFunc, int)):
        return fmt_coeff(x)
    return str(x)


class Out:
    def __init__(self, fmt):
        self.fmt = fmt
        self.lines = []
        self.data = {}

    def line(self, s=""):
        self.lines.append(s)

    def emit(self):
        if self.fmt == "json":
            print(json.dumps(self.data, indent=2, sort_keys=True))
        else:
            print("\n".join(self.lines))


def _load_algebra(args):
    if getattr(args, "algebra", None):
        with open(args.algebra) as fh:
            obj = json.load(fh)
        return lca_engine.build_algebra(lca_engine.spec_from_json(obj)), None, None
    if getattr(args, "builtin", None):
        return builtin_algebra(args.builtin)
    raise UsageError("one of --algebra or --builtin is required")


def _selector(args, h, action, family):
    if getattr(args, "invariant", None):
        return zhu_jet.Invariants(parse_invariant(args.invariant, h))
    if getattr(args, "generated_by", None):
        return zhu_jet.GeneratedBy([parse_expr(e, h) for e in args.generated_by])
    if action is not None and not getattr(args, "full", False):
        return zhu_jet.Invariants(action)
    return zhu_jet.Full()


def _presentation(args):
    if getattr(args, "presentation", None):
        with open(args.presentation) as fh:
            return zhu_jet.Presentation.from_json(json.load(fh))
    if not getattr(args, "vars", None):
        raise UsageError("a presentation needs --presentation FILE or --vars")
    vs = []
    for item in args.vars.split(","):
        name, _, w = item.partition(":")
        vs.append((name.strip(), Fraction(w or "1")))
    return zhu_jet.Presentation.parse(vs, args.relations or [])


# ---------------------------------------------------------------------------
# subcommands (each returns an exit code)

def cmd_ope(args, out):
    h, _, _ = _load_algebra(args)
    a, b = parse_expr(args.a, h), parse_expr(args.b, h)
    if args.n is not None:
        r = nth_product(a, args.n, b)
        out.line(_s(r))
        out.data = {"n": args.n, "result": _s(r)}
        return 0
    top = (max(a.weights2x(), default=0) + max(b.weights2x(), default=0)) // 2
    rows = []
    for n in range(top, -1, -1):
        r = nth_product(a, n, b)
        if r:
            rows.append((n, r))
            out.line(f"({n}): {r}")
    if not rows:
        out.line("regular")
    out.data = {"products": {str(n): _s(r) for n, r in rows}}
    return 0


def cmd_wick(args, out):
    h, _, _ = _load_algebra(args)
    states = [parse_expr(e, h) for e in args.exprs]
    r = iterated_wick(states)
    out.line(_s(r))
    out.data = {"result": _s(r)}
    return 0


def _random_state(h, rng, maxw2):
    for _ in range(50):
        w2 = rng.randint(1, maxw2)
        b = lca_engine.basis_w2(h, w2)
        if not b:
            continue
        st = h.zero()
        for m in rng.sample(b, min(len(b), rng.randint(1, 2))):
            st = st + State(h, {m: Fraction(rng.randint(-3, 3) or 1)})
        if st:
            return st
    raise UsageError("algebra has no states in the requested weight range")


def cmd_identities(args, out):
    h, _, _ = _load_algebra(args)
    if args.a:
        triples = [tuple(parse_expr(e, h) for e in (args.a, args.b or args.a, args.c or args.a))]
    else:
        rng = random.Random(args.seed)
        triples = []
        for _ in range(args.random):
            tr = [_random_state(h, rng, 2 * args.maxweight) for _ in range(3)]
            triples.append(tuple(tr))
    failures = {k: 0 for k in lca_engine.IDENTITIES}
    for a, b, c in triples:
        rep = lca_engine.check_identities(h, a, b, c)
        for k, v in rep.results.items():
            failures[k] += len(v)
    ok = not any(failures.values())
    for k in lca_engine.IDENTITIES:
        out.line(f"{k}: {'pass' if not failures[k] else 'FAIL (' + str(failures[k]) + ')'}")
    out.line(f"{len(triples)} triple(s): {'PASS' if ok else 'FAIL'}")
    out.data = {"triples": len(triples), "failures": failures, "ok": ok}
    return 0 if ok else 1


def cmd_charge(args, out):
    h, _, _ = _load_algebra(args)
    if args.L:
        vv = conformal.VirasoroVector(parse_expr(args.L, h), None)
        c = conformal.central_charge(vv)
        L = vv.state
    else:
        vv = conformal.standard_virasoro(h, _coeff(args.lam) if args.lam else None)
        c, L = vv.c, vv.state
    out.line(f"L = {L}")
    out.line(f"c = {_s(c)}")
    out.data = {"L": _s(L), "c": _s(c)}
    return 0


def cmd_sugawara(args, out):
    h, _, _ = _load_algebra(args)
    fam = h.family or ()
    if args.hvee:
        hv = _coeff(args.hvee)
    elif fam and fam[0] == "deformable_affine":
        # compact so(3) basis: level -2 kappa^2 in the normalized form
        hv = parse_coeff(f"-1/{h.param}^2", h.param)
    else:
        hv = Fraction(2)
    if fam and fam[0] == "deformable_affine":
        dual = [(x, {x: 1}) for x in h.names]
        vv = conformal.sugawara(h, dual, hv, RatFunc.const(h.param, 1))
    else:
        vv = conformal.sugawara(h, None, hv)
    out.line(f"L = {vv.state}")
    out.line(f"c = {_s(vv.c)}")
    out.data = {"L": _s(vv.state), "c": _s(vv.c)}
    return 0


def _generators(args, h, family):
    if args.generators:
        return [(e, parse_expr(e, h)) for e in args.generators]
    if family is not None:
        return list(zip(family.labels(), orbifold.omega_generators(family)))
    if args.invariant and len(h.names) == 1:
        return [("omega(0,0)", parse_expr("omega(0,0)", h)), ("omega(2,0)", parse_expr("omega(2,0)", h))]
    raise UsageError("--generators required")


def cmd_decouple(args, out):
    h, _, family = _load_algebra(args)
    gens = _generators(args, h, family)
    target = parse_expr(args.target, h)
    rel = orbifold.decouple(h, [g for _, g in gens], target, [n for n, _ in gens])
    if rel is None:
        out.line("none")
        out.data = {"target": args.target, "relation": None}
        return 1
    out.line(f"{args.target} = {rel}")
    out.data = {"target": args.target, "relation": rel.to_json(), "text": str(rel), "verified": rel.verified}
    return 0


def cmd_invariants(args, out):
    h, action, family = _load_algebra(args)
    act = parse_invariant(args.invariant, h) if args.invariant else action
    if act is None:
        raise UsageError("--invariant or a family builtin is required")
    if args.maxweight is not None:
        gens = _generators(args, h, family)
        rep = orbifold.verify_strong_generation(h, act, [g for _, g in gens], args.maxweight,
                                                [n for n, _ in gens])
        for w, di, ds, ok in rep.rows:
            out.line(f"weight {fmt_coeff(w)}: invariant {di}, spanned {ds} {'ok' if ok else 'DEFICIT'}")
        out.line("PASS" if rep.ok else "FAIL")
        out.data = {"rows": [{"weight": str(w), "invariant": di, "spanned": ds, "ok": ok}
                             for w, di, ds, ok in rep.rows], "ok": rep.ok}
        return 0 if rep.ok else 1
    w = Fraction(args.weight or 0)
    states = orbifold.invariant_space(h, act, w)
    for st in states:
        out.line(str(st))
    out.line(f"dimension {len(states)}")
    out.data = {"weight": str(w), "basis": [str(s) for s in states], "dimension": len(states)}
    return 0


def _int_list(s):
    try:
        return tuple(int(x) for x in s.replace(" ", "").strip("()[]").split(",") if x)
    except ValueError:
        raise UsageError(f"bad list {s!r}") from None


def cmd_pfaffian(args, out):
    p = orbifold.pfaffian(_int_list(args.list))
    out.line(str(p))
    out.data = {"list": list(_int_list(args.list)), "pfaffian": str(p)}
    return 0


def cmd_rn(args, out):
    I = _int_list(args.list)
    vals = {}
    if args.method in ("closed", "both"):
        vals["closed"] = orbifold.rn_closed(I)
    if args.method in ("recursion", "both"):
        vals["recursion"] = orbifold.rn_recursion(I)
    for k, v in vals.items():
        out.line(f"{k}: {fmt_coeff(v)}")
    ok = len(set(vals.values())) == 1
    if len(vals) == 2:
        out.line("agree" if ok else "DISAGREE")
    out.data = {k: fmt_coeff(v) for k, v in vals.items()}
    out.data["agree"] = ok
    return 0 if ok else 1


def cmd_zhu(args, out):
    h, action, family = _load_algebra(args)
    sel = _selector(args, h, action, family)
    strong = [parse_expr(e, h) for e in args.strong] if args.strong else None
    z = zhu_jet.ZhuComputation(h, sel, strong)
    if args.relation:
        expr = parse_expr(args.relation, h)
        res = zhu_jet.relation_in_zhu(h, sel, expr, computation=z)
        out.line("in C2: true" if res else "in C2: false")
        out.data = {"relation": args.relation, "in_c2": res}
        return 0
    dims = z.dims(args.maxweight, zhu_jet._step(h))
    out.line(" ".join(str(d) for d in dims.as_tuple(integral=False)))
    out.data = {"dims": dims.to_json()}
    return 0


def cmd_jet(args, out):
    p = _presentation(args)
    m = zhu_jet.ARC if args.m == "inf" else _num(args.m)
    jp = zhu_jet.jet_presentation(p, m, args.cutoff)
    out.line("variables: " + ", ".join(f"{n} (weight {fmt_coeff(Fraction(w, 2))})" for n, w in jp.variables))
    for f in jp.relations:
        out.line(f"  {f}")
    out.data = jp.to_json()
    return 0


def cmd_hilbert(args, out):
    p = _presentation(args)
    if args.arc:
        p = zhu_jet.jet_presentation(p, zhu_jet.ARC, args.maxweight)
    elif args.m is not None:
        p = zhu_jet.jet_presentation(p, _num(args.m))
    dims = zhu_jet.truncated_hilbert(p, args.maxweight)
    out.line(" ".join(str(d) for d in dims.as_tuple(integral=False)))
    out.data = {"dims": dims.to_json()}
    return 0


def cmd_probe(args, out):
    h, action, family = _load_algebra(args)
    sel = _selector(args, h, action, family)
    rep = zhu_jet.classical_freeness_probe(h, sel, _presentation(args), args.maxweight)
    for w, a, v in rep.rows:
        out.line(f"weight {fmt_coeff(w)}: arc {a}, vertex algebra {v}{'' if a == v else '  (strict)'}")
    eq = rep.equal_through()
    out.line(f"equal through weight {fmt_coeff(eq) if eq is not None else '-'}")
    out.data = rep.to_json()
    out.data["equal_through"] = None if eq is None else str(eq)
    return 0


def _report(rep, out):
    for name, ok, detail in rep.checks:
        out.line(f"{'ok  ' if ok else 'FAIL'} {name}" + (f"  [{detail}]" if detail and not ok else ""))
    out.line("PASS" if rep.ok else "FAIL")
    return [{"name": n, "passed": ok, "detail": d} for n, ok, d in rep.checks]


def cmd_curve(args, out):
    pt = (truncation.curve_C if args.family == "C" else truncation.curve_D)(args.n, args.m)
    out.line(f"c(psi) = {pt.c}")
    out.line(f"lambda(psi) = {pt.lam if pt.lam is not None else 'undefined (degenerate label)'}")
    out.data = {"c": str(pt.c), "lambda": None if pt.lam is None else str(pt.lam),
                "in_range": pt.in_range, "checks": []}
    return 0


def cmd_triality(args, out):
    rep = truncation.verify_triality(args.n, args.m)
    checks = _report(rep, out)
    d = truncation.curve_D(args.n, args.m)
    out.data = {"c": str(d.c), "lambda": None if d.lam is None else str(d.lam), "checks": checks, "ok": rep.ok}
    return 0 if rep.ok else 1


def cmd_coincide(args, out):
    co = truncation.intersection_with_principal(args.n, args.m, args.s)
    out.line(f"psi = {fmt_coeff(co.psi)}, r = {fmt_coeff(co.r)}")
    out.line(f"c = {fmt_coeff(co.c)}, lambda = {fmt_coeff(co.lam) if co.lam is not None else 'undefined'}")
    checks = _report(co.report, out)
    out.data = {"psi": fmt_coeff(co.psi), "r": fmt_coeff(co.r), "c": fmt_coeff(co.c),
                "lambda": None if co.lam is None else fmt_coeff(co.lam), "checks": checks, "ok": co.report.ok}
    return 0 if co.report.ok else 1


def cmd_bootstrap(args, out):
    d = truncation.bootstrap_lambda(args.n, args.m, printed_term=args.printed_term)
    out.line(f"lambda = {d.lam}")
    out.line(f"a3^2 = {d.a3_squared}")
    out.line(f"b0 = {d.b0}")
    bad = {k: str(v) for k, v in d.residuals.items() if v}
    for k, v in d.residuals.items():
        out.line(f"{'ok  ' if not v else 'FAIL'} {k}" + (f"  [{v}]" if v else ""))
    out.line("PASS" if not bad else "FAIL")
    out.data = {"lambda": str(d.lam), "c": str(truncation.curve_C(args.n, args.m).c),
                "a3_squared": str(d.a3_squared), "b0": str(d.b0),
                "checks": [{"name": k, "passed": not v, "detail": str(v)} for k, v in d.residuals.items()],
                "ok": not bad}
    return 0 if not bad else 1


def cmd_limit(args, out):
    h, _, _ = _load_algebra(args)
    lim = lca_engine.limit_infinity(h)
    spec = lca_engine.spec_to_json(lim.algebra.spec)
    for e in spec["brackets"]:
        terms = " + ".join(f"{t['coeff']}*d^{t['dz']} {t['gen']}" for t in e["terms"]) or "0"
        out.line(f"{e['a']}_({e['j']}){e['b']} = {terms}  (central {e['central']})")
    out.data = spec
    return 0


def cmd_shapovalov(args, out):
    h, _, _ = _load_algebra(args)
    G, det = lca_engine.shapovalov_gram(h, Fraction(args.weight))
    out.line(f"size {len(G)}, det = {_s(det)}")
    out.data = {"weight": args.weight, "size": len(G), "det": _s(det)}
    return 0


COMMANDS = {
    "ope": cmd_ope, "wick": cmd_wick, "identities": cmd_identities, "charge": cmd_charge,
    "sugawara": cmd_sugawara, "decouple": cmd_decouple, "invariants": cmd_invariants,
    "pfaffian": cmd_pfaffian, "rn": cmd_rn, "zhu": cmd_zhu, "jet": cmd_jet, "hilbert": cmd_hilbert,
    "probe": cmd_probe, "curve": cmd_curve, "triality": cmd_triality, "coincide": cmd_coincide,
    "bootstrap": cmd_bootstrap, "limit": cmd_limit, "shapovalov": cmd_shapovalov,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--algebra", help="JSON algebra spec file")
    common.add_argument("--builtin", help="builtin algebra, e.g. heisenberg:1, sev:1:1, family:S_ev-Sp:1:1")

    p = argparse.ArgumentParser(prog="voalab", description="Exact vertex algebra computations.",
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    s = add("ope", "n-th products a_(n)b (all n >= 0 if --n is omitted)")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--n", type=int)

    s = add("wick", "right-nested normally ordered product of the given expressions")
    s.add_argument("exprs", nargs="+")

    s = add("identities", "check the vertex algebra identities")
    s.add_argument("--a")
    s.add_argument("--b")
    s.add_argument("--c")
    s.add_argument("--random", type=int, default=20)
    s.add_argument("--maxweight", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)

    s = add("charge", "central charge of a conformal vector")
    s.add_argument("--L")
    s.add_argument("--lam")

    s = add("sugawara", "Sugawara vector of an affine algebra")
    s.add_argument("--hvee")

    for name, help_ in (("decouple", "decoupling relation for a target"),
                        ("invariants", "invariant subspace or strong generation check")):
        s = add(name, help_)
        s.add_argument("--invariant", help="z2, or z3:b1=1,b2=2")
        s.add_argument("--generators", nargs="+")
        if name == "decouple":
            s.add_argument("--target", required=True)
        else:
            s.add_argument("--weight")
            s.add_argument("--maxweight", type=int)

    for name in ("pfaffian", "rn"):
        s = add(name, f"{name} of an index list")
        s.add_argument("--list", required=True)
        if name == "rn":
            s.add_argument("--method", choices=("closed", "recursion", "both"), default="both")

    def pres(s):
        s.add_argument("--presentation", help="JSON file {vars: [{name, weight2x}], relations: [...]}")
        s.add_argument("--vars", help="comma separated name:weight, e.g. l:2,w:4")
        s.add_argument("--relations", nargs="*")

    s = add("zhu", "graded dimensions of Zhu's C2 algebra, or a membership test")
    s.add_argument("--invariant")
    s.add_argument("--generated-by", nargs="+")
    s.add_argument("--full", action="store_true")
    s.add_argument("--strong", nargs="+", help="strong generators (faster C2 span)")
    s.add_argument("--maxweight", type=int, default=6)
    s.add_argument("--relation")

    s = add("jet", "jet scheme presentation")
    pres(s)
    s.add_argument("--m", default="1")
    s.add_argument("--cutoff")

    s = add("hilbert", "truncated Hilbert function")
    pres(s)
    s.add_argument("--maxweight", type=int, default=10)
    s.add_argument("--arc", action="store_true")
    s.add_argument("--m")

    s = add("probe", "compare arc ring and vertex algebra dimensions")
    pres(s)
    s.add_argument("--invariant")
    s.add_argument("--full", action="store_true")
    s.add_argument("--maxweight", type=int, default=8)

    s = add("curve", "truncation curve parametrization")
    s.add_argument("--family", choices=("C", "D"), default="C")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)

    s = add("triality", "D(n,m) = C(n-m,m)(1/psi) = D(m,n)(psi')")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)

    s = add("coincide", "intersection with the principal W-algebra curve")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--s", type=int, required=True)

    s = add("bootstrap", "lambda from the Jacobi identity elimination")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--printed-term", action="store_true")

    add("limit", "free field limit of a deformable family")

    s = add("shapovalov", "Shapovalov determinant at a weight")
    s.add_argument("--weight", required=True)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = Out(args.format)
    try:
        code = COMMANDS[args.command](args, out)
    except (UsageError, AlgebraError, ExactError, truncation.TruncationError, zhu_jet.ZhuError,
            OSError, json.JSONDecodeError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2
    out.emit()
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

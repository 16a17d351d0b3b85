import json
import random
from fractions import Fraction as F

import pytest

from voalab.cli import ParseError, builtin_algebra, parse_expr, run
from voalab.lca_engine import (State, basis, deformable_affine, free_fermion, heisenberg, iterated_wick,
                               spec_to_json, wick)


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def cli_json(capsys, *argv):
    code, out, _ = cli(capsys, *argv, "--format", "json")
    return code, json.loads(out)


H1 = heisenberg(1)
a = H1["a"]


def test_parse_examples():
    assert parse_expr(":a a:", H1) == wick(a, a)
    assert parse_expr("(d^2 a) _( -1 ) a", H1) == wick(a.d(2), a)
    assert parse_expr(":a :a a::", H1) == iterated_wick([a, a, a])
    assert parse_expr("  : a   a :  ", H1) == wick(a, a)
    assert parse_expr("a _(1) a", H1) == H1.vacuum()
    assert parse_expr("omega(2,0)", H1) == wick(a.d(2), a)


@pytest.mark.parametrize("src", ["b", ":a a", "a _( a", "d^", "a +"])
def test_parse_errors(src):
    with pytest.raises(Exception) as e:
        parse_expr(src, H1)
    assert isinstance(e.value, (ParseError, ValueError))


def _random_state(h, rng):
    out = h.zero()
    for _ in range(rng.randint(1, 3)):
        w = rng.randint(0, 4)
        b = basis(h, w)
        if b:
            out = out + State(h, {rng.choice(b): F(rng.randint(-9, 9), rng.randint(1, 4))})
    return out


@pytest.mark.parametrize("h", [heisenberg(2), free_fermion(1), deformable_affine()], ids=["H2", "F1", "def"])
def test_print_parse_roundtrip(h):
    rng = random.Random(3)
    for _ in range(40):
        st = _random_state(h, rng)
        assert parse_expr(str(st), h) == st


def test_builtins():
    h, act, fam = builtin_algebra("heisenberg:2")
    assert h.names == ["a1", "a2"] and act is None and fam is None
    _, _, fam = builtin_algebra("family:S_ev-Sp:1:1")
    assert fam.tag == "S_ev-Sp"


def test_ope(capsys):
    code, out, _ = cli(capsys, "ope", "--builtin", "heisenberg:1", "--a", "a", "--b", "a", "--n", "1")
    assert code == 0 and out.strip() == "1"
    code, data = cli_json(capsys, "ope", "--builtin", "heisenberg:1", "--a", "a", "--b", "a", "--n", "1")
    assert data["result"] == "1"


def test_decouple(capsys):
    code, out, _ = cli(capsys, "decouple", "--builtin", "heisenberg:1", "--invariant", "z2",
                       "--target", "omega(4,0)")
    assert code == 0
    for coeff in ("-2/5", "4/5", "1/5", "7/5", "7/30"):
        assert coeff in out
    code, data = cli_json(capsys, "decouple", "--builtin", "heisenberg:1", "--invariant", "z2",
                          "--target", "omega(4,0)")
    assert data["verified"] is True
    assert sorted(t["coeff"] for t in data["relation"]) == sorted(["-2/5", "4/5", "1/5", "7/5", "-7/30"])
    code, _, _ = cli(capsys, "decouple", "--builtin", "heisenberg:1", "--generators", "omega(0,0)",
                     "--target", "omega(4,0)")
    assert code == 1


def test_truncation_commands(capsys):
    code, out, _ = cli(capsys, "triality", "--n", "2", "--m", "1")
    assert code == 0 and out.strip().endswith("PASS")
    code, data = cli_json(capsys, "curve", "--n", "2", "--m", "0")
    assert data["lambda"] is None
    code, out, _ = cli(capsys, "bootstrap", "--n", "2", "--m", "1")
    assert code == 0
    code, data = cli_json(capsys, "coincide", "--n", "1", "--m", "1", "--s", "3")
    assert code == 0 and data["ok"]


def test_charges(capsys):
    code, out, _ = cli(capsys, "charge", "--builtin", "betagamma:1", "--lam", "2")
    assert code == 0 and out.strip().endswith("26")
    code, data = cli_json(capsys, "charge", "--builtin", "heisenberg:3")
    assert data["c"] == "3"


def test_rn_and_pfaffian(capsys):
    code, data = cli_json(capsys, "rn", "--list", "0,1,2,3")
    assert code == 0 and data["closed"] == "1/6" and data["agree"]
    code, out, _ = cli(capsys, "pfaffian", "--list", "0,1,2,3")
    assert out.strip() == "Q0_1*Q2_3 - Q0_2*Q1_3 + Q0_3*Q1_2"


def test_zhu_jet_commands(capsys):
    code, out, _ = cli(capsys, "zhu", "--builtin", "heisenberg:1", "--invariant", "z2", "--maxweight", "10")
    assert out.split() == "1 0 1 0 2 0 2 0 2 0 1".split()
    code, data = cli_json(capsys, "jet", "--vars", "y:1", "--relations", "y^2", "--m", "2")
    assert data["relations"] == ["y_0^2", "2*y_0*y_1", "2*y_0*y_2 + 2*y_1^2"]
    code, out, _ = cli(capsys, "hilbert", "--vars", "l:2,w:4", "--relations", "w^2 - l^2*w", "l^3*w",
                       "--maxweight", "12")
    assert out.split() == "1 0 1 0 2 0 2 0 2 0 1 0 1".split()


def test_algebra_file(tmp_path, capsys):
    path = tmp_path / "heis.json"
    path.write_text(json.dumps(spec_to_json(heisenberg(1).spec)))
    code, out, _ = cli(capsys, "ope", "--algebra", str(path), "--a", "d a", "--b", "a", "--n", "2")
    assert code == 0 and out.strip() == "-2"


def test_usage_errors(capsys):
    code, _, err = cli(capsys, "ope", "--builtin", "heisenberg:1", "--a", "b", "--b", "a")
    assert code == 2 and "error" in err
    code, _, _ = cli(capsys, "ope", "--builtin", "heisenberg:1", "--a", ":a a", "--b", "a")
    assert code == 2
    code, _, _ = cli(capsys, "ope", "--builtin", "nosuch:1", "--a", "a", "--b", "a")
    assert code == 2
    code, _, _ = cli(capsys, "ope", "--algebra", "/nonexistent.json", "--a", "a", "--b", "a")
    assert code == 2
    code, _, _ = cli(capsys, "curve", "--n", "-1", "--m", "0")
    assert code == 2
    code, _, _ = cli(capsys, "nosuchcommand")
    assert code == 2

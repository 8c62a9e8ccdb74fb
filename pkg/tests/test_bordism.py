import random

import pytest

from laxdual.bordism import (
    Bordism,
    cap,
    circle,
    closed_circle,
    compose_all,
    compose_bordisms,
    cup,
    eval_bordism,
    format_bordism,
    functoriality_failures,
    identity_bordism,
    normal_form,
    parse_bordism,
    random_bordism,
    random_bordism_from,
    recompose,
    swap,
    tensor_bordisms,
    zorro_minus,
    zorro_plus,
)
from laxdual.corpus import handcrafted_smcs, super_lines
from laxdual.duality import first_right_dual
from laxdual.errors import MalformedTable, NotComposable
from laxdual.monoidal import cyclic_group_smc


def data():
    out = []
    for c in handcrafted_smcs():
        for x in range(c.n_objects):
            d = first_right_dual(c, x)
            if d is not None:
                out.append(d)
    return out


def test_identity_composition():
    i = identity_bordism("+")
    assert compose_bordisms(i, i) == i and i.circles == 0


def test_zorro_bordisms_are_identities():
    assert zorro_plus() == identity_bordism("+")
    assert zorro_minus() == identity_bordism("-")


def test_closing_up_gives_one_circle():
    c = closed_circle()
    assert (c.source, c.target, c.arcs, c.circles) == ("", "", (), 1)
    assert c == circle()


def test_compose_mismatch_raises():
    with pytest.raises(NotComposable):
        compose_bordisms(identity_bordism("-"), identity_bordism("+"))


def test_tensor_examples():
    f = swap("+", "-")
    assert tensor_bordisms(f, identity_bordism("")) == f
    assert tensor_bordisms(identity_bordism("+"), identity_bordism("-")) == identity_bordism("+-")
    t = tensor_bordisms(cup(), cap())
    assert (t.source, t.target, t.circles, len(t.arcs)) == ("-+", "+-", 0, 2)


def test_invalid_bordisms_rejected():
    with pytest.raises(MalformedTable):
        Bordism("+", "-", ((("s", 0), ("t", 0)),))
    with pytest.raises(MalformedTable):
        Bordism("+", "+", ())
    with pytest.raises(MalformedTable):
        Bordism("", "", (), -1)


def test_associative_and_unital():
    rng = random.Random(1)
    for _ in range(500):
        f = random_bordism(rng, 6, 2)
        g = random_bordism_from(rng, f.target, 6, 2)
        h = random_bordism_from(rng, g.target, 6, 2)
        assert compose_bordisms(h, compose_bordisms(g, f)) == compose_bordisms(compose_bordisms(h, g), f)
        assert compose_bordisms(identity_bordism(f.target), f) == f == compose_bordisms(f, identity_bordism(f.source))


def test_normal_form_examples():
    assert [l.kind for l in normal_form(identity_bordism("+-"))] == ["identity"]
    assert [l.kind for l in normal_form(cup())] == ["cup"]
    rng = random.Random(2)
    for _ in range(300):
        b = random_bordism(rng, 6, 2)
        for s in "AB":
            assert recompose(normal_form(b, s)) == b
    with pytest.raises(ValueError):
        normal_form(cup(), "C")


def test_eval_examples():
    z = cyclic_group_smc(2)
    d = first_right_dual(z, 1)
    assert eval_bordism(d, identity_bordism("+")) == z.identity(1)
    assert eval_bordism(d, circle()) == z.identity(0)
    s = super_lines()
    odd = first_right_dual(s, 1)
    assert eval_bordism(odd, circle()) == s.base.mor((0, 1))
    assert eval_bordism(odd, compose_all(circle(), circle())) == s.identity(0)


def test_zorro_evaluates_to_identity_everywhere():
    for d in data():
        c = d.ambient
        assert eval_bordism(d, zorro_plus()) == c.identity(d.x)
        assert eval_bordism(d, compose_all(tensor_bordisms(identity_bordism("+"), cap()), tensor_bordisms(cup(), identity_bordism("+")))) == c.identity(d.x)


def test_strategies_agree():
    rng = random.Random(3)
    for d in data():
        for _ in range(20):
            b = random_bordism(rng, 8, 3)
            assert eval_bordism(d, b, "A") == eval_bordism(d, b, "B")


def test_functoriality_sample():
    rng = random.Random(4)
    for d in data():
        assert functoriality_failures(d, rng, trials=20) == []


def test_literal_round_trip():
    b = parse_bordism(" src=+-+; tgt=+; arcs=(s1:t1),(s2:s3); circles=2 ")
    assert b.circles == 2 and b.arcs == ((("s", 0), ("t", 0)), (("s", 1), ("s", 2)))
    assert parse_bordism(format_bordism(b)) == b
    rng = random.Random(5)
    for _ in range(200):
        r = random_bordism(rng)
        assert parse_bordism(format_bordism(r)) == r
    for bad in ("tgt=+", "src=+; tgt=+; arcs=(s0:t1)", "src=+; tgt=+; arcs=(s1:t1); circles=x", "src=+;src=+;tgt=+"):
        with pytest.raises(MalformedTable):
            parse_bordism(bad)

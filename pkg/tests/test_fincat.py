import random

import pytest

from laxdual.errors import MalformedTable, NotComposable, SizeLimit
from laxdual.fincat import (
    FinCategory,
    Functor,
    Preorder,
    arrow_category,
    discrete_category,
    identity_functor,
    product_category,
    terminal_category,
    validate_category,
    validate_functor,
)
from laxdual.limits import size_limits
from laxdual.monoidal import categorical_group_smc


def chain(n):
    return Preorder(range(n), lambda a, b: a <= b, name=f"chain{n}")


def test_terminal_is_lawful():
    assert validate_category(terminal_category()).ok


def test_injected_identity_violation_names_pair():
    c = FinCategory.from_tables(
        ["a", "b"],
        [("ia", "a", "a"), ("ib", "b", "b"), ("f", "a", "b"), ("g", "a", "b")],
        {"a": "ia", "b": "ib"},
        [("ia", "ia", "ia"), ("ib", "ib", "ib"), ("f", "ia", "f"), ("g", "ia", "g"), ("ib", "f", "g"), ("ib", "g", "g")],
    )
    rep = validate_category(c)
    assert not rep.ok
    assert any(v.witness == ("ib", "f") and "identity" in v.law for v in rep.violations)


def test_chain_poset_three_morphisms():
    c = chain(2)
    assert c.n_morphisms == 3
    assert validate_category(c).ok


def test_unknown_identifier_raises():
    with pytest.raises(MalformedTable):
        FinCategory.from_tables(["a"], [("ia", "a", "a")], {"a": "ia"}, [("ia", "nope", "ia")])


def test_compose_examples():
    c = chain(3)
    f01, f12, f02 = c.hom(0, 1)[0], c.hom(1, 2)[0], c.hom(0, 2)[0]
    i0 = c.identities[0]
    assert c.compose(i0, i0) == i0
    assert c.compose(f01, i0) == f01
    assert c.compose(f12, f01) == f02
    with pytest.raises(NotComposable):
        c.compose(f01, f12)


def test_arrow_category_examples():
    t = arrow_category(terminal_category())
    assert (t.n_objects, t.n_morphisms) == (1, 1)
    a = arrow_category(chain(2))
    assert a.n_objects == 3
    assert validate_category(a).ok
    # squares between the three arrows of {0<=1}: id_0->id_0, id_0->f, id_0->id_1, f->f, f->id_1, id_1->id_1
    assert a.n_morphisms == 6
    d = arrow_category(discrete_category(["x", "y"]))
    assert (d.n_objects, d.n_morphisms) == (2, 2)


def test_arrow_category_lawful_on_non_thin():
    c = categorical_group_smc(2, 3, lambda a, b: 0).base
    assert validate_category(arrow_category(c)).ok


def test_arrow_category_size_guard():
    with size_limits(max_morphisms=4):
        with pytest.raises(SizeLimit):
            arrow_category(chain(3))


def test_product_examples():
    c = chain(2)
    p = product_category(terminal_category(), c)
    assert (p.n_objects, p.n_morphisms) == (c.n_objects, c.n_morphisms)
    g = product_category(c, c)
    assert (g.n_objects, g.n_morphisms) == (4, 9)
    assert validate_category(g).ok
    d = product_category(discrete_category(range(2)), discrete_category(range(3)))
    assert (d.n_objects, d.n_morphisms) == (6, 6)


def test_random_associativity():
    rng = random.Random(0)
    for c in (chain(4), categorical_group_smc(2, 3, lambda a, b: 0).base, arrow_category(chain(3))):
        assert validate_category(c).ok
        for _ in range(4000):
            f = rng.randrange(c.n_morphisms)
            gs = c.out_morphisms(c.tgt[f])
            g = rng.choice(gs)
            h = rng.choice(c.out_morphisms(c.tgt[g]))
            assert c.compose(h, c.compose(g, f)) == c.compose(c.compose(h, g), f)


def test_functor_validation_rejects_every_single_break():
    c = chain(3)
    ident = identity_functor(c)
    assert validate_functor(ident).ok
    for f in range(c.n_morphisms):
        for other in range(c.n_morphisms):
            if other == f:
                continue
            mm = list(ident.mor_map)
            mm[f] = other
            assert not validate_functor(Functor(c, c, ident.obj_map, tuple(mm))).ok


def test_inverse_and_iso_search():
    c = categorical_group_smc(1, 4, lambda a, b: 0).base
    for f in range(c.n_morphisms):
        g = c.inverse(f)
        assert g is not None and c.compose(g, f) == c.identities[0]
    p = chain(2)
    assert p.inverse(p.hom(0, 1)[0]) is None
    assert not p.isomorphic(0, 1)

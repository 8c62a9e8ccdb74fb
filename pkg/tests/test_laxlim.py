import pytest

from laxdual.bordism import words
from laxdual.corpus import handcrafted_instances, zigzag_example
from laxdual.duality import DualityDatum, find_right_duals, is_right_dualizable, verify_triangle
from laxdual.errors import EmptyLimit, InvalidAlgebra
from laxdual.fincat import validate_category
from laxdual.laxlim import (
    LaxLimitObject,
    check_projections,
    criterion_dualizable,
    genzd_composite,
    genzd_projection_check,
    lax_limit,
    overcategory,
    projection_formula_map,
    strict_shortcut,
)
from laxdual.monoidal import (
    LaxSMFunctor,
    chain_smc,
    cyclic_group_smc,
    identity_lax_functor,
    terminal_smc,
    validate_smc,
)


@pytest.fixture(scope="module")
def zig():
    phi = zigzag_example()
    return lax_limit(phi)


def obj(L, u, z):
    (x,) = [i for i, d in enumerate(L.data) if (d.u, d.z) == (u, z)]
    return x


def test_identity_on_z2_gives_z2():
    L = lax_limit(identity_lax_functor(cyclic_group_smc(2)))
    assert (L.n_objects, L.n_morphisms) == (2, 2)
    assert all(L.Z.base.is_identity(d.alpha) for d in L.data)
    assert validate_smc(L).ok


def test_zigzag_has_three_objects(zig):
    assert {(d.u, d.z) for d in zig.data} == {(0, 0), (0, 1), (1, 0)}
    assert validate_smc(zig).ok
    assert zig.data[zig.unit][:2] == (0, 1)
    assert zig.data[zig.unit].alpha == zig.phi.unit_cell


def test_projection_formula_examples(zig):
    Zb = zig.Z.base
    x01, x10 = obj(zig, 0, 1), obj(zig, 1, 0)
    assert Zb.is_iso(projection_formula_map(zig, x01, 0))
    m = projection_formula_map(zig, x10, 1)
    assert (Zb.src[m], Zb.tgt[m]) == (0, 1)
    assert not Zb.is_iso(m)


def test_criterion_examples(zig):
    for x in range(zig.n_objects):
        v = criterion_dualizable(zig, x)
        assert v.dualizable == (x == zig.unit)
    w = criterion_dualizable(zig, zig.unit).witness
    assert verify_triangle(w) and w.x_dual == zig.unit
    v = criterion_dualizable(zig, obj(zig, 0, 0))
    assert not v.z_dualizable and v.witness is None
    assert any("MissingDual" in d for d in v.diagnostics)


def test_strict_shortcut_on_strict_instances():
    for inst in handcrafted_instances():
        L = inst.L
        if not inst.phi.is_strict:
            continue
        for x in range(L.n_objects):
            assert strict_shortcut(L, x) == criterion_dualizable(L, x).dualizable


def test_verdict_independent_of_chosen_dual():
    for inst in handcrafted_instances()[::3]:
        L = inst.L
        for x in range(L.n_objects):
            base = criterion_dualizable(L, x).dualizable
            for ud in find_right_duals(L.U, L.data[x].u):
                assert criterion_dualizable(L, x, u_datum=ud).dualizable == base


def test_projections_of_witness_are_duals():
    for inst in handcrafted_instances()[::5]:
        L = inst.L
        for x in range(L.n_objects):
            w = criterion_dualizable(L, x).witness
            if w is None:
                continue
            f0, f1 = L.base.morphism_components[w.ev]
            g0, g1 = L.base.morphism_components[w.coev]
            d = L.data
            assert verify_triangle(DualityDatum(L.U, d[x].u, d[w.x_dual].u, f0, g0))
            assert verify_triangle(DualityDatum(L.Z, d[x].z, d[w.x_dual].z, f1, g1))


def test_projections_jointly_conservative():
    for inst in handcrafted_instances()[::7]:
        assert check_projections(inst.L).ok


def test_genzd_examples(zig):
    d = criterion_dualizable(zig, zig.unit).witness
    one = zig.U.unit
    # empty word at the unit is the projection map of the unit object, built from ι
    assert genzd_composite(zig, d, "", one) == projection_formula_map(zig, zig.unit, one)
    assert genzd_composite(zig, d, "+", one) == projection_formula_map(zig, zig.unit, one)
    assert genzd_projection_check(zig, d, "+-", one)
    for w in words(4):
        for u in range(zig.U.n_objects):
            assert genzd_projection_check(zig, d, w, u)


def test_empty_limit():
    from laxdual.fincat import Preorder
    from laxdual.monoidal import SymMonCategory

    empty = SymMonCategory(Preorder([], []), 0, {}, {}, {})
    with pytest.raises(EmptyLimit):
        lax_limit(LaxSMFunctor(terminal_smc(), empty, (0,), (0,), 0, {}))


def test_overcategory_examples():
    v = chain_smc(2)
    over1 = overcategory(v, v.unit)
    for x in range(over1.n_objects):
        d = over1.data[x]
        expect = is_right_dualizable(v, d.z) and v.base.is_iso(d.alpha)
        assert criterion_dualizable(over1, x).dualizable == expect == is_right_dualizable(over1, x)
    with pytest.raises(InvalidAlgebra):
        overcategory(v, 0)
    z2 = cyclic_group_smc(2)
    over0 = overcategory(z2, 0)
    assert over0.n_objects == 1
    assert validate_category(over0.base).ok
    assert all(is_right_dualizable(over0, x) for x in range(over0.n_objects))


def test_lax_limit_object_is_triple():
    assert LaxLimitObject(0, 1, 2).alpha == 2

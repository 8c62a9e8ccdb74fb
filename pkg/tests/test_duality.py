import itertools

import pytest

from laxdual.corpus import handcrafted_smcs, idempotent_monoid, medium_posetal_smcs, small_posetal_smcs, super_lines
from laxdual.duality import (
    DualityDatum,
    circle_value,
    circle_value_other,
    dualizables,
    find_right_duals,
    first_right_dual,
    is_left_dualizable,
    is_right_dualizable,
    swap_datum,
    unit_datum,
    verify_triangle,
)
from laxdual.errors import SizeLimit
from laxdual.limits import size_limits
from laxdual.monoidal import chain_smc, cyclic_group_smc, product_smc


def fleet():
    return list(small_posetal_smcs(3)) + medium_posetal_smcs() + handcrafted_smcs()


def test_z2_self_dual():
    z = cyclic_group_smc(2)
    ds = find_right_duals(z, 1)
    assert len(ds) == 1
    d = ds[0]
    assert d.x_dual == 1 and d.ev == z.identity(0) and d.coev == z.identity(0)


def test_chain_min_zero_has_no_dual():
    assert find_right_duals(chain_smc(2), 0) == []


def test_unit_datum_always_found():
    for c in fleet():
        u = unit_datum(c)
        assert verify_triangle(u)
        assert u in find_right_duals(c, c.unit)
        assert c.unit in dualizables(c)


def test_z3_inverse_pair():
    z = cyclic_group_smc(3)
    assert verify_triangle(DualityDatum(z, 1, 2, z.identity(0), z.identity(0)))


def test_wrong_coevaluation_fails_triangle():
    m = idempotent_monoid()
    e = m.base.mor("e")
    assert verify_triangle(DualityDatum(m, 0, 0, m.identity(0), m.identity(0)))
    assert not verify_triangle(DualityDatum(m, 0, 0, m.identity(0), e))


def test_examples_dualizables():
    assert dualizables(cyclic_group_smc(2)) == {0, 1}
    assert dualizables(chain_smc(2)) == {1}
    p = product_smc(cyclic_group_smc(2), chain_smc(2))
    labels = {p.base.objects[x] for x in dualizables(p)}
    assert labels == {(0, 1), (1, 1)}
    assert not is_left_dualizable(chain_smc(2), 0)


def test_left_equals_right_in_symmetric_fleet():
    for c in fleet():
        for x in range(c.n_objects):
            assert is_left_dualizable(c, x) == is_right_dualizable(c, x)


def test_swapped_datum_witnesses_dual():
    for c in fleet():
        for x in range(c.n_objects):
            d = first_right_dual(c, x)
            if d is None:
                continue
            s = swap_datum(d)
            assert verify_triangle(s)
            assert is_right_dualizable(c, d.x_dual)


def test_posetal_closed_form():
    for c in list(small_posetal_smcs(3)) + medium_posetal_smcs():
        b = c.base
        for x in range(c.n_objects):
            closed = any(
                b.hom(c.unit, c.tensor(x, y)) and b.hom(c.tensor(y, x), c.unit) for y in range(c.n_objects)
            )
            assert closed == is_right_dualizable(c, x), (c.name, x)


def test_duals_unique_up_to_iso():
    for c in fleet():
        for x in range(c.n_objects):
            ds = find_right_duals(c, x)
            for a, b in itertools.combinations(ds, 2):
                assert c.base.isomorphic(a.x_dual, b.x_dual)


def test_deterministic_order():
    c = super_lines()
    assert [d.key() for d in find_right_duals(c, 1)] == [d.key() for d in find_right_duals(c, 1)]


def test_circle_value_conventions_agree():
    for c in fleet():
        for x in range(c.n_objects):
            d = first_right_dual(c, x)
            if d is not None:
                assert circle_value(d) == circle_value_other(d)


def test_super_line_dimension_is_minus_one():
    s = super_lines()
    d = first_right_dual(s, 1)
    assert circle_value(d) == s.base.mor((0, 1))
    assert circle_value(first_right_dual(s, 0)) == s.identity(0)


def test_candidate_space_guard():
    with size_limits(max_morphisms=0):
        with pytest.raises(SizeLimit):
            find_right_duals(super_lines(), 1)


def test_parallel_matches_serial():
    for c in medium_posetal_smcs():
        assert dualizables(c, jobs=4) == dualizables(c)

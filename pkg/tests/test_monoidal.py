import itertools

import pytest

from laxdual.corpus import bosonic_lines, handcrafted_smcs, idempotent_monoid, medium_posetal_smcs, small_posetal_smcs, super_lines, zigzag_example
from laxdual.errors import DomainMismatch
from laxdual.monoidal import (
    LaxSMFunctor,
    chain_smc,
    compose_lax_functors,
    const_unit_functor,
    cyclic_group_smc,
    identity_lax_functor,
    lax_functors_equal,
    pointwise_smc_on_arrows,
    posetal_smc,
    terminal_smc,
    validate_lax_functor,
    validate_smc,
)


def test_z2_discrete_is_valid():
    assert validate_smc(cyclic_group_smc(2)).ok


def test_chain_min_unit_one_valid_unit_zero_fails():
    assert validate_smc(chain_smc(2, "min")).ok
    bad = posetal_smc([0, 1], lambda a, b: a <= b, min, 0)
    rep = validate_smc(bad)
    assert not rep.ok
    assert any("unit" in law for law in rep.laws())


@pytest.mark.parametrize("m", handcrafted_smcs() + medium_posetal_smcs(), ids=lambda m: m.name)
def test_fleet_symmetry_involutive_and_hexagon(m):
    assert validate_smc(m).ok
    n = m.n_objects
    for a, b in itertools.product(range(n), repeat=2):
        assert m.compose(m.symmetry(b, a), m.symmetry(a, b)) == m.identity(m.tensor(a, b))
        for c in range(n):
            lhs = m.symmetry(a, m.tensor(b, c))
            rhs = m.compose(m.tensor_mor(m.identity(b), m.symmetry(a, c)), m.tensor_mor(m.symmetry(a, b), m.identity(c)))
            assert lhs == rhs


def test_small_posetal_fleet_valid():
    fleet = small_posetal_smcs(3)
    assert len(fleet) == 55
    assert all(validate_smc(m).ok for m in fleet)


def test_super_lines_braiding_is_minus_one():
    s = super_lines()
    sig = s.symmetry(1, 1)
    assert not s.base.is_identity(sig)
    assert s.compose(sig, sig) == s.identity(0)


def test_identity_lax_functor_valid():
    for m in handcrafted_smcs():
        assert validate_lax_functor(identity_lax_functor(m)).ok


def test_zigzag_example_is_genuinely_lax():
    phi = zigzag_example()
    assert validate_lax_functor(phi).ok
    assert not phi.is_strict
    Z = phi.codomain
    assert not Z.base.is_iso(phi.mult[(1, 1)])


def test_non_natural_mu_is_reported():
    # {0<=1} -> bosonic lines, everything to the object 0, the arrow 0->1 to the sign.
    # Naturality on f⊗f forces μ_{0,0} to be the sign; the identity there is a deliberate break.
    U, Z = chain_smc(2), bosonic_lines()
    Zb = Z.base
    one, sign = Zb.mor((0, 0)), Zb.mor((0, 1))
    f = U.base.hom(0, 1)[0]
    mor_map = tuple(sign if m == f else one for m in range(U.n_morphisms))
    mult = {(a, b): one for a in range(2) for b in range(2)}
    mult[(0, 0)] = sign
    phi = LaxSMFunctor(U, Z, (0, 0), mor_map, one, mult)
    assert validate_lax_functor(phi).ok
    mult[(0, 0)] = one
    rep = validate_lax_functor(LaxSMFunctor(U, Z, (0, 0), mor_map, one, mult))
    assert not rep.ok
    assert all("natural" in law for law in rep.laws())


def test_compose_lax_functors():
    phi = zigzag_example()
    Z = phi.codomain
    assert lax_functors_equal(compose_lax_functors(identity_lax_functor(Z), phi), phi)
    c = compose_lax_functors(const_unit_functor(Z, Z), phi)
    assert validate_lax_functor(c).ok
    s = compose_lax_functors(identity_lax_functor(Z), const_unit_functor(Z, Z))
    assert s.is_strict
    with pytest.raises(DomainMismatch):
        compose_lax_functors(phi, phi)


def test_composition_associative_on_triples():
    phi = zigzag_example()
    Z = phi.codomain
    fs = [identity_lax_functor(Z), const_unit_functor(Z, Z)]
    for a, b in itertools.product(fs, repeat=2):
        lhs = compose_lax_functors(a, compose_lax_functors(b, phi))
        rhs = compose_lax_functors(compose_lax_functors(a, b), phi)
        assert lax_functors_equal(lhs, rhs)


def test_strict_flag_matches_inverse_search():
    from laxdual.corpus import handcrafted_instances

    for inst in handcrafted_instances()[:200]:
        phi = inst.phi
        Zb = phi.codomain.base
        direct = Zb.inverse(phi.unit_cell) is not None and all(Zb.inverse(m) is not None for m in phi.mult.values())
        assert phi.is_strict == direct


def test_pointwise_arrows_examples():
    t = pointwise_smc_on_arrows(terminal_smc())
    assert (t.n_objects, t.n_morphisms) == (1, 1)
    z = pointwise_smc_on_arrows(cyclic_group_smc(2))
    assert z.n_objects == 2 and validate_smc(z).ok
    c = chain_smc(2)
    a = pointwise_smc_on_arrows(c)
    assert a.n_objects == 3 and validate_smc(a).ok
    assert a.unit == c.unit_id
    assert a.base.is_posetal


def test_pointwise_arrows_non_thin():
    assert validate_smc(pointwise_smc_on_arrows(super_lines())).ok
    assert validate_smc(pointwise_smc_on_arrows(idempotent_monoid())).ok

import itertools

import pytest

from laxdual.corpus import _character_theta, strat_instances, super_lines
from laxdual.duality import is_right_dualizable
from laxdual.errors import NotAChain, NotMonotone
from laxdual.monoidal import chain_smc, identity_lax_functor, lax_functors_equal
from laxdual.strat import (
    Stratification,
    chain_poset,
    chain_presentation_check,
    diamond_poset,
    discrete_poset,
    linkwise_criterion,
    peel_first,
    restrict,
    restrict_to,
    strat_lax_limit,
    subdivision,
    v_poset,
    validate_stratification,
)


@pytest.fixture(scope="module")
def corpus():
    return {i.name: i.strat for i in strat_instances()}


@pytest.mark.parametrize("n", range(7))
def test_subdivision_of_chain(n):
    assert len(subdivision(chain_poset(n))) == 2 ** (n + 1) - 1


def test_subdivision_small_cases():
    sd1 = subdivision(chain_poset(1))
    assert len(sd1) == 3
    assert len(subdivision(discrete_poset(4))) == 4
    assert len(subdivision(v_poset())) == 5
    assert len(subdivision(diamond_poset())) == 4 + 5 + 2


def test_poset_shapes():
    assert chain_poset(3).is_chain
    assert not v_poset().is_chain
    assert not diamond_poset().is_chain
    assert len(chain_poset(3).strict_chains(3)) == 1


def test_all_identity_is_valid():
    P = chain_poset(3)
    C = chain_smc(2)
    I = identity_lax_functor(C)
    s = Stratification.build(P, [C] * 4, {pq: I for pq in P.strict_pairs})
    assert validate_stratification(s).ok
    assert not s.has_nontrivial_theta


def test_worked_example(corpus):
    s = corpus["[2]-worked"]
    assert validate_stratification(s).ok
    L = strat_lax_limit(s)
    assert L.n_objects == 6
    dual = [L.data[x].objs for x in range(L.n_objects) if is_right_dualizable(L, x)]
    assert dual == [(1, 1, 1)]
    for x in range(L.n_objects):
        assert linkwise_criterion(s, x, L).dualizable == is_right_dualizable(L, x)


def test_broken_cocycle_names_chain():
    S = super_lines()
    P = chain_poset(3)
    I = identity_lax_functor(S)
    for bits in itertools.product((0, 1), repeat=4):
        s = Stratification(P, (S,) * 4, {pq: I for pq in P.strict_pairs}, {})
        s.theta = {ch: _character_theta(S, I, s.composite(*ch), b) for ch, b in zip(P.strict_chains(2), bits)}
        rep = validate_stratification(s, deep=False)
        # the cocycle condition on the single 3-chain is a parity condition on the four signs
        assert rep.ok == (sum(bits) % 2 == 0)
        if not rep.ok:
            assert all(v.law == "cocycle" and v.witness[:4] == (0, 1, 2, 3) for v in rep.violations)


def test_restrict_examples(corpus):
    s = corpus["[2]-worked"]
    P = s.poset
    same = restrict(s, P, list(range(len(P))))
    assert all(lax_functors_equal(same.monodromy[k], s.monodromy[k]) for k in s.monodromy)
    link, Q, ids = restrict_to(s, [0, 2])
    assert len(Q) == 2 and ids == [0, 2]
    assert lax_functors_equal(link.monodromy[(0, 1)], s.monodromy[(0, 2)])
    point, _, _ = restrict_to(s, [1])
    assert strat_lax_limit(point).n_objects == s.strata[1].n_objects
    with pytest.raises(NotMonotone):
        restrict(s, chain_poset(1), [2, 0])


def test_linkwise_matches_oracle_sample(corpus):
    for name, s in list(corpus.items())[::6]:
        L = strat_lax_limit(s)
        for x in range(L.n_objects):
            v = linkwise_criterion(s, x, L)
            assert v.dualizable == is_right_dualizable(L, x), (name, x)
            if v.dualizable:
                assert v.witness is not None and not v.diagnostics
            if not all(v.strata_ok.values()):
                assert not v.dualizable


def test_unit_section_dualizable(corpus):
    for s in list(corpus.values())[::4]:
        L = strat_lax_limit(s)
        assert linkwise_criterion(s, L.unit, L).dualizable


def test_peel_first_on_chains(corpus):
    for name, s in corpus.items():
        if not s.poset.is_chain:
            continue
        res = peel_first(s)
        assert res.report.ok, name
        assert res.iso.is_bijective()
        L, T = res.source, res.target
        for x in range(L.n_objects):
            assert is_right_dualizable(L, x) == is_right_dualizable(T, res.iso.obj_map[x])
        break


def test_peel_rejects_non_chains(corpus):
    s = next(v for v in corpus.values() if not v.poset.is_chain)
    with pytest.raises(NotAChain):
        peel_first(s)


def test_chain_presentation_on_length_three(corpus):
    checked = 0
    for s in corpus.values():
        if s.poset.is_chain and len(s.poset) == 4:
            L = strat_lax_limit(s)
            for x in range(L.n_objects):
                assert chain_presentation_check(s, L, x).ok
            checked += 1
    assert checked > 0

"""Test fleets: small SMCs, lax functors between them, and stratifications.

Everything here is deterministic so that oracle comparisons are
reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

from .errors import MalformedTable
from .fincat import validate_functor
from .laxlim import LaxLimitCategory, lax_limit
from .monoidal import (
    LaxSMFunctor,
    LaxSMNatTransform,
    SymMonCategory,
    categorical_group_smc,
    chain_smc,
    commutative_monoid_smc,
    const_unit_functor,
    cyclic_group_smc,
    identity_lax_functor,
    posetal_smc,
    product_smc,
    terminal_smc,
    try_posetal_lax_functor,
    validate_lax_functor,
    validate_lax_nat,
)
from .strat import FinPoset, Stratification, chain_poset, diamond_poset, v_poset


# -- SMC fleets ------------------------------------------------------------------------------


def _preorders(n: int) -> Iterator[frozenset]:
    off = [(a, b) for a in range(n) for b in range(n) if a != b]
    for bits in range(1 << len(off)):
        rel = {(a, a) for a in range(n)} | {off[i] for i in range(len(off)) if bits >> i & 1}
        if all((a, d) in rel for a, b in rel for c, d in rel if b == c):
            yield frozenset(rel)


def _monoids(n: int) -> Iterator[dict]:
    """Commutative monoid tables on ``0..n-1`` with unit ``0``."""
    pairs = [(a, b) for a in range(1, n) for b in range(a, n)]
    for vals in product(range(n), repeat=len(pairs)):
        T = {}
        for a in range(n):
            T[(0, a)] = T[(a, 0)] = a
        for (a, b), v in zip(pairs, vals):
            T[(a, b)] = T[(b, a)] = v
        if all(T[(T[(a, b)], c)] == T[(a, T[(b, c)])] for a in range(n) for b in range(n) for c in range(n)):
            yield T


@lru_cache(maxsize=None)
def small_posetal_smcs(max_size: int = 3) -> tuple[SymMonCategory, ...]:
    """Every thin SMC on at most ``max_size`` elements with commutative
    tensor, up to isomorphism (unit is element 0)."""
    out = []
    for n in range(1, max_size + 1):
        seen = set()
        for R in _preorders(n):
            for T in _monoids(n):
                if not all((T[(a, c)], T[(b, c)]) in R for a, b in R for c in range(n)):
                    continue
                keys = []
                for p in permutations(range(1, n)):
                    pi = (0,) + p
                    keys.append(
                        (
                            tuple(sorted((pi[a], pi[b]) for a, b in R)),
                            tuple(sorted(((pi[a], pi[b]), pi[v]) for (a, b), v in T.items())),
                        )
                    )
                key = min(keys)
                if key in seen:
                    continue
                seen.add(key)
                rel, table = key
                tdict = dict(table)
                out.append(
                    posetal_smc(list(range(n)), list(rel), tdict, 0, name=f"P{n}.{len(seen) - 1}")
                )
    return tuple(out)


def medium_posetal_smcs() -> list[SymMonCategory]:
    """Hand-picked thin SMCs with 4 to 6 objects."""
    divisors = [1, 2, 3, 4, 6, 12]
    from math import gcd

    return [
        chain_smc(4, "min"),
        chain_smc(4, "add"),
        chain_smc(5, "max"),
        chain_smc(6, "add"),
        posetal_smc(
            [(a, b) for a in (0, 1) for b in (0, 1)],
            lambda x, y: x[0] <= y[0] and x[1] <= y[1],
            lambda x, y: (min(x[0], y[0]), min(x[1], y[1])),
            (1, 1),
            name="bool2",
        ),
        posetal_smc(divisors, lambda a, b: b % a == 0, gcd, 12, name="div12-gcd"),
        product_smc(cyclic_group_smc(2), chain_smc(2), name="Z2xchain2"),
        product_smc(cyclic_group_smc(2), chain_smc(3, "add"), name="Z2xchain3add"),
        cyclic_group_smc(5),
    ]


def super_lines() -> SymMonCategory:
    """ℤ/2-graded lines: objects ℤ/2, automorphisms ±1, σ_{1,1} = -1."""
    return categorical_group_smc(2, 2, lambda a, b: a * b, name="sLine")


def bosonic_lines() -> SymMonCategory:
    return categorical_group_smc(2, 2, lambda a, b: 0, name="bLine")


def idempotent_monoid() -> SymMonCategory:
    """One object whose endomorphisms are ``{1, e}`` with ``e∘e = e``."""
    return commutative_monoid_smc(["1", "e"], lambda a, b: "1" if a == b == "1" else "e", "1", name="idem")


def handcrafted_smcs() -> list[SymMonCategory]:
    return [
        terminal_smc(),
        cyclic_group_smc(2),
        cyclic_group_smc(3),
        product_smc(cyclic_group_smc(2), cyclic_group_smc(2), name="Z2xZ2"),
        chain_smc(2),
        super_lines(),
        bosonic_lines(),
        categorical_group_smc(1, 3, lambda a, b: 0, name="BZ3"),
        idempotent_monoid(),
    ]


# -- lax functor enumeration ---------------------------------------------------------------------


def posetal_lax_functors(U: SymMonCategory, Z: SymMonCategory) -> Iterator[LaxSMFunctor]:
    """All lax functors into a thin ``Z``, by backtracking on the object map."""
    n = U.n_objects
    Ub, Zb = U.base, Z.base
    cons: list[list[tuple]] = [[] for _ in range(n)]
    for f in range(Ub.n_morphisms):
        a, b = Ub.src[f], Ub.tgt[f]
        cons[max(a, b)].append(("hom", a, b))
    cons[U.unit].append(("unit",))
    for a in range(n):
        for b in range(n):
            c = U.tensor(a, b)
            cons[max(a, b, c)].append(("mult", a, b, c))
    fmap = [0] * n

    def ok(k):
        for con in cons[k]:
            if con[0] == "hom":
                if not Zb.hom(fmap[con[1]], fmap[con[2]]):
                    return False
            elif con[0] == "unit":
                if not Zb.hom(Z.unit, fmap[U.unit]):
                    return False
            elif not Zb.hom(Z.tensor(fmap[con[1]], fmap[con[2]]), fmap[con[3]]):
                return False
        return True

    def rec(k):
        if k == n:
            phi = try_posetal_lax_functor(U, Z, fmap, name=f"{U.name}->{Z.name}{tuple(fmap)}")
            if phi is not None:
                yield phi
            return
        for z in range(Z.n_objects):
            fmap[k] = z
            if ok(k):
                yield from rec(k + 1)

    yield from rec(0)


def lax_functors(U: SymMonCategory, Z: SymMonCategory, limit: int | None = None) -> Iterator[LaxSMFunctor]:
    """Every lax functor ``U -> Z`` by brute force (thin targets use the
    faster object-map search)."""
    if Z.base.is_posetal:
        yield from posetal_lax_functors(U, Z)
        return
    Ub, Zb = U.base, Z.base
    n, m = U.n_objects, U.n_morphisms
    found = 0
    for omap in product(range(Z.n_objects), repeat=n):
        choices = []
        for f in range(m):
            if Ub.is_identity(f):
                choices.append((Zb.identity(omap[Ub.src[f]]),))
            else:
                choices.append(Zb.hom(omap[Ub.src[f]], omap[Ub.tgt[f]]))
        iotas = Zb.hom(Z.unit, omap[U.unit])
        if not iotas or any(not c for c in choices):
            continue
        # μ_{a,b} for a > b is forced by symmetry compatibility; unit laws
        # cut down the entries touching the unit.
        free = [(a, b) for a in range(n) for b in range(a, n)]
        homs = {(a, b): Zb.hom(Z.tensor(omap[a], omap[b]), omap[U.tensor(a, b)]) for a, b in free}
        if any(not h for h in homs.values()):
            continue
        for mmap in product(*choices):
            from .fincat import Functor

            if not validate_functor(Functor(Ub, Zb, omap, mmap)).ok:
                continue
            for iota in iotas:
                mu_choices = []
                for a, b in free:
                    opts = homs[(a, b)]
                    if a == U.unit:
                        ib = Zb.identity(omap[b])
                        opts = [m for m in opts if Zb.compose(m, Z.tensor_mor(iota, ib)) == ib]
                    mu_choices.append(opts)
                for mus in product(*mu_choices):
                    mult = dict(zip(free, mus))
                    for a, b in free:
                        if a != b:
                            mult[(b, a)] = Zb.compose_all(
                                mmap[U.symmetry(a, b)], mult[(a, b)], Z.symmetry(omap[b], omap[a])
                            )
                    phi = LaxSMFunctor(U, Z, tuple(omap), tuple(mmap), iota, mult)
                    if validate_lax_functor(phi).ok:
                        phi.name = f"{U.name}->{Z.name}#{found}"
                        found += 1
                        yield phi
                        if limit is not None and found >= limit:
                            return


@dataclass
class LaxInstance:
    name: str
    phi: LaxSMFunctor
    family: str
    _L: LaxLimitCategory | None = None

    @property
    def L(self) -> LaxLimitCategory:
        if self._L is None:
            self._L = lax_limit(self.phi, name=self.name)
        return self._L


def zigzag_example() -> LaxSMFunctor:
    """``ℤ/2 -> ({0<=1}, min)`` with ``φ(0) = 1`` and ``φ(1) = 0``."""
    U, Z = cyclic_group_smc(2), chain_smc(2)
    return try_posetal_lax_functor(U, Z, [1, 0], name="Z2->chain")


def _small_pairs(max_pair: tuple[int, int]) -> Iterator[tuple[SymMonCategory, SymMonCategory]]:
    fleet = small_posetal_smcs(3)
    for U in fleet:
        for Z in fleet:
            nu, nz = U.n_objects, Z.n_objects
            if (nu, nz) <= max_pair or nu + nz <= 5:
                yield U, Z


def posetal_instances(full: bool = False) -> list[LaxInstance]:
    """Exhaustive lax functors between all thin SMCs on at most 3 elements
    (pairs of two 3-element SMCs only every 7th one unless ``full``),
    plus every lax functor into or out of the 4-6 element fleet from the
    2-element SMCs."""
    out = []
    fleet = small_posetal_smcs(3)
    k = 0
    for U in fleet:
        for Z in fleet:
            big = U.n_objects == 3 and Z.n_objects == 3
            if big and not full:
                k += 1
                if k % 7:
                    continue
            for phi in posetal_lax_functors(U, Z):
                out.append(LaxInstance(phi.name, phi, "posetal"))
    twos = [S for S in fleet if S.n_objects == 2]
    for M in medium_posetal_smcs():
        for S in twos:
            for phi in posetal_lax_functors(S, M):
                out.append(LaxInstance(phi.name, phi, "posetal-medium"))
            for phi in posetal_lax_functors(M, S):
                out.append(LaxInstance(phi.name, phi, "posetal-medium"))
        phi = identity_lax_functor(M)
        out.append(LaxInstance(f"id({M.name})", phi, "posetal-medium"))
    return out


def handcrafted_instances() -> list[LaxInstance]:
    """Lax functors among non-thin and group-like SMCs, enumerated exhaustively."""
    fleet = handcrafted_smcs()
    out = [LaxInstance("Z2->chain", zigzag_example(), "handcrafted")]
    for U in fleet:
        for Z in fleet:
            for phi in lax_functors(U, Z, limit=64):
                out.append(LaxInstance(phi.name, phi, "handcrafted"))
    sl = super_lines()
    out.append(LaxInstance("const1(sLine)", const_unit_functor(sl, sl), "handcrafted"))
    return out


def all_instances(full: bool = False) -> list[LaxInstance]:
    return handcrafted_instances() + posetal_instances(full)


# -- stratification fleet -------------------------------------------------------------------------


@dataclass
class StratInstance:
    name: str
    strat: Stratification
    family: str


def _thin_strats(P: FinPoset, strata: Sequence[SymMonCategory], rng: random.Random, want: int) -> list[Stratification]:
    """Random admissible monodromy assignments over ``P`` with thin strata;
    the transformations are then forced."""
    pairs = P.strict_pairs
    options = {}
    for p, q in pairs:
        options[(p, q)] = list(posetal_lax_functors(strata[p], strata[q]))
    out = []
    seen = set()
    attempts = 0
    while len(out) < want and attempts < 4000:
        attempts += 1
        mono = {pq: rng.choice(options[pq]) for pq in pairs}
        key = tuple(mono[pq].obj_map for pq in pairs)
        if key in seen:
            continue
        seen.add(key)
        try:
            s = Stratification.build(P, strata, mono)
        except MalformedTable:
            continue
        out.append(s)
    return out


def _character_theta(S: SymMonCategory, phi: LaxSMFunctor, comp: LaxSMFunctor, sign: int) -> LaxSMNatTransform:
    """Graded sign ``(-1)^(sign*a)`` on the object ``a`` of a categorical group."""
    comps = []
    labels = S.base.morphisms
    for a in range(S.n_objects):
        target = phi.obj_map[a]
        comps.append(S.base.mor((target, (sign * a) % 2)))
    t = LaxSMNatTransform(phi, comp, tuple(comps))
    assert validate_lax_nat(t).ok, labels
    return t


def _sign_strats(P: FinPoset, S: SymMonCategory) -> list[Stratification]:
    """Identity monodromy on a categorical group, ``θ`` a ℤ/2 2-cocycle of
    sign characters; every cocycle on the chains of ``P`` is tried."""
    I = identity_lax_functor(S)
    chains = P.strict_chains(2)
    out = []
    for bits in product((0, 1), repeat=len(chains)):
        mono = {pq: I for pq in P.strict_pairs}
        base = Stratification(P, tuple([S] * len(P)), mono, {})
        theta = {}
        for ch, b in zip(chains, bits):
            theta[ch] = _character_theta(S, I, base.composite(*ch), b)
        base.theta = theta
        from .strat import validate_stratification

        if validate_stratification(base, deep=False).ok:
            base.name = f"{S.name}-signs{bits}"
            out.append(base)
    return out


def strat_instances(seed: int = 0) -> list[StratInstance]:
    """Stratifications over [2], [3], V and the diamond."""
    rng = random.Random(seed)
    posets = [chain_poset(2), chain_poset(3), v_poset(), diamond_poset()]
    C2, C3 = chain_smc(2), chain_smc(3, "add")
    fleet = small_posetal_smcs(3)
    out: list[StratInstance] = []
    for P in posets:
        n = len(P)
        for label, strata in (
            ("chain2", [C2] * n),
            ("chain3add", [C3] * n),
            ("mixed", [fleet[(3 * i + 5) % len(fleet)] for i in range(n)]),
            ("Z2-then-chain", [cyclic_group_smc(2)] + [C2] * (n - 1)),
        ):
            for k, s in enumerate(_thin_strats(P, strata, rng, 4)):
                s.name = f"{P.name}-{label}-{k}"
                out.append(StratInstance(s.name, s, "thin"))
        for S in (super_lines(), bosonic_lines()):
            for s in _sign_strats(P, S)[:4]:
                s.name = f"{P.name}-{s.name}"
                out.append(StratInstance(s.name, s, "signs"))
    # the worked example over [2]: const-to-unit twice, identity on the long edge
    P = chain_poset(2)
    c, i = const_unit_functor(C2, C2), identity_lax_functor(C2)
    s = Stratification.build(P, [C2] * 3, {(0, 1): c, (1, 2): c, (0, 2): i}, name="[2]-worked")
    out.append(StratInstance(s.name, s, "worked"))
    # all-identity data on [3]
    P3 = chain_poset(3)
    I2 = identity_lax_functor(C2)
    s = Stratification.build(P3, [C2] * 4, {pq: I2 for pq in P3.strict_pairs}, name="[3]-identity")
    out.append(StratInstance(s.name, s, "identity"))
    return out

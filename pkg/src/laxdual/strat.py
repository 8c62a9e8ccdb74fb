"""Stratifications over finite posets and their lax limits.

A stratification assigns a strict SMC to every element, a lax functor
``Φ_pq`` to every strict relation ``p < q`` and a monoidal transformation
``θ^{pqr}: Φ_pr => Φ_qr∘Φ_pq`` to every 2-chain.  Sections carry gluing
morphisms ``γ_pq: x_q -> Φ_pq(x_p)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .duality import DualityDatum, first_right_dual, verify_triangle
from .errors import MalformedTable, NotAChain, NotMonotone
from .fincat import ComponentCategory, Functor, Preorder, ValidationReport, validate_functor
from .laxlim import LaxLimitCategory, Verdict, criterion_dualizable, lax_limit
from .limits import check_size
from .monoidal import (
    LaxSMFunctor,
    LaxSMNatTransform,
    SymMonCategory,
    compose_lax_functors,
    is_strict_monoidal_functor,
    lax_functors_equal,
    thin_transformation,
    validate_lax_functor,
    validate_lax_nat,
    validate_smc,
)


class FinPoset:
    """Finite partial order on integer ids ``0..n-1`` with display labels."""

    def __init__(self, elements: Sequence[Hashable], leq: Iterable[tuple[Hashable, Hashable]], name: str = ""):
        self.elements = tuple(elements)
        self.name = name
        ix = {e: i for i, e in enumerate(self.elements)}
        if len(ix) != len(self.elements):
            raise MalformedTable("duplicate poset element")
        rel = {(i, i) for i in range(len(self.elements))}
        for a, b in leq:
            if a not in ix or b not in ix:
                raise MalformedTable(f"order relation references unknown element in {(a, b)!r}")
            rel.add((ix[a], ix[b]))
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise MalformedTable(f"order not antisymmetric at {self.elements[a]!r}, {self.elements[b]!r}")
        for a, b in rel:
            for c, d in rel:
                if b == c and (a, d) not in rel:
                    raise MalformedTable(
                        f"order not transitive: {self.elements[a]!r} <= {self.elements[b]!r} <= {self.elements[d]!r}"
                    )
        self._leq = frozenset(rel)
        self._ix = ix
        self.strict_pairs = tuple(sorted((a, b) for a, b in rel if a != b))
        self.pair_index = {p: i for i, p in enumerate(self.strict_pairs)}

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, label: Hashable) -> int:
        try:
            return self._ix[label]
        except KeyError:
            raise MalformedTable(f"unknown poset element {label!r}") from None

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self._leq

    def lt(self, a: int, b: int) -> bool:
        return a != b and (a, b) in self._leq

    def chains(self) -> Iterator[tuple[int, ...]]:
        """Nonempty chains ``p0 < ... < pk`` in a deterministic order."""
        n = len(self.elements)

        def extend(ch):
            yield ch
            for b in range(n):
                if self.lt(ch[-1], b):
                    yield from extend(ch + (b,))

        for a in range(n):
            yield from extend((a,))

    def strict_chains(self, k: int) -> list[tuple[int, ...]]:
        """Chains with exactly ``k+1`` elements."""
        return sorted(c for c in self.chains() if len(c) == k + 1)

    def linear_extension(self) -> list[int]:
        return sorted(range(len(self.elements)), key=lambda a: (sum(self.lt(b, a) for b in range(len(self))), a))

    @property
    def is_chain(self) -> bool:
        n = len(self)
        return all(self.leq(a, b) or self.leq(b, a) for a in range(n) for b in range(n))

    def as_category(self) -> Preorder:
        return Preorder(self.elements, [(self.elements[a], self.elements[b]) for a, b in self._leq], name=self.name)

    def subposet(self, ids: Sequence[int]) -> "FinPoset":
        ids = list(ids)
        els = [self.elements[i] for i in ids]
        rel = [(self.elements[a], self.elements[b]) for a in ids for b in ids if self.leq(a, b)]
        return FinPoset(els, rel)

    def __repr__(self) -> str:
        return f"<FinPoset {self.name or ''} {list(self.elements)} with {len(self.strict_pairs)} strict relations>"


def chain_poset(n: int) -> FinPoset:
    """``[n] = {0 < 1 < ... < n}``."""
    return FinPoset(list(range(n + 1)), [(a, b) for a in range(n + 1) for b in range(a, n + 1)], name=f"[{n}]")


def v_poset() -> FinPoset:
    return FinPoset(["a", "b", "c"], [("a", "c"), ("b", "c")], name="V")


def diamond_poset() -> FinPoset:
    return FinPoset(
        ["0", "a", "b", "1"],
        [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"), ("0", "1")],
        name="diamond",
    )


def discrete_poset(n: int) -> FinPoset:
    return FinPoset(list(range(n)), [], name=f"disc{n}")


def subdivision(p: FinPoset) -> FinPoset:
    """Nonempty chains ordered by inclusion."""
    chains = list(p.chains())
    check_size(len(chains), 0, "subdivision")
    labels = [tuple(p.elements[i] for i in c) for c in chains]
    sets = [frozenset(c) for c in chains]
    rel = [(labels[i], labels[j]) for i in range(len(chains)) for j in range(len(chains)) if sets[i] <= sets[j]]
    return FinPoset(labels, rel, name=f"sd({p.name})")


# -- stratifications ---------------------------------------------------------------


@dataclass(eq=False)
class Stratification:
    poset: FinPoset
    strata: tuple[SymMonCategory, ...]
    monodromy: dict[tuple[int, int], LaxSMFunctor]
    theta: dict[tuple[int, int, int], LaxSMNatTransform]
    name: str = ""
    _composites: dict = field(default_factory=dict, repr=False)

    def phi(self, p: int, q: int) -> LaxSMFunctor:
        return self.monodromy[(p, q)]

    def composite(self, p: int, q: int, r: int) -> LaxSMFunctor:
        """``Φ_qr∘Φ_pq``."""
        key = (p, q, r)
        if key not in self._composites:
            self._composites[key] = compose_lax_functors(self.monodromy[(q, r)], self.monodromy[(p, q)])
        return self._composites[key]

    @property
    def has_nontrivial_theta(self) -> bool:
        return any(not t.is_identity for t in self.theta.values())

    @classmethod
    def build(
        cls,
        poset: FinPoset,
        strata: Sequence[SymMonCategory],
        monodromy: Mapping[tuple[int, int], LaxSMFunctor],
        theta: Mapping[tuple[int, int, int], LaxSMNatTransform | Sequence[int]] | None = None,
        name: str = "",
    ) -> "Stratification":
        """Assemble, deriving ``θ`` where it is forced.

        Missing ``θ`` are the unique transformation when the target stratum
        is thin, or the identity when ``Φ_pr`` equals the composite.
        Component lists are wrapped as transformations.
        """
        s = cls(poset, tuple(strata), dict(monodromy), {}, name)
        theta = dict(theta or {})
        for p, q, r in poset.strict_chains(2):
            comp = s.composite(p, q, r)
            src = s.monodromy[(p, r)]
            t = theta.get((p, q, r))
            if isinstance(t, LaxSMNatTransform):
                s.theta[(p, q, r)] = t
            elif t is not None:
                s.theta[(p, q, r)] = LaxSMNatTransform(src, comp, tuple(t))
            elif strata[r].base.is_posetal:
                tt = thin_transformation(src, comp)
                if tt is None:
                    raise MalformedTable(f"no transformation Φ_pr => Φ_qr∘Φ_pq on chain {(p, q, r)}")
                s.theta[(p, q, r)] = tt
            elif src.obj_map == comp.obj_map and src.mor_map == comp.mor_map:
                ids = tuple(strata[r].identity(a) for a in src.obj_map)
                s.theta[(p, q, r)] = LaxSMNatTransform(src, comp, ids)
            else:
                raise MalformedTable(f"θ required on chain {(p, q, r)}")
        return s


def validate_stratification(s: Stratification, deep: bool = True) -> ValidationReport:
    """Typing of all data, lax-functor and transformation laws, and the
    cocycle condition on every 3-chain."""
    P = s.poset
    lab = P.elements
    rep = ValidationReport(s.name or "stratification")
    if len(s.strata) != len(P):
        rep.add("one stratum per element", len(s.strata), len(P))
        return rep
    if deep:
        for p, S in enumerate(s.strata):
            rep.extend(validate_smc(S), f"stratum {lab[p]}: ")
    if set(s.monodromy) != set(P.strict_pairs):
        rep.add("monodromy keyed by strict relations", sorted(map(str, set(s.monodromy) ^ set(P.strict_pairs))))
        return rep
    chains2 = P.strict_chains(2)
    if set(s.theta) != set(chains2):
        rep.add("θ keyed by 2-chains", sorted(map(str, set(s.theta) ^ set(chains2))))
        return rep
    for (p, q), F in s.monodromy.items():
        if F.domain is not s.strata[p] or F.codomain is not s.strata[q]:
            rep.add("monodromy typing Φ_pq: stratum p -> stratum q", lab[p], lab[q])
            continue
        rep.extend(validate_lax_functor(F), f"Φ_{lab[p]}{lab[q]}: ")
    if not rep.ok:
        return rep
    for (p, q, r), t in s.theta.items():
        if not lax_functors_equal(t.source, s.monodromy[(p, r)]) or not lax_functors_equal(
            t.target, s.composite(p, q, r)
        ):
            rep.add("θ typing Φ_pr => Φ_qr∘Φ_pq", lab[p], lab[q], lab[r])
            continue
        rep.extend(validate_lax_nat(t), f"θ^{lab[p]}{lab[q]}{lab[r]}: ")
    if not rep.ok:
        return rep
    for p, q, r, t in P.strict_chains(3):
        S = s.strata[t]
        if S.base.is_posetal:
            continue
        phi_rt = s.monodromy[(r, t)]
        phi_pq = s.monodromy[(p, q)]
        th = s.theta
        for x in range(s.strata[p].n_objects):
            lhs = S.compose(phi_rt.mor_map[th[(p, q, r)].at(x)], th[(p, r, t)].at(x))
            rhs = S.compose(th[(q, r, t)].at(phi_pq.obj_map[x]), th[(p, q, t)].at(x))
            if lhs != rhs:
                rep.add("cocycle", lab[p], lab[q], lab[r], lab[t], s.strata[p].base.objects[x])
    return rep


class StratLimObject(NamedTuple):
    objs: tuple[int, ...]
    glue: tuple[int, ...]


class StratLaxLimit(SymMonCategory):
    """Sections of a stratification with componentwise tensor.

    Tensor of sections is looked up among the enumerated sections, so a
    failure of the compatibility for tensored gluing data surfaces as
    :class:`MalformedTable` instead of being assumed away.
    """

    def __init__(self, s: Stratification, name: str = ""):
        self.strat = s
        P = s.poset
        strata = s.strata
        pairs = P.strict_pairs
        pix = P.pair_index
        data = list(_sections(s))
        if not data:
            from .errors import EmptyLimit

            raise EmptyLimit("stratification has no sections")
        self.data = tuple(data)
        self._index = {d: i for i, d in enumerate(data)}
        thin = all(S.base.is_posetal for S in strata)

        def is_morphism(x: int, y: int, comps: tuple[int, ...]) -> bool:
            gx, gy = data[x].glue, data[y].glue
            for k, (p, q) in enumerate(pairs):
                Sq = strata[q]
                if Sq.compose(gy[k], comps[q]) != Sq.compose(s.monodromy[(p, q)].mor_map[comps[p]], gx[k]):
                    return False
            return True

        base = ComponentCategory(
            [S.base for S in strata],
            data,
            [d.objs for d in data],
            None if thin else is_morphism,
            name=name or s.name or "strat-lim",
        )

        def tobj(x: int, y: int) -> int:
            a, b = data[x], data[y]
            objs = tuple(strata[p].tensor(a.objs[p], b.objs[p]) for p in range(len(P)))
            glue = []
            for k, (p, q) in enumerate(pairs):
                F = s.monodromy[(p, q)]
                glue.append(
                    strata[q].compose(F.mult[(a.objs[p], b.objs[p])], strata[q].tensor_mor(a.glue[k], b.glue[k]))
                )
            key = StratLimObject(objs, tuple(glue))
            if key not in self._index:
                raise MalformedTable("tensor of two sections is not a section")
            return self._index[key]

        def tmor(f: int, g: int) -> int:
            cf, cg = base.morphism_components[f], base.morphism_components[g]
            comps = tuple(strata[p].tensor_mor(cf[p], cg[p]) for p in range(len(P)))
            r = base.find_morphism(self.tensor(base.src[f], base.src[g]), self.tensor(base.tgt[f], base.tgt[g]), comps)
            if r is None:
                raise MalformedTable("tensor of section morphisms is not a morphism")
            return r

        def sym(x: int, y: int) -> int:
            a, b = data[x], data[y]
            comps = tuple(strata[p].symmetry(a.objs[p], b.objs[p]) for p in range(len(P)))
            r = base.find_morphism(self.tensor(x, y), self.tensor(y, x), comps)
            if r is None:
                raise MalformedTable("componentwise symmetry is not a morphism of sections")
            return r

        unit_key = StratLimObject(
            tuple(S.unit for S in strata), tuple(s.monodromy[pq].unit_cell for pq in pairs)
        )
        if unit_key not in self._index:
            raise MalformedTable("unit cells do not form a section")
        super().__init__(base, self._index[unit_key], tobj, tmor, sym, name=base.name)
        self._pix = pix
        self._links: dict[tuple[int, int], LaxLimitCategory] = {}

    def object_label(self, x: int) -> str:
        d, S = self.data[x], self.strat.strata
        objs = ",".join(S[p].object_label(a) for p, a in enumerate(d.objs))
        glue = ",".join(S[q].morphism_label(g) for (_, q), g in zip(self.strat.poset.strict_pairs, d.glue))
        return f"[{objs}|{glue}]"

    def morphism_label(self, m: int) -> str:
        b, S = self.base, self.strat.strata
        comps = ",".join(S[p].morphism_label(f) for p, f in enumerate(b.morphism_components[m]))
        return f"{self.object_label(b.src[m])}->{self.object_label(b.tgt[m])}:({comps})"

    def find_object(self, objs: Sequence[int], glue: Sequence[int]) -> int | None:
        return self._index.get(StratLimObject(tuple(objs), tuple(glue)))

    def gamma(self, x: int, p: int, q: int) -> int:
        return self.data[x].glue[self._pix[(p, q)]]

    def restriction(self, p: int) -> Functor:
        """``b^*`` for the element ``p``."""
        F = self.base.projection(p)
        F.name = f"res_{self.strat.poset.elements[p]}"
        return F

    def link_limit(self, p: int, q: int) -> LaxLimitCategory:
        if (p, q) not in self._links:
            self._links[(p, q)] = lax_limit(self.strat.monodromy[(p, q)])
        return self._links[(p, q)]


def _sections(s: Stratification) -> Iterator[StratLimObject]:
    """Backtracking search over objects and gluing morphisms, checking each
    2-chain condition as soon as its three gluing morphisms are chosen."""
    P = s.poset
    strata = s.strata
    order = P.linear_extension()
    n = len(P)
    preds = {q: [p for p in order if P.lt(p, q)] for q in order}
    xs = [0] * n
    gl: dict[tuple[int, int], int] = {}
    pairs = P.strict_pairs
    mono, theta = s.monodromy, s.theta
    thin = [S.base.is_posetal for S in strata]
    count = 0

    def assign(k):
        nonlocal count
        if k == n:
            count += 1
            if count > 100_000:
                check_size(count, 0, "sections")
            yield StratLimObject(tuple(xs), tuple(gl[pq] for pq in pairs))
            return
        q = order[k]
        for xq in range(strata[q].n_objects):
            xs[q] = xq
            yield from glue(k, q, 0)

    def glue(k, q, i):
        pl = preds[q]
        if i == len(pl):
            yield from assign(k + 1)
            return
        p = pl[i]
        Sq = strata[q]
        F = mono[(p, q)]
        for g in Sq.hom(xs[q], F.obj_map[xs[p]]):
            gl[(p, q)] = g
            ok = True
            if not thin[q]:
                for a in pl[:i]:
                    if P.lt(a, p):
                        lhs = Sq.compose(F.mor_map[gl[(a, p)]], g)
                        rhs = Sq.compose(theta[(a, p, q)].at(xs[a]), gl[(a, q)])
                        if lhs != rhs:
                            ok = False
                            break
            if ok:
                yield from glue(k, q, i + 1)
        gl.pop((p, q), None)

    yield from assign(0)


def strat_lax_limit(s: Stratification, name: str = "") -> StratLaxLimit:
    return StratLaxLimit(s, name)


def check_restrictions(L: StratLaxLimit) -> ValidationReport:
    """Each ``b^*`` is strict monoidal; jointly they detect isomorphisms."""
    rep = ValidationReport("restrictions")
    for p, S in enumerate(L.strat.strata):
        rep.extend(is_strict_monoidal_functor(L.restriction(p), L, S), f"res {L.strat.poset.elements[p]}: ")
    b = L.base
    strata = L.strat.strata
    from .fincat import FinCategory

    for f in range(b.n_morphisms):
        comps = b.morphism_components[f]
        searched = FinCategory.inverse(b, f) is not None
        if searched != all(strata[p].base.is_iso(c) for p, c in enumerate(comps)):
            rep.add("joint conservativity", b.morphisms[f])
    return rep


# -- restriction along monotone injections ----------------------------------------------


def _check_embedding(P: FinPoset, Q: FinPoset, f: Sequence[int]) -> None:
    if len(f) != len(Q) or len(set(f)) != len(f):
        raise NotMonotone("map is not injective")
    for a in range(len(Q)):
        for b in range(len(Q)):
            if Q.leq(a, b) and not P.leq(f[a], f[b]):
                raise NotMonotone(f"{Q.elements[a]!r} <= {Q.elements[b]!r} is not preserved")


def restrict(s: Stratification, Q: FinPoset, f: Sequence[int]) -> Stratification:
    """Pull back along a monotone injection ``f: Q -> P`` (``f[q]`` is an element id of P)."""
    _check_embedding(s.poset, Q, f)
    strata = tuple(s.strata[f[q]] for q in range(len(Q)))
    mono = {(a, b): s.monodromy[(f[a], f[b])] for a, b in Q.strict_pairs}
    theta = {(a, b, c): s.theta[(f[a], f[b], f[c])] for a, b, c in Q.strict_chains(2)}
    r = Stratification(Q, strata, mono, theta, name=f"{s.name}|{list(Q.elements)}")
    r._composites = {k: s.composite(f[k[0]], f[k[1]], f[k[2]]) for k in theta}
    return r


def restrict_to(s: Stratification, ids: Sequence[int]) -> tuple[Stratification, FinPoset, list[int]]:
    """Restriction to the full subposet on ``ids``."""
    ids = sorted(ids)
    Q = s.poset.subposet(ids)
    return restrict(s, Q, ids), Q, ids


def restrict_object(L_P: StratLaxLimit, L_Q: StratLaxLimit, f: Sequence[int], x: int) -> int:
    d = L_P.data[x]
    Q = L_Q.strat.poset
    objs = [d.objs[f[q]] for q in range(len(Q))]
    glue = [L_P.gamma(x, f[a], f[b]) for a, b in Q.strict_pairs]
    y = L_Q.find_object(objs, glue)
    if y is None:
        raise MalformedTable("restricted data is not a section")
    return y


def restriction_functor(L_P: StratLaxLimit, L_Q: StratLaxLimit, f: Sequence[int]) -> Functor:
    obj_map = tuple(restrict_object(L_P, L_Q, f, x) for x in range(L_P.n_objects))
    mor_map = []
    bP, bQ = L_P.base, L_Q.base
    for m in range(bP.n_morphisms):
        comps = bP.morphism_components[m]
        r = bQ.find_morphism(obj_map[bP.src[m]], obj_map[bP.tgt[m]], tuple(comps[f[q]] for q in range(len(f))))
        if r is None:
            raise MalformedTable("restricted family is not a morphism of sections")
        mor_map.append(r)
    return Functor(bP, bQ, obj_map, tuple(mor_map), name="restrict")


# -- linkwise criterion ---------------------------------------------------------------------


@dataclass
class StratVerdict:
    obj: int
    dualizable: bool
    strata_ok: dict[int, bool]
    links: dict[tuple[int, int], Verdict]
    witness: DualityDatum | None = None
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self, L: StratLaxLimit | None = None) -> dict:
        lab = (lambda p: str(L.strat.poset.elements[p])) if L is not None else str
        out = {
            "object": L.object_label(self.obj) if L is not None else self.obj,
            "dualizable": self.dualizable,
            "strata": {lab(p): ok for p, ok in sorted(self.strata_ok.items())},
            "links": {
                f"{lab(p)}<{lab(q)}": v.dualizable for (p, q), v in sorted(self.links.items())
            },
            "diagnostics": list(self.diagnostics),
        }
        return out


def linkwise_criterion(s: Stratification, x: int, L: StratLaxLimit | None = None) -> StratVerdict:
    """Dualizability from every stratum and every link ``p < q``; on success
    the global dual is assembled from the link duals and checked."""
    L = L if L is not None else strat_lax_limit(s)
    d = L.data[x]
    P = s.poset
    lab = P.elements
    sdata: dict[int, DualityDatum | None] = {}
    strata_ok = {}
    diags = []
    for p, S in enumerate(s.strata):
        sdata[p] = first_right_dual(S, d.objs[p])
        strata_ok[p] = sdata[p] is not None
        if sdata[p] is None:
            diags.append(f"x_{lab[p]} is not dualizable")
    links = {}
    for p, q in P.strict_pairs:
        Lpq = L.link_limit(p, q)
        y = Lpq.find_object(d.objs[p], d.objs[q], L.gamma(x, p, q))
        v = criterion_dualizable(Lpq, y, u_datum=sdata[p])
        links[(p, q)] = v
        if not v.dualizable:
            diags.append(f"link {lab[p]}<{lab[q]} fails: " + "; ".join(v.diagnostics))
    ok = all(strata_ok.values()) and all(v.dualizable for v in links.values())
    verdict = StratVerdict(x, ok, strata_ok, links, diagnostics=diags)
    if ok:
        verdict.witness = _assemble(L, x, sdata, links)
        if verdict.witness is None:
            verdict.diagnostics.append("global dual assembly failed")
        elif not verify_triangle(verdict.witness):
            verdict.diagnostics.append("assembled dual fails the triangle identities")
    return verdict


def _assemble(L: StratLaxLimit, x: int, sdata, links) -> DualityDatum | None:
    P = L.strat.poset
    objs = [sdata[p].x_dual for p in range(len(P))]
    glue = [links[pq].beta for pq in P.strict_pairs]
    xd = L.find_object(objs, glue)
    if xd is None:
        return None
    n = len(P)
    ev = L.base.find_morphism(L.tensor(xd, x), L.unit, tuple(sdata[p].ev for p in range(n)))
    coev = L.base.find_morphism(L.unit, L.tensor(x, xd), tuple(sdata[p].coev for p in range(n)))
    if ev is None or coev is None:
        return None
    return DualityDatum(L, x, xd, ev, coev)


# -- peeling off the first stratum ------------------------------------------------------------


@dataclass
class PeelResult:
    phi: LaxSMFunctor
    iso: Functor
    source: StratLaxLimit
    rest: StratLaxLimit
    target: LaxLimitCategory
    report: ValidationReport


def peel_first(s: Stratification, L: StratLaxLimit | None = None) -> PeelResult:
    """For a chain ``c0 < c1 < ... < cn``: the lax functor from stratum ``c0``
    to the sections over ``{c1..cn}``, and the comparison isomorphism."""
    P = s.poset
    if not P.is_chain:
        raise NotAChain("poset is not totally ordered")
    if len(P) < 2:
        raise NotAChain("need at least two elements")
    L = L if L is not None else strat_lax_limit(s)
    order = P.linear_extension()
    c0, rest_ids = order[0], order[1:]
    Q = P.subposet(rest_ids)
    s_rest = restrict(s, Q, rest_ids)
    R = strat_lax_limit(s_rest)
    S0 = s.strata[c0]
    Rb = R.base
    nQ = len(Q)
    phis = [s.monodromy[(c0, c)] for c in rest_ids]

    obj_map = []
    for x0 in range(S0.n_objects):
        objs = [F.obj_map[x0] for F in phis]
        glue = [s.theta[(c0, rest_ids[j], rest_ids[k])].at(x0) for j, k in Q.strict_pairs]
        y = R.find_object(objs, glue)
        if y is None:
            raise MalformedTable("pushed-forward object is not a section")
        obj_map.append(y)
    mor_map = []
    for f in range(S0.n_morphisms):
        m = Rb.find_morphism(
            obj_map[S0.base.src[f]], obj_map[S0.base.tgt[f]], tuple(F.mor_map[f] for F in phis)
        )
        if m is None:
            raise MalformedTable("pushed-forward morphism is not a morphism of sections")
        mor_map.append(m)
    iota = Rb.find_morphism(R.unit, obj_map[S0.unit], tuple(F.unit_cell for F in phis))
    mult = {}
    for a in range(S0.n_objects):
        for b in range(S0.n_objects):
            mult[(a, b)] = Rb.find_morphism(
                R.tensor(obj_map[a], obj_map[b]),
                obj_map[S0.tensor(a, b)],
                tuple(F.mult[(a, b)] for F in phis),
            )
    if iota is None or None in mult.values():
        raise MalformedTable("comparison cells are not morphisms of sections")
    phi = LaxSMFunctor(S0, R, tuple(obj_map), tuple(mor_map), iota, mult, name=f"peel({P.elements[c0]})")
    T = lax_limit(phi)

    iso_obj = []
    for x in range(L.n_objects):
        d = L.data[x]
        y = restrict_object(L, R, rest_ids, x)
        alpha = Rb.find_morphism(y, obj_map[d.objs[c0]], tuple(L.gamma(x, c0, c) for c in rest_ids))
        t = None if alpha is None else T.find_object(d.objs[c0], y, alpha)
        if t is None:
            raise MalformedTable("section does not correspond to a lax-limit object")
        iso_obj.append(t)
    iso_mor = []
    Lb = L.base
    for m in range(Lb.n_morphisms):
        comps = Lb.morphism_components[m]
        ym = Rb.find_morphism(
            iso_obj_rest(T, iso_obj[Lb.src[m]]), iso_obj_rest(T, iso_obj[Lb.tgt[m]]), tuple(comps[c] for c in rest_ids)
        )
        tm = None if ym is None else T.morphism(iso_obj[Lb.src[m]], iso_obj[Lb.tgt[m]], comps[c0], ym)
        if tm is None:
            raise MalformedTable("morphism of sections does not correspond to a lax-limit morphism")
        iso_mor.append(tm)
    iso = Functor(Lb, T.base, tuple(iso_obj), tuple(iso_mor), name="peel-iso")
    rep = ValidationReport("peel isomorphism")
    rep.extend(validate_lax_functor(phi), "φ: ")
    rep.extend(validate_functor(iso))
    if not iso.is_bijective():
        rep.add("bijective on objects and morphisms")
    rep.extend(is_strict_monoidal_functor(iso, L, T), "monoidal: ")
    return PeelResult(phi, iso, L, R, T, rep)


def iso_obj_rest(T: LaxLimitCategory, t: int) -> int:
    return T.data[t].z


# -- presentation over chains ------------------------------------------------------------


def _push(s: Stratification, chain: Sequence[int], i: int, f: int) -> int:
    """Apply ``Φ_{c_i c_{i+1}}``, then the next, ... to a morphism of stratum ``c_i``."""
    for a, b in zip(chain[i:], chain[i + 1:]):
        f = s.monodromy[(a, b)].mor_map[f]
    return f


def _value(s: Stratification, chain: Sequence[int], x0: int) -> int:
    for a, b in zip(chain, chain[1:]):
        x0 = s.monodromy[(a, b)].obj_map[x0]
    return x0


def _face(s: Stratification, L: StratLaxLimit, x: int, chain: tuple[int, ...], i: int) -> int:
    """The map from the value at ``chain`` minus vertex ``i`` to the value at ``chain``."""
    d = L.data[x]
    if i == 0:
        return _push(s, chain, 1, L.gamma(x, chain[0], chain[1]))
    y = _value(s, chain[:i], d.objs[chain[0]])
    t = s.theta[(chain[i - 1], chain[i], chain[i + 1])].at(y)
    return _push(s, chain, i + 1, t)


def chain_presentation_check(s: Stratification, L: StratLaxLimit, x: int) -> ValidationReport:
    """Build the values of a section on every chain with the face maps between
    them and check that removing two vertices in either order agrees."""
    rep = ValidationReport("chain presentation")
    for chain in s.poset.chains():
        k = len(chain) - 1
        S = s.strata[chain[-1]]
        for i, j in combinations(range(k), 2):
            drop_i = chain[:i] + chain[i + 1:]
            drop_j = chain[:j] + chain[j + 1:]
            one = S.compose(_face(s, L, x, chain, i), _face(s, L, x, drop_i, j - 1))
            two = S.compose(_face(s, L, x, chain, j), _face(s, L, x, drop_j, i))
            if one != two:
                rep.add("face maps commute", tuple(s.poset.elements[c] for c in chain), i, j)
    return rep

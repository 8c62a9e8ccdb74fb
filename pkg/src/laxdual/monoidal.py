"""Strict symmetric monoidal structure on finite categories and lax functors.

Associators and unitors are identities, so every coherence condition is an
equality of table entries.  Tensor and symmetry are stored as memoized
rules: explicit dictionaries for user-supplied tables, computed rules for
derived categories (lax limits would otherwise need ``m**2`` entries).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import DomainMismatch, MalformedTable, TypeMismatch
from .fincat import (
    ArrowCategory,
    ComponentCategory,
    FinCategory,
    Functor,
    NatTransform,
    Preorder,
    ValidationReport,
    product_category,
    validate_category,
    validate_functor,
    validate_nat,
)


def _memo(rule, what: str):
    if isinstance(rule, Mapping):
        table = dict(rule)

        def missing(*key):
            raise MalformedTable(f"{what} table has no entry for {key}")

        return table, missing
    return {}, rule


class SymMonCategory:
    """A strict symmetric monoidal structure on ``base``."""

    def __init__(
        self,
        base: FinCategory,
        unit: int,
        tensor_obj: Mapping[tuple[int, int], int] | Callable[[int, int], int],
        tensor_mor: Mapping[tuple[int, int], int] | Callable[[int, int], int],
        symmetry: Mapping[tuple[int, int], int] | Callable[[int, int], int],
        name: str = "",
    ):
        self.base = base
        self.unit = unit
        self.name = name or base.name
        self._tobj, self._tobj_rule = _memo(tensor_obj, "tensor_obj")
        self._tmor, self._tmor_rule = _memo(tensor_mor, "tensor_mor")
        self._sym, self._sym_rule = _memo(symmetry, "symmetry")
        self.explicit_tensor_mor = isinstance(tensor_mor, Mapping)

    # passthroughs used everywhere
    @property
    def n_objects(self) -> int:
        return self.base.n_objects

    @property
    def n_morphisms(self) -> int:
        return self.base.n_morphisms

    @property
    def objects(self):
        return self.base.objects

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self.base.hom(a, b)

    def compose(self, g: int, f: int) -> int:
        return self.base.compose(g, f)

    def identity(self, a: int) -> int:
        return self.base.identities[a]

    @property
    def unit_id(self) -> int:
        return self.base.identities[self.unit]

    def tensor(self, a: int, b: int) -> int:
        try:
            return self._tobj[(a, b)]
        except KeyError:
            r = self._tobj[(a, b)] = self._tobj_rule(a, b)
            return r

    def tensor_mor(self, f: int, g: int) -> int:
        try:
            return self._tmor[(f, g)]
        except KeyError:
            r = self._tmor[(f, g)] = self._tmor_rule(f, g)
            return r

    def symmetry(self, a: int, b: int) -> int:
        try:
            return self._sym[(a, b)]
        except KeyError:
            r = self._sym[(a, b)] = self._sym_rule(a, b)
            return r

    def object_label(self, x: int) -> str:
        return str(self.base.objects[x])

    def morphism_label(self, f: int) -> str:
        return str(self.base.morphisms[f])

    def tensor_objs(self, objs: Iterable[int]) -> int:
        out = self.unit
        for a in objs:
            out = self.tensor(out, a)
        return out

    def tensor_mors(self, mors: Iterable[int]) -> int:
        out = self.unit_id
        for f in mors:
            out = self.tensor_mor(out, f)
        return out

    def __repr__(self) -> str:
        return f"<SymMonCategory {self.name!r}: {self.n_objects} objects, {self.n_morphisms} morphisms>"


def validate_smc(m: SymMonCategory) -> ValidationReport:
    """Exhaustive check of functoriality, strict associativity/unit and the
    symmetry axioms.  Thin categories only need typing checks."""
    c = m.base
    rep = ValidationReport(m.name or "smc")
    rep.extend(validate_category(c), "category: ")
    if not rep.ok:
        return rep
    n, nm = c.n_objects, c.n_morphisms
    O, M = c.objects, c.morphisms
    if not 0 <= m.unit < n:
        rep.add("unit is an object", m.unit)
        return rep

    def safe(fn, *args):
        try:
            r = fn(*args)
        except (MalformedTable, TypeMismatch, KeyError) as exc:
            return None, str(exc)
        return r, ""

    T = {}
    for a in range(n):
        for b in range(n):
            r, err = safe(m.tensor, a, b)
            if r is None or not 0 <= r < n:
                rep.add("tensor_obj totality", O[a], O[b], detail=err)
            else:
                T[(a, b)] = r
    if not rep.ok:
        return rep
    for a in range(n):
        if T[(m.unit, a)] != a:
            rep.add("left unit 1⊗a = a", O[a])
        if T[(a, m.unit)] != a:
            rep.add("right unit a⊗1 = a", O[a])
    for a in range(n):
        for b in range(n):
            ab = T[(a, b)]
            for d in range(n):
                if T[(ab, d)] != T[(a, T[(b, d)])]:
                    rep.add("associativity (a⊗b)⊗c = a⊗(b⊗c)", O[a], O[b], O[d])

    def typed_tensor(f, g):
        r, err = safe(m.tensor_mor, f, g)
        if r is None or not 0 <= r < nm:
            rep.add("tensor_mor totality", M[f], M[g], detail=err)
            return None
        if c.src[r] != T[(c.src[f], c.src[g])] or c.tgt[r] != T[(c.tgt[f], c.tgt[g])]:
            rep.add("tensor_mor typing", M[f], M[g])
            return None
        return r

    ids = c.identities
    if m.explicit_tensor_mor or nm * nm <= 20_000:
        pairs = iproduct(range(nm), range(nm))
    else:
        pairs = [(f, ids[a]) for f in range(nm) for a in range(n)] + [
            (ids[a], f) for f in range(nm) for a in range(n)
        ]
    for f, g in pairs:
        typed_tensor(f, g)
    for a in range(n):
        for b in range(n):
            r, err = safe(m.symmetry, a, b)
            if r is None or not 0 <= r < nm:
                rep.add("symmetry totality", O[a], O[b], detail=err)
            elif c.src[r] != T[(a, b)] or c.tgt[r] != T[(b, a)]:
                rep.add("symmetry typing", O[a], O[b])
    if not rep.ok or c.is_posetal:
        return rep

    tm, cp, sym = m.tensor_mor, c.compose, m.symmetry
    for a in range(n):
        for b in range(n):
            if tm(ids[a], ids[b]) != ids[T[(a, b)]]:
                rep.add("tensor preserves identities", O[a], O[b])
    for g, f in c.composable_pairs():
        gf = cp(g, f)
        for a in range(n):
            if tm(gf, ids[a]) != cp(tm(g, ids[a]), tm(f, ids[a])):
                rep.add("interchange (g∘f)⊗id", M[g], M[f], O[a])
            if tm(ids[a], gf) != cp(tm(ids[a], g), tm(ids[a], f)):
                rep.add("interchange id⊗(g∘f)", O[a], M[g], M[f])
    for f in range(nm):
        for g in range(nm):
            fg = tm(f, g)
            left = cp(tm(f, ids[c.tgt[g]]), tm(ids[c.src[f]], g))
            right = cp(tm(ids[c.tgt[f]], g), tm(f, ids[c.src[g]]))
            if fg != left or fg != right:
                rep.add("interchange f⊗g", M[f], M[g])
    u = ids[m.unit]
    for f in range(nm):
        if tm(u, f) != f or tm(f, u) != f:
            rep.add("unit on morphisms", M[f])
        for a in range(n):
            for b in range(n):
                ia, ib = ids[a], ids[b]
                if tm(tm(f, ia), ib) != tm(f, tm(ia, ib)):
                    rep.add("associativity on morphisms", M[f], O[a], O[b])
                if tm(tm(ia, f), ib) != tm(ia, tm(f, ib)):
                    rep.add("associativity on morphisms", O[a], M[f], O[b])
                if tm(tm(ia, ib), f) != tm(ia, tm(ib, f)):
                    rep.add("associativity on morphisms", O[a], O[b], M[f])
    for f in range(nm):
        s, t = c.src[f], c.tgt[f]
        for a in range(n):
            if cp(sym(t, a), tm(f, ids[a])) != cp(tm(ids[a], f), sym(s, a)):
                rep.add("symmetry naturality", M[f], O[a])
            if cp(sym(a, t), tm(ids[a], f)) != cp(tm(f, ids[a]), sym(a, s)):
                rep.add("symmetry naturality", O[a], M[f])
    for a in range(n):
        if sym(a, m.unit) != ids[a]:
            rep.add("σ_{a,1} = id", O[a])
        for b in range(n):
            if cp(sym(b, a), sym(a, b)) != ids[T[(a, b)]]:
                rep.add("symmetry involutive", O[a], O[b])
            for d in range(n):
                lhs = sym(a, T[(b, d)])
                rhs = cp(tm(ids[b], sym(a, d)), tm(sym(a, b), ids[d]))
                if lhs != rhs:
                    rep.add("hexagon", O[a], O[b], O[d])
    return rep


# -- builders ---------------------------------------------------------------------


def posetal_smc(
    elements: Sequence[Hashable],
    leq: Iterable[tuple[Hashable, Hashable]] | Callable[[Hashable, Hashable], bool],
    tensor: Mapping[tuple[Hashable, Hashable], Hashable] | Callable[[Hashable, Hashable], Hashable],
    unit: Hashable,
    name: str = "",
) -> SymMonCategory:
    """Thin SMC: morphisms are relations, tensor of morphisms is forced."""
    P = Preorder(elements, leq, name=name)
    lookup = tensor.__getitem__ if isinstance(tensor, Mapping) else None
    labels = P.objects

    def tobj(a, b):
        lab = lookup((labels[a], labels[b])) if lookup else tensor(labels[a], labels[b])
        return P.obj(lab)

    S = None

    def tmor(f, g):
        a = S.tensor(P.src[f], P.src[g])
        b = S.tensor(P.tgt[f], P.tgt[g])
        r = P.arrow(a, b)
        if r is None:
            raise MalformedTable(f"tensor is not monotone on {P.morphisms[f]!r}, {P.morphisms[g]!r}")
        return r

    def sym(a, b):
        r = P.arrow(S.tensor(a, b), S.tensor(b, a))
        if r is None:
            raise MalformedTable(f"no symmetry morphism for {labels[a]!r}, {labels[b]!r}")
        return r

    S = SymMonCategory(P, P.obj(unit), tobj, tmor, sym, name=name)
    return S


def thin_smc_from_rules(base: FinCategory, unit: int, tobj) -> SymMonCategory:
    """Thin SMC on an existing thin ``base`` from an object-level tensor rule."""
    S = None

    def arrow(a, b):
        h = base.hom(a, b)
        if not h:
            raise MalformedTable(f"no morphism {base.objects[a]!r} -> {base.objects[b]!r}")
        return h[0]

    def tmor(f, g):
        return arrow(S.tensor(base.src[f], base.src[g]), S.tensor(base.tgt[f], base.tgt[g]))

    def sym(a, b):
        return arrow(S.tensor(a, b), S.tensor(b, a))

    S = SymMonCategory(base, unit, tobj, tmor, sym)
    return S


def discrete_smc(elements: Sequence[Hashable], op, unit: Hashable, name: str = "") -> SymMonCategory:
    return posetal_smc(elements, [], op, unit, name=name)


def cyclic_group_smc(n: int, name: str | None = None) -> SymMonCategory:
    """ℤ/n as a discrete SMC (objects 0..n-1, tensor = addition)."""
    return discrete_smc(list(range(n)), lambda a, b: (a + b) % n, 0, name=name or f"Z{n}")


def terminal_smc(name: str = "pt") -> SymMonCategory:
    return posetal_smc(["*"], [], lambda a, b: "*", "*", name=name)


def chain_smc(k: int, op: str = "min", unit: int | None = None, name: str | None = None) -> SymMonCategory:
    """The chain ``0 <= 1 <= ... <= k-1`` with tensor ``min``, ``max`` or truncated ``add``."""
    ops = {
        "min": (min, k - 1),
        "max": (max, 0),
        "add": (lambda a, b: min(a + b, k - 1), 0),
    }
    fn, default_unit = ops[op]
    return posetal_smc(
        list(range(k)),
        lambda a, b: a <= b,
        fn,
        default_unit if unit is None else unit,
        name=name or f"chain{k}-{op}",
    )


def product_smc(a: SymMonCategory, b: SymMonCategory, name: str | None = None) -> SymMonCategory:
    base = product_category(a.base, b.base)
    nb = b.n_objects
    oc, mc = base.object_components, base.morphism_components

    def tobj(x, y):
        (x1, x2), (y1, y2) = oc[x], oc[y]
        return a.tensor(x1, y1) * nb + b.tensor(x2, y2)

    def tmor(f, g):
        (f1, f2), (g1, g2) = mc[f], mc[g]
        h = base.find_morphism(tobj(base.src[f], base.src[g]), tobj(base.tgt[f], base.tgt[g]),
                               (a.tensor_mor(f1, g1), b.tensor_mor(f2, g2)))
        if h is None:
            raise MalformedTable("product tensor not closed")
        return h

    def sym(x, y):
        (x1, x2), (y1, y2) = oc[x], oc[y]
        return base.find_morphism(tobj(x, y), tobj(y, x), (a.symmetry(x1, y1), b.symmetry(x2, y2)))

    return SymMonCategory(base, a.unit * nb + b.unit, tobj, tmor, sym, name=name or f"{a.name}×{b.name}")


def categorical_group_smc(
    n_objects: int, n_autos: int, sign: Callable[[int, int], int], name: str = ""
) -> SymMonCategory:
    """Objects ℤ/n, each with automorphism group ℤ/k; tensor adds both.

    ``sign(a, b)`` in ℤ/k is the braiding automorphism of ``a+b``; it must
    be a bicharacter with ``sign(a,b) + sign(b,a) = 0`` for a symmetric
    structure.  ``n=k=2``, ``sign = a*b`` gives super lines.
    """
    objs = list(range(n_objects))
    mors = [(g, t) for g in objs for t in range(n_autos)]
    mid = {lab: i for i, lab in enumerate(mors)}
    src = [g for g, _ in mors]
    comp = {}
    for g in objs:
        for s in range(n_autos):
            for t in range(n_autos):
                comp[(mid[(g, s)], mid[(g, t)])] = mid[(g, (s + t) % n_autos)]
    C = FinCategory(objs, mors, src, src, [mid[(g, 0)] for g in objs], comp, name=name)

    def tobj(a, b):
        return (a + b) % n_objects

    def tmor(f, g):
        (a, s), (b, t) = mors[f], mors[g]
        return mid[((a + b) % n_objects, (s + t) % n_autos)]

    def sym(a, b):
        return mid[((a + b) % n_objects, sign(a, b) % n_autos)]

    return SymMonCategory(C, 0, tobj, tmor, sym, name=name)


def commutative_monoid_smc(elements: Sequence[Hashable], mult, unit: Hashable, name: str = "") -> SymMonCategory:
    """One-object SMC whose endomorphism monoid is the given commutative monoid."""
    ix = {e: i for i, e in enumerate(elements)}
    comp = {(ix[a], ix[b]): ix[mult(a, b)] for a in elements for b in elements}
    C = FinCategory(["*"], list(elements), [0] * len(elements), [0] * len(elements), [ix[unit]], comp, name=name)
    return SymMonCategory(C, 0, lambda a, b: 0, lambda f, g: comp[(f, g)], lambda a, b: ix[unit], name=name)


# -- lax functors -------------------------------------------------------------------


@dataclass(eq=False)
class LaxSMFunctor:
    """Functor with comparison cells ``ι: 1 -> φ(1)`` and
    ``μ_{u,u'}: φ(u)⊗φ(u') -> φ(u⊗u')``."""

    domain: SymMonCategory
    codomain: SymMonCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]
    unit_cell: int
    mult: dict[tuple[int, int], int]
    name: str = ""
    _strict: bool | None = field(default=None, repr=False)

    @property
    def functor(self) -> Functor:
        return Functor(self.domain.base, self.codomain.base, self.obj_map, self.mor_map, self.name)

    def map_obj(self, a: int) -> int:
        return self.obj_map[a]

    def map_mor(self, f: int) -> int:
        return self.mor_map[f]

    def mu(self, a: int, b: int) -> int:
        return self.mult[(a, b)]

    @property
    def is_strict(self) -> bool:
        """ι and every μ are isomorphisms."""
        if self._strict is None:
            Zc = self.codomain.base
            self._strict = Zc.is_iso(self.unit_cell) and all(Zc.is_iso(m) for m in self.mult.values())
        return self._strict


def try_posetal_lax_functor(
    U: SymMonCategory, Z: SymMonCategory, obj_map: Sequence[int], name: str = ""
) -> LaxSMFunctor | None:
    """The unique lax structure on ``obj_map`` into a thin ``Z``, or None when
    a required morphism is missing (map not monotone, or not lax)."""
    Zb, Ub = Z.base, U.base
    mor_map = []
    for f in range(Ub.n_morphisms):
        h = Zb.hom(obj_map[Ub.src[f]], obj_map[Ub.tgt[f]])
        if not h:
            return None
        mor_map.append(h[0])
    iota = Zb.hom(Z.unit, obj_map[U.unit])
    if not iota:
        return None
    mult = {}
    for a in range(U.n_objects):
        for b in range(U.n_objects):
            h = Zb.hom(Z.tensor(obj_map[a], obj_map[b]), obj_map[U.tensor(a, b)])
            if not h:
                return None
            mult[(a, b)] = h[0]
    return LaxSMFunctor(U, Z, tuple(obj_map), tuple(mor_map), iota[0], mult, name=name)


def posetal_lax_functor(U: SymMonCategory, Z: SymMonCategory, obj_map: Sequence[int], name: str = "") -> LaxSMFunctor:
    phi = try_posetal_lax_functor(U, Z, obj_map, name)
    if phi is None:
        raise MalformedTable(f"object map {list(obj_map)} is not a lax monoidal functor into a thin category")
    return phi


def identity_lax_functor(C: SymMonCategory) -> LaxSMFunctor:
    n = C.n_objects
    mult = {(a, b): C.identity(C.tensor(a, b)) for a in range(n) for b in range(n)}
    return LaxSMFunctor(C, C, tuple(range(n)), tuple(range(C.n_morphisms)), C.unit_id, mult, name="id")


def const_unit_functor(U: SymMonCategory, Z: SymMonCategory) -> LaxSMFunctor:
    """Every object to ``1_Z``; strict (ι and μ are identities)."""
    u = Z.unit_id
    n = U.n_objects
    return LaxSMFunctor(
        U, Z, (Z.unit,) * n, (u,) * U.n_morphisms, u, {(a, b): u for a in range(n) for b in range(n)}, name="const1"
    )


def validate_lax_functor(phi: LaxSMFunctor) -> ValidationReport:
    U, Z = phi.domain, phi.codomain
    Zb, Ub = Z.base, U.base
    rep = ValidationReport(phi.name or "lax functor")
    rep.extend(validate_functor(phi.functor), "functor: ")
    if not rep.ok:
        return rep
    F, Fm = phi.obj_map, phi.mor_map
    n = U.n_objects
    O = Ub.objects
    i = phi.unit_cell
    if not (0 <= i < Zb.n_morphisms) or Zb.src[i] != Z.unit or Zb.tgt[i] != F[U.unit]:
        rep.add("unit cell typing ι: 1 -> φ(1)", i)
    for a in range(n):
        for b in range(n):
            mu = phi.mult.get((a, b))
            if mu is None or not 0 <= mu < Zb.n_morphisms:
                rep.add("mult totality", O[a], O[b])
            elif Zb.src[mu] != Z.tensor(F[a], F[b]) or Zb.tgt[mu] != F[U.tensor(a, b)]:
                rep.add("mult typing μ: φa⊗φb -> φ(a⊗b)", O[a], O[b])
    if not rep.ok or Zb.is_posetal:
        return rep
    cp, tm, mu = Zb.compose, Z.tensor_mor, phi.mult
    ids_u, ids_z = Ub.identities, Zb.identities
    for f in range(Ub.n_morphisms):
        s, t = Ub.src[f], Ub.tgt[f]
        for a in range(n):
            lhs = cp(Fm[U.tensor_mor(f, ids_u[a])], mu[(s, a)])
            rhs = cp(mu[(t, a)], tm(Fm[f], ids_z[F[a]]))
            if lhs != rhs:
                rep.add("μ natural in first variable", Ub.morphisms[f], O[a])
            lhs = cp(Fm[U.tensor_mor(ids_u[a], f)], mu[(a, s)])
            rhs = cp(mu[(a, t)], tm(ids_z[F[a]], Fm[f]))
            if lhs != rhs:
                rep.add("μ natural in second variable", O[a], Ub.morphisms[f])
    for a in range(n):
        Fa = ids_z[F[a]]
        if cp(mu[(U.unit, a)], tm(i, Fa)) != Fa:
            rep.add("left unit law μ_{1,u}∘(ι⊗id) = id", O[a])
        if cp(mu[(a, U.unit)], tm(Fa, i)) != Fa:
            rep.add("right unit law μ_{u,1}∘(id⊗ι) = id", O[a])
        for b in range(n):
            ab = U.tensor(a, b)
            lhs = cp(Fm[U.symmetry(a, b)], mu[(a, b)])
            rhs = cp(mu[(b, a)], Z.symmetry(F[a], F[b]))
            if lhs != rhs:
                rep.add("symmetry compatibility", O[a], O[b])
            for d in range(n):
                lhs = cp(mu[(ab, d)], tm(mu[(a, b)], ids_z[F[d]]))
                rhs = cp(mu[(a, U.tensor(b, d))], tm(ids_z[F[a]], mu[(b, d)]))
                if lhs != rhs:
                    rep.add("associativity of μ", O[a], O[b], O[d])
    return rep


def compose_lax_functors(psi: LaxSMFunctor, phi: LaxSMFunctor) -> LaxSMFunctor:
    """``ψ ∘ φ`` with ``ι = ψ(ι_φ)∘ι_ψ`` and ``μ = ψ(μ_φ)∘μ_ψ``."""
    if phi.codomain is not psi.domain:
        raise DomainMismatch("codomain of φ is not the domain of ψ")
    W = psi.codomain.base
    obj_map = tuple(psi.obj_map[a] for a in phi.obj_map)
    mor_map = tuple(psi.mor_map[f] for f in phi.mor_map)
    iota = W.compose(psi.mor_map[phi.unit_cell], psi.unit_cell)
    mult = {
        (a, b): W.compose(psi.mor_map[m], psi.mult[(phi.obj_map[a], phi.obj_map[b])])
        for (a, b), m in phi.mult.items()
    }
    return LaxSMFunctor(phi.domain, psi.codomain, obj_map, mor_map, iota, mult, name=f"{psi.name}∘{phi.name}")


def lax_functors_equal(a: LaxSMFunctor, b: LaxSMFunctor) -> bool:
    return (
        a.domain is b.domain
        and a.codomain is b.codomain
        and a.obj_map == b.obj_map
        and a.mor_map == b.mor_map
        and a.unit_cell == b.unit_cell
        and a.mult == b.mult
    )


@dataclass(eq=False)
class LaxSMNatTransform:
    source: LaxSMFunctor
    target: LaxSMFunctor
    components: tuple[int, ...]

    def at(self, a: int) -> int:
        return self.components[a]

    @property
    def is_identity(self) -> bool:
        Zb = self.source.codomain.base
        return all(Zb.is_identity(c) for c in self.components)


def validate_lax_nat(theta: LaxSMNatTransform) -> ValidationReport:
    F, G = theta.source, theta.target
    rep = ValidationReport("monoidal transformation")
    if F.domain is not G.domain or F.codomain is not G.codomain:
        rep.add("parallel lax functors", F.name, G.name)
        return rep
    rep.extend(validate_nat(NatTransform(F.functor, G.functor, theta.components)))
    if not rep.ok:
        return rep
    Z = F.codomain
    if Z.base.is_posetal:
        return rep
    U = F.domain
    cp = Z.compose
    t = theta.components
    if cp(t[U.unit], F.unit_cell) != G.unit_cell:
        rep.add("unit compatibility θ_1∘ι_F = ι_G")
    for a in range(U.n_objects):
        for b in range(U.n_objects):
            lhs = cp(t[U.tensor(a, b)], F.mult[(a, b)])
            rhs = cp(G.mult[(a, b)], Z.tensor_mor(t[a], t[b]))
            if lhs != rhs:
                rep.add("multiplicativity θ∘μ_F = μ_G∘(θ⊗θ)", U.objects[a], U.objects[b])
    return rep


def thin_transformation(F: LaxSMFunctor, G: LaxSMFunctor) -> LaxSMNatTransform | None:
    """The unique transformation ``F => G`` into a thin codomain, if any."""
    Zb = F.codomain.base
    comps = []
    for a in range(F.domain.n_objects):
        h = Zb.hom(F.obj_map[a], G.obj_map[a])
        if not h:
            return None
        comps.append(h[0])
    return LaxSMNatTransform(F, G, tuple(comps))


# -- pointwise structure on arrows -----------------------------------------------------


def pointwise_smc_on_arrows(z: SymMonCategory) -> SymMonCategory:
    """``Ar(z)`` with componentwise tensor, unit ``id_1`` and componentwise symmetry."""
    A = ArrowCategory(z.base)
    c = z.base
    mc = A.morphism_components

    def tmor(p, q):
        (h0, h1), (k0, k1) = mc[p], mc[q]
        x = z.tensor_mor(A.src[p], A.src[q])
        y = z.tensor_mor(A.tgt[p], A.tgt[q])
        r = A.find_morphism(x, y, (z.tensor_mor(h0, k0), z.tensor_mor(h1, k1)))
        if r is None:
            raise MalformedTable("pointwise tensor of squares is not a square")
        return r

    def sym(f, g):
        x, y = z.tensor_mor(f, g), z.tensor_mor(g, f)
        return A.find_morphism(x, y, (z.symmetry(c.src[f], c.src[g]), z.symmetry(c.tgt[f], c.tgt[g])))

    return SymMonCategory(A, z.unit_id, z.tensor_mor, tmor, sym, name=f"Ar({z.name})")


def is_strict_monoidal_functor(F: Functor, S: SymMonCategory, T: SymMonCategory) -> ValidationReport:
    """``F`` preserves unit, tensor of objects and morphisms, and symmetry on the nose."""
    rep = validate_functor(F)
    rep.subject = "strict monoidal functor"
    if not rep.ok:
        return rep
    if F.obj_map[S.unit] != T.unit:
        rep.add("preserves unit")
    n = S.n_objects
    for a in range(n):
        for b in range(n):
            if F.obj_map[S.tensor(a, b)] != T.tensor(F.obj_map[a], F.obj_map[b]):
                rep.add("preserves tensor of objects", S.objects[a], S.objects[b])
            elif F.mor_map[S.symmetry(a, b)] != T.symmetry(F.obj_map[a], F.obj_map[b]):
                rep.add("preserves symmetry", S.objects[a], S.objects[b])
    ids = S.base.identities
    for f in range(S.n_morphisms):
        for a in range(n):
            if F.mor_map[S.tensor_mor(f, ids[a])] != T.tensor_mor(F.mor_map[f], T.identity(F.obj_map[a])):
                rep.add("preserves tensor of morphisms", S.base.morphisms[f], S.objects[a])
            if F.mor_map[S.tensor_mor(ids[a], f)] != T.tensor_mor(T.identity(F.obj_map[a]), F.mor_map[f]):
                rep.add("preserves tensor of morphisms", S.objects[a], S.base.morphisms[f])
    return rep

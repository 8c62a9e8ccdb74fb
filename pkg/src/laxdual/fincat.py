"""Explicit finite categories, functors and natural transformations.

Objects and morphisms are interned as integer ids; the user-facing labels
(any hashable) are kept alongside for lookup and serialization.  Three
storage strategies share one interface:

* :class:`FinCategory` -- an explicit composition table,
* :class:`Preorder` -- thin categories, composition by lookup of the pair,
* :class:`ComponentCategory` -- a category faithful over a product of
  categories (arrow categories, products, lax limits), composition computed
  componentwise.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

from .errors import MalformedTable, NotComposable
from .limits import LIMITS, check_size


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.law} at {self.witness}{extra}"


@dataclass
class ValidationReport:
    """Every violated axiom, with the offending tuple.  Empty means lawful."""

    subject: str = ""
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law: str, *witness: Any, detail: str = "") -> None:
        self.violations.append(Violation(law, tuple(witness), detail))

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.witness, v.detail))

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "violations": [
                {"law": v.law, "witness": [str(w) for w in v.witness], "detail": v.detail}
                for v in self.violations
            ],
        }

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        return f"{self.subject}: " + "; ".join(str(v) for v in self.violations)


def _index(labels: Sequence[Hashable], kind: str) -> dict:
    out: dict = {}
    for i, lab in enumerate(labels):
        if lab in out:
            raise MalformedTable(f"duplicate {kind} identifier {lab!r}")
        out[lab] = i
    return out


class FinCategory:
    """A finite category given by explicit tables over integer ids."""

    def __init__(
        self,
        objects: Sequence[Hashable],
        morphisms: Sequence[Hashable],
        src: Sequence[int],
        tgt: Sequence[int],
        identities: Sequence[int],
        composition: dict[tuple[int, int], int] | None = None,
        name: str = "",
    ):
        check_size(len(objects), len(morphisms), name or type(self).__name__)
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.identities = tuple(identities)
        n, m = len(self.objects), len(self.morphisms)
        if len(self.src) != m or len(self.tgt) != m:
            raise MalformedTable("source/target tables do not cover every morphism")
        if len(self.identities) != n:
            raise MalformedTable("identity table does not cover every object")
        for f in range(m):
            if not (0 <= self.src[f] < n and 0 <= self.tgt[f] < n):
                raise MalformedTable(f"morphism {self.morphisms[f]!r} has unknown endpoint")
        for i in self.identities:
            if not 0 <= i < m:
                raise MalformedTable(f"identity id {i} is not a morphism")
        self._table = composition
        if composition is not None:
            for (g, f), h in composition.items():
                if not (0 <= g < m and 0 <= f < m and 0 <= h < m):
                    raise MalformedTable(f"composition entry {(g, f, h)} references an unknown morphism")
        self._obj_index = _index(self.objects, "object")
        self._mor_index = _index(self.morphisms, "morphism")
        hom: dict[tuple[int, int], list[int]] = defaultdict(list)
        for f in range(m):
            hom[(self.src[f], self.tgt[f])].append(f)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        out: dict[int, list[int]] = defaultdict(list)
        for f in range(m):
            out[self.src[f]].append(f)
        self._out = {k: tuple(v) for k, v in out.items()}
        self._posetal: bool | None = None
        self._inverse: dict[int, int | None] = {}

    # -- construction from labels -------------------------------------------------
    @classmethod
    def from_tables(
        cls,
        objects: Sequence[Hashable],
        morphisms: Iterable[tuple[Hashable, Hashable, Hashable]],
        identities: dict,
        composition: Iterable[tuple[Hashable, Hashable, Hashable]],
        name: str = "",
    ) -> "FinCategory":
        """Build from label-level tables: morphisms as ``(id, src, tgt)``,
        composition as ``(g, f, g∘f)`` triples."""
        objects = list(objects)
        obj_ix = _index(objects, "object")
        mor_labels, src, tgt = [], [], []
        for mid, s, t in morphisms:
            if s not in obj_ix or t not in obj_ix:
                raise MalformedTable(f"morphism {mid!r} references unknown object")
            mor_labels.append(mid)
            src.append(obj_ix[s])
            tgt.append(obj_ix[t])
        mor_ix = _index(mor_labels, "morphism")
        ids = []
        for o in objects:
            if o not in identities:
                raise MalformedTable(f"object {o!r} has no identity")
            if identities[o] not in mor_ix:
                raise MalformedTable(f"identity of {o!r} is unknown morphism {identities[o]!r}")
            ids.append(mor_ix[identities[o]])
        extra = set(identities) - set(obj_ix)
        if extra:
            raise MalformedTable(f"identity table names unknown objects {sorted(map(str, extra))}")
        table = {}
        for g, f, h in composition:
            for lab in (g, f, h):
                if lab not in mor_ix:
                    raise MalformedTable(f"composition references unknown morphism {lab!r}")
            table[(mor_ix[g], mor_ix[f])] = mor_ix[h]
        return cls(objects, mor_labels, src, tgt, ids, table, name=name)

    # -- basic access -----------------------------------------------------------
    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def obj(self, label: Hashable) -> int:
        try:
            return self._obj_index[label]
        except KeyError:
            raise MalformedTable(f"unknown object {label!r}") from None

    def mor(self, label: Hashable) -> int:
        try:
            return self._mor_index[label]
        except KeyError:
            raise MalformedTable(f"unknown morphism {label!r}") from None

    def has_object(self, label: Hashable) -> bool:
        return label in self._obj_index

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._hom.get((a, b), ())

    def identity(self, a: int) -> int:
        return self.identities[a]

    def is_identity(self, f: int) -> bool:
        return self.identities[self.src[f]] == f

    def compose(self, g: int, f: int) -> int:
        """``g ∘ f``."""
        if self.tgt[f] != self.src[g]:
            raise NotComposable(
                f"{self.morphisms[g]!r} ∘ {self.morphisms[f]!r}: target/source mismatch"
            )
        return self._compose(g, f)

    def _compose(self, g: int, f: int) -> int:
        try:
            return self._table[(g, f)]
        except KeyError:
            raise MalformedTable(
                f"composition of {self.morphisms[g]!r} after {self.morphisms[f]!r} is undefined"
            ) from None

    def compose_all(self, *fs: int) -> int:
        """``fs[0] ∘ fs[1] ∘ ... ∘ fs[-1]``."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def composable_pairs(self) -> Iterator[tuple[int, int]]:
        for f in range(self.n_morphisms):
            for g in self.out_morphisms(self.tgt[f]):
                yield g, f

    def out_morphisms(self, a: int) -> tuple[int, ...]:
        return self._out.get(a, ())

    def composition_table(self) -> dict[tuple[int, int], int]:
        if self._table is not None:
            return dict(self._table)
        return {(g, f): self._compose(g, f) for g, f in self.composable_pairs()}

    @property
    def is_posetal(self) -> bool:
        if self._posetal is None:
            self._posetal = all(len(h) <= 1 for h in self._hom.values())
        return self._posetal

    # -- isomorphisms -------------------------------------------------------------
    def inverse(self, f: int) -> int | None:
        """Two-sided inverse of ``f`` found by search, or None."""
        if f in self._inverse:
            return self._inverse[f]
        a, b = self.src[f], self.tgt[f]
        found = None
        for g in self.hom(b, a):
            if self.compose(g, f) == self.identities[a] and self.compose(f, g) == self.identities[b]:
                found = g
                break
        self._inverse[f] = found
        return found

    def is_iso(self, f: int) -> bool:
        return self.inverse(f) is not None

    def find_iso(self, a: int, b: int) -> int | None:
        for f in self.hom(a, b):
            if self.is_iso(f):
                return f
        return None

    def isomorphic(self, a: int, b: int) -> bool:
        return a == b or self.find_iso(a, b) is not None

    # -- display ---------------------------------------------------------------------
    def obj_label(self, a: int) -> Hashable:
        return self.objects[a]

    def mor_label(self, f: int) -> Hashable:
        return self.morphisms[f]

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name!r}: {self.n_objects} objects, {self.n_morphisms} morphisms>"


class Preorder(FinCategory):
    """A thin category: at most one morphism ``a -> b``, present iff ``a <= b``.

    The relation is closed under reflexivity automatically; transitivity is
    *not* forced, so a non-transitive relation shows up as a composition
    violation in :func:`validate_category`.
    """

    def __init__(
        self,
        elements: Sequence[Hashable],
        leq: Iterable[tuple[Hashable, Hashable]] | Callable[[Hashable, Hashable], bool],
        name: str = "",
    ):
        elements = list(elements)
        ix = _index(elements, "object")
        if callable(leq):
            pairs = [(a, b) for a in elements for b in elements if a == b or leq(a, b)]
        else:
            pairs = set()
            for a, b in leq:
                if a not in ix or b not in ix:
                    raise MalformedTable(f"order relation references unknown element in {(a, b)!r}")
                pairs.add((a, b))
            pairs |= {(a, a) for a in elements}
            pairs = sorted(pairs, key=lambda p: (ix[p[0]], ix[p[1]]))
        labels = [(a, b) for a, b in pairs]
        src = [ix[a] for a, _ in pairs]
        tgt = [ix[b] for _, b in pairs]
        self._pair = {(s, t): i for i, (s, t) in enumerate(zip(src, tgt))}
        ids = [self._pair[(i, i)] for i in range(len(elements))]
        super().__init__(elements, labels, src, tgt, ids, None, name=name)
        self._posetal = True

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self._pair

    def arrow(self, a: int, b: int) -> int | None:
        return self._pair.get((a, b))

    def _compose(self, g: int, f: int) -> int:
        try:
            return self._pair[(self.src[f], self.tgt[g])]
        except KeyError:
            raise MalformedTable(
                f"relation not transitive: {self.objects[self.src[f]]!r} <= "
                f"{self.objects[self.tgt[g]]!r} missing"
            ) from None

    def inverse(self, f: int) -> int | None:
        return self._pair.get((self.tgt[f], self.src[f]))


class ComponentCategory(FinCategory):
    """Category faithful over a product ``F_1 × ... × F_k``.

    Objects are given with their component objects; the morphisms ``x -> y``
    are the tuples of component morphisms accepted by ``is_morphism``
    (all tuples when it is None).  Composition and identities are
    componentwise, so associativity and unit laws are inherited from the
    factors; :func:`validate_category` only has to check closure.
    """

    def __init__(
        self,
        factors: Sequence[FinCategory],
        object_labels: Sequence[Hashable],
        object_components: Sequence[tuple[int, ...]],
        is_morphism: Callable[[int, int, tuple[int, ...]], bool] | None = None,
        name: str = "",
    ):
        self.factors = tuple(factors)
        objc = [tuple(c) for c in object_components]
        n = len(objc)
        check_size(n, 0, name or "ComponentCategory")
        labels, src, tgt, comps = [], [], [], []
        by_key: dict[tuple, int] = {}
        limit = LIMITS.max_morphisms
        for x in range(n):
            cx = objc[x]
            for y in range(n):
                cy = objc[y]
                homs = []
                for F, a, b in zip(self.factors, cx, cy):
                    h = F.hom(a, b)
                    if not h:
                        break
                    homs.append(h)
                else:
                    for c in product(*homs):
                        if is_morphism is not None and not is_morphism(x, y, c):
                            continue
                        key = (x, y, c)
                        by_key[key] = len(labels)
                        labels.append(key)
                        src.append(x)
                        tgt.append(y)
                        comps.append(c)
                        if len(labels) > limit:
                            check_size(n, len(labels), name or "ComponentCategory")
        ids = []
        for x in range(n):
            key = (x, x, tuple(F.identity(a) for F, a in zip(self.factors, objc[x])))
            if key not in by_key:
                raise MalformedTable(f"identity of object {object_labels[x]!r} is not admissible")
            ids.append(by_key[key])
        self.object_components = tuple(objc)
        self.morphism_components = tuple(comps)
        self._by_key = by_key
        super().__init__(object_labels, labels, src, tgt, ids, None, name=name)

    def components(self, f: int) -> tuple[int, ...]:
        return self.morphism_components[f]

    def find_morphism(self, x: int, y: int, comps: Sequence[int]) -> int | None:
        return self._by_key.get((x, y, tuple(comps)))

    def _compose(self, g: int, f: int) -> int:
        cg, cf = self.morphism_components[g], self.morphism_components[f]
        c = tuple(F.compose(a, b) for F, a, b in zip(self.factors, cg, cf))
        h = self._by_key.get((self.src[f], self.tgt[g], c))
        if h is None:
            raise MalformedTable(
                f"composite of {self.morphisms[g]!r} after {self.morphisms[f]!r} is not admissible"
            )
        return h

    def inverse(self, f: int) -> int | None:
        if f in self._inverse:
            return self._inverse[f]
        invs = []
        for F, c in zip(self.factors, self.morphism_components[f]):
            i = F.inverse(c)
            if i is None:
                self._inverse[f] = None
                return None
            invs.append(i)
        g = self._by_key.get((self.tgt[f], self.src[f], tuple(invs)))
        self._inverse[f] = g
        return g

    def projection(self, i: int) -> "Functor":
        F = self.factors[i]
        return Functor(
            self,
            F,
            tuple(c[i] for c in self.object_components),
            tuple(c[i] for c in self.morphism_components),
            name=f"pr{i}",
        )


# -- functors and natural transformations -------------------------------------------


@dataclass(eq=False)
class Functor:
    domain: FinCategory
    codomain: FinCategory
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]
    name: str = ""

    def map_obj(self, a: int) -> int:
        return self.obj_map[a]

    def map_mor(self, f: int) -> int:
        return self.mor_map[f]

    def is_bijective(self) -> bool:
        return (
            sorted(self.obj_map) == list(range(self.codomain.n_objects))
            and sorted(self.mor_map) == list(range(self.codomain.n_morphisms))
        )


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, tuple(range(c.n_objects)), tuple(range(c.n_morphisms)), name="id")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """``G ∘ F``."""
    from .errors import DomainMismatch

    if F.codomain is not G.domain:
        raise DomainMismatch("codomain of the first functor is not the domain of the second")
    return Functor(
        F.domain,
        G.codomain,
        tuple(G.obj_map[a] for a in F.obj_map),
        tuple(G.mor_map[f] for f in F.mor_map),
        name=f"{G.name}∘{F.name}",
    )


@dataclass(eq=False)
class NatTransform:
    source: Functor
    target: Functor
    components: tuple[int, ...]

    def at(self, a: int) -> int:
        return self.components[a]


def validate_category(c: FinCategory, structural: bool = False) -> ValidationReport:
    """Check the category axioms exhaustively.

    Thin and componentwise categories inherit associativity and unit laws;
    for them only closure of composition is checked unless ``structural``
    forces the generic scan.
    """
    rep = ValidationReport(c.name or "category")
    for a in range(c.n_objects):
        i = c.identities[a]
        if c.src[i] != a or c.tgt[i] != a:
            rep.add("identity typing", c.objects[a])
    if not rep.ok:
        return rep

    generic = structural or type(c) is FinCategory
    if c._table is not None:
        for (g, f), h in c._table.items():
            if c.tgt[f] != c.src[g]:
                rep.add("composition on non-composable pair", c.morphisms[g], c.morphisms[f])
            elif c.src[h] != c.src[f] or c.tgt[h] != c.tgt[g]:
                rep.add("composite typing", c.morphisms[g], c.morphisms[f], c.morphisms[h])

    comp: dict[tuple[int, int], int] = {}
    for g, f in c.composable_pairs():
        try:
            h = c.compose(g, f)
        except MalformedTable as exc:
            rep.add("composition totality", c.morphisms[g], c.morphisms[f], detail=str(exc))
            continue
        comp[(g, f)] = h
        if c._table is None and (c.src[h] != c.src[f] or c.tgt[h] != c.tgt[g]):
            rep.add("composite typing", c.morphisms[g], c.morphisms[f], c.morphisms[h])
    if not generic or not rep.ok:
        return rep

    for f in range(c.n_morphisms):
        if comp.get((f, c.identities[c.src[f]])) != f:
            rep.add("right identity f∘id = f", c.morphisms[f], c.morphisms[c.identities[c.src[f]]])
        if comp.get((c.identities[c.tgt[f]], f)) != f:
            rep.add("left identity id∘f = f", c.morphisms[c.identities[c.tgt[f]]], c.morphisms[f])
    if c.is_posetal:
        return rep
    for (g, f), gf in comp.items():
        for h in c.out_morphisms(c.tgt[g]):
            hg = comp[(h, g)]
            if comp[(h, gf)] != comp[(hg, f)]:
                rep.add("associativity", c.morphisms[h], c.morphisms[g], c.morphisms[f])
    return rep


def validate_functor(F: Functor) -> ValidationReport:
    rep = ValidationReport(F.name or "functor")
    C, D = F.domain, F.codomain
    if len(F.obj_map) != C.n_objects or len(F.mor_map) != C.n_morphisms:
        rep.add("functor totality", F.name)
        return rep
    for a, b in enumerate(F.obj_map):
        if not 0 <= b < D.n_objects:
            rep.add("object image unknown", C.objects[a])
    for f, g in enumerate(F.mor_map):
        if not 0 <= g < D.n_morphisms:
            rep.add("morphism image unknown", C.morphisms[f])
    if not rep.ok:
        return rep
    for f, g in enumerate(F.mor_map):
        if D.src[g] != F.obj_map[C.src[f]] or D.tgt[g] != F.obj_map[C.tgt[f]]:
            rep.add("preserves source/target", C.morphisms[f])
    for a in range(C.n_objects):
        if F.mor_map[C.identities[a]] != D.identities[F.obj_map[a]]:
            rep.add("preserves identities", C.objects[a])
    if not rep.ok or D.is_posetal:
        return rep
    for g, f in C.composable_pairs():
        if F.mor_map[C.compose(g, f)] != D.compose(F.mor_map[g], F.mor_map[f]):
            rep.add("preserves composition", C.morphisms[g], C.morphisms[f])
    return rep


def validate_nat(eta: NatTransform) -> ValidationReport:
    F, G = eta.source, eta.target
    C, D = F.domain, F.codomain
    rep = ValidationReport("natural transformation")
    if G.domain is not C or G.codomain is not D:
        rep.add("parallel functors", F.name, G.name)
        return rep
    for a in range(C.n_objects):
        t = eta.components[a]
        if D.src[t] != F.obj_map[a] or D.tgt[t] != G.obj_map[a]:
            rep.add("component typing", C.objects[a])
    if not rep.ok or D.is_posetal:
        return rep
    for f in range(C.n_morphisms):
        a, b = C.src[f], C.tgt[f]
        if D.compose(G.mor_map[f], eta.components[a]) != D.compose(eta.components[b], F.mor_map[f]):
            rep.add("naturality square", C.morphisms[f])
    return rep


# -- constructions ------------------------------------------------------------------


class ArrowCategory(ComponentCategory):
    """``Ar(c)``: objects are morphisms of ``c``, morphisms commuting squares."""

    def __init__(self, c: FinCategory):
        if c.n_morphisms ** 2 > LIMITS.max_morphisms:
            check_size(c.n_morphisms, c.n_morphisms ** 2, f"Ar({c.name})")
        self.base = c
        objc = [(c.src[f], c.tgt[f]) for f in range(c.n_morphisms)]

        def square(x: int, y: int, comps: tuple[int, int]) -> bool:
            h0, h1 = comps
            return c.compose(h1, x) == c.compose(y, h0)

        super().__init__((c, c), c.morphisms, objc, None if c.is_posetal else square, name=f"Ar({c.name})")
        self.ev0 = self.projection(0)
        self.ev1 = self.projection(1)


def arrow_category(c: FinCategory) -> ArrowCategory:
    return ArrowCategory(c)


def product_category(a: FinCategory, b: FinCategory) -> ComponentCategory:
    labels = [(x, y) for x in a.objects for y in b.objects]
    objc = [(i, j) for i in range(a.n_objects) for j in range(b.n_objects)]
    check_size(len(objc), a.n_morphisms * b.n_morphisms, f"{a.name}×{b.name}")
    return ComponentCategory((a, b), labels, objc, None, name=f"{a.name}×{b.name}")


def terminal_category(name: str = "pt") -> FinCategory:
    return FinCategory(["*"], ["id*"], [0], [0], [0], {(0, 0): 0}, name=name)


def discrete_category(labels: Sequence[Hashable], name: str = "") -> Preorder:
    return Preorder(labels, [], name=name)

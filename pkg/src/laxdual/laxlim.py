"""Lax limits of lax symmetric monoidal functors and the two-object
dualizability criterion with explicit dual construction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .duality import DualityDatum, first_right_dual, verify_triangle
from .errors import EmptyLimit, InvalidAlgebra, MalformedTable, TypeMismatch
from .fincat import ComponentCategory, FinCategory, Functor, ValidationReport
from .limits import check_size
from .monoidal import (
    LaxSMFunctor,
    SymMonCategory,
    is_strict_monoidal_functor,
    terminal_smc,
    validate_lax_functor,
)


class LaxLimitObject(NamedTuple):
    u: int
    z: int
    alpha: int


class LaxLimitCategory(SymMonCategory):
    """Objects ``(u, z, α: z -> φ(u))``; morphisms ``(f, g)`` with ``φ(f)∘α = α'∘g``."""

    def __init__(self, phi: LaxSMFunctor, name: str = ""):
        self.phi = phi
        U, Z = phi.domain, phi.codomain
        self.U, self.Z = U, Z
        Zb = Z.base
        data: list[LaxLimitObject] = []
        for u in range(U.n_objects):
            fu = phi.obj_map[u]
            for z in range(Z.n_objects):
                for a in Zb.hom(z, fu):
                    data.append(LaxLimitObject(u, z, a))
            check_size(len(data), 0, "lax limit")
        if not data:
            raise EmptyLimit("every Hom(z, φ(u)) is empty")
        self.data = tuple(data)
        self._index = {d: i for i, d in enumerate(data)}
        Fm = phi.mor_map

        def is_morphism(x: int, y: int, comps: tuple[int, int]) -> bool:
            f, g = comps
            return Zb.compose(Fm[f], data[x].alpha) == Zb.compose(data[y].alpha, g)

        base = ComponentCategory(
            (U.base, Zb),
            data,
            [(d.u, d.z) for d in data],
            None if Zb.is_posetal else is_morphism,
            name=name or f"lim({phi.name})",
        )

        def tobj(x: int, y: int) -> int:
            a, b = data[x], data[y]
            alpha = Zb.compose(phi.mult[(a.u, b.u)], Z.tensor_mor(a.alpha, b.alpha))
            return self._index[LaxLimitObject(U.tensor(a.u, b.u), Z.tensor(a.z, b.z), alpha)]

        def tmor(f: int, g: int) -> int:
            (f0, f1), (g0, g1) = base.morphism_components[f], base.morphism_components[g]
            r = base.find_morphism(
                self.tensor(base.src[f], base.src[g]),
                self.tensor(base.tgt[f], base.tgt[g]),
                (U.tensor_mor(f0, g0), Z.tensor_mor(f1, g1)),
            )
            if r is None:
                raise MalformedTable("tensor of lax-limit morphisms is not a morphism")
            return r

        def sym(x: int, y: int) -> int:
            a, b = data[x], data[y]
            r = base.find_morphism(
                self.tensor(x, y), self.tensor(y, x), (U.symmetry(a.u, b.u), Z.symmetry(a.z, b.z))
            )
            if r is None:
                raise MalformedTable("componentwise symmetry is not a lax-limit morphism")
            return r

        unit = self._index.get(LaxLimitObject(U.unit, Z.unit, phi.unit_cell))
        if unit is None:
            raise MalformedTable("unit cell does not define an object")
        super().__init__(base, unit, tobj, tmor, sym, name=base.name)
        self.j_star = base.projection(0)
        self.i_star = base.projection(1)

    def object_label(self, x: int) -> str:
        d = self.data[x]
        return f"({self.U.object_label(d.u)},{self.Z.object_label(d.z)},{self.Z.morphism_label(d.alpha)})"

    def morphism_label(self, m: int) -> str:
        b = self.base
        f, g = b.morphism_components[m]
        return f"{self.object_label(b.src[m])}->{self.object_label(b.tgt[m])}:({self.U.morphism_label(f)},{self.Z.morphism_label(g)})"

    def obj_data(self, x: int) -> LaxLimitObject:
        return self.data[x]

    def find_object(self, u: int, z: int, alpha: int) -> int | None:
        return self._index.get(LaxLimitObject(u, z, alpha))

    def j_lower_star(self, u: int) -> int:
        """``u ↦ (u, φ(u), id)``."""
        fu = self.phi.obj_map[u]
        return self._index[LaxLimitObject(u, fu, self.Z.identity(fu))]

    def j_lower_star_lax(self) -> LaxSMFunctor:
        """The section as a lax functor ``U -> L`` (ι = (id, ι_φ), μ = (id, μ_φ))."""
        U, phi, base = self.U, self.phi, self.base
        obj_map = tuple(self.j_lower_star(u) for u in range(U.n_objects))
        mor_map = []
        for f in range(U.n_morphisms):
            m = base.find_morphism(obj_map[U.base.src[f]], obj_map[U.base.tgt[f]], (f, phi.mor_map[f]))
            mor_map.append(m)
        iota = base.find_morphism(self.unit, obj_map[U.unit], (U.unit_id, phi.unit_cell))
        mult = {}
        for a in range(U.n_objects):
            for b in range(U.n_objects):
                mult[(a, b)] = base.find_morphism(
                    self.tensor(obj_map[a], obj_map[b]),
                    obj_map[U.tensor(a, b)],
                    (U.identity(U.tensor(a, b)), phi.mult[(a, b)]),
                )
        if None in mor_map or iota is None or None in mult.values():
            raise MalformedTable("section data is not a lax-limit morphism")
        return LaxSMFunctor(U, self, obj_map, tuple(mor_map), iota, mult, name="j_*")

    def morphism(self, x: int, y: int, f: int, g: int) -> int | None:
        return self.base.find_morphism(x, y, (f, g))


def lax_limit(phi: LaxSMFunctor, name: str = "") -> LaxLimitCategory:
    return LaxLimitCategory(phi, name)


def check_projections(L: LaxLimitCategory) -> ValidationReport:
    """``j^*`` and ``i^*`` are strict monoidal and jointly conservative.

    Invertibility in ``L`` is decided by a search of the whole hom-set, not
    componentwise, so the conservativity check is not circular.
    """
    rep = ValidationReport("projections")
    rep.extend(is_strict_monoidal_functor(L.j_star, L, L.U), "j*: ")
    rep.extend(is_strict_monoidal_functor(L.i_star, L, L.Z), "i*: ")
    b = L.base
    for f in range(b.n_morphisms):
        f0, f1 = b.morphism_components[f]
        searched = FinCategory.inverse(b, f) is not None
        if searched != (L.U.base.is_iso(f0) and L.Z.base.is_iso(f1)):
            rep.add("joint conservativity", b.morphisms[f])
    return rep


def projection_formula_map(L: LaxLimitCategory, x: int, w: int) -> int:
    """``z⊗φ(w) -> φ(u)⊗φ(w) -> φ(u⊗w)``."""
    if not 0 <= w < L.U.n_objects:
        raise TypeMismatch(f"{w} is not an object of the domain")
    d = L.data[x]
    Z, phi = L.Z, L.phi
    return Z.compose(phi.mult[(d.u, w)], Z.tensor_mor(d.alpha, Z.identity(phi.obj_map[w])))


@dataclass
class Verdict:
    obj: int
    mode: str
    dualizable: bool
    u_dualizable: bool
    z_dualizable: bool
    gamma_invertible: bool
    g_invertible: bool | None
    all_w_invertible: bool | None = None
    u_datum: DualityDatum | None = None
    z_datum: DualityDatum | None = None
    witness: DualityDatum | None = None
    beta: int | None = None
    diagnostics: list[str] = field(default_factory=list)

    def to_dict(self, L: SymMonCategory | None = None) -> dict:
        out = {
            "object": self.obj if L is None else L.object_label(self.obj),
            "mode": self.mode,
            "dualizable": self.dualizable,
            "u_dualizable": self.u_dualizable,
            "z_dualizable": self.z_dualizable,
            "gamma_invertible": self.gamma_invertible,
            "g_invertible": self.g_invertible,
            "diagnostics": list(self.diagnostics),
        }
        if self.all_w_invertible is not None:
            out["all_w_invertible"] = self.all_w_invertible
        if self.witness is not None:
            out["witness"] = datum_to_dict(self.witness)
        return out


def datum_to_dict(d: DualityDatum) -> dict:
    c = d.ambient
    return {
        "x": c.object_label(d.x),
        "x_dual": c.object_label(d.x_dual),
        "ev": c.morphism_label(d.ev),
        "coev": c.morphism_label(d.coev),
    }


def build_beta(L: LaxLimitCategory, zd: DualityDatum, ud: DualityDatum, g: int) -> int:
    """``β = (ε_z⊗id)∘(id_{z^∨}⊗k)`` with ``k = g⁻¹∘φ(η_u)∘ι``."""
    Z, phi = L.Z, L.phi
    ginv = Z.base.inverse(g)
    if ginv is None:
        raise MalformedTable("projection map at the dual is not invertible")
    k = Z.base.compose_all(ginv, phi.mor_map[ud.coev], phi.unit_cell)
    fud = Z.identity(phi.obj_map[ud.x_dual])
    return Z.compose(Z.tensor_mor(zd.ev, fud), Z.tensor_mor(Z.identity(zd.x_dual), k))


def criterion_dualizable(
    L: LaxLimitCategory,
    x: int,
    mode: str = "at_two_objects",
    u_datum: DualityDatum | None = None,
) -> Verdict:
    """Dualizability via ``u``, ``z`` and projection formulas.

    ``at_two_objects`` tests the projection map at ``1_U`` and ``u^∨``;
    ``at_all_w`` tests it at every object of ``U``.  ``u_datum`` pins the
    dual of ``u`` (the default is the first found by the oracle).
    """
    if mode not in ("at_two_objects", "at_all_w"):
        raise ValueError(f"unknown mode {mode!r}")
    U, Z = L.U, L.Z
    d = L.data[x]
    ud = u_datum if u_datum is not None else first_right_dual(U, d.u)
    zd = first_right_dual(Z, d.z)
    gamma = projection_formula_map(L, x, U.unit)
    gamma_ok = Z.base.is_iso(gamma)
    diags = []
    if ud is None:
        diags.append("MissingDual: u is not dualizable")
    if zd is None:
        diags.append("MissingDual: z is not dualizable")
    if not gamma_ok:
        diags.append("projection map at 1_U is not invertible")
    g = None
    g_ok = None
    if ud is not None:
        g = projection_formula_map(L, x, ud.x_dual)
        g_ok = Z.base.is_iso(g)
        if not g_ok:
            diags.append("projection map at u^∨ is not invertible")
    all_w = None
    if mode == "at_all_w":
        bad = [w for w in range(U.n_objects) if not Z.base.is_iso(projection_formula_map(L, x, w))]
        all_w = not bad
        if bad:
            diags.append(f"projection map fails at w in {[str(U.base.objects[w]) for w in bad]}")
        ok = ud is not None and zd is not None and all_w
    else:
        ok = ud is not None and zd is not None and gamma_ok and bool(g_ok)
    v = Verdict(x, mode, bool(ok), ud is not None, zd is not None, gamma_ok, g_ok, all_w, ud, zd, diagnostics=diags)
    if ok and g_ok:
        v.beta = build_beta(L, zd, ud, g)
        v.witness = assemble_dual(L, x, ud, zd, v.beta)
        if v.witness is None:
            v.diagnostics.append("witness assembly failed")
        elif not verify_triangle(v.witness):
            v.diagnostics.append("witness fails the triangle identities")
    return v


def assemble_dual(L: LaxLimitCategory, x: int, ud: DualityDatum, zd: DualityDatum, beta: int) -> DualityDatum | None:
    xd = L.find_object(ud.x_dual, zd.x_dual, beta)
    if xd is None:
        return None
    ev = L.morphism(L.tensor(xd, x), L.unit, ud.ev, zd.ev)
    coev = L.morphism(L.unit, L.tensor(x, xd), ud.coev, zd.coev)
    if ev is None or coev is None:
        return None
    return DualityDatum(L, x, xd, ev, coev)


def strict_shortcut(L: LaxLimitCategory, x: int) -> bool:
    """``u`` dualizable and ``α`` invertible."""
    d = L.data[x]
    return first_right_dual(L.U, d.u) is not None and L.Z.base.is_iso(d.alpha)


# -- generalized projection formula ---------------------------------------------------


def _word(word: Sequence) -> tuple[str, ...]:
    out = []
    for s in word:
        s = {1: "+", -1: "-", "−": "-"}.get(s, s)
        if s not in ("+", "-"):
            raise TypeMismatch(f"sign {s!r} is not + or -")
        out.append(s)
    return tuple(out)


def word_objects(L: LaxLimitCategory, d: DualityDatum, word: Sequence) -> tuple[int, int]:
    """``(u^M, z^M)`` for the signed word ``M``."""
    cache = L.__dict__.setdefault("_word_cache", {})
    key = (d.x, d.x_dual, word if isinstance(word, str) else tuple(word))
    if key not in cache:
        x, xd = L.data[d.x], L.data[d.x_dual]
        w = _word(word)
        us = [x.u if s == "+" else xd.u for s in w]
        zs = [x.z if s == "+" else xd.z for s in w]
        cache[key] = (L.U.tensor_objs(us), L.Z.tensor_objs(zs))
    return cache[key]


def tensor_power_cell(L: LaxLimitCategory, d: DualityDatum, word: Sequence) -> int:
    """``a_M: z^M -> φ(u^M)``: ``a_∅ = ι``, ``a_{s·N} = μ∘(a_s⊗a_N)``."""
    w = _word(word)
    cache = L.__dict__.setdefault("_cell_cache", {})
    key = (d.key(), w)
    if key not in cache:
        cache[key] = _power_cell(L, d, w)
    return cache[key]


def _power_cell(L: LaxLimitCategory, d: DualityDatum, w: tuple[str, ...]) -> int:
    U, Z, phi = L.U, L.Z, L.phi
    if not w:
        return phi.unit_cell
    x, xd = L.data[d.x], L.data[d.x_dual]
    piece = x if w[0] == "+" else xd
    if len(w) == 1:
        return piece.alpha
    tail = tensor_power_cell(L, d, w[1:])
    u_tail, _ = word_objects(L, d, w[1:])
    return Z.compose(phi.mult[(piece.u, u_tail)], Z.tensor_mor(piece.alpha, tail))


def genzd_composite(L: LaxLimitCategory, d: DualityDatum, word: Sequence, w: int) -> int:
    """``z^M⊗φ(w) -> φ(u^M)⊗φ(w) -> φ(u^M⊗w)``."""
    U, Z, phi = L.U, L.Z, L.phi
    um, _ = word_objects(L, d, word)
    a = tensor_power_cell(L, d, word)
    return Z.compose(phi.mult[(um, w)], Z.tensor_mor(a, Z.identity(phi.obj_map[w])))


def genzd_projection_check(L: LaxLimitCategory, d: DualityDatum, word: Sequence, w: int) -> bool:
    return L.Z.base.is_iso(genzd_composite(L, d, word, w))


# -- overcategories ----------------------------------------------------------------------


def overcategory(v: SymMonCategory, a: int, unit: int | None = None, mult: int | None = None) -> LaxLimitCategory:
    """``V_{/A}`` as the lax limit of the functor from the point selecting ``A``.

    ``unit: 1 -> A`` and ``mult: A⊗A -> A`` must make ``A`` a commutative
    algebra; otherwise :class:`InvalidAlgebra` is raised.  In a thin ``v``
    they may be omitted.
    """
    Vb = v.base
    pt = terminal_smc()
    if unit is None or mult is None:
        if not Vb.is_posetal:
            raise InvalidAlgebra("unit and multiplication are required outside thin categories")
        hu, hm = Vb.hom(v.unit, a), Vb.hom(v.tensor(a, a), a)
        if not hu or not hm:
            raise InvalidAlgebra("no unit 1 -> A or no multiplication A⊗A -> A")
        unit, mult = hu[0], hm[0]
    for f, s, t, what in ((unit, v.unit, a, "unit"), (mult, v.tensor(a, a), a, "multiplication")):
        if not 0 <= f < Vb.n_morphisms or Vb.src[f] != s or Vb.tgt[f] != t:
            raise InvalidAlgebra(f"{what} morphism has the wrong type")
    phi = LaxSMFunctor(pt, v, (a,), (v.identity(a),), unit, {(0, 0): mult}, name="A")
    rep = validate_lax_functor(phi)
    if not rep.ok:
        raise InvalidAlgebra(str(rep))
    return lax_limit(phi, name=f"{v.name}/{Vb.objects[a]}")

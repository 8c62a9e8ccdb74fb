"""The stratified bordism round trip at bounded size.

The lax limit of the stratified bordism object is modelled as pairs
``(N -> M, S)`` of an arrow in the bordism category and a finite set.  A
dualizable object ``x = (u, z, α)`` of a lax limit ``L`` induces a functor
sending ``(N -b-> M, ∅)`` to ``(u^M, z^N, a_M∘eval_z(b))``; evaluating it at
``τ = (id_+, ∅)`` must give back ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .bordism import (
    Bordism,
    cap,
    cup,
    eval_bordism,
    identity_bordism,
    matchings,
    swap,
    tensor_all,
    words,
)
from .duality import DualityDatum
from .errors import NotDualizable, RoundTripMismatch, SquareCellFailure
from .fincat import ValidationReport
from .laxlim import (
    LaxLimitCategory,
    criterion_dualizable,
    genzd_composite,
    tensor_power_cell,
    word_objects,
)
from .limits import check_size
from .monoidal import LaxSMFunctor


@dataclass(frozen=True)
class StratBordObject:
    arrow: Bordism
    finset: int


TAU = StratBordObject(identity_bordism("+"), 0)


@lru_cache(maxsize=None)
def bordisms(max_points: int, max_circles: int) -> tuple[Bordism, ...]:
    """Bordisms with ``|source| + |target| <= max_points``."""
    out = []
    for src in words(max_points):
        for tgt in words(max_points - len(src)):
            for arcs in matchings(src, tgt):
                for c in range(max_circles + 1):
                    out.append(Bordism(src, tgt, arcs, c))
    return tuple(out)


def strat_bord_objects(bound: int) -> list[StratBordObject]:
    """Arrows with both words of length ``<= bound`` and at most ``bound``
    circles, paired with finite sets of size ``<= bound``."""
    arrows = []
    for src in words(bound):
        for tgt in words(bound):
            for arcs in matchings(src, tgt):
                for c in range(bound + 1):
                    arrows.append(Bordism(src, tgt, arcs, c))
                    check_size(len(arrows) * (bound + 1), 0, "stratified bordism objects")
    return [StratBordObject(b, n) for b in arrows for n in range(bound + 1)]


@dataclass
class StratMorphismData:
    phi: LaxSMFunctor
    L: LaxLimitCategory
    x: int
    u_datum: DualityDatum
    z_datum: DualityDatum
    witness: DualityDatum
    fin_component: int
    square_cells: dict[str, int] = field(default_factory=dict)
    bound: int = 4


def classify_dualizable(L: LaxLimitCategory, x: int, bound: int = 4, fin_component: int | None = None) -> StratMorphismData:
    """Classifying data of a dualizable object: component duals, the
    designated finite-set component and every square cell up to ``bound``."""
    v = criterion_dualizable(L, x)
    if not v.dualizable or v.witness is None:
        raise NotDualizable("; ".join(v.diagnostics) or "criterion failed")
    fin = L.j_lower_star(L.U.unit) if fin_component is None else fin_component
    data = StratMorphismData(L.phi, L, x, v.u_datum, v.z_datum, v.witness, fin, bound=bound)
    for w in words(bound):
        cell = genzd_composite(L, v.witness, w, L.U.unit)
        if not L.Z.base.is_iso(cell):
            raise SquareCellFailure(f"cell for word {w!r} is not invertible")
        data.square_cells[w] = cell
    return data


def induced_object(data: StratMorphismData, b: Bordism) -> int | None:
    """Image of ``(b, ∅)``: ``(u^M, z^N, a_M∘eval_z(b))``."""
    L = data.L
    um, _ = word_objects(L, data.witness, b.target)
    _, zn = word_objects(L, data.witness, b.source)
    a = tensor_power_cell(L, data.witness, b.target)
    alpha = L.Z.compose(a, eval_bordism(data.z_datum, b))
    return L.find_object(um, zn, alpha)


def induced_at(data: StratMorphismData, obj: StratBordObject) -> int | None:
    y = induced_object(data, obj.arrow)
    if y is None:
        return None
    L = data.L
    return L.tensor(y, L.tensor_objs([data.fin_component] * obj.finset))


@lru_cache(maxsize=None)
def _generator_instances(bound: int) -> tuple[Bordism, ...]:
    gens = [cup(), cap()] + [swap(a, b) for a in "+-" for b in "+-"]
    out = []
    for g in gens:
        room = bound - max(len(g.source), len(g.target))
        for left in words(max(room, 0)):
            for right in words(max(room - len(left), 0)):
                out.append(tensor_all([identity_bordism(left), g, identity_bordism(right)]))
    return tuple(out)


def dagger_conditions(data: StratMorphismData) -> ValidationReport:
    """(a) the cells ``a_M`` are natural on bordism generators, so the
    functor factors through both projections; (b) every square cell is the
    recomputed generalized projection composite and is invertible, and the
    finite-set component has unit first coordinate and invertible structure
    map."""
    L, Z, U = data.L, data.L.Z, data.L.U
    phi = data.phi
    rep = ValidationReport("conditions (a)/(b)")
    for g in _generator_instances(data.bound):
        lhs = Z.compose(phi.mor_map[eval_bordism(data.u_datum, g)], tensor_power_cell(L, data.witness, g.source))
        rhs = Z.compose(tensor_power_cell(L, data.witness, g.target), eval_bordism(data.z_datum, g))
        if lhs != rhs:
            rep.add("cells natural on generators", str(g))
    for w in words(data.bound):
        expect = genzd_composite(L, data.witness, w, U.unit)
        got = data.square_cells.get(w)
        if got != expect:
            rep.add("square cell equals projection composite", w or "∅")
        elif not Z.base.is_iso(got):
            rep.add("square cell invertible", w or "∅")
    f = L.data[data.fin_component]
    if not U.base.isomorphic(f.u, U.unit) or not Z.base.is_iso(f.alpha):
        rep.add("finite-set component has unit coordinate and invertible map", str(L.base.objects[data.fin_component]))
    return rep


def star_conditions(data: StratMorphismData, max_points: int | None = None, max_circles: int = 1) -> ValidationReport:
    """(α) on every bounded bordism the induced object exists and the
    evaluation of the witness in ``L`` projects to the component evaluations;
    (β) the finite-set component is isomorphic to ``j_*(1_U)``."""
    L = data.L
    rep = ValidationReport("conditions (α)/(β)")
    b_L = L.base
    for b in bordisms(data.bound if max_points is None else max_points, max_circles):
        if induced_object(data, b) is None:
            rep.add("induced object exists", str(b))
            continue
        m = eval_bordism(data.witness, b)
        f0, f1 = b_L.morphism_components[m]
        if f0 != eval_bordism(data.u_datum, b) or f1 != eval_bordism(data.z_datum, b):
            rep.add("evaluation commutes with projections", str(b))
    if not b_L.isomorphic(data.fin_component, L.j_lower_star(L.U.unit)):
        rep.add("finite-set component ≅ j_*(1)", str(b_L.objects[data.fin_component]))
    return rep


def verify_round_trip(L: LaxLimitCategory, x: int, bound: int = 4, data: StratMorphismData | None = None) -> bool:
    """Classify ``x``, check both condition sets and evaluate at ``τ``."""
    data = data if data is not None else classify_dualizable(L, x, bound)
    problems = []
    back = induced_at(data, TAU)
    if back is None or not L.base.isomorphic(back, x):
        problems.append("evaluation at τ is not isomorphic to x")
    for rep in (dagger_conditions(data), star_conditions(data)):
        problems.extend(f"{rep.subject}: {v}" for v in rep.violations)
    if problems:
        raise RoundTripMismatch("; ".join(problems))
    return True

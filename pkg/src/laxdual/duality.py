"""Brute-force duality oracle.

A right dual of ``x`` is ``(y, ε: y⊗x -> 1, η: 1 -> x⊗y)`` satisfying both
triangle identities.  The search runs over every candidate ``y`` and every
pair ``(ε, η)``; thin categories short-circuit to an existence test since
parallel morphisms there are equal.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .errors import SizeLimit, TypeMismatch
from .limits import LIMITS
from .monoidal import SymMonCategory


@dataclass(frozen=True, eq=False)
class DualityDatum:
    ambient: SymMonCategory
    x: int
    x_dual: int
    ev: int
    coev: int

    def key(self) -> tuple[int, int, int, int]:
        return (self.x, self.x_dual, self.ev, self.coev)

    def __eq__(self, other) -> bool:
        return isinstance(other, DualityDatum) and other.ambient is self.ambient and other.key() == self.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        c = self.ambient.base
        return (
            f"DualityDatum(x={c.objects[self.x]!r}, x_dual={c.objects[self.x_dual]!r}, "
            f"ev={c.morphisms[self.ev]!r}, coev={c.morphisms[self.coev]!r})"
        )


def _check_types(d: DualityDatum) -> None:
    c, b = d.ambient, d.ambient.base
    want_ev = (c.tensor(d.x_dual, d.x), c.unit)
    want_coev = (c.unit, c.tensor(d.x, d.x_dual))
    if (b.src[d.ev], b.tgt[d.ev]) != want_ev:
        raise TypeMismatch(f"ev must go x_dual⊗x -> 1, got {b.morphisms[d.ev]!r}")
    if (b.src[d.coev], b.tgt[d.coev]) != want_coev:
        raise TypeMismatch(f"coev must go 1 -> x⊗x_dual, got {b.morphisms[d.coev]!r}")


def _triangles(c: SymMonCategory, x: int, y: int, ev: int, coev: int) -> bool:
    ix, iy = c.identity(x), c.identity(y)
    first = c.compose(c.tensor_mor(ix, ev), c.tensor_mor(coev, ix))
    if first != ix:
        return False
    return c.compose(c.tensor_mor(ev, iy), c.tensor_mor(iy, coev)) == iy


def verify_triangle(d: DualityDatum) -> bool:
    """Both zig-zag composites are identities."""
    _check_types(d)
    return _triangles(d.ambient, d.x, d.x_dual, d.ev, d.coev)


def _candidates(c: SymMonCategory, x: int, y: int) -> Iterator[tuple[int, int]]:
    evs = c.hom(c.tensor(y, x), c.unit)
    if not evs:
        return
    coevs = c.hom(c.unit, c.tensor(x, y))
    if not coevs:
        return
    if len(evs) * len(coevs) > LIMITS.max_morphisms:
        raise SizeLimit(f"{len(evs) * len(coevs)} (ε, η) candidates for one dual exceed the limit")
    if c.base.is_posetal:
        yield evs[0], coevs[0]
        return
    for e in evs:
        for h in coevs:
            if _triangles(c, x, y, e, h):
                yield e, h


def find_right_duals(c: SymMonCategory, x: int) -> list[DualityDatum]:
    """Every right duality datum for ``x``, ordered by (dual, ε, η) ids."""
    return [DualityDatum(c, x, y, e, h) for y in range(c.n_objects) for e, h in _candidates(c, x, y)]


def first_right_dual(c: SymMonCategory, x: int) -> DualityDatum | None:
    for y in range(c.n_objects):
        for e, h in _candidates(c, x, y):
            return DualityDatum(c, x, y, e, h)
    return None


def is_right_dualizable(c: SymMonCategory, x: int) -> bool:
    return first_right_dual(c, x) is not None


def is_left_dualizable(c: SymMonCategory, x: int) -> bool:
    """Some ``y`` has ``x`` as a right dual."""
    for y in range(c.n_objects):
        for _ in _candidates(c, y, x):
            return True
    return False


def dualizables(c: SymMonCategory, jobs: int = 1) -> set[int]:
    objs = range(c.n_objects)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            flags = list(pool.map(lambda a: is_right_dualizable(c, a), objs))
    else:
        flags = [is_right_dualizable(c, a) for a in objs]
    return {a for a, ok in zip(objs, flags) if ok}


def swap_datum(d: DualityDatum) -> DualityDatum:
    """In a symmetric category, ``x`` is also a right dual of ``x_dual``."""
    c = d.ambient
    ev = c.compose(d.ev, c.symmetry(d.x, d.x_dual))
    coev = c.compose(c.symmetry(d.x, d.x_dual), d.coev)
    return DualityDatum(c, d.x_dual, d.x, ev, coev)


def unit_datum(c: SymMonCategory) -> DualityDatum:
    u = c.unit_id
    return DualityDatum(c, c.unit, c.unit, u, u)


def circle_value(d: DualityDatum) -> int:
    """``δ = ε∘σ_{x,x^∨}∘η`` in ``End(1)``."""
    c = d.ambient
    return c.compose(d.ev, c.compose(c.symmetry(d.x, d.x_dual), d.coev))


def circle_value_other(d: DualityDatum) -> int:
    """The circle traced the other way: ``ε'∘σ∘η'`` for the swapped datum."""
    return circle_value(swap_datum(d))

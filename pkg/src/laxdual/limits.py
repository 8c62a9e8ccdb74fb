"""Global size guard applied by every constructor."""
from __future__ import annotations

import contextlib
from dataclasses import dataclass

from .errors import SizeLimit


@dataclass
class SizeLimits:
    max_objects: int = 100_000
    max_morphisms: int = 1_000_000


LIMITS = SizeLimits()


def check_size(n_objects: int, n_morphisms: int = 0, what: str = "category") -> None:
    if n_objects > LIMITS.max_objects:
        raise SizeLimit(f"{what}: {n_objects} objects exceeds limit {LIMITS.max_objects}")
    if n_morphisms > LIMITS.max_morphisms:
        raise SizeLimit(f"{what}: {n_morphisms} morphisms exceeds limit {LIMITS.max_morphisms}")


@contextlib.contextmanager
def size_limits(max_objects: int | None = None, max_morphisms: int | None = None):
    """Temporarily override the size guard."""
    saved = (LIMITS.max_objects, LIMITS.max_morphisms)
    if max_objects is not None:
        LIMITS.max_objects = max_objects
    if max_morphisms is not None:
        LIMITS.max_morphisms = max_morphisms
    try:
        yield LIMITS
    finally:
        LIMITS.max_objects, LIMITS.max_morphisms = saved

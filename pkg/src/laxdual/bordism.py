"""Oriented 1-dimensional bordisms up to diffeomorphism.

A bordism ``A -> C`` between signed words is a perfect matching of the
boundary points plus a count of closed circles.  Endpoints are ``('s', i)``
for source positions and ``('t', i)`` for target positions, 0-indexed.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .duality import DualityDatum, circle_value
from .errors import MalformedTable, NotComposable, TypeMismatch

Endpoint = tuple[str, int]

_ALLOWED = {
    (("s", "+"), ("t", "+")),
    (("s", "-"), ("t", "-")),
    (("s", "+"), ("s", "-")),
    (("t", "+"), ("t", "-")),
}


def _word(w: str | Sequence[str]) -> str:
    w = "".join(w).replace("−", "-")
    if any(c not in "+-" for c in w):
        raise MalformedTable(f"signed word {w!r} contains a symbol other than + and -")
    return w


@dataclass(frozen=True)
class Bordism:
    source: str
    target: str
    arcs: tuple[tuple[Endpoint, Endpoint], ...]
    circles: int = 0

    def __post_init__(self):
        src, tgt = _word(self.source), _word(self.target)
        object.__setattr__(self, "source", src)
        object.__setattr__(self, "target", tgt)
        if self.circles < 0:
            raise MalformedTable("negative circle count")
        arcs = tuple(sorted(tuple(sorted(a)) for a in self.arcs))
        object.__setattr__(self, "arcs", arcs)
        seen = set()
        for a, b in arcs:
            for e in (a, b):
                if e in seen:
                    raise MalformedTable(f"endpoint {e} matched twice")
                seen.add(e)
            sa, sb = self.sign(a), self.sign(b)
            if ((a[0], sa), (b[0], sb)) not in _ALLOWED and ((b[0], sb), (a[0], sa)) not in _ALLOWED:
                raise MalformedTable(f"arc {a}-{b} does not respect orientation")
        if len(seen) != len(src) + len(tgt):
            raise MalformedTable("matching is not perfect")

    def sign(self, e: Endpoint) -> str:
        side, i = e
        w = self.source if side == "s" else self.target
        if side not in ("s", "t") or not 0 <= i < len(w):
            raise MalformedTable(f"endpoint {e} out of range")
        return w[i]

    @property
    def partner(self) -> dict[Endpoint, Endpoint]:
        out = {}
        for a, b in self.arcs:
            out[a] = b
            out[b] = a
        return out

    def __str__(self) -> str:
        return format_bordism(self)


def identity_bordism(word: str) -> Bordism:
    word = _word(word)
    return Bordism(word, word, tuple((("s", i), ("t", i)) for i in range(len(word))))


def cup() -> Bordism:
    """``∅ -> +-``, evaluated by coevaluation."""
    return Bordism("", "+-", ((("t", 0), ("t", 1)),))


def cap() -> Bordism:
    """``-+ -> ∅``, evaluated by evaluation."""
    return Bordism("-+", "", ((("s", 0), ("s", 1)),))


def swap(a: str, b: str) -> Bordism:
    return Bordism(a + b, b + a, ((("s", 0), ("t", 1)), (("s", 1), ("t", 0))))


def circle() -> Bordism:
    return Bordism("", "", (), 1)


def compose_bordisms(g: Bordism, f: Bordism) -> Bordism:
    """``g ∘ f`` by tracing paths through the shared boundary."""
    if f.target != g.source:
        raise NotComposable(f"target {f.target!r} does not match source {g.source!r}")
    pf, pg = f.partner, g.partner
    arcs = []
    used_mid = set()
    done = set()

    def walk(side: str, e: Endpoint) -> Endpoint:
        # side is the bordism whose matching we follow next
        while True:
            nxt = (pf if side == "f" else pg)[e]
            if side == "f":
                if nxt[0] == "s":
                    return ("s", nxt[1])
                used_mid.add(nxt[1])
                side, e = "g", ("s", nxt[1])
            else:
                if nxt[0] == "t":
                    return ("t", nxt[1])
                used_mid.add(nxt[1])
                side, e = "f", ("t", nxt[1])

    starts = [("f", ("s", i)) for i in range(len(f.source))] + [("g", ("t", i)) for i in range(len(g.target))]
    for side, e in starts:
        if e in done:
            continue
        end = walk(side, e)
        done.add(e)
        done.add(end)
        arcs.append((e, end))
    loops = 0
    for m in range(len(f.target)):
        if m in used_mid:
            continue
        loops += 1
        side, e = "f", ("t", m)
        while True:
            used_mid.add(e[1])
            nxt = (pf if side == "f" else pg)[e]
            side = "g" if side == "f" else "f"
            e = ("s", nxt[1]) if side == "g" else ("t", nxt[1])
            if e[1] == m:
                break
    return Bordism(f.source, g.target, tuple(arcs), f.circles + g.circles + loops)


def compose_all(*bs: Bordism) -> Bordism:
    """``bs[0] ∘ bs[1] ∘ ... ∘ bs[-1]``."""
    out = bs[-1]
    for b in reversed(bs[:-1]):
        out = compose_bordisms(b, out)
    return out


def tensor_bordisms(f: Bordism, g: Bordism) -> Bordism:
    ns, nt = len(f.source), len(f.target)

    def shift(e):
        return (e[0], e[1] + (ns if e[0] == "s" else nt))

    arcs = f.arcs + tuple((shift(a), shift(b)) for a, b in g.arcs)
    return Bordism(f.source + g.source, f.target + g.target, arcs, f.circles + g.circles)


def tensor_all(bs: Sequence[Bordism]) -> Bordism:
    out = identity_bordism("")
    for b in bs:
        out = tensor_bordisms(out, b)
    return out


# -- normal forms -------------------------------------------------------------------------


@dataclass(frozen=True)
class Layer:
    """One factor of a normal form: a tensor product of atoms.

    Atoms are ``('id', sign)``, ``('cup',)``, ``('cap',)``,
    ``('swap', a, b)`` and ``('circle',)``.
    """

    atoms: tuple[tuple, ...]

    @property
    def kind(self) -> str:
        kinds = {a[0] for a in self.atoms} - {"id"}
        return "identity" if not kinds else "+".join(sorted(kinds))

    def bordism(self) -> Bordism:
        parts = []
        for a in self.atoms:
            if a[0] == "id":
                parts.append(identity_bordism(a[1]))
            elif a[0] == "cup":
                parts.append(cup())
            elif a[0] == "cap":
                parts.append(cap())
            elif a[0] == "swap":
                parts.append(swap(a[1], a[2]))
            else:
                parts.append(circle())
        return tensor_all(parts)


def _swap_layers(word: list[str], perm: list[int], strategy: str) -> list[Layer]:
    """Adjacent transpositions turning ``word`` (whose slot ``i`` must end at
    position ``perm[i]``) into the target order."""
    cur = list(range(len(word)))  # cur[k] = slot currently at position k
    signs = list(word)
    layers = []

    def do(k):
        a, b = signs[k], signs[k + 1]
        atoms = tuple(("id", c) for c in signs[:k]) + (("swap", a, b),) + tuple(("id", c) for c in signs[k + 2:])
        layers.append(Layer(atoms))
        cur[k], cur[k + 1] = cur[k + 1], cur[k]
        signs[k], signs[k + 1] = b, a

    n = len(word)
    if strategy == "A":
        changed = True
        while changed:
            changed = False
            for k in range(n - 1):
                if perm[cur[k]] > perm[cur[k + 1]]:
                    do(k)
                    changed = True
    else:
        for target in range(n - 1, -1, -1):
            k = next(i for i in range(n) if perm[cur[i]] == target)
            while k < target:
                do(k)
                k += 1
    return layers


@lru_cache(maxsize=65536)
def _normal_form(b: Bordism, strategy: str) -> tuple[Layer, ...]:
    return tuple(_build_normal_form(b, strategy))


def normal_form(b: Bordism, strategy: str = "A") -> list[Layer]:
    """Cups, then a permutation as adjacent swaps, then caps.

    Strategy ``A`` appends cups on the right and removes caps on the left
    (bubble-sorting the permutation); ``B`` is the mirror image with a
    different reduced word for the permutation.
    """
    if strategy not in ("A", "B"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return list(_normal_form(b, strategy))


def _build_normal_form(b: Bordism, strategy: str) -> list[Layer]:
    A, C = b.source, b.target
    p = b.partner
    cups = [(i, p[("t", i)][1]) for i in range(len(C)) if p[("t", i)][0] == "t" and i < p[("t", i)][1]]
    caps = [(i, p[("s", i)][1]) for i in range(len(A)) if p[("s", i)][0] == "s" and i < p[("s", i)][1]]
    m, r = len(cups), len(caps)

    # slots of the middle word, before permuting, and where each must go
    mid: list[str] = []
    dest: list[tuple] = []
    cup_block = []
    for i, j in cups:
        plus, minus = (i, j) if C[i] == "+" else (j, i)
        cup_block.append((("t", plus), "+"))
        cup_block.append((("t", minus), "-"))
    src_block = [(("s", i), A[i]) for i in range(len(A))]
    slots = src_block + cup_block if strategy == "A" else cup_block + src_block
    cap_pos = {}
    for k, (i, j) in enumerate(caps):
        plus, minus = (i, j) if A[i] == "+" else (j, i)
        cap_pos[("s", minus)] = 2 * k
        cap_pos[("s", plus)] = 2 * k + 1
    off_c = 2 * r if strategy == "A" else 0
    off_cap = 0 if strategy == "A" else len(C)
    for e, sgn in slots:
        mid.append(sgn)
        if e[0] == "t":
            dest.append(off_c + e[1])
        elif e in cap_pos:
            dest.append(off_cap + cap_pos[e])
        else:
            t = p[e]
            dest.append(off_c + t[1])

    layers: list[Layer] = []
    circ = (("circle",),) * b.circles
    if m or b.circles:
        ids = tuple(("id", c) for c in A)
        cupa = (("cup",),) * m
        layers.append(Layer(ids + cupa + circ if strategy == "A" else circ + cupa + ids))
    layers.extend(_swap_layers(mid, dest, strategy))
    if r:
        ids = tuple(("id", c) for c in C)
        capa = (("cap",),) * r
        layers.append(Layer(capa + ids if strategy == "A" else ids + capa))
    if not layers:
        layers.append(Layer(tuple(("id", c) for c in A)))
    return layers


def recompose(layers: Sequence[Layer]) -> Bordism:
    out = layers[0].bordism()
    for L in layers[1:]:
        out = compose_bordisms(L.bordism(), out)
    return out


# -- evaluation ------------------------------------------------------------------------------


def word_object(d: DualityDatum, word: str) -> int:
    c = d.ambient
    return c.tensor_objs(d.x if s == "+" else d.x_dual for s in _word(word))


def _atom_morphism(d: DualityDatum, atom: tuple, delta: int) -> int:
    c = d.ambient
    obj = {"+": d.x, "-": d.x_dual}
    kind = atom[0]
    if kind == "id":
        return c.identity(obj[atom[1]])
    if kind == "cup":
        return d.coev
    if kind == "cap":
        return d.ev
    if kind == "swap":
        return c.symmetry(obj[atom[1]], obj[atom[2]])
    return delta


def eval_layers(d: DualityDatum, layers: Sequence[Layer]) -> int:
    c = d.ambient
    delta = circle_value(d)
    out = None
    for L in layers:
        m = c.tensor_mors(_atom_morphism(d, a, delta) for a in L.atoms)
        out = m if out is None else c.compose(m, out)
    return out


def eval_bordism(d: DualityDatum, b: Bordism, strategy: str = "A") -> int:
    """The morphism ``b`` is sent to by the functor classified by ``d``."""
    c = d.ambient
    cache = c.__dict__.setdefault("_bord_eval_cache", {})
    key = (d.key(), b, strategy)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if strategy not in ("A", "B"):
        raise ValueError(f"unknown normal-form strategy {strategy!r}")
    cb = c.base
    if (cb.src[d.ev], cb.tgt[d.ev]) != (c.tensor(d.x_dual, d.x), c.unit) or (
        cb.src[d.coev],
        cb.tgt[d.coev],
    ) != (c.unit, c.tensor(d.x, d.x_dual)):
        raise TypeMismatch("duality datum is not well typed")
    cache[key] = out = eval_layers(d, _normal_form(b, strategy))
    return out


# -- literal syntax -----------------------------------------------------------------------------

_FIELD = re.compile(r"^(src|tgt|arcs|circles)=(.*)$")
_ARC = re.compile(r"^\(([st])(\d+):([st])(\d+)\)$")


def parse_bordism(text: str) -> Bordism:
    """Parse ``src=+-+; tgt=+; arcs=(s1:t1),(s2:s3); circles=2`` (1-indexed)."""
    compact = re.sub(r"\s+", "", text)
    fields = {}
    for part in filter(None, compact.split(";")):
        m = _FIELD.match(part)
        if not m or m.group(1) in fields:
            raise MalformedTable(f"bad bordism field {part!r}")
        fields[m.group(1)] = m.group(2)
    if "src" not in fields or "tgt" not in fields:
        raise MalformedTable("bordism literal needs src= and tgt=")
    arcs = []
    if fields.get("arcs"):
        for tok in re.findall(r"\([^)]*\)", fields["arcs"]):
            m = _ARC.match(tok)
            if not m:
                raise MalformedTable(f"bad arc {tok!r}")
            a = (m.group(1), int(m.group(2)) - 1)
            b = (m.group(3), int(m.group(4)) - 1)
            if a[1] < 0 or b[1] < 0:
                raise MalformedTable("positions are 1-indexed")
            arcs.append((a, b))
        if re.sub(r"\([^)]*\)", "", fields["arcs"]).strip(","):
            raise MalformedTable(f"bad arcs list {fields['arcs']!r}")
    circles = fields.get("circles", "0")
    if not circles.isdigit():
        raise MalformedTable(f"bad circle count {circles!r}")
    return Bordism(fields["src"], fields["tgt"], tuple(arcs), int(circles))


def format_bordism(b: Bordism) -> str:
    arcs = ",".join(f"({a[0]}{a[1] + 1}:{c[0]}{c[1] + 1})" for a, c in b.arcs)
    return f"src={b.source}; tgt={b.target}; arcs={arcs}; circles={b.circles}"


# -- enumeration and sampling ----------------------------------------------------------------------


def matchings(source: str, target: str) -> Iterator[tuple[tuple[Endpoint, Endpoint], ...]]:
    """Every orientation-respecting perfect matching, deterministically."""
    pts = [("s", i) for i in range(len(source))] + [("t", i) for i in range(len(target))]
    sign = {("s", i): source[i] for i in range(len(source))}
    sign.update({("t", i): target[i] for i in range(len(target))})

    def ok(a, b):
        return ((a[0], sign[a]), (b[0], sign[b])) in _ALLOWED or ((b[0], sign[b]), (a[0], sign[a])) in _ALLOWED

    def rec(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for k in range(1, len(rest)):
            if ok(a, rest[k]):
                for tail in rec(rest[1:k] + rest[k + 1:]):
                    yield ((a, rest[k]),) + tail

    yield from rec(pts)


def words(max_len: int) -> list[str]:
    out = [""]
    for n in range(1, max_len + 1):
        out.extend("".join(w) for w in _signs(n))
    return out


def _signs(n: int):
    if n == 0:
        yield ()
        return
    for w in _signs(n - 1):
        yield w + ("+",)
        yield w + ("-",)


def random_bordism_from(rng: random.Random, source: str, max_points: int = 8, max_circles: int = 3) -> Bordism:
    """Random bordism out of ``source``: random caps among source points,
    the rest pass through, plus random cups, shuffled target order."""
    idx = list(range(len(source)))
    rng.shuffle(idx)
    plus = [i for i in idx if source[i] == "+"]
    minus = [i for i in idx if source[i] == "-"]
    ncap = rng.randint(0, min(len(plus), len(minus)))
    arcs = [(("s", plus[k]), ("s", minus[k])) for k in range(ncap)]
    through = [i for i in range(len(source)) if i not in set(plus[:ncap]) | set(minus[:ncap])]
    room = max(0, (max_points - len(through)) // 2)
    ncup = rng.randint(0, room)
    ends = [("through", i, source[i]) for i in through]
    for k in range(ncup):
        ends.append(("cup+", k, "+"))
        ends.append(("cup-", k, "-"))
    rng.shuffle(ends)
    target = "".join(e[2] for e in ends)
    cup_pos: dict[int, dict[str, int]] = {}
    for pos, (kind, i, _) in enumerate(ends):
        if kind == "through":
            arcs.append((("s", i), ("t", pos)))
        else:
            cup_pos.setdefault(i, {})[kind] = pos
    for k, d in cup_pos.items():
        arcs.append((("t", d["cup+"]), ("t", d["cup-"])))
    return Bordism(source, target, tuple(arcs), rng.randint(0, max_circles))


def random_word(rng: random.Random, max_len: int) -> str:
    return "".join(rng.choice("+-") for _ in range(rng.randint(0, max_len)))


def random_bordism(rng: random.Random, max_points: int = 8, max_circles: int = 3) -> Bordism:
    return random_bordism_from(rng, random_word(rng, max_points), max_points, max_circles)


def functoriality_failures(
    d: DualityDatum, rng: random.Random, trials: int = 1, max_points: int = 8, max_circles: int = 3
) -> list[str]:
    """Random composable pairs and tensor pairs on which ``eval`` fails to be
    a symmetric monoidal functor.  Tensor factors get half the strands each."""
    c = d.ambient
    bad = []
    for _ in range(trials):
        f = random_bordism(rng, max_points, max_circles)
        g = random_bordism_from(rng, f.target, max_points, max_circles)
        if eval_bordism(d, compose_bordisms(g, f)) != c.compose(eval_bordism(d, g), eval_bordism(d, f)):
            bad.append(f"compose {format_bordism(g)} after {format_bordism(f)}")
        a = random_bordism(rng, max_points // 2, max_circles)
        b = random_bordism(rng, max_points - max_points // 2, max_circles)
        if eval_bordism(d, tensor_bordisms(a, b)) != c.tensor_mor(eval_bordism(d, a), eval_bordism(d, b)):
            bad.append(f"tensor {format_bordism(a)} with {format_bordism(b)}")
    return bad


# -- standard bordisms ---------------------------------------------------------------------------------


def zorro_plus() -> Bordism:
    """``(id_+ ⊗ cap')∘(cup ⊗ id_+)`` on ``+``, with the cap fed as ``-+``."""
    first = tensor_bordisms(cup(), identity_bordism("+"))
    second = tensor_bordisms(identity_bordism("+"), cap())
    return compose_bordisms(second, first)


def zorro_minus() -> Bordism:
    """``(cap ⊗ id_-)∘(id_- ⊗ cup)`` on ``-``."""
    first = tensor_bordisms(identity_bordism("-"), cup())
    second = tensor_bordisms(cap(), identity_bordism("-"))
    return compose_bordisms(second, first)


def closed_circle() -> Bordism:
    """``cap ∘ swap ∘ cup``, closing into one circle."""
    return compose_all(cap(), swap("+", "-"), cup())

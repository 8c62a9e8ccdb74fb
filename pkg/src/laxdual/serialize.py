"""JSON documents for categories, monoidal structures, lax functors, lax-limit
instances and stratifications.

Every document carries a top-level ``"schema"`` key.  Labels are strings on
disk; unknown keys are rejected.  ``digest`` hashes the canonical form
(sorted keys, no whitespace), so it is stable across key order and spacing.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Callable, Mapping

from .errors import LaxDualError, MalformedTable, SchemaError
from .fincat import FinCategory
from .monoidal import LaxSMFunctor, LaxSMNatTransform, SymMonCategory
from .strat import FinPoset, Stratification

FINCAT = "fincat/v1"
SMC = "smc/v1"
LAXFUN = "laxfun/v1"
LAXLIMIT = "laxlimit-instance/v1"
STRAT = "stratification/v1"
SCHEMAS = (FINCAT, SMC, LAXFUN, LAXLIMIT, STRAT)

_FINCAT_KEYS = {"objects", "morphisms", "identities", "composition"}
_SMC_KEYS = _FINCAT_KEYS | {"unit", "tensor_obj", "tensor_mor", "symmetry"}
_LAXFUN_KEYS = {"object_map", "morphism_map", "unit_cell", "mult"}
_OPTIONAL = {"schema", "name"}


def canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(doc: Any) -> str:
    return hashlib.sha256(canonical(doc).encode("utf-8")).hexdigest()


# -- reading ---------------------------------------------------------------------------


def _keys(doc: Any, required: set[str], schema: str, where: str, optional: frozenset = frozenset()) -> None:
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected an object")
    if "schema" in doc and doc["schema"] != schema:
        raise SchemaError(f"{where}: schema is {doc['schema']!r}, expected {schema!r}")
    missing = required - set(doc)
    if missing:
        raise SchemaError(f"{where}: missing keys {sorted(missing)}")
    unknown = set(doc) - required - optional - _OPTIONAL
    if unknown:
        raise SchemaError(f"{where}: unknown keys {sorted(unknown)}")


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise SchemaError(f"{where}: expected an array")
    return x


def _triples(x: Any, where: str) -> list[tuple[str, str, str]]:
    out = []
    for t in _list(x, where):
        if not isinstance(t, list) or len(t) != 3 or not all(isinstance(v, str) for v in t):
            raise SchemaError(f"{where}: entries must be arrays of three strings, got {t!r}")
        out.append(tuple(t))
    return out


def _str_map(x: Any, where: str) -> dict[str, str]:
    if not isinstance(x, dict) or not all(isinstance(v, str) for v in x.values()):
        raise SchemaError(f"{where}: expected a map of strings")
    return x


def _fincat(doc: dict, where: str) -> FinCategory:
    objects = _list(doc["objects"], f"{where}.objects")
    if not all(isinstance(o, str) for o in objects):
        raise SchemaError(f"{where}.objects: labels must be strings")
    mors = []
    for m in _list(doc["morphisms"], f"{where}.morphisms"):
        if not isinstance(m, dict) or set(m) != {"id", "src", "tgt"} or not all(isinstance(v, str) for v in m.values()):
            raise SchemaError(f"{where}.morphisms: entries must be {{id, src, tgt}} strings, got {m!r}")
        mors.append((m["id"], m["src"], m["tgt"]))
    ids = _str_map(doc["identities"], f"{where}.identities")
    comp = _triples(doc["composition"], f"{where}.composition")
    return FinCategory.from_tables(objects, mors, ids, comp, name=doc.get("name", ""))


def load_fincat(doc: Any, where: str = "fincat") -> FinCategory:
    _keys(doc, _FINCAT_KEYS, FINCAT, where)
    return _fincat(doc, where)


def load_smc(doc: Any, where: str = "smc") -> SymMonCategory:
    _keys(doc, _SMC_KEYS, SMC, where)
    c = _fincat(doc, where)
    if not isinstance(doc["unit"], str):
        raise SchemaError(f"{where}.unit: expected an object label")
    unit = c.obj(doc["unit"])
    tobj = {(c.obj(a), c.obj(b)): c.obj(r) for a, b, r in _triples(doc["tensor_obj"], f"{where}.tensor_obj")}
    tmor = {(c.mor(f), c.mor(g)): c.mor(r) for f, g, r in _triples(doc["tensor_mor"], f"{where}.tensor_mor")}
    sym = {(c.obj(a), c.obj(b)): c.mor(r) for a, b, r in _triples(doc["symmetry"], f"{where}.symmetry")}
    return SymMonCategory(c, unit, tobj, tmor, sym, name=doc.get("name", ""))


def load_laxfun(doc: Any, U: SymMonCategory, Z: SymMonCategory, where: str = "phi") -> LaxSMFunctor:
    _keys(doc, _LAXFUN_KEYS, LAXFUN, where)
    om = _str_map(doc["object_map"], f"{where}.object_map")
    mm = _str_map(doc["morphism_map"], f"{where}.morphism_map")
    Ub, Zb = U.base, Z.base
    for what, table, labels in (("object", om, Ub.objects), ("morphism", mm, Ub.morphisms)):
        if set(table) != set(labels):
            raise MalformedTable(f"{where}: {what} map must cover exactly the domain {what}s")
    obj_map = tuple(Zb.obj(om[o]) for o in Ub.objects)
    mor_map = tuple(Zb.mor(mm[m]) for m in Ub.morphisms)
    if not isinstance(doc["unit_cell"], str):
        raise SchemaError(f"{where}.unit_cell: expected a morphism label")
    mult = {(Ub.obj(a), Ub.obj(b)): Zb.mor(r) for a, b, r in _triples(doc["mult"], f"{where}.mult")}
    return LaxSMFunctor(U, Z, obj_map, mor_map, Zb.mor(doc["unit_cell"]), mult, name=doc.get("name", ""))


def load_laxlimit_instance(doc: Any, where: str = "instance") -> LaxSMFunctor:
    _keys(doc, {"domain", "codomain", "phi"}, LAXLIMIT, where)
    U = load_smc(doc["domain"], f"{where}.domain")
    Z = load_smc(doc["codomain"], f"{where}.codomain")
    return load_laxfun(doc["phi"], U, Z, f"{where}.phi")


def _split(key: str, n: int, where: str) -> list[str]:
    parts = key.split("<")
    if len(parts) != n:
        raise SchemaError(f"{where}: key {key!r} must have {n} parts separated by '<'")
    return parts


def load_stratification(doc: Any, where: str = "stratification") -> Stratification:
    _keys(doc, {"poset", "strata", "monodromy"}, STRAT, where, frozenset({"theta"}))
    pd = doc["poset"]
    if not isinstance(pd, dict) or set(pd) - {"elements", "leq"} or "elements" not in pd:
        raise SchemaError(f"{where}.poset: expected {{elements, leq}}")
    elements = _list(pd["elements"], f"{where}.poset.elements")
    if not all(isinstance(e, str) and "<" not in e for e in elements):
        raise SchemaError(f"{where}.poset.elements: labels must be strings without '<'")
    leq = []
    for pair in _list(pd.get("leq", []), f"{where}.poset.leq"):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"{where}.poset.leq: entries must be pairs")
        leq.append(tuple(pair))
    P = FinPoset(elements, _transitive_closure(leq), name=doc.get("name", ""))
    ix = {e: i for i, e in enumerate(elements)}

    def elem(label: str) -> int:
        if label not in ix:
            raise MalformedTable(f"{where}: unknown poset element {label!r}")
        return ix[label]

    sd = doc["strata"]
    if not isinstance(sd, dict) or set(sd) != set(elements):
        raise SchemaError(f"{where}.strata: expected one smc/v1 document per poset element")
    strata = [load_smc(sd[e], f"{where}.strata[{e}]") for e in elements]
    md = doc["monodromy"]
    if not isinstance(md, dict):
        raise SchemaError(f"{where}.monodromy: expected a map keyed 'p<q'")
    mono = {}
    for key, f in md.items():
        p, q = map(elem, _split(key, 2, f"{where}.monodromy"))
        mono[(p, q)] = load_laxfun(f, strata[p], strata[q], f"{where}.monodromy[{key}]")
    if set(mono) != set(P.strict_pairs):
        raise MalformedTable(f"{where}: monodromy must be given on exactly the strict relations")
    td = doc.get("theta", {})
    if not isinstance(td, dict):
        raise SchemaError(f"{where}.theta: expected a map keyed 'p<q<r'")
    theta = {}
    for key, comps in td.items():
        p, q, r = map(elem, _split(key, 3, f"{where}.theta"))
        if (p, q, r) not in set(P.strict_chains(2)):
            raise MalformedTable(f"{where}.theta: {key!r} is not a strict chain")
        comps = _str_map(comps, f"{where}.theta[{key}]")
        Sp, Sr = strata[p].base, strata[r].base
        if set(comps) != set(Sp.objects):
            raise MalformedTable(f"{where}.theta[{key}]: components must cover the objects of stratum {elements[p]!r}")
        theta[(p, q, r)] = tuple(Sr.mor(comps[o]) for o in Sp.objects)
    return Stratification.build(P, strata, mono, theta, name=doc.get("name", ""))


def _transitive_closure(pairs: list[tuple]) -> set[tuple]:
    rel = set(pairs)
    while True:
        new = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        if not new:
            return rel
        rel |= new


LOADERS: dict[str, Callable[[Any], Any]] = {
    FINCAT: load_fincat,
    SMC: load_smc,
    LAXLIMIT: load_laxlimit_instance,
    STRAT: load_stratification,
}


def load_document(doc: Any) -> tuple[str, Any]:
    """Dispatch on the top-level ``schema`` key.  Returns ``(schema, value)``.

    A standalone laxfun/v1 document has no domain or codomain, so it is
    only accepted nested inside the instance schemas.
    """
    if not isinstance(doc, dict) or "schema" not in doc:
        raise SchemaError("document must be an object with a 'schema' key")
    schema = doc["schema"]
    if schema not in LOADERS:
        raise SchemaError(f"unsupported top-level schema {schema!r}")
    try:
        return schema, LOADERS[schema](doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{schema}: {exc}") from exc


def read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON: {exc}") from exc


def load_path(path: str) -> tuple[str, Any, Any]:
    """``(schema, value, raw document)``."""
    doc = read_json(path)
    schema, value = load_document(doc)
    return schema, value, doc


# -- writing ---------------------------------------------------------------------------


def _labels(seq) -> list[str]:
    out = [x if isinstance(x, str) else str(x) for x in seq]
    if len(set(out)) != len(out):
        out = [str(i) for i in range(len(seq))]
    return out


def dump_fincat(c: FinCategory, schema: str = FINCAT, O: list[str] | None = None, M: list[str] | None = None) -> dict:
    O = O if O is not None else _labels(c.objects)
    M = M if M is not None else _labels(c.morphisms)
    comp = [[M[g], M[f], M[c.compose(g, f)]] for f, g in _pairs(c)]
    doc = {
        "schema": schema,
        "objects": O,
        "morphisms": [{"id": M[f], "src": O[c.src[f]], "tgt": O[c.tgt[f]]} for f in range(c.n_morphisms)],
        "identities": {O[a]: M[c.identities[a]] for a in range(c.n_objects)},
        "composition": comp,
    }
    if c.name:
        doc["name"] = c.name
    return doc


def _pairs(c: FinCategory):
    for f in range(c.n_morphisms):
        for g in c.out_morphisms(c.tgt[f]):
            yield f, g


def dump_smc(m: SymMonCategory) -> dict:
    c = m.base
    O, M = smc_labels(m)
    doc = dump_fincat(c, SMC, O, M)
    n, nm = c.n_objects, c.n_morphisms
    doc["unit"] = O[m.unit]
    doc["tensor_obj"] = [[O[a], O[b], O[m.tensor(a, b)]] for a in range(n) for b in range(n)]
    doc["tensor_mor"] = [[M[f], M[g], M[m.tensor_mor(f, g)]] for f in range(nm) for g in range(nm)]
    doc["symmetry"] = [[O[a], O[b], M[m.symmetry(a, b)]] for a in range(n) for b in range(n)]
    if m.name:
        doc["name"] = m.name
    return doc


def smc_labels(m: SymMonCategory) -> tuple[list[str], list[str]]:
    """Unique display labels, falling back to indices on collision."""
    O = _labels([m.object_label(x) for x in range(m.n_objects)])
    M = _labels([m.morphism_label(f) for f in range(m.n_morphisms)])
    return O, M


def dump_laxfun(phi: LaxSMFunctor) -> dict:
    Ub, Zb = phi.domain.base, phi.codomain.base
    UO, UM = smc_labels(phi.domain)
    ZO, ZM = smc_labels(phi.codomain)
    doc = {
        "schema": LAXFUN,
        "object_map": {UO[a]: ZO[phi.obj_map[a]] for a in range(Ub.n_objects)},
        "morphism_map": {UM[f]: ZM[phi.mor_map[f]] for f in range(Ub.n_morphisms)},
        "unit_cell": ZM[phi.unit_cell],
        "mult": [[UO[a], UO[b], ZM[phi.mult[(a, b)]]] for a, b in sorted(phi.mult)],
    }
    if phi.name:
        doc["name"] = phi.name
    return doc


def dump_laxlimit_instance(phi: LaxSMFunctor) -> dict:
    return {
        "schema": LAXLIMIT,
        "domain": dump_smc(phi.domain),
        "codomain": dump_smc(phi.codomain),
        "phi": dump_laxfun(phi),
    }


def dump_stratification(s: Stratification) -> dict:
    P = s.poset
    E = _labels(P.elements)
    theta = {}
    for (p, q, r), t in sorted(s.theta.items()):
        Sp = s.strata[p].base
        O, M = smc_labels(s.strata[p])[0], smc_labels(s.strata[r])[1]
        theta[f"{E[p]}<{E[q]}<{E[r]}"] = {O[a]: M[t.components[a]] for a in range(Sp.n_objects)}
    doc = {
        "schema": STRAT,
        "poset": {"elements": E, "leq": [[E[a], E[b]] for a, b in P.strict_pairs]},
        "strata": {E[p]: dump_smc(S) for p, S in enumerate(s.strata)},
        "monodromy": {f"{E[p]}<{E[q]}": dump_laxfun(f) for (p, q), f in sorted(s.monodromy.items())},
        "theta": theta,
    }
    if s.name:
        doc["name"] = s.name
    return doc


def dump_value(value: Any) -> dict:
    if isinstance(value, Stratification):
        return dump_stratification(value)
    if isinstance(value, LaxSMFunctor):
        return dump_laxlimit_instance(value)
    if isinstance(value, SymMonCategory):
        return dump_smc(value)
    if isinstance(value, FinCategory):
        return dump_fincat(value)
    raise LaxDualError(f"cannot serialize {type(value).__name__}")


def write_json(doc: Mapping, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, indent=1, ensure_ascii=False)
        fh.write("\n")

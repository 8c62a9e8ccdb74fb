"""``laxdual`` command line.

Reports go to stdout as JSON with sorted keys; a one-line summary and the
wall time go to stderr, so stdout is byte-stable for fixed input and seed.

Exit codes: 0 success, 1 a check failed, 2 input could not be parsed,
3 a size guard tripped.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Sequence

from .bordism import eval_bordism, format_bordism, parse_bordism, random_bordism
from .bordism import words as signed_words
from .duality import DualityDatum, first_right_dual, is_right_dualizable, verify_triangle
from .errors import LaxDualError, MalformedTable, NotAChain, NotDualizable, SchemaError, SizeLimit, TypeMismatch
from .fincat import ValidationReport, validate_category
from .laxlim import (
    LaxLimitCategory,
    check_projections,
    criterion_dualizable,
    datum_to_dict,
    genzd_projection_check,
    lax_limit,
    strict_shortcut,
)
from .limits import size_limits
from .monoidal import SymMonCategory, validate_lax_functor, validate_smc
from .serialize import FINCAT, LAXLIMIT, SMC, STRAT, digest, dump_smc, load_path, smc_labels
from .strat import (
    StratLaxLimit,
    chain_presentation_check,
    linkwise_criterion,
    peel_first,
    strat_lax_limit,
    validate_stratification,
)
from .stratbord import classify_dualizable, verify_round_trip

OK, FAIL, PARSE, SIZE = 0, 1, 2, 3


class UsageError(LaxDualError):
    """The command does not apply to the given input."""


class Context:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.schema, self.value, self.raw = load_path(args.path)
        self.report: dict[str, Any] = {
            "command": args.command if args.command != "bord" else "bord eval",
            "path": args.path,
            "schema": self.schema,
            "digest": digest(self.raw),
        }
        self.summary = ""

    def pmap(self, fn: Callable[[int], Any], items: Sequence[int]) -> list:
        if self.args.jobs > 1:
            with ThreadPoolExecutor(self.args.jobs) as pool:
                return list(pool.map(fn, items))
        return [fn(i) for i in items]

    def ambient(self) -> SymMonCategory:
        """The category whose objects the command talks about."""
        if self.schema == SMC:
            return self.value
        if self.schema == LAXLIMIT:
            return lax_limit(self.value)
        if self.schema == STRAT:
            return strat_lax_limit(self.value)
        raise UsageError(f"{self.args.command} needs a monoidal input, got {self.schema}")


def resolve(c: SymMonCategory, text: str, kind: str = "object") -> int:
    """A display label, or ``#n`` for the n-th id."""
    labels = smc_labels(c)[0 if kind == "object" else 1]
    n = len(labels)
    if text.startswith("#") and text[1:].isdigit() and int(text[1:]) < n:
        return int(text[1:])
    if text in labels:
        return labels.index(text)
    raise UsageError(f"unknown {kind} {text!r}")


# -- commands ---------------------------------------------------------------------------


def cmd_validate(ctx: Context) -> int:
    v = ctx.value
    if ctx.schema == FINCAT:
        reps = [validate_category(v)]
    elif ctx.schema == SMC:
        reps = [validate_smc(v)]
    elif ctx.schema == LAXLIMIT:
        reps = [validate_smc(v.domain), validate_smc(v.codomain)]
        if all(r.ok for r in reps):
            reps.append(validate_lax_functor(v))
    else:
        reps = [validate_stratification(v)]
    ok = all(r.ok for r in reps)
    ctx.report["ok"] = ok
    ctx.report["reports"] = [r.to_dict() for r in reps]
    n = sum(len(r.violations) for r in reps)
    ctx.summary = "valid" if ok else f"{n} violation(s); first: {next(str(x) for r in reps for x in r.violations)}"
    return OK if ok else FAIL


def _criterion(ctx: Context, c: SymMonCategory, x: int) -> tuple[bool, dict | None]:
    if isinstance(c, LaxLimitCategory):
        v = criterion_dualizable(c, x)
        return v.dualizable, (datum_to_dict(v.witness) if v.witness is not None else None)
    if isinstance(c, StratLaxLimit):
        v = linkwise_criterion(c.strat, x, c)
        return v.dualizable, (datum_to_dict(v.witness) if v.witness is not None else None)
    d = first_right_dual(c, x)
    return d is not None, (datum_to_dict(d) if d is not None else None)


def _oracle(c: SymMonCategory, x: int) -> tuple[bool, dict | None]:
    d = first_right_dual(c, x)
    return d is not None, (datum_to_dict(d) if d is not None else None)


def cmd_dualizables(ctx: Context) -> int:
    c = ctx.ambient()
    method = ctx.args.method
    if ctx.schema == SMC and method != "oracle":
        # no criterion beyond the search itself for a bare category
        method = "oracle"
    crit = ctx.pmap(lambda x: _criterion(ctx, c, x), range(c.n_objects)) if method in ("criterion", "both") else None
    orac = ctx.pmap(lambda x: _oracle(c, x), range(c.n_objects)) if method in ("oracle", "both") else None
    rows, disagree = [], []
    for x in range(c.n_objects):
        verdicts = [r[x] for r in (crit, orac) if r is not None]
        if method == "both" and crit[x][0] != orac[x][0]:
            disagree.append({"object": c.object_label(x), "criterion": crit[x][0], "oracle": orac[x][0]})
        if verdicts[0][0]:
            rows.append({"object": c.object_label(x), "witness": verdicts[0][1]})
    ctx.report.update(
        method=method,
        n_objects=c.n_objects,
        dualizable=rows,
        disagreements=disagree,
        ok=not disagree,
    )
    ctx.summary = f"{len(rows)}/{c.n_objects} objects dualizable ({method})"
    if disagree:
        ctx.summary += f"; {len(disagree)} disagreement(s)"
    return FAIL if disagree else OK


def _check_laxlimit(ctx: Context, L: LaxLimitCategory) -> list[str]:
    failures = []
    rep = check_projections(L)
    if not rep.ok:
        failures.append(str(rep))
    bound = ctx.args.bound
    ws = signed_words(bound)

    def one(x: int) -> list[str]:
        out = []
        lab = L.object_label(x)
        v2 = criterion_dualizable(L, x, "at_two_objects")
        va = criterion_dualizable(L, x, "at_all_w")
        o = is_right_dualizable(L, x)
        if v2.dualizable != o:
            out.append(f"{lab}: criterion {v2.dualizable} but oracle {o}")
        if va.dualizable != v2.dualizable:
            out.append(f"{lab}: projection formula at all w disagrees with the two-object test")
        if v2.dualizable and (v2.witness is None or not verify_triangle(v2.witness)):
            out.append(f"{lab}: constructed dual fails the triangle identities")
        if L.phi.is_strict and strict_shortcut(L, x) != o:
            out.append(f"{lab}: strict shortcut disagrees with the oracle")
        if v2.witness is not None:
            for w in ws:
                for u in range(L.U.n_objects):
                    if not genzd_projection_check(L, v2.witness, w, u):
                        out.append(f"{lab}: projection composite for word {w!r} at {L.U.object_label(u)} not invertible")
        return out

    for part in ctx.pmap(one, range(L.n_objects)):
        failures.extend(part)
    return failures


def _check_strat(ctx: Context, L: StratLaxLimit) -> list[str]:
    s = L.strat
    failures = [str(r) for r in [validate_stratification(s)] if not r.ok]

    def one(x: int) -> list[str]:
        out = []
        v = linkwise_criterion(s, x, L)
        o = is_right_dualizable(L, x)
        if v.dualizable != o:
            out.append(f"{L.object_label(x)}: linkwise {v.dualizable} but oracle {o}")
        return out

    for part in ctx.pmap(one, range(L.n_objects)):
        failures.extend(part)
    if s.poset.is_chain and len(s.poset) >= 2:
        failures.extend(_peel_failures(L))
        for x in range(L.n_objects):
            r = chain_presentation_check(s, L, x)
            if not r.ok:
                failures.append(f"{L.object_label(x)}: {r}")
    return failures


def _peel_failures(L: StratLaxLimit) -> list[str]:
    res = peel_first(L.strat, L)
    out = [] if res.report.ok else [str(res.report)]
    T = res.target
    for x in range(L.n_objects):
        if is_right_dualizable(L, x) != is_right_dualizable(T, res.iso.obj_map[x]):
            out.append(f"peel isomorphism does not preserve dualizability at {L.object_label(x)}")
    return out


def cmd_check(ctx: Context) -> int:
    if ctx.schema == FINCAT:
        return cmd_validate(ctx)
    c = ctx.ambient()
    if isinstance(c, LaxLimitCategory):
        failures = _check_laxlimit(ctx, c)
    elif isinstance(c, StratLaxLimit):
        failures = _check_strat(ctx, c)
    else:
        rep = validate_smc(c)
        failures = [] if rep.ok else [str(rep)]
    ctx.report.update(n_objects=c.n_objects, failures=failures, ok=not failures)
    ctx.summary = f"{c.n_objects} objects checked, {len(failures)} failure(s)"
    return FAIL if failures else OK


def cmd_laxlimit(ctx: Context) -> int:
    if ctx.schema not in (LAXLIMIT, STRAT):
        raise UsageError("laxlimit needs a laxlimit-instance or stratification input")
    c = ctx.ambient()
    ctx.report["limit"] = dump_smc(c)
    ctx.report["ok"] = True
    ctx.summary = f"lax limit with {c.n_objects} objects and {c.n_morphisms} morphisms"
    return OK


def cmd_links(ctx: Context) -> int:
    if ctx.schema != STRAT:
        raise UsageError("links needs a stratification input")
    L = ctx.ambient()
    s = L.strat
    E = s.poset.elements
    links = {}
    for p, q in s.poset.strict_pairs:
        T = L.link_limit(p, q)
        duals = [T.object_label(t) for t in range(T.n_objects) if criterion_dualizable(T, t).dualizable]
        links[f"{E[p]}<{E[q]}"] = {"n_objects": T.n_objects, "dualizable": duals}
    verdicts = ctx.pmap(lambda x: linkwise_criterion(s, x, L).to_dict(L), range(L.n_objects))
    ctx.report.update(links=links, objects=verdicts, ok=True)
    ctx.summary = f"{len(links)} link(s); {sum(v['dualizable'] for v in verdicts)}/{L.n_objects} objects dualizable"
    return OK


def cmd_peel(ctx: Context) -> int:
    if ctx.schema != STRAT:
        raise UsageError("peel needs a stratification input")
    L = ctx.ambient()
    try:
        res = peel_first(L.strat, L)
    except NotAChain as exc:
        ctx.report.update(ok=False, stage="NotAChain", diagnostics=[str(exc)])
        ctx.summary = f"not a chain: {exc}"
        return FAIL
    failures = _peel_failures(L)
    T = res.target
    ctx.report.update(
        ok=not failures,
        failures=failures,
        source_objects=L.n_objects,
        target_objects=T.n_objects,
        bijective=res.iso.is_bijective(),
        object_map={L.object_label(x): T.object_label(res.iso.obj_map[x]) for x in range(L.n_objects)},
        phi={"name": res.phi.name, "strict": res.phi.is_strict},
    )
    ctx.summary = f"peel isomorphism on {L.n_objects} objects: {'ok' if not failures else 'FAILED'}"
    return FAIL if failures else OK


def _datum(ctx: Context, c: SymMonCategory) -> DualityDatum:
    fields = {}
    for part in ctx.args.datum.split(","):
        if "=" not in part:
            raise UsageError(f"datum field {part!r} is not key=value")
        k, v = part.split("=", 1)
        fields[k.strip()] = v.strip()
    if "x" not in fields or set(fields) - {"x", "dual", "ev", "coev"}:
        raise UsageError("datum takes x=..., optionally with dual=, ev=, coev=")
    x = resolve(c, fields["x"])
    if len(fields) == 1:
        d = first_right_dual(c, x)
        if d is None:
            raise NotDualizable(f"{c.object_label(x)} has no dual")
        return d
    if set(fields) != {"x", "dual", "ev", "coev"}:
        raise UsageError("give either x alone or all of x, dual, ev, coev")
    return DualityDatum(c, x, resolve(c, fields["dual"]), resolve(c, fields["ev"], "morphism"), resolve(c, fields["coev"], "morphism"))


def cmd_bord(ctx: Context) -> int:
    c = ctx.ambient()
    try:
        d = _datum(ctx, c)
        triangles = verify_triangle(d)
    except (NotDualizable, TypeMismatch) as exc:
        ctx.report.update(ok=False, stage=type(exc).__name__, diagnostics=[str(exc)])
        ctx.summary = str(exc)
        return FAIL
    if not triangles:
        ctx.report.update(ok=False, stage="TriangleFailure", datum=datum_to_dict(d))
        ctx.summary = "duality datum fails the triangle identities"
        return FAIL
    if ctx.args.bordism == "random":
        b = random_bordism(random.Random(ctx.args.seed))
    else:
        try:
            b = parse_bordism(ctx.args.bordism)
        except MalformedTable as exc:
            raise UsageError(f"bordism literal: {exc}") from exc
    m = eval_bordism(d, b, "A")
    other = eval_bordism(d, b, "B")
    cb = c.base
    ctx.report.update(
        ok=m == other,
        datum=datum_to_dict(d),
        bordism=format_bordism(b),
        morphism=c.morphism_label(m),
        source=c.object_label(cb.src[m]),
        target=c.object_label(cb.tgt[m]),
        factorizations_agree=m == other,
    )
    ctx.summary = f"{format_bordism(b)} evaluates to {c.morphism_label(m)}"
    return OK if m == other else FAIL


def cmd_roundtrip(ctx: Context) -> int:
    if ctx.schema != LAXLIMIT:
        raise UsageError("roundtrip needs a laxlimit-instance input")
    L = ctx.ambient()
    bound = ctx.args.bound
    targets = [resolve(L, ctx.args.object)] if ctx.args.object is not None else list(range(L.n_objects))

    def one(x: int) -> dict:
        row: dict[str, Any] = {"object": L.object_label(x)}
        try:
            data = classify_dualizable(L, x, bound)
        except LaxDualError as exc:
            row.update(dualizable=False, stage=type(exc).__name__, diagnostics=[str(exc)])
            return row
        row["dualizable"] = True
        try:
            verify_round_trip(L, x, bound, data)
        except LaxDualError as exc:
            row.update(round_trip=False, stage=type(exc).__name__, diagnostics=[str(exc)])
            return row
        row["round_trip"] = True
        return row

    rows = ctx.pmap(one, targets)
    if ctx.args.object is not None:
        ok = rows[0].get("round_trip", False)
    else:
        # over all objects: dualizable ones must round-trip, the rest must be rejected as not dualizable
        ok = all(r.get("round_trip", False) if r["dualizable"] else r["stage"] == "NotDualizable" for r in rows)
        for r in rows:
            r["oracle"] = is_right_dualizable(L, resolve(L, r["object"]))
        ok = ok and all(r["oracle"] == r["dualizable"] for r in rows)
    ctx.report.update(bound=bound, objects=rows, ok=ok)
    ctx.summary = f"round trip at bound {bound}: {'ok' if ok else 'FAILED'} on {len(rows)} object(s)"
    return OK if ok else FAIL


COMMANDS = {
    "validate": cmd_validate,
    "dualizables": cmd_dualizables,
    "check": cmd_check,
    "laxlimit": cmd_laxlimit,
    "links": cmd_links,
    "peel": cmd_peel,
    "bord": cmd_bord,
    "roundtrip": cmd_roundtrip,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker threads for per-object checks")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    common.add_argument("--max-objects", type=int, default=None, help="size guard on constructed categories")
    parser = argparse.ArgumentParser(prog="laxdual", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("validate", parents=[common], help="check the axioms of a JSON instance")
    p.add_argument("path")
    p = sub.add_parser("dualizables", parents=[common], help="list dualizable objects")
    p.add_argument("path")
    p.add_argument("--method", choices=["criterion", "oracle", "both"], default="both")
    p = sub.add_parser("check", parents=[common], help="run every criterion against the oracle")
    p.add_argument("path")
    p.add_argument("--bound", type=int, default=4, help="longest signed word for projection composites")
    p = sub.add_parser("laxlimit", parents=[common], help="emit the lax limit as smc/v1")
    p.add_argument("path")
    p = sub.add_parser("links", parents=[common], help="per-link lax limits of a stratification")
    p.add_argument("path")
    p = sub.add_parser("peel", parents=[common], help="peel the first stratum off a chain")
    p.add_argument("path")
    p = sub.add_parser("bord", parents=[common], help="bordism evaluation")
    bsub = p.add_subparsers(dest="bord_command", required=True)
    e = bsub.add_parser("eval", parents=[common], help="evaluate a bordism at a duality datum")
    e.add_argument("path")
    e.add_argument("--datum", required=True, help="x=LABEL or x=..,dual=..,ev=..,coev=.. (labels or #id)")
    e.add_argument("--bordism", required=True, help="literal such as 'src=+-;tgt=;arcs=(s1:s2)' or 'random'")
    p = sub.add_parser("roundtrip", parents=[common], help="stratified bordism round trip")
    p.add_argument("path")
    p.add_argument("--object", default=None, help="object label or #id; all objects when omitted")
    p.add_argument("--bound", type=int, default=4)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return PARSE if exc.code else OK
    start = time.perf_counter()
    try:
        with size_limits(max_objects=args.max_objects):
            try:
                ctx = Context(args)
            except (SchemaError, MalformedTable, OSError, UnicodeDecodeError) as exc:
                print(json.dumps({"command": args.command, "ok": False, "stage": "parse", "error": str(exc)}, sort_keys=True))
                print(f"laxdual {args.command}: cannot read input: {exc}", file=sys.stderr)
                return PARSE
            try:
                code = COMMANDS[args.command](ctx)
            except UsageError as exc:
                ctx.report.update(ok=False, stage="usage", error=str(exc))
                ctx.summary = str(exc)
                code = PARSE
            except SizeLimit:
                raise
            except LaxDualError as exc:
                ctx.report.update(ok=False, stage=type(exc).__name__, error=str(exc))
                ctx.summary = f"{type(exc).__name__}: {exc}"
                code = FAIL
    except SizeLimit as exc:
        print(json.dumps({"command": args.command, "ok": False, "stage": "SizeLimit", "error": str(exc)}, sort_keys=True))
        print(f"laxdual {args.command}: size limit: {exc}", file=sys.stderr)
        return SIZE
    print(json.dumps(ctx.report, sort_keys=True, indent=1, ensure_ascii=False))
    print(f"laxdual {ctx.report['command']}: {ctx.summary} [{time.perf_counter() - start:.3f} s]", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

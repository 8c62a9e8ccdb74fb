"""Acceptance criteria 1-9, each exact.  Every test prints one PASS/FAIL line,
and the lines are repeated in the terminal summary."""
import random
import time

import pytest

from laxdual.bordism import functoriality_failures, identity_bordism, words, zorro_minus, zorro_plus
from laxdual.corpus import handcrafted_instances, posetal_instances, strat_instances
from laxdual.duality import first_right_dual, is_right_dualizable, verify_triangle
from laxdual.errors import NotDualizable
from laxdual.laxlim import criterion_dualizable, genzd_projection_check, strict_shortcut
from laxdual.strat import chain_poset, linkwise_criterion, peel_first, strat_lax_limit, subdivision
from laxdual.stratbord import classify_dualizable, verify_round_trip

pytestmark = pytest.mark.acceptance

_TIMES = {}


@pytest.fixture(scope="module")
def corpus():
    return posetal_instances() + handcrafted_instances()


@pytest.fixture(scope="module")
def verdicts(corpus):
    """Per instance: list of (oracle, two-object verdict, all-w verdict)."""
    t0 = time.perf_counter()
    out = []
    for inst in corpus:
        L = inst.L
        rows = []
        for x in range(L.n_objects):
            rows.append(
                (
                    is_right_dualizable(L, x),
                    criterion_dualizable(L, x),
                    criterion_dualizable(L, x, mode="at_all_w"),
                )
            )
        out.append(rows)
    _TIMES["verdicts"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="module")
def strats():
    return strat_instances()


def test_criterion_1_lax_limit_equivalence(corpus, verdicts, record):
    bad = []
    objects = 0
    for inst, rows in zip(corpus, verdicts):
        for x, (oracle, two, allw) in enumerate(rows):
            objects += 1
            if not (oracle == two.dualizable == allw.dualizable):
                bad.append((inst.name, x))
    hand = sum(1 for i in corpus if not i.phi.domain.base.is_posetal or not i.phi.codomain.base.is_posetal)
    ok = not bad and len(corpus) >= 200 and hand >= 10
    record(
        1,
        ok,
        f"{len(corpus)} instances ({hand} non-thin), {objects} objects, {len(bad)} disagreements "
        f"[{_TIMES['verdicts']:.1f} s]",
    )
    assert ok, bad[:5]


def test_criterion_2_witnesses_pass_triangles(corpus, verdicts, record):
    n = 0
    bad = []
    for inst, rows in zip(corpus, verdicts):
        for x, (_, two, _) in enumerate(rows):
            if two.dualizable:
                n += 1
                if two.witness is None or not verify_triangle(two.witness) or two.witness.x != x:
                    bad.append((inst.name, x))
    record(2, not bad, f"{n} constructed duals, {len(bad)} triangle failures")
    assert not bad, bad[:5]


def test_criterion_3_strict_shortcut(corpus, verdicts, record):
    n_inst = n_obj = 0
    bad = []
    for inst, rows in zip(corpus, verdicts):
        if not inst.phi.is_strict:
            continue
        n_inst += 1
        for x, (oracle, _, _) in enumerate(rows):
            n_obj += 1
            if strict_shortcut(inst.L, x) != oracle:
                bad.append((inst.name, x))
    ok = not bad and n_inst > 0
    record(3, ok, f"{n_inst} strict instances, {n_obj} objects, {len(bad)} disagreements")
    assert ok, bad[:5]


def test_criterion_4_linkwise_equivalence(strats, record):
    t0 = time.perf_counter()
    bad = []
    objects = 0
    shapes = set()
    for inst in strats:
        s = inst.strat
        shapes.add(s.poset.name)
        L = strat_lax_limit(s)
        for x in range(L.n_objects):
            objects += 1
            v = linkwise_criterion(s, x, L)
            witness_ok = not v.dualizable or (v.witness is not None and verify_triangle(v.witness))
            if v.dualizable != is_right_dualizable(L, x) or not witness_ok:
                bad.append((inst.name, x))
    theta = sum(1 for i in strats if i.strat.has_nontrivial_theta)
    ok = not bad and len(strats) >= 50 and theta >= 10
    record(
        4,
        ok,
        f"{len(strats)} stratifications over {sorted(shapes)} ({theta} with non-identity θ), "
        f"{objects} objects, {len(bad)} disagreements [{time.perf_counter() - t0:.1f} s]",
    )
    assert ok, bad[:5]


def test_criterion_5_peel_first(strats, record):
    n = 0
    bad = []
    for inst in strats:
        s = inst.strat
        if not s.poset.is_chain:
            continue
        n += 1
        res = peel_first(s)
        L, T, iso = res.source, res.target, res.iso
        same = {x for x in range(L.n_objects) if is_right_dualizable(L, x)} == {
            iso.obj_map[x] for x in range(L.n_objects) if is_right_dualizable(T, iso.obj_map[x])
        } and all(
            is_right_dualizable(L, x) == criterion_dualizable(T, iso.obj_map[x]).dualizable for x in range(L.n_objects)
        )
        if not (res.report.ok and iso.is_bijective() and same):
            bad.append(inst.name)
    ok = not bad and n > 0
    record(5, ok, f"{n} chain stratifications peeled, {len(bad)} failures")
    assert ok, bad


def test_criterion_6_generalized_projection_formula(corpus, verdicts, record):
    t0 = time.perf_counter()
    ws = words(4)
    checks = 0
    bad = []
    for inst, rows in zip(corpus, verdicts):
        L = inst.L
        for x, (_, two, _) in enumerate(rows):
            if not two.dualizable:
                continue
            for w in ws:
                for u in range(L.U.n_objects):
                    checks += 1
                    if not genzd_projection_check(L, two.witness, w, u):
                        bad.append((inst.name, x, w, u))
    record(6, not bad, f"{checks} composites (words up to length 4, every w), {len(bad)} not invertible [{time.perf_counter() - t0:.1f} s]")
    assert not bad, bad[:5]


def _all_data(corpus, verdicts):
    seen = set()
    for inst, rows in zip(corpus, verdicts):
        L = inst.L
        for c in (L.U, L.Z):
            for y in range(c.n_objects):
                d = first_right_dual(c, y)
                if d is not None and (id(c), d.key()) not in seen:
                    seen.add((id(c), d.key()))
                    yield d
        for _, two, _ in rows:
            if two.witness is not None:
                yield two.witness


def test_criterion_7_bordism_functoriality(corpus, verdicts, record):
    t0 = time.perf_counter()
    rng = random.Random(0)
    data = 0
    bad = []
    for d in _all_data(corpus, verdicts):
        data += 1
        bad.extend(functoriality_failures(d, rng, trials=1, max_points=8, max_circles=3))
    bordisms = 4 * data
    ok = not bad and bordisms >= 10_000
    record(
        7,
        ok,
        f"{data} duality data, {bordisms} random bordisms (up to 8 strands, 3 circles), "
        f"{len(bad)} failures [{time.perf_counter() - t0:.1f} s]",
    )
    assert ok, bad[:5]


def test_criterion_8_stratified_round_trip(corpus, verdicts, record):
    t0 = time.perf_counter()
    good = 0
    bad = []
    for inst, rows in zip(corpus, verdicts):
        L = inst.L
        for x, (oracle, _, _) in enumerate(rows):
            if oracle:
                try:
                    data = classify_dualizable(L, x, bound=4)
                    fin_ok = L.base.isomorphic(data.fin_component, L.j_lower_star(L.U.unit))
                    cells_ok = all(L.Z.base.is_iso(c) for c in data.square_cells.values())
                    if fin_ok and cells_ok and verify_round_trip(L, x, bound=4, data=data):
                        good += 1
                    else:
                        bad.append((inst.name, x))
                except Exception as exc:
                    bad.append((inst.name, x, type(exc).__name__))
            else:
                try:
                    classify_dualizable(L, x, bound=4)
                    bad.append((inst.name, x, "classified a non-dualizable object"))
                except NotDualizable:
                    pass
    record(8, not bad, f"{good} round trips at bound 4, {len(bad)} failures [{time.perf_counter() - t0:.1f} s]")
    assert not bad, bad[:5]


def test_criterion_9_combinatorics(record):
    sizes = [len(subdivision(chain_poset(n))) for n in range(7)]
    sd_ok = sizes == [2 ** (n + 1) - 1 for n in range(7)]
    zorro_ok = zorro_plus() == identity_bordism("+") and zorro_minus() == identity_bordism("-")
    ok = sd_ok and zorro_ok
    record(9, ok, f"|sd([n])| for n=0..6 = {sizes}, Zorro identities {'hold' if zorro_ok else 'fail'}")
    assert ok

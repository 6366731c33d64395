"""Acceptance criteria, one test each, each printing a single PASS/FAIL line.

Expected quantities come from ``oracles`` (enumeration, closed formulas) and
never from the package itself.
"""
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from oracles import (conjugacy_classes, cyclic_group_classes, cyclic_monotone_maps, increasing_injections,
                     linear_maps_count, partial_injections, set_map_count)
from reedy_lab.battery import BatteryConfig, battery, random_module
from reedy_lab.bifib import (adjunction_check, cartesian_check, cocartesian_check, cotorsion_glue_check,
                             fiber_decode, fiber_encode, hovey_glue_check, injective_coincidence, level,
                             projective_coincidence, pullback_star, pushforward, rebase)
from reedy_lab.classes import ALL_MODULES, PROJECTIVES, all_inj, proj_all, uniform
from reedy_lab.cli import main
from reedy_lab.decomposition import (check_theorem_C, find_central_idempotent, morita_report,
                                     verify_orthogonal_projective_generators)
from reedy_lab.latching import latching_suite
from reedy_lab.linalg import Field
from reedy_lab.reps import hom_reps
from reedy_lab.spans import check_theorem_E, injections_eicat, span_category
from reedy_lab.standard import count_irreducibles, projectivity_failures, theorem_a_suite
from reedy_lab.zoo import zoo

SUITE = ([f"{kind}:{n}" for kind in ("fin_all", "fin_inj", "fin_surj", "simplex_inj") for n in range(4)]
         + [f"cyclic:{n}" for n in (1, 2, 3)] + ["vect_fq:2,2"])
BATTERY = 25
ELAPSED = {}


@pytest.fixture
def announce(capsys, request):
    start = time.perf_counter()

    def say(number: int, ok: bool, detail: str) -> None:
        ELAPSED[number] = time.perf_counter() - start
        with capsys.disabled():
            print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

    return say


def _size(obj: str) -> int:
    return int(obj.strip("[]F").split("^")[-1]) if "^" in obj else int(obj.strip("[]"))


def _morphism_count(spec: str, x: str, y: str) -> int:
    kind, _, params = spec.partition(":")
    m, n = _size(x), _size(y)
    if kind in ("fin_all", "fin_inj", "fin_surj"):
        return set_map_count(m, n, kind[4:])
    if kind == "simplex_inj":
        return increasing_injections(m + 1, n + 1)
    if kind == "cyclic":
        return cyclic_monotone_maps(m, n)
    if kind == "vect_fq":
        return linear_maps_count(int(params.split(",")[0]), n, m)
    raise KeyError(spec)


def test_criterion_01_reedy_axioms(announce):
    failures, slowest = [], 0.0
    for spec in SUITE:
        start = time.perf_counter()
        r = zoo(spec).reedy
        res = r.check()
        for x in r.objects:
            for y in r.objects:
                blocks = sum(b.dim for b in r.rho_blocks(x, y))
                want = _morphism_count(spec, x, y)
                if not blocks == r.cat.dim(x, y) == want:
                    failures.append((spec, x, y, blocks, want))
        took = time.perf_counter() - start
        slowest = max(slowest, took)
        if not res["pass"] or took >= 10:
            failures.append((spec, res["pass"], round(took, 2)))
    fin2 = zoo("fin_all:2").reedy
    example = [b.dim for b in fin2.rho_blocks("[2]", "[2]")]
    ok = not failures and example == [2, 2]
    announce(1, ok, f"{len(SUITE)} instances, blocks at fin_all(2) [2]->[2] = {example}, "
                    f"slowest {slowest:.2f}s, failures {failures[:3]}")
    assert ok


def test_criterion_02_factorization_round_trip(announce):
    checked, bad = 0, []
    for spec in SUITE:
        r = zoo(spec).reedy
        c = r.cat
        for x in c.objects:
            for y in c.objects:
                for i in range(c.dim(x, y)):
                    f = c.unit_vec(x, y, i)
                    checked += 1
                    if r.reedy_factorize(x, y, f).recompose(c) != f:
                        bad.append((spec, x, y, i))
    ok = not bad and checked > 0
    announce(2, ok, f"{checked} basis morphisms recomposed exactly, mismatches {bad[:3]}")
    assert ok


def test_criterion_03_standard_module_suite(announce):
    ran, skipped, bad = 0, [], []
    for spec in SUITE:
        r = zoo(spec).reedy
        for side, structure in (("standard", r), ("costandard", r.op())):
            if projectivity_failures(structure):
                skipped.append((spec, side))
                continue
            ran += 1
            suite = theorem_a_suite(structure)
            anti = all(e.anti_multiplicative and e.evaluation_bijective for e in suite.endomorphisms.values())
            if not (suite.passed and anti):
                bad.append((spec, side, suite.hom_violations[:2], suite.ext_violations[:2]))
    ok = not bad and ran > 0
    announce(3, ok, f"{ran} suites run ({len(skipped)} outside the hypotheses), violations {bad[:2]}")
    assert ok


def test_criterion_04_irreducible_counts(announce):
    total = count_irreducibles(zoo("fin_all:3").reedy).total
    want_total = sum(conjugacy_classes(n) for n in range(4))
    per = count_irreducibles(zoo("cyclic:3").reedy).per_object
    want_per = {f"[{n}]": cyclic_group_classes(n) for n in (1, 2, 3)}
    ok = total == want_total == 7 and per == want_per
    announce(4, ok, f"fin_all(3) total {total} (oracle {want_total}), cyclic(3) center dims {per} "
                    f"(oracle {want_per})")
    assert ok


def test_criterion_05_span_decomposition(announce):
    span_verdict = check_theorem_E(injections_eicat(2))
    down = span_verdict.downstream
    inst = zoo("span_inj:2")
    r = inst.reedy
    diag_dims = [down.end_dims[x][0] for x in r.sorted_objects()] if down else None
    gens = verify_orthogonal_projective_generators(r)
    mods = battery(r.cat, BatteryConfig(count=BATTERY, seed=0, max_dim=3))
    isos = sum(morita_report(r, M, gens).reconstruction_iso for M in mods)
    negative = check_theorem_E(injections_eicat(2), Field(2))
    S = span_category(injections_eicat(3))
    counts_bad = [(x, y) for (x, y), ms in S.homs.items()
                  if len(ms) != partial_injections(_size(x), _size(y))]
    ok = (span_verdict.passed and down.diagonal and diag_dims == [1, 1, 2] and gens.passed
          and isos == BATTERY and not negative.passed
          and negative.first_failure == "group_orders_invertible" and not counts_bad)
    announce(5, ok, f"verdict {span_verdict.passed}, diagonal dims {diag_dims}, morita {isos}/{BATTERY}, "
                    f"F2 fails at {negative.first_failure}, count mismatches {counts_bad}")
    assert ok


def test_criterion_06_central_idempotents(announce):
    r = zoo("span_inj:2").reedy
    found = {x: find_central_idempotent(r, x) for x in r.sorted_objects()}
    spans_ok = all(res is not None and res.standard_iso and res.corner_equals_ideal for res in found.values())
    verdict = check_theorem_C(r)
    rf = zoo("fin_inj:2").reedy
    zero = {}
    for x in rf.sorted_objects():
        res = find_central_idempotent(rf, x)
        zero[x] = res is not None and not any(res.e) and res.standard_iso
    ok = spans_ok and verdict.conditions["b_central_idempotents"] and all(zero.values())
    announce(6, ok, f"span_inj(2) idempotents with explicit isos {spans_ok}, fin_inj(2) e = 0 at {zero}")
    assert ok


def test_criterion_07_latching_matching(announce):
    rows, bad = 0, []
    for spec in SUITE:
        inst = zoo(spec)
        for k, Y in enumerate(battery(inst.cat, BatteryConfig(count=BATTERY, seed=0))):
            for row in latching_suite(inst.reedy, Y):
                rows += 1
                if not row.ok:
                    bad.append((spec, k, row.obj))
    ok = not bad and rows > 0
    announce(7, ok, f"{rows} object rows over {len(SUITE)} instances x {BATTERY} modules, failures {bad[:3]}")
    assert ok


def _bifibration_rounds(spec: str, rng: random.Random) -> dict:
    inst = zoo(spec)
    r = inst.reedy
    out = {"round_trips": 0, "round_trip_bad": 0, "cones": 0, "unique": 0, "adjunctions": 0, "adj_bad": 0}
    mods = [random_module(inst.cat, rng, max_dim=2, duals=True) for _ in range(BATTERY)]
    for Y in mods:
        for alpha in r.degrees():
            lv = level(r, alpha)
            Yt = rebase(Y, lv.top)
            back = fiber_decode(fiber_encode(lv, Yt))
            out["round_trips"] += 1
            out["round_trip_bad"] += not (back.dims == Yt.dims and all(back.act[k] == Yt.act[k] for k in Yt.act))
    lv = level(r, max(r.degrees()))
    tops = [rebase(M, lv.top) for M in mods]
    for k in range(20):
        Y, Z = tops[k % len(tops)], tops[(k + 1) % len(tops)]
        V, W = rebase(Y, lv.base), rebase(Z, lv.base)
        H = hom_reps(V, W)
        u = H.random(rng) if H.dim else V.zero_map_to(W)
        if k == 0:
            push = pushforward(lv, u, Y)
            co = cocartesian_check(lv, push, tops[2:6], rng, cones=20)
            pull = pullback_star(lv, u, Z)
            ca = cartesian_check(lv, pull, tops[2:6], rng, cones=20)
            out["cones"] += co.cones + ca.cones
            out["unique"] += co.unique + ca.unique
        out["adjunctions"] += 1
        out["adj_bad"] += not adjunction_check(lv, u, Y, Z).ok
    return out


def test_criterion_08_bifibration(announce):
    rng = random.Random(0)
    results = {spec: _bifibration_rounds(spec, rng) for spec in ("fin_all:2", "quiver")}
    ok = all(v["round_trip_bad"] == 0 and v["cones"] == 40 and v["unique"] == 40 and v["adjunctions"] == 20
             and v["adj_bad"] == 0 for v in results.values())
    announce(8, ok, f"{results}")
    assert ok


def test_criterion_09_cotorsion_and_hovey_gluing(announce):
    cfg = BatteryConfig(count=BATTERY, seed=0)
    summary, bad = {}, []
    ext_violations = 0
    for spec, pair, coincidence in (("quiver", proj_all, projective_coincidence),
                                    ("poset_chain:3", proj_all, projective_coincidence),
                                    ("quiver_rev", all_inj, injective_coincidence),
                                    ("fin_surj:2", all_inj, injective_coincidence)):
        inst = zoo(spec)
        r = inst.reedy
        assert r.is_direct() if pair is proj_all else r.is_inverse()
        mods = battery(inst.cat, cfg)
        glue = cotorsion_glue_check(r, pair(), mods, random.Random(0))
        co = coincidence(r, mods)
        ext_violations += glue.ext_violations
        summary[spec] = (glue.factorizations_valid, co.agreements, co.members)
        if not (glue.passed and co.passed):
            bad.append((spec, glue.problems[:2], co.disagreements[:3]))
    inst = zoo("dual_numbers_direct")
    mods = battery(inst.cat, cfg)
    h = hovey_glue_check(inst.reedy, uniform(ALL_MODULES), uniform(PROJECTIVES), uniform(ALL_MODULES),
                         proj_all(), all_inj(), mods, random.Random(0))
    ext_violations += h.trivially_cofibrant.ext_violations + h.trivially_fibrant.ext_violations
    nontrivial = 0 < h.w_members < len(mods)
    ok = not bad and h.passed and nontrivial and ext_violations == 0
    announce(9, ok, f"(valid sequences, coincidences, glued members) {summary}; hovey {h.passed} "
                    f"first failure {h.first_failure()}, W members {h.w_members}/{len(mods)}, "
                    f"Ext violations {ext_violations}, problems {bad[:2]}")
    assert ok


DETERMINISM_RUNS = [
    ["check-reedy", "--zoo", "fin_all:2"],
    ["standard-modules", "--zoo", "fin_surj:2"],
    ["decompose", "--zoo", "span_inj:2", "--criterion", "e"],
    ["latching", "--zoo", "cyclic:2", "--battery", "6", "--seed", "5"],
    ["glue", "--zoo", "quiver", "--battery", "6", "--seed", "5"],
    ["hovey", "--zoo", "dual_numbers_direct", "--battery", "6", "--seed", "5"],
]


def test_criterion_10_determinism_and_runtime(announce, capsys):
    differing = []
    for argv in DETERMINISM_RUNS:
        outputs = []
        for _ in range(2):
            main(argv + ["--format", "json", "--no-clock"])
            outputs.append(capsys.readouterr().out.encode())
        if outputs[0] != outputs[1] or not outputs[0]:
            differing.append(argv[0])
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           str(Path(__file__).parent), "--ignore", __file__],
                          capture_output=True, text=True)
    rest = time.perf_counter() - start
    total = rest + sum(v for k, v in ELAPSED.items() if k != 10)
    ok = not differing and proc.returncode == 0 and total < 300
    announce(10, ok, f"{len(DETERMINISM_RUNS)} commands byte-identical across runs (differing {differing}); "
                     f"remaining suite exit {proc.returncode}, full suite wall clock {total:.1f}s")
    assert ok

import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from reedy_lab.battery import BatteryConfig, battery, random_module
from reedy_lab.bifib import (adjunction_check, boundary, cartesian_check, cocartesian_check,
                             cocompatibility_failures, cotorsion_glue_check, fiber_decode,
                             fiber_encode, fiber_factor, fiber_hom_space, glue_factorization,
                             hovey_glue_check, injective_coincidence, level, lift_square,
                             projective_coincidence, pullback_star, pushforward, rebase)
from reedy_lab.classes import (ALL_MODULES, PROJECTIVES, ZERO_MODULES, ClassFamily, OracleMissing,
                               PairFamily, all_inj, proj_all, uniform)
from reedy_lab.homalg import find_iso, is_projective
from reedy_lab.linalg import Subspace
from reedy_lab.reps import hom_reps, quotient_rep, representable
from reedy_lab.specfile import load_spec_file
from reedy_lab.standard import HypothesisFailed
from reedy_lab.zoo import zoo

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def quiver():
    return zoo("quiver")


def _simple(cat, x):
    P = representable(cat, x)
    subs = {y: Subspace(cat.F, P.dims[y]) if y == x else Subspace.full(cat.F, P.dims[y]) for y in cat.objects}
    return quotient_rep(P, subs)[0]


def test_boundary_of_quiver_point(quiver):
    r = quiver.reedy
    lv = level(r, 1)
    assert lv.tops == ["b"]
    V = rebase(_simple(quiver.cat, "a"), lv.base)
    b = boundary(lv, V, "b")
    assert b.T.dim == 1
    assert b.H.dim == 0
    assert b.tau.shape == (0, 1)


def test_representable_value_is_local_algebra():
    r = zoo("fin_inj:2").reedy
    lv = level(r, 2)
    p = fiber_encode(lv, representable(r.cat, "[2]"))
    assert p.values["[2]"].dims["[2]"] == r.local_dim("[2]")
    assert p.mismatches() == []


def test_representable_latching_image_is_the_lower_ideal():
    r = zoo("fin_all:2").reedy
    lv = level(r, 2)
    p = fiber_encode(lv, representable(r.cat, "[2]"))
    assert p.values["[2]"].dims["[2]"] == r.cat.dim("[2]", "[2]")
    assert p.l["[2]"].rank() == r.ideal(2)[("[2]", "[2]")].dim == 2


@pytest.mark.parametrize("spec", ["quiver", "quiver_rev", "fin_all:2", "poset_chain:3", "span_inj:2"])
def test_encode_decode_round_trip(spec):
    inst = zoo(spec)
    r = inst.reedy
    rng = random.Random(7)
    for _ in range(4):
        Y = random_module(inst.cat, rng, max_dim=2, duals=True)
        for alpha in r.degrees():
            lv = level(r, alpha)
            Yt = rebase(Y, lv.top)
            back = fiber_decode(fiber_encode(lv, Yt))
            assert back.dims == Yt.dims
            assert all(back.act[k] == Yt.act[k] for k in Yt.act)


def test_identity_base_change_gives_identity_lift():
    inst = zoo("fin_all:2")
    r = inst.reedy
    lv = level(r, 2)
    Y = rebase(random_module(inst.cat, random.Random(1), max_dim=2, duals=True), lv.top)
    V = rebase(Y, lv.base)
    push = pushforward(lv, V.identity(), Y)
    assert push.lift.is_iso()
    assert push.point.same_as(fiber_encode(lv, Y))
    pull = pullback_star(lv, V.identity(), Y)
    assert pull.lift.is_iso()


def test_lifts_along_epi_and_mono_base_changes():
    inst = zoo("quiver")
    r = inst.reedy
    lv = level(r, 1)
    Y = rebase(representable(inst.cat, "a"), lv.top)
    V = rebase(Y, lv.base)
    # collapsing the base kills the value at b, which is latched from a
    Z0, collapse = quotient_rep(V, {w: Subspace.full(V.F, V.dims[w]) for w in lv.base.objects})
    push = pushforward(lv, collapse, Y)
    assert push.rep.dim_vector() == (0, 0)
    assert push.lift.is_epi()
    # along the mono 0 -> V nothing is matched at b, so the value survives
    pull = pullback_star(lv, Z0.zero_map_to(V), Y)
    assert pull.rep.dim_vector() == (0, 1)
    assert pull.lift.is_mono()


@pytest.mark.parametrize("spec,alpha", [("quiver", 1), ("fin_all:2", 2), ("quiver_rev", 1)])
def test_universal_properties_and_adjunction(spec, alpha):
    inst = zoo(spec)
    r = inst.reedy
    lv = level(r, alpha)
    rng = random.Random(3)
    Ys = [rebase(random_module(inst.cat, rng, max_dim=2, duals=True), lv.top) for _ in range(3)]
    Y, Z = Ys[0], Ys[1]
    V, W = rebase(Y, lv.base), rebase(Z, lv.base)
    H = hom_reps(V, W)
    u = H.random(rng) if H.dim else V.zero_map_to(W)
    push = pushforward(lv, u, Y)
    assert cocartesian_check(lv, push, [Z, Ys[2]], rng, cones=5).ok
    pull = pullback_star(lv, u, Z)
    assert cartesian_check(lv, pull, [Y, Ys[2]], rng, cones=5).ok
    adj = adjunction_check(lv, u, Y, Z)
    assert adj.ok
    assert adj.left_dim == adj.right_dim


def test_fiber_factorization_is_unique():
    inst = zoo("fin_all:2")
    r = inst.reedy
    lv = level(r, 2)
    rng = random.Random(5)
    Y = rebase(random_module(inst.cat, rng, max_dim=2, duals=True), lv.top)
    Z = rebase(random_module(inst.cat, rng, max_dim=2, duals=True), lv.top)
    f = hom_reps(Y, Z).random(rng)
    fac = fiber_factor(lv, f)
    assert fac.recomposes(f)
    assert fac.through_unique and fac.into_unique


def test_fiber_homs_form_an_affine_space():
    inst = zoo("quiver")
    lv = level(inst.reedy, 1)
    Y = rebase(representable(inst.cat, "a"), lv.top)
    part, hom = fiber_hom_space(Y, Y, lv)
    assert part is not None
    assert len(hom) == 0


def test_precover_of_top_simple_is_its_projective_cover(quiver):
    Sb = _simple(quiver.cat, "b")
    Sa = _simple(quiver.cat, "a")
    zero = quotient_rep(Sa, {"a": Subspace.full(Sa.F, 1), "b": Subspace(Sa.F, 0)})[0]
    g = glue_factorization(quiver.reedy, zero.zero_map_to(Sb), proj_all())
    assert g.oracle_ok
    assert g.right.is_epi()
    assert is_projective(g.middle)
    assert g.middle.dim_vector() == (0, 1)
    assert find_iso(g.middle, representable(quiver.cat, "b")) is not None


def test_precover_of_bottom_simple(quiver):
    Sa = _simple(quiver.cat, "a")
    zero = quotient_rep(Sa, {"a": Subspace.full(Sa.F, 1), "b": Subspace(Sa.F, 0)})[0]
    g = glue_factorization(quiver.reedy, zero.zero_map_to(Sa), proj_all())
    assert g.right.is_epi() and is_projective(g.middle)
    assert g.middle.dim_vector() == (1, 1)


def test_missing_oracle_is_reported(quiver):
    pair = PairFamily(uniform(PROJECTIVES), uniform(ALL_MODULES), None)
    M = representable(quiver.cat, "a")
    with pytest.raises(OracleMissing):
        glue_factorization(quiver.reedy, M.identity(), pair)


def test_projectivity_hypothesis_is_enforced():
    r = load_spec_file(str(DATA / "truncated_arrow.json")).reedy
    M = representable(r.cat, "a")
    with pytest.raises(HypothesisFailed):
        glue_factorization(r, M.identity(), proj_all())


def test_lifting_square_with_projective(quiver):
    cat = quiver.cat
    Pa = representable(cat, "a")
    Sa = _simple(cat, "a")
    zero = quotient_rep(Sa, {"a": Subspace.full(Sa.F, 1), "b": Subspace(Sa.F, 0)})[0]
    i = zero.zero_map_to(Pa)
    p = quotient_rep(Pa, {"a": Subspace(Pa.F, 1), "b": Subspace.full(Pa.F, 1)})[1]
    b = p
    a = zero.zero_map_to(Pa)
    h = lift_square(i, p, a, b)
    assert h is not None
    assert (p @ h) == b


@pytest.mark.parametrize("spec,pair", [("quiver", proj_all), ("poset_chain:3", proj_all),
                                       ("quiver_rev", all_inj), ("fin_all:2", proj_all)])
def test_cotorsion_gluing_on_small_battery(spec, pair):
    inst = zoo(spec)
    mods = battery(inst.cat, BatteryConfig(count=5, seed=11))
    rep = cotorsion_glue_check(inst.reedy, pair(), mods, random.Random(0), lifting=4)
    assert rep.passed, rep.problems
    assert rep.routes_agree == rep.factorizations


def test_projective_and_injective_coincidence():
    inst = zoo("fin_all:2")
    mods = battery(inst.cat, BatteryConfig(count=8, seed=2))
    assert projective_coincidence(inst.reedy, mods).passed
    assert injective_coincidence(inst.reedy, mods).passed


def test_cocompatibility_negative_control(quiver):
    fam = ClassFamily(ALL_MODULES, {"b": ZERO_MODULES}, "zero-at-b")
    bad = cocompatibility_failures(quiver.reedy, fam, random.Random(0))
    assert bad
    assert (bad[0].source, bad[0].target) == ("a", "b")
    assert cocompatibility_failures(quiver.reedy, uniform(ALL_MODULES), random.Random(0)) == []


def test_hovey_gluing_on_dual_numbers():
    inst = zoo("dual_numbers_direct")
    mods = battery(inst.cat, BatteryConfig(count=6, seed=0))
    h = hovey_glue_check(inst.reedy, uniform(ALL_MODULES), uniform(PROJECTIVES), uniform(ALL_MODULES),
                         proj_all(), all_inj(), mods, random.Random(0), sequences=5)
    assert h.passed, h.first_failure()
    assert h.w_members > 0


def test_hovey_negative_control_reports_cocompatibility():
    inst = zoo("quiver")
    mods = battery(inst.cat, BatteryConfig(count=4, seed=0))
    W = ClassFamily(ALL_MODULES, {"b": ZERO_MODULES}, "zero-at-b")
    h = hovey_glue_check(inst.reedy, uniform(ALL_MODULES), W, uniform(ALL_MODULES),
                         proj_all(), all_inj(), mods, random.Random(0), sequences=3)
    assert not h.passed
    assert h.first_failure() == "cocompatibility"


@settings(max_examples=10)
@given(st.sampled_from(["quiver", "fin_all:2", "cyclic:2", "dual_numbers_direct"]), st.integers(0, 10_000))
def test_round_trip_property(spec, seed):
    inst = zoo(spec)
    r = inst.reedy
    Y = random_module(inst.cat, random.Random(seed), max_dim=2, duals=True)
    for alpha in r.degrees():
        lv = level(r, alpha)
        Yt = rebase(Y, lv.top)
        p = fiber_encode(lv, Yt)
        assert p.mismatches() == []
        assert fiber_decode(p).act == Yt.act

"""Randomized invariants over seeded battery modules."""
import random

from hypothesis import given, settings, strategies as st

from reedy_lab.battery import random_module
from reedy_lab.latching import latching_matching, latching_suite, phi_psi_membership
from reedy_lab.classes import INJECTIVES, PROJECTIVES, uniform
from reedy_lab.homalg import is_injective, is_projective
from reedy_lab.linalg import Field
from reedy_lab.reps import RIGHT, hom_reps, representable, tensor
from reedy_lab.zoo import zoo

SMALL = ["quiver", "quiver_rev", "fin_all:2", "fin_surj:2", "cyclic:2", "dual_numbers_direct",
         "poset_chain:3", "span_inj:2"]
seeds = st.integers(0, 100_000)


def _module(spec, seed, field=None):
    inst = zoo(spec, field) if field else zoo(spec)
    return inst, random_module(inst.cat, random.Random(seed), max_dim=2, duals=True)


@given(st.sampled_from(SMALL), seeds)
def test_battery_modules_are_functors(spec, seed):
    _, M = _module(spec, seed)
    assert M.check() == []
    assert all(d <= 2 for d in M.dims.values())


@settings(max_examples=12)
@given(st.sampled_from(SMALL), seeds)
def test_latching_suite_invariants(spec, seed):
    inst, Y = _module(spec, seed)
    for row in latching_suite(inst.reedy, Y):
        assert row.ok, row


@given(st.sampled_from(SMALL), seeds)
def test_latching_factors_the_boundary_map(spec, seed):
    inst, Y = _module(spec, seed)
    r = inst.reedy
    for x in r.objects:
        ld = latching_matching(r, Y, x)
        assert ld.l.rows == Y.dims[x] == ld.m.cols
        assert ld.l_linear and ld.m_linear


@given(st.sampled_from(["quiver", "poset_chain:3", "fin_inj:2"]), seeds)
def test_glued_projectives_on_direct_categories(spec, seed):
    inst, Y = _module(spec, seed)
    left = phi_psi_membership(inst.reedy, Y, uniform(PROJECTIVES), None, need_left=True, need_right=False)
    assert left.routes_agree
    assert left.left == is_projective(Y)


@given(st.sampled_from(["quiver_rev", "fin_surj:2"]), seeds)
def test_glued_injectives_on_inverse_categories(spec, seed):
    inst, Y = _module(spec, seed)
    right = phi_psi_membership(inst.reedy, Y, uniform(INJECTIVES), None, need_left=False, need_right=True)
    assert right.routes_agree
    assert right.right == is_injective(Y)


@given(st.sampled_from(SMALL), seeds, seeds)
def test_hom_elements_are_natural(spec, s1, s2):
    inst, M = _module(spec, s1)
    N = random_module(inst.cat, random.Random(s2), max_dim=2, duals=True)
    H = hom_reps(M, N)
    h = H.random(random.Random(s1 ^ s2))
    assert h.check() == []
    assert H.contains(h)
    assert H.coordinates(H.combination(H.coordinates(h))) == H.coordinates(h)


@given(st.sampled_from(SMALL), seeds)
def test_double_dual_is_isomorphic(spec, seed):
    _, M = _module(spec, seed)
    DD = M.dual().dual()
    assert DD.dims == M.dims
    assert DD.act == M.act


@given(st.sampled_from(SMALL), seeds)
def test_tensor_with_representable_is_evaluation(spec, seed):
    inst, M = _module(spec, seed)
    for x in inst.cat.objects:
        assert tensor(representable(inst.cat, x, RIGHT), M).dim == M.dims[x]


@settings(max_examples=15)
@given(st.sampled_from(["fin_all:2", "cyclic:2", "quiver"]), st.sampled_from([2, 3]), seeds)
def test_prime_field_latching_invariants(spec, p, seed):
    inst, Y = _module(spec, seed, Field(p))
    for row in latching_suite(inst.reedy, Y):
        assert row.ok, row


@given(st.sampled_from(SMALL), seeds)
def test_hom_dimension_is_dual_symmetric(spec, seed):
    inst, M = _module(spec, seed)
    N = random_module(inst.cat, random.Random(seed + 1), max_dim=2, duals=True)
    assert hom_reps(M, N).dim == hom_reps(N.dual(), M.dual()).dim

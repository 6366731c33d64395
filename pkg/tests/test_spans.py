import pytest
from hypothesis import given, strategies as st

from oracles import partial_injections, partial_injections_enumerated
from reedy_lab.linalg import QQ, Field
from reedy_lab.spans import (all_maps_eicat, brute_force_partial_injections, chain_eicat,
                             check_theorem_E, injections_eicat, partial_injection_count,
                             span_category)
from reedy_lab.zoo import zoo


@given(st.integers(0, 3), st.integers(0, 3))
def test_partial_injection_count_matches_oracles(m, n):
    assert partial_injection_count(m, n) == partial_injections(m, n) == partial_injections_enumerated(m, n)
    assert brute_force_partial_injections(m, n) == partial_injections(m, n)


def test_span_hom_sets_are_partial_injections():
    S = span_category(injections_eicat(3))
    for x in S.objects:
        for y in S.objects:
            assert len(S.hom(x, y)) == partial_injections(int(x[1:-1]), int(y[1:-1]))
    assert len(S.hom("[1]", "[1]")) == 2
    assert len(S.hom("[2]", "[2]")) == 7


def test_span_category_axioms():
    S = span_category(injections_eicat(2))
    assert S.check_axioms() == []
    assert zoo("span_inj:2").reedy.check()["pass"]


def test_injections_over_rationals_split():
    v = check_theorem_E(injections_eicat(2), QQ)
    assert all(v.conditions.values())
    assert v.downstream is not None and v.downstream.passed
    assert v.passed
    assert v.group_orders == {"[0]": 1, "[1]": 1, "[2]": 2}


def test_injections_in_characteristic_two_fail_group_orders():
    v = check_theorem_E(injections_eicat(2), Field(2))
    assert not v.passed
    assert v.first_failure == "group_orders_invertible"
    assert v.witnesses["group_orders_invertible"] == ["[2]"]


def test_all_maps_fail_several_conditions():
    v = check_theorem_E(all_maps_eicat(2), QQ)
    assert not v.conditions["all_monomorphisms"]
    assert not v.conditions["artinian_ei"]
    assert not v.conditions["pullbacks"]
    assert v.downstream is None


def test_chain_with_meets_over_f3():
    v = check_theorem_E(chain_eicat(3), Field(3))
    assert v.passed
    inst = zoo("poset_chain_meets:3", Field(3))
    assert inst.reedy.check()["pass"]
    # spans in a chain: one per lower bound of both ends
    assert inst.cat.dim("p2", "p2") == 3
    assert inst.cat.dim("p0", "p2") == 1


@pytest.mark.parametrize("N", [1, 2])
def test_spans_are_self_dual(N):
    inst = zoo(f"span_inj:{N}")
    for x in inst.cat.objects:
        for y in inst.cat.objects:
            assert inst.cat.dim(x, y) == inst.cat.dim(y, x)
            assert inst.reedy.plus[(x, y)].dim == inst.reedy.minus[(y, x)].dim

from pathlib import Path

import pytest

from oracles import conjugacy_classes, rational_simple_count_cyclic
from reedy_lab.linalg import Field
from reedy_lab.specfile import load_spec_file
from reedy_lab.standard import (HypothesisFailed, NotSemisimpleUnsupported, count_irreducibles,
                                endomorphism_check, filtration_of_representable,
                                induced_description_check, projectivity_failures, theorem_a_suite,
                                verify_idempotents)
from reedy_lab.zoo import zoo

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("spec", ["fin_all:2", "fin_inj:3", "fin_surj:3", "cyclic:3", "vect_fq:2,2",
                                  "quiver", "quiver_rev", "dual_numbers_direct", "span_inj:2"])
def test_standard_modules_are_exceptional(spec):
    suite = theorem_a_suite(zoo(spec).reedy)
    assert suite.passed, (suite.hom_violations, suite.ext_violations)


def test_standard_endomorphisms_are_the_opposite_local_algebra():
    r = zoo("fin_all:3").reedy
    for x in r.objects:
        chk = endomorphism_check(r, x)
        assert chk.ok
        assert chk.end_dim == r.local_dim(x)


def test_hom_table_for_two_element_sets():
    suite = theorem_a_suite(zoo("fin_all:2").reedy)
    assert suite.hom_table[("[2]", "[2]")] == 2
    assert suite.hom_table[("[2]", "[1]")] == 1
    assert suite.hom_table[("[1]", "[2]")] == 0
    assert all(v == 0 for v in suite.ext_table.values())


@pytest.mark.parametrize("N", [1, 2, 3])
def test_irreducible_count_matches_conjugacy_classes(N):
    count = count_irreducibles(zoo(f"fin_all:{N}").reedy)
    assert count.total == sum(conjugacy_classes(n) for n in range(N + 1))
    assert count.total_simple == count.total


def test_irreducible_count_on_three_element_sets_is_seven():
    assert count_irreducibles(zoo("fin_all:3").reedy).total == 7


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_cyclic_group_center_versus_rational_simples(n):
    count = count_irreducibles(zoo(f"cyclic_group:{n}").reedy)
    assert count.total == n
    assert count.total_simple == rational_simple_count_cyclic(n)


def test_cyclic_order_category_counts():
    count = count_irreducibles(zoo("cyclic:3").reedy)
    assert count.per_object == {"[1]": 1, "[2]": 2, "[3]": 3}
    assert count.simple_modules == {n: rational_simple_count_cyclic(int(n[1:-1])) for n in count.per_object}


def test_non_semisimple_local_algebra_is_unsupported():
    with pytest.raises(NotSemisimpleUnsupported):
        count_irreducibles(zoo("dual_numbers").reedy)


def test_modular_group_algebra_is_unsupported():
    with pytest.raises(NotSemisimpleUnsupported):
        count_irreducibles(zoo("symmetric_group:2", Field(2)).reedy)


def test_filtration_layers_match_tensor_formula():
    r = zoo("fin_all:2").reedy
    layers = filtration_of_representable(r, "[2]")
    assert [lv.degree for lv in layers] == [0, 1, 2]
    assert [lv.factor_dims["[2]"] for lv in layers] == [0, 2, 2]
    for x in r.objects:
        for lv in filtration_of_representable(r, x):
            assert lv.factor_dims == lv.tensor_dims


def test_filtration_requires_projectivity():
    r = load_spec_file(str(DATA / "truncated_arrow.json")).reedy
    assert projectivity_failures(r) == [("plus", "a", "b")]
    with pytest.raises(HypothesisFailed):
        filtration_of_representable(r, "b")


def test_induced_description():
    r = zoo("fin_surj:3").reedy
    assert all(induced_description_check(r, x) for x in r.objects)


def test_idempotent_verification():
    r = zoo("symmetric_group:2").reedy
    cat = r.cat
    labels = cat.labels[("*", "*")]
    e_id, e_swap = labels.index((0, 1)), labels.index((1, 0))
    plus = [0, 0]
    plus[e_id], plus[e_swap] = Field(0)("1/2"), Field(0)("1/2")
    minus = [0, 0]
    minus[e_id], minus[e_swap] = Field(0)("1/2"), Field(0)("-1/2")
    assert verify_idempotents(r, "*", [plus, minus])["pass"]
    assert not verify_idempotents(r, "*", [plus])["complete"]

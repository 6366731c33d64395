import pytest

from reedy_lab.linalg import Field
from reedy_lab.reedy import AntisymmetryViolation, ReedyStructure, RhoNotIso
from reedy_lab.zoo import zoo


@pytest.fixture(scope="module")
def fin2():
    return zoo("fin_all:2")


@pytest.mark.parametrize("spec", ["fin_all:2", "fin_inj:3", "fin_surj:3", "cyclic:3", "vect_fq:2,2",
                                  "poset_chain:3", "quiver", "quiver_rev", "dual_numbers_direct",
                                  "span_inj:2", "simplex_inj:2"])
def test_zoo_structures_pass_all_axioms(spec):
    rep = zoo(spec).reedy.check()
    assert rep["pass"], rep


def test_rho_block_dimensions(fin2):
    r = fin2.reedy
    assert [(b.middle, b.dim) for b in r.rho_blocks("[2]", "[2]")] == [("[1]", 2), ("[2]", 2)]
    assert [(b.middle, b.dim) for b in r.rho_blocks("[1]", "[2]")] == [("[1]", 2)]


def test_constant_map_factors_through_the_point(fin2):
    r, c = fin2.reedy, fin2.cat
    const = c.unit_vec("[2]", "[2]", c.labels[("[2]", "[2]")].index((1, 1)))
    fac = r.reedy_factorize("[2]", "[2]", const)
    assert [z for z, _ in fac.components] == ["[1]"]
    assert fac.recompose(c) == const


def test_every_basis_morphism_recomposes(fin2):
    r, c = fin2.reedy, fin2.cat
    for x in c.objects:
        for y in c.objects:
            for i in range(c.dim(x, y)):
                f = c.unit_vec(x, y, i)
                assert r.reedy_factorize(x, y, f).recompose(c) == f


def test_swapping_plus_and_minus_breaks_degree_condition(fin2):
    rep = fin2.reedy.swapped().check()
    assert not rep["pass"]
    assert ("[2]", "[1]") in rep["a"]


def test_rho_failure_is_reported_with_defect():
    inst = zoo("fin_all:2")
    r = inst.reedy
    # forget the surjections: the constant maps no longer factor
    minus = {k: (v if k[0] == k[1] else v.__class__(v.F, v.n)) for k, v in r.minus.items()}
    broken = ReedyStructure(inst.cat, r.degree, r.plus, minus)
    rep = broken.check()
    assert not rep["pass"] and rep["d"]
    with pytest.raises(RhoNotIso):
        broken.reedy_factorize("[2]", "[2]", inst.cat.identity_vec("[2]"))


def test_partial_orders(fin2):
    lower, upper = fin2.reedy.partial_orders()
    assert lower[("[1]", "[2]")] and not lower[("[2]", "[1]")]
    assert upper[("[1]", "[2]")] and not upper[("[2]", "[1]")]
    assert lower[("[0]", "[0]")]


def test_antisymmetry_violation_detected():
    inst = zoo("fin_all:2")
    r = inst.reedy
    plus = dict(r.plus)
    plus[("[2]", "[1]")] = r.minus[("[2]", "[1]")]
    bad = ReedyStructure(inst.cat, r.degree, plus, r.minus)
    with pytest.raises(AntisymmetryViolation):
        bad.partial_orders()


def test_ideal_below_top_degree(fin2):
    r = fin2.reedy
    I = r.ideal(2)
    assert I[("[2]", "[2]")].dim == 2
    assert I == r.ideal_via_rho(2)
    assert r.ideal_is_two_sided(I) == []


def test_quotient_category_dimension(fin2):
    q, _ = fin2.reedy.quotient_category(2)
    assert q.cat.dim("[2]", "[2]") == 2
    assert q.cat.check_axioms() == []


def test_standard_module_dimensions(fin2):
    r = fin2.reedy
    assert r.standard_module("[2]").dim_vector() == (0, 0, 2)
    assert r.standard_module("[1]").dim_vector() == (0, 1, 2)
    assert r.standard_module("[0]").dim_vector() == (1, 1, 1)


def test_op_structure_is_consistent(fin2):
    r = fin2.reedy
    assert r.op().op() is r
    assert r.op().check()["pass"]


def test_prime_field_structure():
    assert zoo("fin_all:2", Field(2)).reedy.check()["pass"]
    assert zoo("cyclic:2", Field(3)).reedy.check()["pass"]


def test_truncation_keeps_lower_objects(fin2):
    t = fin2.reedy.truncate(2)
    assert t.objects == ["[0]", "[1]"]
    assert t.check()["pass"]

import pytest

from oracles import linear_maps_count, set_map_count
from reedy_lab.lincat import LinCat, group_algebra, group_order_of_basis
from reedy_lab.linalg import QQ, Field, Mat
from reedy_lab.reps import LEFT, RIGHT, balanced_tensor, hom_dim, module_from_action, representable
from reedy_lab.zoo import ParamOutOfRange, zoo


@pytest.mark.parametrize("name,kind", [("fin_all", "all"), ("fin_inj", "inj"), ("fin_surj", "surj")])
def test_finite_set_hom_dims_match_enumeration(name, kind):
    inst = zoo(f"{name}:3")
    for x in inst.cat.objects:
        for y in inst.cat.objects:
            m, n = int(x[1:-1]), int(y[1:-1])
            assert inst.cat.dim(x, y) == set_map_count(m, n, kind)


def test_vector_space_category_hom_dims():
    cat = zoo("vect_fq:2,2").cat
    assert cat.dim("F2^2", "F2^2") == linear_maps_count(2, 2, 2) == 16
    assert cat.dim("F2^1", "F2^2") == linear_maps_count(2, 2, 1)


@pytest.mark.parametrize("spec", ["fin_all:2", "fin_inj:3", "cyclic:3", "vect_fq:2,1", "quiver",
                                  "dual_numbers_direct", "span_inj:2", "symmetric_group:3"])
def test_zoo_categories_satisfy_axioms(spec):
    assert zoo(spec).cat.check_axioms() == []


def test_cyclic_group_algebra_is_a_group_basis():
    C2 = group_algebra(QQ, [0, 1], lambda a, b: (a + b) % 2)
    assert C2.check_axioms() == []
    assert group_order_of_basis(C2, "*") == 2
    assert group_order_of_basis(zoo("dual_numbers").cat, "*") is None


def test_corrupted_structure_constant_is_detected():
    base = zoo("symmetric_group:3").cat

    def structure(x, y, z):
        T = [[dict(e) for e in row] for row in base.table(x, y, z)]
        # send the composite of two transposition labels to the wrong element
        T[1][2] = dict(T[1][3])
        return T

    bad = LinCat(QQ, base.objects, base.labels, structure, base.identities, name="corrupted")
    assert bad.check_axioms() != []


def test_representable_dimensions():
    assert representable(zoo("fin_all:2").cat, "[2]").dim_vector() == (0, 1, 4)
    assert representable(zoo("fin_inj:2").cat, "[1]").dim_vector() == (0, 1, 2)
    assert representable(zoo("fin_inj:2").cat, "[1]", RIGHT).dim_vector() == (1, 1, 0)


def test_representables_are_functors():
    cat = zoo("cyclic:2").cat
    for x in cat.objects:
        assert representable(cat, x, LEFT).check() == []
        assert representable(cat, x, RIGHT).check() == []


def test_yoneda_hom_dimension():
    cat = zoo("fin_all:2").cat
    P = representable(cat, "[1]")
    for y in cat.objects:
        assert hom_dim(P, representable(cat, y)) == cat.dim(y, "[1]")


def test_op_is_an_involution():
    cat = zoo("fin_surj:2").cat
    assert cat.op().op() is cat
    assert cat.op().dim("[1]", "[2]") == cat.dim("[2]", "[1]")
    assert cat.op().check_axioms() == []


def test_balanced_tensor_over_rational_symmetric_group():
    S2 = zoo("symmetric_group:2").cat
    swap = S2.labels[("*", "*")].index((1, 0))

    def sign_action(i):
        return Mat.from_rows(QQ, [[-1 if i == swap else 1]])

    def trivial_action(i):
        return Mat.from_rows(QQ, [[1]])

    sign_right = module_from_action(S2, RIGHT, 1, sign_action)
    trivial_left = module_from_action(S2, LEFT, 1, trivial_action)
    sign_left = module_from_action(S2, LEFT, 1, sign_action)
    assert balanced_tensor(sign_right, trivial_left).dim == 0
    assert balanced_tensor(sign_right, sign_left).dim == 1
    regular_right = representable(S2, "*", RIGHT)
    assert balanced_tensor(regular_right, trivial_left).dim == 1
    assert balanced_tensor(regular_right, representable(S2, "*", LEFT)).dim == 2


def test_sign_tensor_trivial_survives_in_characteristic_two():
    S2 = zoo("symmetric_group:2", Field(2)).cat
    swap = S2.labels[("*", "*")].index((1, 0))
    sign = module_from_action(S2, RIGHT, 1, lambda i: Mat.from_rows(Field(2), [[-1 if i == swap else 1]]))
    triv = module_from_action(S2, LEFT, 1, lambda i: Mat.from_rows(Field(2), [[1]]))
    assert balanced_tensor(sign, triv).dim == 1


def test_zoo_parameter_errors():
    with pytest.raises(ParamOutOfRange):
        zoo("fin_all")
    with pytest.raises(KeyError):
        zoo("no_such_category")

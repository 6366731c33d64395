import random

import pytest
from hypothesis import given, strategies as st

from reedy_lab.battery import random_module
from reedy_lab.homalg import (coinduce, ext1_cocycles, ext1_dim, find_iso, free_cover, induce,
                              injective_hull_map, is_injective, is_projective, local_module_at,
                              proj_presentation, tensor_dim, tor1, tor1_via_right)
from reedy_lab.linalg import Field, Subspace
from reedy_lab.reps import RIGHT, hom_dim, quotient_rep, representable
from reedy_lab.zoo import zoo


def _simple_top(cat, x):
    """The representable at x modulo everything away from x (the top of the projective)."""
    P = representable(cat, x)
    subs = {y: Subspace(cat.F, P.dims[y]) if y == x else Subspace.full(cat.F, P.dims[y])
            for y in cat.objects}
    subs[x] = Subspace(cat.F, P.dims[x], [v for v in _nonidentity(cat, x)])
    return quotient_rep(P, subs)[0]


def _nonidentity(cat, x):
    idv = cat.identity_vec(x)
    return [cat.unit_vec(x, x, i) for i in range(cat.dim(x, x)) if cat.unit_vec(x, x, i) != idv]


@pytest.fixture(scope="module")
def quiver():
    return zoo("quiver")


def test_ext_between_quiver_simples(quiver):
    Sa, Sb = _simple_top(quiver.cat, "a"), _simple_top(quiver.cat, "b")
    assert Sa.dim_vector() == (1, 0) and Sb.dim_vector() == (0, 1)
    assert ext1_dim(Sa, Sb) == 1 == ext1_cocycles(Sa, Sb)
    assert ext1_dim(Sb, Sa) == 0 == ext1_cocycles(Sb, Sa)
    assert not is_projective(Sa) and is_projective(Sb)
    assert is_injective(Sa) and not is_injective(Sb)


def test_tor_over_dual_numbers():
    A = zoo("dual_numbers").cat
    k = _simple_top(A, "*")
    assert k.dim_vector() == (1,)
    k_right = k.dual()
    assert k_right.side == RIGHT
    assert tor1(k_right, k) == 1 == tor1_via_right(k_right, k)
    assert tensor_dim(k_right, k) == 1
    assert ext1_dim(k, k) == 1 == ext1_cocycles(k, k)


def test_presentation_is_exact(quiver):
    Sa = _simple_top(quiver.cat, "a")
    pres = proj_presentation(Sa)
    assert pres.is_exact()
    assert pres.omega.dim_vector() == (0, 1)


def test_free_cover_is_epi():
    M = random_module(zoo("fin_all:2").cat, random.Random(3), duals=True)
    assert free_cover(M.as_left()).pi.is_epi()


def test_injective_hull_is_mono():
    cat = zoo("quiver").cat
    Sb = _simple_top(cat, "b")
    I, j = injective_hull_map(Sb)
    assert j.is_mono() and is_injective(I)


def test_induction_from_minus_gives_standard_modules():
    r = zoo("fin_all:2").reedy
    for x in r.objects:
        V = local_module_at(r, x)
        ind = induce(V.cat, V).rep
        assert ind.dim_vector() == r.standard_module(x).dim_vector()
        assert find_iso(ind, r.standard_module(x)) is not None
    assert r.standard_module("[2]").dim_vector() == (0, 0, 2)


def test_coinduction_adjunction_dimensions():
    r = zoo("fin_inj:2").reedy
    sub = r.plus_subcategory()
    V = representable(sub, "[1]")
    C = coinduce(sub, V).rep
    M = representable(r.cat, "[0]")
    assert hom_dim(M, C) == hom_dim(M.restrict(sub), V)


CATEGORIES = ["quiver", "fin_all:2", "dual_numbers_direct", "cyclic:2", "fin_surj:2"]


@given(st.sampled_from(CATEGORIES), st.integers(0, 10_000), st.integers(0, 10_000))
def test_ext_routes_agree(spec, s1, s2):
    cat = zoo(spec).cat
    M = random_module(cat, random.Random(s1), max_dim=2, duals=True)
    N = random_module(cat, random.Random(s2), max_dim=2, duals=True)
    assert ext1_dim(M, N) == ext1_cocycles(M, N)


@given(st.sampled_from(CATEGORIES), st.integers(0, 10_000), st.integers(0, 10_000))
def test_tor_routes_agree(spec, s1, s2):
    cat = zoo(spec).cat
    M = random_module(cat.op(), random.Random(s1), max_dim=2, duals=True).as_right_of_op()
    N = random_module(cat, random.Random(s2), max_dim=2, duals=True)
    assert tor1(M, N) == tor1_via_right(M, N)


@given(st.integers(0, 10_000))
def test_projectives_have_no_ext(seed):
    cat = zoo("fin_all:2", Field(3)).cat
    rng = random.Random(seed)
    P = representable(cat, rng.choice(cat.objects))
    N = random_module(cat, rng, max_dim=2, duals=True)
    assert ext1_dim(P, N) == 0

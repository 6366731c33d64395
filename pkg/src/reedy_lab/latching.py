"""Latching and matching objects, and membership in the glued classes.

For an object x of degree a, write C_a for the full subcategory on objects of
degree < a.  For a LEFT rep Y:

* latching value  L(x) = hom(-, x)|C_a (x)_{C_a} Y|C_a, with
  l: L(x) -> Y(x), phi (x) v -> Y(phi) v;
* matching value  R(x) = Hom_{C_a}(hom(x, -)|C_a, Y|C_a), with
  m: Y(x) -> R(x), v -> [f -> Y(f) v].

Both are modules over the local algebra A_x (postcomposition on the
latching side, precomposition on the matching side) and l, m are A_x-linear.
Y lies in the left glued class of a family S when every l is mono with
cokernel in S_x, and in the right glued class when every m is epi with kernel
in S_x.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .classes import ClassFamily
from .homalg import ext1, tor1
from .lincat import LinCat
from .linalg import Mat, Subspace
from .reedy import ReedyStructure
from .reps import (LEFT, RIGHT, HomSpace, Rep, RepMap, TensorProduct,
                   hom_reps, quotient_rep, representable, sub_rep, tensor,
                   tensor_map)


def _cache(r: ReedyStructure) -> dict:
    if not hasattr(r, "_latching_cache"):
        r._latching_cache = {}
    return r._latching_cache


def below(r: ReedyStructure, alpha: int) -> LinCat:
    key = ("full", alpha)
    c = _cache(r)
    if key not in c:
        objs = [z for z in r.cat.objects if r.degree[z] < alpha]
        c[key] = r.cat.full_subcategory(objs, name=f"{r.cat.name}<{alpha}")
    return c[key]


def plus_below(r: ReedyStructure, alpha: int) -> LinCat:
    key = ("plus", alpha)
    c = _cache(r)
    if key not in c:
        objs = [z for z in r.cat.objects if r.degree[z] < alpha]
        c[key] = r.cat.subcategory(r.plus, objects=objs, name=f"{r.cat.name}+<{alpha}")
    return c[key]


def minus_below(r: ReedyStructure, alpha: int) -> LinCat:
    key = ("minus", alpha)
    c = _cache(r)
    if key not in c:
        objs = [z for z in r.cat.objects if r.degree[z] < alpha]
        c[key] = r.cat.subcategory(r.minus, objects=objs, name=f"{r.cat.name}-<{alpha}")
    return c[key]


def truncation_upto(r: ReedyStructure, alpha: int) -> ReedyStructure:
    """Structure on objects of degree <= alpha (cached)."""
    key = ("trunc", alpha)
    c = _cache(r)
    if key not in c:
        c[key] = r.truncate(alpha + 1)
    return c[key]


def local_module(r: ReedyStructure, x, dim: int, action) -> Rep:
    """LEFT A_x-module from action(a_vector) -> matrix, a over the basis of A_x."""
    A = r.local_algebra(x)
    inc = A.inclusion[(x, x)]
    mats = [action(inc.column(k)) for k in range(inc.cols)]
    return Rep(A, LEFT, {x: dim}, {(x, x): mats}, name=f"A0({x})-module")


def value_module(r: ReedyStructure, Y: Rep, x) -> Rep:
    """Y(x) as a LEFT A_x-module."""
    return local_module(r, x, Y.dims[x], lambda a: Y.mat(x, x, a))


def _local_submodule(M: Rep, S: Subspace) -> Rep:
    x = M.cat.objects[0]
    return sub_rep(M, {x: S})[0]


def _local_quotient(M: Rep, S: Subspace) -> Rep:
    x = M.cat.objects[0]
    return quotient_rep(M, {x: S})[0]


@dataclass
class LatchingData:
    obj: object
    alpha: int
    latching: TensorProduct
    latching_module: Rep
    l: Mat
    matching: HomSpace
    matching_module: Rep
    m: Mat
    value: Rep
    plus_route_dim: int
    plus_route_iso: bool
    minus_route_dim: int
    minus_route_iso: bool
    l_linear: bool = True
    m_linear: bool = True

    @property
    def l_mono(self) -> bool:
        return self.l.rank() == self.l.cols

    @property
    def m_epi(self) -> bool:
        return self.m.rank() == self.m.rows

    def cokernel_l(self) -> Rep:
        return _local_quotient(self.value, Subspace(self.value.F, self.l.rows, self.l.columns()))

    def kernel_m(self) -> Rep:
        from .linalg import kernel
        return _local_submodule(self.value, Subspace(self.value.F, self.m.cols, kernel(self.m)))

    def tau(self) -> Mat:
        """m o l: latching -> matching."""
        return self.m @ self.l


def _matching_columns(Y: Rep, x, H: HomSpace, v) -> list:
    """Coordinates in H of f -> Y(f) v."""
    F = Y.F
    mats = {}
    for z in H.M.cat.objects:
        cols = [A.apply(v) for A in Y.act[(x, z)]]
        mats[z] = Mat.from_columns(F, cols, Y.dims[z]) if cols else Mat(F, Y.dims[z], 0)
    return H.coordinates(RepMap(H.M, H.N, mats))


def latching_matching(r: ReedyStructure, Y: Rep, x) -> LatchingData:
    if Y.side != LEFT or Y.cat is not r.cat:
        raise ValueError("latching needs a LEFT rep over the structure's category")
    cat = r.cat
    F = r.F
    alpha = r.degree[x]
    Ca = below(r, alpha)
    ResY = Y.restrict(Ca)
    Rx = representable(cat, x, RIGHT).restrict(Ca)
    T = tensor(Rx, ResY)
    cols = []
    for k in range(T.dim):
        z, i, j = T.section(k)
        cols.append(Y.act[(z, x)][i].column(j))
    l = Mat.from_columns(F, cols, Y.dims[x]) if cols else Mat(F, Y.dims[x], 0)

    A_basis = r.local_algebra(x).inclusion[(x, x)]
    avecs = [A_basis.column(k) for k in range(A_basis.cols)]

    def post(a):
        return RepMap(Rx, Rx, {z: cat.post_matrix(z, x, x, a) for z in Ca.objects})

    Lmod = local_module(r, x, T.dim, lambda a: tensor_map(T, T, post(a), None))
    V = value_module(r, Y, x)

    Lx = representable(cat, x, LEFT).restrict(Ca)
    H = hom_reps(Lx, ResY)
    mcols = []
    for i in range(Y.dims[x]):
        v = [F.zero] * Y.dims[x]
        v[i] = F.one
        mcols.append(_matching_columns(Y, x, H, v))
    m = Mat.from_columns(F, mcols, H.dim) if mcols else Mat(F, H.dim, 0)

    def pre(a):
        return RepMap(Lx, Lx, {z: cat.pre_matrix(x, x, z, a) for z in Ca.objects})

    def match_action(a):
        P = pre(a)
        cs = [H.coordinates(h @ P) for h in H.basis()]
        return Mat.from_columns(F, cs, H.dim) if cs else Mat(F, H.dim, 0)

    Mmod = local_module(r, x, H.dim, match_action)
    l_lin = all(V.act[(x, x)][k] @ l == l @ Lmod.act[(x, x)][k] for k in range(len(avecs)))
    m_lin = all(Mmod.act[(x, x)][k] @ m == m @ V.act[(x, x)][k] for k in range(len(avecs)))

    # plus route for the latching value
    Cp = plus_below(r, alpha)
    Rxp_full = representable(cat, x, RIGHT).restrict(Cp)
    Rxp, incp = sub_rep(Rxp_full, {z: r.plus[(z, x)] for z in Cp.objects})
    Tp = tensor(Rxp, Y.restrict(Cp))
    ccols = []
    for k in range(Tp.dim):
        z, i, j = Tp.section(k)
        pvec = incp.mats[z].column(i)
        e = [F.zero] * Y.dims[z]
        e[j] = F.one
        ccols.append(T.pure(z, pvec, e))
    comp = Mat.from_columns(F, ccols, T.dim) if ccols else Mat(F, T.dim, 0)
    plus_iso = comp.rows == comp.cols and comp.rank() == comp.rows

    # minus route for the matching value
    Cm = minus_below(r, alpha)
    Lxm_full = representable(cat, x, LEFT).restrict(Cm)
    Lxm, incm = sub_rep(Lxm_full, {z: r.minus[(x, z)] for z in Cm.objects})
    ResYm = Y.restrict(Cm)
    Hm = hom_reps(Lxm, ResYm)
    rcols = []
    for h in H.basis():
        hm = RepMap(Lxm, ResYm, {z: h.mats[z] @ incm.mats[z] for z in Cm.objects})
        rcols.append(Hm.coordinates(hm))
    res = Mat.from_columns(F, rcols, Hm.dim) if rcols else Mat(F, Hm.dim, 0)
    minus_iso = res.rows == res.cols and res.rank() == res.rows

    return LatchingData(x, alpha, T, Lmod, l, H, Mmod, m, V, Tp.dim, plus_iso, Hm.dim, minus_iso,
                        l_lin, m_lin)


# ---------------------------------------------------------------------------
# the Tor / Ext side
# ---------------------------------------------------------------------------


def right_action_on_standard(r: ReedyStructure, x, a) -> RepMap:
    """[f] -> [f o a] on the LEFT standard module at x."""
    D = r.standard_module(x, LEFT)
    cat = r.cat
    Q = D.quotients
    mats = {}
    for y in cat.objects:
        cols = [Q[y].project(cat.compose(x, x, y, Q[y].section(k), a)) for k in range(D.dims[y])]
        mats[y] = Mat.from_columns(r.F, cols, D.dims[y]) if cols else Mat(r.F, D.dims[y], 0)
    return RepMap(D, D, mats)


@dataclass
class DerivedSide:
    """Tor/Ext data over the truncation to degrees <= d(x)."""

    tensor_module: Rep       # costandard (x) Y as an A_x-module
    tor1: int
    hom_module: Rep          # Hom(standard, Y) as an A_x-module
    ext1: int


def derived_side(r: ReedyStructure, Y: Rep, x, need_tor=True, need_ext=True) -> DerivedSide:
    alpha = r.degree[x]
    rb = truncation_upto(r, alpha)
    Yb = Y.restrict(rb.cat)
    F = r.F
    # tensor side
    Dl = rb.op().standard_module(x, LEFT)        # LEFT over op = RIGHT over rb.cat
    Dr = Dl.as_right_of_op()
    T = tensor(Dr, Yb)

    def t_action(a):
        R = right_action_on_standard(rb.op(), x, a)   # [phi] -> [a o phi] in the original category
        return tensor_map(T, T, RepMap(Dr, Dr, R.mats), None)

    Tmod = local_module(r, x, T.dim, t_action)
    tor = tor1(Dr, Yb) if need_tor else -1
    # hom side
    D = rb.standard_module(x, LEFT)
    H = hom_reps(D, Yb)

    def h_action(a):
        R = right_action_on_standard(rb, x, a)
        cs = [H.coordinates(h @ R) for h in H.basis()]
        return Mat.from_columns(F, cs, H.dim) if cs else Mat(F, H.dim, 0)

    Hmod = local_module(r, x, H.dim, h_action)
    ex = ext1(D, Yb).dim if need_ext else -1
    return DerivedSide(Tmod, tor, Hmod, ex)


@dataclass
class Membership:
    left: bool               # in the left glued class
    right: bool              # in the right glued class
    left_via_tor: bool
    right_via_ext: bool
    per_object: dict = dc_field(default_factory=dict)

    @property
    def routes_agree(self) -> bool:
        return self.left == self.left_via_tor and self.right == self.right_via_ext


def phi_psi_membership(r: ReedyStructure, Y: Rep, S: ClassFamily, T: ClassFamily | None = None,
                       need_left: bool = True, need_right: bool = True) -> Membership:
    """Membership of Y in the left glued class of S and the right glued class of T.

    Both the latching/matching route and the Tor/Ext route are computed.
    """
    T = T or S
    left = right = left_t = right_e = True
    per = {}
    for x in r.sorted_objects():
        ld = latching_matching(r, Y, x)
        ds = derived_side(r, Y, x, need_tor=need_left, need_ext=need_right)
        info = {}
        if need_left:
            mono = ld.l_mono
            ck = ld.cokernel_l()
            in_l = mono and S.member(x, ck)
            in_t = ds.tor1 == 0 and S.member(x, ds.tensor_module)
            info.update(l_mono=mono, coker_dim=ck.total_dim(), tor1=ds.tor1,
                        tensor_dim=ds.tensor_module.total_dim(), left=in_l, left_via_tor=in_t)
            left &= in_l
            left_t &= in_t
        if need_right:
            epi = ld.m_epi
            kr = ld.kernel_m()
            in_r = epi and T.member(x, kr)
            in_e = ds.ext1 == 0 and T.member(x, ds.hom_module)
            info.update(m_epi=epi, ker_dim=kr.total_dim(), ext1=ds.ext1,
                        hom_dim=ds.hom_module.total_dim(), right=in_r, right_via_ext=in_e)
            right &= in_r
            right_e &= in_e
        per[x] = info
    return Membership(left, right, left_t, right_e, per)


@dataclass
class LatchingRow:
    obj: object
    latching_dim: int
    plus_route_dim: int
    matching_dim: int
    minus_route_dim: int
    routes_agree: bool
    cokernel_dim: int
    costandard_tensor_dim: int
    l_mono: bool
    tor1: int
    m_epi: bool
    ext1: int

    @property
    def ok(self) -> bool:
        return (self.routes_agree and self.cokernel_dim == self.costandard_tensor_dim
                and self.l_mono == (self.tor1 == 0) and self.m_epi == (self.ext1 == 0))


def latching_suite(r: ReedyStructure, Y: Rep) -> list:
    """Per object: both routes to latching/matching values, and the Tor/Ext characterizations."""
    rows = []
    for x in r.sorted_objects():
        ld = latching_matching(r, Y, x)
        ds = derived_side(r, Y, x)
        agree = (ld.plus_route_iso and ld.minus_route_iso and ld.plus_route_dim == ld.latching.dim
                 and ld.minus_route_dim == ld.matching.dim)
        rows.append(LatchingRow(x, ld.latching.dim, ld.plus_route_dim, ld.matching.dim, ld.minus_route_dim,
                                agree, ld.cokernel_l().total_dim(), ds.tensor_module.total_dim(),
                                ld.l_mono, ds.tor1, ld.m_epi, ds.ext1))
    return rows

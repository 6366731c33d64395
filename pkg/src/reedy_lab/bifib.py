"""Restriction between degree truncations as a bifibration, and gluing along it.

Fix a degree ``alpha``.  ``base`` is the full subcategory on objects of
degree < alpha and ``top`` the one on objects of degree <= alpha.  A module Y
over ``top`` is the same as its restriction V to ``base`` together with, at
each object x of degree alpha, a module M_x over the local algebra and a
factorization

    Ind V(x) --l--> M_x --m--> coInd V(x)

of the canonical map tau from the latching value to the matching value.
Changing the base along u: V -> W is done by pushout (cocartesian lift) or
pullback (cartesian lift) at the objects of degree alpha.

Weak factorization systems glue degree by degree: at x the relative map
from the pushout M(x) + Ind E(x) to the pullback N(x) x coInd E(x) is
factored in the local module category by the per-object oracle.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .classes import (INJECTIVES, PROJECTIVES, ClassFamily, OracleMissing, PairFamily, check_factorization,
                      intersect, uniform)
from .latching import below, local_module, phi_psi_membership, value_module
from .lincat import LinCat
from .linalg import Mat, NoSolution, solve_rows
from .reedy import ReedyStructure
from .reps import (LEFT, RIGHT, HomSpace, Rep, RepMap, direct_sum, hom_reps, representable,
                   tensor, tensor_map, vstack_maps, hstack_maps)
from .standard import HypothesisFailed, projectivity_failures


class FactorizationMismatch(ValueError):
    """The two maps of a fiber point do not compose to tau."""


# ---------------------------------------------------------------------------
# levels and rebasing
# ---------------------------------------------------------------------------


@dataclass
class Level:
    r: ReedyStructure
    alpha: int
    base: LinCat          # degree < alpha
    top: LinCat           # degree <= alpha
    tops: list            # objects of degree alpha


def level(r: ReedyStructure, alpha: int) -> Level:
    return Level(r, alpha, below(r, alpha), below(r, alpha + 1),
                 [x for x in r.sorted_objects() if r.degree[x] == alpha])


def rebase(Y: Rep, cat: LinCat) -> Rep:
    """The same module on another full subcategory of the same category (restricting if smaller)."""
    objs = cat.objects
    return Rep(cat, Y.side, {x: Y.dims[x] for x in objs},
               {(s, t): Y.act[(s, t)] for s in objs for t in objs}, name=Y.name)


def rebase_map(h: RepMap, src: Rep, tgt: Rep) -> RepMap:
    return RepMap(src, tgt, {x: h.mats[x] for x in src.cat.objects})


def _unit(F, n, i):
    v = [F.zero] * n
    v[i] = F.one
    return v


def _lmap(src: Rep, tgt: Rep, m: Mat) -> RepMap:
    x = src.cat.objects[0]
    return RepMap(src, tgt, {x: m})


# ---------------------------------------------------------------------------
# latching and matching values of a base module at a top object
# ---------------------------------------------------------------------------


@dataclass
class Boundary:
    x: object
    V: Rep
    T: object             # TensorProduct: Ind V(x)
    H: HomSpace           # coInd V(x)
    tau: Mat
    ind_mod: Rep
    coind_mod: Rep


def boundary(lv: Level, V: Rep, x) -> Boundary:
    r, F = lv.r, lv.r.F
    cat = r.cat
    base = lv.base
    Rx = rebase(representable(lv.top, x, RIGHT), base)
    Lx = rebase(representable(lv.top, x, LEFT), base)
    T = tensor(Rx, V)
    H = hom_reps(Lx, V)
    Hb = H.basis()
    cols = []
    for k in range(T.dim):
        z, i, j = T.section(k)
        f = _unit(F, cat.dim(z, x), i)
        mats = {}
        for w in base.objects:
            cs = [V.mat(z, w, cat.compose(z, x, w, _unit(F, cat.dim(x, w), g), f)).column(j)
                  for g in range(cat.dim(x, w))]
            mats[w] = Mat.from_columns(F, cs, V.dims[w]) if cs else Mat(F, V.dims[w], 0)
        cols.append(H.coordinates(RepMap(Lx, V, mats)))
    tau = Mat.from_columns(F, cols, H.dim) if cols else Mat(F, H.dim, 0)

    def post(a):
        return RepMap(Rx, Rx, {z: cat.post_matrix(z, x, x, a) for z in base.objects})

    def pre(a):
        return RepMap(Lx, Lx, {z: cat.pre_matrix(x, x, z, a) for z in base.objects})

    def co_action(a):
        P = pre(a)
        cs = [H.coordinates(h @ P) for h in Hb]
        return Mat.from_columns(F, cs, H.dim) if cs else Mat(F, H.dim, 0)

    ind_mod = local_module(r, x, T.dim, lambda a: tensor_map(T, T, post(a), None))
    coind_mod = local_module(r, x, H.dim, co_action)
    return Boundary(x, V, T, H, tau, ind_mod, coind_mod)


def ind_map(b1: Boundary, b2: Boundary, u: RepMap) -> Mat:
    return tensor_map(b1.T, b2.T, None, u)


def coind_map(b1: Boundary, b2: Boundary, u: RepMap) -> Mat:
    F = b1.V.F
    cols = [b2.H.coordinates(RepMap(b2.H.M, b2.H.N, {w: u.mats[w] @ h.mats[w] for w in u.src.cat.objects}))
            for h in b1.H.basis()]
    return Mat.from_columns(F, cols, b2.H.dim) if cols else Mat(F, b2.H.dim, 0)


# ---------------------------------------------------------------------------
# fiber points
# ---------------------------------------------------------------------------


@dataclass
class FiberPoint:
    level: Level
    base: Rep
    boundaries: dict      # x -> Boundary
    values: dict          # x -> LEFT module over the local algebra at x
    l: dict               # x -> Mat Ind V(x) -> M_x
    m: dict               # x -> Mat M_x -> coInd V(x)

    def mismatches(self) -> list:
        return [x for x in self.level.tops if self.m[x] @ self.l[x] != self.boundaries[x].tau]

    def same_as(self, other: "FiberPoint") -> bool:
        if self.base.dims != other.base.dims or self.base.act != other.base.act:
            return False
        for x in self.level.tops:
            if (self.l[x] != other.l[x] or self.m[x] != other.m[x]
                    or self.values[x].act != other.values[x].act):
                return False
        return True


def _boundaries(lv: Level, V: Rep, cache: dict | None = None) -> dict:
    if cache is not None and id(V) in cache:
        return cache[id(V)]
    out = {x: boundary(lv, V, x) for x in lv.tops}
    if cache is not None:
        cache[id(V)] = out
    return out


def fiber_encode(lv: Level, Y: Rep, boundaries: dict | None = None) -> FiberPoint:
    r, F = lv.r, lv.r.F
    if Y.cat is not lv.top:
        Y = rebase(Y, lv.top)
    V = rebase(Y, lv.base)
    bds = boundaries or _boundaries(lv, V)
    values, ls, ms = {}, {}, {}
    for x in lv.tops:
        b = bds[x]
        values[x] = local_module(r, x, Y.dims[x], lambda a, x=x: Y.mat(x, x, a))
        cols = []
        for k in range(b.T.dim):
            z, i, j = b.T.section(k)
            cols.append(Y.act[(z, x)][i].column(j))
        ls[x] = Mat.from_columns(F, cols, Y.dims[x]) if cols else Mat(F, Y.dims[x], 0)
        mcols = []
        for i in range(Y.dims[x]):
            v = _unit(F, Y.dims[x], i)
            mats = {}
            for w in lv.base.objects:
                cs = [A.apply(v) for A in Y.act[(x, w)]]
                mats[w] = Mat.from_columns(F, cs, Y.dims[w]) if cs else Mat(F, Y.dims[w], 0)
            mcols.append(b.H.coordinates(RepMap(b.H.M, b.H.N, mats)))
        ms[x] = Mat.from_columns(F, mcols, b.H.dim) if mcols else Mat(F, b.H.dim, 0)
    return FiberPoint(lv, V, bds, values, ls, ms)


def _local_coords(r: ReedyStructure, x, a) -> list:
    inc = r.local_algebra(x).inclusion[(x, x)]
    return solve_rows(r.F, inc.cols, inc.a, a).particular


def fiber_decode(p: FiberPoint, check: bool = True) -> Rep:
    lv = p.level
    r, F = lv.r, lv.r.F
    cat = r.cat
    bad = p.mismatches()
    if bad:
        raise FactorizationMismatch(f"m o l differs from tau at {bad}")
    V = p.base
    dims = dict(V.dims)
    for x in lv.tops:
        dims[x] = p.values[x].dims[x]
    objs = lv.top.objects
    tops = set(lv.tops)
    Hmaps = {x: [p.boundaries[x].H.combination(v) for v in _columns(p.m[x])] for x in lv.tops}
    act = {}
    for s in objs:
        for t in objs:
            mats = []
            for i in range(cat.dim(s, t)):
                if s not in tops and t not in tops:
                    mats.append(V.act[(s, t)][i])
                elif s in tops and t not in tops:
                    cs = [h.mats[t].column(i) for h in Hmaps[s]]
                    mats.append(Mat.from_columns(F, cs, dims[t]) if cs else Mat(F, dims[t], 0))
                elif s not in tops and t in tops:
                    T = p.boundaries[t].T
                    cs = [p.l[t].apply(T.pure(s, _unit(F, cat.dim(s, t), i), _unit(F, V.dims[s], j)))
                          for j in range(V.dims[s])]
                    mats.append(Mat.from_columns(F, cs, dims[t]) if cs else Mat(F, dims[t], 0))
                else:
                    mats.append(_top_action(p, s, t, _unit(F, cat.dim(s, t), i), Hmaps, dims))
            act[(s, t)] = mats
    Y = Rep(lv.top, LEFT, dims, act)
    if check:
        problems = Y.check()
        if problems:
            raise FactorizationMismatch(f"decoded data is not a module: {problems[0]}")
    return Y


def _columns(m: Mat) -> list:
    return [m.column(c) for c in range(m.cols)]


def _top_action(p: FiberPoint, s, t, h, Hmaps, dims) -> Mat:
    """Action of h: s -> t between degree-alpha objects, through its Reedy factorization."""
    lv = p.level
    r, F = lv.r, lv.r.F
    fac = r.reedy_factorize(s, t, h)
    out = Mat.zeros(F, dims[t], dims[s])
    for z, c, pv, mv in fac.terms:
        if r.degree[z] < lv.alpha:
            T = p.boundaries[t].T
            cs = []
            for k in range(dims[s]):
                v = Hmaps[s][k].mats[z].apply(mv)
                cs.append(p.l[t].apply(T.pure(z, pv, v)))
            term = Mat.from_columns(F, cs, dims[t]) if cs else Mat(F, dims[t], 0)
        else:
            if not (z == s == t):
                raise FactorizationMismatch(f"unexpected middle object {z!r} for {s!r} -> {t!r}")
            a = r.cat.compose(s, s, s, pv, mv)
            term = p.values[s].mat(s, s, _local_coords(r, s, a))
        out = out + term.scale(c)
    return out


# ---------------------------------------------------------------------------
# maps in and between fibers
# ---------------------------------------------------------------------------


def fiber_hom_space(Y: Rep, Z: Rep, lv: Level) -> "tuple[RepMap | None, list]":
    """Maps Y -> Z over top restricting to the identity on base (an affine space).

    Returns (particular solution or None, basis of the direction space).
    """
    Y, Z = _on_top(Y, lv), _on_top(Z, lv)
    H = hom_reps(Y, Z)
    F = Y.F
    target = []
    for w in lv.base.objects:
        target.extend(Mat.identity(F, Y.dims[w]).flat())
    if any(Y.dims[w] != Z.dims[w] for w in lv.base.objects):
        return None, []

    def lin(h):
        out = []
        for w in lv.base.objects:
            out.extend(h.mats[w].flat())
        return out

    try:
        part, hom = H.solve(lin, target)
    except NoSolution:
        return None, []
    return part, hom


def _on_top(Y: Rep, lv: Level) -> Rep:
    return Y if Y.cat is lv.top else rebase(Y, lv.top)


@dataclass
class Lift:
    point: FiberPoint
    rep: Rep
    lift: RepMap          # lambda: Y -> u_!(Y)  or  rho: u*(Z) -> Z


def pushforward(lv: Level, u: RepMap, Y: Rep) -> Lift:
    """Cocartesian lift of u: V -> W at Y (in the fiber of V)."""
    Y = _on_top(Y, lv)
    p = fiber_encode(lv, Y)
    W = u.tgt
    bW = _boundaries(lv, W)
    values, ls, ms, lam = {}, {}, {}, {}
    for x in lv.tops:
        bV = p.boundaries[x]
        iu = _lmap(bV.ind_mod, bW[x].ind_mod, ind_map(bV, bW[x], u))
        lY = _lmap(bV.ind_mod, p.values[x], p.l[x])
        P, jW, jM = _pushout(iu, lY)
        values[x] = P
        ls[x] = jW.mats[x]
        lam[x] = jM.mats[x]
        # m on the pushout: [w, y] -> tau_W(w) + coInd u (m(y))
        cu = coind_map(bV, bW[x], u)
        ms[x] = _descend(bW[x].tau.hstack(cu @ p.m[x]), jW, jM, x)
    q = FiberPoint(lv, W, bW, values, ls, ms)
    Z = fiber_decode(q)
    mats = {w: u.mats[w] for w in lv.base.objects}
    mats.update(lam)
    return Lift(q, Z, RepMap(Y, Z, mats))


def pullback_star(lv: Level, u: RepMap, Z: Rep) -> Lift:
    """Cartesian lift of u: V -> W at Z (in the fiber of W)."""
    Z = _on_top(Z, lv)
    p = fiber_encode(lv, Z)
    V = u.src
    bV = _boundaries(lv, V)
    values, ls, ms, rho = {}, {}, {}, {}
    for x in lv.tops:
        bW = p.boundaries[x]
        cu = _lmap(bV[x].coind_mod, bW.coind_mod, coind_map(bV[x], bW, u))
        mZ = _lmap(p.values[x], bW.coind_mod, p.m[x])
        P, pC, pM = _pullback(cu, mZ)
        values[x] = P
        ms[x] = pC.mats[x]
        rho[x] = pM.mats[x]
        iu = ind_map(bV[x], bW, u)
        top_rows = bV[x].tau.vstack(p.l[x] @ iu)      # Ind V -> coInd V + M
        ls[x] = _lift_into(top_rows, pC, pM, x)
    q = FiberPoint(lv, V, bV, values, ls, ms)
    Y = fiber_decode(q)
    mats = {w: u.mats[w] for w in lv.base.objects}
    mats.update(rho)
    return Lift(q, Y, RepMap(Y, Z, mats))


def _pushout(f1: RepMap, f2: RepMap):
    """Pushout of B <-f1- A -f2-> C in a local module category: (P, B -> P, C -> P)."""
    B, C = f1.tgt, f2.tgt
    S, incs, projs = direct_sum([B, C])
    d = vstack_maps([f1, f2.scale(-1)], S)
    P, q = d.cokernel()
    return P, q @ incs[0], q @ incs[1]


def _pullback(g1: RepMap, g2: RepMap):
    """Pullback of B -g1-> D <-g2- C: (P, P -> B, P -> C)."""
    B, C = g1.src, g2.src
    S, incs, projs = direct_sum([B, C])
    d = hstack_maps([g1, g2.scale(-1)], S)
    K, k = d.kernel()
    return K, projs[0] @ k, projs[1] @ k


def _at(h, x) -> Mat:
    return h.mats[x] if isinstance(h, RepMap) else h


def _descend(onS: Mat, jW, jM, x) -> Mat:
    """The map P -> target induced by a map from B + C that kills the pushout relations."""
    F = onS.F
    J = _at(jW, x).hstack(_at(jM, x))       # S -> P, surjective
    # solve X J = onS  <=>  J^T X^T = onS^T
    rows = J.T.a
    cols = []
    for i in range(onS.rows):
        cols.append(solve_rows(F, J.rows, rows, onS.a[i]).particular)
    return Mat.from_rows(F, cols, J.rows) if cols else Mat(F, 0, J.rows)


def _lift_into(into: Mat, pC, pM, x) -> Mat:
    """The map source -> P whose composites with the two projections are the stacked ``into``."""
    F = into.F
    Pr = _at(pC, x).vstack(_at(pM, x))      # P -> B + C, injective
    cols = [solve_rows(F, Pr.cols, Pr.a, into.column(c)).particular for c in range(into.cols)]
    return Mat.from_columns(F, cols, Pr.cols) if cols else Mat(F, Pr.cols, 0)


# ---------------------------------------------------------------------------
# universal properties and the adjunction
# ---------------------------------------------------------------------------


@dataclass
class ConeResult:
    cones: int
    unique: int           # cones with exactly one mediator

    @property
    def ok(self) -> bool:
        return self.cones == self.unique


def _restrict_base(h: RepMap, lv: Level) -> list:
    out = []
    for w in lv.base.objects:
        out.extend(h.mats[w].flat())
    return out


def cocartesian_check(lv: Level, lift: Lift, targets: list, rng: random.Random, cones: int = 20) -> ConeResult:
    """For g = h0 o lambda and v = Res h0 with random h0, the mediator is unique."""
    lam = lift.lift
    done = uniq = 0
    for k in range(cones):
        Z = _on_top(targets[k % len(targets)], lv)
        H = hom_reps(lift.rep, Z)
        h0 = H.random(rng)
        g = h0 @ lam
        target = g.flat() + _restrict_base(h0, lv)
        try:
            _, hom = H.solve(lambda h: (h @ lam).flat() + _restrict_base(h, lv), target)
        except NoSolution:
            done += 1
            continue
        done += 1
        uniq += not hom
    return ConeResult(done, uniq)


def cartesian_check(lv: Level, lift: Lift, sources: list, rng: random.Random, cones: int = 20) -> ConeResult:
    rho = lift.lift
    done = uniq = 0
    for k in range(cones):
        X = _on_top(sources[k % len(sources)], lv)
        H = hom_reps(X, lift.rep)
        h0 = H.random(rng)
        g = rho @ h0
        target = g.flat() + _restrict_base(h0, lv)
        try:
            _, hom = H.solve(lambda h: (rho @ h).flat() + _restrict_base(h, lv), target)
        except NoSolution:
            done += 1
            continue
        done += 1
        uniq += not hom
    return ConeResult(done, uniq)


@dataclass
class AdjunctionResult:
    left_exists: bool
    right_exists: bool
    left_dim: int
    right_dim: int
    triangles: bool

    @property
    def ok(self) -> bool:
        return self.left_exists == self.right_exists and self.left_dim == self.right_dim and self.triangles


def adjunction_check(lv: Level, u: RepMap, Y: Rep, Z: Rep) -> AdjunctionResult:
    """Fiber Hom(u_! Y, Z) against Hom(Y, u* Z), plus the triangle identities."""
    push = pushforward(lv, u, Y)
    pull = pullback_star(lv, u, Z)
    a, ha = fiber_hom_space(push.rep, Z, lv)
    b, hb = fiber_hom_space(_on_top(Y, lv), pull.rep, lv)
    return AdjunctionResult(a is not None, b is not None, len(ha), len(hb), _triangles(lv, u, Y, Z))


def _triangles(lv: Level, u: RepMap, Y: Rep, Z: Rep) -> bool:
    """Both triangle identities at the degree-alpha objects (the base parts are identities)."""
    ok = True
    # counit(u_! Y) o u_!(unit Y) = id on u_! Y
    push = pushforward(lv, u, Y)
    pull = pullback_star(lv, u, push.rep)
    push2 = pushforward(lv, u, pull.rep)
    pY = fiber_encode(lv, _on_top(Y, lv))
    for x in lv.tops:
        eta = _lift_into(pY.m[x].vstack(push.lift.mats[x]), *_pull_legs(pull, x), x)
        push_eta = _descend(push2.point.l[x].hstack(push2.lift.mats[x] @ eta), *_push_legs(push, x), x)
        eps = _descend(push.point.l[x].hstack(pull.lift.mats[x]), *_push_legs(push2, x), x)
        ok &= (eps @ push_eta) == Mat.identity(lv.r.F, push.rep.dims[x])
    # u*(counit Z) o unit(u* Z) = id on u* Z
    pull2 = pullback_star(lv, u, Z)
    push3 = pushforward(lv, u, pull2.rep)
    pull3 = pullback_star(lv, u, push3.rep)
    pZ = fiber_encode(lv, _on_top(Z, lv))
    for x in lv.tops:
        eta = _lift_into(pull2.point.m[x].vstack(push3.lift.mats[x]), *_pull_legs(pull3, x), x)
        eps = _descend(pZ.l[x].hstack(pull2.lift.mats[x]), *_push_legs(push3, x), x)
        pull_eps = _lift_into(pull3.point.m[x].vstack(eps @ pull3.lift.mats[x]), *_pull_legs(pull2, x), x)
        ok &= (pull_eps @ eta) == Mat.identity(lv.r.F, pull2.rep.dims[x])
    return ok


def _pull_legs(pull: Lift, x):
    """The two projections of a cartesian lift at x: to the matching value and to the old value."""
    return pull.point.m[x], pull.lift.mats[x]


def _push_legs(push: Lift, x):
    """The two legs of a cocartesian lift at x: from the latching value and from the old value."""
    return push.point.l[x], push.lift.mats[x]


# ---------------------------------------------------------------------------
# factoring a map of top modules through a lift
# ---------------------------------------------------------------------------


@dataclass
class FiberFactorization:
    cocartesian: Lift
    through: RepMap       # u_!(Y) -> Z in the fiber of W
    through_unique: bool
    cartesian: Lift
    into: RepMap          # Y -> u*(Z) in the fiber of V
    into_unique: bool

    def recomposes(self, f: RepMap) -> bool:
        return (self.through @ self.cocartesian.lift) == f and (self.cartesian.lift @ self.into) == f


def fiber_factor(lv: Level, f: RepMap) -> FiberFactorization:
    Y, Z = _on_top(f.src, lv), _on_top(f.tgt, lv)
    f = RepMap(Y, Z, {w: f.mats[w] for w in lv.top.objects})
    V, W = rebase(Y, lv.base), rebase(Z, lv.base)
    u = RepMap(V, W, {w: f.mats[w] for w in lv.base.objects})
    push = pushforward(lv, u, Y)
    pull = pullback_star(lv, u, Z)
    a, _ = fiber_hom_space(push.rep, Z, lv)
    H = hom_reps(push.rep, Z)
    target = f.flat() + _restrict_base(RepMap(W, W, {w: Mat.identity(W.F, W.dims[w]) for w in lv.base.objects}), lv)
    through, hom1 = H.solve(lambda h: (h @ push.lift).flat() + _restrict_base(h, lv), target)
    H2 = hom_reps(Y, pull.rep)
    target2 = f.flat() + _restrict_base(RepMap(V, V, {w: Mat.identity(V.F, V.dims[w]) for w in lv.base.objects}), lv)
    into, hom2 = H2.solve(lambda h: (pull.lift @ h).flat() + _restrict_base(h, lv), target2)
    return FiberFactorization(push, through, not hom1, pull, into, not hom2)


# ---------------------------------------------------------------------------
# gluing weak factorization systems
# ---------------------------------------------------------------------------


@dataclass
class GluedFactorization:
    f: RepMap
    middle: Rep
    left: RepMap
    right: RepMap
    witnesses: dict       # x -> problems reported by the per-object oracle check (empty = fine)

    @property
    def oracle_ok(self) -> bool:
        return all(not v for v in self.witnesses.values())


def glue_factorization(r: ReedyStructure, f: RepMap, pair: PairFamily, check_hypotheses: bool = True) -> GluedFactorization:
    """Factor f: M -> N over the whole category as a left-class mono then a right-class epi."""
    if pair.oracle is None:
        raise OracleMissing("pair family has no factorization oracle")
    if check_hypotheses:
        bad = projectivity_failures(r)
        if bad:
            raise HypothesisFailed(f"projectivity fails at {bad[0]}")
    r.F
    M, N = f.src, f.tgt
    E = None
    left = right = {}
    witnesses = {}
    for alpha in r.degrees():
        lv = level(r, alpha)
        if E is None:
            Eb = rebase(M, lv.base)          # empty base
            left_b, right_b = {}, {}
        else:
            Eb = rebase(E, lv.base)
            left_b, right_b = left, right
        Mb, Nb = rebase(M, lv.base), rebase(N, lv.base)
        iB = RepMap(Mb, Eb, left_b)
        qB = RepMap(Eb, Nb, right_b)
        bE = _boundaries(lv, Eb)
        pM = fiber_encode(lv, M)
        pN = fiber_encode(lv, N)
        values, ls, ms = {}, {}, {}
        new_left, new_right = dict(left_b), dict(right_b)
        for x in lv.tops:
            bM, bN = pM.boundaries[x], pN.boundaries[x]
            Mx, Nx = pM.values[x], pN.values[x]
            # pushout P = M(x) + Ind E(x) over Ind M(x)
            P, jM, jE = _pushout(_lmap(bM.ind_mod, Mx, pM.l[x]),
                                 _lmap(bM.ind_mod, bE[x].ind_mod, ind_map(bM, bE[x], iB)))
            # pullback Q = N(x) x coInd E(x) over coInd N(x)
            Q, qN, qE = _pullback(_lmap(Nx, bN.coind_mod, pN.m[x]),
                                  _lmap(bE[x].coind_mod, bN.coind_mod, coind_map(bE[x], bN, qB)))
            # g: P -> Q from M(x) -> Q: (f_x, coInd i o m_M) and Ind E -> Q: (l_N o Ind q, tau_E)
            fromM = f.mats[x].vstack(coind_map(bM, bE[x], iB) @ pM.m[x])
            fromE = (pN.l[x] @ ind_map(bE[x], bN, qB)).vstack(bE[x].tau)
            gM = _lift_into(fromM, qN, qE, x)
            gE = _lift_into(fromE, qN, qE, x)
            g = _descend(gM.hstack(gE), jM, jE, x)
            gmap = RepMap(P, Q, {x: g})
            fac = pair.factor(x, gmap)
            witnesses[x] = check_factorization(pair, x, gmap, fac)
            Ex = fac.middle
            values[x] = Ex
            ls[x] = fac.left.mats[x] @ jE.mats[x]
            ms[x] = qE.mats[x] @ fac.right.mats[x]
            new_left[x] = fac.left.mats[x] @ jM.mats[x]
            new_right[x] = qN.mats[x] @ fac.right.mats[x]
        point = FiberPoint(lv, Eb, bE, values, ls, ms)
        E = fiber_decode(point)
        left, right = new_left, new_right
    E = rebase(E, r.cat)
    return GluedFactorization(f, E, RepMap(M, E, left), RepMap(E, N, right), witnesses)


def lift_square(i: RepMap, p: RepMap, a: RepMap, b: RepMap) -> RepMap | None:
    """A diagonal h with h i = a and p h = b for the square p a = b i, or None."""
    H = hom_reps(i.tgt, p.src)
    try:
        h, _ = H.solve(lambda h: (h @ i).flat() + (p @ h).flat(), a.flat() + b.flat())
        return h
    except NoSolution:
        return None


# ---------------------------------------------------------------------------
# glued cotorsion pairs and Hovey triples on a battery
# ---------------------------------------------------------------------------


@dataclass
class CotorsionReport:
    factorizations_valid: int
    factorizations: int
    membership_ok: int
    routes_agree: int
    lifting_ok: int
    lifting_tests: int
    ext_violations: int
    ext_pairs: int
    problems: list = dc_field(default_factory=list)
    scope: str = "SAMPLED"

    @property
    def passed(self) -> bool:
        return (self.factorizations_valid == self.factorizations and self.membership_ok == self.factorizations
                and self.lifting_ok == self.lifting_tests and self.ext_violations == 0)


def _random_lifting(r: ReedyStructure, i: RepMap, p: RepMap, rng: random.Random) -> bool:
    """A random commutative square (i against p) admits a diagonal filler."""
    from .linalg import kernel
    Ha = hom_reps(i.src, p.src)
    Hb = hom_reps(i.tgt, p.tgt)
    A, B = Ha.basis(), Hb.basis()
    cols = [(p @ a).flat() for a in A] + [(b @ i).scale(-1).flat() for b in B]
    if not cols or not cols[0]:
        return True
    K = kernel(Mat.from_columns(r.F, cols, len(cols[0])))
    if not K:
        return True
    from .reps import random_scalar
    v = [r.F.zero] * (len(A) + len(B))
    for k in K:
        c = random_scalar(r.F, rng)
        v = [x + c * y for x, y in zip(v, k)]
    v = [r.F(x) for x in v]
    a = Ha.combination(v[:len(A)])
    b = Hb.combination(v[len(A):])
    return lift_square(i, p, a, b) is not None


def cotorsion_glue_check(r: ReedyStructure, pair: PairFamily, modules: list, rng: random.Random,
                         lifting: int = 10) -> CotorsionReport:
    """Both approximation sequences for every module, glued-class membership and Ext-orthogonality."""
    from .homalg import ext1_dim
    from .reps import zero_rep
    Z = zero_rep(r.cat)
    lefts, rights, lmaps, rmaps = [], [], [], []
    valid = mem = agree = 0
    problems = []
    for k, M in enumerate(modules):
        for kind, f in (("precover", Z.zero_map_to(M)), ("preenvelope", M.zero_map_to(Z))):
            g = glue_factorization(r, f, pair, check_hypotheses=False)
            ok = ((g.right @ g.left) == f and not (g.left.check() or g.right.check())
                  and g.left.is_mono() and g.right.is_epi() and g.oracle_ok)
            valid += ok
            C, _ = g.left.cokernel()
            K, _ = g.right.kernel()
            mc = phi_psi_membership(r, C, pair.left, pair.right, need_left=True, need_right=False)
            mk = phi_psi_membership(r, K, pair.left, pair.right, need_left=False, need_right=True)
            good = mc.left and mk.right
            mem += good
            agree += mc.routes_agree and mk.routes_agree
            if not (ok and good):
                problems.append({"module": k, "sequence": kind, "valid": ok,
                                 "cokernel_in_left": mc.left, "kernel_in_right": mk.right})
            lefts.append(C)
            rights.append(K)
            lmaps.append(g.left)
            rmaps.append(g.right)
    lok = lt = 0
    for t in range(lifting if lmaps else 0):
        i = lmaps[rng.randrange(len(lmaps))]
        p = rmaps[rng.randrange(len(rmaps))]
        lt += 1
        lok += _random_lifting(r, i, p, rng)
    ext_v = pairs = 0
    for C in lefts:
        for K in rights:
            pairs += 1
            ext_v += ext1_dim(C, K) != 0
    return CotorsionReport(valid, 2 * len(modules), mem, agree, lok, lt, ext_v, pairs, problems)


# ---------------------------------------------------------------------------
# class families by values, coincidence with projectives / injectives
# ---------------------------------------------------------------------------


def intersect_families(a: ClassFamily, b: ClassFamily, name: str = "") -> ClassFamily:
    keys = set(a.overrides) | set(b.overrides)
    return ClassFamily(intersect(a.default, b.default), {x: intersect(a.at(x), b.at(x)) for x in keys},
                       name or f"{a.name}&{b.name}")


def values_in(r: ReedyStructure, Y: Rep, S: ClassFamily) -> bool:
    """Every value Y(x), as a module over the local algebra, lies in S_x."""
    return all(S.member(x, value_module(r, Y, x)) for x in r.sorted_objects())


@dataclass
class CoincidenceReport:
    modules: int
    agreements: int
    members: int          # modules in the glued class
    disagreements: list

    @property
    def passed(self) -> bool:
        return self.agreements == self.modules


def projective_coincidence(r: ReedyStructure, modules: list) -> CoincidenceReport:
    """Left glued class of per-object projectives against projectivity over the whole category."""
    from .homalg import is_projective
    fam = uniform(PROJECTIVES)
    agree = members = 0
    bad = []
    for k, M in enumerate(modules):
        glued = phi_psi_membership(r, M, fam, None, need_left=True, need_right=False).left
        members += glued
        if glued == is_projective(M):
            agree += 1
        else:
            bad.append(k)
    return CoincidenceReport(len(modules), agree, members, bad)


def injective_coincidence(r: ReedyStructure, modules: list) -> CoincidenceReport:
    """Right glued class of per-object injectives against injectivity over the whole category."""
    from .homalg import is_injective
    fam = uniform(INJECTIVES)
    agree = members = 0
    bad = []
    for k, M in enumerate(modules):
        glued = phi_psi_membership(r, M, fam, fam, need_left=False, need_right=True).right
        members += glued
        if glued == is_injective(M):
            agree += 1
        else:
            bad.append(k)
    return CoincidenceReport(len(modules), agree, members, bad)


# ---------------------------------------------------------------------------
# Hovey triples
# ---------------------------------------------------------------------------


def _plus_tensor_module(r: ReedyStructure, y, x, S: Rep) -> Rep:
    """plus(y, x) tensored over the local algebra at y with S, as a module over the local algebra at x."""
    P = r.plus_module(y, x)
    S = rebase_local(S, P.cat)
    T = tensor(P, S)
    basis = r.plus[(y, x)].basis()
    sub = r.plus[(y, x)]

    def act(a):
        cols = [sub.coordinates(r.cat.compose(y, x, x, a, b)) for b in basis]
        m = Mat.from_columns(r.F, cols, len(basis)) if cols else Mat(r.F, 0, 0)
        return tensor_map(T, T, RepMap(P, P, {y: m}), None)

    return local_module(r, x, T.dim, act)


def _minus_hom_module(r: ReedyStructure, x, y, S: Rep) -> Rep:
    """Hom over the local algebra at y from minus(x, y) to S, as a module over the local algebra at x."""
    Mn = r.minus_module(x, y)
    S = rebase_local(S, Mn.cat)
    H = hom_reps(Mn, S)
    basis = r.minus[(x, y)].basis()
    sub = r.minus[(x, y)]

    def act(a):
        cols = [sub.coordinates(r.cat.compose(x, x, y, b, a)) for b in basis]
        pre = RepMap(Mn, Mn, {y: Mat.from_columns(r.F, cols, len(basis)) if cols else Mat(r.F, 0, 0)})
        cs = [H.coordinates(h @ pre) for h in H.basis()]
        return Mat.from_columns(r.F, cs, H.dim) if cs else Mat(r.F, H.dim, 0)

    return local_module(r, x, H.dim, act)


def rebase_local(S: Rep, A: LinCat) -> Rep:
    """A local module over an equal copy of the same local algebra."""
    if S.cat is A:
        return S
    return Rep(A, S.side, dict(S.dims), dict(S.act), name=S.name)


def local_candidates(r: ReedyStructure, y, rng: random.Random, count: int = 6) -> list:
    """Test modules over the local algebra at y: the regular module, zero, and seeded random ones."""
    from .battery import random_module
    A = r.local_algebra(y)
    out = [r.regular_module(y, LEFT)]
    out += [random_module(A, rng, max_dim=3, max_generators=2) for _ in range(count)]
    return out


@dataclass
class CompatibilityWitness:
    source: object        # y
    target: object        # x
    module_dims: tuple
    result_dim: int

    def to_json(self) -> dict:
        return {"y": str(self.source), "x": str(self.target), "S_dim": list(self.module_dims),
                "result_dim": self.result_dim}


def cocompatibility_failures(r: ReedyStructure, S: ClassFamily, rng: random.Random, count: int = 6) -> list:
    """Witnesses (y, x, S) with S in S_y but plus(y, x) (x) S outside S_x."""
    out = []
    objs = r.sorted_objects()
    for y in objs:
        cands = [M for M in local_candidates(r, y, rng, count) if S.member(y, M)]
        for x in objs:
            if x == y or r.plus[(y, x)].dim == 0:
                continue
            for M in cands:
                T = _plus_tensor_module(r, y, x, M)
                if not S.member(x, T):
                    out.append(CompatibilityWitness(y, x, M.dim_vector(), T.total_dim()))
                    break
    return out


def compatibility_failures(r: ReedyStructure, S: ClassFamily, rng: random.Random, count: int = 6) -> list:
    """Witnesses (y, x, S) with S in S_y but Hom(minus(x, y), S) outside S_x."""
    out = []
    objs = r.sorted_objects()
    for y in objs:
        cands = [M for M in local_candidates(r, y, rng, count) if S.member(y, M)]
        for x in objs:
            if x == y or r.minus[(x, y)].dim == 0:
                continue
            for M in cands:
                H = _minus_hom_module(r, x, y, M)
                if not S.member(x, H):
                    out.append(CompatibilityWitness(y, x, M.dim_vector(), H.total_dim()))
                    break
    return out


@dataclass
class HoveyReport:
    cocompatible: list        # CompatibilityWitness list for Q & W
    compatible: list          # CompatibilityWitness list for W & R
    trivially_cofibrant: CotorsionReport
    trivially_fibrant: CotorsionReport
    identity_left_failures: list
    identity_right_failures: list
    thick_failures: list
    thick_tests: int
    hereditary_failures: list
    hereditary_tests: int
    w_members: int            # battery modules with values in W (nontriviality indicator)
    scope: str = "SAMPLED"

    @property
    def passed(self) -> bool:
        return (not self.cocompatible and not self.compatible and self.trivially_cofibrant.passed
                and self.trivially_fibrant.passed and not self.identity_left_failures
                and not self.identity_right_failures and not self.thick_failures
                and not self.hereditary_failures)

    def first_failure(self) -> str | None:
        for name, bad in (("cocompatibility", self.cocompatible), ("compatibility", self.compatible),
                          ("cofibrant_pair", not self.trivially_cofibrant.passed),
                          ("fibrant_pair", not self.trivially_fibrant.passed),
                          ("left_identity", self.identity_left_failures),
                          ("right_identity", self.identity_right_failures),
                          ("thickness", self.thick_failures), ("hereditary", self.hereditary_failures)):
            if bad:
                return name
        return None


def _short_exact_sequences(r: ReedyStructure, modules: list, rng: random.Random, count: int) -> list:
    """Triples (A, B, C) of short exact sequences from random maps between battery modules."""
    out = []
    for _ in range(count):
        M = modules[rng.randrange(len(modules))]
        N = modules[rng.randrange(len(modules))]
        H = hom_reps(M, N)
        f = H.random(rng)
        K, _ = f.kernel()
        I, _ = f.image()
        C, _ = f.cokernel()
        out.append((K, M, I))
        out.append((I, N, C))
        S, _, _ = direct_sum([M, N])
        out.append((M, S, N))
    return out


def hovey_glue_check(r: ReedyStructure, Q: ClassFamily, W: ClassFamily, R: ClassFamily,
                     cofibrant_pair: PairFamily, fibrant_pair: PairFamily, modules: list,
                     rng: random.Random, sequences: int = 15) -> HoveyReport:
    """Glue a per-object Hovey triple: compatibility, both cotorsion pairs, identities, thickness.

    ``cofibrant_pair`` factors with classes (Q & W, R) and ``fibrant_pair`` with (Q, W & R).
    """
    QW = intersect_families(Q, W)
    WR = intersect_families(W, R)
    coc = cocompatibility_failures(r, QW, rng)
    com = compatibility_failures(r, WR, rng)
    first = cotorsion_glue_check(r, cofibrant_pair, modules, rng)
    second = cotorsion_glue_check(r, fibrant_pair, modules, rng)
    id_left, id_right = [], []
    members = 0
    for k, Y in enumerate(modules):
        in_w = values_in(r, Y, W)
        members += in_w
        a = phi_psi_membership(r, Y, QW, None, need_left=True, need_right=False).left
        b = phi_psi_membership(r, Y, Q, None, need_left=True, need_right=False).left
        if a != (b and in_w):
            id_left.append(k)
        c = phi_psi_membership(r, Y, WR, WR, need_left=False, need_right=True).right
        d = phi_psi_membership(r, Y, R, R, need_left=False, need_right=True).right
        if c != (in_w and d):
            id_right.append(k)
    thick = []
    seqs = _short_exact_sequences(r, modules, rng, sequences)
    for k, (A, B, C) in enumerate(seqs):
        flags = [values_in(r, X, W) for X in (A, B, C)]
        if sum(flags) == 2:
            thick.append({"sequence": k, "in_W": flags})
        if k % 3 == 2 and flags[1] and not (flags[0] and flags[2]):
            thick.append({"sequence": k, "summand": True, "in_W": flags})
    hered, htests = [], 0
    if cofibrant_pair.hereditary and fibrant_pair.hereditary:
        from .homalg import free_cover
        phiQ = [Y for Y in modules if phi_psi_membership(r, Y, Q, None, need_left=True, need_right=False).left]
        for k in range(min(len(phiQ), sequences)):
            M = phiQ[rng.randrange(len(phiQ))]
            N = phiQ[rng.randrange(len(phiQ))]
            cov = free_cover(N)
            S, incs, projs = direct_sum([M, cov.P0])
            f = hstack_maps([hom_reps(M, N).random(rng), cov.pi], S)
            K, _ = f.kernel()
            htests += 1
            if not phi_psi_membership(r, K, Q, None, need_left=True, need_right=False).left:
                hered.append(k)
    return HoveyReport(coc, com, first, second, id_left, id_right, thick, len(seqs), hered, htests, members)

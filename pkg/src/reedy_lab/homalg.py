"""Homological algebra for representations: presentations, Ext^1, Tor_1,
projectivity tests, induction/coinduction along sub-categories.

All representations passed to the LEFT-only routines may also be RIGHT; they
are converted with :meth:`Rep.as_left` (a RIGHT rep is a LEFT rep over the
opposite category).
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .lincat import LinCat
from .linalg import Echelon, Mat, NoSolution, Subspace
from .reps import (LEFT, RIGHT, Rep, RepMap, direct_sum, hom_reps,
                   hstack_maps, representable, tensor, tensor_map, yoneda_map,
                   zero_rep)


# ---------------------------------------------------------------------------
# projective covers and presentations
# ---------------------------------------------------------------------------


@dataclass
class FreeCover:
    """P0 = sum of representables at the generator objects, with the epi P0 -> M."""

    generators: list      # (object, vector in M(object))
    P0: Rep
    pi: RepMap
    summands: list        # representables, one per generator
    inclusions: list


def greedy_generators(M: Rep) -> list:
    """A generating set: scan objects in order, keep basis vectors not yet generated."""
    L = M.as_left()
    cat = L.cat
    F = M.F
    S = {x: Echelon(F, M.dims[x]) for x in cat.objects}
    gens = []
    for x in cat.objects:
        for i in range(M.dims[x]):
            v = [F.zero] * M.dims[x]
            v[i] = F.one
            if S[x].contains(v):
                continue
            gens.append((x, v))
            for y in cat.objects:
                for A in L.act[(x, y)]:
                    S[y].add(A.apply(v))
    return gens


def free_cover(M: Rep, generators: list | None = None) -> FreeCover:
    """Epi from a sum of representables; LEFT reps only (use as_left for RIGHT)."""
    if M.side != LEFT:
        raise ValueError("free_cover works on LEFT representations; convert with as_left()")
    cat = M.cat
    gens = greedy_generators(M) if generators is None else generators
    if not gens:
        Z = zero_rep(cat, LEFT)
        return FreeCover([], Z, Z.zero_map_to(M), [], [])
    summands = [_representable_cached(cat, x) for x, _ in gens]
    P0, incs, _ = direct_sum(summands)
    maps = [yoneda_map(P, x, M, v) for P, (x, v) in zip(summands, gens)]
    pi = hstack_maps(maps, P0)
    return FreeCover(gens, P0, pi, summands, incs)


_REP_CACHE: dict = {}


def _representable_cached(cat: LinCat, x) -> Rep:
    key = (id(cat), x)
    hit = _REP_CACHE.get(key)
    if hit is None or hit.cat is not cat:
        hit = representable(cat, x, LEFT)
        _REP_CACHE[key] = hit
    return hit


@dataclass
class ProjPresentation:
    cover: FreeCover
    omega: Rep
    omega_inc: RepMap
    cover1: FreeCover

    @property
    def P0(self) -> Rep:
        return self.cover.P0

    @property
    def P1(self) -> Rep:
        return self.cover1.P0

    def d1(self) -> RepMap:
        """P1 -> P0."""
        return self.omega_inc @ self.cover1.pi

    def is_exact(self) -> bool:
        pi = self.cover.pi
        if not pi.is_epi():
            return False
        if not (pi @ self.omega_inc).is_zero():
            return False
        if not self.omega_inc.is_mono():
            return False
        ker = pi.kernel_spaces()
        img = self.omega_inc.image_spaces()
        return all(ker[x] == img[x] for x in ker) and self.cover1.pi.is_epi()


def proj_presentation(M: Rep) -> ProjPresentation:
    L = M.as_left()
    cov = free_cover(L)
    omega, inc = cov.pi.kernel()
    cov1 = free_cover(omega)
    return ProjPresentation(cov, omega, inc, cov1)


def hom_from_cover(cov: FreeCover, N: Rep) -> list:
    """Basis of Hom(P0, N) via Yoneda: one map per (generator, basis vector of N(x))."""
    F = N.F
    out = []
    for k, (P, (x, _)) in enumerate(zip(cov.summands, cov.generators)):
        for i in range(N.dims[x]):
            v = [F.zero] * N.dims[x]
            v[i] = F.one
            y = yoneda_map(P, x, N, v)
            # the Yoneda map placed on summand k
            mats = {}
            for z in cov.P0.cat.objects:
                off = sum(cov.summands[j].dims[z] for j in range(k))
                m = Mat(F, N.dims[z], cov.P0.dims[z])
                for r in range(N.dims[z]):
                    m.a[r][off:off + P.dims[z]] = y.mats[z].a[r][:]
                mats[z] = m
            out.append(RepMap(cov.P0, N, mats))
    return out


# ---------------------------------------------------------------------------
# Ext^1 and Tor_1
# ---------------------------------------------------------------------------


@dataclass
class ExtResult:
    dim: int
    hom_omega: int
    restricted_rank: int


def ext1(M: Rep, N: Rep) -> ExtResult:
    """Ext^1(M, N) = Hom(Omega M, N) / image of Hom(P0, N)."""
    Ml, Nl = M.as_left(), N.as_left()
    pres = proj_presentation(Ml)
    H = hom_reps(pres.omega, Nl)
    if H.dim == 0:
        return ExtResult(0, 0, 0)
    S = Subspace(M.F, H.nvars)
    for h in hom_from_cover(pres.cover, Nl):
        S._e.add((h @ pres.omega_inc).flat())
    return ExtResult(H.dim - S.dim, H.dim, S.dim)


def ext1_dim(M: Rep, N: Rep) -> int:
    return ext1(M, N).dim


def ext1_cocycles(M: Rep, N: Rep) -> int:
    """Independent route: derivations modulo inner derivations.

    A class of extensions 0 -> N -> E -> M -> 0 with E = N + M pointwise is
    given by delta(f): M(x) -> N(y) per basis f with
    delta(g o f) = N(g) delta(f) + delta(g) M(f); coboundaries are
    N(f) h_x - h_y M(f).
    """
    Ml, Nl = M.as_left(), N.as_left()
    cat = Ml.cat
    F = M.F
    p = F.p
    offs = {}
    o = 0
    for x in cat.objects:
        for y in cat.objects:
            for i in range(cat.dim(x, y)):
                offs[(x, y, i)] = o
                o += Nl.dims[y] * Ml.dims[x]
    n = o
    e = Echelon(F, n)

    def var(x, y, i, r, c):
        return offs[(x, y, i)] + r * Ml.dims[x] + c

    for x in cat.objects:
        # delta(1_x) = 0
        for r in range(Nl.dims[x]):
            for c in range(Ml.dims[x]):
                row = {}
                for k, v in cat.identities[x].items():
                    row[var(x, x, k, r, c)] = v
                e.add(row)
    for x in cat.objects:
        for y in cat.objects:
            for z in cat.objects:
                if not (cat.dim(x, y) and cat.dim(y, z)):
                    continue
                T = cat.table(x, y, z)
                for j in range(cat.dim(y, z)):
                    G = Nl.act[(y, z)][j]
                    for i in range(cat.dim(x, y)):
                        Mf = Ml.act[(x, y)][i]
                        comp = T[j][i]
                        for r in range(Nl.dims[z]):
                            for c in range(Ml.dims[x]):
                                row = {}
                                for k, v in comp.items():
                                    idx = var(x, z, k, r, c)
                                    row[idx] = row.get(idx, 0) + v
                                for t in range(Nl.dims[y]):
                                    a = G.a[r][t]
                                    if a:
                                        idx = var(x, y, i, t, c)
                                        row[idx] = row.get(idx, 0) - a
                                for t in range(Ml.dims[y]):
                                    b = Mf.a[t][c]
                                    if b:
                                        idx = var(y, z, j, r, t)
                                        row[idx] = row.get(idx, 0) - b
                                if p:
                                    row = {k: v % p for k, v in row.items()}
                                row = {k: v for k, v in row.items() if v}
                                if row:
                                    e.add(row)
    Z = e.kernel()
    zdim = len(Z)
    B = Echelon(F, n)
    for x in cat.objects:
        for r in range(Nl.dims[x]):
            for c in range(Ml.dims[x]):
                # h_x = unit matrix E_{rc}
                vec = {}
                for y in cat.objects:
                    for i in range(cat.dim(x, y)):
                        A = Nl.act[(x, y)][i]
                        for rr in range(Nl.dims[y]):
                            a = A.a[rr][r]
                            if a:
                                idx = var(x, y, i, rr, c)
                                vec[idx] = vec.get(idx, 0) + a
                    for i in range(cat.dim(y, x)):
                        Bm = Ml.act[(y, x)][i]
                        for cc in range(Ml.dims[y]):
                            b = Bm.a[c][cc]
                            if b:
                                idx = var(y, x, i, r, cc)
                                vec[idx] = vec.get(idx, 0) - b
                if p:
                    vec = {k: v % p for k, v in vec.items()}
                B.add({k: v for k, v in vec.items() if v})
    return zdim - B.rank


def tor1(Mright: Rep, Nleft: Rep) -> int:
    """Tor_1(M, N) = ker(M (x) Omega N -> M (x) P0), presenting the LEFT argument."""
    if Mright.side != RIGHT or Nleft.side != LEFT:
        raise ValueError("tor1 takes a RIGHT and a LEFT representation")
    if Nleft.is_zero() or Mright.is_zero():
        return 0
    pres = proj_presentation(Nleft)
    T_omega = tensor(Mright, pres.omega)
    T_p0 = tensor(Mright, pres.P0)
    m = tensor_map(T_omega, T_p0, None, pres.omega_inc)
    return T_omega.dim - m.rank()


def tor1_via_right(Mright: Rep, Nleft: Rep) -> int:
    """Independent route: present the RIGHT argument instead."""
    if Nleft.is_zero() or Mright.is_zero():
        return 0
    pres = proj_presentation(Mright.as_left())        # over the opposite category
    omega = pres.omega.as_right_of_op()
    P0 = pres.P0.as_right_of_op()
    inc = RepMap(omega, P0, pres.omega_inc.mats)
    T_omega = tensor(omega, Nleft)
    T_p0 = tensor(P0, Nleft)
    m = tensor_map(T_omega, T_p0, inc, None)
    return T_omega.dim - m.rank()


def tensor_dim(Mright: Rep, Nleft: Rep) -> int:
    return tensor(Mright, Nleft).dim


# ---------------------------------------------------------------------------
# projectivity, injectivity, isomorphism
# ---------------------------------------------------------------------------


def split_section(pi: RepMap) -> RepMap | None:
    """A section s of the epi pi (pi o s = id), or None."""
    M = pi.tgt
    H = hom_reps(M, pi.src)
    target = M.identity().flat()
    try:
        s, _ = H.solve(lambda s: (pi @ s).flat(), target)
    except NoSolution:
        return None
    return s


def is_projective(M: Rep) -> bool:
    """M is projective iff its free cover splits."""
    L = M.as_left()
    if L.is_zero():
        return True
    cov = free_cover(L)
    return split_section(cov.pi) is not None


def is_injective(M: Rep) -> bool:
    """M is injective iff its dual is projective (over the opposite side)."""
    return is_projective(M.dual())


def injective_hull_map(M: Rep) -> "tuple[Rep, RepMap]":
    """A mono M -> I with I injective: dual of a free cover of the dual."""
    D = M.dual()                 # opposite side
    Dl = D.as_left()
    cov = free_cover(Dl)
    # cov.pi: P -> D(M) over the left-version category; dualize back
    P = cov.P0
    if D.side == RIGHT:
        P_side = P.as_right_of_op()
        pi = RepMap(P_side, D, cov.pi.mats)
    else:
        P_side = P
        pi = cov.pi
    I = P_side.dual()
    j = pi.dual()                # D(D(M)) = M -> D(P)
    j = RepMap(M, I, j.mats)
    return I, j


def find_iso(M: Rep, N: Rep, rng: random.Random | None = None, tries: int = 30) -> RepMap | None:
    """Seeded random search for an isomorphism M -> N inside Hom(M, N)."""
    if M.dims != N.dims:
        return None
    rng = rng or random.Random(0)
    H = hom_reps(M, N)
    if H.dim == 0:
        return M.identity() if M.is_zero() else None
    for b in H.basis():
        if b.is_iso():
            return b
    for _ in range(tries):
        h = H.random(rng)
        if h.is_iso():
            return h
    return None


def is_direct_summand_of_free(M: Rep) -> bool:
    """Same as projectivity (summand of a finite sum of representables)."""
    return is_projective(M)


# ---------------------------------------------------------------------------
# induction and coinduction along a sub-category
# ---------------------------------------------------------------------------


@dataclass
class Induced:
    rep: Rep
    tensors: dict          # object -> TensorProduct


def induce(sub: LinCat, V: Rep) -> Induced:
    """Left Kan extension along sub -> parent: y -> hom(-, y)|sub (x)_sub V."""
    cat = sub.parent
    if V.cat is not sub or V.side != LEFT:
        raise ValueError("induce needs a LEFT rep over the sub-category")
    V.F
    reps = {y: representable(cat, y, RIGHT).restrict(sub) for y in cat.objects}
    Ts = {y: tensor(reps[y], V) for y in cat.objects}
    act = {}
    for y in cat.objects:
        for z in cat.objects:
            ms = []
            for j in range(cat.dim(y, z)):
                g = cat.unit_vec(y, z, j)
                post = RepMap(reps[y], reps[z], {w: cat.post_matrix(w, y, z, g) for w in sub.objects})
                ms.append(tensor_map(Ts[y], Ts[z], post, None))
            act[(y, z)] = ms
    R = Rep(cat, LEFT, {y: Ts[y].dim for y in cat.objects}, act, name=f"Ind({V.name})")
    return Induced(R, Ts)


@dataclass
class Coinduced:
    rep: Rep
    homs: dict             # object -> HomSpace


def coinduce(sub: LinCat, V: Rep) -> Coinduced:
    """Right Kan extension along sub -> parent: y -> Hom_sub(hom(y, -)|sub, V)."""
    cat = sub.parent
    if V.cat is not sub or V.side != LEFT:
        raise ValueError("coinduce needs a LEFT rep over the sub-category")
    F = V.F
    reps = {y: representable(cat, y, LEFT).restrict(sub) for y in cat.objects}
    Hs = {y: hom_reps(reps[y], V) for y in cat.objects}
    act = {}
    for y in cat.objects:
        for z in cat.objects:
            ms = []
            for j in range(cat.dim(y, z)):
                g = cat.unit_vec(y, z, j)
                pre = RepMap(reps[z], reps[y], {w: cat.pre_matrix(y, z, w, g) for w in sub.objects})
                cols = [Hs[z].coordinates(h @ pre) for h in Hs[y].basis()]
                ms.append(Mat.from_columns(F, cols, Hs[z].dim) if cols else Mat(F, Hs[z].dim, 0))
            act[(y, z)] = ms
    R = Rep(cat, LEFT, {y: Hs[y].dim for y in cat.objects}, act, name=f"coInd({V.name})")
    return Coinduced(R, Hs)


def induce_minus(reedy, V: Rep) -> Induced:
    """Induction along the minus subcategory."""
    return induce(V.cat, V)


def local_module_at(reedy, x, sub: LinCat | None = None) -> Rep:
    """A_x concentrated at x, as a LEFT rep over the minus subcategory."""
    from .reps import quotient_rep
    sub = sub or reedy.minus_subcategory()
    P = representable(sub, x, LEFT)
    F = reedy.F
    subs = {y: Subspace.full(F, P.dims[y]) for y in sub.objects if y != x}
    Q, _ = quotient_rep(P, subs)
    Q.name = f"A0({x})"
    return Q

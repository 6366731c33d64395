"""Representations of finite linear categories, natural maps, Hom and tensor.

A LEFT representation assigns a vector space ``M(x)`` to each object and to a
basis morphism ``f: x -> y`` a matrix ``M(x) -> M(y)`` (shape n_y x n_x).  A
RIGHT representation is contravariant: ``f: x -> y`` acts ``M(y) -> M(x)``
(shape n_x x n_y).  A RIGHT representation over a category is literally the
same data as a LEFT representation over its opposite (:meth:`Rep.as_left`).
"""
from __future__ import annotations

import random
from itertools import product
from typing import Callable, Iterable, Sequence

from .lincat import LinCat
from .linalg import (Echelon, Field, Mat, NoSolution, QuotientSpace, Subspace,
                     _sparse, block_diag, solve_rows)

LEFT = "LEFT"
RIGHT = "RIGHT"


class NotASubmodule(ValueError):
    """Per-object subspaces are not stable under the action."""


class NotNatural(ValueError):
    """A family of matrices fails naturality."""


def _combo(F: Field, mats: Sequence[Mat], vec, rows: int, cols: int) -> Mat:
    out = Mat(F, rows, cols)
    a = out.a
    p = F.p
    for k, c in _sparse(vec, F).items():
        for i, r in enumerate(mats[k].a):
            ai = a[i]
            for j, v in enumerate(r):
                if v:
                    ai[j] = ai[j] + c * v
    if p:
        out.a = [[v % p for v in r] for r in a]
    return out


class Rep:
    """Finite-dimensional representation (see module docstring for shapes)."""

    def __init__(self, cat: LinCat, side: str, dims: dict, act: dict, name: str = ""):
        if side not in (LEFT, RIGHT):
            raise ValueError(side)
        self.cat = cat
        self.F = cat.F
        self.side = side
        self.dims = {x: int(dims.get(x, 0)) for x in cat.objects}
        self.act = {}
        for x in cat.objects:
            for y in cat.objects:
                n = cat.dim(x, y)
                ms = act.get((x, y))
                if ms is None:
                    shape = self._shape(x, y)
                    ms = [Mat(self.F, *shape) for _ in range(n)]
                    if x == y and n == 1 and cat.identities[x] == {0: self.F.one}:
                        ms = [Mat.identity(self.F, self.dims[x])]
                self.act[(x, y)] = list(ms)
        self.name = name

    def _shape(self, x, y):
        return (self.dims[y], self.dims[x]) if self.side == LEFT else (self.dims[x], self.dims[y])

    def dim(self, x) -> int:
        return self.dims[x]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple:
        return tuple(self.dims[x] for x in self.cat.objects)

    def mat(self, x, y, vec) -> Mat:
        """Action of the linear combination ``vec`` of basis morphisms x -> y."""
        return _combo(self.F, self.act[(x, y)], vec, *self._shape(x, y))

    def basis_mat(self, x, y, i) -> Mat:
        return self.act[(x, y)][i]

    def check(self) -> list:
        """Functoriality violations on basis morphisms (empty when valid)."""
        cat = self.cat
        F = self.F
        problems = []
        for x in cat.objects:
            if self.mat(x, x, cat.identity_vec(x)) != Mat.identity(F, self.dims[x]):
                problems.append(("identity", x))
        for x, y, z in product(cat.objects, repeat=3):
            if not (cat.dim(x, y) and cat.dim(y, z)):
                continue
            T = cat.table(x, y, z)
            for j in range(cat.dim(y, z)):
                G = self.act[(y, z)][j]
                for i in range(cat.dim(x, y)):
                    Fm = self.act[(x, y)][i]
                    lhs = self.mat(x, z, T[j][i])
                    rhs = G @ Fm if self.side == LEFT else Fm @ G
                    if lhs != rhs:
                        problems.append(("composition", x, y, z, cat.labels[(y, z)][j], cat.labels[(x, y)][i]))
                        return problems
        return problems

    def as_left(self) -> "Rep":
        """A RIGHT rep as a LEFT rep over the opposite category (same matrices)."""
        if self.side == LEFT:
            return self
        op = self.cat.op()
        act = {(y, x): self.act[(x, y)] for x in self.cat.objects for y in self.cat.objects}
        return Rep(op, LEFT, self.dims, act, name=self.name)

    def as_right_of_op(self) -> "Rep":
        """A LEFT rep as a RIGHT rep over the opposite category."""
        if self.side == RIGHT:
            return self
        op = self.cat.op()
        act = {(y, x): self.act[(x, y)] for x in self.cat.objects for y in self.cat.objects}
        return Rep(op, RIGHT, self.dims, act, name=self.name)

    def dual(self) -> "Rep":
        """Pointwise linear dual; swaps the side."""
        side = RIGHT if self.side == LEFT else LEFT
        act = {k: [m.T for m in ms] for k, ms in self.act.items()}
        return Rep(self.cat, side, self.dims, act, name=f"D({self.name})")

    def restrict(self, sub: LinCat) -> "Rep":
        """Restriction along a sub-LinCat whose parent is this rep's category."""
        if sub is self.cat:
            return self
        if sub.parent is not self.cat:
            raise ValueError("restriction needs a direct sub-LinCat of the representation's category")
        act = {}
        for x in sub.objects:
            for y in sub.objects:
                inc = sub.inclusion[(x, y)]
                act[(x, y)] = [self.mat(x, y, inc.column(k)) for k in range(inc.cols)]
        return Rep(sub, self.side, {x: self.dims[x] for x in sub.objects}, act, name=self.name)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.dims.values())

    def identity(self) -> "RepMap":
        return RepMap(self, self, {x: Mat.identity(self.F, self.dims[x]) for x in self.cat.objects})

    def zero_map_to(self, other: "Rep") -> "RepMap":
        return RepMap(self, other, {x: Mat(self.F, other.dims[x], self.dims[x]) for x in self.cat.objects})

    def element_orbit(self, x, v) -> dict:
        """y -> list of vectors M(f) v over basis f: x -> y (LEFT only)."""
        out = {}
        for y in self.cat.objects:
            out[y] = [m.apply(v) for m in self.act[(x, y)]]
        return out

    def __repr__(self):
        return f"Rep({self.name or '?'}, {self.side}, dims={self.dim_vector()})"


def zero_rep(cat: LinCat, side: str = LEFT) -> Rep:
    return Rep(cat, side, {}, {}, name="0")


# ---------------------------------------------------------------------------
# natural maps
# ---------------------------------------------------------------------------


class RepMap:
    """Natural transformation: one matrix (n_tgt x n_src) per object."""

    def __init__(self, src: Rep, tgt: Rep, mats: dict):
        if src.cat is not tgt.cat or src.side != tgt.side:
            raise ValueError("source and target live over different categories or sides")
        self.src = src
        self.tgt = tgt
        self.F = src.F
        self.mats = {}
        for x in src.cat.objects:
            m = mats.get(x)
            if m is None:
                m = Mat(self.F, tgt.dims[x], src.dims[x])
            if m.shape != (tgt.dims[x], src.dims[x]):
                raise ValueError(f"component at {x!r} has shape {m.shape}")
            self.mats[x] = m

    def __getitem__(self, x) -> Mat:
        return self.mats[x]

    def check(self) -> list:
        cat = self.src.cat
        bad = []
        for x in cat.objects:
            for y in cat.objects:
                for i in range(cat.dim(x, y)):
                    if self.src.side == LEFT:
                        ok = self.tgt.act[(x, y)][i] @ self.mats[x] == self.mats[y] @ self.src.act[(x, y)][i]
                    else:
                        ok = self.tgt.act[(x, y)][i] @ self.mats[y] == self.mats[x] @ self.src.act[(x, y)][i]
                    if not ok:
                        bad.append((x, y, cat.labels[(x, y)][i]))
        return bad

    def is_natural(self) -> bool:
        return not self.check()

    def __matmul__(self, other: "RepMap") -> "RepMap":
        """self o other."""
        return RepMap(other.src, self.tgt, {x: self.mats[x] @ other.mats[x] for x in self.src.cat.objects})

    def __add__(self, other):
        return RepMap(self.src, self.tgt, {x: self.mats[x] + other.mats[x] for x in self.mats})

    def __sub__(self, other):
        return RepMap(self.src, self.tgt, {x: self.mats[x] - other.mats[x] for x in self.mats})

    def scale(self, c):
        return RepMap(self.src, self.tgt, {x: m.scale(c) for x, m in self.mats.items()})

    def __eq__(self, other):
        return isinstance(other, RepMap) and self.mats == other.mats

    def __hash__(self):
        return hash(tuple(sorted((str(k), hash(v)) for k, v in self.mats.items())))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())

    def flat(self) -> list:
        out = []
        for x in self.src.cat.objects:
            out.extend(self.mats[x].flat())
        return out

    def kernel_spaces(self) -> dict:
        return {x: Subspace(self.F, self.src.dims[x], Echelon(self.F, m.cols, m.a).kernel())
                for x, m in self.mats.items()}

    def image_spaces(self) -> dict:
        return {x: Subspace(self.F, self.tgt.dims[x], m.columns()) for x, m in self.mats.items()}

    def is_mono(self) -> bool:
        return all(m.rank() == m.cols for m in self.mats.values())

    def is_epi(self) -> bool:
        return all(m.rank() == m.rows for m in self.mats.values())

    def is_iso(self) -> bool:
        return all(m.rows == m.cols and m.rank() == m.rows for m in self.mats.values())

    def kernel(self) -> "tuple[Rep, RepMap]":
        return sub_rep(self.src, self.kernel_spaces())

    def cokernel(self) -> "tuple[Rep, RepMap]":
        return quotient_rep(self.tgt, self.image_spaces())

    def image(self) -> "tuple[Rep, RepMap]":
        return sub_rep(self.tgt, self.image_spaces())

    def inverse(self) -> "RepMap":
        from .linalg import solve
        mats = {}
        for x, m in self.mats.items():
            mats[x] = solve(m, Mat.identity(self.F, m.rows)).particular
        return RepMap(self.tgt, self.src, mats)

    def dual(self) -> "RepMap":
        return RepMap(self.tgt.dual(), self.src.dual(), {x: m.T for x, m in self.mats.items()})

    def restrict(self, sub: LinCat, src=None, tgt=None) -> "RepMap":
        src = src or self.src.restrict(sub)
        tgt = tgt or self.tgt.restrict(sub)
        return RepMap(src, tgt, {x: self.mats[x] for x in sub.objects})

    def as_left(self) -> "RepMap":
        if self.src.side == LEFT:
            return self
        return RepMap(self.src.as_left(), self.tgt.as_left(), self.mats)

    def __repr__(self):
        return f"RepMap({self.src!r} -> {self.tgt!r})"


# ---------------------------------------------------------------------------
# sub- and quotient representations
# ---------------------------------------------------------------------------


def _pivot_coords(S: Subspace, v) -> list:
    return S.coordinates(v)


def sub_rep(M: Rep, subs: dict) -> "tuple[Rep, RepMap]":
    """Sub-representation on per-object subspaces, with its inclusion.

    Raises NotASubmodule naming the first basis morphism that leaves the
    subspaces.
    """
    F = M.F
    cat = M.cat
    S = {x: subs.get(x) or Subspace(F, M.dims[x]) for x in cat.objects}
    bases = {x: S[x].basis() for x in cat.objects}
    dims = {x: len(bases[x]) for x in cat.objects}
    act = {}
    for x in cat.objects:
        for y in cat.objects:
            src, tgt = (x, y) if M.side == LEFT else (y, x)
            ms = []
            for i, A in enumerate(M.act[(x, y)]):
                cols = []
                for b in bases[src]:
                    w = A.apply(b)
                    try:
                        cols.append(S[tgt].coordinates(w))
                    except NoSolution:
                        raise NotASubmodule(f"basis morphism {cat.labels[(x, y)][i]!r}: {x!r}->{y!r} leaves the subspace")
                ms.append(Mat.from_columns(F, cols, dims[tgt]) if cols else Mat(F, dims[tgt], 0))
            act[(x, y)] = ms
    sub = Rep(cat, M.side, dims, act, name=f"sub({M.name})")
    inc = RepMap(sub, M, {x: Mat.from_columns(F, bases[x], M.dims[x]) if bases[x] else Mat(F, M.dims[x], 0)
                          for x in cat.objects})
    return sub, inc


def quotient_rep(M: Rep, subs: dict) -> "tuple[Rep, RepMap]":
    """Quotient representation by action-stable subspaces, with its projection."""
    F = M.F
    cat = M.cat
    S = {x: subs.get(x) or Subspace(F, M.dims[x]) for x in cat.objects}
    Q = {x: QuotientSpace(S[x]) for x in cat.objects}
    dims = {x: Q[x].dim for x in cat.objects}
    act = {}
    for x in cat.objects:
        for y in cat.objects:
            src, tgt = (x, y) if M.side == LEFT else (y, x)
            ms = []
            for i, A in enumerate(M.act[(x, y)]):
                for b in S[src].basis():
                    if not S[tgt].contains(A.apply(b)):
                        raise NotASubmodule(f"basis morphism {cat.labels[(x, y)][i]!r}: {x!r}->{y!r} does not preserve the subspace")
                cols = [Q[tgt].project(A.apply(Q[src].section(k))) for k in range(dims[src])]
                ms.append(Mat.from_columns(F, cols, dims[tgt]) if cols else Mat(F, dims[tgt], 0))
            act[(x, y)] = ms
    q = Rep(cat, M.side, dims, act, name=f"quot({M.name})")
    proj = RepMap(M, q, {x: Q[x].projection_matrix() for x in cat.objects})
    q.quotients = Q
    return q, proj


def sub_quotient_rep(M: Rep, subs: dict, mode: str = "quotient"):
    """Front door for sub/quotient construction (mode 'sub' or 'quotient')."""
    return sub_rep(M, subs) if mode == "sub" else quotient_rep(M, subs)


def generated_subspaces(M: Rep, gens: Iterable) -> dict:
    """Per-object subspaces of the submodule generated by (object, vector) pairs."""
    L = M.as_left()
    cat = L.cat
    S = {x: Subspace(M.F, M.dims[x]) for x in cat.objects}
    for x, v in gens:
        for y in cat.objects:
            for A in L.act[(x, y)]:
                S[y]._e.add(A.apply(v))
    return S


def generated_submodule(M: Rep, gens: Iterable) -> "tuple[Rep, RepMap]":
    return sub_rep(M, generated_subspaces(M, gens))


# ---------------------------------------------------------------------------
# direct sums
# ---------------------------------------------------------------------------


def direct_sum(reps: Sequence[Rep]) -> "tuple[Rep, list, list]":
    """Direct sum with inclusion and projection maps."""
    if not reps:
        raise ValueError("empty direct sum needs a category; use zero_rep")
    cat = reps[0].cat
    F = reps[0].F
    side = reps[0].side
    dims = {x: sum(r.dims[x] for r in reps) for x in cat.objects}
    act = {}
    for x in cat.objects:
        for y in cat.objects:
            act[(x, y)] = [block_diag(F, [r.act[(x, y)][i] for r in reps]) for i in range(cat.dim(x, y))]
    S = Rep(cat, side, dims, act, name="+".join(r.name for r in reps))
    incs, projs = [], []
    off = {x: 0 for x in cat.objects}
    for r in reps:
        im, pm = {}, {}
        for x in cat.objects:
            I = Mat(F, dims[x], r.dims[x])
            P = Mat(F, r.dims[x], dims[x])
            for k in range(r.dims[x]):
                I.a[off[x] + k][k] = F.one
                P.a[k][off[x] + k] = F.one
            im[x], pm[x] = I, P
            off[x] += r.dims[x]
        incs.append(RepMap(r, S, im))
        projs.append(RepMap(S, r, pm))
    return S, incs, projs


def hstack_maps(maps: Sequence[RepMap], src: Rep) -> RepMap:
    """[f_1 ... f_n]: (+ sources) -> common target, with the given sum as source."""
    tgt = maps[0].tgt
    F = tgt.F
    mats = {}
    for x in tgt.cat.objects:
        m = Mat(F, tgt.dims[x], 0)
        for f in maps:
            m = m.hstack(f.mats[x])
        mats[x] = m
    return RepMap(src, tgt, mats)


def vstack_maps(maps: Sequence[RepMap], tgt: Rep) -> RepMap:
    src = maps[0].src
    F = src.F
    mats = {}
    for x in src.cat.objects:
        m = Mat(F, 0, src.dims[x])
        for f in maps:
            m = m.vstack(f.mats[x])
        mats[x] = m
    return RepMap(src, tgt, mats)


# ---------------------------------------------------------------------------
# representables
# ---------------------------------------------------------------------------


def representable(cat: LinCat, x, side: str = LEFT) -> Rep:
    """LEFT: hom(x, -) with post-composition.  RIGHT: hom(-, x) with pre-composition."""
    if x not in cat.obj_index:
        raise KeyError(f"unknown object {x!r}")
    objs = cat.objects
    if side == LEFT:
        dims = {y: cat.dim(x, y) for y in objs}
        act = {(y, z): [cat.post_matrix(x, y, z, cat.unit_vec(y, z, j)) for j in range(cat.dim(y, z))]
               for y in objs for z in objs}
        return Rep(cat, LEFT, dims, act, name=f"hom({x},-)")
    dims = {y: cat.dim(y, x) for y in objs}
    act = {(y, z): [cat.pre_matrix(y, z, x, cat.unit_vec(y, z, j)) for j in range(cat.dim(y, z))]
           for y in objs for z in objs}
    return Rep(cat, RIGHT, dims, act, name=f"hom(-,{x})")


def yoneda_map(P: Rep, x, N: Rep, v) -> RepMap:
    """The map from the LEFT representable at x to N sending 1_x to v in N(x)."""
    cat = P.cat
    mats = {}
    for y in cat.objects:
        cols = [N.mat(x, y, cat.unit_vec(x, y, i)).apply(v) for i in range(cat.dim(x, y))]
        mats[y] = Mat.from_columns(N.F, cols, N.dims[y]) if cols else Mat(N.F, N.dims[y], 0)
    return RepMap(P, N, mats)


# ---------------------------------------------------------------------------
# Hom spaces
# ---------------------------------------------------------------------------


class HomSpace:
    """Space of natural maps M -> N, as the kernel of the naturality system.

    Unknown layout: components h_x (n^N_x x n^M_x) flattened row-major, in
    the category's object order.
    """

    def __init__(self, M: Rep, N: Rep, basis: list, offsets: dict):
        self.M = M
        self.N = N
        self.F = M.F
        self.offsets = offsets
        self.nvars = sum(N.dims[x] * M.dims[x] for x in M.cat.objects)
        self.space = Subspace(self.F, self.nvars, basis)
        self._basis = self.space.basis()
        self._pivots = self.space.echelon().pivot_columns()

    @property
    def dim(self) -> int:
        return len(self._basis)

    def basis_vectors(self) -> list:
        return self._basis

    def to_map(self, vec) -> RepMap:
        M, N = self.M, self.N
        mats = {}
        for x in M.cat.objects:
            o = self.offsets[x]
            r, c = N.dims[x], M.dims[x]
            mats[x] = Mat.unflat(self.F, r, c, vec[o:o + r * c])
        return RepMap(M, N, mats)

    def basis(self) -> list:
        return [self.to_map(v) for v in self._basis]

    def coordinates(self, h: RepMap) -> list:
        return self.space.coordinates(h.flat())

    def contains(self, h: RepMap) -> bool:
        return self.space.contains(h.flat())

    def combination(self, coeffs) -> RepMap:
        F = self.F
        v = [F.zero] * self.nvars
        for c, b in zip(coeffs, self._basis):
            if c:
                for k, x in enumerate(b):
                    if x:
                        v[k] = v[k] + c * x
        if F.p:
            v = [a % F.p for a in v]
        return self.to_map(v)

    def random(self, rng: random.Random) -> RepMap:
        return self.combination([random_scalar(self.F, rng) for _ in range(self.dim)])

    def solve(self, linear: Callable[[RepMap], list], target: list) -> "tuple[RepMap, list]":
        """Find h in this Hom space with linear(h) = target.

        ``linear`` must be linear in h.  Returns (particular solution, list of
        homogeneous solutions as RepMaps).  Raises NoSolution.
        """
        F = self.F
        images = [linear(b) for b in self.basis()]
        m = len(target)
        rows = [[images[j][i] for j in range(self.dim)] for i in range(m)]
        sol = solve_rows(F, self.dim, rows, target)
        return self.combination(sol.particular), [self.combination(k) for k in sol.kernel]


def hom_reps(M: Rep, N: Rep) -> HomSpace:
    """Hom(M, N) by solving naturality on all basis morphisms."""
    if M.cat is not N.cat or M.side != N.side:
        raise ValueError("Hom needs representations over the same category and side")
    Ml, Nl = M.as_left(), N.as_left()
    cat = Ml.cat
    F = M.F
    offsets = {}
    o = 0
    for x in cat.objects:
        offsets[x] = o
        o += N.dims[x] * M.dims[x]
    n = o
    e = Echelon(F, n)
    p = F.p
    for x in cat.objects:
        for y in cat.objects:
            if x == y and cat.dim(x, x) == 1 and cat.identities[x] == {0: F.one}:
                continue
            nMx, nNx, nMy, nNy = M.dims[x], N.dims[x], M.dims[y], N.dims[y]
            if not (nMx and nNy):
                continue
            for i in range(cat.dim(x, y)):
                A = Nl.act[(x, y)][i].a   # nNy x nNx
                B = Ml.act[(x, y)][i].a   # nMy x nMx
                # (A h_x - h_y B)[r][c]
                for r in range(nNy):
                    for c in range(nMx):
                        row = {}
                        for k in range(nNx):
                            a = A[r][k]
                            if a:
                                idx = offsets[x] + k * nMx + c
                                row[idx] = row.get(idx, 0) + a
                        for k in range(nMy):
                            b = B[k][c]
                            if b:
                                idx = offsets[y] + r * nMy + k
                                row[idx] = row.get(idx, 0) - b
                        if p:
                            row = {k: v % p for k, v in row.items()}
                        row = {k: v for k, v in row.items() if v}
                        if row:
                            e.add(row)
    basis = e.kernel()
    hs = HomSpace(M, N, basis, offsets)
    return hs


def hom_dim(M: Rep, N: Rep) -> int:
    return hom_reps(M, N).dim


# ---------------------------------------------------------------------------
# tensor products over a category
# ---------------------------------------------------------------------------


class TensorProduct:
    """M (x)_cat N for a RIGHT rep M and LEFT rep N over the same category.

    Ambient coordinates: blocks per object z in category order, within each
    block index i * dim N(z) + j for m_i (x) n_j.
    """

    def __init__(self, M: Rep, N: Rep, relations: Subspace, offsets: dict):
        self.M = M
        self.N = N
        self.F = M.F
        self.offsets = offsets
        self.relations = relations
        self.Q = QuotientSpace(relations)
        self.ambient = relations.n

    @property
    def dim(self) -> int:
        return self.Q.dim

    def pure(self, z, m, n) -> list:
        """Quotient coordinates of m (x) n in block z."""
        return self.Q.project(self.embed(z, m, n))

    def embed(self, z, m, n) -> list:
        F = self.F
        v = [F.zero] * self.ambient
        dn = self.N.dims[z]
        o = self.offsets[z]
        p = F.p
        for i, a in enumerate(m):
            if a:
                for j, b in enumerate(n):
                    if b:
                        c = a * b
                        v[o + i * dn + j] = c % p if p else c
        return v

    def section(self, k) -> "tuple":
        """(z, i, j) of the k-th quotient basis vector."""
        col = self.Q.complement[k]
        for z in reversed(self.M.cat.objects):
            if self.offsets[z] <= col and (self.M.dims[z] * self.N.dims[z]) > col - self.offsets[z]:
                r = col - self.offsets[z]
                dn = self.N.dims[z]
                return z, r // dn, r % dn
        raise IndexError(k)


def tensor(M: Rep, N: Rep) -> TensorProduct:
    if M.side != RIGHT or N.side != LEFT or M.cat is not N.cat:
        raise ValueError("tensor needs a RIGHT and a LEFT representation over one category")
    cat = M.cat
    F = M.F
    offsets = {}
    o = 0
    for z in cat.objects:
        offsets[z] = o
        o += M.dims[z] * N.dims[z]
    T = TensorProduct(M, N, Subspace(F, o), offsets)
    rel = Echelon(F, o)
    p = F.p
    for z in cat.objects:
        for w in cat.objects:
            if z == w and cat.dim(z, z) == 1 and cat.identities[z] == {0: F.one}:
                continue
            for i in range(cat.dim(z, w)):
                Ma = M.act[(z, w)][i]   # M(w) -> M(z)
                Na = N.act[(z, w)][i]   # N(z) -> N(w)
                if not (M.dims[w] and N.dims[z]):
                    continue
                for a in range(M.dims[w]):
                    mw = [F.zero] * M.dims[w]
                    mw[a] = F.one
                    mz = Ma.apply(mw)
                    for b in range(N.dims[z]):
                        nz = [F.zero] * N.dims[z]
                        nz[b] = F.one
                        nw = Na.apply(nz)
                        v = T.embed(z, mz, nz)
                        u = T.embed(w, mw, nw)
                        d = {k: (x - y) % p if p else x - y for k, (x, y) in enumerate(zip(v, u)) if x != y}
                        d = {k: x for k, x in d.items() if x}
                        if d:
                            rel.add(d)
    S = Subspace(F, o)
    S._e = rel
    return TensorProduct(M, N, S, offsets)


def tensor_map(T1: TensorProduct, T2: TensorProduct, hM: RepMap | None, hN: RepMap | None) -> Mat:
    """Matrix T1 -> T2 induced by hM: M1 -> M2 (RIGHT) and hN: N1 -> N2 (LEFT).

    ``None`` stands for the identity.
    """
    F = T1.F
    cols = []
    for k in range(T1.dim):
        z, i, j = T1.section(k)
        m = [F.zero] * T1.M.dims[z]
        m[i] = F.one
        n = [F.zero] * T1.N.dims[z]
        n[j] = F.one
        m2 = hM.mats[z].apply(m) if hM is not None else m
        n2 = hN.mats[z].apply(n) if hN is not None else n
        cols.append(T2.pure(z, m2, n2))
    return Mat.from_columns(F, cols, T2.dim) if cols else Mat(F, T2.dim, 0)


def balanced_tensor(M: Rep, N: Rep) -> TensorProduct:
    """Tensor over a one-object algebra: M a RIGHT module, N a LEFT module."""
    if len(M.cat.objects) != 1:
        raise ValueError("balanced_tensor expects modules over a one-object category")
    return tensor(M, N)


def module_from_action(A: LinCat, side: str, dim: int, action: Callable[[int], Mat], name: str = "") -> Rep:
    """Module over a one-object LinCat from the matrix of each basis element."""
    x = A.objects[0]
    mats = [action(i) for i in range(A.dim(x, x))]
    return Rep(A, side, {x: dim}, {(x, x): mats}, name=name)


# ---------------------------------------------------------------------------
# randomness
# ---------------------------------------------------------------------------


def random_scalar(F: Field, rng: random.Random):
    if F.p:
        return rng.randrange(F.p)
    return F(rng.randint(-2, 2))


def random_vector(F: Field, n: int, rng: random.Random) -> list:
    return [random_scalar(F, rng) for _ in range(n)]


def random_nonzero_vector(F: Field, n: int, rng: random.Random) -> list:
    if n == 0:
        raise ValueError("no nonzero vector in the zero space")
    while True:
        v = random_vector(F, n, rng)
        if any(v):
            return v

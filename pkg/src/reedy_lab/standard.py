"""Standard modules: endomorphism rings, orthogonality, filtrations of
representables, and counting irreducible representations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .homalg import ext1, find_iso, induce, is_projective, local_module_at
from .lincat import group_order_of_basis
from .linalg import Echelon, Mat, Subspace, solve_rows
from .reedy import ReedyStructure
from .reps import LEFT, RIGHT, Rep, hom_reps, tensor


class NotSemisimpleUnsupported(ValueError):
    """The local algebra is not semisimple, or semisimplicity cannot be decided."""


class HypothesisFailed(ValueError):
    """A projectivity hypothesis does not hold."""


# ---------------------------------------------------------------------------
# projectivity hypotheses on plus / minus
# ---------------------------------------------------------------------------


def projectivity_failures(r: ReedyStructure) -> list:
    """Pairs where plus(z, y) is not right-projective or minus(x, z) not left-projective over A_z."""
    bad = []
    ss = {z: _semisimple_or_none(r, z) for z in r.objects}
    for z in r.objects:
        if ss[z]:
            continue
        for y in r.objects:
            if y != z and r.plus[(z, y)].dim and not is_projective(r.plus_module(z, y)):
                bad.append(("plus", z, y))
            if y != z and r.minus[(y, z)].dim and not is_projective(r.minus_module(y, z)):
                bad.append(("minus", y, z))
    return bad


# ---------------------------------------------------------------------------
# local algebra structure: radical, centre, simple modules
# ---------------------------------------------------------------------------


def _local_basis(r: ReedyStructure, x) -> list:
    return r.local_elements(x)


def mult_matrix(r: ReedyStructure, x, a, side: str = "left") -> Mat:
    """Matrix of b -> a b (left) or b -> b a (right) on A_x in its canonical basis."""
    S = r.plus[(x, x)]
    basis = S.basis()
    cat = r.cat
    if side == "left":
        cols = [S.coordinates(cat.compose(x, x, x, a, b)) for b in basis]
    else:
        cols = [S.coordinates(cat.compose(x, x, x, b, a)) for b in basis]
    return Mat.from_columns(r.F, cols, len(basis))


def _trace(m: Mat):
    t = m.F.zero
    for i in range(m.rows):
        t = t + m.a[i][i]
    return t % m.F.p if m.F.p else t


def radical_dim_char0(r: ReedyStructure, x) -> int:
    """dim of the kernel of the trace form (a, b) -> tr(L_a L_b)."""
    basis = _local_basis(r, x)
    Ls = [mult_matrix(r, x, b) for b in basis]
    n = len(basis)
    G = [[_trace(Ls[i] @ Ls[j]) for j in range(n)] for i in range(n)]
    return n - Echelon(r.F, n, G).rank


def _semisimple_or_none(r: ReedyStructure, x):
    """True / False when decidable, None when unsupported."""
    if r.F.p == 0:
        return radical_dim_char0(r, x) == 0
    g = None
    if r.plus[(x, x)].dim == r.cat.dim(x, x):
        g = group_order_of_basis(r.cat, x)
    if g is None:
        g = group_order_of_basis(r.local_algebra(x), x)
    if g is not None and r.F.invertible(g):
        return True
    return None


def is_semisimple(r: ReedyStructure, x) -> bool:
    s = _semisimple_or_none(r, x)
    if s is None:
        raise NotSemisimpleUnsupported(f"cannot decide semisimplicity of the local algebra at {x!r} over {r.F.tag}")
    return s


def center_basis(r: ReedyStructure, x) -> list:
    """Basis (in A_x coordinates) of the centre."""
    basis = _local_basis(r, x)
    n = len(basis)
    e = Echelon(r.F, n)
    for b in basis:
        D = mult_matrix(r, x, b, "right") - mult_matrix(r, x, b, "left")   # a -> a b - b a
        for row in D.a:
            e.add(row)
    return e.kernel()


def _to_sympy(v, F):
    import sympy
    if F.p:
        return sympy.Integer(int(v))
    q = Fraction(str(v)) if not isinstance(v, Fraction) else v
    return sympy.Rational(q.numerator, q.denominator)


def simple_module_count(r: ReedyStructure, x, seed: int = 0, tries: int = 20) -> int | None:
    """Number of simple A_x-modules over the ground field (semisimple A_x).

    Equals the number of simple factors of the (commutative semisimple)
    centre.  A random central element z generating the centre gives
    Z = k[t]/(minpoly z), whose irreducible factors count the blocks.
    """
    import sympy
    F = r.F
    Zb = center_basis(r, x)
    d = len(Zb)
    S = r.plus[(x, x)]
    basis = S.basis()
    rng = random.Random(seed)
    one_c = S.coordinates(r.cat.identity_vec(x))

    def to_vec(c):
        v = [F.zero] * r.cat.dim(x, x)
        for k, ck in enumerate(c):
            if ck:
                v = [a + ck * b for a, b in zip(v, basis[k])]
        return [a % F.p for a in v] if F.p else v

    for _ in range(tries):
        zc = [F.zero] * len(basis)
        for b in Zb:
            t = F(rng.randint(-3, 3)) if not F.p else rng.randrange(F.p)
            zc = [a + t * c for a, c in zip(zc, b)]
        if F.p:
            zc = [a % F.p for a in zc]
        Lz = mult_matrix(r, x, to_vec(zc))
        # find the first linear dependency among 1, z, z^2, ...
        vecs = [one_c]
        cur = one_c
        while True:
            cur = Lz.apply(cur)
            ech = Echelon(F, len(basis), vecs)
            if ech.contains(cur):
                break
            vecs.append(cur)
        deg = len(vecs)
        if deg < d:
            continue
        sol = solve_rows(F, deg, [[v[i] for v in vecs] for i in range(len(basis))], cur)
        tsym = sympy.Symbol("t")
        poly = tsym ** deg
        for i, c in enumerate(sol.particular):
            poly -= _to_sympy(c, F) * tsym ** i
        if F.p:
            P = sympy.Poly(poly, tsym, modulus=F.p)
        else:
            P = sympy.Poly(poly, tsym, domain=sympy.QQ)
        _, factors = P.factor_list()
        return len(factors)
    return None


@dataclass
class IrreducibleCount:
    per_object: dict          # object -> dim of centre
    simple_modules: dict      # object -> number of simple modules over the field (or None)
    total: int
    total_simple: int | None


def count_irreducibles(r: ReedyStructure, seed: int = 0) -> IrreducibleCount:
    per, simple = {}, {}
    for x in r.sorted_objects():
        if not is_semisimple(r, x):
            raise NotSemisimpleUnsupported(f"local algebra at {x!r} has a nonzero radical")
        per[x] = len(center_basis(r, x))
        simple[x] = simple_module_count(r, x, seed=seed)
    tot_s = None if any(v is None for v in simple.values()) else sum(simple.values())
    return IrreducibleCount(per, simple, sum(per.values()), tot_s)


def verify_idempotents(r: ReedyStructure, x, elements: list) -> dict:
    """Idempotency, orthogonality and completeness of user-supplied elements of A_x."""
    cat = r.cat
    F = r.F
    ok_in = all(r.plus[(x, x)].contains(e) for e in elements)
    idem = all(cat.compose(x, x, x, e, e) == [F(v) for v in e] for e in elements)
    zero = [F.zero] * cat.dim(x, x)
    orth = all(cat.compose(x, x, x, a, b) == zero for i, a in enumerate(elements)
               for j, b in enumerate(elements) if i != j)
    total = zero
    for e in elements:
        total = [u + F(v) for u, v in zip(total, e)]
    if F.p:
        total = [u % F.p for u in total]
    complete = total == cat.identity_vec(x)
    return {"in_local_algebra": ok_in, "idempotent": idem, "orthogonal": orth, "complete": complete,
            "pass": ok_in and idem and orth and complete}


def standard_for_idempotent(r: ReedyStructure, x, e) -> Rep:
    """The summand Delta_x e: the submodule of Delta_x generated by the class of e."""
    from .reps import generated_submodule
    D = r.standard_module(x, LEFT)
    v = D.quotients[x].project(e)
    return generated_submodule(D, [(x, v)])[0]


# ---------------------------------------------------------------------------
# endomorphisms, orthogonality, Ext between standard modules
# ---------------------------------------------------------------------------


@dataclass
class EndCheck:
    obj: object
    end_dim: int
    local_dim: int
    evaluation_bijective: bool
    anti_multiplicative: bool

    @property
    def ok(self) -> bool:
        return self.end_dim == self.local_dim and self.evaluation_bijective and self.anti_multiplicative


def endomorphism_check(r: ReedyStructure, x) -> EndCheck:
    D = r.standard_module(x, LEFT)
    H = hom_reps(D, D)
    cat = r.cat
    F = r.F
    Q = D.quotients[x]
    S = r.plus[(x, x)]
    Abasis = S.basis()
    P = Mat.from_columns(F, [Q.project(a) for a in Abasis], Q.dim) if Abasis else Mat(F, Q.dim, 0)
    one = Q.project(cat.identity_vec(x))

    def ev(phi):
        w = phi.mats[x].apply(one)
        c = solve_rows(F, P.cols, P.a, w).particular
        v = [F.zero] * cat.dim(x, x)
        for k, ck in enumerate(c):
            if ck:
                v = [a + ck * b for a, b in zip(v, Abasis[k])]
        return [a % F.p for a in v] if F.p else v

    basis = H.basis()
    evs = [ev(b) for b in basis]
    rank = Echelon(F, cat.dim(x, x), evs).rank
    bij = rank == len(basis) == S.dim
    anti = True
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            lhs = ev(a @ b)
            rhs = cat.compose(x, x, x, evs[j], evs[i])
            if lhs != rhs:
                anti = False
                break
        if not anti:
            break
    return EndCheck(x, H.dim, S.dim, bij, anti)


@dataclass
class TheoremASuite:
    endomorphisms: dict
    hom_table: dict
    ext_table: dict
    hom_violations: list
    ext_violations: list
    hypotheses: list
    passed: bool


def theorem_a_suite(r: ReedyStructure, with_ext: bool = True) -> TheoremASuite:
    hyp = projectivity_failures(r)
    ends = {x: endomorphism_check(r, x) for x in r.objects}
    homs, exts = {}, {}
    hv, ev = [], []
    for x in r.objects:
        for y in r.objects:
            Dx, Dy = r.standard_module(x), r.standard_module(y)
            h = hom_reps(Dx, Dy).dim if x != y else ends[x].end_dim
            homs[(x, y)] = h
            if h and not (x == y or r.degree[x] > r.degree[y]):
                hv.append((x, y, h))
            if with_ext:
                e = ext1(Dx, Dy).dim
                exts[(x, y)] = e
                if e and not r.degree[x] > r.degree[y]:
                    ev.append((x, y, e))
    ok = all(v.ok for v in ends.values()) and not hv and not ev
    return TheoremASuite(ends, homs, exts, hv, ev, hyp, ok)


def induced_description_check(r: ReedyStructure, x, seed: int = 0) -> bool:
    """Delta_x agrees with the induction of A_x (concentrated at x) along minus."""
    sub = r.minus_subcategory()
    V = local_module_at(r, x, sub)
    I = induce(sub, V).rep
    return find_iso(I, r.standard_module(x), random.Random(seed)) is not None


# ---------------------------------------------------------------------------
# filtration of representables
# ---------------------------------------------------------------------------


@dataclass
class FiltrationLevel:
    degree: int
    factor_dims: dict           # object -> dim of the layer (from the actual filtration)
    tensor_dims: dict           # object -> sum over z of dim(Delta_z(y) (x)_{A_z} minus(x, z))


def filtration_of_representable(r: ReedyStructure, x, check_hypotheses: bool = True) -> list:
    """Layers of hom(x, -) by the ideals below each degree, with tensor-formula dims."""
    if check_hypotheses:
        bad = projectivity_failures(r)
        if bad:
            raise HypothesisFailed(f"projectivity fails at {bad[0]}")
    cat = r.cat
    levels = []
    prev = {y: Subspace(r.F, cat.dim(x, y)) for y in cat.objects}
    for beta in r.degrees():
        if beta > r.degree[x]:
            break
        I = r.ideal(beta + 1)
        cur = {y: I[(x, y)] for y in cat.objects}
        fdims = {y: cur[y].dim - prev[y].dim for y in cat.objects}
        tdims = {y: 0 for y in cat.objects}
        for z in r.objects:
            if r.degree[z] != beta or r.minus[(x, z)].dim == 0:
                continue
            Mn = r.minus_module(x, z)
            for y in cat.objects:
                Dz = _standard_as_right_local(r, z, y)
                tdims[y] += tensor(Dz, Mn).dim
        levels.append(FiltrationLevel(beta, fdims, tdims))
        prev = cur
    return levels


def _standard_as_right_local(r: ReedyStructure, z, y) -> Rep:
    """Delta_z(y) as a RIGHT A_z-module (precomposition)."""
    D = r.standard_module(z)
    Q = D.quotients[y]
    A = r.local_algebra(z)
    inc = A.inclusion[(z, z)]
    mats = []
    for k in range(inc.cols):
        a = inc.column(k)
        cols = [Q.project(r.cat.compose(z, z, y, Q.section(i), a)) for i in range(Q.dim)]
        mats.append(Mat.from_columns(r.F, cols, Q.dim) if cols else Mat(r.F, 0, 0))
    return Rep(A, RIGHT, {z: Q.dim}, {(z, z): mats})

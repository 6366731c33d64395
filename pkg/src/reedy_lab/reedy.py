"""Generalized linear Reedy structures on a :class:`LinCat`.

A structure consists of a degree per object and two families of subspaces:
``plus(x, y)`` (degree raising) and ``minus(x, y)`` (degree lowering) of the
hom spaces, sharing the local algebra ``plus(x, x) = minus(x, x)``.  The
central check is that composition

    rho: (+)_z plus(z, y) (x)_{A_z} minus(x, z) -> hom(x, y)

is bijective for every pair (x, y).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable

from .lincat import LinCat
from .linalg import Echelon, Mat, Subspace, solve_rows
from .reps import (LEFT, RIGHT, Rep, TensorProduct, quotient_rep, representable,
                   tensor)


class RhoNotIso(ValueError):
    """The composition map rho is not bijective at some pair."""


class AntisymmetryViolation(ValueError):
    """The minus- or plus-generated relation is not antisymmetric."""


@dataclass
class RhoBlock:
    """One summand of the domain of rho at (x, y): the middle object z."""

    middle: object
    tensor: TensorProduct
    images: list          # composite p o m in hom(x, y) for each quotient basis vector
    plus_basis: list      # basis of plus(z, y) as vectors in hom(z, y)
    minus_basis: list     # basis of minus(x, z) as vectors in hom(x, z)

    @property
    def dim(self) -> int:
        return self.tensor.dim


@dataclass
class Factorization:
    """Unique decomposition of a morphism through rho."""

    source: object
    target: object
    components: list      # (z, coordinates in the block's tensor quotient basis)
    terms: list           # (z, coefficient, plus vector, minus vector) pure-tensor expansion

    def recompose(self, cat: LinCat) -> list:
        out = [cat.F.zero] * cat.dim(self.source, self.target)
        p = cat.F.p
        for z, c, pv, mv in self.terms:
            v = cat.compose(self.source, z, self.target, pv, mv)
            out = [a + c * b for a, b in zip(out, v)]
        if p:
            out = [a % p for a in out]
        return out


class ReedyStructure:
    """Degree function plus plus/minus subspace designations."""

    def __init__(self, cat: LinCat, degree: dict, plus: dict, minus: dict, name: str = ""):
        self.cat = cat
        self.F = cat.F
        self.degree = dict(degree)
        full = {}
        for x in cat.objects:
            for y in cat.objects:
                n = cat.dim(x, y)
                full[(x, y)] = n
        self.plus = {k: plus.get(k) if plus.get(k) is not None else Subspace(self.F, n) for k, n in full.items()}
        self.minus = {k: minus.get(k) if minus.get(k) is not None else Subspace(self.F, n) for k, n in full.items()}
        self.name = name or cat.name
        self._blocks = {}
        self._local = {}
        self._fact_cache = {}
        self._rho_echelon = {}
        self._op = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_predicates(cls, cat: LinCat, degree: dict, is_plus: Callable, is_minus: Callable, name: str = ""):
        """Basis-aligned structure: a basis morphism is in plus/minus by predicate."""
        F = cat.F
        plus, minus = {}, {}
        for x in cat.objects:
            for y in cat.objects:
                n = cat.dim(x, y)
                labs = cat.labels[(x, y)]
                plus[(x, y)] = Subspace(F, n, [cat.unit_vec(x, y, i) for i, l in enumerate(labs) if is_plus(x, y, l)])
                minus[(x, y)] = Subspace(F, n, [cat.unit_vec(x, y, i) for i, l in enumerate(labs) if is_minus(x, y, l)])
        return cls(cat, degree, plus, minus, name=name)

    # -- basic accessors ----------------------------------------------------
    @property
    def objects(self) -> list:
        return self.cat.objects

    def sorted_objects(self) -> list:
        return sorted(self.cat.objects, key=lambda x: (self.degree[x], self.cat.obj_index[x]))

    def max_degree(self) -> int:
        return max(self.degree.values()) if self.degree else -1

    def degrees(self) -> list:
        return sorted(set(self.degree.values()))

    def op(self) -> "ReedyStructure":
        if self._op is None:
            o = ReedyStructure(self.cat.op(), self.degree,
                               {(x, y): self.minus[(y, x)] for x in self.objects for y in self.objects},
                               {(x, y): self.plus[(y, x)] for x in self.objects for y in self.objects},
                               name=f"{self.name}^op")
            o._op = self
            self._op = o
        return self._op

    def swapped(self) -> "ReedyStructure":
        """Plus and minus exchanged (a negative control for the axioms)."""
        return ReedyStructure(self.cat, self.degree, self.minus, self.plus, name=f"{self.name}-swapped")

    def is_direct(self) -> bool:
        return all(self.plus[k].dim == self.cat.dim(*k) for k in self.plus)

    def is_inverse(self) -> bool:
        return all(self.minus[k].dim == self.cat.dim(*k) for k in self.minus)

    # -- local algebras and their modules -------------------------------------
    def local_algebra(self, x) -> LinCat:
        """A_x: the one-object sub-LinCat on plus(x, x)."""
        A = self._local.get(x)
        if A is None:
            A = self.cat.subcategory({(x, x): self.plus[(x, x)]}, objects=[x], name=f"A0({x})")
            self._local[x] = A
        return A

    def local_dim(self, x) -> int:
        return self.plus[(x, x)].dim

    def local_elements(self, x) -> list:
        """Basis of A_x as vectors of hom(x, x)."""
        return self.plus[(x, x)].basis()

    def _module_on_subspace(self, S: Subspace, A: LinCat, side: str, act_vec: Callable) -> Rep:
        z = A.objects[0]
        basis = S.basis()
        mats = []
        inc = A.inclusion[(z, z)]
        for k in range(inc.cols):
            a = inc.column(k)
            cols = [S.coordinates(act_vec(a, b)) for b in basis]
            mats.append(Mat.from_columns(self.F, cols, len(basis)) if cols else Mat(self.F, 0, 0))
        return Rep(A, side, {z: len(basis)}, {(z, z): mats})

    def plus_module(self, z, y) -> Rep:
        """plus(z, y) as a RIGHT A_z-module (precomposition)."""
        return self._module_on_subspace(self.plus[(z, y)], self.local_algebra(z), RIGHT,
                                        lambda a, b: self.cat.compose(z, z, y, b, a))

    def minus_module(self, x, z) -> Rep:
        """minus(x, z) as a LEFT A_z-module (postcomposition)."""
        return self._module_on_subspace(self.minus[(x, z)], self.local_algebra(z), LEFT,
                                        lambda a, b: self.cat.compose(x, z, z, a, b))

    def hom_module_right(self, z, y) -> Rep:
        """hom(z, y) as a RIGHT A_z-module."""
        return self._module_on_subspace(Subspace.full(self.F, self.cat.dim(z, y)), self.local_algebra(z), RIGHT,
                                        lambda a, b: self.cat.compose(z, z, y, b, a))

    def hom_module_left(self, x, z) -> Rep:
        """hom(x, z) as a LEFT A_z-module."""
        return self._module_on_subspace(Subspace.full(self.F, self.cat.dim(x, z)), self.local_algebra(z), LEFT,
                                        lambda a, b: self.cat.compose(x, z, z, a, b))

    def regular_module(self, x, side: str = LEFT) -> Rep:
        S = self.plus[(x, x)]
        if side == LEFT:
            return self._module_on_subspace(S, self.local_algebra(x), LEFT,
                                            lambda a, b: self.cat.compose(x, x, x, a, b))
        return self._module_on_subspace(S, self.local_algebra(x), RIGHT,
                                        lambda a, b: self.cat.compose(x, x, x, b, a))

    # -- rho ------------------------------------------------------------------
    def rho_blocks(self, x, y) -> list:
        key = (x, y)
        if key in self._blocks:
            return self._blocks[key]
        blocks = []
        for z in self.sorted_objects():
            if self.plus[(z, y)].dim == 0 or self.minus[(x, z)].dim == 0:
                continue
            P = self.plus_module(z, y)
            Mn = self.minus_module(x, z)
            T = tensor(P, Mn)
            pb = self.plus[(z, y)].basis()
            mb = self.minus[(x, z)].basis()
            images = []
            for k in range(T.dim):
                _, i, j = T.section(k)
                images.append(self.cat.compose(x, z, y, pb[i], mb[j]))
            blocks.append(RhoBlock(z, T, images, pb, mb))
        self._blocks[key] = blocks
        return blocks

    def rho_map(self, x, y) -> "tuple[Mat, list]":
        """(matrix of rho into hom(x, y), [(z, block dim)] in domain order)."""
        cols = []
        layout = []
        for b in self.rho_blocks(x, y):
            cols.extend(b.images)
            layout.append((b.middle, b.dim))
        n = self.cat.dim(x, y)
        M = Mat.from_columns(self.F, cols, n) if cols else Mat(self.F, n, 0)
        return M, layout

    def reedy_factorize(self, x, y, f) -> Factorization:
        """Solve rho(c) = f; raises RhoNotIso if rho is not bijective at (x, y)."""
        key = (x, y, tuple(f))
        hit = self._fact_cache.get(key)
        if hit is not None:
            return hit
        M, layout = self.rho_map(x, y)
        if M.cols != M.rows or M.rank() != M.rows:
            raise RhoNotIso(f"rho at ({x!r}, {y!r}) has domain {M.cols}, rank {M.rank()}, target {M.rows}")
        sol = solve_rows(self.F, M.cols, M.a, f)
        c = sol.particular
        comps, terms = [], []
        o = 0
        for b in self.rho_blocks(x, y):
            part = c[o:o + b.dim]
            o += b.dim
            if any(part):
                comps.append((b.middle, part))
            for k, coef in enumerate(part):
                if coef:
                    _, i, j = b.tensor.section(k)
                    terms.append((b.middle, coef, b.plus_basis[i], b.minus_basis[j]))
        out = Factorization(x, y, comps, terms)
        self._fact_cache[key] = out
        return out

    # -- axioms ---------------------------------------------------------------
    def check(self) -> dict:
        """Per-axiom verdicts: a, b, c, subcategory, d (rho bijective)."""
        cat = self.cat
        self.F
        objs = cat.objects
        report = {"a": [], "b": [], "c": [], "subcategory": [], "d": [], "blocks": {}}
        for x, y in product(objs, repeat=2):
            if self.plus[(x, y)].dim and x != y and not self.degree[y] > self.degree[x]:
                report["a"].append((x, y))
            if self.minus[(x, y)].dim and x != y and not self.degree[x] > self.degree[y]:
                report["b"].append((x, y))
        for x in objs:
            if self.plus[(x, x)] != self.minus[(x, x)]:
                report["c"].append(x)
        for name, fam in (("plus", self.plus), ("minus", self.minus)):
            for x in objs:
                if not fam[(x, x)].contains(cat.identity_vec(x)):
                    report["subcategory"].append((name, "identity", x))
            for x, y, z in product(objs, repeat=3):
                A, B = fam[(x, y)], fam[(y, z)]
                if not (A.dim and B.dim):
                    continue
                for g in B.basis():
                    for f in A.basis():
                        if not fam[(x, z)].contains(cat.compose(x, y, z, g, f)):
                            report["subcategory"].append((name, "composition", x, y, z))
                            break
                    else:
                        continue
                    break
        structural_ok = not (report["a"] or report["b"] or report["c"] or report["subcategory"])
        if structural_ok:
            for x, y in product(objs, repeat=2):
                M, layout = self.rho_map(x, y)
                r = M.rank()
                n = cat.dim(x, y)
                report["blocks"][(x, y)] = layout
                if not (M.cols == n and r == n):
                    report["d"].append({"pair": (x, y), "domain": M.cols, "rank": r, "target": n,
                                        "defect": max(n - r, M.cols - r)})
        report["pass"] = structural_ok and not report["d"]
        return report

    # -- orders ---------------------------------------------------------------
    def _closure(self, edges) -> dict:
        objs = self.cat.objects
        rel = {(a, b): a == b or (a, b) in edges for a in objs for b in objs}
        for k in objs:
            for a in objs:
                if rel[(a, k)]:
                    for b in objs:
                        if rel[(k, b)]:
                            rel[(a, b)] = True
        for a in objs:
            for b in objs:
                if a != b and rel[(a, b)] and rel[(b, a)]:
                    raise AntisymmetryViolation(f"{a!r} and {b!r} precede each other")
        return rel

    def partial_orders(self) -> "tuple[dict, dict]":
        """(lower, upper): lower[(y, x)] iff y precedes x via minus chains from x;
        upper[(x, y)] iff x precedes y via plus chains from x."""
        objs = self.cat.objects
        lower_edges = {(y, x) for x in objs for y in objs if self.minus[(x, y)].dim}
        upper_edges = {(x, y) for x in objs for y in objs if self.plus[(x, y)].dim}
        return self._closure(lower_edges), self._closure(upper_edges)

    # -- ideals, truncations, quotients ---------------------------------------
    def ideal(self, alpha: int) -> dict:
        """Per pair: span of composites through objects of degree < alpha."""
        cat = self.cat
        out = {}
        for x in cat.objects:
            for y in cat.objects:
                e = Echelon(self.F, cat.dim(x, y))
                for z in cat.objects:
                    if self.degree[z] >= alpha:
                        continue
                    P, Mn = self.plus[(z, y)], self.minus[(x, z)]
                    if not (P.dim and Mn.dim):
                        continue
                    for p in P.basis():
                        for m in Mn.basis():
                            e.add(cat.compose(x, z, y, p, m))
                S = Subspace(self.F, cat.dim(x, y))
                S._e = e
                out[(x, y)] = S
        return out

    def ideal_via_rho(self, alpha: int) -> dict:
        """Same ideal, from the images of rho blocks with degree < alpha."""
        cat = self.cat
        out = {}
        for x in cat.objects:
            for y in cat.objects:
                vecs = []
                for b in self.rho_blocks(x, y):
                    if self.degree[b.middle] < alpha:
                        vecs.extend(b.images)
                out[(x, y)] = Subspace(self.F, cat.dim(x, y), vecs)
        return out

    def ideal_at(self, x) -> dict:
        """The slice of the ideal below d(x) starting at x: y -> subspace of hom(x, y)."""
        I = self._ideal_cached(self.degree[x])
        return {y: I[(x, y)] for y in self.cat.objects}

    def _ideal_cached(self, alpha):
        if not hasattr(self, "_ideals"):
            self._ideals = {}
        if alpha not in self._ideals:
            self._ideals[alpha] = self.ideal(alpha)
        return self._ideals[alpha]

    def ideal_is_two_sided(self, I: dict) -> list:
        cat = self.cat
        bad = []
        for x, y, z in product(cat.objects, repeat=3):
            for v in I[(x, y)].basis():
                for j in range(cat.dim(y, z)):
                    if not I[(x, z)].contains(cat.compose(x, y, z, cat.unit_vec(y, z, j), v)):
                        bad.append(("post", x, y, z))
                        break
            for v in I[(y, z)].basis():
                for i in range(cat.dim(x, y)):
                    if not I[(x, z)].contains(cat.compose(x, y, z, v, cat.unit_vec(x, y, i))):
                        bad.append(("pre", x, y, z))
                        break
        return bad

    def truncate(self, alpha: int) -> "ReedyStructure":
        """Full subcategory on objects of degree < alpha with the induced structure."""
        objs = [x for x in self.cat.objects if self.degree[x] < alpha]
        sub = self.cat.full_subcategory(objs, name=f"{self.cat.name}<{alpha}")
        return ReedyStructure(sub, {x: self.degree[x] for x in objs},
                              {(x, y): self.plus[(x, y)] for x in objs for y in objs},
                              {(x, y): self.minus[(x, y)] for x in objs for y in objs},
                              name=f"{self.name}<{alpha}")

    def plus_subcategory(self, objects=None) -> LinCat:
        return self.cat.subcategory(self.plus, objects=objects, name=f"{self.cat.name}+")

    def minus_subcategory(self, objects=None) -> LinCat:
        return self.cat.subcategory(self.minus, objects=objects, name=f"{self.cat.name}-")

    def quotient_category(self, alpha: int) -> "tuple[ReedyStructure, dict]":
        """Quotient by the ideal of degree < alpha, with induced structure."""
        I = self.ideal(alpha)
        Q, qs = self.cat.quotient(I, name=f"{self.cat.name}/I{alpha}")
        plus, minus = {}, {}
        for k, q in qs.items():
            plus[k] = Subspace(self.F, q.dim, [q.project(v) for v in self.plus[k].basis()])
            minus[k] = Subspace(self.F, q.dim, [q.project(v) for v in self.minus[k].basis()])
        return ReedyStructure(Q, self.degree, plus, minus, name=f"{self.name}/I{alpha}"), qs

    # -- standard modules -----------------------------------------------------
    def standard_module(self, x, side: str = LEFT) -> Rep:
        """LEFT: hom(x, -) modulo the ideal below d(x).  RIGHT: hom(-, x) modulo it."""
        if side == LEFT:
            key = ("std", x)
            if not hasattr(self, "_std"):
                self._std = {}
            if key not in self._std:
                P = representable(self.cat, x, LEFT)
                I = self.ideal_at(x)
                D, proj = quotient_rep(P, I)
                D.name = f"Delta_{x}"
                D.projection = proj
                self._std[key] = D
            return self._std[key]
        D = self.op().standard_module(x, LEFT)
        R = D.as_right_of_op()
        R.name = f"Delta^{x}"
        return R

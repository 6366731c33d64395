"""Finite k-linear categories given by structure constants.

A :class:`LinCat` stores, for every ordered pair of objects, an ordered basis
of the hom space and, for every composable triple, the structure constants
``g o f`` of basis morphisms.  Convention: ``hom(x, y)`` holds morphisms
``x -> y`` and ``compose(x, y, z, g, f)`` is ``g o f`` for ``f: x -> y`` and
``g: y -> z``.

Concrete (set-level) categories are handled by :class:`ConcreteCat` and turned
into linear ones by :func:`linearize`.
"""
from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Sequence

from .linalg import Field, Mat, Subspace, QuotientSpace, _sparse


class CategoryAxiomError(ValueError):
    """A composition table violates associativity, unitality or closure."""


# ---------------------------------------------------------------------------
# concrete categories
# ---------------------------------------------------------------------------


class ConcreteCat:
    """A finite category given by explicit morphism labels and a composition rule.

    ``homs[(x, y)]`` lists the labels of morphisms ``x -> y``;
    ``compose_fn(x, y, z, g, f)`` returns the label of ``g o f``.
    """

    def __init__(self, objects: Sequence, homs: dict, identity: dict,
                 compose_fn: Callable, name: str = "", carriers: dict | None = None):
        self.objects = list(objects)
        self.homs = {(x, y): list(homs.get((x, y), [])) for x in self.objects for y in self.objects}
        self.identity = dict(identity)
        self._compose = compose_fn
        self.name = name
        self.carriers = carriers or {}
        self._index = {(x, y): {m: i for i, m in enumerate(ms)} for (x, y), ms in self.homs.items()}

    def hom(self, x, y) -> list:
        return self.homs[(x, y)]

    def compose(self, x, y, z, g, f):
        return self._compose(x, y, z, g, f)

    def index(self, x, y, label) -> int:
        return self._index[(x, y)][label]

    def check_axioms(self) -> list:
        """Return a list of violations (empty when the category is valid)."""
        problems = []
        obs = self.objects
        for x in obs:
            if self.identity[x] not in self._index[(x, x)]:
                problems.append(("identity-missing", x))
        for x, y, z in product(obs, repeat=3):
            for f in self.homs[(x, y)]:
                for g in self.homs[(y, z)]:
                    h = self.compose(x, y, z, g, f)
                    if h not in self._index[(x, z)]:
                        problems.append(("not-closed", x, y, z, g, f))
        if problems:
            return problems
        for x, y in product(obs, repeat=2):
            for f in self.homs[(x, y)]:
                if self.compose(x, y, y, self.identity[y], f) != f or self.compose(x, x, y, f, self.identity[x]) != f:
                    problems.append(("unit", x, y, f))
        for w, x, y, z in product(obs, repeat=4):
            for f in self.homs[(w, x)]:
                for g in self.homs[(x, y)]:
                    gf = self.compose(w, x, y, g, f)
                    for h in self.homs[(y, z)]:
                        a = self.compose(w, y, z, h, gf)
                        b = self.compose(w, x, z, self.compose(x, y, z, h, g), f)
                        if a != b:
                            problems.append(("associativity", w, x, y, z, h, g, f))
                            return problems
        return problems

    def automorphisms(self, x) -> list:
        """Invertible endomorphisms of x."""
        idx = self.identity[x]
        ends = self.homs[(x, x)]
        return [f for f in ends if any(self.compose(x, x, x, g, f) == idx and self.compose(x, x, x, f, g) == idx for g in ends)]

    def is_ei(self) -> bool:
        return all(len(self.automorphisms(x)) == len(self.homs[(x, x)]) for x in self.objects)

    def skeletal_violations(self) -> list:
        """Pairs of distinct objects joined by mutually inverse morphisms."""
        bad = []
        for i, x in enumerate(self.objects):
            for y in self.objects[i + 1:]:
                found = False
                for f in self.homs[(x, y)]:
                    for g in self.homs[(y, x)]:
                        if (self.compose(x, y, x, g, f) == self.identity[x]
                                and self.compose(y, x, y, f, g) == self.identity[y]):
                            found = True
                            break
                    if found:
                        break
                if found:
                    bad.append((x, y))
        return bad

    def is_mono(self, x, y, f) -> bool:
        """f: x -> y is left-cancellable, checked over all parallel pairs."""
        for w in self.objects:
            seen = {}
            for u in self.homs[(w, x)]:
                key = self.compose(w, x, y, f, u)
                if key in seen and seen[key] != u:
                    return False
                seen[key] = u
        return True


# ---------------------------------------------------------------------------
# linear categories
# ---------------------------------------------------------------------------


class LinCat:
    """Finite k-linear category given by bases and structure constants.

    ``structure(x, y, z)`` must return a table ``T`` with ``T[j][i]`` the
    sparse coordinates (dict index -> scalar) in ``B(x, z)`` of
    ``B(y, z)[j] o B(x, y)[i]``.  Tables are computed lazily and cached.
    """

    def __init__(self, F: Field, objects: Sequence, labels: dict, structure: Callable,
                 identities: dict, name: str = "", parent: "LinCat | None" = None,
                 inclusion: dict | None = None):
        self.F = F
        self.objects = list(objects)
        self.obj_index = {x: i for i, x in enumerate(self.objects)}
        self.labels = {(x, y): list(labels.get((x, y), [])) for x in self.objects for y in self.objects}
        self._structure = structure
        self._tables: dict = {}
        self.identities = {x: dict(v) for x, v in identities.items()}
        self.name = name
        self.parent = parent
        self.inclusion = inclusion or {}
        self._op: LinCat | None = None
        self._label_index = None

    # -- basic data -------------------------------------------------------
    def dim(self, x, y) -> int:
        return len(self.labels[(x, y)])

    def label_index(self, x, y, label) -> int:
        if self._label_index is None:
            self._label_index = {k: {l: i for i, l in enumerate(v)} for k, v in self.labels.items()}
        return self._label_index[(x, y)][label]

    def table(self, x, y, z):
        key = (x, y, z)
        t = self._tables.get(key)
        if t is None:
            if self.dim(x, y) == 0 or self.dim(y, z) == 0:
                t = [[{} for _ in range(self.dim(x, y))] for _ in range(self.dim(y, z))]
            else:
                t = self._structure(x, y, z)
            self._tables[key] = t
        return t

    def identity_vec(self, x) -> list:
        v = [self.F.zero] * self.dim(x, x)
        for k, c in self.identities[x].items():
            v[k] = c
        return v

    def unit_vec(self, x, y, i) -> list:
        v = [self.F.zero] * self.dim(x, y)
        v[i] = self.F.one
        return v

    def compose(self, x, y, z, g, f) -> list:
        """g o f for coordinate vectors f in hom(x, y) and g in hom(y, z)."""
        F = self.F
        p = F.p
        out = [F.zero] * self.dim(x, z)
        T = self.table(x, y, z)
        fs = _sparse(f, F)
        gs = _sparse(g, F)
        for j, gj in gs.items():
            row = T[j]
            for i, fi in fs.items():
                c = gj * fi
                for k, v in row[i].items():
                    out[k] = out[k] + c * v
        if p:
            out = [v % p for v in out]
        return out

    def compose_basis(self, x, y, z, j, i) -> dict:
        return self.table(x, y, z)[j][i]

    def post_matrix(self, x, y, z, g) -> Mat:
        """Matrix of f -> g o f from hom(x, y) to hom(x, z)."""
        cols = [self.compose(x, y, z, g, self.unit_vec(x, y, i)) for i in range(self.dim(x, y))]
        return Mat.from_columns(self.F, cols, self.dim(x, z))

    def pre_matrix(self, x, y, z, f) -> Mat:
        """Matrix of g -> g o f from hom(y, z) to hom(x, z)."""
        cols = [self.compose(x, y, z, self.unit_vec(y, z, j), f) for j in range(self.dim(y, z))]
        return Mat.from_columns(self.F, cols, self.dim(x, z))

    def order_key(self, x):
        return self.obj_index[x]

    def total_dim(self) -> int:
        return sum(len(v) for v in self.labels.values())

    def hom_dims(self) -> dict:
        return {(x, y): self.dim(x, y) for x in self.objects for y in self.objects}

    # -- derived categories -----------------------------------------------
    def op(self) -> "LinCat":
        if self._op is None:
            base = self

            def structure(x, y, z):
                # op: f in op(x,y) = base(y,x), g in op(y,z) = base(z,y); g o_op f = f o g
                T = base.table(z, y, x)
                return [[T[i][j] for i in range(base.dim(y, x))] for j in range(base.dim(z, y))]

            labels = {(x, y): base.labels[(y, x)] for x in base.objects for y in base.objects}
            o = LinCat(self.F, self.objects, labels, structure, self.identities,
                       name=f"{self.name}^op")
            o._op = self
            self._op = o
        return self._op

    def full_subcategory(self, objects: Iterable, name: str = "") -> "LinCat":
        objs = [x for x in self.objects if x in set(objects)]
        base = self
        labels = {(x, y): base.labels[(x, y)] for x in objs for y in objs}
        inc = {(x, y): Mat.identity(self.F, base.dim(x, y)) for x in objs for y in objs}
        return LinCat(self.F, objs, labels, lambda x, y, z: base.table(x, y, z),
                      {x: base.identities[x] for x in objs}, name=name or f"{self.name}|{len(objs)}",
                      parent=base, inclusion=inc)

    def subcategory(self, subspaces: dict, objects: Iterable | None = None, name: str = "") -> "LinCat":
        """Wide (or restricted) subcategory with hom(x, y) = subspaces[(x, y)].

        Basis = canonical RREF basis of each subspace.  Raises
        CategoryAxiomError if composition leaves the subspaces or an identity
        is missing.
        """
        objs = list(self.objects) if objects is None else [x for x in self.objects if x in set(objects)]
        F = self.F
        base = self
        bases = {}
        labels = {}
        for x in objs:
            for y in objs:
                S = subspaces.get((x, y))
                rows = S.basis() if S is not None else []
                bases[(x, y)] = rows
                labs = []
                for i, r in enumerate(rows):
                    nz = [k for k, v in enumerate(r) if v]
                    if len(nz) == 1 and r[nz[0]] == F.one:
                        labs.append(base.labels[(x, y)][nz[0]])
                    else:
                        labs.append(("comb", i))
                labels[(x, y)] = labs
        pivots = {k: [next(c for c, v in enumerate(r) if v) for r in rows] for k, rows in bases.items()}
        spaces = {k: subspaces.get(k) for k in bases}

        def coords(x, z, v):
            S = spaces[(x, z)]
            if S is None or not S.contains(v):
                raise CategoryAxiomError(f"composite leaves subspace at ({x!r}, {z!r})")
            return {i: v[c] for i, c in enumerate(pivots[(x, z)]) if v[c]}

        def structure(x, y, z):
            return [[coords(x, z, base.compose(x, y, z, g, f)) for f in bases[(x, y)]] for g in bases[(y, z)]]

        identities = {}
        for x in objs:
            idv = base.identity_vec(x)
            identities[x] = coords(x, x, idv)
        inc = {k: Mat.from_columns(F, rows, base.dim(*k)) if rows else Mat(F, base.dim(*k), 0)
               for k, rows in bases.items()}
        return LinCat(F, objs, labels, structure, identities, name=name or f"sub({self.name})",
                      parent=base, inclusion=inc)

    def quotient(self, ideal: dict, objects: Iterable | None = None, name: str = "") -> "tuple[LinCat, dict]":
        """Quotient category by a two-sided ideal (dict of Subspaces).

        Returns (category, projections) with projections[(x, y)] a
        QuotientSpace whose complement coordinates index the new basis.
        """
        objs = list(self.objects) if objects is None else [x for x in self.objects if x in set(objects)]
        F = self.F
        base = self
        qs = {}
        labels = {}
        for x in objs:
            for y in objs:
                S = ideal.get((x, y)) or Subspace(F, base.dim(x, y))
                Q = QuotientSpace(S)
                qs[(x, y)] = Q
                labels[(x, y)] = [base.labels[(x, y)][c] for c in Q.complement]

        def structure(x, y, z):
            Qz = qs[(x, z)]
            out = []
            for j in range(qs[(y, z)].dim):
                g = qs[(y, z)].section(j)
                row = []
                for i in range(qs[(x, y)].dim):
                    f = qs[(x, y)].section(i)
                    v = Qz.project(base.compose(x, y, z, g, f))
                    row.append({k: c for k, c in enumerate(v) if c})
                out.append(row)
            return out

        identities = {}
        for x in objs:
            v = qs[(x, x)].project(base.identity_vec(x))
            identities[x] = {k: c for k, c in enumerate(v) if c}
        cat = LinCat(F, objs, labels, structure, identities, name=name or f"quot({self.name})")
        return cat, qs

    # -- axioms --------------------------------------------------------------
    def check_axioms(self) -> list:
        """Violations of associativity or unitality on basis morphisms."""
        problems = []
        obs = self.objects
        F = self.F
        for x, y in product(obs, repeat=2):
            for i in range(self.dim(x, y)):
                f = self.unit_vec(x, y, i)
                if self.compose(x, y, y, self.identity_vec(y), f) != f:
                    problems.append(("left-unit", x, y, self.labels[(x, y)][i]))
                if self.compose(x, x, y, f, self.identity_vec(x)) != f:
                    problems.append(("right-unit", x, y, self.labels[(x, y)][i]))
        if problems:
            return problems
        for w, x, y, z in product(obs, repeat=4):
            if not (self.dim(w, x) and self.dim(x, y) and self.dim(y, z)):
                continue
            Twy = self.table(w, x, y)
            Txz = self.table(x, y, z)
            Twyz = self.table(w, y, z)
            Twxz = self.table(w, x, z)
            for k in range(self.dim(y, z)):
                for j in range(self.dim(x, y)):
                    hg = Txz[k][j]
                    for i in range(self.dim(w, x)):
                        gf = Twy[j][i]
                        left = {}
                        for m, c in gf.items():
                            for n, d in Twyz[k][m].items():
                                left[n] = left.get(n, 0) + c * d
                        right = {}
                        for m, c in hg.items():
                            for n, d in Twxz[m][i].items():
                                right[n] = right.get(n, 0) + c * d
                        if F.p:
                            left = {a: b % F.p for a, b in left.items()}
                            right = {a: b % F.p for a, b in right.items()}
                        left = {a: b for a, b in left.items() if b}
                        right = {a: b for a, b in right.items() if b}
                        if left != right:
                            problems.append(("associativity", w, x, y, z,
                                             self.labels[(y, z)][k], self.labels[(x, y)][j], self.labels[(w, x)][i]))
                            return problems
        return problems

    def __repr__(self):
        return f"LinCat({self.name or '?'}, {len(self.objects)} objects, field {self.F.tag})"


def linearize(c: ConcreteCat, F: Field, check: bool = True) -> LinCat:
    """k-linearization: basis = morphism labels, structure constants 0/1."""
    if check:
        problems = c.check_axioms()
        if problems:
            raise CategoryAxiomError(f"{c.name}: {problems[0]}")
    one = F.one

    def structure(x, y, z):
        hz = c._index[(x, z)]
        return [[{hz[c.compose(x, y, z, g, f)]: one} for f in c.homs[(x, y)]] for g in c.homs[(y, z)]]

    identities = {x: {c.index(x, x, c.identity[x]): one} for x in c.objects}
    L = LinCat(F, c.objects, c.homs, structure, identities, name=c.name)
    L.concrete = c
    return L


def one_object(F: Field, labels: Sequence, mult: Callable, identity: dict, name: str = "", obj="*") -> LinCat:
    """One-object LinCat (an algebra) from a multiplication of basis indices.

    ``mult(j, i)`` returns sparse coordinates of ``b_j * b_i`` (b_j after b_i).
    """
    n = len(labels)

    def structure(x, y, z):
        return [[dict(mult(j, i)) for i in range(n)] for j in range(n)]

    return LinCat(F, [obj], {(obj, obj): list(labels)}, structure, {obj: identity}, name=name)


def group_algebra(F: Field, elements: Sequence, mul: Callable, name: str = "") -> LinCat:
    """Group algebra kG with basis the group elements; mul(g, h) = g*h."""
    idx = {g: i for i, g in enumerate(elements)}
    e = next(g for g in elements if all(mul(g, h) == h for h in elements))
    return one_object(F, list(elements), lambda j, i: {idx[mul(elements[j], elements[i])]: F.one},
                      {idx[e]: F.one}, name=name or "kG")


def group_order_of_basis(L: LinCat, x) -> int | None:
    """|G| when the basis of L(x, x) is a group under composition, else None."""
    n = L.dim(x, x)
    if n == 0:
        return None
    idv = L.identities[x]
    if len(idv) != 1 or list(idv.values())[0] != L.F.one:
        return None
    T = L.table(x, x, x)
    e = next(iter(idv))
    for j in range(n):
        row = T[j]
        seen = set()
        has_inverse = False
        for i in range(n):
            v = row[i]
            if len(v) != 1 or list(v.values())[0] != L.F.one:
                return None
            k = next(iter(v))
            if k in seen:
                return None
            seen.add(k)
            if k == e:
                has_inverse = True
        if not has_inverse:
            return None
    return n

"""Categories of spans over finite EI categories with pullbacks.

A span ``x <- z -> y`` is stored as ``(z, f, g)`` with ``f: z -> x`` and
``g: z -> y`` the canonical representative of its orbit under the
automorphisms of ``z``: the pair of label indices that is lexicographically
least.  Composition takes a pullback and canonicalizes again.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import comb, factorial
from typing import Callable

from .lincat import ConcreteCat, linearize
from .linalg import Field, QQ
from .reedy import ReedyStructure


class NoPullback(ValueError):
    """The pullback oracle refused a cospan."""


class NotInSkeleton(ValueError):
    """A fiber product matches no object of the category."""


@dataclass
class Pullback:
    apex: object
    left: object      # apex -> a
    right: object     # apex -> b


@dataclass
class EICat:
    """A finite EI category with a pullback oracle ``pullback_fn(a, b, x, f, f2)``.

    For ``f: a -> x`` and ``f2: b -> x`` the oracle returns a :class:`Pullback`
    with legs ``apex -> a`` and ``apex -> b``.
    """

    cat: ConcreteCat
    pullback_fn: Callable | None = None
    name: str = ""
    _groups: dict = dc_field(default_factory=dict, repr=False)
    _pb_cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def objects(self) -> list:
        return self.cat.objects

    def group(self, x) -> list:
        g = self._groups.get(x)
        if g is None:
            g = self.cat.automorphisms(x)
            self._groups[x] = g
        return g

    def is_ei(self) -> bool:
        return self.cat.is_ei()

    def order(self) -> dict:
        """le[(x, y)] is True when there is a morphism x -> y."""
        return {(x, y): bool(self.cat.homs[(x, y)]) for x in self.objects for y in self.objects}

    def antisymmetry_violations(self) -> list:
        le = self.order()
        obs = self.objects
        return [(x, y) for i, x in enumerate(obs) for y in obs[i + 1:] if le[(x, y)] and le[(y, x)]]

    def degrees(self) -> dict:
        """Strip minimal elements of the order repeatedly; the round is the degree."""
        le = self.order()
        left = list(self.objects)
        deg, d = {}, 0
        while left:
            minimal = [x for x in left if not any(y != x and le[(y, x)] for y in left)]
            if not minimal:
                raise ValueError("order has a cycle")
            for x in minimal:
                deg[x] = d
            left = [x for x in left if x not in deg]
            d += 1
        return deg

    def pullback(self, a, b, x, f, f2) -> Pullback:
        key = (a, b, x, f, f2)
        pb = self._pb_cache.get(key)
        if pb is None:
            if self.pullback_fn is None:
                raise NoPullback(f"{self.name}: no pullback oracle")
            pb = self.pullback_fn(a, b, x, f, f2)
            self._pb_cache[key] = pb
        return pb

    # -- checks -----------------------------------------------------------
    def non_monomorphisms(self) -> list:
        """Morphisms f with f u = f v for some u != v (left-cancellation fails)."""
        c = self.cat
        bad = []
        for x, y in product(self.objects, repeat=2):
            for f in c.homs[(x, y)]:
                for w in self.objects:
                    seen = {}
                    for u in c.homs[(w, x)]:
                        h = c.compose(w, x, y, f, u)
                        if h in seen:
                            bad.append((x, y, f))
                            break
                        seen[h] = u
                    else:
                        continue
                    break
        return bad

    def pullback_violations(self) -> list:
        """Cospans whose oracle answer is not a pullback (cone enumeration)."""
        c = self.cat
        bad = []
        for a, b, x in product(self.objects, repeat=3):
            for f in c.homs[(a, x)]:
                for f2 in c.homs[(b, x)]:
                    try:
                        pb = self.pullback(a, b, x, f, f2)
                    except (NoPullback, NotInSkeleton) as exc:
                        bad.append((a, b, x, f, f2, type(exc).__name__))
                        continue
                    p = pb.apex
                    if c.compose(p, a, x, f, pb.left) != c.compose(p, b, x, f2, pb.right):
                        bad.append((a, b, x, f, f2, "square"))
                        continue
                    for w in self.objects:
                        for u in c.homs[(w, a)]:
                            fu = c.compose(w, a, x, f, u)
                            for v in c.homs[(w, b)]:
                                if fu != c.compose(w, b, x, f2, v):
                                    continue
                                med = [m for m in c.homs[(w, p)]
                                       if c.compose(w, p, a, pb.left, m) == u and c.compose(w, p, b, pb.right, m) == v]
                                if len(med) != 1:
                                    bad.append((a, b, x, f, f2, "mediators", w, len(med)))
        return bad


# ---------------------------------------------------------------------------
# built-in pullbacks
# ---------------------------------------------------------------------------


def set_pullback(cat: ConcreteCat) -> Callable:
    """Pullbacks for categories of finite sets with maps stored as image tuples.

    The fiber product ``{(i, j) | f(i) = f2(j)}`` is listed in sorted order and
    identified with the object whose carrier has the same size; the legs must
    be morphisms of the category.
    """
    by_size = {}
    for x in cat.objects:
        by_size.setdefault(len(cat.carriers[x]), x)

    def pb(a, b, x, f, f2):
        ca, cb = cat.carriers[a], cat.carriers[b]
        pairs = sorted((i, j) for i in range(len(ca)) for j in range(len(cb)) if f[i] == f2[j])
        p = by_size.get(len(pairs))
        if p is None:
            raise NotInSkeleton(f"fiber product of size {len(pairs)}")
        left = tuple(ca[i] for i, _ in pairs)
        right = tuple(cb[j] for _, j in pairs)
        if left not in cat._index[(p, a)] or right not in cat._index[(p, b)]:
            raise NoPullback("fiber product legs are not morphisms")
        return Pullback(p, left, right)

    return pb


def injections_eicat(N: int) -> EICat:
    from .zoo import finite_sets
    c = finite_sets(N, "inj")
    return EICat(c, set_pullback(c), name=f"injections({N})")


def all_maps_eicat(N: int) -> EICat:
    """All maps of finite sets: EI fails beyond size 1 and maps need not be mono."""
    from .zoo import finite_sets
    c = finite_sets(N, "all")
    return EICat(c, set_pullback(c), name=f"all_maps({N})")


def chain_eicat(n: int) -> EICat:
    """The chain p0 < ... < p(n-1); the pullback of a cospan is the meet."""
    objs = [f"p{i}" for i in range(n)]
    homs = {(x, y): [(x, y)] if int(x[1:]) <= int(y[1:]) else [] for x in objs for y in objs}
    c = ConcreteCat(objs, homs, {x: (x, x) for x in objs}, lambda x, y, z, g, f: (x, z), name=f"chain({n})")

    def pb(a, b, x, f, f2):
        m = a if int(a[1:]) <= int(b[1:]) else b
        return Pullback(m, (m, a), (m, b))

    return EICat(c, pb, name=f"chain({n})")


# ---------------------------------------------------------------------------
# the span category
# ---------------------------------------------------------------------------


def canonical_span(e: EICat, z, f, g, x, y) -> tuple:
    """Lexicographically least (f sigma, g sigma) over sigma in Aut(z)."""
    c = e.cat
    best = None
    for s in e.group(z):
        fs, gs = c.compose(z, z, x, f, s), c.compose(z, z, y, g, s)
        key = (c.index(z, x, fs), c.index(z, y, gs))
        if best is None or key < best[0]:
            best = (key, fs, gs)
    return (z, best[1], best[2])


def compose_spans(e: EICat, x, y, w, second, first) -> tuple:
    """second o first for first: x -> y and second: y -> w."""
    c = e.cat
    z1, f1, g1 = first
    z2, f2, g2 = second
    pb = e.pullback(z1, z2, y, g1, f2)
    p = pb.apex
    return canonical_span(e, p, c.compose(p, z1, x, f1, pb.left), c.compose(p, z2, w, g2, pb.right), x, w)


def span_homs(e: EICat) -> dict:
    c = e.cat
    homs = {}
    for x, y in product(e.objects, repeat=2):
        seen = []
        found = set()
        for z in e.objects:
            for f in c.homs[(z, x)]:
                for g in c.homs[(z, y)]:
                    s = canonical_span(e, z, f, g, x, y)
                    if s not in found:
                        found.add(s)
                        seen.append(s)
        homs[(x, y)] = seen
    return homs


def span_category(e: EICat) -> ConcreteCat:
    homs = span_homs(e)
    ident = {x: (x, e.cat.identity[x], e.cat.identity[x]) for x in e.objects}
    return ConcreteCat(e.objects, homs, ident, lambda x, y, z, g, f: compose_spans(e, x, y, z, g, f),
                       name=f"spans({e.name})")


def partial_injection_count(m: int, n: int) -> int:
    return sum(comb(m, k) * comb(n, k) * factorial(k) for k in range(min(m, n) + 1))


def brute_force_partial_injections(m: int, n: int) -> int:
    """Count partial injections {1..m} -> {1..n} by enumerating graphs."""
    pairs = [(i, j) for i in range(m) for j in range(n)]
    count = 0
    for mask in range(1 << len(pairs)):
        chosen = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if len({i for i, _ in chosen}) == len(chosen) == len({j for _, j in chosen}):
            count += 1
    return count


def span_reedy(e: EICat, S: ConcreteCat, F: Field, check: bool = True):
    """Linearize the span category; plus = invertible left leg, minus = invertible right leg.

    In an EI category a leg into the apex's own object is an automorphism, so
    the apex alone decides.
    """
    L = linearize(S, F, check=check)
    deg = e.degrees()
    R = ReedyStructure.from_predicates(
        L, deg,
        lambda x, y, s: s[0] == x,
        lambda x, y, s: s[0] == y,
        name=f"spans({e.name})")
    return L, R


def free_action_violations(e: EICat, S: ConcreteCat) -> list:
    """Informational: minus spans x -> y fixed by a nontrivial automorphism of y."""
    out = []
    for x, y in product(e.objects, repeat=2):
        if x == y:
            continue
        autos = [(y, s, s) for s in e.group(y)]
        for sp in S.homs[(x, y)]:
            if sp[0] != y:
                continue
            for th in autos:
                th_c = canonical_span(e, *th, y, y)
                if th_c != S.identity[y] and S.compose(x, y, y, th_c, sp) == sp:
                    out.append((x, y, sp, th_c))
    return out


def span_instance(e: EICat, F: Field = QQ, name: str = "spans", params: tuple = ()):
    from .zoo import ZooInstance
    S = span_category(e)
    L, R = span_reedy(e, S, F)
    return ZooInstance(name, params, F, L, R, concrete=S, eicat=e)


# ---------------------------------------------------------------------------
# the decomposition criterion for span categories
# ---------------------------------------------------------------------------


@dataclass
class SpanVerdict:
    conditions: dict          # name -> bool
    witnesses: dict           # name -> failing data
    group_orders: dict
    free_action: list
    hom_sizes: dict
    downstream: object = None

    @property
    def passed(self) -> bool:
        ok = all(self.conditions.values())
        if self.downstream is not None:
            ok = ok and self.downstream.passed
        return ok

    @property
    def first_failure(self) -> str | None:
        for k, v in self.conditions.items():
            if not v:
                return k
        if self.downstream is not None and not self.downstream.passed:
            return "downstream"
        return None


def check_theorem_E(e: EICat, F: Field = QQ, run_downstream: bool = True) -> SpanVerdict:
    """Pullbacks, finiteness, invertible automorphism group orders, monomorphisms.

    When all hold, the span category is linearized with its Reedy structure and
    handed to the nondegeneracy criterion.
    """
    conds, wit = {}, {}
    pbv = e.pullback_violations()
    conds["pullbacks"] = not pbv
    wit["pullbacks"] = pbv[:5]
    conds["locally_finite"] = True
    orders = {x: len(e.group(x)) for x in e.objects}
    bad_orders = [x for x, g in orders.items() if not F.invertible(g)]
    conds["group_orders_invertible"] = not bad_orders
    wit["group_orders_invertible"] = bad_orders
    nm = e.non_monomorphisms()
    conds["all_monomorphisms"] = not nm
    wit["all_monomorphisms"] = nm[:5]
    ei = e.is_ei() and not e.antisymmetry_violations()
    conds["artinian_ei"] = ei
    verdict = SpanVerdict(conds, wit, orders, [], {})
    if not (conds["pullbacks"] and conds["all_monomorphisms"] and ei):
        return verdict
    S = span_category(e)
    verdict.hom_sizes = {f"{x}->{y}": len(S.homs[(x, y)]) for x, y in product(e.objects, repeat=2)}
    verdict.free_action = free_action_violations(e, S)
    if all(conds.values()) and run_downstream:
        from .decomposition import check_theorem_D
        _, R = span_reedy(e, S, F)
        verdict.downstream = check_theorem_D(R)
    return verdict

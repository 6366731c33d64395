"""Built-in finite instances (all truncated at desk scale)."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations, product
from typing import Any

from .lincat import ConcreteCat, LinCat, linearize, one_object
from .linalg import Field, QQ
from .reedy import ReedyStructure


class ParamOutOfRange(ValueError):
    """Zoo parameters exceed the supported sizes."""


@dataclass
class ZooInstance:
    name: str
    params: tuple
    field: Field
    cat: LinCat
    reedy: ReedyStructure
    concrete: ConcreteCat | None = None
    eicat: Any = None
    notes: dict = dc_field(default_factory=dict)

    @property
    def label(self) -> str:
        return f"{self.name}:{','.join(str(p) for p in self.params)}" if self.params else self.name


def _obj(n: int) -> str:
    return f"[{n}]"


def _size(x: str) -> int:
    return int(x[1:-1])


def _compose_tuple(x, y, z, g, f):
    return tuple(g[i - 1] for i in f)


def _set_maps(m: int, n: int, kind: str) -> list:
    maps = []
    for f in product(range(1, n + 1), repeat=m):
        img = set(f)
        if kind == "inj" and len(img) != m:
            continue
        if kind == "surj" and len(img) != n:
            continue
        maps.append(tuple(f))
    return maps


def finite_sets(N: int, kind: str) -> ConcreteCat:
    """Objects [0..N] (with [0] empty); morphisms all maps / injections / surjections."""
    objs = [_obj(n) for n in range(N + 1)]
    homs = {(x, y): _set_maps(_size(x), _size(y), kind) for x in objs for y in objs}
    ident = {x: tuple(range(1, _size(x) + 1)) for x in objs}
    return ConcreteCat(objs, homs, ident, _compose_tuple, name=f"fin_{kind}({N})",
                       carriers={x: tuple(range(1, _size(x) + 1)) for x in objs})


def _set_reedy(cat: LinCat, name: str) -> ReedyStructure:
    deg = {x: _size(x) for x in cat.objects}
    return ReedyStructure.from_predicates(
        cat, deg,
        lambda x, y, f: len(set(f)) == len(f),
        lambda x, y, f: len(set(f)) == _size(y),
        name=name)


def _check_n(N: int, hi: int = 3, lo: int = 0):
    if not (lo <= N <= hi):
        raise ParamOutOfRange(f"size parameter {N} outside [{lo}, {hi}]")


def fin_all(N: int, F: Field = QQ) -> ZooInstance:
    _check_n(N)
    c = finite_sets(N, "all")
    L = linearize(c, F)
    return ZooInstance("fin_all", (N,), F, L, _set_reedy(L, f"fin_all({N})"), concrete=c)


def fin_inj(N: int, F: Field = QQ) -> ZooInstance:
    _check_n(N)
    c = finite_sets(N, "inj")
    L = linearize(c, F)
    return ZooInstance("fin_inj", (N,), F, L, _set_reedy(L, f"fin_inj({N})"), concrete=c)


def fin_surj(N: int, F: Field = QQ) -> ZooInstance:
    _check_n(N)
    c = finite_sets(N, "surj")
    L = linearize(c, F)
    return ZooInstance("fin_surj", (N,), F, L, _set_reedy(L, f"fin_surj({N})"), concrete=c)


def simplex_inj(N: int, F: Field = QQ) -> ZooInstance:
    """Objects [n] = {0..n}; order-preserving injections (faces)."""
    _check_n(N)
    objs = [_obj(n) for n in range(N + 1)]
    homs = {}
    for x in objs:
        for y in objs:
            m, n = _size(x) + 1, _size(y) + 1
            homs[(x, y)] = [tuple(c) for c in combinations(range(n), m)]
    ident = {x: tuple(range(_size(x) + 1)) for x in objs}
    c = ConcreteCat(objs, homs, ident, lambda x, y, z, g, f: tuple(g[i] for i in f), name=f"simplex_inj({N})")
    L = linearize(c, F)
    R = ReedyStructure.from_predicates(L, {x: _size(x) for x in objs},
                                       lambda x, y, f: True, lambda x, y, f: x == y, name=f"simplex_inj({N})")
    return ZooInstance("simplex_inj", (N,), F, L, R, concrete=c)


def _cyclic_ok(f: tuple, n: int) -> bool:
    m = len(f)
    if m == 0:
        return True
    wind = sum((f[(i + 1) % m] - f[i]) % n for i in range(m))
    return wind in (0, n)


def cyclic(N: int, F: Field = QQ) -> ZooInstance:
    """Objects [n] = Z/n (n = 1..N) with cyclic order; cyclic-order-preserving maps."""
    _check_n(N, lo=1)
    objs = [_obj(n) for n in range(1, N + 1)]
    homs = {}
    for x in objs:
        for y in objs:
            m, n = _size(x), _size(y)
            homs[(x, y)] = [f for f in product(range(n), repeat=m) if _cyclic_ok(f, n)]
    ident = {x: tuple(range(_size(x))) for x in objs}
    c = ConcreteCat(objs, homs, ident, lambda x, y, z, g, f: tuple(g[i] for i in f), name=f"cyclic({N})")
    L = linearize(c, F)
    R = ReedyStructure.from_predicates(
        L, {x: _size(x) for x in objs},
        lambda x, y, f: len(set(f)) == len(f),
        lambda x, y, f: len(set(f)) == _size(y), name=f"cyclic({N})")
    return ZooInstance("cyclic", (N,), F, L, R, concrete=c)


def _fq_matrices(q: int, rows: int, cols: int) -> list:
    return [tuple(tuple(e[r * cols:(r + 1) * cols]) for r in range(rows))
            for e in product(range(q), repeat=rows * cols)]


def _fq_rank(m: tuple, q: int, cols: int) -> int:
    rows = [list(r) for r in m]
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, q)
        rows[rank] = [(v * inv) % q for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                t = rows[i][c]
                rows[i] = [(a - t * b) % q for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def vect_fq(q: int, N: int, F: Field = QQ) -> ZooInstance:
    """Objects F_q^n (n = 0..N); all F_q-linear maps, as n_target x n_source matrices."""
    if q not in (2, 3):
        raise ParamOutOfRange("vect_fq supports q in {2, 3}")
    _check_n(N, hi=2)
    objs = [f"F{q}^{n}" for n in range(N + 1)]
    dim = {x: n for n, x in enumerate(objs)}
    homs = {(x, y): _fq_matrices(q, dim[y], dim[x]) for x in objs for y in objs}
    ident = {x: tuple(tuple(int(i == j) for j in range(dim[x])) for i in range(dim[x])) for x in objs}

    def comp(x, y, z, g, f):
        return tuple(tuple(sum(g[i][k] * f[k][j] for k in range(dim[y])) % q for j in range(dim[x]))
                     for i in range(dim[z]))

    c = ConcreteCat(objs, homs, ident, comp, name=f"vect_fq({q},{N})")
    L = linearize(c, F)
    R = ReedyStructure.from_predicates(
        L, dim,
        lambda x, y, f: _fq_rank(f, q, dim[x]) == dim[x],
        lambda x, y, f: _fq_rank(f, q, dim[x]) == dim[y], name=f"vect_fq({q},{N})")
    return ZooInstance("vect_fq", (q, N), F, L, R, concrete=c)


def poset_chain(n: int, F: Field = QQ) -> ZooInstance:
    """The chain 0 < 1 < ... < n-1 as a (direct) category."""
    _check_n(n, lo=1)
    objs = [f"p{i}" for i in range(n)]
    homs = {(x, y): [(x, y)] if int(x[1:]) <= int(y[1:]) else [] for x in objs for y in objs}
    c = ConcreteCat(objs, homs, {x: (x, x) for x in objs}, lambda x, y, z, g, f: (x, z), name=f"chain({n})")
    L = linearize(c, F)
    R = ReedyStructure.from_predicates(L, {x: int(x[1:]) for x in objs},
                                       lambda x, y, f: True, lambda x, y, f: x == y, name=f"chain({n})")
    return ZooInstance("poset_chain", (n,), F, L, R, concrete=c)


def quiver(F: Field = QQ, reverse: bool = False) -> ZooInstance:
    """a -> b with d(a) = 0, d(b) = 1 (direct); reversed: b -> a (inverse)."""
    objs = ["a", "b"]
    if not reverse:
        homs = {("a", "a"): ["1a"], ("b", "b"): ["1b"], ("a", "b"): ["u"]}
        comp = _quiver_comp(("a", "b"))
    else:
        homs = {("a", "a"): ["1a"], ("b", "b"): ["1b"], ("b", "a"): ["u"]}
        comp = _quiver_comp(("b", "a"))
    c = ConcreteCat(objs, homs, {"a": "1a", "b": "1b"}, comp, name="quiver_rev" if reverse else "quiver")
    L = linearize(c, F)
    deg = {"a": 0, "b": 1}
    if not reverse:
        R = ReedyStructure.from_predicates(L, deg, lambda x, y, f: True, lambda x, y, f: x == y, name="quiver")
    else:
        R = ReedyStructure.from_predicates(L, deg, lambda x, y, f: x == y, lambda x, y, f: True, name="quiver_rev")
    return ZooInstance("quiver_rev" if reverse else "quiver", (), F, L, R, concrete=c)


def _quiver_comp(arrow):
    def comp(x, y, z, g, f):
        if x == y:
            return g
        return f
    return comp


def dual_numbers_direct(F: Field = QQ) -> ZooInstance:
    """a with A = k[t]/t^2, b with A = k, hom(a, b) = span{u, ut}; direct."""
    objs = ["a", "b"]
    labels = {("a", "a"): ["1a", "t"], ("b", "b"): ["1b"], ("a", "b"): ["u", "ut"]}
    one = F.one
    tables = {
        ("a", "a", "a"): [[{0: one}, {1: one}], [{1: one}, {}]],
        ("b", "b", "b"): [[{0: one}]],
        ("a", "a", "b"): [[{0: one}, {1: one}], [{1: one}, {}]],   # g in hom(a,b), f in hom(a,a)
        ("a", "b", "b"): [[{0: one}, {1: one}]],                   # g = 1b, f in hom(a,b)
    }

    def structure(x, y, z):
        return tables[(x, y, z)]

    L = LinCat(F, objs, labels, structure, {"a": {0: one}, "b": {0: one}}, name="dual_numbers_direct")
    R = ReedyStructure.from_predicates(L, {"a": 0, "b": 1}, lambda x, y, f: True, lambda x, y, f: x == y,
                                       name="dual_numbers_direct")
    return ZooInstance("dual_numbers_direct", (), F, L, R)


def dual_numbers(F: Field = QQ) -> ZooInstance:
    """One object, A = k[t]/t^2, degree 0."""
    one = F.one
    mult = {(0, 0): {0: one}, (0, 1): {1: one}, (1, 0): {1: one}, (1, 1): {}}
    L = one_object(F, ["1", "t"], lambda j, i: mult[(j, i)], {0: one}, name="dual_numbers")
    R = ReedyStructure.from_predicates(L, {"*": 0}, lambda x, y, f: True, lambda x, y, f: True, name="dual_numbers")
    return ZooInstance("dual_numbers", (), F, L, R)


def cyclic_group(n: int, F: Field = QQ) -> ZooInstance:
    """One-object category of the cyclic group C_n (a semisimple test algebra over Q)."""
    objs = ["*"]
    c = ConcreteCat(objs, {("*", "*"): list(range(n))}, {"*": 0},
                    lambda x, y, z, g, f: (g + f) % n, name=f"C{n}")
    L = linearize(c, F)
    R = ReedyStructure.from_predicates(L, {"*": 0}, lambda *a: True, lambda *a: True, name=f"C{n}")
    return ZooInstance("cyclic_group", (n,), F, L, R, concrete=c)


def symmetric_group(n: int, F: Field = QQ) -> ZooInstance:
    objs = ["*"]
    els = list(permutations(range(n)))
    c = ConcreteCat(objs, {("*", "*"): els}, {"*": tuple(range(n))},
                    lambda x, y, z, g, f: tuple(g[i] for i in f), name=f"S{n}")
    L = linearize(c, F)
    R = ReedyStructure.from_predicates(L, {"*": 0}, lambda *a: True, lambda *a: True, name=f"S{n}")
    return ZooInstance("symmetric_group", (n,), F, L, R, concrete=c)


def trivial(F: Field = QQ) -> ZooInstance:
    return cyclic_group(1, F)


def span_inj(N: int, F: Field = QQ) -> ZooInstance:
    from .spans import injections_eicat, span_instance
    _check_n(N)
    return span_instance(injections_eicat(N), F, name="span_inj", params=(N,))


def poset_chain_meets(n: int, F: Field = QQ) -> ZooInstance:
    from .spans import chain_eicat, span_instance
    _check_n(n, lo=1)
    return span_instance(chain_eicat(n), F, name="poset_chain_meets", params=(n,))


BUILDERS = {
    "fin_all": (fin_all, 1),
    "fin_inj": (fin_inj, 1),
    "fin_surj": (fin_surj, 1),
    "simplex_inj": (simplex_inj, 1),
    "cyclic": (cyclic, 1),
    "vect_fq": (vect_fq, 2),
    "poset_chain": (poset_chain, 1),
    "poset_chain_meets": (poset_chain_meets, 1),
    "span_inj": (span_inj, 1),
    "quiver": (lambda F=QQ: quiver(F), 0),
    "quiver_rev": (lambda F=QQ: quiver(F, reverse=True), 0),
    "dual_numbers_direct": (dual_numbers_direct, 0),
    "dual_numbers": (dual_numbers, 0),
    "cyclic_group": (cyclic_group, 1),
    "symmetric_group": (symmetric_group, 1),
    "trivial": (trivial, 0),
}


def zoo(spec: str, F: Field = QQ) -> ZooInstance:
    """Build a zoo instance from 'name' or 'name:p1,p2'."""
    name, _, rest = spec.partition(":")
    if name not in BUILDERS:
        raise KeyError(f"unknown zoo instance {name!r}; known: {', '.join(sorted(BUILDERS))}")
    fn, arity = BUILDERS[name]
    params = [int(p) for p in rest.split(",") if p.strip()] if rest else []
    if len(params) != arity:
        raise ParamOutOfRange(f"{name} takes {arity} integer parameter(s), got {len(params)}")
    inst = fn(*params, F=F) if params else fn(F=F)
    return inst

"""Per-object classes of modules over the local algebras, with factorization oracles.

A :class:`ModuleClass` is a membership test on modules over a one-object
LinCat.  A :class:`ClassFamily` assigns one class to each object.  A
:class:`PairFamily` assigns a pair (left class, right class) to each object
together with an oracle factoring any module map ``f: M -> N`` as a mono with
cokernel in the left class followed by an epi with kernel in the right class.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from .homalg import free_cover, injective_hull_map, is_injective, is_projective
from .reps import Rep, RepMap, direct_sum, hstack_maps, vstack_maps

ALL = "ALL"
PROJ = "PROJ"
INJ = "INJ"
ZERO = "ZERO"
USER = "USER"

PROJ_ALL = "PROJ_ALL"
ALL_INJ = "ALL_INJ"
ALL_ALL = "ALL_ALL"


@dataclass(frozen=True)
class ModuleClass:
    tag: str
    test: Callable[[Rep], bool]

    def __call__(self, M: Rep) -> bool:
        return bool(self.test(M))


ALL_MODULES = ModuleClass(ALL, lambda M: True)
PROJECTIVES = ModuleClass(PROJ, is_projective)
INJECTIVES = ModuleClass(INJ, is_injective)
ZERO_MODULES = ModuleClass(ZERO, lambda M: M.is_zero())


def intersect(a: ModuleClass, b: ModuleClass) -> ModuleClass:
    if a.tag == ALL:
        return b
    if b.tag == ALL:
        return a
    return ModuleClass(f"{a.tag}&{b.tag}", lambda M: a(M) and b(M))


@dataclass
class ClassFamily:
    """One module class per object (a default plus overrides)."""

    default: ModuleClass
    overrides: dict = dc_field(default_factory=dict)
    name: str = ""

    def at(self, x) -> ModuleClass:
        return self.overrides.get(x, self.default)

    def member(self, x, M: Rep) -> bool:
        return self.at(x)(M)

    def tags(self, objects) -> dict:
        return {x: self.at(x).tag for x in objects}


def uniform(cls: ModuleClass, name: str = "") -> ClassFamily:
    return ClassFamily(cls, {}, name or cls.tag)


# ---------------------------------------------------------------------------
# factorization oracles on module maps over a one-object algebra
# ---------------------------------------------------------------------------


@dataclass
class ModuleFactorization:
    middle: Rep
    left: RepMap      # M -> E, mono with cokernel in the left class
    right: RepMap     # E -> N, epi with kernel in the right class


def factor_proj_all(f: RepMap) -> ModuleFactorization:
    """M -> M + P -> N with P a free cover of N."""
    M, N = f.src, f.tgt
    cov = free_cover(N.as_left()) if N.side == "LEFT" else None
    if cov is None:
        raise ValueError("factor_proj_all expects LEFT modules")
    P = cov.P0
    E, incs, projs = direct_sum([M, P])
    left = incs[0]
    right = hstack_maps([f, cov.pi], E)
    return ModuleFactorization(E, left, right)


def factor_all_inj(f: RepMap) -> ModuleFactorization:
    """M -> N + I -> N with M -> I a mono into an injective."""
    M, N = f.src, f.tgt
    I, j = injective_hull_map(M)
    E, incs, projs = direct_sum([N, I])
    left = vstack_maps([f, j], E)
    right = projs[0]
    return ModuleFactorization(E, left, right)


@dataclass
class PairFamily:
    """Per-object pairs (left class, right class) with factorization oracles."""

    left: ClassFamily
    right: ClassFamily
    oracle: Callable[[object, RepMap], ModuleFactorization] | None
    tag: str = USER
    hereditary: bool = False

    def factor(self, x, f: RepMap) -> ModuleFactorization:
        if self.oracle is None:
            raise OracleMissing(f"no factorization oracle for the pair at {x!r}")
        return self.oracle(x, f)


class OracleMissing(ValueError):
    """A pair family has no factorization oracle."""


def proj_all() -> PairFamily:
    return PairFamily(uniform(PROJECTIVES), uniform(ALL_MODULES), lambda x, f: factor_proj_all(f),
                      tag=PROJ_ALL, hereditary=True)


def all_inj() -> PairFamily:
    return PairFamily(uniform(ALL_MODULES), uniform(INJECTIVES), lambda x, f: factor_all_inj(f),
                      tag=ALL_INJ, hereditary=True)


def check_factorization(pair: PairFamily, x, f: RepMap, fac: ModuleFactorization) -> list:
    """Problems with an oracle output (empty when it is valid)."""
    problems = []
    if (fac.right @ fac.left) != f:
        problems.append("composite differs from the map")
    if not fac.left.is_mono():
        problems.append("left factor not mono")
    if not fac.right.is_epi():
        problems.append("right factor not epi")
    coker, _ = fac.left.cokernel()
    ker, _ = fac.right.kernel()
    if not pair.left.member(x, coker):
        problems.append("cokernel outside the left class")
    if not pair.right.member(x, ker):
        problems.append("kernel outside the right class")
    return problems

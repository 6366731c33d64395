"""Seeded random modules.

Modules are quotients of sums of representables by randomly generated
submodules, so functoriality holds by construction.  Relations are added
until every value has dimension at most ``max_dim``.  Half of the modules
are instead pointwise duals of such quotients over the opposite category
(submodules of sums of dual representables), so the battery is not biased
towards projectives.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .lincat import LinCat
from .reps import LEFT, Rep, direct_sum, generated_subspaces, quotient_rep, random_vector, representable


@dataclass(frozen=True)
class BatteryConfig:
    count: int = 25
    max_dim: int = 3
    max_generators: int = 2
    seed: int = 0
    duals: bool = True


def random_module(cat: LinCat, rng: random.Random, max_dim: int = 3, max_generators: int = 2,
                  allow_zero: bool = False, duals: bool = False) -> Rep:
    """A random LEFT module with every value of dimension at most ``max_dim``."""
    for _ in range(8):
        if duals and rng.random() < 0.5:
            M = _random_quotient(cat.op(), rng, max_dim, max_generators).dual().as_left()
        else:
            M = _random_quotient(cat, rng, max_dim, max_generators)
        if allow_zero or not M.is_zero():
            break
    return M


def _random_quotient(cat: LinCat, rng: random.Random, max_dim: int, max_generators: int) -> Rep:
    F = cat.F
    k = rng.randint(1, max_generators)
    gens = [rng.choice(cat.objects) for _ in range(k)]
    P = direct_sum([representable(cat, x, LEFT) for x in gens])[0]
    relations = []
    # a few random relations, then more until the size bound holds
    for _ in range(rng.randint(0, 2)):
        x = rng.choice(cat.objects)
        if P.dims[x]:
            relations.append((x, random_vector(F, P.dims[x], rng)))
    while True:
        subs = generated_subspaces(P, relations)
        sizes = {x: P.dims[x] - subs[x].dim for x in cat.objects}
        big = [x for x in cat.objects if sizes[x] > max_dim]
        if not big:
            break
        x = rng.choice(big)
        v = random_vector(F, P.dims[x], rng)
        if not subs[x].contains(v):
            relations.append((x, v))
    M, _ = quotient_rep(P, subs)
    return M


def battery(cat: LinCat, config: BatteryConfig = BatteryConfig()) -> list:
    rng = random.Random(config.seed)
    return [random_module(cat, rng, config.max_dim, config.max_generators, duals=config.duals)
            for _ in range(config.count)]

"""Independent reference computations used to freeze expected values.

Nothing here imports the package: each function recomputes a quantity from
first principles (enumeration or textbook formulas) so the tests compare two
unrelated routes.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial


def set_map_count(m: int, n: int, kind: str = "all") -> int:
    """Maps {1..m} -> {1..n}, optionally only injections or surjections, by enumeration."""
    count = 0
    for f in product(range(n), repeat=m):
        img = set(f)
        if kind == "inj" and len(img) != m:
            continue
        if kind == "surj" and len(img) != n:
            continue
        count += 1
    return count


def conjugacy_classes(n: int) -> int:
    """Number of cycle types among permutations of n letters (n = 0 gives 1)."""
    types = set()
    for p in permutations(range(n)):
        seen, lengths = set(), []
        for s in range(n):
            if s in seen:
                continue
            k, t = 0, s
            while t not in seen:
                seen.add(t)
                t = p[t]
                k += 1
            lengths.append(k)
        types.add(tuple(sorted(lengths)))
    return max(1, len(types))


def rational_simple_count_cyclic(n: int) -> int:
    """Simple modules of the rational group algebra of a cyclic group: one per divisor."""
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def partial_injections(m: int, n: int) -> int:
    return sum(comb(m, k) * comb(n, k) * factorial(k) for k in range(min(m, n) + 1))


def partial_injections_enumerated(m: int, n: int) -> int:
    """Partial injections as injective maps from a subset, enumerated directly."""
    count = 0
    for dom_mask in range(1 << m):
        dom = [i for i in range(m) if dom_mask >> i & 1]
        for img in product(range(n), repeat=len(dom)):
            if len(set(img)) == len(img):
                count += 1
    return count


def rank_mod(rows, p: int | None) -> int:
    """Plain Gaussian elimination over Q (p None) or F_p."""
    a = [[Fraction(x) if p is None else x % p for x in r] for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rk = 0
    for c in range(ncols):
        piv = next((r for r in range(rk, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = (1 / a[rk][c]) if p is None else pow(a[rk][c], -1, p)
        a[rk] = [x * inv if p is None else (x * inv) % p for x in a[rk]]
        for r in range(len(a)):
            if r != rk and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y if p is None else (x - f * y) % p for x, y in zip(a[r], a[rk])]
        rk += 1
    return rk


def linear_maps_count(q: int, rows: int, cols: int) -> int:
    return q ** (rows * cols)


def increasing_injections(m: int, n: int) -> int:
    """Strictly increasing maps {0..m-1} -> {0..n-1}, by enumeration."""
    return sum(1 for f in product(range(n), repeat=m) if all(a < b for a, b in zip(f, f[1:])))


def cyclic_monotone_maps(m: int, n: int) -> int:
    """Maps Z/m -> Z/n whose value sequence, read around the circle, drops at most once."""
    count = 0
    for f in product(range(n), repeat=m):
        drops = sum(1 for i in range(m) if f[(i + 1) % m] < f[i])
        count += drops <= 1
    return count


def cyclic_group_classes(n: int) -> int:
    """Conjugacy classes of the additive group Z/n, by enumerating conjugates."""
    classes = {frozenset((g + a - g) % n for g in range(n)) for a in range(n)}
    return len(classes)

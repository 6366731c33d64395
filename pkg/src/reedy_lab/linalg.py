"""Exact linear algebra over Q and prime fields F_p.

Everything downstream reduces to linear systems over one of these two fields.
Rationals use gmpy2.mpq when available (it is several times faster than
fractions.Fraction); residues mod p are plain ints in [0, p).

The workhorse is :class:`Echelon`, an incrementally maintained reduced
row-echelon form over sparse rows.  Because the RREF of a row space is unique,
subspace equality is just comparison of pivot rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction


class NoSolution(Exception):
    """Raised when a linear system is inconsistent."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"F_{self.p}: modulus must be prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text.upper() in ("Q", "QQ"):
            return cls(0)
        if text.lower().startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field descriptor {text!r}")

    @property
    def tag(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    @property
    def char(self) -> int:
        return self.p

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fraction) or type(x).__name__ == "mpq":
                return (int(x.numerator) * pow(int(x.denominator), -1, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, str):
            return _rational(Fraction(x))
        return _rational(x)

    @property
    def zero(self):
        return 0 if self.p else _rational(0)

    @property
    def one(self):
        return 1 if self.p else _rational(1)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return 1 / a

    def invertible(self, n: int) -> bool:
        """Whether the integer n is a unit in this field."""
        return n % self.p != 0 if self.p else n != 0

    def elements(self):
        """All elements of a prime field (used for tiny brute-force oracles)."""
        if not self.p:
            raise ValueError("Q is infinite")
        return list(range(self.p))

    def __repr__(self):
        return f"Field({self.tag})"


QQ = Field(0)


def fmt(x) -> str:
    """Stable text form of a scalar (for reports and labels)."""
    return str(x)


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------


class Mat:
    """Dense matrix over a :class:`Field`; treated as immutable."""

    __slots__ = ("F", "rows", "cols", "a")

    def __init__(self, F: Field, rows: int, cols: int, data=None):
        self.F = F
        self.rows = rows
        self.cols = cols
        if data is None:
            z = F.zero
            self.a = [[z] * cols for _ in range(rows)]
        else:
            self.a = [[F(v) for v in r] for r in data]
            if len(self.a) != rows or any(len(r) != cols for r in self.a):
                raise ValueError("entry count does not match shape")

    @classmethod
    def _raw(cls, F, rows, cols, a):
        m = cls.__new__(cls)
        m.F, m.rows, m.cols, m.a = F, rows, cols, a
        return m

    @classmethod
    def zeros(cls, F, rows, cols):
        return cls(F, rows, cols)

    @classmethod
    def identity(cls, F, n):
        m = cls(F, n, n)
        for i in range(n):
            m.a[i][i] = F.one
        return m

    @classmethod
    def from_rows(cls, F, data, cols=None):
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(F, len(data), cols, data)

    @classmethod
    def from_columns(cls, F, columns, rows):
        m = cls(F, rows, len(columns))
        for j, c in enumerate(columns):
            for i in range(rows):
                m.a[i][j] = F(c[i])
        return m

    def copy(self):
        return Mat._raw(self.F, self.rows, self.cols, [r[:] for r in self.a])

    def __getitem__(self, ij):
        i, j = ij
        return self.a[i][j]

    def column(self, j):
        return [r[j] for r in self.a]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.F.p
        z = self.F.zero
        ob = other.a
        out = []
        for r in self.a:
            acc = [z] * other.cols
            for k, v in enumerate(r):
                if v:
                    rowk = ob[k]
                    for j in range(other.cols):
                        w = rowk[j]
                        if w:
                            acc[j] = acc[j] + v * w
            if p:
                acc = [x % p for x in acc]
            out.append(acc)
        return Mat._raw(self.F, self.rows, other.cols, out)

    def apply(self, v: Sequence) -> list:
        p = self.F.p
        out = []
        for r in self.a:
            s = self.F.zero
            for x, y in zip(r, v):
                if x and y:
                    s = s + x * y
            out.append(s % p if p else s)
        return out

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.F.p
        out = []
        for r, s in zip(self.a, other.a):
            row = [x + sign * y for x, y in zip(r, s)]
            out.append([x % p for x in row] if p else row)
        return Mat._raw(self.F, self.rows, self.cols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Mat":
        c = self.F(c)
        p = self.F.p
        out = [[(c * x) % p if p else c * x for x in r] for r in self.a]
        return Mat._raw(self.F, self.rows, self.cols, out)

    @property
    def T(self) -> "Mat":
        return Mat._raw(self.F, self.cols, self.rows, [list(c) for c in zip(*self.a)] if self.rows else [[] for _ in range(self.cols)])

    def is_zero(self) -> bool:
        return all(not x for r in self.a for x in r)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.a == other.a

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.a)))

    def __repr__(self):
        body = "; ".join(" ".join(fmt(x) for x in r) for r in self.a)
        return f"Mat[{self.rows}x{self.cols}]({body})"

    def tolist(self):
        return [r[:] for r in self.a]

    def to_json(self):
        return [[fmt(x) for x in r] for r in self.a]

    def flat(self) -> list:
        """Row-major flattening (the coordinate convention for Hom systems)."""
        return [x for r in self.a for x in r]

    @classmethod
    def unflat(cls, F, rows, cols, v):
        v = list(v)
        return cls._raw(F, rows, cols, [v[i * cols:(i + 1) * cols] for i in range(rows)])

    def rank(self) -> int:
        return rref(self)[2]

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return Mat._raw(self.F, self.rows, self.cols + other.cols, [r + s for r, s in zip(self.a, other.a)])

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return Mat._raw(self.F, self.rows + other.rows, self.cols, [r[:] for r in self.a] + [r[:] for r in other.a])

    def submatrix(self, rows, cols):
        return Mat._raw(self.F, len(rows), len(cols), [[self.a[i][j] for j in cols] for i in rows])


def block_diag(F: Field, mats: Sequence[Mat]) -> Mat:
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = Mat(F, r, c)
    i0 = j0 = 0
    for m in mats:
        for i in range(m.rows):
            out.a[i0 + i][j0:j0 + m.cols] = m.a[i][:]
        i0 += m.rows
        j0 += m.cols
    return out


def kron(A: Mat, B: Mat) -> Mat:
    F = A.F
    p = F.p
    out = Mat(F, A.rows * B.rows, A.cols * B.cols)
    for i in range(A.rows):
        for j in range(A.cols):
            a = A.a[i][j]
            if not a:
                continue
            for k in range(B.rows):
                row = out.a[i * B.rows + k]
                for l in range(B.cols):
                    b = B.a[k][l]
                    if b:
                        v = a * b
                        row[j * B.cols + l] = v % p if p else v
    return out


# ---------------------------------------------------------------------------
# sparse incremental RREF
# ---------------------------------------------------------------------------


def _sparse(v, F: Field) -> dict:
    if isinstance(v, dict):
        return {k: x for k, x in v.items() if x}
    return {i: F(x) for i, x in enumerate(v) if x}


class Echelon:
    """Reduced row-echelon form of a growing row space, with sparse rows.

    ``pivots`` maps a pivot column to its row; each row has a 1 at its pivot
    and zeros in every other pivot column.
    """

    __slots__ = ("F", "n", "pivots")

    def __init__(self, F: Field, n: int, rows: Iterable = ()):
        self.F = F
        self.n = n
        self.pivots: dict[int, dict] = {}
        for r in rows:
            self.add(r)

    def copy(self) -> "Echelon":
        e = Echelon(self.F, self.n)
        e.pivots = {c: dict(r) for c, r in self.pivots.items()}
        return e

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> dict:
        """Residue of v modulo the row space (zero at all pivot columns)."""
        r = _sparse(v, self.F)
        p = self.F.p
        piv = self.pivots
        for c in [c for c in r if c in piv]:
            f = r.get(c)
            if not f:
                continue
            for k, x in piv[c].items():
                y = r.get(k, 0) - f * x
                if p:
                    y %= p
                if y:
                    r[k] = y
                else:
                    r.pop(k, None)
        return r

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def add(self, v) -> bool:
        """Insert a row; return True iff it enlarged the row space."""
        r = self.reduce(v)
        if not r:
            return False
        F = self.F
        p = F.p
        c = min(r)
        inv = F.inv(r[c])
        if p:
            r = {k: (x * inv) % p for k, x in r.items()}
        else:
            r = {k: x * inv for k, x in r.items()}
        for row in self.pivots.values():
            f = row.get(c)
            if f:
                for k, x in r.items():
                    y = row.get(k, 0) - f * x
                    if p:
                        y %= p
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.pivots[c] = r
        return True

    def pivot_columns(self) -> list:
        return sorted(self.pivots)

    def free_columns(self) -> list:
        return [j for j in range(self.n) if j not in self.pivots]

    def rows_dense(self) -> list:
        z = self.F.zero
        out = []
        for c in sorted(self.pivots):
            row = [z] * self.n
            for k, x in self.pivots[c].items():
                row[k] = x
            out.append(row)
        return out

    def kernel(self) -> list:
        """Basis of {x : r.x = 0 for every row r}, one vector per free column."""
        F = self.F
        p = F.p
        z = F.zero
        basis = []
        cols_of = {}
        for c, row in self.pivots.items():
            for k, x in row.items():
                if k != c:
                    cols_of.setdefault(k, []).append((c, x))
        for f in self.free_columns():
            v = [z] * self.n
            v[f] = F.one
            for c, x in cols_of.get(f, ()):
                v[c] = (-x) % p if p else -x
            basis.append(v)
        return basis


def rref(m: Mat):
    """(reduced row-echelon matrix, pivot columns, rank)."""
    e = Echelon(m.F, m.cols, m.a)
    rows = e.rows_dense()
    piv = e.pivot_columns()
    z = m.F.zero
    rows += [[z] * m.cols for _ in range(m.rows - len(rows))]
    return Mat._raw(m.F, m.rows, m.cols, rows), piv, len(piv)


def kernel(m: Mat) -> list:
    """Basis (list of vectors) of the right kernel of m."""
    return Echelon(m.F, m.cols, m.a).kernel()


def rank(m: Mat) -> int:
    return Echelon(m.F, m.cols, m.a).rank


@dataclass
class Solution:
    particular: list
    kernel: list


def solve_rows(F: Field, n: int, rows: Iterable, rhs: Iterable) -> Solution:
    """Solve sum_j rows[i][j] x_j = rhs[i]; rows may be sparse dicts or lists.

    Raises :class:`NoSolution` when inconsistent.
    """
    e = Echelon(F, n + 1)
    p = F.p
    for r, b in zip(rows, rhs):
        d = _sparse(r, F)
        b = F(b)
        if b:
            d[n] = (-b) % p if p else -b
        e.add(d)
    if n in e.pivots:
        raise NoSolution("right-hand side outside the column span")
    z = F.zero
    x = [z] * n
    for c, row in e.pivots.items():
        t = row.get(n)
        if t:
            x[c] = (-t) % p if p else -t
    ker = [v[:n] for v in e.kernel() if v[n] == 0]
    return Solution(x, ker)


def solve(m: Mat, rhs: Mat) -> Solution:
    """Solve m X = rhs for a column block rhs; returns particular X and ker(m).

    The particular solution is returned as a Mat with rhs.cols columns.
    """
    if m.rows != rhs.rows:
        raise ValueError("row count mismatch")
    cols = []
    ker = None
    for j in range(rhs.cols):
        s = solve_rows(m.F, m.cols, m.a, rhs.column(j))
        cols.append(s.particular)
        ker = s.kernel
    if ker is None:
        ker = kernel(m)
    X = Mat.from_columns(m.F, cols, m.cols) if cols else Mat(m.F, m.cols, 0)
    return Solution(X, ker)


# ---------------------------------------------------------------------------
# subspaces and quotients
# ---------------------------------------------------------------------------


class Subspace:
    """Subspace of F^n with its canonical (RREF) basis."""

    __slots__ = ("F", "n", "_e")

    def __init__(self, F: Field, n: int, vectors: Iterable = ()):
        self.F = F
        self.n = n
        self._e = Echelon(F, n)
        for v in vectors:
            if not isinstance(v, dict) and len(v) != n:
                raise ValueError("vector length does not match ambient dimension")
            self._e.add(v)

    @classmethod
    def full(cls, F, n):
        s = cls(F, n)
        for i in range(n):
            s._e.pivots[i] = {i: F.one}
        return s

    @property
    def dim(self) -> int:
        return self._e.rank

    def basis(self) -> list:
        return self._e.rows_dense()

    def echelon(self) -> Echelon:
        return self._e

    def contains(self, v) -> bool:
        return self._e.contains(v)

    def reduce(self, v) -> dict:
        return self._e.reduce(v)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch {self.n} vs {other.n}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        s = Subspace(self.F, self.n)
        s._e = self._e.copy()
        for r in other._e.pivots.values():
            s._e.add(r)
        return s

    def annihilator(self) -> "Subspace":
        return Subspace(self.F, self.n, self._e.kernel())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    __and__ = intersect

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(r) for r in self._e.pivots.values())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self._e.pivots == other._e.pivots

    def __hash__(self):
        return hash((self.n, tuple(sorted((c, tuple(sorted(r.items()))) for c, r in self._e.pivots.items()))))

    def coordinates(self, v) -> list:
        """Coordinates of v in the canonical basis (v must lie in the subspace)."""
        r = self.reduce(v)
        if r:
            raise NoSolution("vector not in subspace")
        d = _sparse(v, self.F)
        return [d.get(c, self.F.zero) for c in self._e.pivot_columns()]

    def __repr__(self):
        return f"Subspace(dim {self.dim} in F^{self.n})"


class QuotientSpace:
    """F^n / sub, coordinatised by the non-pivot columns of sub's RREF.

    ``project(v)`` returns coordinates in F^{n - dim sub}; ``section(i)`` is
    the standard basis vector at the i-th complement column.
    """

    __slots__ = ("F", "n", "sub", "complement")

    def __init__(self, sub: Subspace):
        self.F = sub.F
        self.n = sub.n
        self.sub = sub
        self.complement = sub.echelon().free_columns()

    @property
    def dim(self) -> int:
        return len(self.complement)

    def project(self, v) -> list:
        r = self.sub.reduce(v)
        z = self.F.zero
        return [r.get(c, z) for c in self.complement]

    def section(self, i: int) -> list:
        v = [self.F.zero] * self.n
        v[self.complement[i]] = self.F.one
        return v

    def projection_matrix(self) -> Mat:
        cols = [self.project(_unit(self.F, self.n, j)) for j in range(self.n)]
        return Mat.from_columns(self.F, cols, self.dim)

    def section_matrix(self) -> Mat:
        return Mat.from_columns(self.F, [self.section(i) for i in range(self.dim)], self.n)


def quotient(ambient: int, sub: Subspace) -> QuotientSpace:
    if sub.n != ambient:
        raise ValueError("subspace lives in a different ambient space")
    return QuotientSpace(sub)


def _unit(F, n, j):
    v = [F.zero] * n
    v[j] = F.one
    return v


unit = _unit


def span_matrix_columns(m: Mat) -> Subspace:
    """Column space of m."""
    return Subspace(m.F, m.rows, m.columns())

"""Exact dense linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries.  Matrices act on
column vectors; column ``j`` of a matrix is the image of the ``j``-th basis
vector.  Vectors are plain tuples of fractions.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    IrrationalSpectrum,
    NotCommuting,
    NotDiagonalizable,
    SingularMatrix,
)

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x) -> Fraction:
    """Coerce ints, strings like ``"-3/4"`` and fractions to ``Fraction``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; pass a Fraction or 'p/q' string")
    return Fraction(x)


def vec(values: Iterable) -> Vector:
    return tuple(Q(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vec(v: Vector) -> bool:
    return not any(v)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v.denominator)
    return out


def integer_normalize(v: Vector) -> Vector:
    """Scale ``v`` to a primitive integer vector whose first nonzero entry is positive."""
    if is_zero_vec(v):
        return v
    scale = lcm_of_denominators(v)
    ints = [int(a * scale) for a in v]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    lead = next(a for a in ints if a)
    if lead < 0:
        g = -g
    return tuple(Fraction(a, g) for a in ints)


def _scaled_ints(rows) -> tuple[list[list[int]], int]:
    den = 1
    for r in rows:
        for x in r:
            if x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
    if den == 1:
        return [[x.numerator for x in r] for r in rows], 1
    return [[x.numerator * (den // x.denominator) for x in r] for r in rows], den


class Matrix:
    """Immutable rational matrix."""

    __slots__ = ("_rows", "nrows", "ncols", "_ints")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(Q(v) for v in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols
        self._ints = None

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        m = cls.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._ints = None
        return m

    def _scaled(self) -> tuple[list[list[int]], int]:
        if self._ints is None:
            self._ints = _scaled_ints(self._rows)
        return self._ints

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def diag(cls, entries: Iterable) -> "Matrix":
        e = [Q(v) for v in entries]
        n = len(e)
        return cls._raw(tuple(tuple(e[i] if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], nrows: int | None = None) -> "Matrix":
        if not columns:
            if nrows is None:
                raise ValueError("nrows is required when there are no columns")
            return cls._raw(tuple(() for _ in range(nrows)), 0)
        cols = [vec(c) for c in columns]
        return cls._raw(tuple(zip(*cols)), len(cols))

    @classmethod
    def elementary(cls, n: int, i: int, j: int) -> "Matrix":
        """The matrix unit E_ij (1 in row i, column j)."""
        return cls._raw(
            tuple(tuple(ONE if (r == i and c == j) else ZERO for c in range(n)) for r in range(n)), n
        )

    # -- access -----------------------------------------------------------
    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._rows[i][j]
        return self._rows[key]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def diagonal(self) -> Vector:
        return tuple(self._rows[i][i] for i in range(min(self.nrows, self.ncols)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._rows[i][j] for j in cols) for i in rows), len(cols))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    # -- arithmetic -------------------------------------------------------
    def _check_same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = Q(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            # integer products over a common denominator; far cheaper than Fraction arithmetic
            ia, da = self._scaled()
            ib, db = other._scaled()
            cols = other.ncols
            den = da * db
            out = []
            for r in ia:
                acc = [0] * cols
                for k, a in enumerate(r):
                    if a:
                        for j, b in enumerate(ib[k]):
                            if b:
                                acc[j] += a * b
                out.append(tuple(Fraction(x, den) if x else ZERO for x in acc))
            return Matrix._raw(tuple(out), cols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise DimensionMismatch(f"cannot apply {self.shape} matrix to vector of length {len(v)}")
        v = [Q(x) for x in v]
        iv, dv = _scaled_ints([v])
        iv = iv[0]
        ia, da = self._scaled()
        den = da * dv
        out = []
        for r in ia:
            acc = 0
            for a, b in zip(r, iv):
                if a and b:
                    acc += a * b
            out.append(Fraction(acc, den) if acc else ZERO)
        return tuple(out)

    def apply(self, v: Vector) -> Vector:
        return self @ v

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self) -> "Matrix":
        if not self.nrows:
            return Matrix._raw(tuple(() for _ in range(self.ncols)), 0)
        return Matrix._raw(tuple(zip(*self._rows)), self.nrows)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), ZERO)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def is_diagonal(self) -> bool:
        return all(not a for i, r in enumerate(self._rows) for j, a in enumerate(r) if i != j)

    def commutes_with(self, other: "Matrix") -> bool:
        return self @ other == other @ self

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(a) for a in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    def flatten(self) -> Vector:
        return tuple(a for r in self._rows for a in r)


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.nrows for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for r in b.rows:
            rows.append((ZERO,) * offset + r + (ZERO,) * (n - offset - b.ncols))
        offset += b.ncols
    return Matrix._raw(tuple(rows), n)


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan in place.  Returns (rows, pivot columns); zero rows sink to the bottom."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [v / piv for v in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def _null_vectors(reduced: list[list[Fraction]], pivots: list[int], ncols: int) -> list[Vector]:
    pivot_set = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(reduced, pivots):
            if row[f]:
                v[p] = -row[f]
        out.append(tuple(v))
    return out


def rref(m: Matrix) -> tuple[Matrix, int, "Subspace"]:
    """Reduced row-echelon form, rank and nullspace of ``m``."""
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    reduced = Matrix._raw(tuple(tuple(r) for r in rows), m.ncols)
    kernel = Subspace(m.ncols, _null_vectors(rows, pivots, m.ncols))
    return reduced, len(pivots), kernel


def pivot_columns(m: Matrix) -> list[int]:
    return _rref_rows([list(r) for r in m.rows], m.ncols)[1]


def null_basis(m: Matrix) -> list[Vector]:
    """Nullspace basis with one vector per free column, in free-column order.

    Unlike ``rref(m)[2].basis`` (which is itself row reduced), vector ``i`` has a
    1 in the ``i``-th free column and zeros in the other free columns.
    """
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    return _null_vectors(rows, pivots, m.ncols)


def null_basis_of_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    reduced, pivots = _rref_rows([list(r) for r in rows], ncols)
    return _null_vectors(reduced, pivots, ncols)


def _integer_rows(m: Matrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns the rows and the product of the scale factors."""
    out = []
    scale = 1
    for r in m.rows:
        s = lcm_of_denominators(r)
        out.append([int(a * s) for a in r])
        scale *= s
    return out, scale


def bareiss(m: Matrix) -> tuple[int, int, list[list[int]]]:
    """Fraction-free (Bareiss) forward elimination.

    Returns ``(rank, sign, echelon)`` where ``echelon`` is the integer echelon
    form of the row-scaled matrix and ``sign`` the parity of the row swaps.
    """
    a, _ = _integer_rows(m)
    nrows, ncols = m.nrows, m.ncols
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, ncols):
                q, rem = divmod(ai[j] * piv - f * a[r][j], prev)
                assert rem == 0, "Bareiss exact division failed"
                ai[j] = q
            ai[c] = 0
        prev = piv
        r += 1
    return r, sign, a


def rank(m: Matrix) -> int:
    return bareiss(m)[0]


def det(m: Matrix) -> Fraction:
    if not m.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return ONE
    _, scale = _integer_rows(m)
    r, sign, a = bareiss(m)
    if r < n:
        return ZERO
    return Fraction(sign * a[n - 1][n - 1], scale)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.nrows
    rows = [list(r) + list(unit_vec(n, i)) for i, r in enumerate(m.rows)]
    rows, pivots = _rref_rows(rows, 2 * n)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return Matrix._raw(tuple(tuple(r[n:]) for r in rows[:n]), n)


def solve(m: Matrix, b: Vector) -> Vector | None:
    """Some solution ``x`` of ``m x = b`` (free variables set to zero), or None."""
    n = m.ncols
    rows = [list(r) + [Q(bi)] for r, bi in zip(m.rows, b)]
    rows, pivots = _rref_rows(rows, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [ZERO] * n
    for row, p in zip(rows, pivots):
        x[p] = row[n]
    return tuple(x)


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of Q^n stored by its row-reduced basis."""

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Vector] = ()):
        rows = [list(vec(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(r)} in Q^{ambient_dim}")
        rows, pivots = _rref_rows(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in rows[: len(pivots)])
        self._pivots = tuple(pivots)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit_vec(n, i) for i in range(n)])

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, [unit_vec(n, i) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def reduce(self, v: Vector) -> Vector:
        """Residual of ``v`` after eliminating the pivot coordinates."""
        w = list(v)
        for row, p in zip(self.basis, self._pivots):
            c = w[p]
            if c:
                w = [a - c * b if b else a for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v: Vector) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        return is_zero_vec(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Vector) -> Vector:
        """Coefficients of ``v`` in ``self.basis``; raises if ``v`` is not in the span."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[p] for p in self._pivots)

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    __le__ = issubset

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def annihilator(self) -> "Subspace":
        """Vectors orthogonal (standard dot product) to every basis vector."""
        n = self.ambient_dim
        if not self.basis:
            return Subspace.full(n)
        return Subspace(n, _null_vectors([list(r) for r in self.basis], list(self._pivots), n))

    def intersection(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        return (self.annihilator() + other.annihilator()).annihilator()

    __and__ = intersection

    def coordinate_complement(self, candidates: Iterable[int] | None = None) -> list[int]:
        """Standard basis indices completing ``self`` to the whole space, greedily in order."""
        idx = range(self.ambient_dim) if candidates is None else candidates
        chosen: list[int] = []
        span = self
        for i in idx:
            e = unit_vec(self.ambient_dim, i)
            if not span.contains(e):
                chosen.append(i)
                span = span + Subspace(self.ambient_dim, [e])
        return chosen

    def is_zero(self) -> bool:
        return not self.basis

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in Q^{self.ambient_dim})"


# ---------------------------------------------------------------------------
# Polynomials (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------


def _ptrim(p: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def padd(p, q):
    n = max(len(p), len(q))
    return _ptrim([(p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO) for i in range(n)])


def psub(p, q):
    return padd(p, [-c for c in q])


def pmul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _ptrim(out)


def pdivmod(p, q):
    q = _ptrim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = _ptrim(p)
    if len(r) < len(q):
        return [], r
    quot = [ZERO] * (len(r) - len(q) + 1)
    lead = q[-1]
    while len(r) >= len(q) and r:
        shift = len(r) - len(q)
        c = r[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            r[i + shift] -= c * b
        r = _ptrim(r)
    return _ptrim(quot), r


def pderiv(p):
    return _ptrim([i * c for i, c in enumerate(p)][1:])


def pmonic(p):
    p = _ptrim(p)
    return [c / p[-1] for c in p] if p else p


def pgcd(p, q):
    a, b = _ptrim(p), _ptrim(q)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pgcdex(a, b):
    """Return ``(s, t, g)`` with ``s*a + t*b = g = gcd(a, b)`` (monic)."""
    r0, r1 = _ptrim(a), _ptrim(b)
    s0, s1 = [ONE], []
    t0, t1 = [], [ONE]
    while r1:
        qt, rem = pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, psub(s0, pmul(qt, s1))
        t0, t1 = t1, psub(t0, pmul(qt, t1))
    lead = r0[-1]
    return [c / lead for c in s0], [c / lead for c in t0], [c / lead for c in r0]


def peval(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def peval_matrix(p, m: Matrix) -> Matrix:
    n = m.nrows
    acc = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for c in reversed(p):
        acc = acc @ m + ident * c
    return acc


_DIVISOR_LIMIT = 10**6


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _roots_by_divisors(p, a0: int, an: int) -> list[Fraction]:
    found = []
    for num in _divisors(a0):
        for den in _divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in found and peval(p, cand) == 0:
                    found.append(cand)
                    if len(found) == len(p) - 1:
                        return found
    return found


def _sturm_chain(p):
    chain = [p, pderiv(p)]
    while True:
        _, r = pdivmod(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append([-c for c in r])


def _sign_changes(chain, x) -> int:
    signs = [v for v in (peval(q, x) for q in chain) if v]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def _isolate_real_roots(chain, lo: Fraction, hi: Fraction, out: list):
    """Intervals ``(lo, hi]`` holding exactly one root of the chain's square-free head."""
    count = _sign_changes(chain, lo) - _sign_changes(chain, hi)
    if count == 0:
        return
    if count == 1:
        out.append((lo, hi))
        return
    mid = (lo + hi) / 2
    _isolate_real_roots(chain, lo, mid, out)
    _isolate_real_roots(chain, mid, hi, out)


def _roots_by_isolation(p, ints: list[int]) -> list[Fraction]:
    """Rational roots of a square-free polynomial with large end coefficients.

    A rational root num/den in lowest terms has den | an, so an * root is an
    integer; each real root is isolated finely enough to pin that integer down.
    """
    an = abs(ints[-1])
    bound = 1 + max(abs(Fraction(c, ints[-1])) for c in ints[:-1])
    chain = _sturm_chain(p)
    intervals: list[tuple[Fraction, Fraction]] = []
    _isolate_real_roots(chain, -bound - 1, bound, intervals)
    found = []
    for lo, hi in intervals:
        while (hi - lo) * an >= Fraction(1, 4):
            mid = (lo + hi) / 2
            if _sign_changes(chain, lo) - _sign_changes(chain, mid):
                hi = mid
            else:
                lo = mid
        # at most one multiple of 1/an lies in (lo, hi]
        cand = Fraction(math.floor(hi * an), an)
        if lo < cand and peval(p, cand) == 0:
            found.append(cand)
    return found


def rational_roots(p) -> dict[Fraction, int]:
    """Rational roots of a polynomial (lowest degree first) with multiplicities."""
    p = _ptrim([Q(c) for c in p])
    if not p:
        raise ValueError("the zero polynomial has every number as a root")
    roots: dict[Fraction, int] = {}
    k = 0
    while p[0] == 0:
        p = p[1:]
        k += 1
    if k:
        roots[ZERO] = k
    if len(p) == 1:
        return roots
    squarefree = pdivmod(p, pgcd(p, pderiv(p)))[0]
    scale = lcm_of_denominators(squarefree)
    ints = [int(c * scale) for c in squarefree]
    if max(abs(ints[0]), abs(ints[-1])) <= _DIVISOR_LIMIT:
        found = _roots_by_divisors(squarefree, ints[0], ints[-1])
    else:
        found = _roots_by_isolation(squarefree, ints)
    for r in found:
        mult = 0
        lin = [-r, ONE]
        while True:
            quot, rem = pdivmod(p, lin)
            if rem:
                break
            p = quot
            mult += 1
        roots[r] = mult
    return dict(sorted(roots.items()))


# ---------------------------------------------------------------------------
# Spectral tools
# ---------------------------------------------------------------------------


def charpoly(m: Matrix) -> list[Fraction]:
    """Monic characteristic polynomial det(xI - m), highest degree first.

    Faddeev-LeVerrier recursion; exact over the rationals.
    """
    if not m.is_square:
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    n = m.nrows
    coeffs = [ONE]
    ident = Matrix.identity(n)
    aux = Matrix.zeros(n)
    for k in range(1, n + 1):
        aux = m @ aux + ident * coeffs[-1]
        coeffs.append(-(m @ aux).trace() / k)
    return coeffs


def spectrum(m: Matrix) -> dict[Fraction, int]:
    """Eigenvalues with algebraic multiplicities; raises if any is irrational."""
    cp = charpoly(m)
    roots = rational_roots(cp[::-1])
    if sum(roots.values()) != m.nrows:
        raise IrrationalSpectrum("characteristic polynomial has non-rational roots")
    return roots


def is_nilpotent_mat(m: Matrix) -> bool:
    if not m.is_square:
        raise DimensionMismatch("nilpotency of a non-square matrix")
    p = m
    for _ in range(max(m.nrows - 1, 0)):
        if p.is_zero():
            return True
        p = p @ m
    return p.is_zero()


def is_diagonalizable(m: Matrix) -> bool:
    """Diagonalizable over Q: rational spectrum and squarefree minimal polynomial."""
    roots = spectrum(m)
    n = m.nrows
    prod = Matrix.identity(n)
    ident = Matrix.identity(n)
    for lam in roots:
        prod = prod @ (m - ident * lam)
    return prod.is_zero()


def _crt_polynomial(residues: list[tuple[list[Fraction], list[Fraction]]]) -> list[Fraction]:
    """Polynomial r with r = a_i mod q_i for pairwise coprime moduli q_i."""
    r, mod = [], [ONE]
    for a, q in residues:
        s, _, g = pgcdex(mod, q)
        assert g == [ONE], "CRT moduli are not coprime"
        # r' = r + mod * ((a - r) * s mod q)
        corr = pdivmod(pmul(psub(a, r), s), q)[1]
        r = padd(r, pmul(mod, corr))
        mod = pmul(mod, q)
        r = pdivmod(r, mod)[1]
    return r


def jordan_chevalley(m: Matrix) -> tuple[Matrix, Matrix]:
    """Split ``m`` into commuting semisimple and nilpotent parts.

    The semisimple part is ``p(m)`` where ``p`` solves the congruences
    ``p = lam (mod (x - lam)^mult)`` for each eigenvalue; both parts are
    therefore polynomials in ``m``.
    """
    roots = spectrum(m)
    n = m.nrows
    residues = []
    for lam, mult in roots.items():
        q = [ONE]
        for _ in range(mult):
            q = pmul(q, [-lam, ONE])
        residues.append(([lam] if lam else [], q))
    p = _crt_polynomial(residues)
    semi = peval_matrix(p, m)
    nil = m - semi
    ident = Matrix.identity(n)
    check = Matrix.identity(n)
    for lam in roots:
        check = check @ (semi - ident * lam)
    assert semi + nil == m
    assert semi @ nil == nil @ semi
    assert is_nilpotent_mat(nil)
    assert check.is_zero(), "semisimple part is not diagonalizable"
    return semi, nil


# ---------------------------------------------------------------------------
# Spaces of nilpotent matrices
# ---------------------------------------------------------------------------


def _poly_matmul_linear(p_mat, lin_mat, d):
    """Product of a matrix of polynomials with a matrix of linear forms.

    Polynomials are dicts ``{sorted variable tuple: coefficient}``; linear forms
    are dicts ``{variable: coefficient}``.
    """
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc: dict = {}
            for k in range(d):
                left = p_mat[i][k]
                right = lin_mat[k][j]
                if not left or not right:
                    continue
                for mono, a in left.items():
                    for var, b in right.items():
                        key = tuple(sorted(mono + (var,)))
                        acc[key] = acc.get(key, ZERO) + a * b
            row.append({k: v for k, v in acc.items() if v})
        out.append(row)
    return out


def _trace_power_symbolic(basis: Sequence[Matrix], d: int):
    """Yield (k, trace polynomial of A^k) for the generic element A = sum t_i B_i."""
    lin = [[{} for _ in range(d)] for _ in range(d)]
    for v, b in enumerate(basis):
        for i in range(d):
            for j in range(d):
                if b[i, j]:
                    lin[i][j][v] = lin[i][j].get(v, ZERO) + b[i, j]
    power = [[{(v,): c for v, c in lin[i][j].items() if c} for j in range(d)] for i in range(d)]
    for k in range(1, d + 1):
        tr: dict = {}
        for i in range(d):
            for mono, c in power[i][i].items():
                tr[mono] = tr.get(mono, ZERO) + c
        yield k, {m: c for m, c in tr.items() if c}, power
        if k < d:
            power = _poly_matmul_linear(power, lin, d)


def common_flag(basis: Sequence[Matrix]) -> bool:
    """True if the matrices are simultaneously strictly upper triangularizable.

    Builds K_0 = 0, K_{i+1} = {v : B v in K_i for all B}; the chain reaching the
    whole space is a common flag, which makes every combination nilpotent.
    """
    d = basis[0].nrows
    current = Subspace.zero(d)
    while current.dim < d:
        # v with B v in current  <=>  annihilator(current) . B v = 0
        ann = current.annihilator().basis
        rows = [list((Matrix([f]) @ b).rows[0]) for b in basis for f in ann]
        nxt = Subspace(d, null_basis_of_rows(rows, d)) if rows else Subspace.full(d)
        if nxt.dim == current.dim:
            return False
        current = nxt
    return True


def _find_non_nilpotent(basis: Sequence[Matrix], tries: int = 32, seed: int = 0) -> bool:
    for b in basis:
        if not is_nilpotent_mat(b):
            return True
    rng = random.Random(seed)
    for _ in range(tries):
        a = Matrix.zeros(basis[0].nrows)
        for b in basis:
            a = a + b * rng.randint(-3, 3)
        if not is_nilpotent_mat(a):
            return True
    return False


def all_nilpotent_space(basis: Sequence[Matrix], method: str = "auto", max_points: int = 200_000) -> bool:
    """True iff every linear combination of ``basis`` is nilpotent.

    In characteristic zero a d x d matrix A is nilpotent iff tr(A^k) = 0 for
    1 <= k <= d.  For the generic element A(t) = sum t_i B_i each tr(A(t)^k) is
    a form of degree k in the t's, and the space is all-nilpotent iff all of
    them vanish identically.

    ``method="auto"`` first looks for a common flag (proves True) and then for
    an explicit non-nilpotent combination (proves False), falling back to the
    symbolic expansion only when both come up empty.
    ``method="symbolic"`` expands the trace forms exactly.  ``method="grid"``
    evaluates them on the grid {0..k}^b instead, which certifies vanishing of a
    degree-k polynomial; it is exponential in b and refuses past ``max_points``.
    """
    basis = list(basis)
    if not basis:
        return True
    d = basis[0].nrows
    for b in basis:
        if not b.is_square or b.nrows != d:
            raise DimensionMismatch("all matrices must be square of the same size")
    if method == "auto":
        if common_flag(basis):
            return True
        if _find_non_nilpotent(basis):
            return False
        method = "symbolic"
    if method == "symbolic":
        for _, tr, power in _trace_power_symbolic(basis, d):
            if tr:
                return False
            if all(not power[i][j] for i in range(d) for j in range(d)):
                return True
        return True
    if method == "grid":
        nb = len(basis)
        total = sum((k + 1) ** nb for k in range(1, d + 1))
        if total > max_points:
            raise ValueError(f"grid evaluation needs {total} points (> {max_points})")
        for k in range(1, d + 1):
            for point in itertools.product(range(k + 1), repeat=nb):
                a = Matrix.zeros(d)
                for t, b in zip(point, basis):
                    if t:
                        a = a + b * t
                if (a ** k).trace():
                    return False
        return True
    raise ValueError(f"unknown method {method!r}")


def simultaneous_eigenbasis(mats: Sequence[Matrix], blocks: Sequence[Sequence[int]] | None = None) -> Matrix:
    """Invertible P with P^-1 M P diagonal for every M in ``mats``.

    ``blocks`` optionally lists coordinate blocks that every matrix preserves;
    the returned columns then never mix blocks (used to keep parity).
    Columns are row-reduced within each joint eigenspace and ordered by the
    position of their leading entry, so inputs that are already diagonal give
    the identity.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].nrows
    for a in mats:
        if not a.is_square or a.nrows != n:
            raise DimensionMismatch("all matrices must be square of the same size")
    for a, b in itertools.combinations(mats, 2):
        if not a.commutes_with(b):
            raise NotCommuting("matrices do not commute")
    spectra = []
    for a in mats:
        roots = spectrum(a)
        if not is_diagonalizable(a):
            raise NotDiagonalizable("matrix is not diagonalizable")
        spectra.append(roots)
    if blocks is None:
        spaces = [[unit_vec(n, i) for i in range(n)]]
    else:
        spaces = [[unit_vec(n, i) for i in blk] for blk in blocks if blk]
    ident = Matrix.identity(n)
    for a, roots in zip(mats, spectra):
        refined = []
        for space in spaces:
            bmat = Matrix.from_columns(space, n)
            for lam in roots:
                coeffs = null_basis((a - ident * lam) @ bmat)
                vecs = [bmat @ c for c in coeffs]
                if vecs:
                    refined.append(vecs)
        spaces = refined
    columns = []
    for space in spaces:
        columns.extend(Subspace(n, space).basis)

    def key(v):
        lead = next(i for i, x in enumerate(v) if x)
        return (lead, tuple(-x for x in v))

    columns.sort(key=key)
    if len(columns) != n:
        raise NotDiagonalizable("joint eigenvectors do not span the space")
    return Matrix.from_columns(columns)

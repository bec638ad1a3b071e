"""Lie superalgebras given by structure constants.

Basis order is always (even labels..., odd labels...).  Only one orientation
of each basis bracket is stored: ``[e_i, e_j]`` with ``i < j``, plus the
squares ``[y, y]`` of odd basis vectors.  The mirror bracket follows from
super skew-symmetry ``[b, a] = -(-1)^{|a||b|} [a, b]``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    DuplicateBracket,
    NotHomogeneous,
    ParityMismatch,
    SingularMatrix,
    UnknownLabel,
)
from .linalg import (
    ZERO,
    Matrix,
    Q,
    Subspace,
    Vector,
    block_diag,
    det,
    inverse,
    null_basis_of_rows,
    unit_vec,
)


class Parity(enum.IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    def __str__(self):
        return self.name.lower()


def sign(p: int, q: int) -> int:
    """(-1)^(p*q)."""
    return -1 if (p & q & 1) else 1


def _canonical(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i <= j else (j, i)


class SuperAlgebra:
    """A finite-dimensional Lie superalgebra over Q.

    ``table`` maps canonical index pairs ``(i, j)`` (``i <= j``) to sparse
    coordinate dicts ``{k: coefficient}``.  Use :meth:`from_brackets` to build
    one from labelled brackets in either orientation.
    """

    def __init__(
        self,
        name: str,
        even: Sequence[str],
        odd: Sequence[str],
        table: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
        generator_marks: Iterable[str] | None = None,
    ):
        self.name = name
        self.even = tuple(even)
        self.odd = tuple(odd)
        labels = self.even + self.odd
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")
        self._index = {lab: i for i, lab in enumerate(labels)}
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coords in (table or {}).items():
            if not (0 <= i <= j < self.dim):
                raise ValueError(f"bracket index pair {(i, j)} is not canonical")
            if i == j and i < self.n:
                raise ValueError("[x, x] of an even basis vector is zero by skew-symmetry")
            entry = {int(k): Q(c) for k, c in coords.items() if Q(c)}
            if entry:
                clean[(i, j)] = entry
        self._table = dict(sorted(clean.items()))
        if generator_marks is not None:
            marks = tuple(generator_marks)
            for lab in marks:
                if lab not in self._index:
                    raise UnknownLabel(f"generator mark {lab!r} is not a basis label")
            self.generator_marks: tuple[str, ...] | None = marks
        else:
            self.generator_marks = None

    # -- construction -------------------------------------------------------
    @classmethod
    def from_brackets(
        cls,
        name: str,
        even: Sequence[str],
        odd: Sequence[str],
        brackets: Mapping[tuple[str, str], Mapping[str, object]],
        generator_marks: Iterable[str] | None = None,
    ) -> "SuperAlgebra":
        """Build from ``{(a, b): {c: coeff}}`` with labels; one orientation per pair."""
        labels = tuple(even) + tuple(odd)
        index = {lab: i for i, lab in enumerate(labels)}
        nev = len(even)
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        seen: set[tuple[int, int]] = set()
        for (a, b), rhs in brackets.items():
            for lab in (a, b, *rhs):
                if lab not in index:
                    raise UnknownLabel(f"unknown basis label {lab!r}")
            i, j = index[a], index[b]
            key = _canonical(i, j)
            if key in seen:
                raise DuplicateBracket(f"bracket [{a},{b}] given twice (in some orientation)")
            seen.add(key)
            pi, pj = int(i >= nev), int(j >= nev)
            target_parity = (pi + pj) % 2
            coords = {}
            for lab, c in rhs.items():
                c = Q(c)
                if not c:
                    continue
                if int(index[lab] >= nev) != target_parity:
                    raise ParityMismatch(f"[{a},{b}] must land in the {'odd' if target_parity else 'even'} part, got {lab}")
                coords[index[lab]] = coords.get(index[lab], ZERO) + c
            if i == j and pi == 0 and any(coords.values()):
                raise ValueError(f"[{a},{a}] of an even element must vanish")
            if (i, j) != key:
                s = -sign(pi, pj)
                coords = {k: s * c for k, c in coords.items()}
            if any(coords.values()):
                table[key] = coords
        return cls(name, even, odd, table, generator_marks)

    # -- basic data ---------------------------------------------------------
    @cached_property
    def n(self) -> int:
        return len(self.even)

    @cached_property
    def m(self) -> int:
        return len(self.odd)

    @cached_property
    def dim(self) -> int:
        return self.n + self.m

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return self.even + self.odd

    @property
    def table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return {k: dict(v) for k, v in self._table.items()}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown basis label {label!r}") from None

    def parity(self, i: int) -> Parity:
        return Parity.ODD if i >= self.n else Parity.EVEN

    @property
    def even_indices(self) -> range:
        return range(self.n)

    @property
    def odd_indices(self) -> range:
        return range(self.n, self.dim)

    def basis_vector(self, which) -> Vector:
        i = self.index(which) if isinstance(which, str) else which
        return unit_vec(self.dim, i)

    def vector(self, coords: Mapping[str, object]) -> Vector:
        v = [ZERO] * self.dim
        for lab, c in coords.items():
            v[self.index(lab)] += Q(c)
        return tuple(v)

    def parity_of(self, v: Vector) -> Parity | None:
        """Parity of a homogeneous vector (zero counts as even); None if mixed."""
        has_even = any(v[: self.n])
        has_odd = any(v[self.n :])
        if has_even and has_odd:
            return None
        return Parity.ODD if has_odd else Parity.EVEN

    def format_vector(self, v: Vector) -> str:
        terms = []
        for c, lab in zip(v, self.labels):
            if not c:
                continue
            if c == 1:
                terms.append(lab)
            elif c == -1:
                terms.append(f"-{lab}")
            else:
                terms.append(f"{c}*{lab}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    # -- brackets -----------------------------------------------------------
    @cached_property
    def _full(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        full: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coords in self._table.items():
            full[(i, j)] = coords
            if i != j:
                s = -sign(self.parity(i), self.parity(j))
                full[(j, i)] = {k: s * c for k, c in coords.items()}
        return full

    def basis_bracket(self, i: int, j: int) -> dict[int, Fraction]:
        """Sparse coordinates of ``[e_i, e_j]`` for any orientation."""
        return self._full.get((i, j), {})

    def _bracket_sparse(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        full = self._full
        for i, a in u.items():
            for j, b in v.items():
                entry = full.get((i, j))
                if entry:
                    ab = a * b
                    for k, c in entry.items():
                        out[k] = out.get(k, ZERO) + ab * c
        return {k: c for k, c in out.items() if c}

    def bracket(self, u: Vector, v: Vector) -> Vector:
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch(f"vectors must have length {self.dim}")
        su = {i: c for i, c in enumerate(u) if c}
        sv = {i: c for i, c in enumerate(v) if c}
        out = self._bracket_sparse(su, sv)
        return tuple(out.get(k, ZERO) for k in range(self.dim))

    def structure_constants(self):
        """Yield ``(kind, i, j, t, value)`` for each nonzero stored constant.

        ``kind`` is ``"gamma"`` for [x_i, x_j] = .. x_t, ``"delta"`` for
        [y_i, y_j] = .. x_t and ``"eta"`` for [x_i, y_j] = .. y_t.  Indices are
        local to the even or odd part (0-based).
        """
        n = self.n
        for (i, j), coords in self._table.items():
            for t, c in sorted(coords.items()):
                if i < n and j < n:
                    yield ("gamma", i, j, t, c)
                elif i >= n and j >= n:
                    yield ("delta", i - n, j - n, t, c)
                else:
                    yield ("eta", i, j - n, t - n, c)

    # -- derived algebras ---------------------------------------------------
    def renamed(self, name: str) -> "SuperAlgebra":
        return SuperAlgebra(name, self.even, self.odd, self._table, self.generator_marks)

    def even_part(self) -> "SuperAlgebra":
        """The even part as a Lie algebra (a superalgebra with no odd labels)."""
        table = {k: v for k, v in self._table.items() if k[1] < self.n}
        marks = None
        if self.generator_marks is not None:
            marks = [g for g in self.generator_marks if self.index(g) < self.n]
        return SuperAlgebra(f"{self.name}_even", self.even, (), table, marks)

    def restrict(self, indices: Sequence[int], name: str | None = None) -> "SuperAlgebra":
        """The subalgebra spanned by the given basis vectors (must be closed)."""
        indices = sorted(indices)
        pos = {i: p for p, i in enumerate(indices)}
        table = {}
        for i, j in itertools.combinations_with_replacement(indices, 2):
            coords = self._table.get((i, j))
            if not coords:
                continue
            if any(k not in pos for k in coords):
                raise ValueError("basis vectors do not span a subalgebra")
            table[(pos[i], pos[j])] = {pos[k]: c for k, c in coords.items()}
        even = [self.labels[i] for i in indices if i < self.n]
        odd = [self.labels[i] for i in indices if i >= self.n]
        return SuperAlgebra(name or f"{self.name}_sub", even, odd, table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperAlgebra):
            return NotImplemented
        return (self.even, self.odd, self._table) == (other.even, other.odd, other._table)

    def __hash__(self):
        return hash((self.even, self.odd, tuple((k, tuple(sorted(v.items()))) for k, v in self._table.items())))

    def __repr__(self) -> str:
        return f"SuperAlgebra({self.name!r}, dim=({self.n}|{self.m}), {len(self._table)} brackets)"


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    name: str
    parity_violations: list[tuple[str, str]] = field(default_factory=list)
    skew_violations: list[tuple[str, str]] = field(default_factory=list)
    jacobi_violations: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.parity_violations or self.skew_violations or self.jacobi_violations)

    def __bool__(self) -> bool:
        return self.ok


def validate(a: SuperAlgebra) -> ValidationReport:
    """Check grading, super skew-symmetry and the super Jacobi identity.

    Jacobi is tested on every ordered basis triple in the form
    ``[x,[y,z]] = [[x,y],z] - (-1)^{|y||z|} [[x,z],y]``.
    """
    report = ValidationReport(a.name)
    labels = a.labels
    for (i, j), coords in a._table.items():
        want = a.parity(i) + a.parity(j)
        if any(a.parity(k) != want for k in coords):
            report.parity_violations.append((labels[i], labels[j]))
    for i, j in itertools.product(range(a.dim), repeat=2):
        s = -sign(a.parity(i), a.parity(j))
        lhs = a.basis_bracket(j, i)
        rhs = {k: s * c for k, c in a.basis_bracket(i, j).items()}
        if lhs != rhs:
            report.skew_violations.append((labels[i], labels[j]))
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
        lhs = a._bracket_sparse(ei, a._bracket_sparse(ej, ek))
        t1 = a._bracket_sparse(a._bracket_sparse(ei, ej), ek)
        t2 = a._bracket_sparse(a._bracket_sparse(ei, ek), ej)
        s = sign(a.parity(j), a.parity(k))
        rhs = dict(t1)
        for key, c in t2.items():
            rhs[key] = rhs.get(key, ZERO) - s * c
        rhs = {key: c for key, c in rhs.items() if c}
        if lhs != rhs:
            report.jacobi_violations.append((labels[i], labels[j], labels[k]))
    return report


def bracket(a: SuperAlgebra, u: Vector, v: Vector) -> Vector:
    return a.bracket(u, v)


def ad_matrix(a: SuperAlgebra, x: Vector) -> Matrix:
    """Matrix of ``y -> [y, x]``; ``x`` must be homogeneous."""
    if len(x) != a.dim:
        raise DimensionMismatch(f"vector must have length {a.dim}")
    if a.parity_of(x) is None:
        raise NotHomogeneous("ad_x needs a homogeneous x")
    return _ad(a, x)


def _ad(a: SuperAlgebra, x: Vector) -> Matrix:
    sx = {i: c for i, c in enumerate(x) if c}
    cols = []
    for j in range(a.dim):
        out = a._bracket_sparse({j: 1}, sx)
        cols.append(tuple(out.get(k, ZERO) for k in range(a.dim)))
    return Matrix.from_columns(cols, a.dim)


def ad_basis(a: SuperAlgebra, i: int) -> Matrix:
    return _ad(a, unit_vec(a.dim, i))


def inner_derivation(a: SuperAlgebra, x: Vector) -> Matrix:
    """Matrix of ``y -> (-1)^{|x||y|} [y, x]``, i.e. ``-[x, y]``.

    This agrees with ``ad_x`` for even ``x``.  For odd ``x`` the plain right
    multiplication ``y -> [y, x]`` does not obey the left-signed Leibniz rule,
    and the parity twist is what makes it a superderivation.
    """
    ad = ad_matrix(a, x)
    if a.parity_of(x) == Parity.EVEN:
        return ad
    flip = Matrix.diag([1] * a.n + [-1] * a.m)
    return ad @ flip


def change_basis(a: SuperAlgebra, p_even: Matrix, p_odd: Matrix, name: str | None = None) -> SuperAlgebra:
    """Structure constants in the basis given by the columns of ``p_even`` and ``p_odd``.

    Column ``j`` of ``p_even`` holds the old coordinates of the new ``j``-th
    even basis vector (same for the odd part).  Labels are kept.
    """
    if p_even.shape != (a.n, a.n) or p_odd.shape != (a.m, a.m):
        raise DimensionMismatch("change of basis must be (n x n, m x m)")
    if (a.n and det(p_even) == 0) or (a.m and det(p_odd) == 0):
        raise SingularMatrix("change of basis matrix is singular")
    if a.n and a.m:
        p = block_diag(p_even, p_odd)
    else:
        p = p_even if a.n else p_odd
    pinv = inverse(p)
    cols = p.columns()
    table = {}
    for i in range(a.dim):
        for j in range(i, a.dim):
            if i == j and i < a.n:
                continue
            old = a.bracket(cols[i], cols[j])
            if any(old):
                new = pinv @ old
                table[(i, j)] = {k: c for k, c in enumerate(new) if c}
    marks = a.generator_marks
    return SuperAlgebra(name or a.name, a.even, a.odd, table, marks)


def subspace_bracket(a: SuperAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """Span of ``[b, c]`` over basis vectors ``b`` of ``u`` and ``c`` of ``v``."""
    if u.ambient_dim != a.dim or v.ambient_dim != a.dim:
        raise DimensionMismatch("subspaces must live in the algebra's coordinate space")
    vecs = []
    for b in u.basis:
        sb = {i: c for i, c in enumerate(b) if c}
        for c in v.basis:
            sc = {i: x for i, x in enumerate(c) if x}
            out = a._bracket_sparse(sb, sc)
            if out:
                vecs.append(tuple(out.get(k, ZERO) for k in range(a.dim)))
    return Subspace(a.dim, vecs)


def center(a: SuperAlgebra) -> Subspace:
    """``{z : [z, e_j] = 0 for every basis vector e_j}``."""
    rows = []
    for j in range(a.dim):
        for k in range(a.dim):
            row = [a.basis_bracket(i, j).get(k, ZERO) for i in range(a.dim)]
            if any(row):
                rows.append(row)
    return Subspace(a.dim, null_basis_of_rows(rows, a.dim))


def even_subspace(a: SuperAlgebra) -> Subspace:
    return Subspace.coordinate(a.dim, a.even_indices)


def odd_subspace(a: SuperAlgebra) -> Subspace:
    return Subspace.coordinate(a.dim, a.odd_indices)


def span_labels(a: SuperAlgebra, labels: Iterable[str]) -> Subspace:
    return Subspace.coordinate(a.dim, [a.index(lab) for lab in labels])


def abelian(n: int, m: int, name: str = "abelian") -> SuperAlgebra:
    return SuperAlgebra(name, [f"x{i + 1}" for i in range(n)], [f"y{i + 1}" for i in range(m)], {})

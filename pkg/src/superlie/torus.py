"""Root systems, diagonal and maximal tori, weight decompositions."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import SuperAlgebra, change_basis
from .derivations import Derivation, derivation_space, is_superderivation
from .errors import IrrationalSpectrum, NotNilpotent
from .linalg import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    integer_normalize,
    inverse,
    jordan_chevalley,
    null_basis,
    null_basis_of_rows,
    rank,
    simultaneous_eigenbasis,
)
from .structure import generator_space, is_nilpotent


@dataclass(frozen=True)
class RootSystem:
    """Rows over the unknowns (alpha_1..alpha_n, beta_1..beta_m).

    ``row_tags[k]`` names the structure constant that produced row ``k`` as
    ``(kind, i, j, t)`` with local 0-based indices.
    """

    matrix: Matrix
    row_tags: tuple[tuple[str, int, int, int], ...]
    n: int
    m: int

    @property
    def rank(self) -> int:
        if not self.row_tags:
            return 0
        return rank(self.matrix)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"alpha{i + 1}" for i in range(self.n)) + tuple(f"beta{j + 1}" for j in range(self.m))

    def equations(self) -> list[str]:
        out = []
        for row in self.matrix.rows:
            terms = []
            for c, v in zip(row, self.variables):
                if c:
                    terms.append(f"{'+' if c > 0 else '-'} {abs(c) if abs(c) != 1 else ''}{v}")
            text = " ".join(terms)
            lead = text[:2]
            text = text[2:] if lead == "+ " else "-" + text[2:] if lead == "- " else text
            out.append((text or "0") + " = 0")
        return out


def build_root_system(a: SuperAlgebra) -> RootSystem:
    """One row per distinct condition forced on a diagonal even derivation."""
    n, m = a.n, a.m
    rows, tags, seen = [], [], set()
    for kind, i, j, t, _ in a.structure_constants():
        row = [ZERO] * (n + m)
        if kind == "gamma":
            row[i] += 1
            row[j] += 1
            row[t] -= 1
        elif kind == "delta":
            row[n + i] += 1
            row[n + j] += 1
            row[t] -= 1
        else:
            row[i] += 1
            row[n + j] += 1
            row[n + t] -= 1
        key = tuple(row)
        if key in seen:
            continue
        seen.add(key)
        rows.append(key)
        tags.append((kind, i, j, t))
    mat = Matrix(rows, n + m) if rows else Matrix.zeros(0, n + m)
    return RootSystem(mat, tuple(tags), n, m)


def diagonal_torus(a: SuperAlgebra) -> list[Derivation]:
    """Nullspace of the root system, placed on the diagonal (integer entries)."""
    rs = build_root_system(a)
    if rs.row_tags:
        vecs = null_basis(rs.matrix)
    else:
        vecs = [tuple(ONE if k == i else ZERO for k in range(a.dim)) for i in range(a.dim)]
    gens = []
    for v in vecs:
        d = Derivation(Matrix.diag(integer_normalize(v)), 0, a)
        assert is_superderivation(a, d.map, 0), "root-system solution is not a derivation"
        gens.append(d)
    return gens


def rank_and_torus_dim(a: SuperAlgebra) -> tuple[int, int]:
    if not is_nilpotent(a):
        raise NotNilpotent(f"{a.name} is not nilpotent")
    r = build_root_system(a).rank
    return r, a.dim - r


@dataclass(frozen=True)
class Torus:
    """Commuting diagonalizable even derivations, diagonal in ``algebra``.

    ``algebra`` is the input algebra rewritten in the basis given by the
    columns of ``diag_basis``; ``generators`` are diagonal matrices there.
    ``rank_in_basis`` is the root-system rank of the input basis.
    """

    generators: tuple[Derivation, ...]
    diag_basis: Matrix
    algebra: SuperAlgebra
    rank_in_basis: int
    rounds: int = 0

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def weights(self) -> tuple[tuple[Fraction, ...], ...]:
        """Per basis vector of ``algebra``, its eigenvalue under each generator."""
        return tuple(tuple(g.map[i, i] for g in self.generators) for i in range(self.algebra.dim))

    def span(self) -> Subspace:
        """Span of the generator diagonals (as vectors)."""
        return Subspace(self.algebra.dim, [g.map.diagonal() for g in self.generators])

    def in_original_basis(self) -> list[Matrix]:
        p = self.diag_basis
        pinv = inverse(p)
        return [p @ g.map @ pinv for g in self.generators]


def _flat_span(mats: list[Matrix], size: int) -> Subspace:
    return Subspace(size * size, [m.flatten() for m in mats])


def centralizer_in_der0(a: SuperAlgebra, torus: list[Matrix]) -> list[Matrix]:
    """Basis of ``{D in Der_0 : [D, t] = 0 for all t in torus}``."""
    basis = [d.map for d in derivation_space(a, 0)]
    if not basis:
        return []
    if not torus:
        return basis
    cols = []
    for b in basis:
        col = []
        for t in torus:
            col.extend((b @ t - t @ b).flatten())
        cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    out = []
    for coeffs in null_basis_of_rows(rows, len(basis)):
        m = Matrix.zeros(a.dim)
        for c, b in zip(coeffs, basis):
            if c:
                m = m + b * c
        out.append(m)
    return out


def _parity_blocks(a: SuperAlgebra) -> list[list[int]]:
    return [list(a.even_indices), list(a.odd_indices)]


def maximal_torus(a: SuperAlgebra, extra_tries: int = 4, seed: int = 0) -> Torus:
    """Diagonal torus of the given basis, enlarged while possible.

    Each round takes the semisimple parts of the centralizer of the current
    torus in Der_0 (basis elements plus a few seeded random combinations).  A
    semisimple part outside the torus span is adjoined, the family is
    diagonalized simultaneously inside each parity block and the algebra is
    rewritten in that basis.  Candidates whose spectrum is not rational are
    skipped; if nothing else extends the torus, ``IrrationalSpectrum`` is raised
    carrying the torus found so far.
    """
    if not is_nilpotent(a):
        raise NotNilpotent(f"{a.name} is not nilpotent")
    r0 = build_root_system(a).rank
    rng = random.Random(seed)
    cur = a
    p = Matrix.identity(a.dim)
    rounds = 0
    for rounds in range(a.dim + 1):
        gens = diagonal_torus(cur)
        tmats = [g.map for g in gens]
        tspan = _flat_span(tmats, cur.dim)
        cent = centralizer_in_der0(cur, tmats)
        candidates = list(cent)
        for _ in range(extra_tries if len(cent) > 1 else 0):
            m = Matrix.zeros(cur.dim)
            for b in cent:
                m = m + b * rng.randint(-3, 3)
            candidates.append(m)
        found = None
        irrational = False
        for c in candidates:
            try:
                semi, _ = jordan_chevalley(c)
            except IrrationalSpectrum:
                irrational = True
                continue
            if semi.flatten() in tspan:
                continue
            assert is_superderivation(cur, semi, 0), "semisimple part of a derivation is not a derivation"
            found = semi
            break
        if found is None:
            torus = Torus(tuple(gens), p, cur, r0, rounds)
            if irrational:
                raise IrrationalSpectrum("centralizer element with irrational spectrum", partial=torus)
            return torus
        q = simultaneous_eigenbasis(tmats + [found], _parity_blocks(cur))
        q_even = q.submatrix(list(cur.even_indices), list(cur.even_indices))
        q_odd = q.submatrix(list(cur.odd_indices), list(cur.odd_indices))
        cur = change_basis(cur, q_even, q_odd)
        p = p @ q
    raise AssertionError("torus improvement did not terminate")


def is_maximal_rank(a: SuperAlgebra) -> bool:
    gs = generator_space(a)
    return maximal_torus(a).dim == gs.k + gs.s


def weight_decomposition(t: Torus, a: SuperAlgebra | None = None) -> list[tuple[tuple[Fraction, ...], Subspace]]:
    """Group basis vectors of the torus's algebra by weight tuple.

    Asserts ``[L_u, L_v] ⊆ L_{u+v}`` on basis vectors.
    """
    alg = t.algebra if a is None else a
    if alg.dim != t.algebra.dim:
        raise ValueError("torus and algebra dimensions differ")
    for g in t.generators:
        if not g.map.is_diagonal():
            raise ValueError("torus generators must be diagonal in the algebra's basis")
    w = t.weights
    groups: dict[tuple, list[int]] = {}
    for i, wt in enumerate(w):
        groups.setdefault(wt, []).append(i)
    for i, j in itertools.product(range(alg.dim), repeat=2):
        target = tuple(x + y for x, y in zip(w[i], w[j]))
        for k in alg.basis_bracket(i, j):
            assert w[k] == target, f"bracket of basis {i},{j} leaves the weight {target}"
    return [(wt, Subspace.coordinate(alg.dim, idx)) for wt, idx in sorted(groups.items())]

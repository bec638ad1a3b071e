"""Superderivations: spaces, brackets, power-Leibniz rules and weight spaces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import Parity, SuperAlgebra, inner_derivation, sign, subspace_bracket
from .errors import DimensionMismatch, NotADerivation, NotSemisimple
from .linalg import ONE, ZERO, Matrix, Subspace, all_nilpotent_space, is_nilpotent_mat, jordan_chevalley, null_basis_of_rows, spectrum

Vec = tuple


@dataclass(frozen=True)
class Derivation:
    """A parity-homogeneous linear map (columns are images of basis vectors).

    ``algebra`` is optional; when present, brackets re-check the result.
    """

    map: Matrix
    parity: Parity
    algebra: SuperAlgebra | None = None

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity(self.parity))
        if self.algebra is not None:
            if self.map.shape != (self.algebra.dim, self.algebra.dim):
                raise DimensionMismatch("derivation matrix does not match the algebra")
            if not respects_parity(self.algebra, self.map, self.parity):
                raise NotADerivation("matrix has entries outside its parity block pattern")

    def __call__(self, v: Vec) -> Vec:
        return self.map @ v

    def __matmul__(self, other: "Derivation") -> Matrix:
        return self.map @ other.map


def respects_parity(a: SuperAlgebra, d: Matrix, parity) -> bool:
    p = int(parity)
    for r in range(a.dim):
        for c in range(a.dim):
            if d[r, c] and (int(a.parity(r)) + int(a.parity(c))) % 2 != p:
                return False
    return True


def _unknowns(a: SuperAlgebra, parity) -> list[tuple[int, int]]:
    p = int(parity)
    return [
        (r, c)
        for r in range(a.dim)
        for c in range(a.dim)
        if (int(a.parity(r)) + int(a.parity(c))) % 2 == p
    ]


def _pairs(a: SuperAlgebra):
    """Canonical basis pairs; [x,x] for even x carries no constraint."""
    for i in range(a.dim):
        for j in range(i, a.dim):
            if i == j and i < a.n:
                continue
            yield i, j


def derivation_system(a: SuperAlgebra, parity) -> tuple[list[list[Fraction]], list[tuple[int, int]]]:
    """Rows of the linear system whose nullspace is Der(a) of the given parity.

    Unknown ``(r, c)`` is the entry ``d[r, c]``.  Imposing
    ``d[e_i,e_j] - [d e_i, e_j] - (-1)^{|d||e_i|} [e_i, d e_j] = 0`` on canonical
    pairs gives one row per output coordinate.
    """
    p = int(parity)
    unknowns = _unknowns(a, p)
    pos = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for i, j in _pairs(a):
        cij = a.basis_bracket(i, j)
        s = sign(p, int(a.parity(i)))
        eq: dict[int, dict[int, Fraction]] = {}

        def add(k, u, c):
            if c and u in pos:
                eq.setdefault(k, {})
                eq[k][pos[u]] = eq[k].get(pos[u], ZERO) + c

        # d applied to [e_i, e_j]: d[r,c] contributes C_ij[c] e_r
        for c, coeff in cij.items():
            for r in range(a.dim):
                add(r, (r, c), coeff)
        # - [d e_i, e_j]: d[r,i] contributes -[e_r, e_j]
        for r in range(a.dim):
            for k, coeff in a.basis_bracket(r, j).items():
                add(k, (r, i), -coeff)
        # - s [e_i, d e_j]: d[r,j] contributes -s [e_i, e_r]
        for r in range(a.dim):
            for k, coeff in a.basis_bracket(i, r).items():
                add(k, (r, j), -s * coeff)
        for coeffs in eq.values():
            row = [ZERO] * len(unknowns)
            for u, c in coeffs.items():
                row[u] = c
            if any(row):
                rows.append(row)
    return rows, unknowns


def derivation_space(a: SuperAlgebra, parity) -> list[Derivation]:
    """Basis of Der(a) in the given parity, as matrices."""
    parity = Parity(int(parity))
    rows, unknowns = derivation_system(a, parity)
    out = []
    for sol in null_basis_of_rows(rows, len(unknowns)):
        entries = [[ZERO] * a.dim for _ in range(a.dim)]
        for (r, c), v in zip(unknowns, sol):
            entries[r][c] = v
        d = Derivation(Matrix(entries), parity, a)
        if not is_superderivation(a, d.map, parity):
            raise NotADerivation("nullspace vector fails the Leibniz rule")
        out.append(d)
    return out


def is_superderivation(a: SuperAlgebra, d: Matrix, parity) -> bool:
    """Check the signed Leibniz rule on every ordered pair of basis vectors."""
    if d.shape != (a.dim, a.dim):
        raise DimensionMismatch("map must be square of the algebra's dimension")
    p = int(parity)
    if not respects_parity(a, d, p):
        return False
    # sparse columns; all work below stays in dicts
    cols = [{r: c for r, c in enumerate(col) if c} for col in d.columns()]
    for i, j in itertools.product(range(a.dim), repeat=2):
        lhs: dict[int, Fraction] = {}
        for k, c in a.basis_bracket(i, j).items():
            for r, x in cols[k].items():
                lhs[r] = lhs.get(r, ZERO) + c * x
        s = sign(p, int(a.parity(i)))
        for r, x in a._bracket_sparse(cols[i], {j: ONE}).items():
            lhs[r] = lhs.get(r, ZERO) - x
        for r, x in a._bracket_sparse({i: ONE}, cols[j]).items():
            lhs[r] = lhs.get(r, ZERO) - s * x
        if any(lhs.values()):
            return False
    return True


def der_bracket(d1: Derivation, d2: Derivation) -> Derivation:
    """``[d1, d2] = d1 d2 - (-1)^{|d1||d2|} d2 d1``."""
    if d1.map.shape != d2.map.shape:
        raise DimensionMismatch("derivations act on different spaces")
    s = sign(d1.parity, d2.parity)
    m = d1.map @ d2.map - (d2.map @ d1.map) * s
    parity = d1.parity + d2.parity
    alg = d1.algebra if d1.algebra is not None else d2.algebra
    if alg is not None:
        assert is_superderivation(alg, m, parity), "bracket of derivations is not a derivation"
    return Derivation(m, parity, alg)


def ad_derivation(a: SuperAlgebra, i: int) -> Derivation:
    """Inner superderivation attached to the basis vector ``e_i``."""
    return Derivation(inner_derivation(a, a.basis_vector(i)), a.parity(i), a)


def _apply_power(d: Matrix, k: int, v: Vec) -> Vec:
    for _ in range(k):
        v = d @ v
    return v


def leibniz_power_check(a: SuperAlgebra, d: Derivation, r: int) -> bool:
    """Binomial expansion of ``d^r`` on brackets of basis vectors.

    Even ``d``: ``d^r[x,y] = sum C(r,i) [d^i x, d^{r-i} y]``.
    Odd ``d`` only squares behave like even maps, so
    ``d^{2q}[x,y] = sum C(q,i) [d^{2i} x, d^{2(q-i)} y]`` and
    ``d^{2q+1}[x,y] = sum C(q,i) ([d^{2(q-i)+1} x, d^{2i} y] + (-1)^{|x|} [d^{2(q-i)} x, d^{2i+1} y])``.
    """
    if r < 0:
        raise ValueError("power must be non-negative")
    m = d.map
    dim = a.dim
    for i, j in itertools.product(range(dim), repeat=2):
        x, y = a.basis_vector(i), a.basis_vector(j)
        lhs = _apply_power(m, r, a.bracket(x, y))
        acc = [ZERO] * dim

        def add(c, u, v):
            for k, val in enumerate(a.bracket(u, v)):
                acc[k] += c * val

        if d.parity == Parity.EVEN:
            for t in range(r + 1):
                add(comb(r, t), _apply_power(m, t, x), _apply_power(m, r - t, y))
        elif r % 2 == 0:
            q = r // 2
            for t in range(q + 1):
                add(comb(q, t), _apply_power(m, 2 * t, x), _apply_power(m, 2 * (q - t), y))
        else:
            q = r // 2
            sx = -1 if a.parity(i) == Parity.ODD else 1
            for t in range(q + 1):
                c = comb(q, t)
                add(c, _apply_power(m, 2 * (q - t) + 1, x), _apply_power(m, 2 * t, y))
                add(c * sx, _apply_power(m, 2 * (q - t), x), _apply_power(m, 2 * t + 1, y))
        if tuple(lhs) != tuple(acc):
            return False
    return True


def derivation_algebra_basis(a: SuperAlgebra) -> tuple[list[Derivation], list[Derivation]]:
    return derivation_space(a, Parity.EVEN), derivation_space(a, Parity.ODD)


def is_characteristically_nilpotent(a: SuperAlgebra) -> bool:
    """Every superderivation (any combination of even and odd ones) is nilpotent."""
    d0, d1 = derivation_algebra_basis(a)
    mats = [d.map for d in d0 + d1]
    if not all(is_nilpotent_mat(m) for m in mats):
        return False
    return all_nilpotent_space(mats)


def weight_decomposition_single(a: SuperAlgebra, d: Derivation) -> list[tuple[Fraction, Subspace]]:
    """Eigenspaces of a diagonalizable even derivation, sorted by eigenvalue.

    The grading law ``[L_u, L_v] ⊆ L_{u+v}`` (zero when ``u+v`` is not a
    weight) is asserted before returning.
    """
    if d.parity != Parity.EVEN:
        raise NotSemisimple("weight decomposition needs an even derivation")
    roots = spectrum(d.map)
    _, nil = jordan_chevalley(d.map)
    if not nil.is_zero():
        raise NotSemisimple("derivation has a nonzero nilpotent part")
    ident = Matrix.identity(a.dim)
    spaces = {}
    for lam in sorted(roots):
        sp = Subspace(a.dim, null_basis_of_rows([list(r) for r in (d.map - ident * lam).rows], a.dim))
        spaces[lam] = sp
    assert sum(sp.dim for sp in spaces.values()) == a.dim
    for (u, su), (v, sv) in itertools.product(spaces.items(), repeat=2):
        br = subspace_bracket(a, su, sv)
        target = spaces.get(u + v)
        if target is None:
            assert br.is_zero(), f"[L_{u}, L_{v}] should vanish"
        else:
            assert br <= target, f"[L_{u}, L_{v}] is not inside L_{u + v}"
    return list(spaces.items())

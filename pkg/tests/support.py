"""Independent oracles and random generators shared by the test modules.

The oracles deliberately avoid the package's own bracket cache, sign helper
and elimination code: brackets are rebuilt densely from the stored table and
linear algebra goes through sympy.
"""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import sympy

from superlie.algebra import SuperAlgebra
from superlie.linalg import Matrix
from superlie.sla import parse

CORPUS_DIR = Path(__file__).resolve().parents[1] / "src" / "superlie" / "corpus"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


def load_corpus() -> dict[str, SuperAlgebra]:
    return {p.stem: parse(p).algebra for p in sorted(CORPUS_DIR.glob("*.sla"))}


# -- dense structure tensor -------------------------------------------------


def dense_tensor(a: SuperAlgebra) -> list[list[list[Fraction]]]:
    """C[i][j][k] = coefficient of e_k in [e_i, e_j], mirrors filled by hand."""
    d = a.dim
    par = [0] * a.n + [1] * a.m
    c = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for (i, j), coords in a.table.items():
        for k, v in coords.items():
            c[i][j][k] += v
            if i != j:
                # [e_j, e_i] = -(-1)^{p_i p_j} [e_i, e_j]
                c[j][i][k] += v if (par[i] and par[j]) else -v
    return c


def dense_bracket(c, u, v):
    d = len(u)
    out = [Fraction(0)] * d
    for i in range(d):
        if not u[i]:
            continue
        for j in range(d):
            if not v[j]:
                continue
            w = u[i] * v[j]
            row = c[i][j]
            for k in range(d):
                if row[k]:
                    out[k] += w * row[k]
    return out


def cyclic_jacobi_ok(a: SuperAlgebra) -> bool:
    """Graded cyclic form: sum over cyclic shifts of (-1)^{|x||z|} [x,[y,z]] = 0."""
    c = dense_tensor(a)
    d = a.dim
    par = [0] * a.n + [1] * a.m
    e = [[Fraction(int(i == k)) for k in range(d)] for i in range(d)]
    for x in range(d):
        for y in range(d):
            for z in range(d):
                total = [Fraction(0)] * d
                for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
                    s = -1 if (par[p] and par[r]) else 1
                    inner = dense_bracket(c, e[q], e[r])
                    outer = dense_bracket(c, e[p], inner)
                    for k in range(d):
                        total[k] += s * outer[k]
                if any(total):
                    return False
    return True


def oracle_derivation_dim(a: SuperAlgebra, parity: int) -> int:
    """Dimension of Der(a)_parity from the defect map on every ordered pair (sympy rank)."""
    c = dense_tensor(a)
    d = a.dim
    par = [0] * a.n + [1] * a.m
    slots = [(r, s) for r in range(d) for s in range(d) if (par[r] + par[s]) % 2 == parity]
    columns = []
    for r, s in slots:
        # unit map E_rs sends e_s to e_r
        col = []
        for i in range(d):
            for j in range(d):
                br = c[i][j]
                lhs = [Fraction(0)] * d
                lhs[r] = br[s]
                t1 = c[r][j] if i == s else [Fraction(0)] * d
                sign = -1 if (parity and par[i]) else 1
                t2 = c[i][r] if j == s else [Fraction(0)] * d
                col.extend(lhs[k] - t1[k] - sign * t2[k] for k in range(d))
        columns.append(col)
    if not columns:
        return 0
    m = sympy.Matrix(columns).T
    return len(slots) - m.rank()


def to_sympy(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m.rows])


# -- random generators -------------------------------------------------------


def random_matrix(rng: random.Random, nrows: int, ncols: int, lo: int = -3, hi: int = 3, density: float = 0.7) -> Matrix:
    return Matrix([[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(ncols)] for _ in range(nrows)], ncols)


def random_invertible(rng: random.Random, n: int) -> Matrix:
    """Product of a random unit lower and unit upper triangular matrix."""
    lower = Matrix([[1 if i == j else (rng.randint(-2, 2) if j < i else 0) for j in range(n)] for i in range(n)])
    upper = Matrix([[1 if i == j else (rng.randint(-2, 2) if j > i else 0) for j in range(n)] for i in range(n)])
    return lower @ upper


def random_homogeneous(rng: random.Random, a: SuperAlgebra, parity: int) -> tuple:
    idx = a.even_indices if parity == 0 else a.odd_indices
    v = [Fraction(0)] * a.dim
    for i in idx:
        v[i] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    return tuple(v)


def flip_slots(a: SuperAlgebra) -> list[tuple[int, int, int]]:
    """Every parity-consistent canonical slot (i, j, k) of the table."""
    out = []
    for i in range(a.dim):
        for j in range(i, a.dim):
            if i == j and i < a.n:
                continue
            target = (int(i >= a.n) + int(j >= a.n)) % 2
            for k in range(a.dim):
                if int(k >= a.n) == target:
                    out.append((i, j, k))
    return out


def flipped(a: SuperAlgebra, slot: tuple[int, int, int], delta=1) -> SuperAlgebra:
    i, j, k = slot
    table = a.table
    coords = dict(table.get((i, j), {}))
    coords[k] = coords.get(k, Fraction(0)) + delta
    table[(i, j)] = coords
    return SuperAlgebra(f"{a.name}_flip", a.even, a.odd, table)


def random_basis_change(rng: random.Random, a: SuperAlgebra) -> SuperAlgebra:
    from superlie.algebra import change_basis

    pe = random_invertible(rng, a.n) if a.n else Matrix.zeros(0, 0)
    po = random_invertible(rng, a.m) if a.m else Matrix.zeros(0, 0)
    return change_basis(a, pe, po, f"{a.name}_moved")


def random_graded_algebra(rng: random.Random, k: int, s: int, extra: int = 3, name: str = "graded") -> SuperAlgebra | None:
    """Random nilpotent superalgebra graded by Z^(k+s), generators carrying unit weights.

    New basis vectors are brackets of existing ones (so the algebra is
    generated by the k even and s odd generators); afterwards random
    weight-compatible constants are added.  Returns None when the table breaks
    the Jacobi identity.
    """
    from superlie.algebra import validate

    r = k + s
    weights = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    parity = [0] * k + [1] * s
    brackets: list[tuple[int, int, int]] = []
    for _ in range(extra):
        i, j = rng.randrange(len(weights)), rng.randrange(r)
        if i == j and parity[i] == 0:
            continue
        w = tuple(x + y for x, y in zip(weights[i], weights[j]))
        if w in weights:
            continue
        weights.append(w)
        parity.append((parity[i] + parity[j]) % 2)
        brackets.append((i, j, len(weights) - 1))
    evens = [i for i, p in enumerate(parity) if p == 0]
    odds = [i for i, p in enumerate(parity) if p == 1]
    order = evens + odds
    label = {}
    for c, i in enumerate(evens, 1):
        label[i] = f"x{c}"
    for c, i in enumerate(odds, 1):
        label[i] = f"y{c}"
    table: dict[tuple[str, str], dict[str, Fraction]] = {}
    for i, j, t in brackets:
        table[(label[i], label[j])] = {label[t]: Fraction(rng.choice([1, -1, 2]))}
    for i in order:
        for j in order:
            if (label[i], label[j]) in table or (label[j], label[i]) in table:
                continue
            if i == j and parity[i] == 0:
                continue
            w = tuple(x + y for x, y in zip(weights[i], weights[j]))
            if w in weights and rng.random() < 0.3:
                t = weights.index(w)
                if parity[t] == (parity[i] + parity[j]) % 2:
                    table[(label[i], label[j])] = {label[t]: Fraction(rng.randint(-2, 2) or 1)}
    a = SuperAlgebra.from_brackets(name, [label[i] for i in evens], [label[i] for i in odds], table)
    return a if validate(a).ok else None

import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from superlie.errors import IrrationalSpectrum, NotCommuting, SingularMatrix
from superlie.linalg import (
    Matrix,
    Q,
    Subspace,
    all_nilpotent_space,
    charpoly,
    common_flag,
    det,
    integer_normalize,
    inverse,
    is_diagonalizable,
    is_nilpotent_mat,
    jordan_chevalley,
    null_basis,
    rank,
    rational_roots,
    rref,
    simultaneous_eigenbasis,
    solve,
    spectrum,
)
from support import random_invertible, random_matrix, to_sympy

SEED = 20240611


def test_floats_rejected():
    with pytest.raises(TypeError):
        Q(0.5)
    assert Q("3/4") == Fraction(3, 4)


def test_rref_small():
    reduced, r, null = rref(Matrix([[1, 2], [2, 4]]))
    assert r == 1
    assert reduced.rows[0] == (1, 2)
    assert null.dim == 1 and (-2, 1) in null


def test_rank_nullity_random():
    rng = random.Random(SEED)
    for _ in range(1000):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        m = random_matrix(rng, nr, nc, density=rng.choice([0.3, 0.6, 1.0]))
        _, r, null = rref(m)
        assert r + null.dim == nc
        assert r == rank(m)
        for v in null.basis:
            assert not any(m @ v)


def test_rank_matches_sympy():
    rng = random.Random(SEED + 1)
    for _ in range(300):
        m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        assert rank(m) == to_sympy(m).rank()


@settings(max_examples=200, derandomize=True, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=1, max_size=5))
def test_null_basis_hypothesis(rows):
    m = Matrix(rows)
    basis = null_basis(m)
    assert len(basis) == 4 - rank(m)
    assert Subspace(4, basis).dim == len(basis)
    for v in basis:
        assert not any(m @ v)


def test_det_inverse_against_sympy():
    rng = random.Random(SEED + 2)
    for _ in range(300):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, n)
        d = det(m)
        assert d == Fraction(str(to_sympy(m).det()))
        if d:
            assert m @ inverse(m) == Matrix.identity(n)
        else:
            with pytest.raises(SingularMatrix):
                inverse(m)


def test_solve():
    m = Matrix([[1, 1], [1, -1]])
    assert solve(m, (2, 0)) == (1, 1)
    assert solve(Matrix([[1, 1], [2, 2]]), (1, 3)) is None


def test_charpoly_against_sympy():
    rng = random.Random(SEED + 3)
    lam = sympy.Symbol("lam")
    for _ in range(200):
        n = rng.randint(1, 5)
        m = random_matrix(rng, n, n)
        want = [Fraction(str(c)) for c in to_sympy(m).charpoly(lam).all_coeffs()]
        assert charpoly(m) == want
    assert charpoly(Matrix.diag([1, 2])) == [1, -3, 2]


def test_rational_roots():
    x = sympy.Symbol("x")
    poly = sympy.Poly((x - 1) ** 2 * (2 * x + 1) * (x**2 + 1))
    p = [Fraction(str(c)) for c in reversed(poly.all_coeffs())]
    assert rational_roots(p) == {Fraction(1): 2, Fraction(-1, 2): 1}


def test_rational_roots_against_sympy():
    """Large numerators and denominators, repeated roots, an irreducible factor."""
    rng = random.Random(SEED + 8)
    x = sympy.Symbol("x")
    for _ in range(60):
        expr = sympy.Integer(rng.choice([1, -3, 7]))
        for _ in range(rng.randint(1, 4)):
            num, den = rng.randint(-10**6, 10**6), rng.randint(1, 10**4)
            expr *= (den * x - num) ** rng.randint(1, 2)
        if rng.random() < 0.5:
            expr *= x**2 - rng.choice([2, 3, 5])
        poly = sympy.Poly(expr, x)
        want = {Fraction(int(r.p), int(r.q)): m for r, m in sympy.roots(poly, filter="Q").items()}
        p = [Fraction(int(c)) for c in reversed(poly.all_coeffs())]
        assert rational_roots(p) == want


def test_spectrum_irrational():
    with pytest.raises(IrrationalSpectrum):
        spectrum(Matrix([[0, 2], [1, 0]]))


def _random_rational_spectrum(rng, n):
    """P (D + N) P^-1 with rational eigenvalues and a random nilpotent perturbation."""
    p = random_invertible(rng, n)
    eig = [rng.randint(-2, 2) for _ in range(n)]
    core = [[0] * n for _ in range(n)]
    for i in range(n):
        core[i][i] = eig[i]
        for j in range(i + 1, n):
            if eig[i] == eig[j] and rng.random() < 0.5:
                core[i][j] = rng.randint(-2, 2)
    return p @ Matrix(core) @ inverse(p)


def test_jordan_chevalley_contract():
    rng = random.Random(SEED + 4)
    for _ in range(300):
        n = rng.randint(1, 5)
        m = _random_rational_spectrum(rng, n)
        s, nil = jordan_chevalley(m)
        assert s + nil == m
        assert s @ nil == nil @ s
        assert is_nilpotent_mat(nil)
        assert is_diagonalizable(s)
        assert spectrum(s) == spectrum(m)


def test_jordan_chevalley_examples():
    s, n = jordan_chevalley(Matrix([[1, 1], [0, 1]]))
    assert s == Matrix.identity(2) and n == Matrix([[0, 1], [0, 0]])
    d = Matrix.diag([3, -1, 3])
    assert jordan_chevalley(d) == (d, Matrix.zeros(3))
    with pytest.raises(IrrationalSpectrum):
        jordan_chevalley(Matrix([[1, 1], [1, 0]]))


def test_all_nilpotent_space_methods_agree():
    rng = random.Random(SEED + 5)
    for _ in range(60):
        n = rng.randint(2, 4)
        basis = []
        for _ in range(rng.randint(1, 3)):
            upper = Matrix([[rng.randint(-2, 2) if j > i else 0 for j in range(n)] for i in range(n)])
            basis.append(upper)
        if rng.random() < 0.5:
            p = random_invertible(rng, n)
            basis = [p @ b @ inverse(p) for b in basis]
        if rng.random() < 0.3:
            basis.append(random_matrix(rng, n, n))
        auto = all_nilpotent_space(basis)
        assert auto == all_nilpotent_space(basis, method="symbolic")
        if len(basis) <= 2:
            assert auto == all_nilpotent_space(basis, method="grid")


def test_nilpotent_span_without_common_flag():
    # every combination is nilpotent, but there is no common kernel vector
    a = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    b = Matrix([[0, 0, 0], [1, 0, 0], [0, -1, 0]])
    assert not common_flag([a, b])
    assert all_nilpotent_space([a, b])
    assert all_nilpotent_space([a, b], method="grid")


def test_not_all_nilpotent():
    a = Matrix([[0, 1], [0, 0]])
    assert not all_nilpotent_space([a, a.T])
    assert not all_nilpotent_space([a, a.T], method="symbolic")


def test_grid_guard():
    basis = [Matrix.elementary(6, 0, j) for j in range(1, 6)] * 3
    with pytest.raises(ValueError):
        all_nilpotent_space(basis, method="grid", max_points=1000)


def test_simultaneous_eigenbasis():
    assert simultaneous_eigenbasis([Matrix.diag([1, 2, 3])]) == Matrix.identity(3)
    p = simultaneous_eigenbasis([Matrix([[0, 1], [1, 0]])])
    assert p == Matrix([[1, 1], [1, -1]])
    with pytest.raises(NotCommuting):
        simultaneous_eigenbasis([Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]])])


def test_simultaneous_eigenbasis_random():
    rng = random.Random(SEED + 6)
    for _ in range(100):
        n = rng.randint(1, 4)
        p = random_invertible(rng, n)
        pinv = inverse(p)
        mats = [p @ Matrix.diag([rng.randint(-2, 2) for _ in range(n)]) @ pinv for _ in range(2)]
        q = simultaneous_eigenbasis(mats)
        qinv = inverse(q)
        for m in mats:
            assert (qinv @ m @ q).is_diagonal()


def test_subspace_dimension_formula():
    rng = random.Random(SEED + 7)
    for _ in range(300):
        n = rng.randint(1, 5)
        u = Subspace(n, random_matrix(rng, rng.randint(0, 3), n).rows)
        v = Subspace(n, random_matrix(rng, rng.randint(0, 3), n).rows)
        assert u.dim + v.dim == (u + v).dim + (u & v).dim
        assert (u & v) <= u and u <= (u + v)
        comp = u.coordinate_complement()
        assert (Subspace.coordinate(n, comp) + u).dim == n


def test_integer_normalize():
    assert integer_normalize((Fraction(1, 2), Fraction(-3, 4))) == (2, -3)
    assert integer_normalize((0, 0)) == (0, 0)


def test_matrix_powers_and_elementary():
    m = Matrix([[1, 1], [0, 1]])
    assert m ** 3 == Matrix([[1, 3], [0, 1]])
    assert m ** -1 == Matrix([[1, -1], [0, 1]])
    e = Matrix.elementary(3, 0, 2)
    assert e @ (0, 0, 5) == (5, 0, 0)
    assert all(x == 0 for x in itertools.chain.from_iterable(Matrix.zeros(2, 3).rows))

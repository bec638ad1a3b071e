"""Solvable extensions of nilpotent superalgebras by tori, and their checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    SuperAlgebra,
    ad_basis,
    center,
    even_subspace,
    odd_subspace,
    subspace_bracket,
    validate,
)
from .derivations import Derivation, derivation_space, is_superderivation
from .errors import (
    NilradicalVerificationFailed,
    NotADerivation,
    NotCommuting,
    NotMaximalRank,
    NotNilpotent,
    PreconditionNotMet,
    TorusNormalizationFailed,
)
from .linalg import ZERO, Matrix, Subspace, det, inverse, is_nilpotent_mat, null_basis, solve
from .structure import (
    generator_space,
    is_nilpotent,
    is_solvable,
    nilradical_solvable,
    square,
    trace_form,
)
from .torus import Torus, is_maximal_rank, maximal_torus


@dataclass(frozen=True)
class SolvableModel:
    """``R = N + Q`` with ``N`` spanned by basis vectors ``nil_indices`` of ``algebra``.

    ``q_indices`` lists the remaining basis vectors (the adjoined ``z``'s in
    canonical models, where they are all even).  ``q_split`` holds
    ``(Q0^1, Q0^2)`` once computed.
    """

    algebra: SuperAlgebra
    nil_indices: tuple[int, ...]
    q_indices: tuple[int, ...]
    q_split: tuple[Subspace, Subspace] | None = None
    canonical: bool = False

    @property
    def q(self) -> int:
        return len(self.q_indices)

    @property
    def nilradical_dims(self) -> tuple[int, int]:
        a = self.algebra
        return (sum(1 for i in self.nil_indices if i < a.n), sum(1 for i in self.nil_indices if i >= a.n))

    @property
    def q_even(self) -> tuple[int, ...]:
        return tuple(i for i in self.q_indices if i < self.algebra.n)

    @property
    def nil_subspace(self) -> Subspace:
        return Subspace.coordinate(self.algebra.dim, self.nil_indices)

    def nilradical_algebra(self) -> SuperAlgebra:
        return self.algebra.restrict(self.nil_indices, f"{self.algebra.name}_nil")

    def z_actions(self) -> list[Matrix]:
        """Matrices of ``v -> [v, z]`` on ``N`` (in ``N``'s basis), one per even q."""
        a = self.algebra
        pos = {i: p for p, i in enumerate(self.nil_indices)}
        out = []
        for z in self.q_even:
            rows = [[ZERO] * len(pos) for _ in pos]
            for i, p in pos.items():
                for k, c in a.basis_bracket(i, z).items():
                    if k not in pos:
                        raise ValueError("N is not an ideal of the model")
                    rows[pos[k]][p] = c
            out.append(Matrix(rows, len(pos)))
        return out


def _fresh_prefix(labels: Sequence[str]) -> str:
    for prefix in ("z", "t", "h", "w"):
        if not any(lab.startswith(prefix) for lab in labels):
            return prefix
    return "zz_"


def _torus_matrices(nilp: SuperAlgebra, t) -> list[Matrix]:
    if isinstance(t, Torus):
        if t.algebra == nilp:
            return [g.map for g in t.generators]
        return t.in_original_basis()
    return [g.map if isinstance(g, Derivation) else g for g in t]


def attach_torus(nilp: SuperAlgebra, t, name: str | None = None) -> SolvableModel:
    """``R_T``: basis (N even, z_1..z_q | N odd) with ``[v, z_j] = d_j(v)``, ``[z_i, z_j] = 0``."""
    mats = _torus_matrices(nilp, t)
    for d in mats:
        if not is_superderivation(nilp, d, 0):
            raise NotADerivation("torus element is not an even superderivation")
    for d1, d2 in itertools.combinations(mats, 2):
        if not d1.commutes_with(d2):
            raise NotCommuting("torus elements do not commute")
    prefix = _fresh_prefix(nilp.labels)
    zs = [f"{prefix}{j + 1}" for j in range(len(mats))]
    brackets: dict[tuple[str, str], dict[str, Fraction]] = {}
    for (i, j), coords in nilp.table.items():
        brackets[(nilp.labels[i], nilp.labels[j])] = {nilp.labels[k]: c for k, c in coords.items()}
    for zl, d in zip(zs, mats):
        for v in range(nilp.dim):
            col = d.column(v)
            if any(col):
                brackets[(nilp.labels[v], zl)] = {nilp.labels[k]: c for k, c in enumerate(col) if c}
    even = list(nilp.even) + zs
    r = SuperAlgebra.from_brackets(name or f"{nilp.name}_ext", even, nilp.odd, brackets)
    assert validate(r).ok, "extension by commuting derivations failed the Jacobi identity"
    q = len(mats)
    nil_idx = tuple(range(nilp.n)) + tuple(range(nilp.n + q, nilp.n + q + nilp.m))
    return SolvableModel(r, nil_idx, tuple(range(nilp.n, nilp.n + q)))


def _complement_choices(a: SuperAlgebra, sq: Subspace, k: int, s: int, first: Sequence[int]):
    yield tuple(first)
    evens = [i for i in a.even_indices]
    odds = [i for i in a.odd_indices]
    for ce in itertools.combinations(evens, k):
        for co in itertools.combinations(odds, s):
            idx = ce + co
            if idx == tuple(first):
                continue
            if (Subspace.coordinate(a.dim, idx) & sq).is_zero():
                yield idx


def normalized_torus(a: SuperAlgebra, t: Torus) -> tuple[list[Matrix], tuple[int, ...]]:
    """Torus basis with generator weights forming the identity pattern.

    Returns diagonal matrices ``z_j`` with ``z_j(g_i) = delta_ij g_i`` for the
    generators ``g_1..g_{k+s}`` (even ones first) and the generator indices.
    """
    gs = generator_space(a)
    if t.dim != gs.k + gs.s:
        raise NotMaximalRank(f"{a.name}: torus dimension {t.dim} but {gs.k + gs.s} generators")
    w = t.weights
    sq = square(a)
    for idx in _complement_choices(a, sq, gs.k, gs.s, gs.indices):
        wgen = Matrix([list(w[i]) for i in idx], t.dim) if idx else Matrix.zeros(0, 0)
        if idx and det(wgen) == 0:
            continue
        c = inverse(wgen) if idx else wgen
        out = []
        for j in range(len(idx)):
            diag = [sum((w[v][l] * c[l, j] for l in range(t.dim)), ZERO) for v in range(a.dim)]
            out.append(Matrix.diag(diag))
        return out, tuple(idx)
    raise TorusNormalizationFailed(f"{a.name}: no generator set has an invertible weight matrix")


def maximal_solvable_extension(nilp: SuperAlgebra, name: str | None = None) -> SolvableModel:
    """Canonical extension of a maximal-rank nilpotent superalgebra.

    The torus is rewritten so that ``[g_i, z_j] = delta_ij g_i`` on generators;
    non-generator weights follow from the grading.  If the torus had to be
    found in another basis, the nilradical table is the rewritten one.
    """
    if not is_nilpotent(nilp):
        raise NotNilpotent(f"{nilp.name} is not nilpotent")
    t = maximal_torus(nilp)
    base = t.algebra
    zs, _ = normalized_torus(base, t)
    model = attach_torus(base, zs, name or f"{nilp.name}_max")
    model = SolvableModel(model.algebra, model.nil_indices, model.q_indices, None, True)
    return SolvableModel(model.algebra, model.nil_indices, model.q_indices, split_q(model), True)


def model_from_algebra(a: SuperAlgebra, nil_labels: Sequence[str] | None = None) -> SolvableModel:
    """View a solvable algebra as ``N + Q`` over its (certified) nilradical."""
    if nil_labels is None:
        nil = nilradical_solvable(a)
        idx = [i for i in range(a.dim) if a.basis_vector(i) in nil]
        if Subspace.coordinate(a.dim, idx) != nil:
            raise ValueError("nilradical is not spanned by basis vectors; pass nil_labels after a basis change")
    else:
        idx = sorted(a.index(lab) for lab in nil_labels)
    rest = tuple(i for i in range(a.dim) if i not in idx)
    return SolvableModel(a, tuple(idx), rest)


def _quotient_action(a: SuperAlgebra, ad: Matrix, comp: Sequence[int], sq: Subspace) -> Matrix:
    """Matrix of ``ad`` on ``N/N^2`` restricted to the classes of ``comp``."""
    if not comp:
        return Matrix.zeros(0, 0)
    basis_cols = [a.basis_vector(i) for i in comp] + list(sq.basis)
    sys = Matrix.from_columns(basis_cols, a.dim)
    cols = []
    for i in comp:
        coeffs = solve(sys, ad @ a.basis_vector(i))
        if coeffs is None:
            raise ValueError("action does not preserve N")
        cols.append(coeffs[: len(comp)])
    return Matrix.from_columns(cols, len(comp))


def _nilpotent_directions(mats: list[Matrix], size: int) -> Subspace:
    """``{c : sum c_j A_j nilpotent}`` for commuting matrices with rational spectrum.

    The trace form ``sum_k lambda_k(c)^2`` is positive semidefinite over Q, so its
    kernel is exactly the common zero set of the eigenvalue functionals.
    """
    if not mats or mats[0].nrows == 0:
        return Subspace.full(size)
    return Subspace(size, null_basis(trace_form(mats)))


def split_q(model: SolvableModel) -> tuple[Subspace, Subspace]:
    """``Q0^2 = {z in Q0 : ad_z nilpotent on X}`` and a coordinate complement ``Q0^1``.

    ``X`` and ``Y`` are the even and odd generator parts of ``N`` (taken modulo
    ``N^2``).  Every nonzero element of ``Q0^2`` must act non-nilpotently on
    ``Y``; a violation raises ``AssertionError``.
    """
    a = model.algebra
    nil = model.nilradical_algebra()
    gs = generator_space(nil)
    gen = [model.nil_indices[i] for i in gs.indices]
    xs = [i for i in gen if i < a.n]
    ys = [i for i in gen if i >= a.n]
    nil_sub = model.nil_subspace
    sq = subspace_bracket(a, nil_sub, nil_sub)
    q0 = model.q_even
    ads = [ad_basis(a, z) for z in q0]
    ax = [_quotient_action(a, m, xs, sq) for m in ads]
    ay = [_quotient_action(a, m, ys, sq) for m in ads]
    # coordinates relative to the z basis, then embedded in R
    kx = _nilpotent_directions(ax, len(q0))
    ky = _nilpotent_directions(ay, len(q0))
    assert (kx & ky).is_zero(), "a nonzero element of Q0^2 acts nilpotently on the odd generators"

    def embed(vs):
        out = []
        for v in vs:
            e = [ZERO] * a.dim
            for c, z in zip(v, q0):
                e[z] = c
            out.append(tuple(e))
        return Subspace(a.dim, out)

    q02 = embed(kx.basis)
    comp = kx.coordinate_complement()
    q01 = embed([tuple(1 if i == c else 0 for i in range(len(q0))) for c in comp])
    return q01, q02


@dataclass
class VerificationReport:
    name: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, key: str, passed: bool, detail: str = "") -> None:
        self.checks.append((key, bool(passed), detail))

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)

    def failed(self) -> list[str]:
        return [k for k, p, _ in self.checks if not p]

    def __getitem__(self, key: str) -> bool:
        for k, p, _ in self.checks:
            if k == key:
                return p
        raise KeyError(key)

    def __bool__(self) -> bool:
        return self.ok


CHECKS = (
    "solvable_not_nilpotent",
    "square_in_nilradical",
    "odd_square_in_even_square",
    "nilradical_matches",
    "codim_bound",
    "split_bounds",
    "z_non_nilpotent",
    "z_commute",
    "complete",
    "codim_equals_torus",
)


def verify_model(model: SolvableModel) -> VerificationReport:
    a = model.algebra
    rep = VerificationReport(a.name)
    whole = Subspace.full(a.dim)
    nil = model.nil_subspace
    nil_alg = model.nilradical_algebra()
    r0, r1 = even_subspace(a), odd_subspace(a)

    solv = is_solvable(a)
    nilp = is_nilpotent(a)
    rep.add(CHECKS[0], solv and (model.q == 0 or not nilp), f"solvable={solv} nilpotent={nilp}")

    r2 = subspace_bracket(a, whole, whole)
    rep.add(CHECKS[1], r2 <= nil, f"dim R^2={r2.dim}")

    r11 = subspace_bracket(a, r1, r1)
    r00 = subspace_bracket(a, r0, r0)
    rep.add(CHECKS[2], r11 <= r00, f"dim [R1,R1]={r11.dim} dim [R0,R0]={r00.dim}")

    try:
        found = nilradical_solvable(a) if solv else None
        rep.add(CHECKS[3], found == nil, "" if found is not None else "not solvable")
    except NilradicalVerificationFailed as exc:
        rep.add(CHECKS[3], False, str(exc))

    nil_sq = subspace_bracket(a, nil, nil)
    gens = nil.dim - nil_sq.dim
    rep.add(CHECKS[4], a.dim - nil.dim <= gens, f"dim(R/N)={a.dim - nil.dim} dim(N/N^2)={gens}")

    try:
        q01, q02 = model.q_split or split_q(model)
        gs = generator_space(nil_alg)
        rep.add(CHECKS[5], q01.dim <= gs.k and q02.dim <= gs.s, f"Q0^1={q01.dim}<={gs.k} Q0^2={q02.dim}<={gs.s}")
    except (AssertionError, ValueError) as exc:
        rep.add(CHECKS[5], False, f"split failed: {exc}")

    try:
        acts = model.z_actions()
        bad = [a.labels[z] for z, m in zip(model.q_even, acts) if is_nilpotent_mat(m)]
        rep.add(CHECKS[6], not bad, "nilpotent: " + " ".join(bad) if bad else "")
    except ValueError as exc:
        rep.add(CHECKS[6], False, str(exc))

    zq = Subspace.coordinate(a.dim, model.q_even)
    rep.add(CHECKS[7], subspace_bracket(a, zq, zq).is_zero())

    ctr = center(a)
    ad_span = Subspace(a.dim * a.dim, [ad_basis(a, i).flatten() for i in range(a.dim)])
    outer = [d for d in derivation_space(a, 0) if d.map.flatten() not in ad_span]
    rep.add(CHECKS[8], ctr.is_zero() and not outer, f"dim center={ctr.dim} outer even={len(outer)}")

    try:
        tdim = maximal_torus(nil_alg).dim
        rep.add(CHECKS[9], len(model.q_even) == tdim, f"dim Q0={len(model.q_even)} torus={tdim}")
    except Exception as exc:  # torus search outside its domain is a failed check, not a crash
        rep.add(CHECKS[9], False, f"{type(exc).__name__}: {exc}")
    return rep


def check_odd_roots_distinct(nilp: SuperAlgebra, t: Torus) -> bool:
    """Each odd generator's weight differs from the weight of every other odd basis vector."""
    a = t.algebra
    w = t.weights
    gs = generator_space(a)
    odd_gens = [i for i in gs.indices if i >= a.n]
    return all(w[g] != w[j] for g in odd_gens for j in a.odd_indices if j != g)


def check_odd_square_collapse(nilp: SuperAlgebra) -> bool:
    """For maximal rank with ``[N1,N1] ⊆ [N0,N0]``, report whether ``[N1,N1] = 0``."""
    if not is_nilpotent(nilp):
        raise PreconditionNotMet(f"{nilp.name} is not nilpotent")
    if not is_maximal_rank(nilp):
        raise PreconditionNotMet(f"{nilp.name} is not of maximal rank")
    n0, n1 = even_subspace(nilp), odd_subspace(nilp)
    n11 = subspace_bracket(nilp, n1, n1)
    if not n11 <= subspace_bracket(nilp, n0, n0):
        raise PreconditionNotMet(f"{nilp.name}: [N1,N1] is not inside [N0,N0]")
    return n11.is_zero()


def same_torus_span(m1: SolvableModel, m2: SolvableModel) -> bool:
    """Equal nilradical tables and equal spans of the z-actions on N."""
    n1, n2 = m1.nilradical_algebra(), m2.nilradical_algebra()
    if (n1.even, n1.odd, n1.table) != (n2.even, n2.odd, n2.table):
        return False
    size = n1.dim * n1.dim
    s1 = Subspace(size, [m.flatten() for m in m1.z_actions()])
    s2 = Subspace(size, [m.flatten() for m in m2.z_actions()])
    return s1 == s2


def is_maximal_rank_solvable(model: SolvableModel) -> bool:
    """The model is ``R_T`` for a maximal torus of its maximal-rank nilradical."""
    if len(model.q_even) != model.q:
        return False
    nil = model.nilradical_algebra()
    if not is_nilpotent(nil) or not is_maximal_rank(nil):
        return False
    t = maximal_torus(nil)
    if t.algebra != nil:
        return False
    return same_torus_span(model, attach_torus(nil, t))


__all__ = [
    "SolvableModel",
    "VerificationReport",
    "CHECKS",
    "attach_torus",
    "normalized_torus",
    "maximal_solvable_extension",
    "model_from_algebra",
    "split_q",
    "verify_model",
    "check_odd_roots_distinct",
    "check_odd_square_collapse",
    "same_torus_span",
    "is_maximal_rank_solvable",
]

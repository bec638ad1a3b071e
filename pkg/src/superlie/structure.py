"""Central/derived series, nilpotency, generators and nilradicals."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .algebra import SuperAlgebra, ad_basis, even_subspace, odd_subspace, span_labels, subspace_bracket
from .errors import NilradicalVerificationFailed, NotNilpotent, NotSolvable
from .linalg import Matrix, Subspace, all_nilpotent_space, null_basis, unit_vec

CENTRAL = "central"
DERIVED = "derived"
C0 = "c0"
C1 = "c1"


@dataclass(frozen=True)
class SeriesReport:
    """Terms ``L^1 ⊇ L^2 ⊇ ...`` up to (and including) the first repeated term.

    ``stabilized_at`` is the 1-based index of the term that repeats forever.
    """

    kind: str
    terms: tuple[Subspace, ...]
    stabilized_at: int

    @property
    def limit(self) -> Subspace:
        return self.terms[-1]

    @property
    def reaches_zero(self) -> bool:
        return self.limit.is_zero()

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)


def _series(kind: str, first: Subspace, step) -> SeriesReport:
    terms = [first]
    while True:
        nxt = step(terms[-1])
        if nxt == terms[-1]:
            break
        assert nxt <= terms[-1], "series is not descending"
        terms.append(nxt)
    return SeriesReport(kind, tuple(terms), len(terms))


def central_series(a: SuperAlgebra) -> SeriesReport:
    whole = Subspace.full(a.dim)
    return _series(CENTRAL, whole, lambda t: subspace_bracket(a, t, whole))


def derived_series(a: SuperAlgebra) -> SeriesReport:
    return _series(DERIVED, Subspace.full(a.dim), lambda t: subspace_bracket(a, t, t))


def c_sequences(a: SuperAlgebra) -> tuple[SeriesReport, SeriesReport]:
    """``C^{k+1}(L_0) = [C^k(L_0), L_0]`` and ``C^{k+1}(L_1) = [C^k(L_1), L_0]``.

    Both reach zero exactly when ``a`` is nilpotent; the verdict is cross-checked
    against the lower central series.
    """
    l0, l1 = even_subspace(a), odd_subspace(a)
    c0 = _series(C0, l0, lambda t: subspace_bracket(a, t, l0))
    c1 = _series(C1, l1, lambda t: subspace_bracket(a, t, l0))
    verdict = c0.reaches_zero and c1.reaches_zero
    assert verdict == central_series(a).reaches_zero, "C-sequence and central-series verdicts disagree"
    return c0, c1


def is_nilpotent(a: SuperAlgebra) -> bool:
    return central_series(a).reaches_zero


def is_solvable(a: SuperAlgebra) -> bool:
    return derived_series(a).reaches_zero


def nilindex(a: SuperAlgebra) -> int:
    """Smallest ``s`` with ``L^s = 0``."""
    cs = central_series(a)
    if not cs.reaches_zero:
        raise NotNilpotent(f"{a.name} is not nilpotent")
    return cs.stabilized_at


def square(a: SuperAlgebra) -> Subspace:
    whole = Subspace.full(a.dim)
    return subspace_bracket(a, whole, whole)


class GeneratorSpace(NamedTuple):
    span: Subspace
    k: int
    s: int
    indices: tuple[int, ...]


def generator_space(a: SuperAlgebra) -> GeneratorSpace:
    """A coordinate complement of ``N^2`` and the even/odd generator counts.

    ``k = dim N_0/(N_0^2 + [N_1,N_1])`` and ``s = dim N_1/[N_1,N_0]``.  When the
    algebra carries generator marks they must form such a complement.
    """
    if not is_nilpotent(a):
        raise NotNilpotent(f"{a.name} is not nilpotent")
    sq = square(a)
    k = a.n - (sq & even_subspace(a)).dim
    s = a.m - (sq & odd_subspace(a)).dim
    assert k + s == a.dim - sq.dim
    if a.generator_marks is not None:
        idx = sorted(a.index(g) for g in a.generator_marks)
        marked = Subspace.coordinate(a.dim, idx)
        if len(idx) != k + s or not (marked & sq).is_zero():
            raise ValueError(f"generator marks of {a.name} do not form a complement of N^2")
        even_marks = sum(1 for i in idx if i < a.n)
        if even_marks != k:
            raise ValueError(f"generator marks of {a.name} have the wrong parity split")
    else:
        idx = sq.coordinate_complement()
    return GeneratorSpace(Subspace.coordinate(a.dim, idx), k, s, tuple(idx))


def is_ideal(a: SuperAlgebra, v: Subspace) -> bool:
    return subspace_bracket(a, v, Subspace.full(a.dim)) <= v


def is_nilpotent_subalgebra(a: SuperAlgebra, v: Subspace) -> bool:
    """Lower central series of ``v`` (as an algebra in its own right) reaches zero."""
    term = v
    while not term.is_zero():
        nxt = subspace_bracket(a, term, v)
        if nxt == term:
            return False
        term = nxt
    return True


def trace_form(mats: list[Matrix]) -> Matrix:
    """Gram matrix ``tr(A_i A_j)``."""
    return Matrix([[(x @ y).trace() for y in mats] for x in mats])


def nilradical_solvable(a: SuperAlgebra) -> Subspace:
    """Nilradical of a solvable superalgebra, certified.

    The candidate is the kernel of the trace form ``(u, v) -> tr(ad_u ad_v)``.
    Every nilpotent ideal lies in that kernel (``ad_u ad_v`` strictly lowers the
    filtration of the nilradical), so if the kernel is itself a nilpotent ideal
    it is the nilradical.  Otherwise nothing is returned.
    """
    if not is_solvable(a):
        raise NotSolvable(f"{a.name} is not solvable")
    ads = [ad_basis(a, i) for i in range(a.dim)]
    kernel = Subspace(a.dim, null_basis(trace_form(ads)))
    if not is_ideal(a, kernel):
        raise NilradicalVerificationFailed(f"trace-form kernel of {a.name} is not an ideal")
    if not is_nilpotent_subalgebra(a, kernel):
        raise NilradicalVerificationFailed(f"trace-form kernel of {a.name} is not nilpotent")
    members = [_ad_of(a, ads, v) for v in kernel.basis]
    if not all_nilpotent_space(members):
        raise NilradicalVerificationFailed(f"trace-form kernel of {a.name} does not act nilpotently")
    return kernel


def _ad_of(a: SuperAlgebra, ads: list[Matrix], v) -> Matrix:
    out = Matrix.zeros(a.dim)
    for c, ad in zip(v, ads):
        if c:
            out = out + ad * c
    return out


def engel_check(a: SuperAlgebra) -> bool:
    """Nilpotency read off the adjoint action: every homogeneous ad nilpotent.

    Homogeneous elements of each parity form a linear space, so this is the
    all-nilpotent test on the even ad span and on the odd ad span.
    """
    even = [ad_basis(a, i) for i in a.even_indices]
    odd = [ad_basis(a, i) for i in a.odd_indices]
    return all_nilpotent_space(even) and all_nilpotent_space(odd)


def describe_subspace(a: SuperAlgebra, v: Subspace) -> str:
    if v.is_zero():
        return "span()"
    return "span(" + ", ".join(a.format_vector(b) for b in v.basis) + ")"


__all__ = [
    "SeriesReport",
    "GeneratorSpace",
    "central_series",
    "derived_series",
    "c_sequences",
    "is_nilpotent",
    "is_solvable",
    "nilindex",
    "square",
    "generator_space",
    "is_ideal",
    "is_nilpotent_subalgebra",
    "nilradical_solvable",
    "engel_check",
    "trace_form",
    "describe_subspace",
    "span_labels",
    "unit_vec",
]

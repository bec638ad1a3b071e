import random

import pytest

from superlie.algebra import SuperAlgebra, abelian, span_labels, validate
from superlie.derivations import Derivation
from superlie.errors import (
    NotADerivation,
    NotCommuting,
    NotMaximalRank,
    PreconditionNotMet,
    TorusNormalizationFailed,
)
from superlie.extension import (
    CHECKS,
    attach_torus,
    check_odd_roots_distinct,
    check_odd_square_collapse,
    is_maximal_rank_solvable,
    maximal_solvable_extension,
    model_from_algebra,
    normalized_torus,
    same_torus_span,
    split_q,
    verify_model,
)
from superlie.linalg import Matrix, is_nilpotent_mat
from superlie.structure import generator_space, is_nilpotent, square
from superlie.torus import Torus, is_maximal_rank, maximal_torus
from support import load_corpus, random_graded_algebra

CORPUS = load_corpus()
MAXIMAL = ["n1", "n2", "n3_m3", "n3_m5", "squares4"]


def test_attach_torus_n1():
    a = CORPUS["n1"]
    m = attach_torus(a, [Matrix.diag([1, 1, 0]), Matrix.diag([1, 0, 1])], "thm55")
    assert m.algebra.even == ("x1", "z1", "z2")
    assert m.algebra == CORPUS["thm55"]
    assert m.q == 2 and m.nilradical_dims == (1, 2)
    assert verify_model(m).ok


def test_attach_torus_rejects_bad_input():
    a = CORPUS["n1"]
    with pytest.raises(NotADerivation):
        attach_torus(a, [Matrix.identity(3)])
    b = abelian(2, 0)
    with pytest.raises(NotCommuting):
        attach_torus(b, [Matrix([[1, 0], [0, 0]]), Matrix([[0, 1], [0, 0]])])


def test_attach_torus_label_clash():
    a = SuperAlgebra.from_brackets("clash", ["z1"], ["y1"], {})
    m = attach_torus(a, [Matrix.diag([1, 0])])
    assert m.algebra.even == ("z1", "t1")


def test_extension_n1_matches_theorem_example():
    assert maximal_solvable_extension(CORPUS["n1"], "thm55").algebra == CORPUS["thm55"]


def test_extension_n2_torus_span_matches_example():
    ext = maximal_solvable_extension(CORPUS["n2"])
    assert same_torus_span(ext, model_from_algebra(CORPUS["ex54"]))
    assert verify_model(ext).ok
    assert not verify_model(ext).failed()


@pytest.mark.parametrize("name", MAXIMAL)
def test_extension_verifies(name):
    ext = maximal_solvable_extension(CORPUS[name])
    rep = verify_model(ext)
    assert rep.ok, rep.failed()
    assert [k for k, _, _ in rep.checks] == list(CHECKS)
    assert ext.q == maximal_torus(CORPUS[name]).dim
    assert is_maximal_rank_solvable(ext)


@pytest.mark.parametrize("name", ["n4", "charnil8", "noncharnil9"])
def test_extension_needs_maximal_rank(name):
    with pytest.raises(NotMaximalRank):
        maximal_solvable_extension(CORPUS[name])


def test_generator_weights_are_normalized():
    """On generators ad z_j is the Kronecker pattern; every other weight is a sum."""
    for name in MAXIMAL:
        nil = CORPUS[name]
        t = maximal_torus(nil)
        zs, gens = normalized_torus(t.algebra, t)
        for j, z in enumerate(zs):
            for i, g in enumerate(gens):
                assert z[g, g] == (1 if i == j else 0)
        ext = maximal_solvable_extension(nil)
        acts = ext.z_actions()
        base = ext.nilradical_algebra()
        for i in range(base.dim):
            for j in range(base.dim):
                for k in base.basis_bracket(i, j):
                    for m in acts:
                        assert m[k, k] == m[i, i] + m[j, j]


def test_normalization_failure():
    a = abelian(0, 2)
    fake = Torus((Derivation(Matrix.diag([1, 1]), 0, a), Derivation(Matrix.diag([2, 2]), 0, a)), Matrix.identity(2), a, 0)
    with pytest.raises(TorusNormalizationFailed):
        normalized_torus(a, fake)


def test_split_examples():
    q01, q02 = split_q(maximal_solvable_extension(CORPUS["n1"]))
    assert (q01.dim, q02.dim) == (0, 2)
    q01, q02 = split_q(maximal_solvable_extension(CORPUS["n2"]))
    assert (q01.dim, q02.dim) == (1, 1)
    q01, q02 = split_q(model_from_algebra(CORPUS["ex54"]))
    assert (q01.dim, q02.dim) == (1, 1)
    assert (q01 & q02).is_zero()


def test_split_characterization():
    """Q0^2 elements act nilpotently on even generators and never on odd ones."""
    for name in MAXIMAL:
        ext = maximal_solvable_extension(CORPUS[name])
        q01, q02 = ext.q_split
        gs = generator_space(ext.nilradical_algebra())
        assert q01.dim + q02.dim == ext.q
        assert q01.dim <= gs.k and q02.dim <= gs.s
        acts = dict(zip(ext.q_even, ext.z_actions()))
        nil = ext.nilradical_algebra()
        ev = [g for g in gs.indices if g < nil.n]
        od = [g for g in gs.indices if g >= nil.n]
        for v in q02.basis:
            m = sum((acts[z] * c for z, c in enumerate(v) if c), Matrix.zeros(nil.dim))
            assert all(m[g, g] == 0 for g in ev)
            assert any(m[g, g] != 0 for g in od)
            assert not is_nilpotent_mat(m)


def test_verify_example_33():
    rep = verify_model(model_from_algebra(CORPUS["ex33"]))
    assert rep.failed() == ["square_in_nilradical", "odd_square_in_even_square", "codim_bound"]
    assert rep["nilradical_matches"]


def test_verify_example_26():
    a = CORPUS["ex26"]
    m = model_from_algebra(a)
    assert m.nil_subspace == span_labels(a, ["x2", "y2"])
    rep = verify_model(m)
    assert not rep["square_in_nilradical"]
    assert not rep["odd_square_in_even_square"]
    assert not rep.ok


def test_verify_with_wrong_nilradical_labels():
    rep = verify_model(model_from_algebra(CORPUS["thm55"], ["x1", "y1"]))
    assert not rep["nilradical_matches"]


def test_odd_roots_distinct_corpus():
    for name in ("n1", "n2", "n3_m5"):
        a = CORPUS[name]
        assert check_odd_roots_distinct(a, maximal_torus(a))


def test_odd_roots_repeated_weight():
    a = abelian(0, 2)
    t = Torus((Derivation(Matrix.diag([1, 1]), 0, a),), Matrix.identity(2), a, 0)
    assert not check_odd_roots_distinct(a, t)


def test_odd_roots_distinct_sweep():
    rng = random.Random(51)
    seen = 0
    while seen < 15:
        a = random_graded_algebra(rng, rng.randint(0, 2), rng.randint(1, 3), extra=rng.randint(1, 4))
        if a is None or not is_maximal_rank(a):
            continue
        assert check_odd_roots_distinct(a, maximal_torus(a))
        seen += 1


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_odd_square_collapse_precondition_on_corpus(name):
    with pytest.raises(PreconditionNotMet):
        check_odd_square_collapse(CORPUS[name])


def test_odd_square_collapse_sweep():
    """Maximal rank plus [N1,N1] in [N0,N0] forces [N1,N1] = 0 on random graded algebras."""
    rng = random.Random(52)
    held = 0
    tried = 0
    while held < 15:
        tried += 1
        assert tried < 5000
        a = random_graded_algebra(rng, rng.randint(0, 3), rng.randint(1, 2), extra=rng.randint(1, 5))
        if a is None:
            continue
        assert is_nilpotent(a) and is_maximal_rank(a)
        try:
            assert check_odd_square_collapse(a) is True
        except PreconditionNotMet:
            continue
        held += 1


def test_odd_square_collapse_trivial_case():
    assert check_odd_square_collapse(abelian(1, 2)) is True


def test_maximal_rank_solvable_round_trip():
    for name in MAXIMAL:
        assert is_maximal_rank_solvable(maximal_solvable_extension(CORPUS[name]))
    assert is_maximal_rank_solvable(model_from_algebra(CORPUS["thm55"]))
    assert is_maximal_rank_solvable(model_from_algebra(CORPUS["ex54"]))
    assert not is_maximal_rank_solvable(model_from_algebra(CORPUS["ex33"]))
    # a proper subtorus is not a maximal torus
    half = attach_torus(CORPUS["n1"], [Matrix.diag([1, 1, 0])])
    assert not is_maximal_rank_solvable(half)
    assert not verify_model(half)["codim_equals_torus"]


def test_extension_of_random_maximal_rank_algebras():
    rng = random.Random(53)
    done = 0
    while done < 15:
        a = random_graded_algebra(rng, rng.randint(0, 2), rng.randint(1, 2), extra=rng.randint(1, 3))
        if a is None or not is_maximal_rank(a):
            continue
        ext = maximal_solvable_extension(a)
        assert validate(ext.algebra).ok
        rep = verify_model(ext)
        assert rep.ok, (a, rep.failed())
        assert square(ext.algebra) <= ext.nil_subspace
        done += 1

import random

import pytest
from hypothesis import given, strategies as st

from relqs import generators as G
from relqs.errors import NotInIdealError
from relqs.forms import GroupKind, Matrix, check_group_membership, check_relative
from relqs.rings import QQ, ZZ, Excision, Ideal, Polynomial
from relqs.tower import phi_elem
from relqs.words import (
    Absolute,
    Conjugate,
    Relative,
    Word,
    eval_word,
    invert_word,
    lift_generator,
    lift_matrix,
    lift_word,
    merge_adjacent,
    project_matrix,
    project_word,
    shuffle,
    split_parameter,
)

import oracle

LIN, SP, O = GroupKind.LINEAR, GroupKind.SYMPLECTIC, GroupKind.ORTHOGONAL
I3 = Ideal(ZZ, [3])
seeds = st.integers(0, 2**32)


def w_(R, kind, n, *factors):
    return Word(R, kind, n, tuple(f if isinstance(f, tuple) else (f, 1) for f in factors))


def test_eval_empty_is_identity():
    assert eval_word(w_(ZZ, LIN, 3)).is_identity()


def test_eval_splitting_example():
    w = w_(ZZ, LIN, 3, Absolute(1, 2, ZZ(2)), Absolute(1, 2, ZZ(3)))
    assert oracle.rows_of(eval_word(w)) == oracle.gen("linear", ZZ, 3, 1, 2, 5)


@pytest.mark.parametrize("kind,n", [(LIN, 3), (SP, 4), (O, 6)])
@given(seed=seeds)
def test_eval_agrees_with_oracle(kind, n, seed):
    rng = random.Random(seed)
    w = G.random_relative_word(rng, I3, kind, n, rng.randint(0, 4))
    assert oracle.rows_of(eval_word(w)) == oracle.dense(w)


@pytest.mark.parametrize("kind,n", [(LIN, 4), (SP, 6), (O, 6)])
@given(seed=seeds)
def test_word_times_inverse_is_identity(kind, n, seed):
    rng = random.Random(seed)
    w = G.random_relative_word(rng, I3, kind, n, rng.randint(0, 5))
    assert eval_word(w * invert_word(w)).is_identity()
    M = eval_word(w)
    assert M.mul(M.inverse, keep_inverse=False).is_identity()


def test_invert_examples():
    X = Polynomial(ZZ, ["X"]).gen("X")
    g = w_(X.ring, LIN, 3, Absolute(1, 2, X))
    assert oracle.rows_of(eval_word(invert_word(g))) == oracle.gen("linear", X.ring, 3, 1, 2, -X)
    assert invert_word(w_(ZZ, LIN, 3)).factors == ()
    a = w_(ZZ, LIN, 3, Absolute(1, 2, ZZ(2)))
    b = w_(ZZ, LIN, 3, Absolute(2, 3, ZZ(5)))
    assert eval_word(invert_word(a * b)) == eval_word(invert_word(b) * invert_word(a))


@pytest.mark.parametrize("kind,n", [(LIN, 3), (SP, 4), (SP, 6), (O, 6)])
@given(seed=seeds)
def test_split_parameter(kind, n, seed):
    rng = random.Random(seed)
    i, j = G.random_root(rng, kind, n)
    x, y = G.small(rng, QQ), G.small(rng, QQ)
    w = split_parameter(kind, n, Absolute(i, j, x + y), x, y)
    assert eval_word(w) == eval_word(w_(QQ, kind, n, Absolute(i, j, x + y)))


def test_split_and_merge_examples():
    R = Polynomial(ZZ, ["X"])
    X = R.gen("X")
    w = split_parameter(LIN, 3, Absolute(1, 2, X + 1), X, R.one)
    assert [g.z for g, _ in w.factors] == [X, R.one]
    assert merge_adjacent(w_(ZZ, LIN, 3, Absolute(1, 2, ZZ(2)), Absolute(1, 2, ZZ(-2)))).factors == ()
    a, b = ZZ(4), ZZ(-9)
    m = merge_adjacent(w_(ZZ, SP, 4, Absolute(1, 3, a), Absolute(1, 3, b)))
    assert len(m) == 1
    assert eval_word(m) == eval_word(w_(ZZ, SP, 4, Absolute(1, 3, a + b)))


@pytest.mark.parametrize("kind,n", [(LIN, 4), (SP, 6), (O, 6)])
@given(seed=seeds)
def test_merge_preserves_value(kind, n, seed):
    rng = random.Random(seed)
    w = G.random_absolute_word(rng, ZZ, kind, n, rng.randint(0, 8))
    assert eval_word(merge_adjacent(w)) == eval_word(w)


@given(seed=seeds)
def test_shuffle_identity(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    pairs = [(G.random_absolute_word(rng, ZZ, LIN, 3, rng.randint(0, 2)),
              G.random_absolute_word(rng, ZZ, LIN, 3, rng.randint(0, 2))) for _ in range(k)]
    lhs = Word(ZZ, LIN, 3, ())
    for a, b in pairs:
        lhs = lhs * a * b
    assert eval_word(shuffle(pairs)) == eval_word(lhs)


def test_shuffle_with_empty_bs():
    a1 = w_(ZZ, LIN, 3, Absolute(1, 2, ZZ(2)))
    a2 = w_(ZZ, LIN, 3, Absolute(2, 3, ZZ(7)))
    e = Word(ZZ, LIN, 3, ())
    assert eval_word(shuffle([(a1, e), (a2, e)])) == eval_word(a1 * a2)


# -- lifting and projection ----------------------------------------------------------


def test_lift_relative_example():
    g = Relative(1, 2, ZZ(2), I3.gen_elem(0))
    lg = lift_generator(g, I3)
    E = lg.f.ring
    assert isinstance(E, Excision)
    assert E.r_part(lg.f.v) == ZZ(2) and E.i_part(lg.f.v).value.is_zero()
    assert E.r_part(lg.h.value.v).is_zero() and E.i_part(lg.h.value.v).value == ZZ(3)


def test_lift_empty_word():
    assert lift_word(w_(ZZ, LIN, 3), I3).factors == ()


def test_lift_requires_witness():
    with pytest.raises(NotInIdealError):
        lift_generator(Absolute(1, 2, ZZ(3)), I3)


def test_lift_matrix_examples():
    E = Excision(ZZ, I3)
    eye = lift_matrix(Matrix.identity(ZZ, 3), I3)
    assert eye == Matrix.identity(E, 3)
    M = lift_matrix(Matrix(ZZ, [[1, 3, 0], [0, 1, 0], [0, 0, 1]]), I3)
    assert all(M[a, a] == E.one for a in range(3))
    assert E.r_part(M[0, 1].v).is_zero() and E.i_part(M[0, 1].v).value == ZZ(3)
    assert project_matrix(M) == Matrix(ZZ, [[1, 3, 0], [0, 1, 0], [0, 0, 1]])


def test_project_absolute_example():
    E = Excision(ZZ, I3)
    x = E.pair(0, I3.gen_elem(0, 2))
    w = project_word(w_(E, LIN, 3, Absolute(1, 2, x)))
    (g, _), = w.factors
    assert g.z == ZZ(6)


@pytest.mark.parametrize("R,I", G.excision_settings(), ids=lambda x: repr(x))
@given(seed=seeds)
def test_lift_project_round_trip(R, I, seed):
    rng = random.Random(seed)
    kind, n = rng.choice([(LIN, 3), (SP, 4), (O, 6)])
    w = G.random_relative_word(rng, I, kind, n, rng.randint(0, 3))
    lw = lift_word(w, I)
    assert eval_word(project_word(lw)) == eval_word(w)
    # phi commutes with evaluation
    L = eval_word(lw)
    assert L.map(phi_elem, R) == eval_word(w)
    M = eval_word(w)
    assert check_relative(M, I)
    assert project_matrix(lift_matrix(M, I)) == M


@given(seed=seeds)
def test_conjugates_of_relative_words_stay_relative(seed):
    rng = random.Random(seed)
    kind, n = rng.choice([(LIN, 4), (SP, 6), (O, 6)])
    w = G.random_relative_word(rng, I3, kind, n, rng.randint(1, 3))
    c = G.random_absolute_word(rng, ZZ, kind, n, rng.randint(1, 3))
    M = eval_word(c * w * invert_word(c))
    assert check_relative(M, I3)
    if kind is not LIN:
        assert check_group_membership(M, kind)


def test_conjugate_shape_eval():
    h = I3.gen_elem(0)
    conj = ((Absolute(1, 3, ZZ(2)), 1), (Absolute(3, 2, ZZ(-1)), -1))
    w = w_(ZZ, LIN, 3, Conjugate(conj, 2, 1, h))
    assert oracle.rows_of(eval_word(w)) == oracle.dense(w)

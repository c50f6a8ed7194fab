import itertools
import random

import pytest

from relqs import steinberg
from relqs.errors import RewriteFailure
from relqs.forms import GroupKind
from relqs.rings import QQ, ZZ
from relqs.words import Absolute, generator_matrix

import oracle

SIZES = [(GroupKind.LINEAR, 4), (GroupKind.SYMPLECTIC, 6), (GroupKind.ORTHOGONAL, 6)]


@pytest.mark.parametrize("kind,n", SIZES + [(GroupKind.SYMPLECTIC, 4), (GroupKind.ORTHOGONAL, 4)])
def test_generator_matrix_matches_definition(kind, n):
    for a, b in steinberg.roots(kind, n):
        for i, j in {(a, b), (b, a)}:
            try:
                steinberg.validate(kind, n, i, j)
            except ValueError:
                continue
            got = oracle.rows_of(generator_matrix(kind, n, Absolute(i, j, ZZ(5))))
            assert got == oracle.gen(kind.value, ZZ, n, i, j, 5)


def test_generator_examples():
    assert oracle.rows_of(generator_matrix("linear", 3, Absolute(1, 3, ZZ(5)))) == oracle.gen("linear", ZZ, 3, 1, 3, 5)
    M = oracle.rows_of(generator_matrix("symplectic", 4, Absolute(1, 3, ZZ(7))))
    assert M[0][2] == ZZ(7) and M[3][1] == ZZ(-7)
    M = oracle.rows_of(generator_matrix("symplectic", 4, Absolute(2, 1, ZZ(7))))
    assert M[1][0] == ZZ(7) and sum(1 for r in M for x in r if not x.is_zero()) == 5


def test_orthogonal_rejects_sigma_pairs():
    with pytest.raises(ValueError):
        steinberg.validate(GroupKind.ORTHOGONAL, 4, 1, 2)
    with pytest.raises(ValueError):
        steinberg.validate(GroupKind.LINEAR, 3, 2, 2)


@pytest.mark.parametrize("kind,n", SIZES)
def test_canonical_sign(kind, n):
    for i, j in itertools.permutations(range(1, n + 1), 2):
        try:
            steinberg.validate(kind, n, i, j)
        except ValueError:
            continue
        root, sign = steinberg.canonical(kind, i, j)
        lhs = oracle.rows_of(generator_matrix(kind, n, Absolute(i, j, ZZ(3))))
        rhs = oracle.rows_of(generator_matrix(kind, n, Absolute(*root, ZZ(3 * sign))))
        assert lhs == rhs


def test_linear_relations():
    L = GroupKind.LINEAR
    assert steinberg.derive_relation(L, (1, 2), (2, 3)) == (((1, 3), 1, 1, 1),)
    assert steinberg.derive_relation(L, (1, 2), (3, 4)) == ()
    (c, k, p, q), = steinberg.derive_relation(L, (1, 2), (3, 1))
    assert (c, k, p, q) == ((3, 2), -1, 1, 1)


@pytest.mark.parametrize("kind,n", SIZES)
def test_relations_against_dense_oracle(kind, n):
    """Every derived commutator formula checked at random integer points."""
    rng = random.Random(7)
    rts = steinberg.roots(kind, n)
    for a, b in itertools.product(rts, rts):
        if a == b or steinberg.opposite(kind, a) == b:
            continue
        s, t = rng.randint(-4, 4), rng.randint(-4, 4)
        lhs = oracle.product(ZZ, n, [
            oracle.gen(kind.value, ZZ, n, *a, s), oracle.gen(kind.value, ZZ, n, *b, t),
            oracle.gen(kind.value, ZZ, n, *a, -s), oracle.gen(kind.value, ZZ, n, *b, -t)])
        rhs = oracle.product(ZZ, n, [oracle.gen(kind.value, ZZ, n, *c, k * s**p * t**q)
                                     for c, k, p, q in steinberg.relation(kind, a, b)])
        assert lhs == rhs, (a, b)


def test_flipped_relation_is_scoped():
    kind, a, b = GroupKind.ORTHOGONAL, (1, 3), (3, 5)
    before = steinberg.relation(kind, a, b)
    with steinberg.flipped_relation(kind, a, b) as flipped:
        assert steinberg.relation(kind, a, b) == flipped != before
        assert flipped[0][1] == -before[0][1]
    assert steinberg.relation(kind, a, b) == before


@pytest.mark.parametrize("kind,n", [(GroupKind.LINEAR, 3), (GroupKind.SYMPLECTIC, 4), (GroupKind.ORTHOGONAL, 6)])
def test_split_root_produces_the_root(kind, n):
    for b in steinberg.roots(kind, n):
        x, y = steinberg.split_root(kind, n, b)
        assert any(c == b and p == 1 and q == 1 for c, k, p, q in steinberg.relation(kind, x, y))


def test_split_root_needs_room():
    with pytest.raises(RewriteFailure):
        steinberg.split_root(GroupKind.ORTHOGONAL, 4, (1, 3))


def test_symplectic_long_roots_need_half():
    # the long root term carries coefficient 2, so QQ is needed to divide
    kind = GroupKind.SYMPLECTIC
    x, y = steinberg.split_root(kind, 4, (1, 2))
    ks = [k for c, k, p, q in steinberg.relation(kind, x, y) if c == (1, 2) and p == q == 1]
    assert ks and abs(ks[0]) in (1, 2)
    assert QQ.divide_exact(QQ.one_p, QQ.from_int(ks[0])) is not None

import json
import random

import pytest
from hypothesis import given, strategies as st

from relqs import generators as G, serialize as S
from relqs.errors import SchemaError
from relqs.forms import GroupKind, Matrix
from relqs.rings import QQ, ZZ, Ideal, Polynomial
from relqs.words import Absolute, Word, eval_word, lift_word

from conftest import BASE_RINGS, EXCISIONS, elements

seeds = st.integers(0, 2**32)


@pytest.mark.parametrize("R", BASE_RINGS + EXCISIONS, ids=repr)
@given(data=st.data())
def test_element_round_trip(R, data):
    x = data.draw(elements(R))
    doc = S.encode_elem(x)
    assert S.decode_elem(R, json.loads(S.dumps(doc))) == x
    assert S.decode_ring(S.encode_ring(R)) == R
    assert S.dumps(S.encode_elem(S.decode_elem(R, doc))) == S.dumps(doc)


def test_integers_are_strings():
    big = ZZ(10**40)
    assert S.encode_elem(big) == str(10**40)
    R = Polynomial(QQ, ["X", "Y"])
    X, Y = R.gens()
    assert S.encode_elem(Y + X) == [[[0, 1], "1"], [[1, 0], "1"]]


@given(seed=seeds)
def test_word_round_trip_is_byte_stable(seed):
    rng = random.Random(seed)
    R, I = rng.choice(G.excision_settings())
    kind, n = rng.choice([(GroupKind.LINEAR, 3), (GroupKind.SYMPLECTIC, 4), (GroupKind.ORTHOGONAL, 6)])
    w = G.random_relative_word(rng, I, kind, n, rng.randint(0, 4))
    if rng.random() < 0.3:
        w = lift_word(w, I)
    doc = S.encode_word(w)
    back = S.decode_word(json.loads(S.dumps(doc)))
    assert back == w
    assert S.dumps(S.encode_word(back)) == S.dumps(doc)


def test_matrix_round_trip():
    M = Matrix(ZZ, [[1, 3], [0, 1]])
    assert S.decode_matrix(S.encode_matrix(M)) == M


@pytest.mark.parametrize("doc", [
    {"type": "RR"},
    {"nope": 1},
    [],
])
def test_bad_rings(doc):
    with pytest.raises(SchemaError):
        S.decode_ring(doc)


def test_bad_elements():
    with pytest.raises(SchemaError):
        S.decode_elem(ZZ, "1.5")
    with pytest.raises(SchemaError):
        S.decode_elem(QQ, "1/0")
    with pytest.raises(SchemaError):
        S.decode_elem(Polynomial(ZZ, ["X"]), [[[1, 2], "1"]])


def test_factor_witness_must_match():
    I = Ideal(ZZ, [3])
    doc = {"shape": "absolute", "i": 1, "j": 2, "params": {"z": "4", "witness": ["1"]}}
    with pytest.raises(SchemaError):
        S.decode_factors(ZZ, GroupKind.LINEAR, 3, I, [doc])


def test_word_ideal_must_be_shared():
    I, J = Ideal(ZZ, [3]), Ideal(ZZ, [5])
    w = Word(ZZ, GroupKind.LINEAR, 3, ((Absolute(1, 2, ZZ(3), I.gen_elem(0)), 1),
                                       (Absolute(1, 2, ZZ(5), J.gen_elem(0)), 1)))
    with pytest.raises(SchemaError):
        S.encode_word(w)

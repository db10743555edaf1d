from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from w3calc.errors import StructuralError
from w3calc.pi1cfg import (Face, FaceMapParams, GeneratorTerm, HClass, Parity, act, face_image,
                           normalize)
from w3calc.ring import LaurentPoly, t_vars

parities = st.sampled_from(list(Parity))
triples = st.tuples(*[st.integers(-6, 6)] * 3)
pairs = st.sampled_from([(i, j) for i in (1, 2, 3) for j in (1, 2, 3) if i != j])


@pytest.mark.parametrize("value, expected", [
    ("even", Parity.EVEN), ("ODD", Parity.ODD), (4, Parity.EVEN), (7, Parity.ODD), (Parity.ODD, Parity.ODD),
])
def test_parity_parse(value, expected):
    assert Parity.parse(value) is expected


@pytest.mark.parametrize("value", ["n", True, None])
def test_parity_parse_rejects(value):
    with pytest.raises(StructuralError):
        Parity.parse(value)


def test_reversed_generator_picks_up_sign():
    assert normalize((0, 0, 0), 2, 1, "odd") == HClass.generator(1, 2, 3, "odd").scale(-1)
    assert normalize((0, 0, 0), 2, 1, "even") == HClass.generator(1, 2, 3, "even")


def test_self_pair_vanishes():
    assert not normalize((3, 1, 0), 2, 2, "even")


def test_tj_acts_as_inverse_ti():
    w = HClass.generator(1, 3, 3, "even", 2)
    assert act((0, 0, 1), w) == HClass.generator(1, 3, 3, "even", 1)


@given(parities, pairs, triples, triples)
def test_action_is_a_group_action(par, ij, m1, m2):
    c = normalize((1, -2, 3), *ij, par)
    both = tuple(a + b for a, b in zip(m1, m2))
    assert act(m1, act(m2, c)) == act(both, c)


@given(parities, pairs, triples)
def test_t1t2t3_acts_trivially(par, ij, m):
    c = normalize(m, *ij, par)
    assert act((1, 1, 1), c) == c


@given(parities, st.integers(-5, 5), st.integers(-5, 5))
def test_json_roundtrip(par, a, b):
    c = HClass.generator(1, 2, 3, par, a) + HClass.generator(2, 3, 3, par, b, Fraction(-1, 2))
    assert HClass.from_json(c.to_json(), 3, par) == c


@pytest.mark.parametrize("i, j, poly_exps", [
    (2, 1, (0, 0)),
    (1, 2, (0, 1)),
    (1, 3, (0, 0)),
])
def test_generator_term_validation(i, j, poly_exps):
    with pytest.raises(StructuralError):
        GeneratorTerm(i, j, LaurentPoly.monomial(t_vars(2), poly_exps))


@pytest.mark.parametrize("face, expected", [
    (Face.T1_ZERO, [((2, 3), 1)]),
    (Face.T3_ONE, [((1, 2), 1)]),
    (Face.DOUBLE_FIRST, [((1, 3), 1), ((2, 3), 1), ((1, 2), 2)]),
    (Face.DOUBLE_SECOND, [((1, 2), 1), ((1, 3), 1), ((2, 3), 2)]),
])
def test_face_images_of_w12(face, expected):
    par = Parity.EVEN
    img = face_image(HClass.generator(1, 2, 2, par), face, FaceMapParams(a1=2, a2=2))
    want = HClass.zero(3, par)
    for (i, j), q in expected:
        want = want + HClass.generator(i, j, 3, par, coeff=q)
    assert img == want


def test_face_image_shifts_exponents():
    img = face_image(HClass.generator(1, 2, 2, "odd", 3), "double_first")
    want = HClass.generator(1, 3, 3, "odd", 3) + normalize((3, 3, 0), 2, 3, "odd")
    assert img == want
    assert img.terms[(2, 3)].coeff((0, 3, 0)) == 1


def test_face_needs_two_points():
    with pytest.raises(StructuralError):
        face_image(HClass.generator(1, 2, 3, "odd"), "t3_one")
    with pytest.raises(StructuralError):
        face_image(HClass.generator(1, 2, 2, "odd"), "sideways")

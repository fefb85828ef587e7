import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import gaussian, generalized_vectors, multivectors
from gcgw.exterior import BasedSpace, GeneralizedVector, Multivector, wedge
from gcgw.lie import (
    InvalidLieAlgebra,
    LieStructure,
    ce_d,
    check_table,
    courant_bracket,
    lie_derivative,
    structure_constants_to_table,
    validate,
)

IWASAWA = {"e5": "e1^e3 + e4^e2", "e6": "e1^e4 + e2^e3"}


@pytest.fixture(scope="module")
def iwasawa():
    return LieStructure(6, IWASAWA, nilpotent=True)


def vec(n, j):
    return [1 if t == j else 0 for t in range(n)]


def test_abelian_class_one():
    rep = validate(LieStructure.abelian(4))
    assert rep.valid and rep.nilpotency_class == 1


def test_iwasawa_class_two(iwasawa):
    rep = validate(iwasawa)
    assert rep.valid and rep.nilpotency_class == 2


def test_invalid_table_reports_witness():
    # d^2 e2 = d(e3^e4) = e1^e2^e4 != 0
    S = BasedSpace(4)
    rep = check_table(S, {"e3": "e1^e2", "e2": "e3^e4"})
    assert not rep.valid
    assert rep.first_failure == "e2"
    assert rep.failure_value == Multivector.parse(S, "e1^e2^e4")
    with pytest.raises(InvalidLieAlgebra):
        LieStructure(S, {"e3": "e1^e2", "e2": "e3^e4"})


def test_heisenberg_style_table_is_valid():
    # de3 = e12, de2 = e13: d^2 e2 = d(e1^e3) = -e1^e1^e2 = 0
    rep = check_table(BasedSpace(3), {"e3": "e1^e2", "e2": "e1^e3"})
    assert rep.valid


def test_ce_d_examples(iwasawa):
    S = iwasawa.space
    assert ce_d(iwasawa, Multivector.parse(S, "e5")) == Multivector.parse(S, "e1^e3 + e4^e2")
    assert ce_d(iwasawa, Multivector.parse(S, "e1^e5")) == Multivector.parse(S, "e1^e2^e4")
    assert ce_d(iwasawa, Multivector.scalar(S, 7)).is_zero()


def test_bracket_from_table(iwasawa):
    # d e^5 = -sum c^5_ij e^ij, so [e1, e3] = -e5 and [e2, e4] = +e5
    assert iwasawa.bracket(vec(6, 0), vec(6, 2)) == [0, 0, 0, 0, -1, 0]
    assert iwasawa.bracket(vec(6, 1), vec(6, 3)) == [0, 0, 0, 0, 1, 0]


def test_structure_constant_round_trip(iwasawa):
    table, bad = structure_constants_to_table(iwasawa.space, iwasawa.structure_constants())
    assert not bad
    assert tuple(table) == iwasawa.d_table


def test_from_structure_constants_rejects_asymmetry():
    with pytest.raises(InvalidLieAlgebra):
        LieStructure.from_structure_constants(3, {(0, 1): {2: 1}, (1, 0): {2: 1}})


def test_courant_examples(iwasawa):
    S = iwasawa.space
    u = GeneralizedVector.e(S, 0)
    v = GeneralizedVector.dual(S, 4)
    br = courant_bracket(iwasawa, u, v)
    assert br == GeneralizedVector(S, None, vec(6, 2))
    A = LieStructure.abelian(4)
    w = GeneralizedVector(A.space, [1, 2, 0, 0], [0, 1, 0, 3])
    z = GeneralizedVector(A.space, [0, 1, 1, 0], [1, 0, 0, 0])
    assert courant_bracket(A, w, z).is_zero()


@given(st.data())
def test_courant_skew(iwasawa, data):
    S = iwasawa.space
    u = data.draw(generalized_vectors(S))
    v = data.draw(generalized_vectors(S))
    assert courant_bracket(iwasawa, u, v) == -courant_bracket(iwasawa, v, u)


@given(st.data())
def test_d_squared_and_jacobi(iwasawa, data):
    S = iwasawa.space
    a = data.draw(multivectors(S, max_terms=4))
    assert ce_d(iwasawa, ce_d(iwasawa, a)).is_zero()
    x, y, z = (data.draw(st.lists(st.integers(-2, 2), min_size=6, max_size=6)) for _ in range(3))
    br = iwasawa.bracket
    total = [p + q + r for p, q, r in zip(br(x, br(y, z)), br(y, br(z, x)), br(z, br(x, y)))]
    assert not any(total)


@given(st.data())
def test_cartan_commutes_with_d(iwasawa, data):
    S = iwasawa.space
    a = data.draw(multivectors(S, max_terms=3))
    X = data.draw(st.lists(gaussian, min_size=6, max_size=6))
    assert lie_derivative(iwasawa, X, ce_d(iwasawa, a)) == ce_d(iwasawa, lie_derivative(iwasawa, X, a))


@given(st.data())
def test_ce_d_is_antiderivation(iwasawa, data):
    S = iwasawa.space
    a = data.draw(multivectors(S, degree=1, max_terms=3))
    b = data.draw(multivectors(S, max_terms=3))
    assert ce_d(iwasawa, wedge(a, b)) == wedge(ce_d(iwasawa, a), b) - wedge(a, ce_d(iwasawa, b))

import pytest

from qspace.cfunc import CFunction, E3_VARS, LINE_VARS
from qspace.ncalgebra import NCElement, PurityError, lift, normal_form
from qspace.pairexp import (
    classical_factorial,
    coord_word_element,
    deriv_word_element,
    kronecker_check,
    pair,
    qexp,
)
from qspace.scalars import ONE, qfact, qpow, scalar


def test_pairing_examples():
    u = normal_form("line", ("d1", "d1"))
    v = lift("line", CFunction.monomial(LINE_VARS, (0, 2)))
    assert pair("line", "L_Rbar", u, v) == ONE + qpow(1)

    one_u = NCElement.one("line")
    one_v = lift("line", CFunction.constant(LINE_VARS, 1))
    assert pair("line", "L_Rbar", one_u, one_v) == ONE

    d1 = NCElement.generator("line", "d1")
    x1 = lift("line", CFunction.monomial(LINE_VARS, (0, 1)))
    assert pair("line", "L_Rbar", d1, x1, order="coord_first") == -ONE


def test_line_pairing_table():
    for m0 in range(3):
        for m1 in range(4):
            exps = (m0, m1)
            xw = coord_word_element("line", exps, False)
            dw = deriv_word_element("line", exps, False)
            dwh = deriv_word_element("line", exps, True)
            want = classical_factorial(m0) * qfact(m1, 1)
            wanth = classical_factorial(m0) * qfact(m1, -1)
            sgn = scalar(-1) if (m0 + m1) % 2 else ONE
            assert pair("line", "L_Rbar", dw, xw) == want
            assert pair("line", "Lbar_R", dwh, xw) == wanth
            assert pair("line", "L_Rbar", dw, xw, order="coord_first") == sgn * want
            assert pair("line", "Lbar_R", dwh, xw, order="coord_first") == sgn * wanth


def test_euclid3_pairing_diagonal_and_offdiagonal():
    # diagonal values: m0! [[m+]]_{q^4}! [[m3]]_{q^2}! [[m-]]_{q^4}!
    exps = (1, 1, 2, 1)
    xw = coord_word_element("euclid3", exps, False)
    dw = deriv_word_element("euclid3", exps, False)
    want = classical_factorial(1) * qfact(1, 4) * qfact(2, 2) * qfact(1, 4)
    assert pair("euclid3", "L_Rbar", dw, xw) == want
    # mismatched words vanish
    other = coord_word_element("euclid3", (0, 2, 1, 1), False)
    assert pair("euclid3", "L_Rbar", dw, other).is_zero()


def test_pair_rejects_impure_arguments():
    mixed = normal_form("euclid3", ("xp", "dp"))
    coord = lift("euclid3", CFunction.monomial(E3_VARS, (0, 1, 0, 0)))
    with pytest.raises(PurityError):
        pair("euclid3", "L_Rbar", mixed, coord)


def test_qexp_degree_zero_and_one():
    e0 = qexp("line", "x_d", 0)
    assert len(e0.terms) == 1
    exps, dword, coeff = e0.terms[0]
    assert exps == (0, 0) and coeff == ONE and dword == NCElement.one("line")

    e1 = qexp("line", "x_d", 1)
    by_exps = {t[0]: t for t in e1.terms}
    assert set(by_exps) == {(0, 0), (1, 0), (0, 1)}
    assert by_exps[(0, 1)][2] == ONE
    assert by_exps[(0, 1)][1] == NCElement.generator("line", "d1")


def test_qexp_quadratic_coefficient():
    e2 = qexp("line", "x_d", 2)
    coeff = next(t[2] for t in e2.terms if t[0] == (0, 2))
    assert coeff == ONE / (ONE + qpow(1))


def test_qexp_classical_limit():
    for exps, _d, coeff in qexp("line", "x_d", 4):
        want = ONE / (classical_factorial(exps[0]) * classical_factorial(exps[1]))
        assert coeff.eval_exact(1) == want.eval_exact(1)


def test_flipped_variant_signs():
    # derivative-first exponentials carry one sign per total degree
    e = qexp("line", "d_x", 2)
    by_exps = {t[0]: t[2] for t in e.terms}
    assert by_exps[(0, 1)] == -ONE
    assert by_exps[(0, 2)] == ONE / (ONE + qpow(1))
    assert by_exps[(1, 1)] == ONE


@pytest.mark.parametrize("variant", ["x_d", "x_dhat", "d_x", "dhat_x"])
def test_kronecker_line(variant):
    assert kronecker_check("line", variant, 4).passed


@pytest.mark.parametrize("variant", ["x_d", "x_dhat", "d_x", "dhat_x"])
def test_kronecker_euclid3(variant):
    assert kronecker_check("euclid3", variant, 2).passed


def test_hatted_words_follow_reversed_basis_order():
    # the hatted derivative word for mixed exponents is ordered through the
    # indices reversely, which shows up in the normal form
    dw = deriv_word_element("euclid3", (0, 1, 1, 0), True)
    explicit = normal_form("euclid3", ("dp", "d3")).scale(qpow(12))
    assert dw == explicit

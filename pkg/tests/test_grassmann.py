from qspace.grassmann import (
    GElement,
    SuperNumber,
    g_antipode,
    g_delta,
    g_deriv_int,
    g_exponential,
    g_normal_form,
    g_pairing,
    g_translate,
    grassmann_suite,
)
from qspace.scalars import ONE, ZERO, qpow, scalar


def test_nilpotency_and_antisymmetry():
    assert g_normal_form(("th1", "th1")).is_zero()
    assert g_normal_form(("th0", "th0")).is_zero()
    got = g_normal_form(("th1", "th0"))
    assert got == g_normal_form(("th0", "th1")).scale(-1)
    assert g_normal_form(()) == GElement.one()


def test_leibniz_rules():
    got = g_normal_form(("dth1", "th1"))
    want = GElement.one() + g_normal_form(("th1", "dth1")).scale(-qpow(1))
    assert got == want
    goth = g_normal_form(("dth1", "th1"), hatted=True)
    wanth = GElement.one() + g_normal_form(("th1", "dth1")).scale(-qpow(-1))
    assert goth == wanth


def test_supernumber_actions():
    f = SuperNumber(scalar(3), scalar(5))
    assert g_deriv_int(f, "left") == scalar(5)
    assert g_deriv_int(f, "left_bar") == scalar(5)
    assert g_deriv_int(f, "right") == -scalar(5)
    assert g_deriv_int(f, "right_bar") == -scalar(5)
    const = SuperNumber(scalar(3), ZERO)
    assert g_deriv_int(const, "left") == ZERO
    # integration coincides with differentiation
    for mode in ("left", "left_bar", "right", "right_bar"):
        assert g_deriv_int(f, mode, as_integral=True) == g_deriv_int(f, mode)


def test_translation_and_antipode():
    f = SuperNumber(scalar(2), scalar(7))
    body, soul_th, soul_psi = g_translate(f)
    assert (body, soul_th, soul_psi) == (f.body, f.soul, f.soul)
    assert g_antipode(f) == SuperNumber(scalar(2), -scalar(7))
    assert g_antipode(g_antipode(f)) == f
    const = SuperNumber(scalar(2), ZERO)
    assert g_antipode(const) == const


def test_pairings():
    for kind in ("plain", "hat"):
        vals = g_pairing(kind)
        for i in (0, 1):
            for j in (0, 1):
                assert vals[(i, j)] == (ONE if i == j else ZERO)
    for kind in ("coord_first", "coord_first_hat"):
        vals = g_pairing(kind)
        for i in (0, 1):
            for j in (0, 1):
                assert vals[(i, j)] == (-ONE if i == j else ZERO)


def test_exponentials_and_deltas():
    for variant in ("x_d", "x_dhat", "d_x", "dhat_x"):
        terms = g_exponential(variant)
        assert len(terms) == 2  # nilpotency truncates immediately
        delta = g_delta(variant)
        assert delta.body == ZERO and delta.soul == ONE


def test_full_suite():
    assert grassmann_suite().passed

import pytest

from swduality.arith import LaurentQ, RatFuncZ, SpectralParam, zero_order
from swduality.rseries import (
    PsiDefinition,
    c_ij,
    compare_psi_definitions,
    f_aj,
    g_of_z,
    phi,
    psi,
    psi_expanded,
    run_suite,
    verify_a11_telescoping,
    verify_main_identity,
)

VIA_G = PsiDefinition.VIA_G
PRODUCT = PsiDefinition.DISPLAYED_PRODUCT

z = RatFuncZ.z()
one = RatFuncZ.const(1)


def qq(m, c=1):
    return RatFuncZ(LaurentQ.q_power(m, c))


# ---------------------------------------------------------------------------
# f, g, a11
# ---------------------------------------------------------------------------


def test_f_aj_examples():
    assert f_aj(0, 0, 4) == (1, -1)
    assert f_aj(0, 4, 4) == (-1, -1)
    assert f_aj(0, 3, 4) == (1, 0)


def test_g_n3():
    expected = qq(3) * (z - qq(-6)) * (z + qq(-5)) / ((z - qq(-2)) * (z + qq(-3)))
    assert g_of_z(3) == expected


@pytest.mark.parametrize("N", [2, 3, 5])
def test_g_leading_behaviour_and_pole(N):
    num, den = g_of_z(N).canonical()
    assert num.degree() == den.degree() == 2
    assert num.coeffs[-1] * den.coeffs[-1] ** -1 == LaurentQ.q_power(N)
    assert zero_order(g_of_z(N), SpectralParam(1, -2)) == -1


@pytest.mark.parametrize("N", range(2, 9))
def test_a11_telescoping(N):
    assert verify_a11_telescoping(N).ok


# ---------------------------------------------------------------------------
# psi, phi, c
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("N", [3, 4, 6])
def test_psi_zero_via_g(N):
    w = z + 1
    expected = qq(-N) * (w - qq(2 * N - 2)) * (w + qq(N)) / (w + qq(N - 2))
    assert psi(0, N, VIA_G) == expected


@pytest.mark.parametrize("N", [3, 4, 6])
def test_psi_zero_displayed_product(N):
    w = z + 1
    expected = (w + qq(N)) * (w - qq(2 * N - 2)) / (w + qq(N - 2))
    assert psi(0, N, PRODUCT) == expected


@pytest.mark.parametrize("N", [3, 5])
def test_psi_factored_agrees_with_expanded(N):
    for a in range(-2 * N, 2 * N + 1):
        for d in (VIA_G, PRODUCT):
            assert psi(a, N, d) == psi_expanded(a, N, d), (a, d)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_psi_pairing_at_zero(N):
    assert psi(0, N).at_zero() * psi(1 - N, N).at_zero() == one


def test_phi_basics():
    for N in (3, 4, 5):
        assert phi(0, N) == one
        assert phi(1, N) == psi(1 - N, N) ** -1
        for a in range(-4, 5):
            assert phi(a, N).at_zero() * phi(-a, N).at_zero() == one


@pytest.mark.parametrize("N", [3, 4])
def test_c_ij_conditions(N):
    # expanded bivariate spot checks; the suite covers |i - j| <= 2N in factored form
    for i in range(-2, 3):
        assert c_ij(i, i, N) == c_ij(0, 0, N)
    for i in range(-3, 4):
        cij, cji = c_ij(i, 0, N), c_ij(0, i, N)
        assert (cij * cji.swap()) == c_ij(0, 0, N)
        assert c_ij(i + 1, 1, N) == cij


def test_c_ii_is_one():
    from swduality.arith import BivarRatFunc

    assert c_ij(2, 2, 4) == BivarRatFunc(1)


# ---------------------------------------------------------------------------
# main identity and suite
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("a, j, N", [(0, 0, 3), (0, 4, 4), (5, -2, 5)])
def test_main_identity_examples(a, j, N):
    assert verify_main_identity(a, j, N, VIA_G).ok


def test_suite_passes_for_g_definition():
    rep = run_suite(3, VIA_G)
    assert rep["ok"] and rep["n_failed"] == 0
    assert rep["n_checks"] > 100


def test_displayed_product_differs_by_q_power():
    for N in (3, 4):
        cmp = compare_psi_definitions(N, range(-3, 4))
        at0 = next(r for r in cmp if r["a"] == 0)
        assert not at0["equal"]
        assert psi(0, N, PRODUCT) == qq(N) * psi(0, N, VIA_G)


def test_displayed_product_suite_reports_failures():
    rep = run_suite(3, PRODUCT)
    assert not rep["ok"]
    failed = {c["check"] for c in rep["checks"] if not c["ok"]}
    assert failed
    assert all("residual" in c for c in rep["checks"] if not c["ok"])


def test_psi_definition_parse():
    assert PsiDefinition.parse("g") is VIA_G
    assert PsiDefinition.parse("product") is PRODUCT
    with pytest.raises(ValueError):
        PsiDefinition.parse("other")

from dataclasses import replace

import pytest
import sympy

from swduality.klr import (
    KLRAlgebra,
    composition_report,
    convolution,
    renormalized_r,
    rmatrix_unnormalized,
    segment_module,
    yang_baxter_check,
    zero_order_s,
)
from swduality.klr import perms as P
from swduality.klr.modules import SizeCapError
from swduality.klr.rmatrix import (
    LinearMap,
    _is_iso,
    classify_pair,
    expected_degree,
    hexagon_composites,
    word_choice_check,
)
from swduality.segments import Segment, inner_form, sym_form


def L(a, b=None):
    return segment_module(a, a if b is None else b)


def S(a, b=None):
    return Segment(a, a if b is None else b)


def generator(M):
    return M.index((P.identity(M.n), (0,) * len(M.factors)))


def sympy_rank(f: LinearMap) -> int:
    return sympy.Matrix(f.to_dense()).rank()


# ---------------------------------------------------------------------------
# unnormalized R-matrices
# ---------------------------------------------------------------------------


def test_r_unlinked_is_invertible():
    R = rmatrix_unnormalized(L(1), L(3))
    assert _is_iso(R) and sympy_rank(R) == 2


def test_r_same_residue_is_intertwiner():
    R = rmatrix_unnormalized(L(1), L(1))
    NM = R.dst
    g = generator(R.src)
    expected = NM.apply_phi(1, {generator(NM): 1})
    assert R.apply({g: 1}) == expected
    assert not R.is_zero()


def test_r_degree_adjacent():
    M, N = L(1), L(2)
    R = rmatrix_unnormalized(M, N)
    deg = sym_form(M.weight, N.weight) - 2 * inner_form(M.weight, N.weight)
    assert deg == -1
    assert R.is_homogeneous(deg)


# ---------------------------------------------------------------------------
# zero orders and renormalized maps
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("a", [-2, 0, 3])
def test_zero_order_examples(a):
    assert zero_order_s(L(a), L(a)) == 0
    assert zero_order_s(L(a, a + 1), L(a, a + 1)) == 1
    assert zero_order_s(L(a), L(a + 1)) == 0


@pytest.mark.parametrize("a, b", [(0, 0), (1, 2), (0, 2)])
def test_r_on_equal_segments_is_identity(a, b):
    res = renormalized_r(L(a, b), L(a, b))
    assert res.degree == 0
    assert all(col == {j: 1} for j, col in enumerate(res.r.cols))


@pytest.mark.parametrize("s1, s2", [((1, 2), (1, 3)), ((1, 2), (2, 3)), ((0, 1), (1, 1)), ((1, 1), (1, 2))])
def test_renormalized_degree_for_overlapping(s1, s2):
    a, b = s1
    a2, b2 = s2
    assert a <= a2 <= b <= b2
    res = renormalized_r(L(*s1), L(*s2))
    assert res.degree == int(a == a2) + int(b == b2) - 2
    assert res.r.is_homogeneous(res.degree)
    assert not res.r.is_zero()


@pytest.mark.parametrize("s1, s2", [((3, 4), (0, 1)), ((4, 4), (1, 2)), ((2, 3), (0, 0))])
def test_renormalized_unlinked_is_iso(s1, s2):
    assert _is_iso(renormalized_r(L(*s1), L(*s2)).r)


def test_s_bounds_small_sweep():
    segs = [S(a, b) for a in range(0, 3) for b in range(a, 3)]
    for s1 in segs:
        for s2 in segs:
            s = zero_order_s(L(s1.a, s1.b), L(s2.a, s2.b))
            assert 0 <= s <= inner_form(s1.weight(), s2.weight())


# ---------------------------------------------------------------------------
# composition reports
# ---------------------------------------------------------------------------


def test_composition_case_v_image():
    rep = composition_report(S(2, 3), S(1, 2))
    assert rep.case == "v" and rep.ok, rep.failures
    res = renormalized_r(L(2, 3), L(1, 2))
    assert sympy_rank(res.r) == 2 == sum(rep.image.values())
    assert convolution(L(1, 3), L(2, 2)).dim == 4 == sum(rep.kernel.values())


def test_composition_case_iv_simple():
    rep = composition_report(S(3, 4), S(0, 1))
    assert rep.case == "iv" and rep.ok
    assert rep.kernel == {} and rep.cokernel == {}


def test_composition_case_vi_shifts():
    rep = composition_report(S(1), S(0))
    assert rep.case == "vi" and rep.ok, rep.failures
    assert rep.kernel == {1: 1}
    assert rep.cokernel == {-1: 1}
    assert rep.head == "[(1,1),(0,0)]"


@pytest.mark.parametrize(
    "s1, s2, case",
    [
        ((1, 2), (1, 2), "i"),
        ((0, 3), (1, 2), "iii"),
        ((4, 5), (0, 1), "iv"),
        ((2, 4), (1, 3), "v"),
        ((2, 3), (0, 1), "vi"),
        ((1, 2), (1, 4), "iii*"),
        ((0, 1), (3, 4), "iv*"),
        ((1, 3), (2, 4), "v*"),
        ((0, 1), (2, 3), "vi*"),
        ((2, 3), (1, 4), "nested*"),
    ],
)
def test_classify_and_report(s1, s2, case):
    a, b = S(*s1), S(*s2)
    assert classify_pair(a, b) == case
    rep = composition_report(a, b)
    assert rep.ok, rep.failures
    assert rep.degree == expected_degree(a, b)


def test_composition_report_to_dict():
    d = composition_report(S(1), S(0)).to_dict()
    assert d["case"] == "vi" and d["ok"] and d["kernel"] == {"1": 1}


def test_composition_size_cap():
    with pytest.raises(SizeCapError):
        composition_report(S(0, 3), S(1, 4))


# ---------------------------------------------------------------------------
# Yang-Baxter and word choice
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("segs", [((1,), (2,), (3,)), ((1,), (1,), (2,)), ((0, 1), (1,), (0,))])
def test_yang_baxter_examples(segs):
    rep = yang_baxter_check(*(S(*s) for s in segs))
    assert rep.ok


def test_yang_baxter_unlinked_all_iso():
    rep = yang_baxter_check(S(1), S(3), S(5))
    assert rep.ok and rep.all_isomorphisms


@pytest.mark.parametrize("segs", [(S(1), S(2), S(3)), (S(1), S(1), S(2))])
def test_yang_baxter_negative_control(segs):
    left, right, r = hexagon_composites(*segs)
    assert left.equals(right)
    r12 = r[(1, 2)]
    cols = [dict(c) for c in r12.r.cols]
    g = generator(r12.r.src)
    k = next(i for i in range(r12.r.dst.dim) if i not in cols[g])
    cols[g][k] = 1
    bad = dict(r)
    bad[(1, 2)] = replace(r12, r=LinearMap(r12.r.src, r12.r.dst, cols))
    l2, r2, _ = hexagon_composites(*segs, rmaps=bad)
    assert not l2.equals(r2)


@pytest.mark.parametrize("s1, s2", [((0,), (0,)), ((0, 1), (1,)), ((1, 2), (0, 1)), ((0, 2), (1, 2)), ((0, 1), (0, 2))])
def test_word_choice_independence(s1, s2):
    assert word_choice_check(S(*s1), S(*s2))


def test_max_policy_produces_different_basis_words():
    amax = KLRAlgebra(policy="max")
    w0 = P.word_to_perm((1, 2, 1), 3)
    assert amax.word(w0) == (2, 1, 2)

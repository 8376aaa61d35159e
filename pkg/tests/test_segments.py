import pytest
from hypothesis import given, strategies as st

from swduality.segments import (
    Multisegment,
    RootVec,
    Segment,
    b_form,
    compare_segments,
    inner_form,
    sym_form,
)

segments = st.builds(lambda a, l: Segment(a, a + l - 1), st.integers(-6, 6), st.integers(0, 5))
root_vecs = st.dictionaries(st.integers(-5, 5), st.integers(-3, 3), max_size=4).map(RootVec.from_alpha)
eps_vecs = st.dictionaries(st.integers(-5, 5), st.integers(-3, 3), max_size=4).map(RootVec)


# ---------------------------------------------------------------------------
# segments and their order
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "s1, s2, expected",
    [((2, 3), (1, 5), 1), ((1, 3), (1, 5), -1), ((1, 3), (1, 3), 0)],
)
def test_compare_segments_examples(s1, s2, expected):
    assert compare_segments(Segment(*s1), Segment(*s2)) == expected


@given(segments, segments, segments)
def test_compare_segments_total_order(s1, s2, s3):
    c = compare_segments
    assert c(s1, s2) == -c(s2, s1)
    assert (c(s1, s2) == 0) == (s1 == s2)
    if c(s1, s2) <= 0 and c(s2, s3) <= 0:
        assert c(s1, s3) <= 0


def test_segment_basic_invariants():
    assert Segment(3, 2).is_unit() and Segment(3, 2).length == 0
    assert Segment(1, 3).residues() == (1, 2, 3)
    with pytest.raises(ValueError):
        Segment(3, 1)


def test_segment_parse():
    assert Segment.parse("(1,3)") == Segment(1, 3)
    assert Segment.parse("-2,0") == Segment(-2, 0)
    with pytest.raises(ValueError):
        Segment.parse("1;3")


# ---------------------------------------------------------------------------
# multisegments
# ---------------------------------------------------------------------------


def test_multisegment_sorted_descending_and_units_dropped():
    m = Multisegment.of((0, 0), (1, 1), (1, 3), (4, 3))
    assert [str(s) for s in m] == ["(1,3)", "(1,1)", "(0,0)"]


def test_multisegment_raw_keeps_order():
    raw = Multisegment.raw([Segment(0, 0), Segment(1, 1)])
    assert not raw.is_normalized()
    assert raw.normalize() == Multisegment.of((1, 1), (0, 0))


@given(st.lists(segments, max_size=5), st.randoms())
def test_multisegment_normalization_stable(segs, rnd):
    m = Multisegment.raw(segs).normalize()
    shuffled = list(segs)
    rnd.shuffle(shuffled)
    assert Multisegment.raw(shuffled).normalize() == m
    assert m.normalize() == m
    assert all(compare_segments(x, y) >= 0 for x, y in zip(m.segments, m.segments[1:]))


def test_multisegment_text_round_trip():
    m = Multisegment.of((0, 1), (3, 3))
    assert str(m) == "[(3,3),(0,1)]"
    assert Multisegment.parse(str(m)) == m
    assert Multisegment.parse("[]") == Multisegment()


# ---------------------------------------------------------------------------
# root lattice forms
# ---------------------------------------------------------------------------


def test_form_examples():
    a1, a2 = RootVec.alpha(1), RootVec.alpha(2)
    assert sym_form(a1, a2) == -1
    assert inner_form(a1, a2) == 0
    beta = Segment(1, 2).weight()
    assert sym_form(beta, beta) == 2
    assert sym_form(a1, a1) == 2 and inner_form(a1, a1) == 1


def test_b_form_examples():
    for N in (3, 4, 7):
        assert b_form(RootVec.alpha(1), RootVec.alpha(1 + N), N) == -2
        assert b_form(RootVec.alpha(1), RootVec.alpha(2), N) == 0
        assert b_form(RootVec.eps(0), RootVec.eps(N), N) == -1


@given(root_vecs)
def test_alpha_eps_conversion_inverse(x):
    assert sum(x.eps_coords.values()) == 0
    assert RootVec.from_alpha(x.to_alpha()) == x


def test_segment_weight_matches_residues():
    for s in (Segment(1, 3), Segment(-2, -2), Segment(0, 4)):
        assert s.weight() == RootVec.from_residues(s.residues())


@given(root_vecs, root_vecs, root_vecs)
def test_forms_bilinear_symmetric(x, y, z):
    for form in (sym_form, inner_form):
        assert form(x, y) == form(y, x)
        assert form(x + y, z) == form(x, z) + form(y, z)


@given(eps_vecs, eps_vecs, st.integers(1, 6), st.integers(-3, 3))
def test_b_form_shift_invariant(x, y, N, k):
    assert b_form(x.shift(k * N), y.shift(k * N), N) == b_form(x, y, N)


@given(eps_vecs, eps_vecs, eps_vecs, st.integers(1, 6))
def test_b_form_bilinear(x, y, z, N):
    assert b_form(x + y, z, N) == b_form(x, z, N) + b_form(y, z, N)
    assert b_form(x, y + z, N) == b_form(x, y, N) + b_form(x, z, N)

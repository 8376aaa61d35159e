import numpy as np
import pytest

from swduality.arith import SpectralParam
from swduality.denominators import AlgebraTag
from swduality.quiver import (
    VertexClass,
    arrow_multiplicity,
    build_s0_window,
    canonical_vertex,
    check_pi2_isomorphism,
    from_json,
    pi2,
    seed_family,
    to_csv,
    to_dot,
    to_json,
)
from swduality.arith import BivarRatFunc


def sp(sign, p):
    return SpectralParam(sign, p)


def vertex(fam, N, i, sign, p):
    return canonical_vertex(AlgebraTag(fam, N), i, sp(sign, p))


# ---------------------------------------------------------------------------
# pi2
# ---------------------------------------------------------------------------


def test_pi2_examples():
    assert pi2(4, 3, sp(1, 5)) == vertex("A2", 4, 1, -1, 5)
    x = sp(-1, 2)
    assert pi2(5, 3, x) == vertex("A2", 5, 2, -1, 2)
    assert pi2(4, 1, x) == vertex("A2", 4, 1, -1, 2)


def test_pi2_middle_node_identification():
    # for N = 2n the middle node forgets the sign
    assert pi2(6, 3, sp(-1, 1)) == pi2(6, 3, sp(1, 1))
    assert pi2(6, 3, sp(-1, 1)).param == sp(1, 1)


def test_pi2_index_error():
    with pytest.raises(IndexError):
        pi2(4, 4, sp(1, 0))


# ---------------------------------------------------------------------------
# windows
# ---------------------------------------------------------------------------


def test_s0_window_vertices_a1_n3():
    w = build_s0_window(AlgebraTag("A1", 3), 0, 3)
    labels = {(v.node, v.param) for v in w.vertices}
    assert labels == {(1, sp(1, 0)), (1, sp(1, 2)), (2, sp(1, 1)), (2, sp(1, 3))}


def test_s0_window_arrows_a1_n3():
    w = build_s0_window(AlgebraTag("A1", 3), 0, 4)
    u, v, far = (vertex("A1", 3, 1, 1, p) for p in (0, 2, 4))
    assert w.multiplicity(u, v) == 1
    assert w.multiplicity(u, far) == 0


def test_s0_window_a2_even_has_both_signs_except_middle():
    w = build_s0_window(AlgebraTag("A2", 4), 0, 3)
    nodes1 = [v.param for v in w.vertices if v.node == 1]
    nodes2 = [v.param for v in w.vertices if v.node == 2]
    assert sorted(nodes1) == sorted([sp(1, 0), sp(-1, 0), sp(1, 2), sp(-1, 2)])
    assert sorted(nodes2) == [sp(1, 1), sp(1, 3)]


def test_empty_window_rejected():
    with pytest.raises(ValueError):
        build_s0_window(AlgebraTag("A1", 3), 2, 1)


@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_pi2_isomorphism(N):
    rep = check_pi2_isomorphism(N, -6, 6)
    assert rep.ok, rep.failures
    assert rep.n_vertices > 0 and rep.n_arrows > 0


def test_pi2_isomorphism_singleton_window():
    rep = check_pi2_isomorphism(3, 1, 1)
    assert rep.ok and rep.n_vertices == 1


@pytest.mark.parametrize("N", [4, 5, 6])
def test_pi2_injective_with_parity_split(N):
    # for odd N the two branches land on disjoint parity classes of p
    w = build_s0_window(AlgebraTag("A1", N), -6, 6)
    images = [pi2(N, v.node, v.param) for v in w.vertices]
    assert len(set(images)) == len(images)
    if N % 2:
        low = {im.param.exp % 2 for v, im in zip(w.vertices, images) if v.node <= N // 2 and im.node == N // 2}
        high = {im.param.exp % 2 for v, im in zip(w.vertices, images) if v.node > N // 2 and im.node == N // 2}
        assert not (low & high)


@pytest.mark.parametrize("fam, N", [("A1", 4), ("A2", 5), ("A2", 6)])
def test_translation_invariance(fam, N):
    w = build_s0_window(AlgebraTag(fam, N), -4, 4)
    for u in w.vertices:
        for v in w.vertices:
            shift = sp(1, 2)
            us = canonical_vertex(u.tag, u.node, u.param * shift)
            vs = canonical_vertex(v.tag, v.node, v.param * shift)
            assert arrow_multiplicity(us, vs) == w.multiplicity(u, v)


# ---------------------------------------------------------------------------
# seed family
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_seed_family(N):
    J = list(range(-3, 4))
    g = seed_family(J, N)
    for i in J:
        for j in J:
            assert g.d[(i, j)] == (1 if j == i + 1 else 0)
    n = len(J)
    expected = 2 * np.eye(n, dtype=int) - np.eye(n, k=1, dtype=int) - np.eye(n, k=-1, dtype=int)
    assert (g.cartan == expected).all()
    u, v = BivarRatFunc.u(), BivarRatFunc.v()
    for i in J[:-1]:
        assert g.Q[(i, i + 1)] == u - v
        assert g.Q[(i + 1, i)] == v - u


def test_cartan_symmetric_nonpositive():
    g = seed_family(range(-6, 7), 5)
    A = g.cartan
    assert (A == A.T).all()
    assert (A[~np.eye(len(A), dtype=bool)] <= 0).all()


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_json_round_trip():
    w = build_s0_window(AlgebraTag("A2", 4), -3, 3)
    back = from_json(to_json(w))
    assert back.vertices == w.vertices
    assert back.arrows == w.arrows
    assert to_json(back) == to_json(w)


def test_dot_parallel_edges_and_labels():
    w = build_s0_window(AlgebraTag("A1", 3), 0, 3)
    dot = to_dot(w)
    assert dot.startswith("digraph")
    for v in w.vertices:
        assert f'label="{v.label()}"' in dot
    assert dot.count("->") == w.n_arrows()
    assert to_dot(w) == dot


def test_csv_rows():
    w = build_s0_window(AlgebraTag("A1", 4), -2, 2)
    rows = to_csv(w).splitlines()
    assert rows[0] == "source,target,multiplicity"
    assert len(rows) - 1 == len(w.arrows)


def test_vertex_label_format():
    assert vertex("A2", 5, 2, -1, 3).label() == "2:-(-q)^3"
    assert isinstance(vertex("A1", 3, 1, 1, 0), VertexClass)

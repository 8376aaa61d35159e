from math import comb

import pytest

from swduality.klr import check_relations, convolution, deform, graded_dim, segment_module
from swduality.klr.modules import SizeCapError, expected_convolution_dim
from swduality.klr.rmatrix import _spectral_ring


def L(a, b=None):
    return segment_module(a, a if b is None else b)


def test_segment_module_examples():
    M = L(1, 3)
    assert M.dim == 1 and M.labels == [(1, 2, 3)] and M.degrees == [0]
    U = L(4, 3)
    assert U.n == 0 and U.dim == 1 and U.labels == [()]
    assert L(2).labels == [(2,)]


def test_segment_module_relations():
    for a, b in [(1, 3), (0, 0), (2, 5), (3, 2)]:
        assert check_relations(L(a, b)) == []


def test_convolution_dimensions():
    assert convolution(L(1, 2), L(3)).dim == 3
    assert convolution(L(2, 3), L(1, 2)).dim == 6


def test_convolution_idempotent_decomposition():
    M = convolution(L(1), L(2))
    assert sorted(M.labels) == [(1, 2), (2, 1)]
    # tau_1 e(1,2) has degree -(alpha_1, alpha_2) = 1
    assert graded_dim(M) == {0: 1, 1: 1}


def test_convolution_with_unit():
    M = convolution(L(1, 2), L(5, 4))
    assert M.dim == 1 and M.labels == [(1, 2)]


@pytest.mark.parametrize(
    "segs",
    [
        [(0, 0), (0, 0)],
        [(0, 1), (1, 2)],
        [(2, 3), (1, 2)],
        [(0, 0), (1, 1), (2, 2)],
        [(1, 1), (1, 1), (2, 2)],
        [(0, 2), (1, 1), (0, 0)],
        [(0, 1), (0, 1), (1, 1)],
        [(1, 3), (0, 2)],
    ],
)
def test_convolution_relations_and_dimension(segs):
    mods = [L(a, b) for a, b in segs]
    M = convolution(*mods)
    sizes = [b - a + 1 for a, b in segs]
    expected = 1
    rest = sum(sizes)
    for s in sizes:
        expected *= comb(rest, s)
        rest -= s
    assert M.dim == expected == expected_convolution_dim(*mods)
    assert check_relations(M) == []


def test_iterated_convolution_matches_flat():
    flat = convolution(L(0), L(1), L(0))
    nested = convolution(convolution(L(0), L(1)), L(0))
    assert flat.dim == nested.dim
    assert graded_dim(flat) == graded_dim(nested)
    assert check_relations(nested) == []


def test_deformed_modules_satisfy_relations():
    R, z, t = _spectral_ring()
    Mz = deform(L(0, 1), z)
    Nz = deform(L(1, 2), z + t)
    assert check_relations(Mz, check_degrees=False) == []
    assert check_relations(convolution(Mz, Nz), check_degrees=False) == []
    assert check_relations(convolution(Nz, Mz), check_degrees=False) == []


def test_deform_at_zero_recovers_module():
    M = L(1, 2)
    assert deform(M, 0).xs == M.xs


def test_check_relations_detects_corruption():
    # residues 0 and 2 are unlinked, so tau_1^2 e(0,2) = e(0,2)
    M = convolution(L(0), L(2))
    j = next(i for i, lab in enumerate(M.labels) if lab == (0, 2))
    M.taus[0][j] = {}
    assert check_relations(M)


def test_size_cap():
    with pytest.raises(SizeCapError):
        convolution(L(0, 4), L(1, 4))
    assert convolution(L(0, 1), L(2), cap=3).dim == 3

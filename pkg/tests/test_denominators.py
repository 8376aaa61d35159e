import sympy
import pytest

from swduality.arith import PolyZ, RatFuncZ, SpectralParam, zero_order
from swduality.denominators import AlgebraTag, denom, denom_zeros, format_factored, pole_order

q, z = sympy.symbols("q z")


def oracle(family, N, k, l):
    """Independent expansion of the closed-form products with plain sympy."""
    expr = sympy.Integer(1)
    if family == "A1":
        for s in range(1, min(k, l, N - k, N - l) + 1):
            expr *= z - (-q) ** (abs(k - l) + 2 * s)
    else:
        for s in range(1, min(k, l) + 1):
            expr *= (z - (-q) ** (abs(k - l) + 2 * s)) * (z + q**N * (-q) ** (-k - l + 2 * s))
    return sympy.expand(expr)


def as_sympy(p: PolyZ):
    return sympy.expand(
        sum(
            sympy.Rational(c.numerator, c.denominator) * q**e * z**i
            for i, coeff in enumerate(p.coeffs)
            for e, c in coeff.items()
        )
    )


def all_tags(nmax=10):
    for N in range(3, nmax + 1):
        for fam in ("A1", "A2"):
            tag = AlgebraTag(fam, N)
            for k in tag.nodes:
                for l in tag.nodes:
                    yield tag, k, l


def test_denom_examples():
    assert format_factored(AlgebraTag("A1", 4), 1, 1) == "(z-q^2)"
    assert format_factored(AlgebraTag("A2", 3), 1, 1) == "(z-q^2)(z+q^3)"
    assert format_factored(AlgebraTag("A2", 5), 2, 2) == "(z-q^2)(z+q^3)(z-q^4)(z+q^5)"


@pytest.mark.parametrize("fam, N, k, l", [("A1", 4, 1, 1), ("A2", 3, 1, 1), ("A2", 5, 2, 2), ("A1", 7, 2, 5)])
def test_denom_matches_sympy_expansion(fam, N, k, l):
    assert as_sympy(denom(AlgebraTag(fam, N), k, l)) == oracle(fam, N, k, l)


def test_denom_matches_oracle_exhaustive():
    for tag, k, l in all_tags(7):
        assert as_sympy(denom(tag, k, l)) == oracle(tag.family, tag.N, k, l), (tag, k, l)


def test_degree_law():
    for tag, k, l in all_tags(10):
        N = tag.N
        expected = min(k, l, N - k, N - l) if tag.family == "A1" else 2 * min(k, l)
        assert denom(tag, k, l).degree() == expected


def test_zero_set_symmetric():
    for tag, k, l in all_tags(10):
        assert sorted(denom_zeros(tag, k, l)) == sorted(denom_zeros(tag, l, k))


def test_zeros_are_canonical_and_vanish():
    for tag, k, l in all_tags(6):
        f = RatFuncZ(denom(tag, k, l))
        for x in denom_zeros(tag, k, l):
            assert isinstance(x, SpectralParam)
            assert f.evaluate(x).is_zero()
            assert zero_order(f, x) == pole_order(tag, k, l, x)


def test_pole_order_examples():
    assert pole_order(AlgebraTag("A2", 4), 1, 1, SpectralParam(1, 2)) == 1
    assert pole_order(AlgebraTag("A2", 4), 1, 1, SpectralParam(-1, 4)) == 1
    assert pole_order(AlgebraTag("A1", 4), 1, 1, SpectralParam(1, 4)) == 0


def test_pole_orders_at_most_one():
    for tag, k, l in all_tags(10):
        zs = denom_zeros(tag, k, l)
        assert len(set(zs)) == len(zs)


def test_index_out_of_range():
    with pytest.raises(IndexError, match="out of range"):
        denom(AlgebraTag("A2", 5), 3, 1)
    with pytest.raises(IndexError):
        denom(AlgebraTag("A1", 4), 0, 1)
    with pytest.raises(ValueError):
        AlgebraTag("A2", 2)

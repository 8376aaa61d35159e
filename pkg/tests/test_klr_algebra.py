from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from swduality.klr import KLRAlgebra, a_infinity
from swduality.klr import perms as P
from swduality.klr.polyrep import PolyRep, cross_check, relation_instances

ALG = KLRAlgebra()


# ---------------------------------------------------------------------------
# permutations and reduced words
# ---------------------------------------------------------------------------


def test_canonical_word_examples():
    assert P.canonical_word(P.identity(3)) == ()
    w0 = P.word_to_perm((1, 2, 1), 3)
    assert w0 == P.word_to_perm((2, 1, 2), 3)
    assert P.canonical_word(w0) == (1, 2, 1)
    assert len(P.canonical_word(w0)) == 3 == P.length(w0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_canonical_word_is_lex_min_reduced(n):
    for w in permutations(range(n)):
        words = P.all_reduced_words(w)
        assert P.canonical_word(w, "min") == min(words)
        assert P.canonical_word(w, "max") in words
        assert all(P.is_reduced(x, n) and P.word_to_perm(x, n) == w for x in words)


def test_length_counts_inversions():
    for w in permutations(range(5)):
        inv = sum(1 for i in range(5) for j in range(i + 1, 5) if w[i] > w[j])
        assert P.length(w) == inv


@pytest.mark.parametrize("blocks", [(1, 1), (2, 1), (2, 2), (1, 2, 1), (3, 2)])
def test_min_coset_reps(blocks):
    n = sum(blocks)
    reps = P.min_coset_reps(blocks)
    count = factorial(n)
    for b in blocks:
        count //= factorial(b)
    assert len(reps) == len(set(reps)) == count
    # oracle: minimal representatives are increasing on every block
    starts = [sum(blocks[:i]) for i in range(len(blocks))]
    brute = {
        w
        for w in permutations(range(n))
        if all(list(w[s : s + b]) == sorted(w[s : s + b]) for s, b in zip(starts, blocks))
    }
    assert set(reps) == brute


def test_place_action():
    nu = (1, 2, 3)
    assert P.act(P.simple(3, 1), nu) == (2, 1, 3)
    w = P.word_to_perm((1, 2), 3)
    assert P.act(w, nu) == P.act(P.simple(3, 1), P.act(P.simple(3, 2), nu))


# ---------------------------------------------------------------------------
# Cartan datum and grading
# ---------------------------------------------------------------------------


def test_a_infinity_datum():
    assert a_infinity(1, 2) == ({(1, 0): 1, (0, 1): -1}, -1)
    assert a_infinity(2, 1) == ({(1, 0): -1, (0, 1): 1}, -1)
    assert a_infinity(1, 3) == ({(0, 0): 1}, 0)
    assert a_infinity(4, 4) == ({}, 2)


def test_generator_degrees():
    assert ALG.degree(next(iter(ALG.x(1, (0, 1))))) == 2
    assert ALG.degree(next(iter(ALG.tau(1, (0, 1))))) == 1
    assert ALG.degree(next(iter(ALG.tau(1, (0, 0))))) == -2
    assert ALG.degree(next(iter(ALG.tau(1, (0, 2))))) == 0


def test_tau_squared():
    # tau_1^2 e(0,1) = (x_1 - x_2) e(0,1)
    sq = ALG.nf_word((1, 1), (0, 1))
    e = P.identity(2)
    assert sq == {(e, (1, 0), (0, 1)): 1, (e, (0, 1), (0, 1)): -1}
    assert ALG.nf_word((1, 1), (0, 0)) == {}
    assert ALG.nf_word((1, 1), (0, 5)) == ALG.idempotent((0, 5))


def test_braid_defect():
    # (tau_2 tau_1 tau_2 - tau_1 tau_2 tau_1) e(0,1,0) = correction
    nu = (0, 1, 0)
    lhs = ALG.add(ALG.nf_word((2, 1, 2), nu), ALG.nf_word((1, 2, 1), nu), scales=[1, -1])
    corr = ALG.braid_correction(nu, 1)
    e = P.identity(3)
    assert corr
    assert lhs == {(e, a, nu): c for a, c in corr.items()}


# ---------------------------------------------------------------------------
# rewriting: confluence, homogeneity, agreement with the polynomial representation
# ---------------------------------------------------------------------------

residues = st.integers(0, 2)


@st.composite
def elements(draw, nu):
    """Random element with right idempotent e(nu)."""
    n = len(nu)
    out = {}
    for _ in range(draw(st.integers(1, 3))):
        w = draw(st.permutations(list(range(n))))
        a = tuple(draw(st.lists(st.integers(0, 2), min_size=n, max_size=n)))
        c = draw(st.integers(-3, 3).filter(bool))
        out = ALG.add(out, ALG.basis_term(tuple(w), nu, a), scales=[1, c])
    return out


@st.composite
def triples(draw):
    n = draw(st.integers(2, 4))
    nu3 = tuple(draw(st.lists(residues, min_size=n, max_size=n)))
    C = draw(elements(nu3))
    nu2 = tuple(draw(st.permutations(list(nu3))))
    B = draw(elements(nu2))
    nu1 = tuple(draw(st.permutations(list(nu3))))
    A = draw(elements(nu1))
    return A, B, C


@settings(max_examples=150, deadline=None)
@given(triples())
def test_multiplication_associative(abc):
    A, B, C = abc
    assert ALG.mul(ALG.mul(A, B), C) == ALG.mul(A, ALG.mul(B, C))


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.lists(residues, min_size=n, max_size=n),
    st.lists(st.integers(1, n - 1), max_size=6),
)))
def test_normal_form_is_homogeneous(data):
    nu, word = data
    nf = ALG.nf_word(word, nu)
    deg = ALG.word_degree(word, nu)
    assert all(ALG.degree(k) == deg for k in nf)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.lists(residues, min_size=n, max_size=n),
    st.lists(st.tuples(st.sampled_from("tx"), st.integers(1, n)), max_size=6),
)))
def test_normal_form_acts_like_its_word(data):
    nu, ops = data
    n = len(nu)
    ops = [(kind, min(k, n - 1) if kind == "t" else k) for kind, k in ops]
    rep = PolyRep(n)
    f = rep.x[0] ** 2 - 3 * rep.x[-1] + rep.x[0] * rep.x[n // 2]
    elem = ALG.idempotent(nu)
    vec = {tuple(nu): f}
    for kind, k in reversed(ops):
        elem = ALG.left_mul_tau(k, elem) if kind == "t" else ALG.left_mul_x(k, elem)
        vec = rep.tau(k, vec) if kind == "t" else rep.xmul(k, vec)
    vec = {mu: g for mu, g in vec.items() if g}
    assert rep.act_elem(ALG, elem, {tuple(nu): f}) == vec


def all_nus(max_len=4, res=(0, 1, 2)):
    for n in range(1, max_len + 1):
        yield from product(res, repeat=n)


def test_polynomial_representation_cross_check():
    nus = list(all_nus(4))
    assert cross_check(ALG, nus) == []


def test_polynomial_representation_cross_check_max_policy():
    alg = KLRAlgebra(policy="max")
    nus = [nu for nu in all_nus(4) if len(nu) >= 3]
    assert cross_check(alg, nus) == []


def test_relation_list_complete():
    names = {name for name, _ in relation_instances(ALG, (0, 1, 0))}
    assert {"x1x2", "t1x3", "t1x2", "x2t1", "t1^2", "braid1"} <= names


def test_cross_check_detects_wrong_relations():
    # a broken datum (Q_{i,i+1} = u + v) must be caught by the polynomial representation
    def broken(i, j):
        q, p = a_infinity(i, j)
        if j == i + 1:
            q = {(1, 0): 1, (0, 1): 1}
        return q, p

    failures = cross_check(KLRAlgebra(datum=broken), [(0, 1), (0, 1, 2)])
    assert failures


def test_unknown_policy_rejected():
    with pytest.raises(ValueError):
        KLRAlgebra(policy="random")

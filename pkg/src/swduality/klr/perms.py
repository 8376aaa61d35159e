"""Permutations of {0, ..., n-1} as tuples of images.

Simple reflections are numbered 1..n-1 as in the KLR presentation: s_k swaps
positions k-1 and k (0-based).  Composition is of functions, (u*v)(i) =
u(v(i)), and the place action on sequences is (w.nu)[w(i)] = nu[i], so that
tau_w e(nu) = e(w.nu) tau_w.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import List, Sequence, Tuple

Perm = Tuple[int, ...]

__all__ = [
    "Perm",
    "identity",
    "simple",
    "compose",
    "inverse",
    "length",
    "left_descents",
    "right_descents",
    "act",
    "word_to_perm",
    "canonical_word",
    "is_reduced",
    "min_coset_reps",
    "block_swap",
    "all_reduced_words",
]


def identity(n: int) -> Perm:
    return tuple(range(n))


def simple(n: int, k: int) -> Perm:
    if not 1 <= k <= n - 1:
        raise ValueError(f"s_{k} not in S_{n}")
    w = list(range(n))
    w[k - 1], w[k] = w[k], w[k - 1]
    return tuple(w)


def compose(u: Perm, v: Perm) -> Perm:
    return tuple(u[i] for i in v)


def inverse(w: Perm) -> Perm:
    out = [0] * len(w)
    for i, wi in enumerate(w):
        out[wi] = i
    return tuple(out)


def length(w: Perm) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def left_mul_simple(k: int, w: Perm) -> Perm:
    """s_k * w: swap the values k-1 and k."""
    return tuple(k if x == k - 1 else (k - 1 if x == k else x) for x in w)


def right_mul_simple(w: Perm, k: int) -> Perm:
    """w * s_k: swap the entries at positions k-1 and k."""
    w = list(w)
    w[k - 1], w[k] = w[k], w[k - 1]
    return tuple(w)


def left_descents(w: Perm) -> List[int]:
    """k with l(s_k w) < l(w), i.e. value k-1 sits to the right of value k."""
    inv = inverse(w)
    return [k for k in range(1, len(w)) if inv[k - 1] > inv[k]]


def right_descents(w: Perm) -> List[int]:
    return [k for k in range(1, len(w)) if w[k - 1] > w[k]]


def act(w: Perm, nu: Sequence[int]) -> Tuple[int, ...]:
    """Place action: (w.nu)[w(i)] = nu[i]."""
    out = [None] * len(nu)
    for i, x in enumerate(nu):
        out[w[i]] = x
    return tuple(out)


def word_to_perm(word: Sequence[int], n: int) -> Perm:
    """s_{i1} s_{i2} ... s_{ir} as a permutation."""
    w = identity(n)
    for k in reversed(word):
        w = left_mul_simple(k, w)
    return w


def is_reduced(word: Sequence[int], n: int) -> bool:
    return length(word_to_perm(word, n)) == len(word)


@lru_cache(maxsize=None)
def canonical_word(w: Perm, policy: str = "min") -> Tuple[int, ...]:
    """Reduced word chosen greedily by left descents.

    policy 'min' takes the smallest left descent first, which yields the
    lexicographically minimal reduced word; 'max' takes the largest.  Both
    satisfy word(w) = (d,) + word(s_d w) for the chosen descent d.
    """
    if policy not in ("min", "max"):
        raise ValueError(f"unknown word policy {policy!r}")
    out = []
    while True:
        ds = left_descents(w)
        if not ds:
            return tuple(out)
        d = ds[0] if policy == "min" else ds[-1]
        out.append(d)
        w = left_mul_simple(d, w)


def all_reduced_words(w: Perm) -> List[Tuple[int, ...]]:
    ds = left_descents(w)
    if not ds:
        return [()]
    out = []
    for d in ds:
        for rest in all_reduced_words(left_mul_simple(d, w)):
            out.append((d,) + rest)
    return out


@lru_cache(maxsize=None)
def min_coset_reps(blocks: Tuple[int, ...]) -> Tuple[Perm, ...]:
    """Minimal-length representatives of S_n / (S_{b1} x ... x S_{bt}).

    These are the permutations increasing on each block of consecutive
    positions; each is determined by the sets of values taken on the blocks.
    Ordered by length, then lexicographically.
    """
    n = sum(blocks)
    reps: List[Perm] = []

    def rec(i, remaining, images):
        if i == len(blocks):
            w = [0] * n
            pos = 0
            for blk in images:
                for v in blk:
                    w[pos] = v
                    pos += 1
            reps.append(tuple(w))
            return
        for chosen in combinations(sorted(remaining), blocks[i]):
            rec(i + 1, remaining - set(chosen), images + [chosen])

    rec(0, set(range(n)), [])
    reps.sort(key=lambda w: (length(w), w))
    return tuple(reps)


def block_swap(first: int, second: int) -> Perm:
    """Move a leading block of size ``first`` past a block of size ``second``.

    Positions 0..first-1 go to second..second+first-1 and the rest go to the
    front, so act(block_swap(n, m), nu_N + nu_M) == nu_M + nu_N.
    """
    return tuple([second + i for i in range(first)] + [i for i in range(second)])

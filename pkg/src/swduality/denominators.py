"""Denominators of normalized R-matrices between fundamental representations.

For type A(1)_{N-1}:

    d_{k,l}(z) = prod_{s=1}^{min(k,l,N-k,N-l)} (z - (-q)^{|k-l|+2s})

and for type A(2)_{N-1} (1 <= k, l <= floor(N/2)):

    d_{k,l}(z) = prod_{s=1}^{min(k,l)} (z - (-q)^{|k-l|+2s}) (z + q^N (-q)^{-k-l+2s}).

All zeros are of the form +-(-q)^p, so they are stored as SpectralParam values
and pole orders become dictionary lookups.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .arith import PolyZ, SpectralParam, canonicalize_signed_q_power

__all__ = ["AlgebraTag", "denom", "denom_zeros", "pole_order", "format_factored"]


@dataclass(frozen=True)
class AlgebraTag:
    """Which quantum affine algebra: family 'A1' (A(1)_{N-1}) or 'A2' (A(2)_{N-1})."""

    family: str
    N: int

    def __post_init__(self):
        if self.family not in ("A1", "A2"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "A1" and self.N < 2:
            raise ValueError("A1 needs N >= 2")
        if self.family == "A2" and self.N < 3:
            raise ValueError("A2 needs N >= 3")

    @property
    def nodes(self) -> range:
        top = self.N - 1 if self.family == "A1" else self.N // 2
        return range(1, top + 1)

    def check_node(self, k: int):
        if k not in self.nodes:
            raise IndexError(
                f"index {k} out of range {self.nodes.start}..{self.nodes.stop - 1} for {self}"
            )

    def __str__(self):
        return f"{self.family}(N={self.N})"


@lru_cache(maxsize=None)
def denom_zeros(tag: AlgebraTag, k: int, l: int) -> Tuple[SpectralParam, ...]:
    """Zeros of d_{k,l}, listed in the order of the defining product."""
    tag.check_node(k)
    tag.check_node(l)
    N = tag.N
    out = []
    if tag.family == "A1":
        for s in range(1, min(k, l, N - k, N - l) + 1):
            out.append(SpectralParam(1, abs(k - l) + 2 * s))
    else:
        for s in range(1, min(k, l) + 1):
            out.append(SpectralParam(1, abs(k - l) + 2 * s))
            # z + q^N (-q)^m  vanishes at  -q^N (-q)^m = (-1)^{N+1} (-q)^{N+m}
            m = -k - l + 2 * s
            out.append(canonicalize_signed_q_power(-1, N) * SpectralParam(1, m))
    return tuple(out)


def denom(tag: AlgebraTag, k: int, l: int) -> PolyZ:
    """The monic denominator polynomial d_{k,l}(z)."""
    out = PolyZ.const(1)
    for x in denom_zeros(tag, k, l):
        out = out * PolyZ.linear_factor(x)
    return out


@lru_cache(maxsize=None)
def _zero_counts(tag: AlgebraTag, k: int, l: int) -> Counter:
    return Counter(denom_zeros(tag, k, l))


def pole_order(tag: AlgebraTag, k: int, l: int, ratio: SpectralParam) -> int:
    """Order of vanishing of d_{k,l} at z = ratio."""
    return _zero_counts(tag, k, l)[ratio]


def _q_term(x: SpectralParam) -> str:
    """Render the linear factor z - x as '(z-q^m)' / '(z+q^m)'."""
    val = x.to_laurent()
    (m, c), = val.items()
    qm = "1" if m == 0 else ("q" if m == 1 else f"q^{m}")
    return f"(z-{qm})" if c > 0 else f"(z+{qm})"


def format_factored(tag: AlgebraTag, k: int, l: int) -> str:
    """Factored text form such as '(z-q^2)(z+q^3)'; '1' for the empty product."""
    zs = denom_zeros(tag, k, l)
    return "".join(_q_term(x) for x in zs) if zs else "1"

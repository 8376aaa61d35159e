"""Segments, multisegments and the root lattice of type A_infinity.

A segment (a, b) with a <= b stands for the weight eps_a - eps_{b+1}, i.e.
alpha_a + ... + alpha_b.  The empty segment (a, a-1) is kept as a unit
value so that convolution identities with the trivial module can be written
down; it disappears when multisegments are normalized.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

__all__ = [
    "Segment",
    "Multisegment",
    "RootVec",
    "compare_segments",
    "sym_form",
    "inner_form",
    "b_form",
]


@dataclass(frozen=True)
class Segment:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b + 1:
            raise ValueError(f"invalid segment ({self.a},{self.b}): need a <= b+1")

    @property
    def length(self) -> int:
        return self.b - self.a + 1

    def is_unit(self) -> bool:
        return self.length == 0

    def residues(self) -> Tuple[int, ...]:
        """The residue sequence (a, a+1, ..., b) of the one-dimensional module."""
        return tuple(range(self.a, self.b + 1))

    def weight(self) -> "RootVec":
        if self.is_unit():
            return RootVec()
        return RootVec({self.a: 1, self.b + 1: -1})

    def shift(self, k: int) -> "Segment":
        return Segment(self.a + k, self.b + k)

    def _key(self):
        return (self.a, self.b)

    def __lt__(self, other: "Segment") -> bool:
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()

    def __str__(self):
        return f"({self.a},{self.b})"

    @classmethod
    def parse(cls, text: str) -> "Segment":
        m = re.fullmatch(r"\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*", text)
        if not m:
            raise ValueError(f"cannot parse segment {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))


def compare_segments(s1: Segment, s2: Segment) -> int:
    """-1, 0 or 1: s1 > s2 iff a1 > a2, or a1 = a2 and b1 > b2."""
    k1, k2 = (s1.a, s1.b), (s2.a, s2.b)
    return (k1 > k2) - (k1 < k2)


@dataclass(frozen=True)
class Multisegment:
    """A multiset of nonempty segments, stored in descending order."""

    segments: Tuple[Segment, ...] = ()

    def __post_init__(self):
        segs = tuple(s for s in self.segments if not s.is_unit())
        object.__setattr__(self, "segments", tuple(sorted(segs, reverse=True)))

    @classmethod
    def of(cls, *pairs) -> "Multisegment":
        return cls(tuple(p if isinstance(p, Segment) else Segment(*p) for p in pairs))

    @classmethod
    def raw(cls, segments: Iterable[Segment]) -> "Multisegment":
        """Build without sorting or dropping units (test vectors only)."""
        m = object.__new__(cls)
        object.__setattr__(m, "segments", tuple(segments))
        return m

    def normalize(self) -> "Multisegment":
        return Multisegment(self.segments)

    def is_normalized(self) -> bool:
        return self == self.normalize()

    def weight(self) -> "RootVec":
        out = RootVec()
        for s in self.segments:
            out = out + s.weight()
        return out

    def __len__(self):
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def __str__(self):
        return "[" + ",".join(str(s) for s in self.segments) + "]"

    @classmethod
    def parse(cls, text: str) -> "Multisegment":
        pairs = re.findall(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)", text)
        if not pairs and text.strip() not in ("[]", ""):
            raise ValueError(f"cannot parse multisegment {text!r}")
        return cls.of(*((int(a), int(b)) for a, b in pairs))


class RootVec:
    """Finite-support integer vector in the eps-basis of the weight lattice."""

    __slots__ = ("_eps",)

    def __init__(self, eps: Mapping[int, int] = None):
        self._eps: Dict[int, int] = {int(k): int(v) for k, v in (eps or {}).items() if v}

    @classmethod
    def from_alpha(cls, alpha: Mapping[int, int]) -> "RootVec":
        eps: Dict[int, int] = {}
        for i, c in alpha.items():
            eps[i] = eps.get(i, 0) + c
            eps[i + 1] = eps.get(i + 1, 0) - c
        return cls(eps)

    @classmethod
    def alpha(cls, i: int) -> "RootVec":
        return cls({i: 1, i + 1: -1})

    @classmethod
    def eps(cls, a: int) -> "RootVec":
        return cls({a: 1})

    @classmethod
    def from_residues(cls, residues: Iterable[int]) -> "RootVec":
        """Sum of alpha_i over the entries of a residue sequence."""
        out: Dict[int, int] = {}
        for i in residues:
            out[i] = out.get(i, 0) + 1
        return cls.from_alpha(out)

    @property
    def eps_coords(self) -> Dict[int, int]:
        return dict(self._eps)

    def in_root_lattice(self) -> bool:
        return sum(self._eps.values()) == 0

    def to_alpha(self) -> Dict[int, int]:
        """alpha-coordinates; only defined on the root lattice."""
        if not self.in_root_lattice():
            raise ValueError("not in the root lattice")
        out, run = {}, 0
        if not self._eps:
            return out
        for i in range(min(self._eps), max(self._eps)):
            run += self._eps.get(i, 0)
            if run:
                out[i] = run
        return out

    def height(self) -> int:
        return sum(self.to_alpha().values())

    def shift(self, n: int) -> "RootVec":
        """The shift eps_a -> eps_{a+n}."""
        return RootVec({a + n: c for a, c in self._eps.items()})

    def __add__(self, other):
        out = dict(self._eps)
        for a, c in other._eps.items():
            out[a] = out.get(a, 0) + c
        return RootVec(out)

    def __neg__(self):
        return RootVec({a: -c for a, c in self._eps.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return RootVec({a: k * c for a, c in self._eps.items()})

    def __eq__(self, other):
        return isinstance(other, RootVec) and self._eps == other._eps

    def __hash__(self):
        return hash(frozenset(self._eps.items()))

    def __repr__(self):
        return f"RootVec({dict(sorted(self._eps.items()))})"

    def is_zero(self):
        return not self._eps


def sym_form(x: RootVec, y: RootVec) -> int:
    """(x, y) with (eps_a, eps_b) = delta_ab; on roots this is the A_infinity Cartan pairing."""
    ye = y.eps_coords
    return sum(c * ye.get(a, 0) for a, c in x.eps_coords.items())


def inner_form(x: RootVec, y: RootVec) -> int:
    """<x, y> with <alpha_i, alpha_j> = delta_ij."""
    xa, ya = x.to_alpha(), y.to_alpha()
    return sum(c * ya.get(i, 0) for i, c in xa.items())


def b_form(x: RootVec, y: RootVec, N: int) -> int:
    """B(x, y) = -sum_{k>0} (S^k x, y) with S the shift by N.

    Only k with S^k(supp x) meeting supp y contribute, so the sum is finite.
    """
    if N < 1:
        raise ValueError("N must be positive")
    xe, ye = x.eps_coords, y.eps_coords
    if not xe or not ye:
        return 0
    kmax = (max(ye) - min(xe)) // N
    return -sum(sym_form(x.shift(k * N), y) for k in range(1, kmax + 1))

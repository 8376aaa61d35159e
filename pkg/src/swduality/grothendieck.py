"""Class arithmetic in the localized category T_N at q = 1.

Simple classes are ordered multisegments whose segments all have length
1..N-1; a segment of length N is invertible and trivial (absorbed into the
unit), and a segment of length N+1 or more kills the class.  Both functors
F^(1), F^(2) send a segment (a, b) of length l to a fundamental module with
spectral parameter (-q)^{a+b}; on the twisted side the vertex is folded by
pi2.  Dimensions are read off a table of fundamental dimensions indexed by
the target vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .arith import SpectralParam
from .denominators import AlgebraTag, pole_order
from .quiver import VertexClass, pi2
from .segments import Multisegment, Segment

__all__ = [
    "ClassKind",
    "SimpleClassTN",
    "FundImage",
    "UndecidableError",
    "FusionCondition",
    "canonicalize_class",
    "fund_image",
    "dim_fund",
    "dim_table",
    "dim_vertex",
    "decompose_two_segment_product",
    "dim_class",
    "simple_image_status",
    "hom_fusion_check",
    "is_linked",
    "vertices_linked",
    "fusion_pattern_report",
    "fusion_linkedness_sweep",
]


class ClassKind(str, Enum):
    ZERO = "zero"
    UNIT = "unit"
    SIMPLE = "simple"


class UndecidableError(ValueError):
    """The class is outside the family whose dimension is determined at desk scale."""


@dataclass(frozen=True)
class SimpleClassTN:
    """A simple class of T_N at q = 1: Zero, Unit, or a canonical multisegment."""

    N: int
    kind: ClassKind
    ms: Multisegment = Multisegment(())

    @property
    def segments(self) -> Tuple[Segment, ...]:
        return tuple(self.ms)

    def __str__(self):
        if self.kind is ClassKind.ZERO:
            return "Zero"
        if self.kind is ClassKind.UNIT:
            return "Unit"
        return str(self.ms)

    def to_dict(self):
        return {"N": self.N, "kind": self.kind.value, "multisegment": str(self.ms)}


def canonicalize_class(ms: Multisegment | Sequence[Segment], N: int) -> SimpleClassTN:
    """Length > N anywhere gives Zero; length-N segments are dropped; nothing left gives Unit."""
    if N < 2:
        raise ValueError("N must be at least 2")
    segs = [s for s in ms if not s.is_unit()]
    if any(s.length > N for s in segs):
        return SimpleClassTN(N, ClassKind.ZERO)
    kept = [s for s in segs if s.length < N]
    if not kept:
        return SimpleClassTN(N, ClassKind.UNIT)
    return SimpleClassTN(N, ClassKind.SIMPLE, Multisegment(tuple(kept)))


def simple_image_status(ms: Multisegment | Sequence[Segment], N: int) -> ClassKind:
    """F^(2) of the simple module with this multisegment: Zero iff some length exceeds N."""
    return ClassKind.ZERO if any(s.length > N for s in ms) else ClassKind.SIMPLE


# ---------------------------------------------------------------------------
# images of segments and dimensions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FundImage:
    """Image of a segment module: a fundamental vertex, the trivial module, or zero."""

    kind: str  # 'vertex' | 'trivial' | 'zero'
    vertex: Optional[VertexClass] = None

    def __str__(self):
        if self.kind == "vertex":
            return self.vertex.label()
        return self.kind.capitalize()

    def to_dict(self):
        out = {"kind": self.kind}
        if self.vertex is not None:
            out.update(node=self.vertex.node, sign=self.vertex.param.sign, exp=self.vertex.param.exp)
        return out


def fund_image(t: int, seg: Segment, N: int) -> FundImage:
    """(l, (-q)^{a+b}) for t = 1 and its pi2 image for t = 2; Trivial for l in {0, N},
    Zero for l >= N + 1."""
    if t not in (1, 2):
        raise ValueError("functor index must be 1 or 2")
    if t == 2 and N < 3:
        raise ValueError("the twisted side needs N >= 3")
    l = seg.length
    if l == 0 or l == N:
        return FundImage("trivial")
    if l > N:
        return FundImage("zero")
    x = SpectralParam(1, seg.a + seg.b)
    if t == 1:
        return FundImage("vertex", VertexClass(AlgebraTag("A1", N), l, x))
    return FundImage("vertex", pi2(N, l, x))


def dim_fund(l: int, N: int) -> int:
    """Dimension of the l-th fundamental module of the untwisted algebra: C(N, l)."""
    if not 0 <= l <= N:
        raise ValueError(f"l = {l} outside 0..{N}")
    return comb(N, l)


def dim_table(t: int, N: int) -> Dict[int, int]:
    """node -> dimension of the fundamental module at that node on side t.

    Side 1 has nodes 1..N-1; side 2 has nodes 1..floor(N/2).  On side 2 the
    module at node j is the pi2 image of node j (and of N - j), so its
    dimension is C(N, j)."""
    tag = AlgebraTag("A1" if t == 1 else "A2", N)
    return {i: comb(N, i) for i in tag.nodes}


def dim_vertex(v: VertexClass) -> int:
    return dim_table(1 if v.tag.family == "A1" else 2, v.tag.N)[v.node]


def _dim_segment(t: int, seg: Segment, N: int) -> int:
    img = fund_image(t, seg, N)
    if img.kind == "trivial":
        return 1
    if img.kind == "zero":
        return 0
    return dim_vertex(img.vertex)


# ---------------------------------------------------------------------------
# two-segment products
# ---------------------------------------------------------------------------


def _ordered(s1: Segment, s2: Segment) -> Tuple[Segment, Segment]:
    return (s1, s2) if s1 >= s2 else (s2, s1)


def is_linked(s1: Segment, s2: Segment) -> bool:
    """Linked or adjacent: the union is a segment strictly containing both."""
    (a, b), (a2, b2) = ((s.a, s.b) for s in _ordered(s1, s2))
    return a2 < a <= b2 + 1 and b2 < b


def decompose_two_segment_product(s1: Segment, s2: Segment, N: int) -> List[Tuple[SimpleClassTN, int]]:
    """Composition factors of L(s1) o L(s2) in T_N at q = 1 (zero classes omitted)."""
    for s in (s1, s2):
        if s.is_unit() or s.length > N - 1:
            raise ValueError(f"segment {s} must have length 1..{N - 1}")
    hi, lo = _ordered(s1, s2)
    a, b, a2, b2 = hi.a, hi.b, lo.a, lo.b
    head = canonicalize_class([hi, lo], N)
    if not is_linked(hi, lo):
        parts = [head]
    elif a == b2 + 1:
        parts = [head, canonicalize_class([Segment(a2, b)], N)]
    else:
        parts = [head, canonicalize_class([Segment(a2, b), Segment(a, b2)], N)]
    out: Dict[SimpleClassTN, int] = {}
    for c in parts:
        if c.kind is not ClassKind.ZERO:
            out[c] = out.get(c, 0) + 1
    return sorted(out.items(), key=lambda kv: str(kv[0]))


def _convolution_simple(segs: Sequence[Segment]) -> bool:
    return all(not is_linked(x, y) for i, x in enumerate(segs) for y in segs[i + 1:])


def dim_class(t: int, c: SimpleClassTN) -> int:
    """dim F^(t)(c) for Unit, single segments, convolution-simple multisegments and
    heads of linked two-segment products."""
    if c.kind is ClassKind.ZERO:
        return 0
    if c.kind is ClassKind.UNIT:
        return 1
    segs = c.segments
    if _convolution_simple(segs):
        out = 1
        for s in segs:
            out *= _dim_segment(t, s, c.N)
        return out
    if len(segs) == 2:
        hi, lo = segs
        a, b, a2, b2 = hi.a, hi.b, lo.a, lo.b
        full = _dim_segment(t, hi, c.N) * _dim_segment(t, lo, c.N)
        if a == b2 + 1:
            rad = canonicalize_class([Segment(a2, b)], c.N)
        else:
            rad = canonicalize_class([Segment(a2, b), Segment(a, b2)], c.N)
        return full - dim_class(t, rad)
    raise UndecidableError("undecidable at desk scale")


# ---------------------------------------------------------------------------
# fusion conditions and pole linkedness
# ---------------------------------------------------------------------------


class FusionCondition(str, Enum):
    CONDITION_I = "ConditionI"
    CONDITION_II = "ConditionII"
    NONE = "None"


def hom_fusion_check(i: int, x: SpectralParam, j: int, y: SpectralParam, k: int, z: SpectralParam, N: int) -> FusionCondition:
    """Which condition for Hom(V(i)_x (x) V(j)_y, V(k)_z) != 0 holds on the untwisted side.

    (i)  i + j < N, k = i + j,     x/z = (-q)^{-j},     y/z = (-q)^{i};
    (ii) i + j > N, k = i + j - N, x/z = (-q)^{-N+j},   y/z = (-q)^{N-i}.
    """
    for v in (i, j, k):
        if not 1 <= v <= N - 1:
            raise IndexError(f"index {v} out of range 1..{N - 1}")
    xz, yz = x / z, y / z
    if i + j < N and k == i + j and xz == SpectralParam(1, -j) and yz == SpectralParam(1, i):
        return FusionCondition.CONDITION_I
    if i + j > N and k == i + j - N and xz == SpectralParam(1, -N + j) and yz == SpectralParam(1, N - i):
        return FusionCondition.CONDITION_II
    return FusionCondition.NONE


def vertices_linked(u: VertexClass, v: VertexClass) -> int:
    """Total arrow multiplicity between u and v in either direction."""
    return pole_order(u.tag, u.node, v.node, v.param / u.param) + pole_order(
        v.tag, v.node, u.node, u.param / v.param
    )


def fusion_pattern_report(s1: Segment, s2: Segment, N: int) -> Dict[str, object]:
    """Compare the segment-side decomposition with pole data on both sides.

    The product is non-simple in T_N exactly when the two image vertices are
    joined by an arrow; the check is made with the untwisted denominators on
    the images under F^(1) and with the twisted denominators on the images
    under F^(2).  When the non-head factor is a single segment, the fusion
    condition for the corresponding surjection must also hold.
    """
    dec = decompose_two_segment_product(s1, s2, N)
    nontrivial = len(dec) > 1
    hi, lo = _ordered(s1, s2)
    u1, v1 = fund_image(1, lo, N).vertex, fund_image(1, hi, N).vertex
    u2, v2 = fund_image(2, lo, N).vertex, fund_image(2, hi, N).vertex
    link1 = vertices_linked(u1, v1) > 0
    link2 = vertices_linked(u2, v2) > 0
    condition = None
    if nontrivial:
        head = canonicalize_class([hi, lo], N)
        others = [c for c, _ in dec if c != head]
        if len(others) == 1 and len(others[0].segments) == 1:
            (target,) = others[0].segments
            w = fund_image(1, target, N).vertex
            condition = hom_fusion_check(lo.length, u1.param, hi.length, v1.param, w.node, w.param, N).value
    ok = nontrivial == link1 == link2
    if condition is not None and condition == FusionCondition.NONE.value:
        ok = False
    return {
        "segments": [str(s1), str(s2)],
        "N": N,
        "decomposition": [[str(c), m] for c, m in dec],
        "nontrivial": nontrivial,
        "linked_A1": link1,
        "linked_A2": link2,
        "fusion_condition": condition,
        "ok": ok,
    }


def fusion_linkedness_sweep(N: int, emin: int = -6, emax: int = 6) -> Dict[str, object]:
    """Run hom_fusion_check over all (i, j, k) and x, y, z = +-(-q)^e (z positive),
    e in [emin, emax]; every hit must be an arrow-linked pair on both sides of pi2."""
    tag1 = AlgebraTag("A1", N)
    params = [SpectralParam(s, e) for e in range(emin, emax + 1) for s in (1, -1)]
    zs = [SpectralParam(1, e) for e in range(emin, emax + 1)]
    nodes = range(1, N)
    hits = {FusionCondition.CONDITION_I.value: 0, FusionCondition.CONDITION_II.value: 0}
    failures: List[str] = []
    checked = 0
    for i in nodes:
        for j in nodes:
            for k in nodes:
                for x in params:
                    for y in params:
                        for z in zs:
                            checked += 1
                            cond = hom_fusion_check(i, x, j, y, k, z, N)
                            if cond is FusionCondition.NONE:
                                continue
                            hits[cond.value] += 1
                            u1, v1 = VertexClass(tag1, i, x), VertexClass(tag1, j, y)
                            u2, v2 = pi2(N, i, x), pi2(N, j, y)
                            if vertices_linked(u1, v1) < 1:
                                failures.append(f"{cond.value} at {u1.label()},{v1.label()}: no untwisted arrow")
                            if vertices_linked(u2, v2) < 1:
                                failures.append(f"{cond.value} at {u2.label()},{v2.label()}: no twisted arrow")
    return {"N": N, "checked": checked, "hits": hits, "failures": failures, "ok": not failures}

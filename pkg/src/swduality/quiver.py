"""Pole quivers on finite windows of spectral parameters.

Vertices are pairs (i, x) of a Dynkin node and a spectral parameter; there
are d arrows (i, x) -> (j, y) when the denominator d_{i,j} vanishes to order
d at y/x.  Besides the quivers of fundamental representations for A(1) and
A(2) this module builds the Cartan datum (Gamma^J, A^J, Q_ij) attached to a
family (J, X, S), and checks that pi2 identifies the two restricted quivers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

from .arith import BivarRatFunc, SpectralParam
from .denominators import AlgebraTag, pole_order

__all__ = [
    "VertexClass",
    "QuiverWindow",
    "Pi2Report",
    "GammaJ",
    "pi2",
    "canonical_vertex",
    "s0_parameters",
    "build_s0_window",
    "check_pi2_isomorphism",
    "build_gamma_J",
    "seed_family",
    "to_dot",
    "to_json",
    "from_json",
    "to_csv",
]


@dataclass(frozen=True, order=True)
class VertexClass:
    """Vertex (i, x) of the quiver of ``tag``, in canonical form."""

    tag: AlgebraTag = field(compare=False)
    node: int
    param: SpectralParam

    def label(self) -> str:
        return f"{self.node}:{self.param}"

    def sort_key(self):
        return (self.node, self.param.exp, -self.param.sign)


def canonical_vertex(tag: AlgebraTag, i: int, x: SpectralParam) -> VertexClass:
    """Apply the only known identification: V(w_n)_x = V(w_n)_{-x} for A2 with N = 2n, i = n."""
    tag.check_node(i)
    if tag.family == "A2" and tag.N % 2 == 0 and i == tag.N // 2 and x.sign == -1:
        x = -x
    return VertexClass(tag, i, x)


def pi2(N: int, i: int, x: SpectralParam) -> VertexClass:
    """(i, x) -> (i, x) for i <= N/2, else (N-i, (-1)^{N-1} x), as an A2 vertex."""
    if not 1 <= i <= N - 1:
        raise IndexError(f"node {i} out of range 1..{N - 1}")
    tag = AlgebraTag("A2", N)
    if i <= N // 2:
        return canonical_vertex(tag, i, x)
    sign = (-1) ** (N - 1)
    return canonical_vertex(tag, N - i, SpectralParam(sign * x.sign, x.exp))


def s0_parameters(tag: AlgebraTag, i: int, pmin: int, pmax: int) -> List[SpectralParam]:
    """Parameters x with (i, x) in the restricted vertex set, p in [pmin, pmax]."""
    out = []
    for p in range(pmin, pmax + 1):
        if tag.family == "A2" and tag.N % 2 == 1:
            out.append(SpectralParam(1, p))
            continue
        if (p - i - 1) % 2:
            continue
        out.append(SpectralParam(1, p))
        if tag.family == "A2":
            out.append(SpectralParam(-1, p))
    return out


@dataclass
class QuiverWindow:
    tag: AlgebraTag
    pmin: int
    pmax: int
    vertices: Tuple[VertexClass, ...]
    arrows: Dict[Tuple[VertexClass, VertexClass], int]

    def multiplicity(self, u: VertexClass, v: VertexClass) -> int:
        return self.arrows.get((u, v), 0)

    def n_arrows(self) -> int:
        return sum(self.arrows.values())


def arrow_multiplicity(u: VertexClass, v: VertexClass) -> int:
    """Order of the zero of d_{i,j} at param(v)/param(u)."""
    return pole_order(u.tag, u.node, v.node, v.param / u.param)


def build_window(tag: AlgebraTag, vertices: Iterable[VertexClass], pmin: int, pmax: int) -> QuiverWindow:
    verts = tuple(sorted(set(vertices), key=VertexClass.sort_key))
    arrows = {}
    for u in verts:
        for v in verts:
            m = arrow_multiplicity(u, v)
            if m:
                arrows[(u, v)] = m
    return QuiverWindow(tag, pmin, pmax, verts, arrows)


def build_s0_window(tag: AlgebraTag, pmin: int, pmax: int) -> QuiverWindow:
    if pmin > pmax:
        raise ValueError("empty window: pmin > pmax")
    verts = [
        canonical_vertex(tag, i, x)
        for i in tag.nodes
        for x in s0_parameters(tag, i, pmin, pmax)
    ]
    return build_window(tag, verts, pmin, pmax)


@dataclass
class Pi2Report:
    N: int
    pmin: int
    pmax: int
    n_vertices: int = 0
    n_arrows: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self):
        return {
            "N": self.N,
            "pmin": self.pmin,
            "pmax": self.pmax,
            "vertices": self.n_vertices,
            "arrows": self.n_arrows,
            "ok": self.ok,
            "failures": list(self.failures),
        }


def check_pi2_isomorphism(N: int, pmin: int, pmax: int) -> Pi2Report:
    """Check that pi2 maps the A1 window bijectively onto the A2 window,
    preserving all arrow multiplicities."""
    rep = Pi2Report(N, pmin, pmax)
    src = build_s0_window(AlgebraTag("A1", N), pmin, pmax)
    dst = build_s0_window(AlgebraTag("A2", N), pmin, pmax)
    rep.n_vertices = len(src.vertices)
    rep.n_arrows = src.n_arrows()
    image = {}
    for u in src.vertices:
        w = pi2(N, u.node, u.param)
        if w in image.values():
            rep.failures.append(f"not injective: {u.label()} collides at {w.label()}")
        image[u] = w
    targets = set(dst.vertices)
    missed = targets - set(image.values())
    extra = set(image.values()) - targets
    for w in sorted(missed, key=VertexClass.sort_key):
        rep.failures.append(f"not surjective: {w.label()} has no preimage")
    for w in sorted(extra, key=VertexClass.sort_key):
        rep.failures.append(f"image {w.label()} outside the target window")
    for u in src.vertices:
        for v in src.vertices:
            m1 = src.multiplicity(u, v)
            m2 = arrow_multiplicity(image[u], image[v])
            if m1 != m2:
                rep.failures.append(
                    f"arrow {u.label()}->{v.label()}: {m1} vs {image[u].label()}->{image[v].label()}: {m2}"
                )
    return rep


# ---------------------------------------------------------------------------
# Cartan datum of a family (J, X, S)
# ---------------------------------------------------------------------------


@dataclass
class GammaJ:
    J: Tuple[int, ...]
    d: Dict[Tuple[int, int], int]
    cartan: np.ndarray
    Q: Dict[Tuple[int, int], BivarRatFunc]

    def a(self, i: int, j: int) -> int:
        return int(self.cartan[self.J.index(i), self.J.index(j)])


def build_gamma_J(
    J: Sequence[int],
    X: Mapping[int, SpectralParam] | Callable[[int], SpectralParam],
    denom_oracle: Callable[[int, int, SpectralParam], int],
) -> GammaJ:
    """d_ij = order of zero of d_{S(i),S(j)} at X(j)/X(i); a_ij = -d_ij - d_ji;
    Q_ij(u,v) = (u-v)^{d_ij} (v-u)^{d_ji} for i != j and Q_ii = 0."""
    J = tuple(J)
    getx = X if callable(X) else X.__getitem__
    d = {}
    for i in J:
        for j in J:
            d[(i, j)] = 0 if i == j else denom_oracle(i, j, getx(j) / getx(i))
    n = len(J)
    A = np.zeros((n, n), dtype=np.int64)
    for a, i in enumerate(J):
        for b, j in enumerate(J):
            A[a, b] = 2 if i == j else -d[(i, j)] - d[(j, i)]
    u, v = BivarRatFunc.u(), BivarRatFunc.v()
    Q = {}
    for i in J:
        for j in J:
            Q[(i, j)] = BivarRatFunc(0) if i == j else (u - v) ** d[(i, j)] * (v - u) ** d[(j, i)]
    return GammaJ(J, d, A, Q)


def seed_family(J: Sequence[int], N: int) -> GammaJ:
    """The seed family: X(j) = q^{2j}, every S(j) the first fundamental A2 module."""
    tag = AlgebraTag("A2", N)
    return build_gamma_J(J, lambda j: SpectralParam(1, 2 * j), lambda i, j, r: pole_order(tag, 1, 1, r))


# ---------------------------------------------------------------------------
# Output formats
# ---------------------------------------------------------------------------


def to_dot(w: QuiverWindow) -> str:
    ids = {v: f"v{k}" for k, v in enumerate(w.vertices)}
    lines = [
        "digraph S0 {",
        f'  label="{w.tag.family} N={w.tag.N} p in [{w.pmin},{w.pmax}]";',
    ]
    for v in w.vertices:
        lines.append(f'  {ids[v]} [label="{v.label()}"];')
    for u in w.vertices:
        for v in w.vertices:
            for _ in range(w.multiplicity(u, v)):
                lines.append(f"  {ids[u]} -> {ids[v]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _vertex_json(v: VertexClass):
    return {"node": v.node, "sign": v.param.sign, "exp": v.param.exp, "label": v.label()}


def to_json(w: QuiverWindow) -> str:
    data = {
        "schema": "swduality.quiver/1",
        "family": w.tag.family,
        "N": w.tag.N,
        "pmin": w.pmin,
        "pmax": w.pmax,
        "vertices": [_vertex_json(v) for v in w.vertices],
        "arrows": [
            {"from": u.label(), "to": v.label(), "multiplicity": w.multiplicity(u, v)}
            for u in w.vertices
            for v in w.vertices
            if w.multiplicity(u, v)
        ],
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> QuiverWindow:
    data = json.loads(text)
    tag = AlgebraTag(data["family"], data["N"])
    verts = [VertexClass(tag, v["node"], SpectralParam(v["sign"], v["exp"])) for v in data["vertices"]]
    by_label = {v.label(): v for v in verts}
    arrows = {(by_label[a["from"]], by_label[a["to"]]): a["multiplicity"] for a in data["arrows"]}
    return QuiverWindow(tag, data["pmin"], data["pmax"], tuple(verts), arrows)


def to_csv(w: QuiverWindow) -> str:
    lines = ["source,target,multiplicity"]
    for u in w.vertices:
        for v in w.vertices:
            m = w.multiplicity(u, v)
            if m:
                lines.append(f"{u.label()},{v.label()},{m}")
    return "\n".join(lines) + "\n"

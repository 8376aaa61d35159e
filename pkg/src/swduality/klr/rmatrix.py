"""R-matrices between convolution products of segment modules.

R_{M,N}: M o N -> N o M sends u (x) v to phi_{w[n,m]} (v (x) u), where phi_w is
the product of intertwiners along a reduced word of the block transposition.
The spectral deformation M_z, N_{z'} (x_k acting as x_k + z on M and
x_k + z' on N) is realized over QQ[z, t] with z' = z + t.  The zero order s
is the t-adic valuation of the deformed R-matrix, and the renormalized map is

    r_{M,N} = (t^{-s} R_{M_z, N_{z+t}}) at z = t = 0,

homogeneous of degree Lambda(M, N) = (beta, gamma) - 2<beta, gamma> + 2s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

from ..segments import Segment, inner_form, sym_form
from . import perms as P
from .algebra import KLRAlgebra
from .modules import (
    KLRModule,
    SizeCapError,
    _vadd,
    convolution,
    default_algebra,
    deform,
    graded_dim,
    segment_module,
)

__all__ = [
    "LinearMap",
    "RMatrixResult",
    "CompositionReport",
    "YangBaxterReport",
    "COMPOSITION_CAP",
    "YANG_BAXTER_CAP",
    "rmatrix_unnormalized",
    "zero_order_s",
    "renormalized_r",
    "composition_report",
    "classify_pair",
    "expected_degree",
    "yang_baxter_check",
    "hexagon_composites",
    "word_choice_check",
]

COMPOSITION_CAP = 7
YANG_BAXTER_CAP = 6

Col = Dict[int, object]


@lru_cache(maxsize=None)
def _spectral_ring():
    R, z, t = ring("z,t", QQ)
    return R, z, t


@dataclass
class LinearMap:
    """A linear map src -> dst stored by sparse columns (one per src basis vector)."""

    src: KLRModule
    dst: KLRModule
    cols: List[Col]

    def is_zero(self) -> bool:
        return not any(self.cols)

    def apply(self, vec: Dict[int, object]) -> Col:
        out: Col = {}
        for j, c in vec.items():
            _vadd(out, self.cols[j], c)
        return out

    def compose(self, first: "LinearMap") -> "LinearMap":
        """self o first."""
        return LinearMap(first.src, self.dst, [self.apply(c) for c in first.cols])

    def entries(self):
        for j, col in enumerate(self.cols):
            for i, c in col.items():
                yield i, j, c

    def to_dense(self) -> List[List[object]]:
        rows = [[0] * self.src.dim for _ in range(self.dst.dim)]
        for i, j, c in self.entries():
            rows[i][j] = c
        return rows

    def is_homogeneous(self, degree: int) -> bool:
        """Every nonzero entry sends src degree d to dst degree d - degree."""
        return all(self.dst.degrees[i] == self.src.degrees[j] - degree for i, j, _ in self.entries())

    def equals(self, other: "LinearMap") -> bool:
        if len(self.cols) != len(other.cols):
            return False
        for a, b in zip(self.cols, other.cols):
            d = dict(a)
            _vadd(d, b, -1)
            if d:
                return False
        return True


def _map_from_generators(src: KLRModule, dst: KLRModule, gen_image, alg: KLRAlgebra) -> LinearMap:
    """Extend b |-> gen_image(b) (images of 1 (x) b) to tau_{c(w)} (x) b by R-linearity."""
    cache: Dict[tuple, Col] = {}
    cols = []
    for w, b in src.basis_keys:
        if b not in cache:
            cache[b] = gen_image(b)
        cols.append(dst.apply_word(alg.word(w), cache[b]))
    return LinearMap(src, dst, cols)


def _swap_map(MN: KLRModule, NM: KLRModule, alg: KLRAlgebra) -> LinearMap:
    """R_{M,N}: 1 (x) u (x) v |-> phi_{w[n,m]} (1 (x) v (x) u)."""
    M, N = MN.factors
    word = alg.word(P.block_swap(N.n, M.n))
    ident = P.identity(M.n + N.n)

    def gen(b):
        u, v = b
        vec = {NM.index((ident, (v, u))): 1}
        for k in reversed(word):
            vec = NM.apply_phi(k, vec)
        return vec

    return _map_from_generators(MN, NM, gen, alg)


def _check_cap(M: KLRModule, N: KLRModule, cap: int):
    if M.n + N.n > cap:
        raise SizeCapError(f"total size {M.n + N.n} exceeds the cap {cap}")
    if M.dim == 0 or N.dim == 0:
        raise ValueError("zero module")


def rmatrix_unnormalized(M: KLRModule, N: KLRModule, algebra: Optional[KLRAlgebra] = None, cap: int = 8) -> LinearMap:
    """R_{M,N}: M o N -> N o M, homogeneous of degree (beta, gamma) - 2<beta, gamma>."""
    _check_cap(M, N, cap)
    alg = algebra or default_algebra()
    MN = convolution(M, N, algebra=alg, cap=cap)
    NM = convolution(N, M, algebra=alg, cap=cap)
    return _swap_map(MN, NM, alg)


@dataclass
class RMatrixResult:
    """Renormalized R-matrix r_{M,N} with its zero order and degree."""

    M: KLRModule
    N: KLRModule
    s: int
    degree: int
    r: LinearMap
    deformed: LinearMap = field(repr=False)

    @property
    def src(self) -> KLRModule:
        return self.r.src

    @property
    def dst(self) -> KLRModule:
        return self.r.dst


def _t_valuation(c) -> int:
    if not hasattr(c, "terms"):
        return 0
    return min(m[1] for m, _ in c.terms())


def _deformed(M: KLRModule, N: KLRModule, alg: KLRAlgebra, cap: int) -> LinearMap:
    _check_cap(M, N, cap)
    R, z, t = _spectral_ring()
    Mz = deform(M, z, name=f"{M.name}_z")
    Nzp = deform(N, z + t, name=f"{N.name}_z'")
    MN = convolution(Mz, Nzp, algebra=alg, cap=cap)
    NM = convolution(Nzp, Mz, algebra=alg, cap=cap)
    return _swap_map(MN, NM, alg)


def zero_order_s(M: KLRModule, N: KLRModule, algebra: Optional[KLRAlgebra] = None, cap: int = 8) -> int:
    """Smallest (z' - z)-adic valuation among the entries of R_{M_z, N_z'}."""
    D = _deformed(M, N, algebra or default_algebra(), cap)
    vals = [_t_valuation(c) for _, _, c in D.entries()]
    if not vals:
        raise ValueError("deformed R-matrix vanishes identically")
    return min(vals)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _specialize(c, s: int):
    """Coefficient of z^0 t^s."""
    if not hasattr(c, "terms"):
        return Fraction(c) if s == 0 else 0
    for (ez, et), v in c.terms():
        if ez == 0 and et == s:
            return _to_fraction(v)
    return 0


def renormalized_r(M: KLRModule, N: KLRModule, algebra: Optional[KLRAlgebra] = None, cap: int = 8) -> RMatrixResult:
    alg = algebra or default_algebra()
    D = _deformed(M, N, alg, cap)
    vals = [_t_valuation(c) for _, _, c in D.entries()]
    if not vals:
        raise ValueError("deformed R-matrix vanishes identically")
    s = min(vals)
    # the undeformed products carry the same basis keys, labels and degrees
    MN = convolution(M, N, algebra=alg, cap=cap)
    NM = convolution(N, M, algebra=alg, cap=cap)
    cols = []
    for col in D.cols:
        out = {}
        for i, c in col.items():
            v = _specialize(c, s)
            if v:
                out[i] = v
        cols.append(out)
    beta, gamma = M.weight, N.weight
    degree = sym_form(beta, gamma) - 2 * inner_form(beta, gamma) + 2 * s
    return RMatrixResult(M, N, s, degree, LinearMap(MN, NM, cols), D)


# ---------------------------------------------------------------------------
# graded linear algebra
# ---------------------------------------------------------------------------


def graded_ranks(f: LinearMap, degree: int) -> Dict[int, int]:
    """Rank of f restricted to each src degree d (landing in dst degree d - degree)."""
    out = {}
    for d in sorted(set(f.src.degrees)):
        js = [j for j, e in enumerate(f.src.degrees) if e == d]
        is_ = [i for i, e in enumerate(f.dst.degrees) if e == d - degree]
        if not js or not is_:
            out[d] = 0
            continue
        pos = {i: r for r, i in enumerate(is_)}
        rows = [[QQ(0)] * len(js) for _ in is_]
        for c, j in enumerate(js):
            for i, v in f.cols[j].items():
                if i not in pos:
                    raise ValueError("map is not homogeneous of the stated degree")
                rows[pos[i]][c] = QQ(v.numerator, v.denominator) if isinstance(v, Fraction) else QQ(v)
        out[d] = DomainMatrix(rows, (len(is_), len(js)), QQ).rank()
    return out


def _gadd(a: Dict[int, int], b: Dict[int, int], scale: int = 1, shift: int = 0) -> Dict[int, int]:
    out = dict(a)
    for d, m in b.items():
        out[d + shift] = out.get(d + shift, 0) + scale * m
    return {d: m for d, m in sorted(out.items()) if m}


def gdim_convolution(*segs: Segment) -> Dict[int, int]:
    M = convolution(*(segment_module(s.a, s.b) for s in segs))
    return graded_dim(M)


# ---------------------------------------------------------------------------
# case analysis for two segments
# ---------------------------------------------------------------------------


def classify_pair(s1: Segment, s2: Segment) -> str:
    """Which case of the two-segment exact-sequence list applies to L(s1) o L(s2).

    'i' equal; 'iii' s2 inside s1 with a <= a'; 'iv' s2 strictly left of s1 and
    not adjacent; 'v' linked with s2 starting to the left; 'vi' s2 ends just
    before s1 starts.  Remaining pairs are labelled by the mirror image of one
    of these cases ('iii*', 'iv*', 'v*', 'vi*') or 'nested*' when s1 lies
    inside s2 starting strictly to the right.
    """
    a, b, a2, b2 = s1.a, s1.b, s2.a, s2.b
    if (a, b) == (a2, b2):
        return "i"
    if a <= a2 <= b2 <= b:
        return "iii"
    if b2 < a - 1:
        return "iv"
    if a2 < a <= b2 < b:
        return "v"
    if a == b2 + 1:
        return "vi"
    if a2 <= a <= b <= b2:
        return "iii*" if a2 == a else "nested*"
    if b < a2 - 1:
        return "iv*"
    if a < a2 <= b < b2:
        return "v*"
    if a2 == b + 1:
        return "vi*"
    raise AssertionError("unclassified segment pair")


def expected_degree(s1: Segment, s2: Segment) -> int:
    """Degree of r_{L(s1), L(s2)}: delta_{a,a'} + delta_{b,b'} - 2 when a <= a' <= b <= b',
    and (beta, beta') otherwise."""
    a, b, a2, b2 = s1.a, s1.b, s2.a, s2.b
    if a <= a2 <= b <= b2:
        return int(a == a2) + int(b == b2) - 2
    return sym_form(s1.weight(), s2.weight())


@dataclass
class CompositionReport:
    s1: Segment
    s2: Segment
    case: str
    s: int
    degree: int
    expected_degree: int
    src_gdim: Dict[int, int]
    dst_gdim: Dict[int, int]
    kernel: Dict[int, int]
    image: Dict[int, int]
    cokernel: Dict[int, int]
    expected_kernel: Optional[Dict[int, int]]
    expected_cokernel: Optional[Dict[int, int]]
    head: str
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self):
        def g(d):
            return None if d is None else {str(k): v for k, v in d.items()}

        return {
            "segments": [str(self.s1), str(self.s2)],
            "case": self.case,
            "s": self.s,
            "degree": self.degree,
            "expected_degree": self.expected_degree,
            "src_gdim": g(self.src_gdim),
            "dst_gdim": g(self.dst_gdim),
            "kernel": g(self.kernel),
            "image": g(self.image),
            "cokernel": g(self.cokernel),
            "expected_kernel": g(self.expected_kernel),
            "expected_cokernel": g(self.expected_cokernel),
            "head": self.head,
            "ok": self.ok,
            "failures": list(self.failures),
        }


def composition_report(
    s1: Segment, s2: Segment, algebra: Optional[KLRAlgebra] = None, cap: int = COMPOSITION_CAP
) -> CompositionReport:
    """Graded kernel, image and cokernel of r_{L(s1), L(s2)} compared with the exact sequences.

    Gradings: the kernel and image sit in the grading of L(s1) o L(s2); the
    cokernel is that of r viewed as a degree-0 map into q^Lambda L(s2) o L(s1).
    """
    if s1.length + s2.length > cap:
        raise SizeCapError(f"total size {s1.length + s2.length} exceeds the cap {cap}")
    if s1.is_unit() or s2.is_unit():
        raise ValueError("segments must be nonempty")
    res = renormalized_r(segment_module(s1.a, s1.b), segment_module(s2.a, s2.b), algebra, cap=cap)
    lam = res.degree
    ranks = graded_ranks(res.r, lam)
    src = graded_dim(res.src)
    dst_shift = {d + lam: m for d, m in graded_dim(res.dst).items()}
    image = {d: r for d, r in ranks.items() if r}
    kernel = _gadd(src, image, -1)
    coker = _gadd(dst_shift, image, -1)
    case = classify_pair(s1, s2)
    a, b, a2, b2 = s1.a, s1.b, s2.a, s2.b
    exp_k = exp_c = None
    if case in ("i", "iii", "iv", "iii*", "iv*", "nested*"):
        exp_k, exp_c = {}, {}
    elif case == "v":
        X = gdim_convolution(Segment(a2, b), Segment(a, b2))
        exp_k = _gadd({}, X, shift=1)
        exp_c = _gadd({}, X, shift=-1)
    elif case == "vi":
        exp_k = {1: 1}
        exp_c = {-1: 1}
    failures = []
    exp_deg = expected_degree(s1, s2)
    if lam != exp_deg:
        failures.append(f"degree {lam} != expected {exp_deg}")
    if not 0 <= res.s <= inner_form(s1.weight(), s2.weight()):
        failures.append(f"s = {res.s} outside [0, <beta, gamma>]")
    if res.r.is_zero():
        failures.append("r vanishes")
    if not res.r.is_homogeneous(lam):
        failures.append("r is not homogeneous")
    if case == "i":
        ident = all(col == {j: 1} for j, col in enumerate(res.r.cols))
        if not ident:
            failures.append("r is not the identity")
    if exp_k is not None and kernel != exp_k:
        failures.append(f"kernel {kernel} != expected {exp_k}")
    if exp_c is not None and coker != exp_c:
        failures.append(f"cokernel {coker} != expected {exp_c}")
    ordered = sorted([s1, s2], reverse=True)
    head = "[" + ",".join(str(x) for x in ordered) + "]"
    return CompositionReport(
        s1, s2, case, res.s, lam, exp_deg, src, dict(sorted(graded_dim(res.dst).items())),
        kernel, image, coker, exp_k, exp_c, head, failures,
    )


# ---------------------------------------------------------------------------
# Yang-Baxter and word-choice independence
# ---------------------------------------------------------------------------


def _embed(v: P.Perm, offset: int, n: int) -> P.Perm:
    return tuple(list(range(offset)) + [offset + x for x in v] + list(range(offset + len(v), n)))


def _induce_local(src: KLRModule, dst: KLRModule, pos: int, local: LinearMap, alg: KLRAlgebra) -> LinearMap:
    """F_1 o .. o r o .. o F_t, with the local map r acting on factors pos, pos+1 (0-based)."""
    offset = sum(F.n for F in src.factors[:pos])
    n = src.n
    lsrc = local.src
    lident = P.identity(lsrc.n)

    def gen(b):
        col = local.cols[lsrc.index((lident, (b[pos], b[pos + 1])))]
        out: Col = {}
        for i, c in col.items():
            v, (y, x) = local.dst.basis_keys[i]
            key = (_embed(v, offset, n), b[:pos] + (y, x) + b[pos + 2:])
            _vadd(out, {dst.index(key): c})
        return out

    return _map_from_generators(src, dst, gen, alg)


@dataclass
class YangBaxterReport:
    segments: Tuple[Segment, Segment, Segment]
    dim: int
    ok: bool
    all_isomorphisms: bool
    s_values: Dict[str, int]

    def to_dict(self):
        return {
            "segments": [str(s) for s in self.segments],
            "dim": self.dim,
            "ok": self.ok,
            "all_isomorphisms": self.all_isomorphisms,
            "s": dict(self.s_values),
        }


def hexagon_composites(
    s1: Segment, s2: Segment, s3: Segment, algebra: Optional[KLRAlgebra] = None,
    cap: int = YANG_BAXTER_CAP, rmaps: Optional[Dict[Tuple[int, int], RMatrixResult]] = None,
):
    """The two composites L1 o L2 o L3 -> L3 o L2 o L1 of induced r-maps.

    Returns (left, right, rmaps) where
    left  = (r23 o L1)(L2 o r13)(r12 o L3) and
    right = (L3 o r12)(r13 o L2)(L1 o r23).
    ``rmaps`` may supply the pairwise r-maps (keys (1,2), (1,3), (2,3)).
    """
    total = s1.length + s2.length + s3.length
    if total > cap:
        raise SizeCapError(f"total size {total} exceeds the cap {cap}")
    alg = algebra or default_algebra()
    L = {i: segment_module(s.a, s.b) for i, s in enumerate((s1, s2, s3), start=1)}
    r = dict(rmaps) if rmaps else {}
    for i, j in ((1, 2), (1, 3), (2, 3)):
        if (i, j) not in r:
            r[(i, j)] = renormalized_r(L[i], L[j], alg, cap=cap)

    def conv(*idx):
        return convolution(*(L[i] for i in idx), algebra=alg, cap=cap)

    P123, P213, P231, P321 = conv(1, 2, 3), conv(2, 1, 3), conv(2, 3, 1), conv(3, 2, 1)
    P132, P312 = conv(1, 3, 2), conv(3, 1, 2)
    left = _induce_local(P231, P321, 0, r[(2, 3)].r, alg).compose(
        _induce_local(P213, P231, 1, r[(1, 3)].r, alg).compose(_induce_local(P123, P213, 0, r[(1, 2)].r, alg))
    )
    right = _induce_local(P312, P321, 1, r[(1, 2)].r, alg).compose(
        _induce_local(P132, P312, 0, r[(1, 3)].r, alg).compose(_induce_local(P123, P132, 1, r[(2, 3)].r, alg))
    )
    return left, right, r


def yang_baxter_check(
    s1: Segment, s2: Segment, s3: Segment, algebra: Optional[KLRAlgebra] = None, cap: int = YANG_BAXTER_CAP
) -> YangBaxterReport:
    """Compare the two hexagon composites of renormalized r-maps."""
    left, right, r = hexagon_composites(s1, s2, s3, algebra, cap)
    iso = all(_is_iso(x.r) for x in r.values())
    return YangBaxterReport(
        (s1, s2, s3), left.src.dim, left.equals(right), iso, {f"{i}{j}": x.s for (i, j), x in r.items()}
    )


def _is_iso(f: LinearMap) -> bool:
    if f.src.dim != f.dst.dim:
        return False
    rows = [[QQ(0)] * f.src.dim for _ in range(f.dst.dim)]
    for i, j, c in f.entries():
        rows[i][j] = QQ(c.numerator, c.denominator)
    return DomainMatrix(rows, (f.dst.dim, f.src.dim), QQ).rank() == f.src.dim


def _change_of_basis(Mmin: KLRModule, Mmax: KLRModule, amin: KLRAlgebra, amax: KLRAlgebra) -> LinearMap:
    """Express each max-policy basis vector tau_{c_max(w)} (x) b in the min-policy basis."""
    ident = P.identity(Mmin.n)
    cols = []
    for w, b in Mmax.basis_keys:
        cols.append(Mmin.apply_word(amax.word(w), {Mmin.index((ident, b)): 1}))
    return LinearMap(Mmax, Mmin, cols)


def word_choice_check(s1: Segment, s2: Segment) -> bool:
    """r_{L(s1),L(s2)} computed with the 'min' and 'max' reduced-word policies agree."""
    amin, amax = KLRAlgebra(policy="min"), KLRAlgebra(policy="max")
    M, N = segment_module(s1.a, s1.b), segment_module(s2.a, s2.b)
    rmin = renormalized_r(M, N, amin)
    rmax = renormalized_r(M, N, amax)
    if rmin.s != rmax.s or rmin.degree != rmax.degree:
        return False
    T_src = _change_of_basis(rmin.src, rmax.src, amin, amax)
    T_dst = _change_of_basis(rmin.dst, rmax.dst, amin, amax)
    return rmin.r.compose(T_src).equals(T_dst.compose(rmax.r))

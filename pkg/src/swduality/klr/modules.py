"""Finite-dimensional graded modules over type A_infinity KLR algebras.

A module is stored by its basis (nu-label and degree of every basis vector)
and sparse action matrices for x_k and tau_k: ``xs[k-1][j]`` is the column of
x_k on basis vector j as a dict {row: coefficient}.  Coefficients are
rationals for ordinary modules and sympy polynomials in the spectral
variables for deformed ones.

Convolution products are induced modules with basis tau_{c(w)} (x) (b_1 (x) ... (x) b_t)
over minimal-length coset representatives w.  The action of a generator is
computed by rewriting tau_d tau_{c(w)} or x_k tau_{c(w)} to normal form and
then moving any tau-factor that is not a coset representative into the
tensor factors.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..segments import RootVec, Segment
from . import perms as P
from .algebra import KLRAlgebra

__all__ = [
    "KLRModule",
    "SizeCapError",
    "CONVOLUTION_CAP",
    "segment_module",
    "convolution",
    "deform",
    "check_relations",
    "graded_dim",
    "default_algebra",
]

CONVOLUTION_CAP = 8

Col = Dict[int, object]


class SizeCapError(ValueError):
    """Raised when a construction exceeds the configured desk-scale size cap."""


_local = threading.local()


def default_algebra(policy: str = "min") -> KLRAlgebra:
    """A per-thread type A_infinity algebra whose normal-form memo is reused."""
    cache = getattr(_local, "algebras", None)
    if cache is None:
        cache = _local.algebras = {}
    if policy not in cache:
        cache[policy] = KLRAlgebra(policy=policy)
    return cache[policy]


def _vadd(acc: Col, vec: Mapping[int, object], scale=1):
    for i, c in vec.items():
        v = acc.get(i, 0) + scale * c
        if v:
            acc[i] = v
        else:
            acc.pop(i, None)


@dataclass
class KLRModule:
    """A graded module over R(beta), beta the weight of every nu-label."""

    n: int
    labels: List[Tuple[int, ...]]
    degrees: List[int]
    xs: List[List[Col]]
    taus: List[List[Col]]
    name: str = ""
    factors: Tuple["KLRModule", ...] = field(default=(), repr=False)
    basis_keys: List[tuple] = field(default_factory=list, repr=False)
    algebra: Optional[KLRAlgebra] = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def weight(self) -> RootVec:
        if not self.labels:
            raise ValueError("zero module has no weight")
        return RootVec.from_residues(self.labels[0])

    # action -----------------------------------------------------------------
    def apply_x(self, k: int, vec: Mapping[int, object]) -> Col:
        out: Col = {}
        for j, c in vec.items():
            _vadd(out, self.xs[k - 1][j], c)
        return out

    def apply_tau(self, k: int, vec: Mapping[int, object]) -> Col:
        out: Col = {}
        for j, c in vec.items():
            _vadd(out, self.taus[k - 1][j], c)
        return out

    def apply_e(self, nu: Sequence[int], vec: Mapping[int, object]) -> Col:
        nu = tuple(nu)
        return {j: c for j, c in vec.items() if self.labels[j] == nu}

    def apply_word(self, word: Sequence[int], vec: Mapping[int, object]) -> Col:
        out = dict(vec)
        for k in reversed(word):
            out = self.apply_tau(k, out)
        return out

    def apply_phi(self, k: int, vec: Mapping[int, object]) -> Col:
        """Intertwiner phi_k = tau_k x_k - x_k tau_k on e(nu) with nu_k = nu_{k+1}, else tau_k."""
        out: Col = {}
        for j, c in vec.items():
            nu = self.labels[j]
            v = {j: c}
            if nu[k - 1] == nu[k]:
                _vadd(out, self.apply_tau(k, self.apply_x(k, v)))
                _vadd(out, self.apply_x(k, self.apply_tau(k, v)), -1)
            else:
                _vadd(out, self.apply_tau(k, v))
        return out

    def gdim(self) -> Dict[int, int]:
        return graded_dim(self)

    def index(self, key) -> int:
        return self._index[key]

    def __post_init__(self):
        self._index = {k: i for i, k in enumerate(self.basis_keys)}


def graded_dim(M: KLRModule) -> Dict[int, int]:
    """Graded dimension as {degree: multiplicity} (the Laurent polynomial sum q^deg)."""
    out: Dict[int, int] = {}
    for d in M.degrees:
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def segment_module(a: int, b: int) -> KLRModule:
    """L(a, b): one vector of degree 0 and label (a, ..., b), with x and tau acting by 0."""
    seg = Segment(a, b)
    n = seg.length
    label = tuple(range(a, b + 1))
    return KLRModule(
        n=n,
        labels=[label],
        degrees=[0],
        xs=[[{}] for _ in range(n)],
        taus=[[{}] for _ in range(max(n - 1, 0))],
        name=f"L{seg}",
        basis_keys=[(P.identity(n), (0,))],
    )


def deform(M: KLRModule, shift, name: Optional[str] = None) -> KLRModule:
    """The spectral twist x_k -> x_k + shift (shift a ring element such as z)."""
    xs = []
    for k in range(M.n):
        cols = []
        for j in range(M.dim):
            col = dict(M.xs[k][j])
            _vadd(col, {j: shift})
            cols.append(col)
        xs.append(cols)
    return KLRModule(
        n=M.n,
        labels=list(M.labels),
        degrees=list(M.degrees),
        xs=xs,
        taus=[[dict(c) for c in t] for t in M.taus],
        name=name or f"{M.name}_[{shift}]",
        factors=M.factors,
        basis_keys=list(M.basis_keys),
        algebra=M.algebra,
    )


class _Induction:
    """Builds the action matrices of the convolution of ``factors``."""

    def __init__(self, factors: Sequence[KLRModule], alg: KLRAlgebra):
        self.factors = tuple(factors)
        self.alg = alg
        self.blocks = tuple(F.n for F in self.factors)
        self.n = sum(self.blocks)
        self.offsets = []
        off = 0
        for b in self.blocks:
            self.offsets.append(off)
            off += b
        # block id of each position 0..n-1
        self.block_of = [i for i, b in enumerate(self.blocks) for _ in range(b)]
        self.reps = P.min_coset_reps(self.blocks)
        self.rep_set = set(self.reps)
        tuples = [()]
        for F in self.factors:
            tuples = [t + (j,) for t in tuples for j in range(F.dim)]
        self.keys = [(w, b) for w in self.reps for b in tuples]
        self.index = {k: i for i, k in enumerate(self.keys)}
        self._reduce_memo: Dict[tuple, Col] = {}

    def tensor_label(self, b: Tuple[int, ...]) -> Tuple[int, ...]:
        out: Tuple[int, ...] = ()
        for F, j in zip(self.factors, b):
            out += F.labels[j]
        return out

    def tensor_degree(self, b: Tuple[int, ...]) -> int:
        return sum(F.degrees[j] for F, j in zip(self.factors, b))

    def _factor_op(self, kind: str, k: int, tvec: Mapping[tuple, object]) -> Dict[tuple, object]:
        """Apply x_k or tau_k (global position k, 1-based) to a tensor vector."""
        i = self.block_of[k - 1]
        kl = k - self.offsets[i]
        F = self.factors[i]
        mats = F.xs if kind == "x" else F.taus
        out: Dict[tuple, object] = {}
        for b, c in tvec.items():
            for r, d in mats[kl - 1][b[i]].items():
                nb = b[:i] + (r,) + b[i + 1:]
                v = out.get(nb, 0) + c * d
                if v:
                    out[nb] = v
                else:
                    out.pop(nb, None)
        return out

    def _x_monomial(self, a: Sequence[int], b: Tuple[int, ...]) -> Dict[tuple, object]:
        tvec: Dict[tuple, object] = {b: 1}
        for k, e in enumerate(a, start=1):
            for _ in range(e):
                tvec = self._factor_op("x", k, tvec)
                if not tvec:
                    return tvec
        return tvec

    def reduce_term(self, w: P.Perm, b: Tuple[int, ...]) -> Col:
        """Express tau_{c(w)} (x) b in the induced basis."""
        key = (w, b)
        hit = self._reduce_memo.get(key)
        if hit is not None:
            return hit
        if w in self.rep_set:
            res = {self.index[key]: 1}
        else:
            j = next(
                j for j in P.right_descents(w) if self.block_of[j - 1] == self.block_of[j]
            )
            w2 = P.right_mul_simple(w, j)
            nu = self.tensor_label(b)
            nf = self.alg.left_mul_word(self.alg.word(w2), self.alg.tau(j, nu))
            res: Col = {}
            for b2, c in self._factor_op("tau", j, {b: 1}).items():
                _vadd(res, self.reduce_term(w2, b2), c)
            for (v, a, _), c in nf.items():
                if v == w and not any(a):
                    continue
                _vadd(res, self.reduce_elem_term(v, a, b), -c)
        self._reduce_memo[key] = res
        return res

    def reduce_elem_term(self, w: P.Perm, a: Sequence[int], b: Tuple[int, ...]) -> Col:
        """Express tau_{c(w)} x^a (x) b in the induced basis."""
        out: Col = {}
        for b2, c in self._x_monomial(a, b).items():
            _vadd(out, self.reduce_term(w, b2), c)
        return out

    def build(self, name: str) -> KLRModule:
        alg = self.alg
        labels, degrees = [], []
        for w, b in self.keys:
            nu = self.tensor_label(b)
            labels.append(P.act(w, nu))
            degrees.append(alg.word_degree(alg.word(w), nu) + self.tensor_degree(b))
        xs = [[None] * len(self.keys) for _ in range(self.n)]
        taus = [[None] * len(self.keys) for _ in range(self.n - 1)]
        for idx, (w, b) in enumerate(self.keys):
            nu = self.tensor_label(b)
            for k in range(1, self.n + 1):
                col: Col = {}
                for (v, a, _), c in alg._x_basis(k, w, nu).items():
                    _vadd(col, self.reduce_elem_term(v, a, b), c)
                xs[k - 1][idx] = col
            for k in range(1, self.n):
                col = {}
                for (v, a, _), c in alg._tau_basis(k, w, nu).items():
                    _vadd(col, self.reduce_elem_term(v, a, b), c)
                taus[k - 1][idx] = col
        return KLRModule(
            n=self.n,
            labels=labels,
            degrees=degrees,
            xs=xs,
            taus=taus,
            name=name,
            factors=self.factors,
            basis_keys=list(self.keys),
            algebra=alg,
        )


def convolution(
    *factors: KLRModule,
    algebra: Optional[KLRAlgebra] = None,
    cap: int = CONVOLUTION_CAP,
) -> KLRModule:
    """The convolution product F_1 o F_2 o ... o F_t.

    Basis: tau_{c(w)} (x) (b_1 (x) ... (x) b_t) over minimal coset
    representatives w of S_{n_1} x ... x S_{n_t}, ordered by (length, w).
    """
    total = sum(F.n for F in factors)
    if total > cap:
        raise SizeCapError(f"convolution of total size {total} exceeds the cap {cap}")
    alg = algebra or default_algebra()
    name = " o ".join(F.name or "?" for F in factors)
    return _Induction(factors, alg).build(name)


def expected_convolution_dim(*factors: KLRModule) -> int:
    n, out = 0, 1
    for F in factors:
        n += F.n
        out *= comb(n, F.n) * F.dim
    return out


# ---------------------------------------------------------------------------
# relation oracle
# ---------------------------------------------------------------------------


def _poly_action(M: KLRModule, poly: Mapping[Tuple[int, ...], object], vec: Col) -> Col:
    out: Col = {}
    for exps, c in poly.items():
        v = dict(vec)
        for k, e in enumerate(exps, start=1):
            for _ in range(e):
                v = M.apply_x(k, v)
        _vadd(out, v, c)
    return out


def check_relations(M: KLRModule, algebra: Optional[KLRAlgebra] = None, check_degrees: bool = True) -> List[str]:
    """Apply every defining relation to every basis vector; return the violations.

    Relations are checked as operator identities on basis vectors of label nu:
    label compatibility, x_k x_l = x_l x_k, tau_k x_l = x_l tau_k (l != k, k+1),
    (tau_k x_{k+1} - x_k tau_k) e(nu) = (x_{k+1} tau_k - tau_k x_k) e(nu) = [nu_k = nu_{k+1}] e(nu),
    tau_k tau_l = tau_l tau_k (|k - l| > 1), tau_k^2 e(nu) = Q(x_k, x_{k+1}) e(nu) and the
    braid relation with its correction.  Degree laws are checked when
    ``check_degrees`` is set (a deformed module is not graded in the same way).
    """
    alg = algebra or M.algebra or default_algebra()
    n = M.n
    bad: List[str] = []

    def diff(lhs: Col, rhs: Col, what: str, j: int):
        d = dict(lhs)
        _vadd(d, rhs, -1)
        if d:
            bad.append(f"{what} fails on basis vector {j} (label {M.labels[j]})")

    for j in range(M.dim):
        nu = M.labels[j]
        v = {j: 1}
        for k in range(1, n + 1):
            for r in M.xs[k - 1][j]:
                if M.labels[r] != nu:
                    bad.append(f"x_{k} changes the label of basis vector {j}")
                elif check_degrees and M.degrees[r] != M.degrees[j] + alg.pairing(nu[k - 1], nu[k - 1]):
                    bad.append(f"x_{k} is not homogeneous on basis vector {j}")
        for k in range(1, n):
            mu = P.act(P.simple(n, k), nu)
            for r in M.taus[k - 1][j]:
                if M.labels[r] != mu:
                    bad.append(f"tau_{k} sends basis vector {j} to the wrong label")
                elif check_degrees and M.degrees[r] != M.degrees[j] - alg.pairing(nu[k - 1], nu[k]):
                    bad.append(f"tau_{k} is not homogeneous on basis vector {j}")
        for k in range(1, n + 1):
            for l in range(k + 1, n + 1):
                diff(M.apply_x(k, M.apply_x(l, v)), M.apply_x(l, M.apply_x(k, v)), f"x_{k} x_{l} = x_{l} x_{k}", j)
        for k in range(1, n):
            for l in range(1, n + 1):
                if l in (k, k + 1):
                    continue
                diff(M.apply_tau(k, M.apply_x(l, v)), M.apply_x(l, M.apply_tau(k, v)), f"tau_{k} x_{l} = x_{l} tau_{k}", j)
            delta = {j: 1} if nu[k - 1] == nu[k] else {}
            lhs = M.apply_tau(k, M.apply_x(k + 1, v))
            _vadd(lhs, M.apply_x(k, M.apply_tau(k, v)), -1)
            diff(lhs, delta, f"tau_{k} x_{k + 1} - x_{k} tau_{k}", j)
            lhs = M.apply_x(k + 1, M.apply_tau(k, v))
            _vadd(lhs, M.apply_tau(k, M.apply_x(k, v)), -1)
            diff(lhs, delta, f"x_{k + 1} tau_{k} - tau_{k} x_{k}", j)
            for l in range(k + 2, n):
                diff(M.apply_tau(k, M.apply_tau(l, v)), M.apply_tau(l, M.apply_tau(k, v)), f"tau_{k} tau_{l} = tau_{l} tau_{k}", j)
            qpoly = alg._poly_in(alg.Q(nu[k - 1], nu[k]), k, n)
            diff(M.apply_tau(k, M.apply_tau(k, v)), _poly_action(M, qpoly, v), f"tau_{k}^2 = Q", j)
            if k + 1 < n:
                lhs = M.apply_word((k + 1, k, k + 1), v)
                _vadd(lhs, M.apply_word((k, k + 1, k), v), -1)
                diff(lhs, _poly_action(M, alg.braid_correction(nu, k), v), f"braid relation at {k}", j)
    return bad

"""Polynomial representation of the type A_infinity KLR algebra.

An independent realization of the defining relations, used only as an oracle
for the rewriting engine: R(beta) acts faithfully on (+)_nu k[x_1..x_n] e(nu) by

    x_k        multiplication,
    tau_k      (s_k f - f) / (x_k - x_{k+1})                if nu_k = nu_{k+1},
               P_{nu_{k+1},nu_k}(x_k, x_{k+1}) s_k f   in e(s_k nu)  otherwise,

with P_ij(u, v) = (u - v)^{d_ij} and d_ij = [j = i + 1].
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Mapping, Sequence, Tuple

from sympy import QQ
from sympy.polys.rings import ring

from . import perms as P

__all__ = ["PolyRep"]

Vec = Dict[Tuple[int, ...], object]  # nu -> polynomial


@lru_cache(maxsize=None)
def _ring(n: int):
    names = ",".join(f"x{k}" for k in range(1, n + 1))
    R, *gens = ring(names, QQ)
    return R, tuple(gens)


class PolyRep:
    def __init__(self, n: int):
        self.n = n
        self.R, self.x = _ring(n)

    def swap(self, f, k: int):
        """s_k f: exchange x_k and x_{k+1}."""
        perm = list(self.x)
        perm[k - 1], perm[k] = perm[k], perm[k - 1]
        return f.compose(list(zip(self.x, perm)))

    def tau(self, k: int, vec: Mapping[Tuple[int, ...], object]) -> Vec:
        out: Vec = {}
        for nu, f in vec.items():
            if nu[k - 1] == nu[k]:
                g = (self.swap(f, k) - f).exquo(self.x[k - 1] - self.x[k])
                mu = nu
            else:
                i, j = nu[k], nu[k - 1]
                g = self.swap(f, k)
                if j == i + 1:
                    g = g * (self.x[k - 1] - self.x[k])
                mu = P.act(P.simple(self.n, k), nu)
            out[mu] = out.get(mu, self.R.zero) + g
        return {nu: f for nu, f in out.items() if f}

    def xmul(self, k: int, vec: Mapping[Tuple[int, ...], object]) -> Vec:
        return {nu: f * self.x[k - 1] for nu, f in vec.items()}

    def act_key(self, key, vec: Mapping[Tuple[int, ...], object], word: Sequence[int]) -> Vec:
        """Action of the basis term tau_{word} x^a e(nu) (word a reduced word of key's w)."""
        w, a, nu = key
        if nu not in vec:
            return {}
        f = vec[nu]
        for k, e in enumerate(a):
            f = f * self.x[k] ** e
        out = {nu: f}
        for k in reversed(word):
            out = self.tau(k, out)
        return out

    def act_elem(self, alg, elem, vec) -> Vec:
        out: Vec = {}
        for key, c in elem.items():
            for nu, f in self.act_key(key, vec, alg.word(key[0])).items():
                out[nu] = out.get(nu, self.R.zero) + f * c
        return {nu: f for nu, f in out.items() if f}

    def act_word(self, word: Sequence[int], vec) -> Vec:
        out = dict(vec)
        for k in reversed(word):
            out = self.tau(k, out)
        return out


# ---------------------------------------------------------------------------
# cross-check against the rewriting engine
# ---------------------------------------------------------------------------

Ops = Tuple[Tuple[str, int], ...]  # generators applied right to left


def _poly_ops(poly) -> list:
    out = []
    for exps, c in poly.items():
        ops = tuple(("x", k) for k, e in enumerate(exps, start=1) for _ in range(e))
        out.append((c, ops))
    return out


def relation_instances(alg, nu: Sequence[int]):
    """All defining relations at the idempotent e(nu), as (name, [(coeff, ops), ...])."""
    n = len(nu)
    out = []
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            out.append((f"x{k}x{l}", [(1, (("x", k), ("x", l))), (-1, (("x", l), ("x", k)))]))
    for k in range(1, n):
        for l in range(1, n + 1):
            if l not in (k, k + 1):
                out.append((f"t{k}x{l}", [(1, (("t", k), ("x", l))), (-1, (("x", l), ("t", k)))]))
        delta = [(-1, ())] if nu[k - 1] == nu[k] else []
        out.append((f"t{k}x{k + 1}", [(1, (("t", k), ("x", k + 1))), (-1, (("x", k), ("t", k)))] + delta))
        out.append((f"x{k + 1}t{k}", [(1, (("x", k + 1), ("t", k))), (-1, (("t", k), ("x", k)))] + delta))
        for l in range(k + 2, n):
            out.append((f"t{k}t{l}", [(1, (("t", k), ("t", l))), (-1, (("t", l), ("t", k)))]))
        q = alg._poly_in(alg.Q(nu[k - 1], nu[k]), k, n)
        out.append((f"t{k}^2", [(1, (("t", k), ("t", k)))] + [(-c, o) for c, o in _poly_ops(q)]))
        if k + 1 < n:
            # ops are applied right to left, so the idempotent sits at the right end
            p = alg.braid_correction(nu, k)
            out.append(
                (
                    f"braid{k}",
                    [(1, (("t", k + 1), ("t", k), ("t", k + 1))), (-1, (("t", k), ("t", k + 1), ("t", k)))]
                    + [(-c, o) for c, o in _poly_ops(p)],
                )
            )
    return out


def _engine_apply(alg, ops: Ops, nu):
    e = alg.idempotent(nu)
    for kind, k in reversed(ops):
        e = alg.left_mul_tau(k, e) if kind == "t" else alg.left_mul_x(k, e)
    return e


def _rep_apply(rep: "PolyRep", ops: Ops, vec):
    for kind, k in reversed(ops):
        vec = rep.tau(k, vec) if kind == "t" else rep.xmul(k, vec)
    return vec


def cross_check(alg, nus: Sequence[Sequence[int]]) -> list:
    """Check every relation at every nu both by normal forms and in the polynomial
    representation, and check that normal forms act like the words they came from.
    Returns a list of failure descriptions."""
    failures = []
    for nu in nus:
        nu = tuple(nu)
        n = len(nu)
        rep = PolyRep(n)
        x = rep.x
        tests = [rep.R.one, x[0] ** 2 * x[-1] - x[n // 2], x[-1] ** 3 + 2 * x[0] * x[-1]]
        for name, terms in relation_instances(alg, nu):
            total = {}
            for c, ops in terms:
                for key, v in _engine_apply(alg, ops, nu).items():
                    s = total.get(key, 0) + c * v
                    if s:
                        total[key] = s
                    else:
                        total.pop(key)
            if total:
                failures.append(f"engine: relation {name} at {nu} leaves {total}")
            for f in tests:
                acc = {}
                for c, ops in terms:
                    for mu, g in _rep_apply(rep, ops, {nu: f}).items():
                        acc[mu] = acc.get(mu, rep.R.zero) + c * g
                if any(acc.values()):
                    failures.append(f"polynomial representation: relation {name} at {nu} fails")
            # normal forms of the relation's words act as the words do
            for c, ops in terms:
                nf = _engine_apply(alg, ops, nu)
                for f in tests:
                    lhs = rep.act_elem(alg, nf, {nu: f})
                    rhs = {mu: g for mu, g in _rep_apply(rep, ops, {nu: f}).items() if g}
                    if lhs != rhs:
                        failures.append(f"normal form of {ops} at {nu} acts incorrectly")
    return failures

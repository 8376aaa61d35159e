"""Normal-form rewriting in the quiver Hecke (KLR) algebra.

Elements are finite sums of basis terms

    tau_{c(w)} x^a e(nu)

keyed by (w, a, nu): w a permutation, a an exponent vector, nu the idempotent
on the right, and c(w) the canonical reduced word of w (min or max policy).
This is the PBW basis R(beta) = (+)_w tau_w k[x] e(nu) with the tau-part on
the left, which is the convenient side for induced modules.

Left multiplication by a generator is computed on basis terms and memoized:

* tau_d tau_{c(w)} e(nu):
    - if s_d w is longer and d is the policy descent of s_d w: a basis term;
    - if s_d w is longer otherwise: one braid move (commutation, or the
      three-term braid relation with its correction polynomial) transports
      the word towards the canonical one;
    - if s_d w is shorter: tau_d^2 e(mu) = Q(x_d, x_{d+1}) e(mu).
* x_k tau_{c(w)} e(nu): push x_k through the first letter of c(w) using
  x_k tau_l e(mu) = tau_l x_{s_l(k)} e(mu) + corr e(mu).

Every recursive call is on a strictly shorter permutation, except the fast
path that produces a basis term, so rewriting terminates.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from . import perms as P

__all__ = ["KLRAlgebra", "Elem", "Poly2", "a_infinity"]

Key = Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]
Elem = Dict[Key, object]
# Q_ij(u, v) as {(deg_u, deg_v): coeff}
Poly2 = Dict[Tuple[int, int], int]


def _add_into(acc: Elem, elem: Mapping[Key, object], scale=1, shift: Optional[Tuple[int, ...]] = None):
    for (w, a, nu), c in elem.items():
        if shift is not None:
            a = tuple(x + y for x, y in zip(a, shift))
        key = (w, a, nu)
        v = acc.get(key, 0) + scale * c
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def a_infinity(i: int, j: int) -> Tuple[Poly2, int]:
    """Cartan data of type A_infinity: Q_ij(u, v) and the pairing (alpha_i, alpha_j).

    Q_{i,i+1}(u, v) = u - v, Q_{i+1,i}(u, v) = v - u, Q_{ij} = 1 if |i-j| > 1,
    Q_{ii} = 0.
    """
    if i == j:
        return {}, 2
    if j == i + 1:
        return {(1, 0): 1, (0, 1): -1}, -1
    if j == i - 1:
        return {(1, 0): -1, (0, 1): 1}, -1
    return {(0, 0): 1}, 0


class KLRAlgebra:
    """The KLR algebra attached to Cartan data given by ``datum(i, j)``.

    ``datum(i, j)`` returns (Q_ij as Poly2, (alpha_i, alpha_j)).  The default
    is type A_infinity with residues in Z.  ``policy`` selects the canonical
    reduced word ('min' = lexicographically minimal).
    """

    def __init__(self, datum: Callable[[int, int], Tuple[Poly2, int]] = a_infinity, policy: str = "min"):
        if policy not in ("min", "max"):
            raise ValueError(f"unknown word policy {policy!r}")
        self.datum = datum
        self.policy = policy
        self._tau_cache: Dict[tuple, Elem] = {}
        self._x_cache: Dict[tuple, Elem] = {}

    # Cartan data --------------------------------------------------------
    def Q(self, i: int, j: int) -> Poly2:
        return self.datum(i, j)[0]

    def pairing(self, i: int, j: int) -> int:
        return self.datum(i, j)[1]

    # words ------------------------------------------------------------------
    def word(self, w: P.Perm) -> Tuple[int, ...]:
        return P.canonical_word(w, self.policy)

    def first_letter(self, w: P.Perm) -> int:
        ds = P.left_descents(w)
        return ds[0] if self.policy == "min" else ds[-1]

    # element constructors -----------------------------------------------
    @staticmethod
    def idempotent(nu: Sequence[int]) -> Elem:
        nu = tuple(nu)
        return {(P.identity(len(nu)), (0,) * len(nu), nu): 1}

    def x(self, k: int, nu: Sequence[int]) -> Elem:
        nu = tuple(nu)
        a = [0] * len(nu)
        a[k - 1] = 1
        return {(P.identity(len(nu)), tuple(a), nu): 1}

    def tau(self, k: int, nu: Sequence[int]) -> Elem:
        """tau_k e(nu)."""
        return self.left_mul_tau(k, self.idempotent(nu))

    def basis_term(self, w: P.Perm, nu: Sequence[int], a: Optional[Sequence[int]] = None) -> Elem:
        n = len(w)
        return {(tuple(w), tuple(a) if a is not None else (0,) * n, tuple(nu)): 1}

    # degrees ---------------------------------------------------------------
    def degree(self, key: Key) -> int:
        w, a, nu = key
        d = sum(ak * self.pairing(nu[k], nu[k]) for k, ak in enumerate(a))
        return d + self.word_degree(self.word(w), nu)

    def word_degree(self, word: Sequence[int], nu: Sequence[int]) -> int:
        """deg tau_{i1} ... tau_{ir} e(nu), reading the word from the right."""
        mu = list(nu)
        d = 0
        for k in reversed(word):
            d -= self.pairing(mu[k - 1], mu[k])
            mu[k - 1], mu[k] = mu[k], mu[k - 1]
        return d

    @staticmethod
    def left_idempotent(key: Key) -> Tuple[int, ...]:
        w, _, nu = key
        return P.act(w, nu)

    # multiplication ------------------------------------------------------
    def left_mul_tau(self, d: int, elem: Mapping[Key, object]) -> Elem:
        out: Elem = {}
        for (w, a, nu), c in elem.items():
            _add_into(out, self._tau_basis(d, w, nu), c, a)
        return out

    def left_mul_x(self, k: int, elem: Mapping[Key, object]) -> Elem:
        out: Elem = {}
        for (w, a, nu), c in elem.items():
            _add_into(out, self._x_basis(k, w, nu), c, a)
        return out

    def left_mul_e(self, mu: Sequence[int], elem: Mapping[Key, object]) -> Elem:
        mu = tuple(mu)
        return {key: c for key, c in elem.items() if P.act(key[0], key[2]) == mu}

    def left_mul_monomial(self, exps: Sequence[int], elem: Mapping[Key, object]) -> Elem:
        out = dict(elem)
        for k, e in enumerate(exps, start=1):
            for _ in range(e):
                out = self.left_mul_x(k, out)
        return out

    def left_mul_poly(self, poly: Mapping[Tuple[int, ...], object], elem: Mapping[Key, object]) -> Elem:
        out: Elem = {}
        for exps, c in poly.items():
            _add_into(out, self.left_mul_monomial(exps, elem), c)
        return out

    def left_mul_word(self, word: Sequence[int], elem: Mapping[Key, object]) -> Elem:
        for k in reversed(word):
            elem = self.left_mul_tau(k, elem)
        return dict(elem)

    def nf_word(self, word: Sequence[int], nu: Sequence[int]) -> Elem:
        """Normal form of tau_{i1} ... tau_{ir} e(nu) for any (not necessarily reduced) word."""
        return self.left_mul_word(word, self.idempotent(nu))

    def mul(self, A: Mapping[Key, object], B: Mapping[Key, object]) -> Elem:
        out: Elem = {}
        for (w1, a1, nu1), c1 in A.items():
            for (w2, a2, nu2), c2 in B.items():
                if P.act(w2, nu2) != nu1:
                    continue
                t = self.left_mul_monomial(a1, {(w2, (0,) * len(a2), nu2): 1})
                t = self.left_mul_word(self.word(w1), t)
                _add_into(out, t, c1 * c2, a2)
        return out

    @staticmethod
    def add(*elems: Mapping[Key, object], scales: Optional[Iterable[object]] = None) -> Elem:
        out: Elem = {}
        scales = list(scales) if scales is not None else [1] * len(elems)
        for e, s in zip(elems, scales):
            _add_into(out, e, s)
        return out

    # rewriting core ------------------------------------------------------
    def _poly_in(self, q: Poly2, k: int, n: int) -> Dict[Tuple[int, ...], object]:
        """Q(x_k, x_{k+1}) as a polynomial in x_1..x_n."""
        out = {}
        for (du, dv), c in q.items():
            e = [0] * n
            e[k - 1] += du
            e[k] += dv
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return out

    def braid_correction(self, mu: Sequence[int], k: int) -> Dict[Tuple[int, ...], object]:
        """p with (tau_{k+1} tau_k tau_{k+1} - tau_k tau_{k+1} tau_k) e(mu) = p(x) e(mu).

        Nonzero only when mu_k = mu_{k+2}; then
        p = (Q_{ij}(x_k, x_{k+1}) - Q_{ij}(x_{k+2}, x_{k+1})) / (x_k - x_{k+2}).
        """
        n = len(mu)
        i, j = mu[k - 1], mu[k]
        if mu[k - 1] != mu[k + 1]:
            return {}
        out: Dict[Tuple[int, ...], object] = {}
        for (du, dv), c in self.Q(i, j).items():
            # (u^du - w^du)/(u - w) = sum_{s} u^s w^{du-1-s}
            for s in range(du):
                e = [0] * n
                e[k - 1] += s
                e[k + 1] += du - 1 - s
                e[k] += dv
                out[tuple(e)] = out.get(tuple(e), 0) + c
        return {e: c for e, c in out.items() if c}

    def _tau_basis(self, d: int, w: P.Perm, nu: Tuple[int, ...]) -> Elem:
        key = (d, w, nu)
        hit = self._tau_cache.get(key)
        if hit is not None:
            return hit
        n = len(w)
        zero = (0,) * n
        u = P.left_mul_simple(d, w)
        inv = P.inverse(w)
        if inv[d - 1] < inv[d]:
            # s_d w is longer
            t = self.first_letter(u)
            if t == d:
                res = {(u, zero, nu): 1}
            else:
                m = 2 if abs(d - t) > 1 else 3
                a = (d, t, d)[:m]
                a2 = (t, d, t)[:m]
                w2 = P.compose(P.inverse(P.word_to_perm(a, n)), u)
                base = {(w2, zero, nu): 1}
                # tau_{a[1:]} tau_{c(w2)} = tau_{c(w)} + lower
                nfA1 = self.left_mul_word(a[1:], base)
                lower = dict(nfA1)
                _add_into(lower, {(w, zero, nu): 1}, -1)
                # tau_a tau_{c(w2)} = tau_t tau_{a2[1:]} tau_{c(w2)} (+ braid correction)
                res = self.left_mul_tau(t, self.left_mul_word(a2[1:], base))
                if m == 3:
                    mu = P.act(w2, nu)
                    k = min(d, t)
                    corr = self.braid_correction(mu, k)
                    if corr:
                        # tau_k tau_{k+1} tau_k = tau_{k+1} tau_k tau_{k+1} - p
                        sign = -1 if d == k else 1
                        _add_into(res, self.left_mul_poly(corr, base), sign)
                _add_into(res, self.left_mul_tau(d, lower), -1)
        else:
            # s_d w is shorter: tau_d tau_d tau_{c(w1)} = Q tau_{c(w1)}
            w1 = u
            base = {(w1, zero, nu): 1}
            nfA = self.left_mul_tau(d, base)
            lower = dict(nfA)
            _add_into(lower, {(w, zero, nu): 1}, -1)
            mu = P.act(w1, nu)
            qpoly = self._poly_in(self.Q(mu[d - 1], mu[d]), d, n)
            res = self.left_mul_poly(qpoly, base)
            _add_into(res, self.left_mul_tau(d, lower), -1)
        self._tau_cache[key] = res
        return res

    def _x_basis(self, k: int, w: P.Perm, nu: Tuple[int, ...]) -> Elem:
        key = (k, w, nu)
        hit = self._x_cache.get(key)
        if hit is not None:
            return hit
        n = len(w)
        zero = (0,) * n
        if w == P.identity(n):
            a = [0] * n
            a[k - 1] = 1
            res = {(w, tuple(a), nu): 1}
        else:
            l = self.first_letter(w)
            w1 = P.left_mul_simple(l, w)
            mu = P.act(w1, nu)
            k2 = l + 1 if k == l else (l if k == l + 1 else k)
            res = self.left_mul_tau(l, self._x_basis(k2, w1, nu))
            if mu[l - 1] == mu[l]:
                # x_l tau_l e = tau_l x_{l+1} e - e ; x_{l+1} tau_l e = tau_l x_l e + e
                if k == l:
                    _add_into(res, {(w1, zero, nu): 1}, -1)
                elif k == l + 1:
                    _add_into(res, {(w1, zero, nu): 1}, 1)
        self._x_cache[key] = res
        return res

    def cache_size(self) -> int:
        return len(self._tau_cache) + len(self._x_cache)

"""Normalization data for the commuting family of central objects.

Everything here is an exact rational function in z (or in u, v):

* ``g_of_z``        g(z) = q^N (z - q^-2N)(z + q^-N-2) / ((z - q^-2)(z + q^-N))
* ``a11``           the Pochhammer product whose N-fold shifted product is 1/g
* ``psi``           psi_a(z), either through g (normative) or by the displayed
                    closed-form product (kept for comparison)
* ``phi``           the recursion building phi_k from the psi_a
* ``c_ij``          c_ij(u, v) = phi_{i-j}(v) / phi_{j-i}(u) * phi_{j-i}(0)
* ``verify_*``      exact checks of the conditions and of the main identity
                    f_{a,j}(z) g(q^{2(j-a-N)}(z+1)) prod_k P_{k,j}(0, z) = 1.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

from .arith import (
    BivarRatFunc,
    FactoredRatZ,
    QFactored,
    LaurentQ,
    PochhammerExpr,
    RatFuncZ,
    pochhammer_reduce,
)

__all__ = [
    "PsiDefinition",
    "CheckResult",
    "f_aj",
    "f_aj_ratfunc",
    "g_of_z",
    "a11",
    "shifted_a11_product",
    "verify_a11_telescoping",
    "psi",
    "psi_factored",
    "psi_expanded",
    "phi",
    "phi_factored",
    "g_factored",
    "SeparableC",
    "c_ij_separable",
    "c_ij",
    "P_kj_at_u0",
    "verify_main_identity",
    "verify_psi_conditions",
    "verify_phi_lemma",
    "verify_cij_conditions",
    "compare_psi_definitions",
    "run_suite",
]


class PsiDefinition(Enum):
    VIA_G = "g"
    DISPLAYED_PRODUCT = "product"

    @classmethod
    def parse(cls, s) -> "PsiDefinition":
        if isinstance(s, PsiDefinition):
            return s
        for d in cls:
            if s in (d.value, d.name):
                return d
        raise ValueError(f"unknown psi definition {s!r}")


@dataclass
class CheckResult:
    name: str
    params: Dict[str, object]
    ok: bool
    residual: Optional[str] = None

    def to_dict(self):
        d = {"check": self.name, "params": self.params, "ok": self.ok}
        if self.residual is not None:
            d["residual"] = self.residual
        return d


def _q(m: int) -> RatFuncZ:
    return RatFuncZ(LaurentQ.q_power(m))


_Z = RatFuncZ.z()
_ONE = RatFuncZ.const(1)


# ---------------------------------------------------------------------------
# f, g and a11
# ---------------------------------------------------------------------------


def f_aj(a: int, j: int, N: int) -> Tuple[int, int]:
    """f_{a,j} as (sign, z-exponent):
    (-1)^{[j = a+N]} z^{-[a <= j < a+N-1] - [j = a+N]}."""
    hit = int(j == a + N)
    return (-1) ** hit, -int(a <= j < a + N - 1) - hit


def f_aj_ratfunc(a: int, j: int, N: int) -> RatFuncZ:
    s, e = f_aj(a, j, N)
    return s * _Z**e


def g_of_z(N: int, w: RatFuncZ = None) -> RatFuncZ:
    """g evaluated at w (default: the variable z itself)."""
    if N < 2:
        raise ValueError("N >= 2 required")
    w = _Z if w is None else w
    return _q(N) * (w - _q(-2 * N)) * (w + _q(-N - 2)) / ((w - _q(-2)) * (w + _q(-N)))


def a11(N: int) -> PochhammerExpr:
    """a11(z) = q [N+2]'[N-2]' / ([N]'[N]') * [0][2N] / ([2][2N-2]), step q^{2N}."""
    M = 2 * N
    P, Pp = PochhammerExpr.bracket, PochhammerExpr.bracket_prime
    num = PochhammerExpr.monomial(M, LaurentQ.q_power(1)) * Pp(N + 2, M) * Pp(N - 2, M) * P(0, M) * P(2 * N, M)
    den = Pp(N, M, 2) * P(2, M) * P(2 * N - 2, M)
    return num / den


def shifted_a11_product(N: int) -> PochhammerExpr:
    """prod_{k=1}^{N} a11(q^{2k} z), built with the shift law [a](q^{2k}z) = [a+2k](z)."""
    base = a11(N)
    out = PochhammerExpr.one(2 * N)
    for k in range(1, N + 1):
        out = out * base.shift(k)
    return out


def verify_a11_telescoping(N: int, series_order: int = 10) -> CheckResult:
    """Reduce the shifted product and compare with 1/g(z); cross-check by series."""
    e = shifted_a11_product(N)
    r = pochhammer_reduce(e)
    target = g_of_z(N).inverse()
    ok = r == target
    # independent expansion of the infinite products
    v, ser = r.series(series_order)
    expanded = e.series(series_order)
    ser_ok = v >= 0 and all(
        expanded[i] == (ser[i - v] if i >= v else 0) for i in range(series_order)
    )
    res = None if ok and ser_ok else f"reduced={r}; target={target}; series_ok={ser_ok}"
    return CheckResult("a11_telescoping", {"N": N}, ok and ser_ok, res)


# ---------------------------------------------------------------------------
# psi, phi, c
# ---------------------------------------------------------------------------
#
# psi, phi and c are products of shifted linear factors (z + 1 +- q^m), so the
# recursions run on FactoredRatZ values; the expanded RatFuncZ / BivarRatFunc
# forms are produced on request and serve as an independent cross-check.

_memo: Dict[tuple, object] = {}
_memo_lock = threading.RLock()


def _cached(key, compute):
    with _memo_lock:
        if key in _memo:
            return _memo[key]
    val = compute()
    with _memo_lock:
        _memo.setdefault(key, val)
        return _memo[key]


def _lq(m: int, c=1) -> LaurentQ:
    return LaurentQ.q_power(m, c)


def g_factored(N: int) -> FactoredRatZ:
    """g(z) = q^N (z - q^-2N)(z + q^-N-2) / ((z - q^-2)(z + q^-N)) in factored form."""
    return FactoredRatZ(
        _q(N),
        {_lq(-2 * N): 1, _lq(-N - 2, -1): 1, _lq(-2): -1, _lq(-N, -1): -1},
    )


def _psi_sign(a: int, N: int) -> int:
    return -1 if 1 - N <= a <= -1 else 1


def psi_factored(a: int, N: int, definition=PsiDefinition.VIA_G) -> FactoredRatZ:
    definition = PsiDefinition.parse(definition)

    def compute():
        s = _psi_sign(a, N)
        if definition is PsiDefinition.VIA_G:
            e = int(a == 0) - int(a == 1 - N)
            gw = g_factored(N).affine_substitute(_lq(2 * (-a - N)), 1)
            return s * FactoredRatZ.z() ** e / gw
        # (z+1+q^{2a+N})(z+1-q^{2a+2N-2})^[a != 1-N] / ((z+1+q^{2a+N-2})(z+1-q^{2a})^[a != 0])
        roots = {-1 - _lq(2 * a + N): 1, -1 - _lq(2 * a + N - 2): -1}
        if a != 1 - N:
            r = -1 + _lq(2 * a + 2 * N - 2)
            roots[r] = roots.get(r, 0) + 1
        if a != 0:
            r = -1 + _lq(2 * a)
            roots[r] = roots.get(r, 0) - 1
        return FactoredRatZ(s, roots)

    return _cached(("psi", a, N, definition), compute)


def psi(a: int, N: int, definition=PsiDefinition.VIA_G) -> RatFuncZ:
    """psi_a(z) as an expanded rational function."""
    return psi_factored(a, N, definition).to_ratfunc()


def psi_expanded(a: int, N: int, definition=PsiDefinition.VIA_G) -> RatFuncZ:
    """psi_a computed directly with RatFuncZ arithmetic (oracle for the factored path)."""
    definition = PsiDefinition.parse(definition)
    s = _psi_sign(a, N)
    if definition is PsiDefinition.VIA_G:
        e = int(a == 0) - int(a == 1 - N)
        w = _q(2 * (-a - N)) * (_Z + 1)
        return s * _Z**e / g_of_z(N, w)
    z1 = _Z + 1
    num = (z1 + _q(2 * a + N)) * ((z1 - _q(2 * a + 2 * N - 2)) if a != 1 - N else _ONE)
    den = (z1 + _q(2 * a + N - 2)) * ((z1 - _q(2 * a)) if a != 0 else _ONE)
    return s * num / den


def phi_factored(k: int, N: int, definition=PsiDefinition.VIA_G) -> FactoredRatZ:
    """phi_k from the recursion: phi_0 = 1, phi_k = 1/psi_{k-N} for 1 <= k <= N-2,
    phi_{N-1} = psi_0 / prod_{k=1}^{N-2} phi_k, and the two shift rules."""
    definition = PsiDefinition.parse(definition)
    key = ("phi", k, N, definition)
    with _memo_lock:
        if key in _memo:
            return _memo[key]
    P = lambda a: psi_factored(a, N, definition)  # noqa: E731
    # walk the ladder k, k -+ N, ... iteratively down to the base range 0..N-1
    if k >= N:
        val = P(k - N + 1) / P(k - N) * phi_factored(k - N, N, definition)
    elif k <= -1:
        val = P(k) / P(k + 1) * phi_factored(k + N, N, definition)
    elif k == 0:
        val = FactoredRatZ(1)
    elif k <= N - 2:
        val = P(k - N).inverse()
    else:
        val = P(0)
        for i in range(1, N - 1):
            val = val / phi_factored(i, N, definition)
    with _memo_lock:
        _memo.setdefault(key, val)
        return _memo[key]


def phi(k: int, N: int, definition=PsiDefinition.VIA_G) -> RatFuncZ:
    return phi_factored(k, N, definition).to_ratfunc()


def _at_zero(f) -> QFactored:
    try:
        return f.at_zero()
    except ZeroDivisionError:
        raise ArithmeticError(f"function is not regular at z=0: {f}") from None


@dataclass(frozen=True)
class SeparableC:
    """kappa * V(v) / U(u) with U, V monic factored functions and kappa in Q(q).

    c_ij(u, v) has this shape; monic parts make the representation unique, so
    equality and the identity test are structural.
    """

    kappa: QFactored
    u_part: FactoredRatZ
    v_part: FactoredRatZ

    @classmethod
    def build(cls, kappa, u_part: FactoredRatZ, v_part: FactoredRatZ) -> "SeparableC":
        k = QFactored.coerce(kappa) * v_part.const / u_part.const
        return cls(k, FactoredRatZ(1, u_part.roots), FactoredRatZ(1, v_part.roots))

    def __mul__(self, other: "SeparableC") -> "SeparableC":
        # u_part is a denominator: (1/U1)(1/U2) = 1/(U1 U2)
        return SeparableC.build(self.kappa * other.kappa, self.u_part * other.u_part, self.v_part * other.v_part)

    def swap(self) -> "SeparableC":
        """Exchange u and v: kappa V(u) / U(v) = kappa (1/U)(v) / (1/V)(u)."""
        return SeparableC.build(self.kappa, self.v_part.inverse(), self.u_part.inverse())

    def is_one(self) -> bool:
        return not self.u_part.roots and not self.v_part.roots and self.kappa == 1

    def __eq__(self, other):
        if not isinstance(other, SeparableC):
            return NotImplemented
        return self.u_part == other.u_part and self.v_part == other.v_part and self.kappa == other.kappa

    def __hash__(self):
        return hash((self.u_part, self.v_part))

    def at_u_zero(self) -> FactoredRatZ:
        return self.v_part * (self.kappa / _at_zero(self.u_part))

    def to_bivar(self) -> BivarRatFunc:
        V = BivarRatFunc.from_ratfunc(self.v_part.to_ratfunc(), "v")
        U = BivarRatFunc.from_ratfunc(self.u_part.to_ratfunc(), "u")
        K = BivarRatFunc.from_ratfunc(self.kappa.to_ratfunc(), "u")
        return K * V / U


def c_ij_separable(i: int, j: int, N: int, definition=PsiDefinition.VIA_G) -> SeparableC:
    definition = PsiDefinition.parse(definition)

    def compute():
        num = phi_factored(i - j, N, definition)
        den = phi_factored(j - i, N, definition)
        return SeparableC.build(_at_zero(den), den, num)

    return _cached(("c", i, j, N, definition), compute)


def c_ij(i: int, j: int, N: int, definition=PsiDefinition.VIA_G) -> BivarRatFunc:
    """c_ij(u, v) = phi_{i-j}(v) / phi_{j-i}(u) * phi_{j-i}(0)."""
    return c_ij_separable(i, j, N, definition).to_bivar()


def P_kj_at_u0(k: int, j: int, N: int, definition=PsiDefinition.VIA_G) -> FactoredRatZ:
    """P_{k,j}(0, z) = c_{k,j}(0, z) (-z)^{[j = k+1]}."""
    c = c_ij_separable(k, j, N, definition).at_u_zero()
    return c * (-FactoredRatZ.z()) ** int(j == k + 1)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def verify_main_identity(a: int, j: int, N: int, definition=PsiDefinition.VIA_G) -> CheckResult:
    definition = PsiDefinition.parse(definition)
    sgn, e = f_aj(a, j, N)
    lhs = sgn * FactoredRatZ.z() ** e * g_factored(N).affine_substitute(_lq(2 * (j - a - N)), 1)
    for k in range(a, a + N):
        lhs = lhs * P_kj_at_u0(k, j, N, definition)
    ok = lhs == 1
    return CheckResult(
        "main_identity",
        {"a": a, "j": j, "N": N, "psi_def": definition.value},
        ok,
        None if ok else str(lhs),
    )


def verify_psi_conditions(N: int, definition=PsiDefinition.VIA_G, a_range: Iterable[int] = range(-12, 13)) -> List[CheckResult]:
    """psi_a(0) psi_{-a-N+1}(0) = 1 for a in a_range, and prod_{k=1-N}^{0} psi_k(0) = 1."""
    definition = PsiDefinition.parse(definition)
    out = []
    for a in a_range:
        val = _at_zero(psi_factored(a, N, definition)) * _at_zero(psi_factored(-a - N + 1, N, definition))
        out.append(CheckResult("psi_pairing", {"a": a, "N": N, "psi_def": definition.value}, val == 1, None if val == 1 else str(val)))
    prod = QFactored()
    for k in range(1 - N, 1):
        prod = prod * _at_zero(psi_factored(k, N, definition))
    out.append(CheckResult("psi_product", {"N": N, "psi_def": definition.value}, prod == 1, None if prod == 1 else str(prod)))
    return out


def verify_phi_lemma(N: int, definition=PsiDefinition.VIA_G, a_range: Iterable[int] = range(-8, 9)) -> List[CheckResult]:
    """phi_a(0) phi_{-a}(0) = 1 and prod_{k=a}^{a+N-1} phi_k = psi_a."""
    definition = PsiDefinition.parse(definition)
    out = []
    for a in a_range:
        val = _at_zero(phi_factored(a, N, definition)) * _at_zero(phi_factored(-a, N, definition))
        out.append(CheckResult("phi_pairing", {"a": a, "N": N, "psi_def": definition.value}, val == 1, None if val == 1 else str(val)))
        prod = FactoredRatZ(1)
        for k in range(a, a + N):
            prod = prod * phi_factored(k, N, definition)
        resid = prod / psi_factored(a, N, definition)
        ok = resid == 1
        out.append(CheckResult("phi_window_product", {"a": a, "N": N, "psi_def": definition.value}, ok, None if ok else str(resid)))
    return out


def verify_cij_conditions(N: int, definition=PsiDefinition.VIA_G, span: Optional[int] = None) -> List[CheckResult]:
    """c_ii = 1, c_ij(u,v) c_ji(v,u) = 1 and c_{i+1,j+1} = c_ij for |i-j| <= span (default 2N)."""
    definition = PsiDefinition.parse(definition)
    span = 2 * N if span is None else span
    out = []
    for i in (0, 1):
        c = c_ij_separable(i, i, N, definition)
        out.append(CheckResult("c_diagonal", {"i": i, "N": N, "psi_def": definition.value}, c.is_one()))
    for d in range(-span, span + 1):
        i, j = d, 0
        prod = c_ij_separable(i, j, N, definition) * c_ij_separable(j, i, N, definition).swap()
        ok = prod.is_one()
        out.append(CheckResult("c_unitarity", {"i": i, "j": j, "N": N, "psi_def": definition.value}, ok, None if ok else str(prod.kappa)))
        same = c_ij_separable(i + 1, j + 1, N, definition) == c_ij_separable(i, j, N, definition)
        out.append(CheckResult("c_translation", {"i": i, "j": j, "N": N, "psi_def": definition.value}, same))
    return out


def compare_psi_definitions(N: int, a_range: Iterable[int] = range(-8, 9)) -> List[Dict[str, object]]:
    """Ratio DisplayedProduct / ViaG for each a (reported, never reconciled)."""
    out = []
    for a in a_range:
        ratio = psi_factored(a, N, PsiDefinition.DISPLAYED_PRODUCT) / psi_factored(a, N, PsiDefinition.VIA_G)
        out.append({"a": a, "N": N, "ratio": str(ratio), "equal": ratio == 1})
    return out


def run_suite(
    N: int,
    definition=PsiDefinition.VIA_G,
    a_range: Iterable[int] = range(-8, 9),
    identity_span: Optional[int] = None,
) -> Dict[str, object]:
    """All checks for one N, as a JSON-ready dictionary."""
    definition = PsiDefinition.parse(definition)
    a_range = list(a_range)
    span = 2 * N if identity_span is None else identity_span
    checks: List[CheckResult] = [verify_a11_telescoping(N)]
    checks += verify_psi_conditions(N, definition, range(-12, 13))
    checks += verify_phi_lemma(N, definition, a_range)
    checks += verify_cij_conditions(N, definition)
    for a in a_range:
        for j in range(a - span, a + span + 1):
            checks.append(verify_main_identity(a, j, N, definition))
    failed = [c for c in checks if not c.ok]
    return {
        "schema": "swduality.rseries/1",
        "N": N,
        "psi_def": definition.value,
        "n_checks": len(checks),
        "n_failed": len(failed),
        "ok": not failed,
        "checks": [c.to_dict() for c in checks],
        "psi_comparison": compare_psi_definitions(N, a_range),
    }

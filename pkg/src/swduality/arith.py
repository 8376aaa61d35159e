"""Exact arithmetic: Laurent polynomials in q, rational functions in z (and
in u, v) over Q(q), spectral-parameter points and a q-Pochhammer calculus.

Rational functions are stored as sympy sparse fraction-field elements, which
already keep numerator and denominator coprime.  On top of that we expose a
canonical form with Laurent-polynomial coefficients so that printing, hashing
and structural comparison do not depend on sympy internals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from sympy.polys.domains import QQ
from sympy.polys.fields import field

__all__ = [
    "LaurentQ",
    "PolyZ",
    "RatFuncZ",
    "BivarRatFunc",
    "SpectralParam",
    "PochhammerExpr",
    "FactoredRatZ",
    "QFactored",
    "canonicalize_signed_q_power",
    "zero_order",
    "pochhammer_reduce",
    "series_of_products",
    "UndefinedOrderError",
    "NonTelescopingError",
]


class UndefinedOrderError(ValueError):
    """Raised when asking for the order of vanishing of the zero function."""


class NonTelescopingError(ValueError):
    """Raised when a Pochhammer product does not collapse to a finite ratio."""


# Fraction fields used as backends.  They are module-level constants (never
# mutated), so sharing them between threads is safe.
QZ, _Q, _Z = field("q,z", QQ)
QUV, _QB, _U, _V = field("q,u,v", QQ)
_RQZ = QZ.ring
_RQUV = QUV.ring


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    # gmpy2.mpq / PythonMPQ both expose numerator and denominator
    return Fraction(int(x.numerator), int(x.denominator))


# ---------------------------------------------------------------------------
# Laurent polynomials in q
# ---------------------------------------------------------------------------


class LaurentQ:
    """A Laurent polynomial in q with rational coefficients.

    Stored as a mapping exponent -> Fraction with no zero entries.

    >>> q = LaurentQ.q_power(1)
    >>> str(q**-1 + 2 + q)
    'q^-1 + 2 + q'
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentQ":
        return cls({0: c})

    @classmethod
    def q_power(cls, m: int, c=1) -> "LaurentQ":
        return cls({m: c})

    @classmethod
    def coerce(cls, x) -> "LaurentQ":
        if isinstance(x, LaurentQ):
            return x
        if isinstance(x, SpectralParam):
            return x.to_laurent()
        return cls.const(x)

    # inspection ---------------------------------------------------------
    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def valuation(self) -> int:
        if not self._c:
            raise ValueError("valuation of zero")
        return min(self._c)

    def degree(self) -> int:
        if not self._c:
            raise ValueError("degree of zero")
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def coefficient(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def evaluate(self, q: Fraction) -> Fraction:
        q = _frac(q)
        return sum((c * q**e for e, c in self._c.items()), Fraction(0))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = LaurentQ.coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentQ(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentQ({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-LaurentQ.coerce(other))

    def __rsub__(self, other):
        return LaurentQ.coerce(other) - self

    def __mul__(self, other):
        other = LaurentQ.coerce(other)
        c: Dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentQ(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("only monomials are invertible in Q[q, q^-1]")
            (e, v), = self._c.items()
            return LaurentQ({e * n: v**n})
        result = LaurentQ.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentQ.const(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # conversions --------------------------------------------------------
    def to_sympy(self, K=QZ, qgen=None):
        """Element of a sympy fraction field whose first generator is q."""
        q = K.gens[0] if qgen is None else qgen
        out = K.zero
        for e, v in self._c.items():
            out += K(QQ(v.numerator, v.denominator)) * q**e
        return out

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            if e == 0:
                mono = str(v)
            else:
                qe = "q" if e == 1 else f"q^{e}"
                if v == 1:
                    mono = qe
                elif v == -1:
                    mono = "-" + qe
                else:
                    mono = f"{v}*{qe}"
            parts.append(mono)
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s

    def __repr__(self):
        return f"LaurentQ({str(self)!r})"

    def to_json(self):
        """{exponent: [numerator, denominator]} with all entries as strings."""
        return {str(e): [str(v.numerator), str(v.denominator)] for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data) -> "LaurentQ":
        return cls({int(e): Fraction(int(n), int(d)) for e, (n, d) in data.items()})


# ---------------------------------------------------------------------------
# Spectral parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SpectralParam:
    """The point sign * (-q)**exp of the group {+-1} x (-q)^Z."""

    sign: int
    exp: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __mul__(self, other: "SpectralParam") -> "SpectralParam":
        return SpectralParam(self.sign * other.sign, self.exp + other.exp)

    def inverse(self) -> "SpectralParam":
        return SpectralParam(self.sign, -self.exp)

    def __truediv__(self, other: "SpectralParam") -> "SpectralParam":
        return self * other.inverse()

    def __neg__(self):
        return SpectralParam(-self.sign, self.exp)

    def to_laurent(self) -> LaurentQ:
        return LaurentQ.q_power(self.exp, self.sign * (-1) ** (self.exp % 2))

    def __str__(self):
        body = f"(-q)^{self.exp}"
        return body if self.sign == 1 else "-" + body

    @classmethod
    def parse(cls, text: str) -> "SpectralParam":
        """Parse ``"(-q)^p"``, ``"-(-q)^p"`` or the compact ``"s,p"`` form."""
        t = text.strip().replace(" ", "")
        if "," in t:
            s, p = t.split(",")
            return cls(int(s), int(p))
        sign = 1
        if t.startswith("-("):
            sign, t = -1, t[1:]
        elif t.startswith("+("):
            t = t[1:]
        if not t.startswith("(-q)"):
            raise ValueError(f"cannot parse spectral parameter {text!r}")
        rest = t[4:]
        p = 1 if rest == "" else int(rest.lstrip("^"))
        return cls(sign, p)


def canonicalize_signed_q_power(sign: int, m: int) -> SpectralParam:
    """Rewrite sign * q**m as eps * (-q)**p; always p = m."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return SpectralParam(sign * (-1) ** (m % 2), m)


# ---------------------------------------------------------------------------
# Polynomials in z over LaurentQ
# ---------------------------------------------------------------------------


class PolyZ:
    """Polynomial in z whose coefficients are LaurentQ (index = z-degree)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [LaurentQ.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: Tuple[LaurentQ, ...] = tuple(cs)

    @classmethod
    def z(cls) -> "PolyZ":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "PolyZ":
        return cls([c])

    @classmethod
    def linear_factor(cls, x: SpectralParam) -> "PolyZ":
        """The monic factor z - x."""
        return cls([-x.to_laurent(), 1])

    def is_zero(self):
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def trailing_degree(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        raise ValueError("trailing degree of zero")

    def __add__(self, other):
        other = other if isinstance(other, PolyZ) else PolyZ.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = LaurentQ()
        return PolyZ(
            (self.coeffs[i] if i < len(self.coeffs) else zero)
            + (other.coeffs[i] if i < len(other.coeffs) else zero)
            for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return PolyZ(-c for c in self.coeffs)

    def __sub__(self, other):
        other = other if isinstance(other, PolyZ) else PolyZ.const(other)
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, PolyZ) else PolyZ.const(other)
        if self.is_zero() or other.is_zero():
            return PolyZ()
        out = [LaurentQ() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return PolyZ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = PolyZ.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, PolyZ):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def scale_z(self, c) -> "PolyZ":
        """Substitute z -> c*z for a LaurentQ or SpectralParam c."""
        c = LaurentQ.coerce(c)
        out, p = [], LaurentQ.const(1)
        for a in self.coeffs:
            out.append(a * p)
            p = p * c
        return PolyZ(out)

    def to_sympy(self, K=QZ):
        z = K.gens[-1] if K is QZ else K.gens[1]
        out = K.zero
        for i, a in enumerate(self.coeffs):
            out += a.to_sympy(K) * z**i
        return out

    def to_ratfunc(self) -> "RatFuncZ":
        return RatFuncZ(self.to_sympy())

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            zi = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not zi:
                terms.append(str(a))
            elif a == 1:
                terms.append(zi)
            elif a == -1:
                terms.append("-" + zi)
            elif a.is_monomial():
                terms.append(f"{a}*{zi}")
            else:
                terms.append(f"({a})*{zi}")
        s = terms[0]
        for t in terms[1:]:
            s += " - " + t[1:] if t.startswith("-") else " + " + t
        return s

    def __repr__(self):
        return f"PolyZ({str(self)!r})"


def _poly_to_polyz(p, qi=0, zi=1) -> PolyZ:
    """Convert a sympy polynomial in (q, z) to PolyZ, exponents read from p.terms()."""
    by_z: Dict[int, Dict[int, Fraction]] = {}
    for monom, c in p.terms():
        by_z.setdefault(monom[zi], {})[monom[qi]] = _frac(c)
    if not by_z:
        return PolyZ()
    return PolyZ(LaurentQ(by_z.get(i, {})) for i in range(max(by_z) + 1))


# ---------------------------------------------------------------------------
# Rational functions in z
# ---------------------------------------------------------------------------


class RatFuncZ:
    """A rational function in z over Q(q).

    Equality is decided by cross-multiplication; the canonical form (see
    ``canonical``) is used for hashing and printing.
    """

    __slots__ = ("_f", "_canon")

    def __init__(self, f):
        if isinstance(f, RatFuncZ):
            f = f._f
        elif isinstance(f, PolyZ):
            f = f.to_sympy()
        elif isinstance(f, LaurentQ):
            f = f.to_sympy()
        elif isinstance(f, SpectralParam):
            f = f.to_laurent().to_sympy()
        elif not (hasattr(f, "field") and f.field == QZ):
            f = QZ(_sympy_scalar(f))
        self._f = f
        self._canon = None

    # construction -------------------------------------------------------
    @classmethod
    def z(cls) -> "RatFuncZ":
        return cls(_Z)

    @classmethod
    def q(cls) -> "RatFuncZ":
        return cls(_Q)

    @classmethod
    def const(cls, c) -> "RatFuncZ":
        return cls(LaurentQ.coerce(c))

    @classmethod
    def from_polys(cls, num: PolyZ, den: PolyZ) -> "RatFuncZ":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        return cls(num.to_sympy() / den.to_sympy())

    @property
    def sympy(self):
        return self._f

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _lift(x):
        if isinstance(x, RatFuncZ):
            return x._f
        return RatFuncZ(x)._f

    def __add__(self, other):
        return RatFuncZ(self._f + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return RatFuncZ(self._f - self._lift(other))

    def __rsub__(self, other):
        return RatFuncZ(self._lift(other) - self._f)

    def __neg__(self):
        return RatFuncZ(-self._f)

    def __mul__(self, other):
        return RatFuncZ(self._f * self._lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFuncZ(self._f / o)

    def __rtruediv__(self, other):
        if not self._f:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFuncZ(self._lift(other) / self._f)

    def __pow__(self, n: int):
        if n < 0 and not self._f:
            raise ZeroDivisionError("negative power of zero")
        return RatFuncZ(self._f**n)

    def inverse(self):
        return RatFuncZ.const(1) / self

    def is_zero(self):
        return not self._f

    def __bool__(self):
        return bool(self._f)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentQ, PolyZ, SpectralParam)):
            other = RatFuncZ(other)
        if not isinstance(other, RatFuncZ):
            return NotImplemented
        a, b = self._f, other._f
        return a.numer * b.denom == b.numer * a.denom

    def __hash__(self):
        return hash(self.canonical())

    # canonical form -----------------------------------------------------
    def canonical(self) -> Tuple[PolyZ, PolyZ]:
        """(numerator, denominator) with coprime PolyZ entries.

        The denominator is scaled so that its lowest-z nonzero coefficient
        has lowest q-term exactly ``1 * q^0``.
        """
        if self._canon is None:
            num = _poly_to_polyz(self._f.numer)
            den = _poly_to_polyz(self._f.denom)
            self._canon = _normalize_pair(num, den)
        return self._canon

    def numerator(self) -> PolyZ:
        return self.canonical()[0]

    def denominator(self) -> PolyZ:
        return self.canonical()[1]

    def is_polynomial(self) -> bool:
        return self.denominator().degree() == 0

    def is_constant(self) -> bool:
        return self._f.numer.degree(1) <= 0 and self._f.denom.degree(1) <= 0

    def constant_value(self) -> LaurentQ:
        """Return the value as LaurentQ when the function is a Laurent polynomial in q."""
        num, den = self.canonical()
        if num.degree() > 0 or den.degree() > 0:
            raise ValueError("not a constant")
        if num.is_zero():
            return LaurentQ()
        d = den.coeffs[0]
        if not d.is_monomial():
            raise ValueError("constant is not a Laurent polynomial in q")
        return num.coeffs[0] * d**-1

    # substitution -------------------------------------------------------
    def compose(self, inner: "RatFuncZ") -> "RatFuncZ":
        """Return f(inner(z))."""
        return RatFuncZ(_compose_frac(self._f, self._lift(inner)))

    def scale_z(self, c) -> "RatFuncZ":
        """Substitute z -> c*z with c a SpectralParam, LaurentQ or RatFuncZ constant."""
        return self.compose(RatFuncZ(c) * RatFuncZ.z())

    def evaluate(self, x) -> "RatFuncZ":
        """Value at z = x as a z-free RatFuncZ; raises on a pole."""
        if isinstance(x, SpectralParam):
            x = x.to_laurent()
        return RatFuncZ(_compose_frac(self._f, RatFuncZ(x)._f))

    def at_zero(self) -> "RatFuncZ":
        return self.evaluate(0)

    def z_valuation(self) -> int:
        """Order of vanishing at z = 0."""
        if not self._f:
            raise UndefinedOrderError("undefined order")
        return _z_order(self._f.numer) - _z_order(self._f.denom)

    def series(self, order: int) -> Tuple[int, list]:
        """Laurent expansion around z=0: (valuation v, [c_v, ..., c_{order-1}]).

        Coefficients are z-free RatFuncZ constants.  Computed by long division
        of the power series, independent of the Pochhammer reduction.
        """
        num, den = self._f.numer, self._f.denom
        vn, vd = _z_order(num), _z_order(den)
        ncoef = _z_coeffs(num, vn)
        dcoef = _z_coeffs(den, vd)
        v = vn - vd
        length = max(order - v, 0)
        out = []
        d0 = dcoef[0]
        for k in range(length):
            s = ncoef[k] if k < len(ncoef) else QZ.zero
            for i in range(1, min(k, len(dcoef) - 1) + 1):
                s = s - dcoef[i] * out[k - i]
            out.append(s / d0)
        return v, [RatFuncZ(c) for c in out]

    def __str__(self):
        num, den = self.canonical()
        if den == PolyZ.const(1):
            return str(num)
        return f"({num})/({den})"

    def __repr__(self):
        return f"RatFuncZ({str(self)!r})"


def _sympy_scalar(x):
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return x


def _compose_poly(p, g):
    """Evaluate the sympy polynomial p(q, z) at z = g = a/b (a QZ element).

    Homogenizes with b so that only ring arithmetic is needed:
    p(q, a/b) = (sum_k c_k(q) a^k b^(d-k)) / b^d.
    """
    a, b = g.numer, g.denom
    d = p.degree(1) if p else 0
    apow, bpow = [_RQZ.one], [_RQZ.one]
    for _ in range(max(d, 0)):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
    by: Dict[int, object] = {}
    for (eq, ez), c in p.terms():
        by[ez] = by.get(ez, _RQZ.zero) + _RQZ({(eq, 0): c})
    top = _RQZ.zero
    for ez, cq in by.items():
        top += cq * apow[ez] * bpow[d - ez]
    return top, bpow[d] if d >= 0 else _RQZ.one


def _compose_frac(f, g):
    """f(q, g) for QZ elements f and g; raises ZeroDivisionError on a pole."""
    nt, nb = _compose_poly(f.numer, g)
    dt, db = _compose_poly(f.denom, g)
    if not dt:
        raise ZeroDivisionError("pole at substitution point")
    return QZ(nt * db) / QZ(dt * nb)


def _z_order(p) -> int:
    return min(m[1] for m in p.monoms())


def _z_coeffs(p, shift):
    """Coefficients of z^(shift+i) of p, as QZ elements."""
    by: Dict[int, object] = {}
    for (eq, ez), c in p.terms():
        by[ez - shift] = by.get(ez - shift, QZ.zero) + QZ(c) * _Q**eq
    return [by.get(i, QZ.zero) for i in range(max(by) + 1)]


def _normalize_pair(num: PolyZ, den: PolyZ) -> Tuple[PolyZ, PolyZ]:
    if num.is_zero():
        return PolyZ(), PolyZ.const(1)
    lead = den.coeffs[den.trailing_degree()]
    e = lead.valuation()
    unit = LaurentQ.q_power(-e, 1 / lead.coefficient(e))
    return num * PolyZ.const(unit), den * PolyZ.const(unit)


def zero_order(f: RatFuncZ, x: SpectralParam) -> int:
    """Order of vanishing of f at z = x (negative for a pole)."""
    f = RatFuncZ(f)
    if f.is_zero():
        raise UndefinedOrderError("undefined order")
    # linear factor z - x, cleared of negative q powers
    xl = x.to_laurent()
    (p, c), = xl.items()
    if p >= 0:
        lin = _RQZ.gens[1] - _RQZ(QQ(c.numerator, c.denominator)) * _RQZ.gens[0] ** p
    else:
        lin = _RQZ.gens[0] ** (-p) * _RQZ.gens[1] - _RQZ(QQ(c.numerator, c.denominator))

    def mult(poly):
        m = 0
        while True:
            quo, rem = poly.div(lin)
            if rem:
                return m
            poly, m = quo, m + 1

    return mult(f.sympy.numer) - mult(f.sympy.denom)


# ---------------------------------------------------------------------------
# Bivariate rational functions in u, v
# ---------------------------------------------------------------------------


class BivarRatFunc:
    """A rational function in u and v over Q(q)."""

    __slots__ = ("_f",)

    def __init__(self, f):
        if isinstance(f, BivarRatFunc):
            f = f._f
        elif not (hasattr(f, "field") and f.field == QUV):
            f = QUV(_sympy_scalar(f))
        self._f = f

    @classmethod
    def u(cls):
        return cls(_U)

    @classmethod
    def v(cls):
        return cls(_V)

    @classmethod
    def from_ratfunc(cls, f: RatFuncZ, var: str) -> "BivarRatFunc":
        """Embed f(z) as f(u) (var='u') or f(v) (var='v')."""
        idx = {"u": 1, "v": 2}[var]

        def conv(p):
            out = _RQUV.zero
            for (eq, ez), c in p.terms():
                m = [eq, 0, 0]
                m[idx] = ez
                out += _RQUV({tuple(m): c})
            return out

        g = RatFuncZ(f).sympy
        return cls(QUV(conv(g.numer)) / QUV(conv(g.denom)))

    @property
    def sympy(self):
        return self._f

    def _lift(self, x):
        if isinstance(x, BivarRatFunc):
            return x._f
        if isinstance(x, LaurentQ):
            return x.to_sympy(QUV)
        return QUV(_sympy_scalar(x))

    def __add__(self, o):
        return BivarRatFunc(self._f + self._lift(o))

    __radd__ = __add__

    def __sub__(self, o):
        return BivarRatFunc(self._f - self._lift(o))

    def __neg__(self):
        return BivarRatFunc(-self._f)

    def __mul__(self, o):
        return BivarRatFunc(self._f * self._lift(o))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return BivarRatFunc(self._f / self._lift(o))

    def __pow__(self, n):
        return BivarRatFunc(self._f**n)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BivarRatFunc(other)
        if not isinstance(other, BivarRatFunc):
            return NotImplemented
        a, b = self._f, other._f
        return a.numer * b.denom == b.numer * a.denom

    def __hash__(self):
        return hash(str(self))

    def is_zero(self):
        return not self._f

    def swap(self) -> "BivarRatFunc":
        """Exchange the roles of u and v."""

        def sw(p):
            return _RQUV({(m[0], m[2], m[1]): c for m, c in p.terms()})

        return BivarRatFunc(QUV(sw(self._f.numer)) / QUV(sw(self._f.denom)))

    def _restrict(self, keep: int, other: int) -> RatFuncZ:
        def sub(p):
            out = _RQZ.zero
            for m, c in p.terms():
                if m[other] == 0:
                    out += _RQZ({(m[0], m[keep]): c})
            return out

        den = sub(self._f.denom)
        if not den:
            raise ZeroDivisionError("pole along the substituted line")
        return RatFuncZ(QZ(sub(self._f.numer)) / QZ(den))

    def at_u_zero(self) -> RatFuncZ:
        """Substitute u = 0; the result is a RatFuncZ in z := v."""
        return self._restrict(keep=2, other=1)

    def at_v_zero(self) -> RatFuncZ:
        """Substitute v = 0; the result is a RatFuncZ in z := u."""
        return self._restrict(keep=1, other=2)

    def __str__(self):
        return str(self._f.as_expr())

    def __repr__(self):
        return f"BivarRatFunc({str(self)!r})"


# ---------------------------------------------------------------------------
# q-Pochhammer calculus
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PochhammerExpr:
    """A product of symbols [a] = ((-q)^a z; q^M)_inf and [a]' = (-q^a z; q^M)_inf.

    ``plain`` and ``primed`` map an index a to its (nonzero) exponent; the
    whole product is multiplied by ``prefactor * z**zpow``.  M is the step
    (M = 2N in the intended use).
    """

    modulus: int
    plain: Tuple[Tuple[int, int], ...] = ()
    primed: Tuple[Tuple[int, int], ...] = ()
    prefactor: LaurentQ = dc_field(default_factory=lambda: LaurentQ.const(1))
    zpow: int = 0

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "plain", _clean_ms(self.plain))
        object.__setattr__(self, "primed", _clean_ms(self.primed))

    @classmethod
    def one(cls, modulus: int) -> "PochhammerExpr":
        return cls(modulus)

    @classmethod
    def bracket(cls, a: int, modulus: int, exp: int = 1) -> "PochhammerExpr":
        return cls(modulus, plain=((a, exp),))

    @classmethod
    def bracket_prime(cls, a: int, modulus: int, exp: int = 1) -> "PochhammerExpr":
        return cls(modulus, primed=((a, exp),))

    @classmethod
    def monomial(cls, modulus: int, prefactor, zpow: int = 0) -> "PochhammerExpr":
        return cls(modulus, prefactor=LaurentQ.coerce(prefactor), zpow=zpow)

    def __mul__(self, other: "PochhammerExpr") -> "PochhammerExpr":
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")
        return PochhammerExpr(
            self.modulus,
            _merge(self.plain, other.plain),
            _merge(self.primed, other.primed),
            self.prefactor * other.prefactor,
            self.zpow + other.zpow,
        )

    def inverse(self) -> "PochhammerExpr":
        if not self.prefactor.is_monomial():
            raise ZeroDivisionError("prefactor is not a unit")
        return PochhammerExpr(
            self.modulus,
            tuple((a, -e) for a, e in self.plain),
            tuple((a, -e) for a, e in self.primed),
            self.prefactor**-1,
            -self.zpow,
        )

    def __truediv__(self, other):
        return self * other.inverse()

    def shift(self, k: int) -> "PochhammerExpr":
        """Substitute z -> q^(2k) z; [a] becomes [a+2k] and [a]' becomes [a+2k]'."""
        return PochhammerExpr(
            self.modulus,
            tuple((a + 2 * k, e) for a, e in self.plain),
            tuple((a + 2 * k, e) for a, e in self.primed),
            self.prefactor * LaurentQ.q_power(2 * k * self.zpow),
            self.zpow,
        )

    def is_balanced(self) -> bool:
        for ms in (self.plain, self.primed):
            sums = Counter()
            for a, e in ms:
                sums[a % self.modulus] += e
            if any(sums.values()):
                return False
        return True

    def reduce(self) -> RatFuncZ:
        return pochhammer_reduce(self)

    def series(self, order: int) -> list:
        """Coefficients of z^0..z^(order-1) of the infinite product (zpow must be >= 0)."""
        return series_of_products(self, order)


def _clean_ms(ms) -> Tuple[Tuple[int, int], ...]:
    c = Counter()
    for a, e in (ms.items() if isinstance(ms, dict) else ms):
        c[int(a)] += int(e)
    return tuple(sorted((a, e) for a, e in c.items() if e))


def _merge(m1, m2):
    return _clean_ms(tuple(m1) + tuple(m2))


def pochhammer_reduce(e: PochhammerExpr) -> RatFuncZ:
    """Collapse a balanced product of Pochhammer symbols to a rational function.

    Within a residue class mod M, the indices a_1 < ... < a_r with exponents
    summing to zero telescope: every [a] is rewritten relative to the top
    index of the class, [a] = [top] * prod_{t=a, a+M, ..., top-M} (1 - x_t z).
    """
    if not e.is_balanced():
        raise NonTelescopingError("non-telescoping product")
    M = e.modulus
    out = RatFuncZ(e.prefactor) * RatFuncZ.z() ** e.zpow
    for ms, primed in ((e.plain, False), (e.primed, True)):
        classes: Dict[int, list] = {}
        for a, k in ms:
            classes.setdefault(a % M, []).append((a, k))
        for entries in classes.values():
            top = max(a for a, _ in entries)
            for a, k in entries:
                if a == top:
                    continue
                ratio = RatFuncZ.const(1)
                for t in range(a, top, M):
                    xt = -LaurentQ.q_power(t) if primed else SpectralParam(1, t).to_laurent()
                    ratio = ratio * (1 - RatFuncZ(xt) * RatFuncZ.z())
                out = out * ratio**k
    return out


_RQ = _RQZ.drop(1)  # Q[q]


def _qbinomials(Q, order):
    """Gaussian binomials [k choose i]_Q for 0 <= i <= k < order."""
    rows = [[_RQ.one]]
    for k in range(1, order):
        prev = rows[-1]
        row = [_RQ.one]
        for i in range(1, k):
            row.append(prev[i - 1] + Q**i * prev[i])
        row.append(_RQ.one)
        rows.append(row)
    return rows


def _dp_mul(a, b, binom, order):
    """Multiply series stored in divided-power form c_k = a_k / (Q;Q)_k.

    (Q;Q)_i (Q;Q)_{k-i} times the Gaussian binomial is (Q;Q)_k, so the form
    is closed under products and only polynomials are ever multiplied.
    """
    out = []
    for k in range(order):
        acc = _RQ.zero
        for i in range(k + 1):
            if a[i] and b[k - i]:
                acc += binom[k][i] * a[i] * b[k - i]
        out.append(acc)
    return out


def series_of_products(e: PochhammerExpr, order: int) -> list:
    """z-expansion (coefficients of z^0 .. z^(order-1)) of the infinite product.

    Independent of the telescoping: each symbol is expanded with Euler's
    identities in the formal variable z,

        (x z; Q)_inf     = sum_k (-1)^k Q^{k(k-1)/2} x^k z^k / (Q;Q)_k
        1/(x z; Q)_inf   = sum_k x^k z^k / (Q;Q)_k

    with x = (-q)^a for [a] and x = -q^a for [a]'.  Returns z-free RatFuncZ
    constants.
    """
    if e.zpow < 0:
        raise ValueError("negative z power: use series of the reduced function")
    # substitute z -> q^m z so that every index is nonnegative; undone at the end
    m = -min([a for a, _ in e.plain + e.primed] + [0])
    q = _RQ.gens[0]
    Q = q**e.modulus
    binom = _qbinomials(Q, order)
    out = [_RQ.one] + [_RQ.zero] * (order - 1)
    for ms, primed in ((e.plain, False), (e.primed, True)):
        for a, k in ms:
            sign = -1 if primed else (-1) ** (a % 2)
            x = sign * q ** (a + m)
            if k > 0:
                base = [(-1) ** i * Q ** (i * (i - 1) // 2) * x**i for i in range(order)]
            else:
                base = [x**i for i in range(order)]
            for _ in range(abs(k)):
                out = _dp_mul(out, base, binom, order)
    pre = e.prefactor.to_sympy()
    shifted = [QZ.zero] * order
    poch = QZ.one
    for i in range(order - e.zpow):
        if i:
            poch = poch * (1 - _Q ** (e.modulus * i))
        c = QZ(out[i].set_ring(_RQZ)) / poch
        shifted[i + e.zpow] = c * _Q ** (-m * i) * pre
    return [RatFuncZ(c) for c in shifted]


# ---------------------------------------------------------------------------
# Rational functions kept as products of factors
# ---------------------------------------------------------------------------


class QFactored:
    """An element of Q(q) kept as unit * prod_f f^e_f.

    unit is c*q^m; every factor f is a Laurent polynomial normalized to
    lowest exponent 0 with lowest coefficient 1, so equal factors coming
    from different places merge and cancel.  Equality is structural when the
    factor maps agree and falls back to exact expansion otherwise (distinct
    factorizations of the same value, e.g. (1-q^2) versus (1-q)(1+q)).
    """

    __slots__ = ("unit", "factors")

    def __init__(self, unit: LaurentQ = None, factors: Mapping[LaurentQ, int] = None):
        self.unit = LaurentQ.const(1) if unit is None else unit
        self.factors: Dict[LaurentQ, int] = (
            {} if self.unit.is_zero() else {f: e for f, e in (factors or {}).items() if e}
        )

    @classmethod
    def from_laurent(cls, p, exp: int = 1) -> "QFactored":
        p = LaurentQ.coerce(p)
        if p.is_zero():
            if exp < 0:
                raise ZeroDivisionError("inverse of zero")
            return cls(LaurentQ())
        m = p.valuation()
        unit = LaurentQ.q_power(m, p.coefficient(m))
        rest = p * unit**-1
        if rest == 1:
            return cls(unit**exp)
        return cls(unit**exp, {rest: exp})

    @classmethod
    def coerce(cls, x) -> "QFactored":
        if isinstance(x, QFactored):
            return x
        if isinstance(x, RatFuncZ):
            if not x.is_constant():
                raise ValueError("not z-free")
            num, den = x.canonical()
            if num.is_zero():
                return cls(LaurentQ())
            return cls.from_laurent(num.coeffs[0]) * cls.from_laurent(den.coeffs[0], -1)
        return cls.from_laurent(LaurentQ.coerce(x))

    def is_zero(self) -> bool:
        return self.unit.is_zero()

    def __mul__(self, other):
        other = QFactored.coerce(other)
        if self.is_zero() or other.is_zero():
            return QFactored(LaurentQ())
        f = dict(self.factors)
        for k, e in other.factors.items():
            f[k] = f.get(k, 0) + e
        return QFactored(self.unit * other.unit, f)

    __rmul__ = __mul__

    def inverse(self) -> "QFactored":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return QFactored(self.unit**-1, {k: -e for k, e in self.factors.items()})

    def __truediv__(self, other):
        return self * QFactored.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QFactored.coerce(other) * self.inverse()

    def __neg__(self):
        return QFactored(-self.unit, self.factors)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return QFactored(self.unit**n, {k: e * n for k, e in self.factors.items()})

    def _expanded(self):
        """(numerator, denominator) as sympy polynomials in q, up to the unit."""
        num, den = _RQ.one, _RQ.one
        q = _RQ.gens[0]
        for f, e in self.factors.items():
            poly = _RQ.zero
            for k, c in f.items():
                poly += QQ(c.numerator, c.denominator) * q**k
            if e > 0:
                num *= poly**e
            else:
                den *= poly ** (-e)
        return num, den

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentQ, RatFuncZ)):
            other = QFactored.coerce(other)
        if not isinstance(other, QFactored):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if self.factors == other.factors:
            return self.unit == other.unit
        ratio = self / other
        n, d = ratio._expanded()
        (m, c), = ratio.unit.items()
        # ratio = c q^m n/d, and n, d have nonzero constant terms, so ratio == 1
        # iff m == 0 and c*n == d
        return m == 0 and n * QQ(c.numerator, c.denominator) == d

    def __hash__(self):
        raise TypeError("QFactored is not hashable (equality is not structural)")

    def is_one(self) -> bool:
        return self == 1

    def to_ratfunc(self) -> RatFuncZ:
        n, d = self._expanded()
        return RatFuncZ(self.unit) * RatFuncZ(QZ(n.set_ring(_RQZ)) / QZ(d.set_ring(_RQZ)))

    def __str__(self):
        parts = [] if self.unit == 1 else [f"({self.unit})"]
        for f, e in sorted(self.factors.items(), key=lambda t: str(t[0])):
            parts.append(f"({f})" if e == 1 else f"({f})^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"QFactored({str(self)!r})"


class FactoredRatZ:
    """const * prod_r (z - r)^e_r with r in Q[q, q^-1] and const in Q(q).

    Monic linear factors with distinct roots are distinct primes of Q(q)[z],
    so two factored values are equal iff their root/exponent maps coincide
    and their constants agree; multiplication never needs a gcd.  This is
    the fast path for long products of shifted linear factors.
    """

    __slots__ = ("const", "roots")

    def __init__(self, const=1, roots: Mapping[LaurentQ, int] = None):
        self.const = QFactored.coerce(const)
        self.roots: Dict[LaurentQ, int] = {r: e for r, e in (roots or {}).items() if e}

    @classmethod
    def z(cls) -> "FactoredRatZ":
        return cls(1, {LaurentQ(): 1})

    @classmethod
    def linear(cls, root) -> "FactoredRatZ":
        """The factor z - root."""
        return cls(1, {LaurentQ.coerce(root): 1})

    def __mul__(self, other):
        if not isinstance(other, FactoredRatZ):
            other = FactoredRatZ(other)
        roots = dict(self.roots)
        for r, e in other.roots.items():
            roots[r] = roots.get(r, 0) + e
        return FactoredRatZ(self.const * other.const, roots)

    __rmul__ = __mul__

    def inverse(self) -> "FactoredRatZ":
        return FactoredRatZ(self.const.inverse(), {r: -e for r, e in self.roots.items()})

    def __truediv__(self, other):
        if not isinstance(other, FactoredRatZ):
            other = FactoredRatZ(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FactoredRatZ(other) * self.inverse()

    def __neg__(self):
        return FactoredRatZ(-self.const, self.roots)

    def __pow__(self, n: int):
        return FactoredRatZ(self.const**n, {r: e * n for r, e in self.roots.items()})

    def __eq__(self, other):
        if isinstance(other, RatFuncZ):
            return self.to_ratfunc() == other
        if isinstance(other, (int, Fraction, LaurentQ, QFactored)):
            other = FactoredRatZ(other)
        if not isinstance(other, FactoredRatZ):
            return NotImplemented
        if self.const.is_zero() or other.const.is_zero():
            return self.const.is_zero() and other.const.is_zero()
        return self.roots == other.roots and self.const == other.const

    def __hash__(self):
        return hash(frozenset(self.roots.items()))

    def is_zero(self):
        return self.const.is_zero()

    def is_constant(self):
        return not self.roots

    def affine_substitute(self, scale, shift) -> "FactoredRatZ":
        """Substitute z -> scale * (z + shift); scale must be a monomial in q."""
        scale = LaurentQ.coerce(scale)
        shift = LaurentQ.coerce(shift)
        if not scale.is_monomial():
            raise ValueError("scale must be a unit of Q[q, q^-1]")
        inv = scale**-1
        roots: Dict[LaurentQ, int] = {}
        total = 0
        for r, e in self.roots.items():
            # scale*(z + shift) - r = scale * (z - (r/scale - shift))
            nr = r * inv - shift
            roots[nr] = roots.get(nr, 0) + e
            total += e
        return FactoredRatZ(self.const * QFactored(scale**total), roots)

    def evaluate(self, x) -> QFactored:
        """Value at z = x; raises ZeroDivisionError at a pole."""
        x = LaurentQ.coerce(x)
        out = self.const
        for r, e in self.roots.items():
            d = x - r
            if d.is_zero():
                if e < 0:
                    raise ZeroDivisionError("pole at evaluation point")
                return QFactored(LaurentQ())
            out = out * QFactored.from_laurent(d, e)
        return out

    def at_zero(self) -> QFactored:
        return self.evaluate(0)

    def order_at(self, x) -> int:
        return self.roots.get(LaurentQ.coerce(x), 0)

    def to_ratfunc(self) -> RatFuncZ:
        num, den = PolyZ.const(1), PolyZ.const(1)
        for r, e in sorted(self.roots.items(), key=lambda t: str(t[0])):
            lin = PolyZ([-r, 1])
            if e > 0:
                num = num * lin**e
            else:
                den = den * lin ** (-e)
        return self.const.to_ratfunc() * RatFuncZ.from_polys(num, den)

    def __str__(self):
        parts = [] if self.const == 1 else [str(self.const)]
        for r, e in sorted(self.roots.items(), key=lambda t: (str(t[0]))):
            lin = "z" if r.is_zero() else f"(z - ({r}))"
            parts.append(lin if e == 1 else f"{lin}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"FactoredRatZ({str(self)!r})"

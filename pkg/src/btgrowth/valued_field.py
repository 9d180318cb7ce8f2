"""Exact arithmetic in Q and F_p(t) together with their discrete valuations.

Rationals are plain :class:`fractions.Fraction` values.  Elements of
F_p(t) are :class:`RatFunc` instances whose numerator and denominator are
coefficient tuples over F_p stored least-degree-first.

Valuations return an ``int`` or ``math.inf`` (the valuation of zero); the
builtin ``min``, ``+`` and comparisons then behave as required.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_irreducible_p

INF = math.inf

Poly = tuple  # coefficients over F_p, least-degree-first, no trailing zeros


class FieldMismatch(TypeError):
    """Raised when elements or valuations from different fields are mixed."""


# ---------------------------------------------------------------------------
# polynomials over F_p

def ptrim(c, p: int) -> Poly:
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def pdeg(a: Poly) -> int:
    return len(a) - 1  # deg 0 == -1 by convention


def padd(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)], p)


def psub(a: Poly, b: Poly, p: int) -> Poly:
    return padd(a, tuple(-x for x in b), p)


def pmul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return ptrim(out, p)


def pscale(a: Poly, k: int, p: int) -> Poly:
    return ptrim([x * k for x in a], p)


def pdivmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    r = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        coef = r[i + len(b) - 1] * inv_lead % p
        q[i] = coef
        if coef:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] - coef * y) % p
    return ptrim(q, p), ptrim(r[:len(b) - 1], p)


def pmonic(a: Poly, p: int) -> Poly:
    if not a:
        return a
    return pscale(a, pow(a[-1], -1, p), p)


def pgcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return pmonic(a, p)


def pinvmod(a: Poly, m: Poly, p: int) -> Poly:
    """Inverse of ``a`` modulo ``m``; requires gcd(a, m) = 1."""
    r0, r1 = m, pdivmod(a, m, p)[1]
    s0, s1 = (), (1,)
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
    if pdeg(r0) != 0:
        raise ValueError("polynomial not invertible modulo m")
    return pdivmod(pscale(s0, pow(r0[0], -1, p), p), m, p)[1]


def ppow(a: Poly, n: int, p: int) -> Poly:
    out: Poly = (1,)
    for _ in range(n):
        out = pmul(out, a, p)
    return out


def pmultiplicity(a: Poly, pi: Poly, p: int) -> int:
    k = 0
    while True:
        q, r = pdivmod(a, pi, p)
        if r:
            return k
        a, k = q, k + 1


def _to_sympy(a: Poly) -> list:
    return [ZZ(x) for x in reversed(a)]


def poly_irreducible(a: Poly, p: int) -> bool:
    return pdeg(a) >= 1 and bool(gf_irreducible_p(_to_sympy(a), p, ZZ))


def poly_factors(a: Poly, p: int) -> list[Poly]:
    """Distinct monic irreducible factors, sorted by (degree, coefficients)."""
    if pdeg(a) < 1:
        return []
    _, facs = gf_factor(_to_sympy(a), p, ZZ)
    out = {ptrim([int(c) for c in reversed(f)], p) for f, _ in facs}
    return sorted(out, key=lambda f: (len(f), f))


# ---------------------------------------------------------------------------
# F_p(t)

class RatFunc:
    """An element num/den of F_p(t) in lowest terms with den monic."""

    __slots__ = ("num", "den", "p")

    def __init__(self, num, den, p: int):
        num, den = ptrim(num, p), ptrim(den, p)
        if den == (1,):
            self.num, self.den, self.p = num, den, p
            return
        if not den:
            raise ZeroDivisionError("zero denominator in F_p(t)")
        if not num:
            den = (1,)
        else:
            g = pgcd(num, den, p)
            if g != (1,):
                num, den = pdivmod(num, g, p)[0], pdivmod(den, g, p)[0]
            lead = pow(den[-1], -1, p)
            num, den = pscale(num, lead, p), pscale(den, lead, p)
        self.num, self.den, self.p = num, den, p

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p}(t) vs F_{other.p}(t)")
            return other
        if isinstance(other, int):
            return RatFunc((other,), (1,), self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        if self.den == o.den:
            return RatFunc(padd(self.num, o.num, p), self.den, p)
        return RatFunc(padd(pmul(self.num, o.den, p), pmul(o.num, self.den, p), p),
                       pmul(self.den, o.den, p), p)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(pscale(self.num, -1, self.p), self.den, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        return RatFunc(pmul(self.num, o.num, p), pmul(self.den, o.den, p), p)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in F_p(t)")
        return RatFunc(self.den, self.num, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        p = self.p
        return RatFunc(ppow(base.num, abs(n), p), ppow(base.den, abs(n), p), p)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc((other,), (1,), self.p)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.p, self.num, self.den) == (other.p, other.num, other.den)

    def __hash__(self):
        return hash(("F", self.p, self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RatFunc({self.num}, {self.den}, p={self.p})"

    def __str__(self):
        n = _poly_str(self.num)
        if self.den == (1,):
            return n
        return f"({n})/({_poly_str(self.den)})"


def _poly_str(a: Poly) -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# the two supported fields

@dataclass(frozen=True)
class Rationals:
    def __call__(self, x) -> Fraction:
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    @property
    def characteristic(self) -> int:
        return 0

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class FunctionField:
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")

    def __call__(self, x) -> RatFunc:
        if isinstance(x, RatFunc):
            if x.p != self.p:
                raise FieldMismatch(f"element of F_{x.p}(t) given to F_{self.p}(t)")
            return x
        if isinstance(x, int):
            return RatFunc((x,), (1,), self.p)
        raise FieldMismatch(f"cannot coerce {x!r} into F_{self.p}(t)")

    @property
    def zero(self):
        return RatFunc((), (1,), self.p)

    @property
    def one(self):
        return RatFunc((1,), (1,), self.p)

    @property
    def t(self):
        return RatFunc((0, 1), (1,), self.p)

    @property
    def characteristic(self) -> int:
        return self.p

    def __str__(self):
        return f"F_{self.p}(t)"


QQ = Rationals()
Field = Union[Rationals, FunctionField]
FieldElement = Union[Fraction, RatFunc]


def field_of(x) -> Field:
    if isinstance(x, RatFunc):
        return FunctionField(x.p)
    if isinstance(x, (Fraction, int)):
        return QQ
    raise FieldMismatch(f"not a supported field element: {x!r}")


# ---------------------------------------------------------------------------
# valuations

@dataclass(frozen=True)
class PAdic:
    p: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and self.p > 0 and isprime(self.p)):
            raise ValueError(f"p-adic valuation needs a positive prime, got {self.p}")

    @property
    def field(self) -> Field:
        return QQ

    @property
    def residue_size(self) -> int:
        return self.p

    def __str__(self):
        return f"{self.p}-adic"


@dataclass(frozen=True)
class PolyAdic:
    p: int
    pi: Poly

    def __post_init__(self):
        object.__setattr__(self, "pi", ptrim(self.pi, self.p))
        if not isprime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")
        if pmonic(self.pi, self.p) != self.pi or not poly_irreducible(self.pi, self.p):
            raise ValueError(f"{self.pi} is not a monic irreducible over F_{self.p}")

    @property
    def field(self) -> Field:
        return FunctionField(self.p)

    @property
    def residue_size(self) -> int:
        return self.p ** pdeg(self.pi)

    def __str__(self):
        return f"({_poly_str(self.pi)})-adic over F_{self.p}(t)"


@dataclass(frozen=True)
class DegreeAtInfinity:
    p: int

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"characteristic must be prime, got {self.p}")

    @property
    def field(self) -> Field:
        return FunctionField(self.p)

    @property
    def residue_size(self) -> int:
        return self.p

    def __str__(self):
        return f"degree valuation at infinity over F_{self.p}(t)"


Valuation = Union[PAdic, PolyAdic, DegreeAtInfinity]


def _check(x, v: Valuation):
    if isinstance(v, PAdic):
        if isinstance(x, int):
            return Fraction(x)
        if not isinstance(x, Fraction):
            raise FieldMismatch(f"{v} applied to non-rational {x!r}")
        return x
    if isinstance(x, int):
        return RatFunc((x,), (1,), v.p)
    if not isinstance(x, RatFunc) or x.p != v.p:
        raise FieldMismatch(f"{v} applied to {x!r}")
    return x


def _int_multiplicity(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def val(x, v: Valuation):
    """Valuation of ``x`` at ``v``; ``math.inf`` for zero."""
    x = _check(x, v)
    if not x:
        return INF
    if isinstance(v, PAdic):
        return _int_multiplicity(x.numerator, v.p) - _int_multiplicity(x.denominator, v.p)
    if isinstance(v, PolyAdic):
        return pmultiplicity(x.num, v.pi, v.p) - pmultiplicity(x.den, v.pi, v.p)
    return pdeg(x.den) - pdeg(x.num)


def uniformizer(v: Valuation):
    if isinstance(v, PAdic):
        return Fraction(v.p)
    if isinstance(v, PolyAdic):
        return RatFunc(v.pi, (1,), v.p)
    return RatFunc((1,), (0, 1), v.p)


def is_integral(x, v: Valuation) -> bool:
    return val(x, v) >= 0


def residue_representative(b, a: int, v: Valuation):
    """Canonical representative of ``b`` modulo ``pi^a * A_v``.

    Q and finite places: ``c * pi^-k`` with ``k = max(0, -val(b))`` minimal and
    ``c`` reduced modulo ``pi^(a+k)``.  At infinity: the Laurent polynomial in t
    keeping exactly the terms of ``b`` of degree greater than ``-a``.
    """
    b = _check(b, v)
    e = val(b, v)
    if e >= a:
        return v.field.zero
    k = max(0, -e)
    if isinstance(v, PAdic):
        mod = v.p ** (a + k)
        scaled = b * v.p ** k
        c = scaled.numerator * pow(scaled.denominator, -1, mod) % mod
        return Fraction(c, v.p ** k)
    p = v.p
    if isinstance(v, PolyAdic):
        scaled = b * uniformizer(v) ** k
        mod = ppow(v.pi, a + k, p)
        c = pdivmod(pmul(scaled.num, pinvmod(scaled.den, mod, p), p), mod, p)[1]
        return RatFunc(c, ppow(v.pi, k, p), p)
    m = a - 1
    t = FunctionField(p).t
    shifted = b * t ** m
    floor = pdivmod(shifted.num, shifted.den, p)[0]
    return RatFunc(floor, (1,), p) * t ** (-m)

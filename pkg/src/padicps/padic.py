"""Capped relative precision arithmetic in Q_p.

A nonzero value is stored as ``p**valuation * unit`` with ``unit`` known
modulo ``p**rel_precision``.  Zero comes in two flavours: the exact zero
(valuation ``INF``) and "zero modulo p**k", produced by cancellation, which
has valuation ``k`` and relative precision 0.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Union

INF = math.inf
DEFAULT_PREC = 20

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class PadicError(ArithmeticError):
    """Base class for p-adic arithmetic errors."""


class PrimeMismatch(PadicError, ValueError):
    pass


class PrecisionError(PadicError):
    """Raised when the tracked precision does not determine the answer."""


class DomainError(PadicError, ValueError):
    """Argument outside the convergence domain of a series."""


class PadicZeroDivision(PadicError, ZeroDivisionError):
    pass


def val_int(n: int, p: int) -> Union[int, float]:
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _split(n: int, p: int):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


class PadicScalar:
    __slots__ = ("prime", "valuation", "unit", "rel_precision")

    def __init__(self, prime: int, valuation, unit: int, rel_precision: int):
        if rel_precision < 0:
            raise ValueError("negative relative precision")
        if rel_precision == 0:
            unit = 0
        else:
            unit %= prime**rel_precision
            if unit % prime == 0:
                raise ValueError("unit part divisible by p")
        self.prime = prime
        self.valuation = valuation
        self.unit = unit
        self.rel_precision = rel_precision

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, p: int, absprec=INF) -> "PadicScalar":
        return cls(p, absprec, 0, 0)

    @classmethod
    def from_int(cls, n: int, p: int, prec: int = DEFAULT_PREC) -> "PadicScalar":
        if n == 0:
            return cls.zero(p)
        v, u = _split(n, p)
        return cls(p, v, u, prec)

    @classmethod
    def from_rational(cls, x, p: int, prec: int = DEFAULT_PREC) -> "PadicScalar":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        vn, un = _split(x.numerator, p)
        vd, ud = _split(x.denominator, p)
        mod = p**prec
        return cls(p, vn - vd, un * pow(ud, -1, mod), prec)

    @classmethod
    def from_digits(cls, p: int, valuation: int, digits) -> "PadicScalar":
        digits = list(digits)
        if not digits:
            return cls.zero(p, valuation)
        if digits[0] % p == 0:
            raise ValueError("leading unit digit must be nonzero")
        unit = sum(d * p**i for i, d in enumerate(digits))
        return cls(p, valuation, unit, len(digits))

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise PrimeMismatch(f"primes differ: {self.prime} vs {other.prime}")
            return other
        if isinstance(other, (int, Fraction)):
            # exact operand: give it enough digits never to limit the result
            if other == 0:
                return PadicScalar.zero(self.prime)
            x = Fraction(other)
            v = val_int(x.numerator, self.prime) - val_int(x.denominator, self.prime)
            ap = self.absolute_precision
            prec = DEFAULT_PREC if ap == INF else max(1, ap - v, self.rel_precision)
            return PadicScalar.from_rational(x, self.prime, prec)
        return NotImplemented

    # -- basic properties -------------------------------------------------

    @property
    def absolute_precision(self):
        return self.valuation + self.rel_precision

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_exact_zero(self) -> bool:
        return self.valuation == INF

    def digits(self) -> list:
        u, p = self.unit, self.prime
        out = []
        for _ in range(self.rel_precision):
            u, d = divmod(u, p)
            out.append(d)
        return out

    def lift(self) -> Fraction:
        """Rational representative p**v * unit (unit in [0, p**N))."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.prime) ** self.valuation * self.unit

    def residue(self, k: int) -> int:
        """The class of self modulo p**k, for self integral."""
        if self.valuation < 0 and not self.is_zero():
            raise DomainError("not integral")
        if self.absolute_precision < k:
            raise PrecisionError(f"value known only mod p^{self.absolute_precision}")
        if self.is_zero():
            return 0
        return (self.unit * self.prime**self.valuation) % self.prime**k

    def shift(self, k: int) -> "PadicScalar":
        """Exact multiplication by p**k."""
        if self.is_exact_zero():
            return self
        return PadicScalar(self.prime, self.valuation + k, self.unit, self.rel_precision)

    def unit_part(self) -> "PadicScalar":
        if self.is_zero():
            raise PadicZeroDivision("zero has no unit part")
        return PadicScalar(self.prime, 0, self.unit, self.rel_precision)

    def add_bigoh(self, absprec) -> "PadicScalar":
        """Reduce the claimed absolute precision to at most ``absprec``."""
        if absprec >= self.absolute_precision:
            return self
        if self.is_zero() or absprec <= self.valuation:
            return PadicScalar.zero(self.prime, absprec)
        n = absprec - self.valuation
        return PadicScalar(self.prime, self.valuation, self.unit, n)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self, other, self.prime
        if a.is_exact_zero():
            return b
        if b.is_exact_zero():
            return a
        ap = min(a.absolute_precision, b.absolute_precision)
        v0 = min(a.valuation, b.valuation)
        if v0 >= ap:
            return PadicScalar.zero(p, ap)
        width = ap - v0
        mod = p**width
        s = 0
        for x in (a, b):
            if x.unit and x.valuation - v0 < width:
                s += x.unit * p ** (x.valuation - v0)
        s %= mod
        if s == 0:
            return PadicScalar.zero(p, ap)
        k, u = _split(s, p)
        return PadicScalar(p, v0 + k, u, width - k)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        return PadicScalar(self.prime, self.valuation, -self.unit, self.rel_precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self._mul_int(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self, other, self.prime
        if a.is_exact_zero() or b.is_exact_zero():
            return PadicScalar.zero(p)
        if a.is_zero() or b.is_zero():
            return PadicScalar.zero(p, a.valuation + b.valuation)
        n = min(a.rel_precision, b.rel_precision)
        return PadicScalar(p, a.valuation + b.valuation, a.unit * b.unit, n)

    __rmul__ = __mul__

    def _mul_int(self, n: int) -> "PadicScalar":
        p = self.prime
        if n == 0 or self.is_exact_zero():
            return PadicScalar.zero(p)
        k, u = _split(n, p)
        if self.is_zero():
            return PadicScalar.zero(p, self.valuation + k)
        return PadicScalar(p, self.valuation + k, self.unit * u, self.rel_precision)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, p = self, other, self.prime
        if b.is_zero():
            raise PadicZeroDivision(
                "division by zero" if b.is_exact_zero()
                else f"division by a value indistinguishable from 0 mod p^{b.valuation}")
        if a.is_exact_zero():
            return a
        if a.is_zero():
            return PadicScalar.zero(p, a.valuation - b.valuation)
        n = min(a.rel_precision, b.rel_precision)
        inv = pow(b.unit, -1, p**n)
        return PadicScalar(p, a.valuation - b.valuation, a.unit * inv, n)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        p = self.prime
        if n == 0:
            if self.is_zero():
                raise PadicZeroDivision("0**0 on a zero value")
            return PadicScalar(p, 0, 1, self.rel_precision)
        if self.is_zero():
            if n < 0:
                raise PadicZeroDivision("negative power of zero")
            if self.is_exact_zero():
                return self
            return PadicScalar.zero(p, self.valuation * n)
        N = self.rel_precision
        mod = p**N
        u = pow(self.unit, n, mod) if n > 0 else pow(pow(self.unit, -1, mod), -n, mod)
        return PadicScalar(p, self.valuation * n, u, N)

    def inverse(self) -> "PadicScalar":
        return self**-1

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        """Equality modulo the coarser of the two precisions."""
        if isinstance(other, (int, Fraction, PadicScalar)):
            try:
                return (self - other).is_zero()
            except PrimeMismatch:
                return False
        return NotImplemented

    __hash__ = None

    def same_as(self, other: "PadicScalar") -> bool:
        """Bit-for-bit equality of the stored representation."""
        return (self.prime, self.valuation, self.unit, self.rel_precision) == (
            other.prime, other.valuation, other.unit, other.rel_precision)

    # -- text -------------------------------------------------------------

    def __repr__(self):
        return f"PadicScalar({self.to_compact()!r}, p={self.prime})"

    def __str__(self):
        return self.to_text()

    def to_text(self) -> str:
        p = self.prime
        if self.is_exact_zero():
            return "0"
        if self.is_zero():
            return f"O({p}^{self.valuation})"
        terms = []
        for i, d in enumerate(self.digits()):
            if i == 0:
                terms.append(str(d))
            elif i == 1:
                terms.append(f"{d}*{p}")
            else:
                terms.append(f"{d}*{p}^{i}")
        return f"{p}^{self.valuation} * ({' + '.join(terms)}) mod {p}^{self.rel_precision}"

    def to_compact(self) -> str:
        if self.prime > len(_DIGITS):
            raise ValueError("compact form needs p <= 36")
        if self.is_exact_zero():
            return "inf::0"
        return f"{self.valuation}:{''.join(_DIGITS[d] for d in self.digits())}:{self.rel_precision}"

    @classmethod
    def from_compact(cls, s: str, p: int) -> "PadicScalar":
        parts = s.strip().split(":")
        if len(parts) != 3:
            raise ValueError(f"malformed compact scalar {s!r}")
        v, ds, n = parts
        n = int(n)
        if v == "inf":
            if ds or n:
                raise ValueError(f"malformed exact zero {s!r}")
            return cls.zero(p)
        digits = [_DIGITS.index(c) for c in ds.lower()]
        if any(d >= p for d in digits):
            raise ValueError(f"digit out of range in {s!r}")
        if len(digits) != n:
            raise ValueError(f"digit count {len(digits)} != precision {n} in {s!r}")
        return cls.from_digits(p, int(v), digits)

    _TEXT_RE = re.compile(r"^\s*(\d+)\^(-?\d+)\s*\*\s*\((.*)\)\s*mod\s*(\d+)\^(\d+)\s*$")
    _ZERO_RE = re.compile(r"^\s*O\((\d+)\^(-?\d+)\)\s*$")

    @classmethod
    def from_text(cls, s: str) -> "PadicScalar":
        if s.strip().startswith("0") and s.strip() == "0":
            raise ValueError("exact zero text form carries no prime; use parse_scalar")
        m = cls._ZERO_RE.match(s)
        if m:
            return cls.zero(int(m.group(1)), int(m.group(2)))
        m = cls._TEXT_RE.match(s)
        if not m:
            raise ValueError(f"malformed scalar text {s!r}")
        p, v, body, p2, n = m.groups()
        p, n = int(p), int(n)
        if int(p2) != p:
            raise ValueError(f"prime mismatch in {s!r}")
        digits = []
        for i, term in enumerate(t.strip() for t in body.split("+")):
            if i == 0:
                digits.append(int(term))
                continue
            d, _, power = term.partition("*")
            expected = str(p) if i == 1 else f"{p}^{i}"
            if power.strip() != expected:
                raise ValueError(f"term {term!r} out of order in {s!r}")
            digits.append(int(d))
        if len(digits) != n:
            raise ValueError(f"digit count mismatch in {s!r}")
        return cls.from_digits(p, int(v), digits)


Scalarish = Union[PadicScalar, int, Fraction]


def parse_scalar(s: str, p: int, prec: int = DEFAULT_PREC) -> PadicScalar:
    """Parse any of the accepted scalar spellings.

    Accepts the compact ``v:digits:N`` form, the long text form, and plain
    rationals such as ``-3``, ``1/25`` or ``p^-2`` / ``-p^-1``.
    """
    s = s.strip()
    if s.count(":") == 2:
        return PadicScalar.from_compact(s, p)
    if "mod" in s or s.startswith("O("):
        x = PadicScalar.from_text(s)
        if x.prime != p:
            raise PrimeMismatch(f"expected p={p} in {s!r}")
        return x
    m = re.fullmatch(r"(-?)p\^(-?\d+)", s)
    if m:
        x = Fraction(p) ** int(m.group(2))
        return PadicScalar.from_rational(-x if m.group(1) else x, p, prec)
    return PadicScalar.from_rational(Fraction(s), p, prec)


# -- transcendental functions ----------------------------------------------

def p_log(a: PadicScalar) -> PadicScalar:
    """Logarithm on 1 + pZ_p (1 + 4Z_2 when p = 2).

    The result carries the absolute precision of ``a`` unless the tail bound
    of the truncated series is weaker.
    """
    p = a.prime
    x = a - 1
    if x.is_exact_zero():
        return PadicScalar.zero(p)
    v = x.valuation
    need = 2 if p == 2 else 1
    if v < need:
        raise DomainError(f"log needs val(a-1) >= {need}, got {v}")
    target = a.absolute_precision
    if x.is_zero():
        return PadicScalar.zero(p, target)

    def pen(n):
        return math.floor(math.log(n, p) + 1e-12)

    total = PadicScalar.zero(p)
    power = x
    n = 1
    while True:
        term = power / n
        total = total + (term if n % 2 else -term)
        n += 1
        # val(x^k/k) >= k*v - floor(log_p k), increasing in k
        if n * v - pen(n) >= target:
            break
        power = power * x
    return total.add_bigoh(target)


def _val_factorial(n: int, p: int) -> int:
    s, m = 0, n
    while m:
        s += m % p
        m //= p
    return (n - s) // (p - 1)


def p_exp(a: PadicScalar, prec: int = DEFAULT_PREC) -> PadicScalar:
    """Exponential on pZ_p (4Z_2 when p = 2).

    ``prec`` is used only when ``a`` is the exact zero.
    """
    p = a.prime
    if a.is_exact_zero():
        return PadicScalar.from_int(1, p, prec)
    need = 2 if p == 2 else 1
    v = a.valuation
    if v < need:
        raise DomainError(f"exp needs val(a) >= {need}, got {v}")
    target = a.absolute_precision
    one = PadicScalar.from_int(1, p, max(1, target))
    if a.is_zero():
        return one.add_bigoh(target)
    total = one
    term = one
    n = 1
    while True:
        term = term * a / n
        total = total + term
        n += 1
        # val(a^k/k!) >= k*v - (k-1)/(p-1), increasing in k
        if n * v - (n - 1) / (p - 1) >= target:
            break
    return total.add_bigoh(target)


def char_power(t: PadicScalar, c: Scalarish) -> PadicScalar:
    """t**c := exp(c * log t) for t close to 1 and c a p-adic integer."""
    return p_exp(p_log(t) * c)


def rational_reconstruction(u: int, M: int) -> Optional[Fraction]:
    """The fraction a/b = u mod M with |a|, |b| <= sqrt(M/2), if there is one."""
    bound = isqrt(M // 2)
    r0, r1, t0, t1 = M, u % M, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, abs(t1)) != 1:
        return None
    return Fraction(r1, t1)


def as_rational(x: PadicScalar, min_digits: int = 6) -> Optional[Fraction]:
    """A small-height rational equal to ``x`` at its precision, or None.

    Only attempted when at least ``min_digits`` digits are known, so that
    the answer is meaningful.
    """
    if x.is_exact_zero():
        return Fraction(0)
    if x.is_zero() or x.rel_precision < min_digits:
        return None
    q = rational_reconstruction(x.unit, x.prime**x.rel_precision)
    if q is None:
        return None
    return q * Fraction(x.prime) ** x.valuation

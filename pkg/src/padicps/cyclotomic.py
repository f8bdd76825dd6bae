"""Exact arithmetic in Z[zeta_e] through integer coordinate vectors."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from sympy import Poly, cyclotomic_poly, symbols

_x = symbols("x")


@lru_cache(maxsize=None)
def _phi(e: int) -> Tuple[int, ...]:
    """Coefficients of the e-th cyclotomic polynomial, lowest degree first."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(e, _x), _x).all_coeffs()))


class Cyclo:
    """sum_k c_k zeta^k in Q(zeta_e), reduced modulo the e-th cyclotomic polynomial.

    Coefficients are Fractions so that class-weighted averages stay exact.
    """

    __slots__ = ("e", "coeffs")

    def __init__(self, e: int, coeffs):
        self.e = e
        self.coeffs = _reduce(e, [Fraction(c) for c in coeffs])

    @classmethod
    def from_int(cls, e: int, n) -> "Cyclo":
        return cls(e, [n])

    @classmethod
    def from_exponents(cls, e: int, mults) -> "Cyclo":
        """sum_k mults[k] zeta^k."""
        return cls(e, mults)

    def _coerce(self, o):
        if isinstance(o, Cyclo):
            if o.e != self.e:
                raise ValueError("cyclotomic orders differ")
            return o
        return Cyclo(self.e, [o])

    def __add__(self, o):
        o = self._coerce(o)
        n = max(len(self.coeffs), len(o.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(o.coeffs) + [0] * (n - len(o.coeffs))
        return Cyclo(self.e, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.e, [-x for x in self.coeffs])

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __mul__(self, o):
        o = self._coerce(o)
        out = [Fraction(0)] * max(1, len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    out[i + j] += x * y
        return Cyclo(self.e, out)

    __rmul__ = __mul__

    def conj(self) -> "Cyclo":
        """Complex conjugation zeta -> zeta^-1."""
        out = [Fraction(0)] * self.e
        for k, c in enumerate(self.coeffs):
            out[(-k) % self.e] += c
        return Cyclo(self.e, out)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, o):
        try:
            o = self._coerce(o)
        except ValueError:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.e, self.coeffs))

    def to_json(self):
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        terms = [f"{c}*z^{k}" if k else str(c) for k, c in enumerate(self.coeffs) if c]
        return f"Cyclo[{self.e}](" + (" + ".join(terms) or "0") + ")"


def _reduce(e: int, c):
    """Remainder modulo Phi_e (monic), trailing zeros stripped."""
    phi = _phi(e)
    d = len(phi) - 1
    c = list(c)
    # first fold exponents mod e
    if len(c) > e:
        folded = [Fraction(0)] * e
        for k, x in enumerate(c):
            folded[k % e] += x
        c = folded
    for k in range(len(c) - 1, d - 1, -1):
        q = c[k]
        if q:
            for i, a in enumerate(phi):
                c[k - d + i] -= q * a
    c = c[:d] if len(c) > d else c
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (Fraction(0),)

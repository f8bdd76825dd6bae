"""SL_2(Q_p) elements and sl_2 Lie algebra elements with p-adic entries."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Tuple

from .padic import DEFAULT_PREC, DomainError, PadicScalar, p_exp


def _s(x, p, prec):
    return x if isinstance(x, PadicScalar) else PadicScalar.from_rational(x, p, prec)


@dataclass(frozen=True)
class GroupElement:
    """The matrix ((a, b), (c, d)) with determinant 1."""

    a: PadicScalar
    b: PadicScalar
    c: PadicScalar
    d: PadicScalar

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not det == 1:
            raise ValueError(f"determinant is not 1: {det}")

    @classmethod
    def of(cls, a, b, c, d, p: int, prec: int = DEFAULT_PREC) -> "GroupElement":
        return cls(*(_s(x, p, prec) for x in (a, b, c, d)))

    @property
    def prime(self) -> int:
        return self.a.prime

    @property
    def entries(self) -> Tuple[PadicScalar, ...]:
        return (self.a, self.b, self.c, self.d)

    def precision(self):
        return min(x.absolute_precision for x in self.entries)

    def min_valuation(self):
        return min(x.valuation for x in self.entries if not x.is_zero()) if any(
            not x.is_zero() for x in self.entries) else 0

    def is_integral(self) -> bool:
        return all(x.is_zero() or x.valuation >= 0 for x in self.entries)

    def __matmul__(self, o: "GroupElement") -> "GroupElement":
        return GroupElement(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                            self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def apply(self, x: PadicScalar, y: PadicScalar):
        """Matrix times the column vector (x, y)."""
        return self.a * x + self.b * y, self.c * x + self.d * y

    def __eq__(self, o):
        return isinstance(o, GroupElement) and all(x == y for x, y in zip(self.entries, o.entries))

    __hash__ = None

    def __repr__(self):
        return "GroupElement(" + ", ".join(x.to_compact() for x in self.entries) + ")"


def identity(p: int, prec: int = DEFAULT_PREC) -> GroupElement:
    return GroupElement.of(1, 0, 0, 1, p, prec)


def weyl(p: int, prec: int = DEFAULT_PREC) -> GroupElement:
    """w = ((0, -1), (1, 0))."""
    return GroupElement.of(0, -1, 1, 0, p, prec)


def lower_unipotent(x, p: int, prec: int = DEFAULT_PREC) -> GroupElement:
    """u(x) = ((1, 0), (x, 1))."""
    return GroupElement.of(1, 0, x, 1, p, prec)


def upper_unipotent(x, p: int, prec: int = DEFAULT_PREC) -> GroupElement:
    """u^-(x) = ((1, x), (0, 1))."""
    return GroupElement.of(1, x, 0, 1, p, prec)


def torus(s, p: int, prec: int = DEFAULT_PREC) -> GroupElement:
    """diag(s^-1, s)."""
    s = _s(s, p, prec)
    return GroupElement(s.inverse(), PadicScalar.zero(p), PadicScalar.zero(p), s)


def random_sl2_zp(rng: random.Random, p: int, prec: int) -> GroupElement:
    """A random element of SL_2(Z_p) with entries known mod p^prec."""
    mod = p**prec
    while True:
        a, b, c = (rng.randrange(mod) for _ in range(3))
        if a % p:
            A, B, C = (PadicScalar.from_int(x, p, prec) for x in (a, b, c))
            return GroupElement(A, B, C, (B * C + 1) / A)
        if c % p:
            A, C, D = (PadicScalar.from_int(x, p, prec) for x in (a, c, rng.randrange(mod)))
            return GroupElement(A, (A * D - 1) / C, C, D)


def random_sl2_z(rng: random.Random, bound: int = 30) -> Tuple[int, int, int, int]:
    """A random integer matrix of determinant 1."""
    from math import gcd
    while True:
        a, c = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if gcd(a, c) != 1:
            continue
        # extended Euclid: a*d - b*c = 1
        old_r, r, old_s, s, old_t, t = a, c, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r == -1:
            old_s, old_t = -old_s, -old_t
        d, b = old_s, -old_t
        k = rng.randint(-3, 3)
        # shift by a multiple of (a, c) keeps the determinant
        b, d = b + k * a, d + k * c
        assert a * d - b * c == 1
        return a, b, c, d


@dataclass(frozen=True)
class LieElement:
    """x * u^- + y * h + z * u in sl_2, with u^- = ((0,1),(0,0)), h = diag(1,-1), u = ((0,0),(1,0))."""

    u_minus: PadicScalar
    h: PadicScalar
    u: PadicScalar

    @classmethod
    def of(cls, u_minus, h, u, p: int, prec: int = DEFAULT_PREC) -> "LieElement":
        return cls(_s(u_minus, p, prec), _s(h, p, prec), _s(u, p, prec))

    @classmethod
    def basis(cls, p: int, prec: int = DEFAULT_PREC):
        return {"u_minus": cls.of(1, 0, 0, p, prec), "h": cls.of(0, 1, 0, p, prec),
                "u": cls.of(0, 0, 1, p, prec)}

    @property
    def prime(self):
        return self.h.prime

    def matrix(self):
        return (self.h, self.u_minus, self.u, -self.h)

    @classmethod
    def from_matrix(cls, m) -> "LieElement":
        a, b, c, d = m
        if not (a + d).is_zero():
            raise ValueError("matrix is not traceless")
        return cls(b, a, c)

    def __add__(self, o):
        return LieElement(self.u_minus + o.u_minus, self.h + o.h, self.u + o.u)

    def __sub__(self, o):
        return LieElement(self.u_minus - o.u_minus, self.h - o.h, self.u - o.u)

    def scale(self, s) -> "LieElement":
        return LieElement(self.u_minus * s, self.h * s, self.u * s)

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in (self.u_minus, self.h, self.u))

    def __eq__(self, o):
        return isinstance(o, LieElement) and (self - o).is_zero()

    __hash__ = None


def _mat_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def bracket(x: LieElement, y: LieElement) -> LieElement:
    X, Y = x.matrix(), y.matrix()
    return LieElement.from_matrix(tuple(s - t for s, t in zip(_mat_mul(X, Y), _mat_mul(Y, X))))


def exp_lie(x: LieElement) -> GroupElement:
    """Matrix exponential, for x with entries of valuation >= 1 (>= 2 if p = 2)."""
    p = x.prime
    M = x.matrix()
    need = 2 if p == 2 else 1
    vals = [e.valuation for e in M if not e.is_zero()]
    if not vals:
        z = PadicScalar.zero(p)
        one = PadicScalar.from_int(1, p, DEFAULT_PREC)
        return GroupElement(one, z, z, one)
    v = min(vals)
    if v < need:
        raise DomainError("matrix exponential needs entries of valuation >= 1 (2 for p = 2)")
    target = min(e.absolute_precision for e in M)
    one = PadicScalar.from_int(1, p, max(1, target))
    zero = PadicScalar.zero(p)
    total = (one, zero, zero, one)
    term = total
    n = 1
    while n * v - (n - 1) / (p - 1) < target:
        term = tuple(e / n for e in _mat_mul(term, M))
        total = tuple(s + t for s, t in zip(total, term))
        n += 1
    return GroupElement(*(e.add_bigoh(target) for e in total))

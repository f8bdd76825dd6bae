"""Locally analytic functions on compact opens of Z_p.

A function is a finite disjoint cover by disks ``a + p^h Z_p``; on each disk
it is a truncated power series in the local coordinate ``t`` (``x = a + p^h t``,
``t`` in Z_p) plus a tail whose sup norm is bounded by ``p^-E``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .padic import (INF, DomainError, PadicScalar, PrecisionError, PrimeMismatch,
                    parse_scalar)

# working precision given to exact integers (disk centers, binomials)
EXACT_PREC = 80
MAX_LEVEL = 40
MAX_PIECES = 50_000  # give up rather than subdivide forever
PULLBACK_DEGREE = 20
DEFAULT_TARGET = 40


def _val(x: PadicScalar):
    return x.valuation


# -- polynomial helpers on coefficient lists --------------------------------

def _zero(p):
    return PadicScalar.zero(p)


def taylor_shift(coeffs: Sequence[PadicScalar], j: int) -> List[PadicScalar]:
    """Coefficients of c(t + j), by repeated synthetic division."""
    c = list(coeffs)
    n = len(c)
    if j == 0:
        return c
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            if not c[k + 1].is_exact_zero():
                c[k] = c[k] + c[k + 1] * j
    return c


def scale_coords(coeffs: Sequence[PadicScalar], k: int) -> List[PadicScalar]:
    """Coefficients of c(p^k t)."""
    return [c.shift(k * n) for n, c in enumerate(coeffs)]


def poly_mul(f, g, cap: int):
    """Truncated product; returns (coeffs, valuation bound of the dropped part)."""
    p = (f[0] if f else g[0]).prime
    out = [_zero(p)] * min(len(f) + len(g) - 1, cap + 1)
    dropped = [_zero(p)] * max(0, len(f) + len(g) - 1 - (cap + 1))
    for i, a in enumerate(f):
        if a.is_exact_zero():
            continue
        for j, b in enumerate(g):
            if b.is_exact_zero():
                continue
            if i + j <= cap:
                out[i + j] = out[i + j] + a * b
            else:
                dropped[i + j - cap - 1] = dropped[i + j - cap - 1] + a * b
    bound = min((_val(x) for x in dropped), default=INF)
    return out, bound


def poly_add(f, g):
    n = max(len(f), len(g))
    p = (f[0] if f else g[0]).prime
    z = _zero(p)
    return [(f[i] if i < len(f) else z) + (g[i] if i < len(g) else z) for i in range(n)]


def gauss_val(coeffs) -> float:
    return min((_val(c) for c in coeffs), default=INF)


# -- disks -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Disk:
    """The coset ``center + p^level Z_p``; ``center`` is reduced mod p^level."""

    level: int
    center: int
    prime: int

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("negative level")
        if not 0 <= self.center < self.prime**self.level:
            object.__setattr__(self, "center", self.center % self.prime**self.level)

    def contains(self, x: PadicScalar) -> bool:
        if x.prime != self.prime:
            raise PrimeMismatch("disk and point have different primes")
        if not x.is_zero() and x.valuation < 0:
            return False
        if x.absolute_precision < self.level:
            raise PrecisionError(
                f"point known mod p^{x.absolute_precision}, cannot place it in a level-{self.level} disk")
        return x.residue(self.level) == self.center

    def contains_disk(self, other: "Disk") -> bool:
        return other.level >= self.level and other.center % self.prime**self.level == self.center

    def intersects(self, other: "Disk") -> bool:
        return self.contains_disk(other) or other.contains_disk(self)

    def children(self, depth: int = 1) -> List["Disk"]:
        q = self.prime**self.level
        return [Disk(self.level + depth, self.center + q * j, self.prime)
                for j in range(self.prime**depth)]

    def center_scalar(self, prec: int = EXACT_PREC) -> PadicScalar:
        return PadicScalar.from_int(self.center, self.prime, prec)

    def local_coordinate(self, x: PadicScalar) -> PadicScalar:
        return (x - self.center).shift(-self.level)

    def to_json(self):
        return {"center": self.center_scalar(max(1, self.level)).to_compact(), "level": self.level}

    @classmethod
    def from_json(cls, obj, p: int) -> "Disk":
        c = PadicScalar.from_compact(obj["center"], p)
        lvl = int(obj["level"])
        return cls(lvl, c.residue(lvl) if lvl else 0, p)


def measure(disks: Iterable[Disk]):
    from fractions import Fraction
    return sum(Fraction(1, d.prime**d.level) for d in disks)


# -- series on one disk --------------------------------------------------------

@dataclass(frozen=True)
class DiskSeries:
    disk: Disk
    coeffs: Tuple[PadicScalar, ...]
    degree_cap: int
    error_val: float = INF

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) > self.degree_cap + 1:
            raise ValueError("more coefficients than the degree cap allows")
        if not self.coeffs:
            object.__setattr__(self, "coeffs", (PadicScalar.zero(self.disk.prime),))

    @property
    def prime(self):
        return self.disk.prime

    def precision(self):
        return min([self.error_val] + [c.absolute_precision for c in self.coeffs])

    def norm_val(self):
        """Lower bound for the valuation of the function on its disk."""
        return min(gauss_val(self.coeffs), self.error_val)

    def eval_local(self, t: PadicScalar) -> PadicScalar:
        acc = PadicScalar.zero(self.prime)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc.add_bigoh(self.error_val)

    def restrict(self, sub: Disk) -> "DiskSeries":
        d = self.disk
        if not d.contains_disk(sub):
            raise ValueError(f"{sub} is not inside {d}")
        if sub == d:
            return self
        j = (sub.center - d.center) // self.prime**d.level
        c = scale_coords(taylor_shift(self.coeffs, j), sub.level - d.level)
        return DiskSeries(sub, c, self.degree_cap, self.error_val)

    def with_cap(self, cap: int) -> "DiskSeries":
        if cap >= len(self.coeffs) - 1:
            return DiskSeries(self.disk, self.coeffs, cap, self.error_val)
        dropped = gauss_val(self.coeffs[cap + 1:])
        return DiskSeries(self.disk, self.coeffs[:cap + 1], cap, min(self.error_val, dropped))


# -- locally analytic functions -----------------------------------------------

class LocFun:
    """A locally analytic function on a finite disjoint union of disks."""

    def __init__(self, pieces: Iterable[DiskSeries]):
        pieces = sorted(pieces, key=lambda s: s.disk)
        if not pieces:
            raise ValueError("a LocFun needs at least one piece")
        self.prime = pieces[0].prime
        for a, b in zip(pieces, pieces[1:]):
            if a.prime != b.prime:
                raise PrimeMismatch("pieces over different primes")
        disks = [s.disk for s in pieces]
        for i, a in enumerate(disks):
            for b in disks[i + 1:]:
                if a.intersects(b):
                    raise ValueError(f"cover disks {a} and {b} overlap")
        self.pieces: Tuple[DiskSeries, ...] = tuple(pieces)
        self._index = {}
        for s in pieces:
            self._index.setdefault(s.disk.level, {})[s.disk.center] = s

    # construction helpers
    @classmethod
    def from_polynomial(cls, coeffs: Sequence, disks: Sequence[Disk], degree_cap=None,
                        prec: int = EXACT_PREC) -> "LocFun":
        """The global polynomial sum c_n x^n restricted to ``disks``."""
        p = disks[0].prime
        cs = [c if isinstance(c, PadicScalar) else PadicScalar.from_rational(c, p, prec)
              for c in coeffs]
        cap = max(len(cs) - 1, 0) if degree_cap is None else degree_cap
        out = []
        for d in disks:
            local = scale_coords(taylor_shift(cs, d.center), d.level)
            out.append(DiskSeries(d, local, cap).with_cap(cap))
        return cls(out)

    @classmethod
    def constant(cls, value, disks: Sequence[Disk], degree_cap: int = 0,
                 prec: int = EXACT_PREC) -> "LocFun":
        return cls.from_polynomial([value], disks, degree_cap, prec)

    @property
    def domain(self) -> List[Disk]:
        return [s.disk for s in self.pieces]

    @property
    def degree_cap(self) -> int:
        return max(s.degree_cap for s in self.pieces)

    def precision(self):
        return min(s.precision() for s in self.pieces)

    def norm_val(self):
        return min(s.norm_val() for s in self.pieces)

    def find_piece(self, x: PadicScalar) -> Optional[DiskSeries]:
        if not x.is_zero() and x.valuation < 0:
            return None
        for level, table in self._index.items():
            s = table.get(x.residue(level))
            if s is not None:
                return s
        return None

    def __call__(self, x: PadicScalar) -> PadicScalar:
        return eval_at(self, x)

    def __repr__(self):
        return f"LocFun(p={self.prime}, pieces={len(self.pieces)}, cap={self.degree_cap})"

    # serialization
    def to_json(self) -> str:
        def ev(e):
            return "inf" if e == INF else int(e)
        obj = {
            "prime": self.prime,
            "domain": [d.to_json() for d in self.domain],
            "pieces": [{
                **s.disk.to_json(),
                "degree_cap": s.degree_cap,
                "coeffs": [c.to_compact() for c in s.coeffs],
                "error_val": ev(s.error_val),
            } for s in self.pieces],
        }
        return json.dumps(obj, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "LocFun":
        obj = json.loads(text)
        p = int(obj["prime"])
        pieces = []
        for s in obj["pieces"]:
            d = Disk.from_json(s, p)
            e = INF if s["error_val"] == "inf" else int(s["error_val"])
            cs = [PadicScalar.from_compact(c, p) for c in s["coeffs"]]
            pieces.append(DiskSeries(d, cs, int(s.get("degree_cap", len(cs) - 1)), e))
        f = cls(pieces)
        if sorted(Disk.from_json(d, p) for d in obj["domain"]) != sorted(f.domain):
            raise ValueError("domain list does not match the pieces")
        return f


def standard_cover(p: int, level: int, base: Disk = None) -> List[Disk]:
    """The disks of level ``level`` inside ``base`` (default Z_p)."""
    base = base or Disk(0, 0, p)
    return base.children(level - base.level) if level > base.level else [base]


# -- operations ------------------------------------------------------------

def eval_at(f: LocFun, x: PadicScalar) -> PadicScalar:
    s = f.find_piece(x)
    if s is None:
        raise DomainError(f"{x!r} is outside the domain")
    return s.eval_local(s.disk.local_coordinate(x))


def common_refinement(*covers: Sequence[Disk]) -> List[Disk]:
    current = list(covers[0])
    for other in covers[1:]:
        nxt = []
        for d in current:
            hits = [e for e in other if d.intersects(e)]
            if not hits:
                raise DomainError(f"disk {d} is not covered by the other domain")
            if len(hits) == 1 and hits[0].contains_disk(d):
                nxt.append(d)
                continue
            if measure(hits) != measure([d]) or not all(d.contains_disk(e) for e in hits):
                raise DomainError(f"domains disagree on {d}")
            nxt.extend(hits)
        if measure(nxt) != measure(other):
            raise DomainError("domains differ")
        current = nxt
    return sorted(current)


def restrict_to(f: LocFun, disks: Sequence[Disk]) -> LocFun:
    out = []
    for d in disks:
        src = next((s for s in f.pieces if s.disk.contains_disk(d)), None)
        if src is None:
            raise DomainError(f"{d} is not inside a single piece")
        out.append(src.restrict(d))
    return LocFun(out)


def refine(f: LocFun, level: int) -> LocFun:
    out = []
    for s in f.pieces:
        if s.disk.level >= level:
            out.append(s)
        else:
            out.extend(s.restrict(d) for d in s.disk.children(level - s.disk.level))
    return LocFun(out)


def linear_combine(scalars: Sequence, functions: Sequence[LocFun]) -> LocFun:
    if len(scalars) != len(functions) or not functions:
        raise ValueError("need one scalar per function")
    p = functions[0].prime
    cover = common_refinement(*[g.domain for g in functions])
    parts = [restrict_to(g, cover) for g in functions]
    out = []
    for idx, d in enumerate(cover):
        coeffs = [PadicScalar.zero(p)]
        err = INF
        cap = 0
        for a, g in zip(scalars, parts):
            s = g.pieces[idx]
            a = a if isinstance(a, PadicScalar) else PadicScalar.from_rational(a, p, EXACT_PREC)
            if a.is_exact_zero():
                continue
            coeffs = poly_add(coeffs, [a * c for c in s.coeffs])
            err = min(err, s.error_val + a.valuation)
            cap = max(cap, s.degree_cap)
        cap = max(cap, max(g.pieces[idx].degree_cap for g in parts))
        out.append(DiskSeries(d, coeffs, cap, err))
    return LocFun(out)


def add(f: LocFun, g: LocFun) -> LocFun:
    return linear_combine([1, 1], [f, g])


def sub(f: LocFun, g: LocFun) -> LocFun:
    return linear_combine([1, -1], [f, g])


def scale(f: LocFun, a) -> LocFun:
    return linear_combine([a], [f])


def multiply(f: LocFun, g: LocFun, degree_cap: int = None) -> LocFun:
    cover = common_refinement(f.domain, g.domain)
    F, G = restrict_to(f, cover), restrict_to(g, cover)
    out = []
    for a, b in zip(F.pieces, G.pieces):
        cap = max(a.degree_cap, b.degree_cap) if degree_cap is None else degree_cap
        prod, dropped = poly_mul(list(a.coeffs), list(b.coeffs), cap)
        na, nb = gauss_val(a.coeffs), gauss_val(b.coeffs)
        err = min(dropped, a.error_val + min(nb, b.error_val), b.error_val + na)
        out.append(DiskSeries(a.disk, prod, cap, err))
    return LocFun(out)


def derive(f: LocFun, times: int = 1) -> LocFun:
    """d/dx; on a level-h piece this is p^-h d/dt."""
    for _ in range(times):
        out = []
        for s in f.pieces:
            h = s.disk.level
            c = [(s.coeffs[n] * n).shift(-h) for n in range(1, len(s.coeffs))]
            if not c:
                c = [PadicScalar.zero(f.prime)]
            out.append(DiskSeries(s.disk, c, max(s.degree_cap - 1, 0), s.error_val - h))
        f = LocFun(out)
    return f


def mul_polynomial(f: LocFun, poly: Sequence, degree_cap: int = None) -> LocFun:
    """Multiply by a global polynomial in the chart coordinate x."""
    g = LocFun.from_polynomial(poly, f.domain,
                               degree_cap=max(len(poly) - 1, 0), prec=EXACT_PREC)
    cap = f.degree_cap + len(poly) - 1 if degree_cap is None else degree_cap
    return multiply(f, g, cap)


def difference_valuation(f: LocFun, g: LocFun) -> float:
    """Valuation bound of f - g over the common domain."""
    return sub(f, g).norm_val()


# -- fractional linear pullbacks ---------------------------------------------

Linear = Tuple[PadicScalar, PadicScalar]  # (slope, constant): z -> slope*z + constant


def _at(form: Linear, z: PadicScalar) -> PadicScalar:
    return form[0] * z + form[1]


def compose_on_disk(source: LocFun, disk: Disk, num: Linear, den: Linear, *,
                    weight: int = 0, kappa: PadicScalar = None, degree_cap: int,
                    target, min_ratio_val: int = 1) -> Optional[DiskSeries]:
    """Series of ``z -> kappa * den(z)^weight * source(num(z)/den(z))`` on ``disk``.

    Returns None when the disk has to be split first: the denominator is not
    a unit multiple of a constant on the disk, the image straddles source
    pieces, or the truncation error misses ``target``.
    """
    p = disk.prime
    k = disk.level
    z0 = disk.center_scalar()
    L0 = _at(den, z0)
    if L0.is_zero():
        return None
    L1 = den[0].shift(k)
    ratio_val = INF if L1.is_zero() else L1.valuation - L0.valuation
    if ratio_val < min_ratio_val:
        return None
    N0 = _at(num, z0)
    x_img = N0 / L0
    piece = source.find_piece(x_img)
    if piece is None:
        raise DomainError(f"image point {x_img!r} leaves the source domain")
    det = num[0] * den[1] - num[1] * den[0]
    if det.is_zero():
        raise DomainError("degenerate fractional linear map")
    img_level = k + det.valuation - 2 * L0.valuation
    l = piece.disk.level
    if img_level < l:
        return None

    a = PadicScalar.from_int(piece.disk.center, p, EXACT_PREC)
    # local source coordinate s = nt(t) / L(t)
    nt0 = (N0 - a * L0).shift(-l)
    nt1 = (num[0] - a * den[0]).shift(k - l)
    c = list(piece.coeffs)
    D = len(c) - 1
    Lpoly = [L0, L1]
    Lpow = [[PadicScalar.from_int(1, p, EXACT_PREC)]]
    for _ in range(D):
        Lpow.append(poly_mul(Lpow[-1], Lpoly, D)[0])
    acc = [c[D]]
    for i in range(D - 1, -1, -1):
        acc = poly_add(poly_mul(acc, [nt0, nt1], D)[0], [c[i] * x for x in Lpow[D - i]])
    kappa = kappa if kappa is not None else PadicScalar.from_int(1, p, EXACT_PREC)

    q = weight - D
    if q >= 0:
        out, dropped = poly_mul(acc, [kappa * x for x in _lpow(Lpoly, q)], degree_cap)
    else:
        lead = kappa * L0**q
        if ratio_val == INF:
            full = [lead * x for x in acc]
            out, dropped = full[:degree_cap + 1], gauss_val(full[degree_cap + 1:])
        else:
            r = L1 / L0
            ser = []
            rp = PadicScalar.from_int(1, p, EXACT_PREC)
            for j in range(degree_cap + 1):
                ser.append(rp * comb_signed(q, j))
                rp = rp * r
            out, _ = poly_mul(acc, ser, degree_cap)
            out = [lead * x for x in out]
            # coefficient j of (1 + r t)^q has valuation >= j * val(r)
            dropped = lead.valuation + min(
                (_val(acc[i]) + max(0, degree_cap + 1 - i) * ratio_val
                 for i in range(len(acc))), default=INF)
    tail = piece.error_val + kappa.valuation + weight * L0.valuation
    err = min(dropped, tail)
    if err < target:
        return None
    return DiskSeries(disk, out, degree_cap, err)


def _lpow(Lpoly, q):
    out = [PadicScalar.from_int(1, Lpoly[0].prime, EXACT_PREC)]
    for _ in range(q):
        out = poly_mul(out, Lpoly, len(out))[0]
    return out


def comb_signed(q: int, j: int) -> int:
    """Generalized binomial coefficient C(q, j) for any integer q."""
    if q >= 0:
        return comb(q, j)
    return (-1) ** j * comb(-q + j - 1, j)


def build_adaptive(disks: Iterable[Disk], planner: Callable[[Disk], Optional[DiskSeries]],
                   max_level: int = MAX_LEVEL) -> LocFun:
    """Split disks until ``planner`` accepts each one."""
    out = []
    stack = list(disks)
    while stack:
        d = stack.pop()
        s = planner(d)
        if s is not None:
            out.append(s)
            continue
        if d.level >= max_level or len(stack) + len(out) > MAX_PIECES:
            raise PrecisionError(
                f"no analytic expansion on {d} down to level {max_level} (pole or precision)")
        stack.extend(d.children())
    return LocFun(out)


def mobius_pullback(f: LocFun, matrix, domain: Sequence[Disk] = None, *,
                    degree_cap: int = None, target=None, max_level: int = MAX_LEVEL) -> LocFun:
    """g(x) = f((a x + b)/(c x + d)) on ``domain`` (default: f's own cover)."""
    p = f.prime
    a, b, c, d = [x if isinstance(x, PadicScalar) else PadicScalar.from_rational(x, p, EXACT_PREC)
                  for x in matrix]
    domain = f.domain if domain is None else domain
    cap = max(f.degree_cap, PULLBACK_DEGREE) if degree_cap is None else degree_cap
    if target is None:
        target = min([f.precision(), DEFAULT_TARGET] + [x.absolute_precision for x in (a, b, c, d)])
    tgt = target

    def planner(disk):
        return compose_on_disk(f, disk, (a, b), (c, d), degree_cap=cap, target=tgt)

    return build_adaptive(domain, planner, max_level)

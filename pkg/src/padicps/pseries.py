"""The locally analytic principal series of SL_2(Q_p) in two charts.

An element ``f`` (with ``f(gb) = sigma(b_11) f(g)`` for lower triangular
``b``, where ``sigma(t) = chi(diag(t^-1, t))``) is stored through

* ``chart_minus``: ``F1(x) = f(u^-(x))`` for ``x`` in Z_p, the big cell;
* ``chart_w``: ``F2(y) = f(u(y) w)`` for ``y`` in pZ_p, its complement.

A group element ``h`` with second column ``(P, Q)`` lies in the first cell
when ``P/Q`` is integral, and then ``f(h) = sigma(1/Q) F1(P/Q)``; otherwise
``Q/P`` is in pZ_p and ``f(h) = sigma(-1/P) F2(Q/P)``.  Left translation
``(g f)(h) = f(g^-1 h)`` therefore acts chartwise by fractional linear
substitutions with a multiplier, computed disk by disk.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Optional, Sequence

from . import laf
from .characters import (SmoothCharacter, TorusCharacter, c_of, eval_sigma, parse_character,
                         twist_eps)
from .group import GroupElement, LieElement, random_sl2_z
from .laf import Disk, DiskSeries, LocFun
from .linalg import padic_rank, rank_exact
from .padic import INF, DEFAULT_PREC, PadicScalar, PrecisionError

# extra digits of truncation accuracy requested beyond the input precision,
# so that a few derivatives afterwards do not eat into the significant digits
ACT_MARGIN = 10
# working degree cap for translated functions; higher caps mean coarser covers
ACT_DEGREE = 20


class SimpleCharacterError(ValueError):
    """Raised when the intertwiner is requested for a character with c not in -N_0."""


def minus_base(p: int) -> Disk:
    return Disk(0, 0, p)


def w_base(p: int) -> Disk:
    return Disk(1, 0, p)


def slice_covers(p: int, h: int):
    """Level-h cover of Z_p and the matching p^h disks of pZ_p."""
    return laf.standard_cover(p, h), laf.standard_cover(p, h + 1, w_base(p))


@dataclass(frozen=True)
class PSElement:
    chart_minus: LocFun
    chart_w: LocFun
    chi: TorusCharacter

    def __post_init__(self):
        if self.chi.m is None:
            raise ValueError("charts are only modelled for integral weight m")
        p = self.chi.prime
        if self.chart_minus.prime != p or self.chart_w.prime != p:
            raise ValueError("charts and character live over different primes")
        if laf.measure(self.chart_minus.domain) != 1 or laf.measure(self.chart_w.domain) != Fraction(1, p):
            raise ValueError("chart_minus must cover Z_p and chart_w must cover pZ_p")
        if not all(w_base(p).contains_disk(d) for d in self.chart_w.domain):
            raise ValueError("chart_w must live on pZ_p")

    @property
    def prime(self) -> int:
        return self.chi.prime

    def precision(self):
        return min(self.chart_minus.precision(), self.chart_w.precision())

    def degree_cap(self) -> int:
        return max(self.chart_minus.degree_cap, self.chart_w.degree_cap)

    def charts(self):
        return (self.chart_minus, self.chart_w)

    def map_charts(self, f1, f2=None, chi=None) -> "PSElement":
        f2 = f1 if f2 is None else f2
        return PSElement(f1(self.chart_minus), f2(self.chart_w), chi or self.chi)

    def to_json(self) -> str:
        return json.dumps({"chi": self.chi.to_spec(), "chart_minus": json.loads(self.chart_minus.to_json()),
                           "chart_w": json.loads(self.chart_w.to_json())}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PSElement":
        obj = json.loads(text)
        f1 = LocFun.from_json(json.dumps(obj["chart_minus"]))
        f2 = LocFun.from_json(json.dumps(obj["chart_w"]))
        return cls(f1, f2, parse_character(obj["chi"], f1.prime))


def from_polynomials(chi: TorusCharacter, poly_minus, poly_w, h: int = 0, prec: int = laf.EXACT_PREC,
                     degree_cap: int = None) -> PSElement:
    """The element whose charts are the given global polynomials."""
    c1, c2 = slice_covers(chi.prime, h)
    return PSElement(LocFun.from_polynomial(poly_minus, c1, degree_cap, prec),
                     LocFun.from_polynomial(poly_w, c2, degree_cap, prec), chi)


def random_element(chi: TorusCharacter, h: int, degree: int, prec: int,
                   rng: random.Random) -> PSElement:
    """Random polynomials of degree <= ``degree`` on each disk of the level-h slice.

    On a disk ``a + p^k Z_p`` the coefficient of ``(x - a)^n`` is a random
    integer known mod ``p^prec``, so values and x-derivatives are known to
    ``prec`` digits.
    """
    p = chi.prime
    mod = p**prec

    def rand(cover):
        return LocFun([DiskSeries(d, [PadicScalar.from_int(rng.randrange(mod), p, prec).shift(d.level * n)
                                      for n in range(degree + 1)], degree) for d in cover])

    c1, c2 = slice_covers(p, h)
    return PSElement(rand(c1), rand(c2), chi)


def zero_element(chi: TorusCharacter, h: int = 0) -> PSElement:
    return from_polynomials(chi, [0], [0], h)


def sub(a: PSElement, b: PSElement) -> PSElement:
    return PSElement(laf.sub(a.chart_minus, b.chart_minus), laf.sub(a.chart_w, b.chart_w), a.chi)


def add(a: PSElement, b: PSElement) -> PSElement:
    return PSElement(laf.add(a.chart_minus, b.chart_minus), laf.add(a.chart_w, b.chart_w), a.chi)


def scale(a: PSElement, s) -> PSElement:
    return a.map_charts(lambda f: laf.scale(f, s))


def linear_combine(scalars, elements: Sequence[PSElement]) -> PSElement:
    return PSElement(laf.linear_combine(scalars, [e.chart_minus for e in elements]),
                     laf.linear_combine(scalars, [e.chart_w for e in elements]), elements[0].chi)


# -- pointwise model -------------------------------------------------------------

def evaluate_on_group(phi: PSElement, h: GroupElement) -> PadicScalar:
    """f(h), read from whichever chart contains the cell of ``h``."""
    P, Q = h.b, h.d
    if P.is_zero() and Q.is_zero():
        raise PrecisionError("second column indistinguishable from zero")
    if not Q.is_zero() and (P.is_zero() or P.valuation >= Q.valuation):
        return eval_sigma(phi.chi, Q.inverse()) * phi.chart_minus(P / Q)
    return eval_sigma(phi.chi, -P.inverse()) * phi.chart_w(Q / P)


def chart_point(chart: int, x: PadicScalar) -> GroupElement:
    """u^-(x) for chart 0 and u(x) w for chart 1."""
    p = x.prime
    one = PadicScalar.from_int(1, p, laf.EXACT_PREC)
    zero = PadicScalar.zero(p)
    if chart == 0:
        return GroupElement(one, x, zero, one)
    return GroupElement(zero, -one, one, -x)


# -- group action ------------------------------------------------------------

def _forms(ginv: GroupElement, chart: int):
    """(P, Q) as linear forms of the chart coordinate, for the column g^-1 * (chart point)."""
    A, B, C, D = ginv.entries
    if chart == 0:
        return (A, B), (C, D)
    return (-B, -A), (-D, -C)


def act(g: GroupElement, phi: PSElement, *, degree_cap: int = None, target=None,
        max_level: int = laf.MAX_LEVEL) -> PSElement:
    """Left translation ``(g f)(h) = f(g^-1 h)``.

    The output cover is found adaptively: every disk is split until both the
    cell of its image and the analytic expansion are settled to ``target``.
    """
    p = phi.prime
    if g.prime != p:
        raise ValueError("group element over a different prime")
    chi = phi.chi
    m = chi.m
    lc = chi.smooth
    cap = max(phi.degree_cap(), ACT_DEGREE) if degree_cap is None else degree_cap
    if target is None:
        target = min(phi.precision(), g.precision()) + ACT_MARGIN
    ginv = g.inverse()
    ratio_floor = max(1, lc.conductor)
    sign = PadicScalar.from_int((-1) ** (m % 2), p, laf.EXACT_PREC)

    def planner_for(chart):
        Pf, Qf = _forms(ginv, chart)

        def planner(disk: Disk) -> Optional[DiskSeries]:
            z0 = disk.center_scalar()
            P0, Q0 = laf._at(Pf, z0), laf._at(Qf, z0)
            if not Q0.is_zero() and (P0.is_zero() or P0.valuation >= Q0.valuation):
                kappa = lc(Q0.inverse())
                return laf.compose_on_disk(phi.chart_minus, disk, Pf, Qf, weight=m, kappa=kappa,
                                           degree_cap=cap, target=target, min_ratio_val=ratio_floor)
            if P0.is_zero():
                return None
            kappa = sign * lc(-P0.inverse())
            return laf.compose_on_disk(phi.chart_w, disk, Qf, Pf, weight=m, kappa=kappa,
                                       degree_cap=cap, target=target, min_ratio_val=ratio_floor)

        return planner

    f1 = laf.build_adaptive(phi.chart_minus.domain, planner_for(0), max_level)
    f2 = laf.build_adaptive(phi.chart_w.domain, planner_for(1), max_level)
    return PSElement(f1, f2, chi)


# -- Lie algebra action --------------------------------------------------------

def lie_act(X: LieElement, phi: PSElement) -> PSElement:
    """Derivative of ``t -> exp(tX) f`` at 0, as first-order operators per chart.

    With X = ((a, b), (c, -a)) and c(chi) the weight:
      chart_minus:  -c(chi)(a - c x) F + (c x^2 - 2 a x - b) F'
      chart_w:       c(chi)(a + b y) F + (b y^2 + 2 a y - c) F'
    """
    p = phi.prime
    cc = c_of(phi.chi, laf.EXACT_PREC)
    a, b, c = X.h, X.u_minus, X.u

    def op(F, mult, vec):
        cap = F.degree_cap + 1
        t1 = laf.mul_polynomial(F, mult, cap)
        t2 = laf.mul_polynomial(laf.derive(F), vec, cap)
        return laf.add(t1, t2)

    F1 = op(phi.chart_minus, [-cc * a, cc * c], [-b, -2 * a, c])
    F2 = op(phi.chart_w, [cc * a, cc * b], [-c, 2 * a, b])
    return PSElement(F1, F2, phi.chi)


# -- intertwiner and the embedding of E (x) smooth -----------------------------------

def intertwine(phi: PSElement) -> PSElement:
    """The (m+1)-fold derivative along u^-, landing in Ind(chi eps^(m+1))."""
    m = phi.chi.m
    if m is None or m < 0:
        raise SimpleCharacterError("intertwiner needs c(chi) = -m with m >= 0; this principal series is simple")
    chi2 = twist_eps(phi.chi, m + 1)
    f1 = laf.derive(phi.chart_minus, m + 1)
    f2 = laf.derive(phi.chart_w, m + 1)
    if (m + 1) % 2:
        f2 = laf.scale(f2, -1)
    return PSElement(f1, f2, chi2)


class AlgebraicRep:
    """Sym^m of the standard representation, on homogeneous Q(b, d) of degree m.

    The basis vector ``i`` is ``b^i d^(m-i)`` and ``(g Q)(v) = Q(g^-1 v)``.
    Matrix entries are computed in whatever ring the group entries live in.
    """

    def __init__(self, m: int):
        if m < 0:
            raise ValueError("m must be >= 0")
        self.m = m

    @property
    def dim(self) -> int:
        return self.m + 1

    def matrix(self, entries, one=1, zero=0):
        """Columns are the images of the basis monomials; ``entries`` = (a, b, c, d) of g."""
        a, b, c, d = entries
        nb, nd = [d, -b], [-c, a]   # new b = d*b - b*d, new d = -c*b + a*d, as (coef of b, coef of d)
        m = self.m

        def power(lin, k):
            # coefficient list indexed by the power of b
            out = [one]
            for _ in range(k):
                nxt = [zero] * (len(out) + 1)
                for j, x in enumerate(out):
                    nxt[j + 1] = nxt[j + 1] + x * lin[0]
                    nxt[j] = nxt[j] + x * lin[1]
                out = nxt
            return out

        cols = []
        for i in range(m + 1):
            u, v = power(nb, i), power(nd, m - i)
            col = [zero] * (m + 1)
            for j, x in enumerate(u):
                for k, y in enumerate(v):
                    col[j + k] = col[j + k] + x * y
            cols.append(col)
        return [[cols[j][i] for j in range(m + 1)] for i in range(m + 1)]

    def act(self, g: GroupElement, vec):
        M = self.matrix(g.entries, PadicScalar.from_int(1, g.prime, laf.EXACT_PREC), PadicScalar.zero(g.prime))
        return [sum((M[i][j] * vec[j] for j in range(len(vec))), PadicScalar.zero(g.prime))
                for i in range(len(vec))]

    def chart_polynomials(self, coeffs):
        """Q(x, 1) and Q(-1, -y) as coefficient lists in the chart coordinate."""
        m = self.m
        if len(coeffs) > m + 1:
            raise ValueError(f"polynomial degree exceeds m = {m}")
        coeffs = list(coeffs) + [0] * (m + 1 - len(coeffs))
        q1 = list(coeffs)
        # b^i d^(m-i) at (-1, -y) is (-1)^m y^(m-i)
        q2 = [0] * (m + 1)
        for i, c in enumerate(coeffs):
            q2[m - i] = c * (-1) ** m
        return q1, q2


def tau(E: AlgebraicRep, coeffs, lc_minus: LocFun, lc_w: LocFun, chi: TorusCharacter) -> PSElement:
    """The product psi * f of an algebraic vector and a locally constant pair."""
    if chi.m != E.m:
        raise ValueError("the character weight does not match E")
    for f in (lc_minus, lc_w):
        for s in f.pieces:
            if any(not c.is_zero() for c in s.coeffs[1:]):
                raise ValueError("lc_data is not locally constant")
    q1, q2 = E.chart_polynomials(coeffs)
    return PSElement(laf.mul_polynomial(lc_minus, q1), laf.mul_polynomial(lc_w, q2), chi)


# -- slice linear algebra ----------------------------------------------------------

def _indicator(cover, disk, j, cap, p, prec):
    zero = PadicScalar.zero(p)
    pieces = []
    for d in cover:
        cs = [zero] * (cap + 1)
        if d == disk:
            cs[j] = PadicScalar.from_int(1, p, prec)
        pieces.append(DiskSeries(d, cs, cap))
    return LocFun(pieces)


def slice_basis(chi: TorusCharacter, h: int, D: int, prec: int) -> List[PSElement]:
    """Monomials t^j (local coordinate) on one disk of one chart, zero elsewhere."""
    p = chi.prime
    c1, c2 = slice_covers(p, h)
    z1 = _indicator(c1, None, 0, D, p, prec)
    z2 = _indicator(c2, None, 0, D, p, prec)
    out = []
    for d in c1:
        for j in range(D + 1):
            out.append(PSElement(_indicator(c1, d, j, D, p, prec), z2, chi))
    for d in c2:
        for j in range(D + 1):
            out.append(PSElement(z1, _indicator(c2, d, j, D, p, prec), chi))
    return out


def slice_coordinates(phi: PSElement, h: int, D: int) -> List[PadicScalar]:
    p = phi.prime
    c1, c2 = slice_covers(p, h)
    out = []
    for f, cover in ((phi.chart_minus, c1), (phi.chart_w, c2)):
        g = laf.restrict_to(f, cover)
        for s in g.pieces:
            if len(s.coeffs) > D + 1 and any(not c.is_zero() for c in s.coeffs[D + 1:]):
                raise ValueError("element has degree above the slice bound")
            if s.error_val != INF:
                raise PrecisionError("slice coordinates need exact pieces")
            cs = list(s.coeffs[:D + 1]) + [PadicScalar.zero(p)] * (D + 1 - len(s.coeffs))
            out.extend(cs)
    return out


@dataclass
class ExactnessReport:
    p: int
    m: int
    h: int
    D: int
    N: int
    chi_lc: str
    kernel_dim: int
    tau_rank: int
    image_dim: int
    tau_in_kernel: bool
    expected_kernel: int
    expected_image: int
    seed: Optional[int] = None

    @property
    def verdict(self) -> str:
        ok = (self.kernel_dim == self.expected_kernel and self.tau_rank == self.expected_kernel
              and self.tau_in_kernel and self.image_dim == self.expected_image)
        return "exact" if ok else "fail"

    def to_json(self) -> dict:
        return {
            "slice": {"p": self.p, "m": self.m, "h": self.h, "D": self.D, "N": self.N,
                      "chi_lc": self.chi_lc, "dimension": 2 * self.p**self.h * (self.D + 1)},
            "kernel_dim": self.kernel_dim,
            "tau_rank": self.tau_rank,
            "image_dim": self.image_dim,
            "tau_in_kernel": self.tau_in_kernel,
            "verdict": self.verdict,
            "seed": self.seed,
        }


def _lc_spec(lc: SmoothCharacter) -> str:
    unit = ",".join(z.to_compact() for z in lc.unit_values)
    return f"cond={lc.conductor};unit={unit};at_p={lc.value_at_p.to_compact()}"


def exactness_check(p: int, m: int, chi_lc: SmoothCharacter, h: int, D: int, N: int) -> ExactnessReport:
    """Ranks of the intertwiner and of tau on the level-h, degree-<=D slice."""
    if D < m + 1:
        raise ValueError("need D >= m + 1")
    if m < 0:
        raise SimpleCharacterError("m must be >= 0")
    chi = TorusCharacter(m, chi_lc)
    basis = slice_basis(chi, h, D, N)
    Dt = D - (m + 1)
    cols = [slice_coordinates(intertwine(b), h, Dt) for b in basis]
    image = padic_rank([list(r) for r in zip(*cols)])
    dim = len(basis)

    E = AlgebraicRep(m)
    c1, c2 = slice_covers(p, h)
    one = [PadicScalar.from_int(1, p, N)]
    tau_cols, tau_ok = [], True
    for chart, cover in ((0, c1), (1, c2)):
        for d in cover:
            ind = LocFun([DiskSeries(e, one if e == d else [PadicScalar.zero(p)], 0) for e in cover])
            zero = LocFun.constant(0, c2 if chart == 0 else c1)
            pair = (ind, zero) if chart == 0 else (zero, ind)
            for i in range(m + 1):
                mono = [0] * i + [1]
                v = tau(E, mono, pair[0], pair[1], chi)
                tau_cols.append(slice_coordinates(v, h, D))
                iv = intertwine(v)
                tau_ok &= all(c.is_zero() for f in iv.charts() for s in f.pieces for c in s.coeffs)
    tau_rank = padic_rank([list(r) for r in zip(*tau_cols)]).rank
    return ExactnessReport(p, m, h, D, N, _lc_spec(chi_lc), dim - image.rank, tau_rank, image.rank,
                           tau_ok, 2 * p**h * (m + 1), 2 * p**h * (Dt + 1))


# -- generation ------------------------------------------------------------------

@dataclass
class GenerationReport:
    rank: int
    expected: int
    samples: int
    seed: int

    @property
    def full(self) -> bool:
        return self.rank == self.expected

    def to_json(self):
        return {"rank": self.rank, "expected": self.expected, "full": self.full,
                "samples": self.samples, "seed": self.seed}


def generation_check(E: AlgebraicRep, V, samples: int, seed: int, x=None) -> GenerationReport:
    """Rank of the span of g x over seeded samples g in SL_2(Z), x in E (x) V.

    ``V`` needs ``dim``, ``prime`` and ``integral_matrix(entries)`` returning an
    exact square matrix for an integer matrix of determinant 1.
    """
    rng = random.Random(seed)
    n1, n2 = E.dim, V.dim
    if x is None:
        x = [[0] * n2 for _ in range(n1)]
        while all(v == 0 for row in x for v in row):
            x = [[rng.randint(-5, 5) for _ in range(n2)] for _ in range(n1)]
    x = [[Fraction(v) for v in row] for row in x]
    vecs = []
    for _ in range(samples):
        ent = random_sl2_z(rng)
        A = E.matrix(ent)
        B = V.integral_matrix(ent)
        AX = [[sum(A[i][k] * x[k][j] for k in range(n1)) for j in range(n2)] for i in range(n1)]
        Y = [[sum(AX[i][k] * B[j][k] for k in range(n2)) for j in range(n2)] for i in range(n1)]
        vecs.append([v for row in Y for v in row])
    return GenerationReport(rank_exact(vecs), n1 * n2, samples, seed)

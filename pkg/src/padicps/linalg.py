"""Exact linear algebra over Q, F_l and Q_p (at tracked precision)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from .padic import DEFAULT_PREC, INF, PadicScalar, PrecisionError


def _qq(rows):
    rows = [[Fraction(x) for x in row] for row in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix.from_list(rows, QQ) if rows else DomainMatrix([], (0, ncols), QQ)


def rank_exact(rows: Sequence[Sequence]) -> int:
    """Rank over Q of a matrix with int/Fraction entries."""
    if not rows or not rows[0]:
        return 0
    return _qq(rows).rank()


def nullspace_exact(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    """Basis (as row vectors) of {v : M v = 0} over Q."""
    ns = _qq(rows).nullspace().to_list()
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in v] for v in ns]


def rank_mod(rows, ell: int) -> int:
    if not rows or not rows[0]:
        return 0
    return DomainMatrix.from_list([[x % ell for x in r] for r in rows], GF(ell)).rank()


def nullspace_mod(rows, ell: int) -> List[List[int]]:
    M = DomainMatrix.from_list([[x % ell for x in r] for r in rows], GF(ell))
    return [[int(x) % ell for x in v] for v in M.nullspace().to_list()]


def transpose(rows):
    return [list(c) for c in zip(*rows)]


@dataclass
class PadicEchelon:
    rank: int
    pivot_valuations: List[int]
    residual_floor: float = INF
    pivots: List[tuple] = field(default_factory=list)


def padic_rank(rows: Sequence[Sequence[PadicScalar]]) -> PadicEchelon:
    """Gaussian elimination over Q_p with full pivoting on minimal valuation.

    The rank counts pivots that are nonzero at their tracked precision.  The
    residual block left at the end consists of values indistinguishable from
    zero; if any of them is known to fewer digits than the largest pivot
    valuation seen, the rank is not certified and PrecisionError is raised.
    """
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    rows_left = list(range(m))
    cols_left = list(range(n))
    pivots, pvals = [], []
    while rows_left and cols_left:
        best = None
        for i in rows_left:
            Ai = A[i]
            for j in cols_left:
                x = Ai[j]
                if not x.is_zero() and (best is None or x.valuation < best[0]):
                    best = (x.valuation, i, j)
        if best is None:
            break
        _, pi, pj = best
        piv = A[pi][pj]
        rows_left.remove(pi)
        cols_left.remove(pj)
        pivots.append((pi, pj))
        pvals.append(piv.valuation)
        prow = A[pi]
        for i in rows_left:
            x = A[i][pj]
            if x.is_exact_zero():
                continue
            f = x / piv
            Ai = A[i]
            for j in cols_left:
                if not prow[j].is_exact_zero():
                    Ai[j] = Ai[j] - f * prow[j]
            Ai[pj] = PadicScalar.zero(x.prime)
    floor = INF
    for i in rows_left:
        for j in cols_left:
            floor = min(floor, A[i][j].absolute_precision)
    if pvals and floor <= max(pvals):
        raise PrecisionError(
            f"rank not certified: residual entries known only mod p^{floor}, "
            f"pivot valuation reached {max(pvals)}")
    return PadicEchelon(len(pivots), pvals, floor, pivots)


def padic_nullspace(rows: Sequence[Sequence[PadicScalar]], ncols: int = None) -> List[List[PadicScalar]]:
    """Kernel basis over Q_p by Gauss-Jordan with minimal-valuation row pivots.

    Entries that are zero at their tracked precision count as zero, so the
    result is the kernel of the matrix as known to that precision.
    """
    A = [list(r) for r in rows]
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return []
    p = A[0][0].prime
    pivots = []
    r = 0
    for j in range(n):
        best = None
        for i in range(r, len(A)):
            x = A[i][j]
            if not x.is_zero() and (best is None or x.valuation < A[best][j].valuation):
                best = i
        if best is None:
            continue
        A[r], A[best] = A[best], A[r]
        inv = A[r][j].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and not A[i][j].is_exact_zero():
                f = A[i][j]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
        if r == len(A):
            break
    free = [j for j in range(n) if j not in pivots]
    finite = [x.absolute_precision for row in A for x in row if x.absolute_precision != INF]
    one = PadicScalar.from_int(1, p, max(finite, default=DEFAULT_PREC))
    out = []
    for fj in free:
        v = [PadicScalar.zero(p)] * n
        v[fj] = one
        for i, pj in enumerate(pivots):
            v[pj] = -A[i][fj]
        out.append(v)
    return out

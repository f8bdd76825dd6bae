"""Smooth induction from the lower Borel at a finite level.

A vector of ``Ind_{P,inf}(chi_lc)`` fixed by the principal congruence
subgroup ``K(n)`` is determined by its values on fixed representatives of
``SL_2(Z_p) / (P K(n))``, which is P^1(Z/p^n) through the second column:

* ``[1 : b]``, ``b`` mod p^n, with representative ``((0, 1), (-1, b))``;
* ``[a : 1]``, ``a`` in pZ/p^n, with representative ``((1, a), (0, 1))``.

The same integer formulas are used at every level, so a level-n point and
its lifts have representatives that agree mod p^n.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .characters import SmoothCharacter, _dlog_table, unit_generators
from .group import GroupElement, identity, lower_unipotent, torus, upper_unipotent, weyl
from .linalg import nullspace_exact, padic_nullspace, transpose
from .padic import DEFAULT_PREC, PadicScalar, PrecisionError, as_rational


class P1Point(NamedTuple):
    kind: str   # "b" for [1 : value], "a" for [value : 1]
    value: int

    def coordinates(self) -> Tuple[int, int]:
        return (1, self.value) if self.kind == "b" else (self.value, 1)

    def representative(self) -> Tuple[int, int, int, int]:
        if self.kind == "b":
            return (0, 1, -1, self.value)
        return (1, self.value, 0, 1)

    def reduce(self, n: int, p: int) -> "P1Point":
        return P1Point(self.kind, self.value % p**n)


def normalize_column(X: PadicScalar, Y: PadicScalar, n: int) -> P1Point:
    """The point of P^1(Z/p^n) through a primitive integral column (X, Y)."""
    if not X.is_zero() and X.valuation == 0:
        return P1Point("b", (Y / X).residue(n))
    if not Y.is_zero() and Y.valuation == 0:
        return P1Point("a", (X / Y).residue(n))
    raise PrecisionError("column is not visibly primitive at this precision")


def iwasawa_factor(M: GroupElement) -> Tuple[GroupElement, GroupElement]:
    """M = k b with k in SL_2(Z_p) and b lower triangular."""
    p = M.prime
    if M.is_integral():
        return M, identity(p, M.precision())
    X, Y = M.b, M.d
    if X.is_zero() and Y.is_zero():
        raise PrecisionError("second column indistinguishable from zero")
    one = PadicScalar.from_int(1, p, max(M.precision(), DEFAULT_PREC))
    zero = PadicScalar.zero(p)
    if not X.is_zero() and (Y.is_zero() or X.valuation <= Y.valuation):
        y = Y / X
        k = GroupElement(zero, one, -one, y)
        kinv = GroupElement(y, -one, one, zero)
    else:
        x = X / Y
        k = GroupElement(one, x, zero, one)
        kinv = GroupElement(one, -x, zero, one)
    b = kinv @ M
    b = GroupElement(b.a, zero, b.c, b.d)
    return k, b


def _as_group(entries, p: int, prec: int) -> GroupElement:
    return GroupElement.of(*entries, p, prec)


def default_generators(p: int, prec: int = DEFAULT_PREC) -> List[GroupElement]:
    """u(1), u^-(1), w, diag(s^-1, s) for the unit generator s, diag(p^-1, p)."""
    gens = [lower_unipotent(1, p, prec), upper_unipotent(1, p, prec), weyl(p, prec)]
    units = unit_generators(p, 2)
    for s in units:
        gens.append(torus(s, p, prec))
    gens.append(torus(p, p, prec))
    return gens


class SmoothPSModule:
    """K(n)-fixed vectors of the smooth principal series, basis indexed by P1Point."""

    def __init__(self, p: int, n: int, chi_lc: SmoothCharacter, prec: int = DEFAULT_PREC):
        if n < 1:
            raise ValueError("level must be >= 1")
        if chi_lc.prime != p:
            raise ValueError("character over a different prime")
        if chi_lc.conductor > n:
            raise ValueError(f"conductor {chi_lc.conductor} exceeds level {n}")
        self.p, self.n, self.chi_lc, self.prec = p, n, chi_lc, prec
        q = p**n
        self.points: List[P1Point] = [P1Point("b", b) for b in range(q)] + [
            P1Point("a", a) for a in range(0, q, p)]
        self.index = {pt: i for i, pt in enumerate(self.points)}
        self._rational = self._rational_values()

    @property
    def prime(self) -> int:
        return self.p

    @property
    def dim(self) -> int:
        return len(self.points)

    @property
    def exact(self) -> bool:
        """True when the character is rational valued and matrices are over Q."""
        return self._rational is not None

    def _rational_values(self):
        units = [as_rational(z) for z in self.chi_lc.unit_values]
        at_p = as_rational(self.chi_lc.value_at_p)
        if at_p is None or any(u is None for u in units):
            return None
        return units, at_p

    def at_level(self, n: int) -> "SmoothPSModule":
        return self if n == self.n else SmoothPSModule(self.p, n, self.chi_lc, self.prec)

    def char_value(self, t: PadicScalar):
        """chi_lc(t), as a Fraction in exact mode."""
        if self._rational is None:
            return self.chi_lc(t)
        units, at_p = self._rational
        out = at_p ** t.valuation
        n = self.chi_lc.conductor
        if n:
            table, _ = _dlog_table(self.p, n)
            for z, k in zip(units, table[t.unit_part().residue(n)]):
                out *= z**k
        return out

    def _zero(self):
        return Fraction(0) if self.exact else PadicScalar.zero(self.p)

    def _one(self):
        return Fraction(1) if self.exact else PadicScalar.from_int(1, self.p, self.prec)

    # -- action ------------------------------------------------------------------

    def target_level(self, g: GroupElement) -> int:
        v = g.min_valuation()
        return self.n + 2 * max(0, -v)

    def matrix(self, g: GroupElement) -> Tuple["SmoothPSModule", list]:
        """(V_n', rho(g)) with rho(g) mapping level-n coordinates to level n'."""
        p, n = self.p, self.n
        out = self.at_level(self.target_level(g))
        ginv = g.inverse()
        rows = []
        for pt in out.points:
            row = [self._zero()] * self.dim
            k_pt = _as_group(pt.representative(), p, self.prec)
            M = ginv @ k_pt
            k, b = iwasawa_factor(M)
            target = normalize_column(k.b, k.d, n)
            rep = _as_group(target.representative(), p, self.prec)
            inner = rep.inverse() @ k
            row[self.index[target]] = self.char_value(b.a) * self.char_value(inner.a)
            rows.append(row)
        return out, rows

    def integral_matrix(self, entries) -> list:
        """Action of an integer matrix of determinant 1 (square, exact mode)."""
        g = _as_group(entries, self.p, self.prec)
        _, rows = self.matrix(g)
        return rows

    def act(self, g: GroupElement, vec: Sequence) -> Tuple["SmoothPSModule", list]:
        out, rows = self.matrix(g)
        return out, [sum((r[j] * vec[j] for j in range(self.dim) if r[j] != 0), self._zero())
                     for r in rows]

    def inclusion(self, target: "SmoothPSModule") -> list:
        """Matrix of the inclusion V_n -> V_n' (n' >= n)."""
        rows = []
        for pt in target.points:
            row = [self._zero()] * self.dim
            row[self.index[pt.reduce(self.n, self.p)]] = self._one()
            rows.append(row)
        return rows

    def averaging(self, source: "SmoothPSModule") -> list:
        """The K(n)-average V_n' -> V_n: mean over the lifts of each point."""
        w = Fraction(1, self.p ** (source.n - self.n))
        w = w if self.exact else PadicScalar.from_rational(w, self.p, self.prec)
        rows = [[self._zero()] * source.dim for _ in range(self.dim)]
        for j, pt in enumerate(source.points):
            rows[self.index[pt.reduce(self.n, self.p)]][j] = w
        return rows

    def constant_vector(self) -> list:
        return [self._one()] * self.dim

    def _nullspace(self, rows):
        if self.exact:
            return nullspace_exact(rows)
        return padic_nullspace(rows, self.dim)

    # -- serialization ---------------------------------------------------------------

    def to_json(self) -> str:
        lc = self.chi_lc
        spec = (f"cond={lc.conductor};unit={','.join(z.to_compact() for z in lc.unit_values)};"
                f"at_p={lc.value_at_p.to_compact()}")
        return json.dumps({"p": self.p, "level": self.n, "chi_lc": spec,
                           "points": [list(pt.coordinates()) for pt in self.points]}, sort_keys=True)


def scalar_string(x) -> str:
    return x.to_compact() if isinstance(x, PadicScalar) else str(x)


def export_matrix(rows) -> str:
    return json.dumps([[scalar_string(x) for x in r] for r in rows])


def smooth_act(g: GroupElement, V: SmoothPSModule, vec: Sequence):
    return V.act(g, vec)


def _mat_sub(A, B):
    return [[x - y for x, y in zip(a, b)] for a, b in zip(A, B)]


def _mat_mul(A, B, zero):
    Bt = transpose(B)
    return [[sum((x * y for x, y in zip(r, c) if x != 0 and y != 0), zero) for c in Bt] for r in A]


def invariant_vectors(V: SmoothPSModule, generators: Sequence[GroupElement] = None) -> list:
    """Basis of the vectors fixed by every generator (compared after raising level)."""
    gens = default_generators(V.p, V.prec) if generators is None else generators
    stacked = []
    for g in gens:
        W, R = V.matrix(g)
        stacked.extend(_mat_sub(R, V.inclusion(W)))
    if not stacked:
        return [[Fraction(int(i == j)) for j in range(V.dim)] for i in range(V.dim)]
    return V._nullspace(stacked)


@dataclass
class CoinvariantReport:
    functionals: list
    dim: int

    @property
    def exists(self) -> bool:
        return len(self.functionals) == 1

    @property
    def steinberg_dim(self) -> Optional[int]:
        return self.dim - 1 if self.exists else None

    def to_json(self):
        return {"coinvariant_dim": len(self.functionals), "steinberg_dim": self.steinberg_dim,
                "functionals": [[scalar_string(x) for x in f] for f in self.functionals]}


def coinvariant_functional(V: SmoothPSModule, generators: Sequence[GroupElement] = None) -> CoinvariantReport:
    """Functionals lambda on V_n with lambda(e_n rho(g) v) = lambda(v) for all generators.

    ``e_n`` is the K(n)-average, so for integral g this is just invariance
    under rho(g); for g raising the level it is the Hecke operator form.
    """
    gens = default_generators(V.p, V.prec) if generators is None else generators
    stacked = []
    I = V.inclusion(V)
    for g in gens:
        W, R = V.matrix(g)
        T = _mat_mul(V.averaging(W), R, V._zero())
        stacked.extend(_mat_sub(transpose(T), I))
    if not stacked:
        return CoinvariantReport([[V._one() if i == j else V._zero() for j in range(V.dim)]
                                  for i in range(V.dim)], V.dim)
    return CoinvariantReport(V._nullspace(stacked), V.dim)


def lift_mod_p(entries, p: int, prec: int = DEFAULT_PREC) -> GroupElement:
    """An element of SL_2(Z_p) reducing to the given matrix mod p."""
    a, b, c, d = (x % p for x in entries)
    if (a * d - b * c) % p != 1:
        raise ValueError("matrix is not in SL_2(F_p)")
    A, B, C, D = (PadicScalar.from_int(x, p, prec) for x in (a, b, c, d))
    if a:
        return GroupElement(A, B, C, (B * C + 1) / A)
    return GroupElement(A, (A * D - 1) / C, C, D)


def level1_character(V: SmoothPSModule, table) -> List[int]:
    """Traces of rho(g) on V_1 at the class representatives of SL_2(F_p)."""
    if V.n != 1:
        raise ValueError("decomposition is defined at level 1")
    if not V.exact:
        raise ValueError("level-1 decomposition needs a rational valued character")
    G = table.group
    if not G.is_matrix_group or G.modulus != V.p or G.matrix_dim != 2:
        raise ValueError("table is not for SL_2(F_p)")
    out = []
    for rep in table.class_reps:
        _, R = V.matrix(lift_mod_p(rep, V.p, V.prec))
        tr = sum(R[i][i] for i in range(V.dim))
        if tr.denominator != 1:
            raise ValueError("non-integral trace")
        out.append(int(tr))
    return out


def decompose_level1(V: SmoothPSModule, table) -> List[int]:
    """Multiplicity of each irreducible of SL_2(F_p) in V_1, in table order."""
    chi_V = level1_character(V, table)
    return [table.multiplicity(i, chi_V) for i in range(len(table.characters))]

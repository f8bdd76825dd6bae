"""Finite groups, character tables (Dixon's class-matrix method) and multiplicities.

Characters are exact: every value is an element of Q(zeta_e), e the group
exponent, stored as a :class:`~padicps.cyclotomic.Cyclo`.  Multiplicities
are computed over a splitting field, so the multiplicity of an irreducible
in the regular representation is its degree.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Dict, Hashable, List, Optional, Sequence

from sympy import isprime, primitive_root

from .cyclotomic import Cyclo
from .linalg import nullspace_mod

ORDER_BOUND = 10**4


class GroupTooLarge(ValueError):
    pass


class ConsistencyError(ArithmeticError):
    """A multiplicity came out non-integral or negative: the table or character is wrong."""


# -- groups -----------------------------------------------------------------------

class FiniteGroup:
    """A group given by generators, enumerated by closure.

    Elements are tuples: images of 0..n-1 for permutations, row-major
    entries for matrices mod ``modulus``.
    """

    def __init__(self, generators: Sequence[tuple], mul: Callable, identity: tuple, *,
                 kind: str, modulus: int = None, matrix_dim: int = None, bound: int = ORDER_BOUND):
        self.generators = [tuple(g) for g in generators]
        self._mul = mul
        self.identity = identity
        self.kind = kind
        self.modulus = modulus
        self.matrix_dim = matrix_dim
        elements = [identity]
        seen = {identity}
        queue = deque([identity])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    queue.append(y)
                    if len(elements) > bound:
                        raise GroupTooLarge(f"group order exceeds the bound {bound}")
        self.elements: List[tuple] = elements
        self.index: Dict[tuple, int] = {x: i for i, x in enumerate(elements)}
        self._inv = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_matrix_group(self) -> bool:
        return self.kind == "matrix"

    def mul(self, x, y):
        return self._mul(x, y)

    def inv(self, x):
        if x not in self._inv:
            y = x
            prev = self.identity
            while y != self.identity:
                prev, y = y, self._mul(y, x)
            self._inv[x] = prev
        return self._inv[x]

    def power(self, x, k: int):
        out = self.identity
        for _ in range(k):
            out = self._mul(out, x)
        return out

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self._mul(y, x)
            k += 1
        return k

    def exponent(self) -> int:
        e = 1
        for x in self.elements:
            k = self.element_order(x)
            e = e * k // gcd(e, k)
        return e

    def contains(self, x) -> bool:
        return tuple(x) in self.index

    def subgroup(self, generators: Sequence[tuple]) -> "FiniteGroup":
        for g in generators:
            if tuple(g) not in self.index:
                raise ValueError(f"{g} is not an element of the group")
        return FiniteGroup(generators, self._mul, self.identity, kind=self.kind,
                           modulus=self.modulus, matrix_dim=self.matrix_dim)

    # constructors
    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]], degree: int = None) -> "FiniteGroup":
        gens = [tuple(g) for g in generators]
        n = degree if degree is not None else (len(gens[0]) if gens else 1)
        for g in gens:
            if sorted(g) != list(range(n)):
                raise ValueError(f"{g} is not a permutation of 0..{n - 1}")
        return cls(gens, lambda x, y: tuple(x[i] for i in y), tuple(range(n)), kind="perm")

    @classmethod
    def from_cycles(cls, cycles: Sequence[str], degree: int) -> "FiniteGroup":
        """Generators like ``"(1 2 3)(4 5)"`` on points 1..degree."""
        return cls.from_permutations([parse_cycles(c, degree) for c in cycles], degree)

    @classmethod
    def from_matrices(cls, generators: Sequence[Sequence[int]], modulus: int, dim: int = 2) -> "FiniteGroup":
        gens = [tuple(x % modulus for x in g) for g in generators]
        for g in gens:
            if len(g) != dim * dim:
                raise ValueError("matrix generator has the wrong number of entries")

        def mul(x, y):
            return tuple(sum(x[i * dim + k] * y[k * dim + j] for k in range(dim)) % modulus
                         for i in range(dim) for j in range(dim))

        ident = tuple(int(i == j) for i in range(dim) for j in range(dim))
        return cls(gens, mul, ident, kind="matrix", modulus=modulus, matrix_dim=dim)


def parse_cycles(text: str, degree: int) -> tuple:
    perm = list(range(degree))
    for chunk in text.replace(")", " ").split("("):
        pts = [int(t) - 1 for t in chunk.replace(",", " ").split()]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if not 0 <= a < degree:
                raise ValueError(f"point {a + 1} outside 1..{degree}")
            perm[a] = b
    return tuple(perm)


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup.from_permutations([tuple((i + 1) % n for i in range(n))])


def symmetric3() -> FiniteGroup:
    return FiniteGroup.from_permutations([(1, 0, 2), (1, 2, 0)])


def sl2(p: int) -> FiniteGroup:
    return FiniteGroup.from_matrices([(1, 1, 0, 1), (0, p - 1, 1, 0)], p)


def upper_borel_sl2(p: int) -> FiniteGroup:
    g = int(primitive_root(p))
    return sl2(p).subgroup([(g, 0, 0, pow(g, -1, p)), (1, 1, 0, 1)])


def quaternion_in_sl2_f3() -> FiniteGroup:
    return sl2(3).subgroup([(0, 2, 1, 0), (1, 1, 1, 2)])


# -- classes -------------------------------------------------------------------------

@dataclass
class ConjugacyClass:
    rep: tuple
    elements: List[tuple]

    @property
    def size(self) -> int:
        return len(self.elements)


def conjugacy_classes(G: FiniteGroup, bound: int = ORDER_BOUND) -> List[ConjugacyClass]:
    if G.order > bound:
        raise GroupTooLarge(f"group order {G.order} exceeds {bound}")
    done = set()
    out = []
    gens = G.generators
    for x in G.elements:
        if x in done:
            continue
        orbit = [x]
        done.add(x)
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in gens:
                z = G.mul(G.mul(g, y), G.inv(g))
                if z not in done:
                    done.add(z)
                    orbit.append(z)
                    queue.append(z)
        out.append(ConjugacyClass(x, orbit))
    return out


# -- character tables ------------------------------------------------------------

def _choose_ell(order: int, e: int, limit: int = 10**7) -> int:
    ell = e + 1
    while ell <= limit:
        if isprime(ell) and ell * ell > 4 * order:
            return ell
        ell += e
    raise ValueError(f"no prime l = 1 mod {e} with l > 2 sqrt(|G|) below {limit}")


def _rref_mod(rows, ell):
    A = [[x % ell for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][j]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = pow(A[r][j], -1, ell)
        A[r] = [x * inv % ell for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][j]:
                f = A[i][j]
                A[i] = [(x - f * y) % ell for x, y in zip(A[i], A[r])]
        pivots.append(j)
        r += 1
    return A[:r], pivots


def _split(space, mat, ell):
    """Eigenspaces of ``mat`` (acting on column vectors) inside the invariant ``space``."""
    basis, pivots = _rref_mod(space, ell)
    d = len(basis)
    n = len(mat)
    # restricted matrix: coordinates of mat*w in the rref basis are its pivot entries
    B = []
    for w in basis:
        img = [sum(mat[k][l] * w[l] for l in range(n)) % ell for k in range(n)]
        B.append([img[j] for j in pivots])
    Bt = [[B[c][r] for c in range(d)] for r in range(d)]   # column convention
    parts = []
    found = 0
    for lam in range(ell):
        M = [[(Bt[i][j] - (lam if i == j else 0)) % ell for j in range(d)] for i in range(d)]
        ns = nullspace_mod(M, ell)
        if ns:
            vecs = [[sum(c[i] * basis[i][k] for i in range(d)) % ell for k in range(n)] for c in ns]
            parts.append(vecs)
            found += len(ns)
            if found == d:
                break
    if found != d:
        raise ValueError("class matrix is not diagonalizable over F_l; l is unsuitable")
    return parts


@dataclass
class CharacterTable:
    group: FiniteGroup
    classes: List[ConjugacyClass]
    characters: List[List[Cyclo]]
    exponent: int
    ell: int
    zeta_mod_ell: int
    class_index: Dict[tuple, int] = field(repr=False, default_factory=dict)

    @property
    def class_reps(self):
        return [c.rep for c in self.classes]

    @property
    def class_sizes(self):
        return [c.size for c in self.classes]

    @property
    def degrees(self) -> List[int]:
        return [int(ch[0].rational()) for ch in self.characters]

    def class_of(self, x) -> int:
        return self.class_index[tuple(x)]

    def as_class_function(self, values) -> List[Cyclo]:
        if len(values) != len(self.classes):
            raise ValueError("class function has the wrong length")
        return [v if isinstance(v, Cyclo) else Cyclo.from_int(self.exponent, v) for v in values]

    def inner(self, a, b) -> Fraction:
        a, b = self.as_class_function(a), self.as_class_function(b)
        tot = Cyclo.from_int(self.exponent, 0)
        for s, x, y in zip(self.class_sizes, a, b):
            tot = tot + x * y.conj() * s
        return tot.rational() / self.group.order

    def multiplicity(self, i: int, values) -> int:
        """<chi_V, chi_i>, required to be a nonnegative integer."""
        try:
            q = self.inner(values, self.characters[i])
        except ValueError as exc:
            raise ConsistencyError(f"inner product is not rational: {exc}") from None
        if q.denominator != 1 or q < 0:
            raise ConsistencyError(f"multiplicity {q} of character {i} is not a nonnegative integer")
        return int(q)

    def decompose(self, values) -> List[int]:
        return [self.multiplicity(i, values) for i in range(len(self.characters))]

    def restrict_to(self, i: int, sub: "CharacterTable") -> List[Cyclo]:
        """Values of character i at the class representatives of a subgroup table."""
        if (sub.exponent, sub.ell, sub.zeta_mod_ell) != (self.exponent, self.ell, self.zeta_mod_ell):
            raise ValueError("subgroup table uses another field; build it with subgroup_table()")
        return [self.characters[i][self.class_of(r)] for r in sub.class_reps]

    def to_json(self) -> str:
        return json.dumps({
            "order": self.group.order,
            "exponent": self.exponent,
            "class_sizes": self.class_sizes,
            "class_reps": [list(r) for r in self.class_reps],
            "degrees": self.degrees,
            "characters": [[v.to_json() for v in ch] for ch in self.characters],
        }, sort_keys=True)

    def verify(self):
        """Assert sum deg^2 = |G| and both orthogonality relations, exactly."""
        n = self.group.order
        if sum(d * d for d in self.degrees) != n:
            raise ConsistencyError("sum of squared degrees differs from |G|")
        k = len(self.characters)
        for a in range(k):
            for b in range(k):
                if self.inner(self.characters[a], self.characters[b]) != (1 if a == b else 0):
                    raise ConsistencyError(f"row orthogonality fails for ({a}, {b})")
        for j in range(k):
            for l in range(k):
                tot = Cyclo.from_int(self.exponent, 0)
                for ch in self.characters:
                    tot = tot + ch[j] * ch[l].conj()
                want = Fraction(n, self.class_sizes[j]) if j == l else 0
                if tot != Cyclo.from_int(self.exponent, want):
                    raise ConsistencyError(f"column orthogonality fails for ({j}, {l})")


def subgroup_table(table: CharacterTable, sub: FiniteGroup) -> CharacterTable:
    """Character table of a subgroup, over the field (and embedding) of ``table``."""
    for g in sub.generators:
        if not table.group.contains(g):
            raise ValueError("not a subgroup of the table's group")
    return character_table(sub, field_of=table)


def character_table(G: FiniteGroup, bound: int = ORDER_BOUND,
                    field_of: "CharacterTable" = None) -> CharacterTable:
    """Irreducible characters by Dixon's class-matrix eigenspace method.

    ``field_of`` (the table of an overgroup) makes the new table use the same
    cyclotomic field and the same reduction ``zeta -> z mod l``, so that
    restricted characters can be compared with this table's characters.
    """
    classes = conjugacy_classes(G, bound)
    r = len(classes)
    cls_of = {x: j for j, c in enumerate(classes) for x in c.elements}
    n = G.order
    if field_of is None:
        e = G.exponent()
        ell = _choose_ell(n, e)
        z = pow(int(primitive_root(ell)), (ell - 1) // e, ell)
    else:
        e, ell, z = field_of.exponent, field_of.ell, field_of.zeta_mod_ell
        if e % G.exponent() or ell * ell <= 4 * n:
            raise ValueError("the overgroup's field does not suit this group")

    # a[j][k][l] = #{x in C_j : x^-1 z_l in C_k}
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for l, cl in enumerate(classes):
        zl = cl.rep
        for j, cj in enumerate(classes):
            for x in cj.elements:
                a[j][cls_of[G.mul(G.inv(x), zl)]][l] += 1

    spaces = [[[int(i == k) for k in range(r)] for i in range(r)]]
    for j in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        nxt = []
        for s in spaces:
            nxt.extend([s] if len(s) == 1 else _split(s, a[j], ell))
        spaces = nxt
    if not all(len(s) == 1 for s in spaces):
        raise ValueError("class sums did not separate the characters")

    inv_cls = [cls_of[G.inv(c.rep)] for c in classes]
    sizes = [c.size for c in classes]
    powers = []
    for c in classes:
        row, y = [], G.identity
        for _ in range(e):
            row.append(cls_of[y])
            y = G.mul(y, c.rep)
        powers.append(row)
    einv = pow(e, -1, ell)

    chars = []
    for (v,) in spaces:
        v0 = v[0]
        omega = [x * pow(v0, -1, ell) % ell for x in v]
        S = sum(omega[j] * omega[inv_cls[j]] * pow(sizes[j], -1, ell) for j in range(r)) % ell
        target = n * pow(S, -1, ell) % ell
        deg = next((d for d in range(1, isqrt(n) + 1) if d * d % ell == target), None)
        if deg is None:
            raise ValueError("no degree fits; l is unsuitable")
        vals_mod = [deg * omega[j] * pow(sizes[j], -1, ell) % ell for j in range(r)]
        row = []
        for j in range(r):
            mults = []
            for k in range(e):
                s = sum(vals_mod[powers[j][t]] * pow(z, (-k * t) % e, ell) for t in range(e))
                mk = s * einv % ell
                if mk > deg:
                    raise ValueError("eigenvalue multiplicity exceeds the degree; l is unsuitable")
                mults.append(mk)
            row.append(Cyclo.from_exponents(e, mults))
        chars.append(row)

    def key(ch):
        return (int(ch[0].rational()), [[str(c) for c in v.coeffs] for v in ch])

    trivial = [ch for ch in chars if all(v == 1 for v in ch)]
    rest = sorted((ch for ch in chars if ch is not trivial[0]), key=key)
    table = CharacterTable(G, classes, trivial + rest, e, ell, z, cls_of)
    table.verify()
    return table


# -- multiplicities ------------------------------------------------------------------

def regular_character(table: CharacterTable, copies: int = 1) -> List[int]:
    return [copies * table.group.order if table.class_of(table.group.identity) == j else 0
            for j in range(len(table.classes))]


def zero_character(table: CharacterTable) -> List[int]:
    return [0] * len(table.classes)


def permutation_character(table: CharacterTable, action: Callable, points: Sequence[Hashable]) -> List[int]:
    """Fixed-point counts of ``action(g, point)`` at the class representatives."""
    return [sum(1 for x in points if action(g, x) == x) for g in table.class_reps]


def matrix_character(table: CharacterTable, rho: Callable) -> List:
    """Traces of ``rho(g)`` (a square matrix of ints, Fractions or Cyclo)."""
    out = []
    for g in table.class_reps:
        M = rho(g)
        out.append(sum((M[i][i] for i in range(len(M))), 0))
    return out


def induced_character(table: CharacterTable, sub: CharacterTable, values) -> List[Cyclo]:
    """Ind_sub^G of a class function of ``sub``."""
    G = table.group
    if sub.exponent != table.exponent:
        raise ValueError("subgroup table uses another field; build it with subgroup_table()")
    vals = sub.as_class_function(values)
    out = []
    for g in table.class_reps:
        tot = Cyclo.from_int(sub.exponent, 0)
        for x in G.elements:
            y = G.mul(G.mul(G.inv(x), g), x)
            j = sub.class_index.get(y)
            if j is not None:
                tot = tot + vals[j]
        out.append(tot * Fraction(1, sub.group.order))
    return out


def mult_in(table: CharacterTable, pi: int, values) -> int:
    """mu(pi, V) for V given by its character values at the class representatives."""
    return table.multiplicity(pi, values)


def branch_mult(table: CharacterTable, pi: int, sub: CharacterTable, sigma: int) -> int:
    """mu(pi : sigma), the multiplicity of sigma in the restriction of pi."""
    return sub.multiplicity(sigma, table.restrict_to(pi, sub))


@dataclass
class IdentityReport:
    index: int
    checks: List[dict]

    @property
    def violations(self) -> List[dict]:
        return [c for c in self.checks if not c["ok"]]

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self):
        return {"index": self.index, "checks": self.checks, "passed": self.passed}


def verify_identities(table: CharacterTable, sub: CharacterTable) -> IdentityReport:
    """Both branching identities for every (pi, sigma), with mu(pi) = deg pi."""
    n, n0 = table.group.order, sub.group.order
    if n % n0:
        raise ValueError("subgroup order does not divide the group order")
    idx = n // n0
    B = [[branch_mult(table, i, sub, s) for s in range(len(sub.characters))]
         for i in range(len(table.characters))]
    deg, deg0 = table.degrees, sub.degrees
    checks = []
    for s in range(len(sub.characters)):
        rhs = sum(B[i][s] * deg[i] for i in range(len(deg)))
        checks.append({"identity": "index*mu(sigma)", "sigma": s, "lhs": idx * deg0[s], "rhs": rhs,
                       "ok": idx * deg0[s] == rhs})
    for i in range(len(deg)):
        rhs = sum(B[i][s] * deg0[s] for s in range(len(deg0)))
        checks.append({"identity": "mu(pi)", "pi": i, "lhs": deg[i], "rhs": rhs, "ok": deg[i] == rhs})
    return IdentityReport(idx, checks)


@dataclass
class AdmissibilityReport:
    bound: int
    multiplicities: List[int]
    degrees: List[int]

    @property
    def margins(self) -> List[int]:
        return [self.bound * d - m for m, d in zip(self.multiplicities, self.degrees)]

    @property
    def passed(self) -> bool:
        return all(x >= 0 for x in self.margins)

    @property
    def worst_factor(self) -> Fraction:
        return max(Fraction(m, d) for m, d in zip(self.multiplicities, self.degrees))

    def to_json(self):
        return {"bound": self.bound, "multiplicities": self.multiplicities, "degrees": self.degrees,
                "margins": self.margins, "passed": self.passed, "worst_factor": str(self.worst_factor)}


def strong_adm_check(table: CharacterTable, values, m: int) -> AdmissibilityReport:
    """Is mu(pi, V) <= m * mu(pi) for every irreducible pi?"""
    return AdmissibilityReport(m, table.decompose(values), table.degrees)

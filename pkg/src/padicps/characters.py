"""Characters of the diagonal torus diag(t^-1, t) of SL_2(Q_p).

A torus character is stored through ``sigma(t) = chi(diag(t^-1, t))``,
split as ``t^-m`` times a locally constant character.  The locally constant
part takes values in Q_p: on units it is given by its values on the standard
generators of (Z/p^n)^x, and ``value_at_p`` is its value at ``t = p``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from sympy.ntheory import primitive_root

from .padic import (DEFAULT_PREC, PadicScalar, PrecisionError, char_power,
                    parse_scalar)


class CharacterSpecError(ValueError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} (at position {position})")
        self.position = position


def unit_generators(p: int, n: int) -> List[int]:
    """Fixed generators of (Z/p^n)^x."""
    if n == 0 or (p == 2 and n == 1):
        return []
    if p == 2:
        return [-1 % 2**n] if n == 2 else [-1 % 2**n, 5]
    g = primitive_root(p * p) if p > 2 else 1
    return [int(g) % p**n]


@lru_cache(maxsize=None)
def _dlog_table(p: int, n: int):
    """Map u mod p^n to its exponent vector on unit_generators(p, n)."""
    gens = unit_generators(p, n)
    mod = p**n
    table = {1 % mod: ()}
    if not gens:
        return table, ()
    if len(gens) == 1:
        g = gens[0]
        order = (p - 1) * p ** (n - 1) if p > 2 else 2
        x = 1
        for k in range(order):
            table[x] = (k,)
            x = x * g % mod
        return table, (order,)
    order5 = 2 ** (n - 2)
    table = {}
    for s in range(2):
        x = pow(gens[0], s, mod)
        for k in range(order5):
            table[x] = (s, k)
            x = x * 5 % mod
    return table, (2, order5)


@dataclass(frozen=True)
class SmoothCharacter:
    prime: int
    conductor: int
    unit_values: Tuple[PadicScalar, ...]
    value_at_p: PadicScalar

    def __post_init__(self):
        object.__setattr__(self, "unit_values", tuple(self.unit_values))
        gens = unit_generators(self.prime, self.conductor)
        if len(gens) != len(self.unit_values):
            raise ValueError(f"expected {len(gens)} unit values for conductor {self.conductor}")
        _, orders = _dlog_table(self.prime, self.conductor)
        for z, order in zip(self.unit_values, orders):
            if self.prime > 2 and not z**(self.prime - 1) == 1:
                raise ValueError("unit values must have order dividing p - 1")
            if self.prime == 2 and not z**2 == 1:
                raise ValueError("for p = 2 unit values must be +-1")
            if not z**order == 1:
                raise ValueError("unit value incompatible with the generator order")
        if self.value_at_p.is_zero():
            raise ValueError("value_at_p must be nonzero")

    @classmethod
    def trivial(cls, p: int, prec: int = DEFAULT_PREC) -> "SmoothCharacter":
        return cls(p, 0, (), PadicScalar.from_int(1, p, prec))

    @classmethod
    def unramified(cls, p: int, at_p, prec: int = DEFAULT_PREC) -> "SmoothCharacter":
        if not isinstance(at_p, PadicScalar):
            at_p = PadicScalar.from_rational(at_p, p, prec)
        return cls(p, 0, (), at_p)

    def on_unit(self, u: PadicScalar) -> PadicScalar:
        """Value on a unit, read off from u mod p^conductor."""
        p, n = self.prime, self.conductor
        one = PadicScalar.from_int(1, p, self.value_at_p.rel_precision)
        if n == 0:
            return one
        if u.absolute_precision < n:
            raise PrecisionError(f"need u mod p^{n}, have only mod p^{u.absolute_precision}")
        table, _ = _dlog_table(p, n)
        exps = table[u.residue(n)]
        out = one
        for z, k in zip(self.unit_values, exps):
            out = out * z**k
        return out

    def __call__(self, t: PadicScalar) -> PadicScalar:
        if t.is_zero():
            raise PrecisionError("character evaluated at a value indistinguishable from 0")
        return self.on_unit(t.unit_part()) * self.value_at_p**t.valuation

    def is_trivial_on_units(self) -> bool:
        return all(z == 1 for z in self.unit_values)

    def is_trivial(self) -> bool:
        return self.is_trivial_on_units() and self.value_at_p == 1


@dataclass(frozen=True)
class TorusCharacter:
    """sigma(t) = t^-m * smooth(t); ``m`` may be negative (e.g. after twisting).

    ``c_value`` describes a character exp(c log t) near 1 whose ``c`` is not an
    integer; such characters carry ``m = None`` and are only classified.
    """

    m: Optional[int]
    smooth: SmoothCharacter
    c_value: Optional[PadicScalar] = None

    @property
    def prime(self):
        return self.smooth.prime

    def to_spec(self) -> str:
        head = f"m={self.m}" if self.m is not None else f"c={self.c_value.to_compact()}"
        unit = ",".join(z.to_compact() for z in self.smooth.unit_values)
        return f"{head};cond={self.smooth.conductor};unit={unit};at_p={self.smooth.value_at_p.to_compact()}"


def eval_sigma(chi: TorusCharacter, t: PadicScalar) -> PadicScalar:
    """chi(diag(t^-1, t))."""
    if chi.m is None:
        return char_power(t, chi.c_value) * chi.smooth(t)
    return t**(-chi.m) * chi.smooth(t)


def c_of(chi: TorusCharacter, prec: int = DEFAULT_PREC) -> PadicScalar:
    if chi.m is None:
        return chi.c_value
    return PadicScalar.from_int(-chi.m, chi.prime, prec)


def twist_eps(chi: TorusCharacter, k: int) -> TorusCharacter:
    """chi * eps^k with eps(diag(t^-1, t)) = t^2."""
    if chi.m is None:
        return TorusCharacter(None, chi.smooth, chi.c_value + 2 * k)
    return TorusCharacter(chi.m - 2 * k, chi.smooth)


def smooth_case(smooth: SmoothCharacter) -> str:
    """'A', 'B', 'C' or 'irreducible' for Ind_{P,inf}(smooth)."""
    p = smooth.prime
    a = smooth.value_at_p
    if smooth.is_trivial():
        return "A"
    if smooth.is_trivial_on_units() and a == PadicScalar.from_rational(Fraction(1, p * p), p):
        return "B"
    ap = a * p
    quadratic = all(z == 1 or z == -1 for z in smooth.unit_values)
    if quadratic and (ap == 1 or ap == -1) and not (smooth.is_trivial_on_units() and ap == 1):
        return "C"
    return "irreducible"


@dataclass
class ClassificationReport:
    c_of_chi: PadicScalar
    verdict: str
    m: Optional[int] = None
    case: Optional[str] = None
    chi_prime: Optional[TorusCharacter] = None
    constituents: List[str] = field(default_factory=list)
    topological_length: object = 1

    def to_json(self) -> dict:
        out = {
            "c_of_chi": self.c_of_chi.to_compact(),
            "verdict": self.verdict,
            "m": self.m,
            "case": self.case,
            "constituents": list(self.constituents),
            "topological_length": self.topological_length,
        }
        if self.chi_prime is not None:
            out["chi_prime"] = self.chi_prime.to_spec()
        return out


_CASE_LABEL = {"A": "A", "B": "B", "C": "C", "irreducible": "irreducible-smooth"}


def classify(chi: TorusCharacter) -> ClassificationReport:
    c = c_of(chi)
    if chi.m is None or chi.m < 0:
        return ClassificationReport(c, "simple", chi.m, constituents=["Ind_P^G(chi) (simple)"],
                                    topological_length=1)
    m = chi.m
    chi2 = twist_eps(chi, m + 1)
    case = smooth_case(chi.smooth)
    E = f"E_{m} (dim {m + 1})"
    image = f"Ind_P^G(chi') with c(chi') = {m + 2} (simple)"
    if case == "A":
        parts = [f"{E} (x) trivial'", f"{E} (x) Steinberg'"]
        length = 3
    elif case == "B":
        parts = [f"{E} (x) Steinberg'", f"{E} (x) trivial'"]
        length = 3
    elif case == "C":
        parts = [f"{E} (x) Ind_inf(chi_lc)' (irreducible, or a sum of two; not decided)"]
        length = "2 or 3"
    else:
        parts = [f"{E} (x) Ind_inf(chi_lc)'"]
        length = 2
    return ClassificationReport(c, "reducible", m, _CASE_LABEL[case], chi2,
                                [image] + parts, length)


_FIELD_RE = re.compile(r"\s*([a-z_]+)\s*=\s*([^;]*)")


def parse_character(spec: str, p: int, prec: int = DEFAULT_PREC) -> TorusCharacter:
    """Parse ``m=<int>;cond=<n>;unit=<v1,v2,..>;at_p=<scalar>``.

    ``c=<scalar>`` may replace ``m=`` for a character whose c is not an
    integer.  Errors report the character offset of the offending field.
    """
    fields = {}
    pos = 0
    for chunk in spec.split(";"):
        if not chunk.strip():
            pos += len(chunk) + 1
            continue
        mm = _FIELD_RE.fullmatch(chunk)
        if not mm:
            raise CharacterSpecError(f"cannot parse field {chunk!r}", pos)
        key = mm.group(1)
        if key in fields:
            raise CharacterSpecError(f"duplicate field {key!r}", pos)
        fields[key] = (mm.group(2).strip(), pos + mm.start(2), pos + mm.start(1))
        pos += len(chunk) + 1
    unknown = set(fields) - {"m", "c", "cond", "unit", "at_p"}
    if unknown:
        key = sorted(unknown)[0]
        raise CharacterSpecError(f"unknown field {key!r}", fields[key][2])

    def scalar(key, text, at):
        try:
            return parse_scalar(text, p, prec)
        except (ValueError, ArithmeticError) as exc:
            raise CharacterSpecError(f"bad {key} value {text!r}: {exc}", at) from None

    m = c_value = None
    if "m" in fields:
        text, at = fields["m"][:2]
        try:
            m = int(text)
        except ValueError:
            # a non-integral exponent: c = -m is not in -N_0
            c_value = -scalar("m", text, at)
    elif "c" in fields:
        c_value = scalar("c", *fields["c"][:2])
    else:
        raise CharacterSpecError("missing m= (or c=)", len(spec))
    cond_text, at = fields.get("cond", ("0", len(spec)))[:2]
    try:
        cond = int(cond_text)
    except ValueError:
        raise CharacterSpecError(f"bad conductor {cond_text!r}", at) from None
    unit_text, uat = fields.get("unit", ("", len(spec)))[:2]
    units = [scalar("unit", u, uat) for u in unit_text.split(",") if u.strip()]
    ap_text, aat = fields.get("at_p", ("1", len(spec)))[:2]
    at_p = scalar("at_p", ap_text, aat)
    try:
        smooth = SmoothCharacter(p, cond, tuple(units), at_p)
    except ValueError as exc:
        raise CharacterSpecError(str(exc), uat) from None
    if c_value is not None:
        return TorusCharacter(None, smooth, c_value)
    return TorusCharacter(m, smooth)

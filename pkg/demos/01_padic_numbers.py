"""A first look at the p-adic scalars everything else is built on.

Run with ``python demos/01_padic_numbers.py``.
"""
from fractions import Fraction

from padicps.padic import PadicScalar, char_power, p_exp, p_log

p = 5
third = PadicScalar.from_rational(Fraction(1, 3), p, 10)
print("1/3 in Z_5 to ten digits:", third.to_text())
print("times 3 gives back one?", third * 3 == 1)

# Precision is tracked, never invented: adding a coarse number makes the sum coarse.
coarse = PadicScalar.from_int(7, p, 3)
print("precision of 1/3 + 7 (known mod 5^3):", (third + coarse).absolute_precision)

# Logarithm and exponential are mutually inverse on 1 + pZ_p.
x = PadicScalar.from_int(6, p, 20)
lg = p_log(x)
print("val log(6) =", lg.valuation, " exp(log 6) == 6:", p_exp(lg) == 6)

# Characters of the form t -> t^c make sense for p-adic exponents c.
c = PadicScalar.from_rational(Fraction(-1, 2), p, 20)
root = char_power(PadicScalar.from_int(26, p, 20), c)
print("26^(-1/2) squared times 26:", (root * root * 26).to_text())

"""
Exact arithmetic in quadratic and biquadratic fields
====================================================

Elements of Q(sqrt m) and Q(sqrt 3, sqrt 11) are kept as rational
coordinates, so every identity below is checked exactly.
"""
from fractions import Fraction

from unitdist.exact import Field, QuadElem, parse_elem, quad_val_ramified, quad_val_split, rat_val

# A literal is parsed into the smallest field that contains it
h = parse_elem("1/2+1/2*sqrt(3)")
print("h =", h, " h^2 =", h * h, " N(h) =", h.norm())

# The fundamental unit of Q(sqrt 33), seen inside Q(sqrt 3, sqrt 11)
K = Field.parse("biquad:3,11")
u = parse_elem("23+4*sqrt(33)", K)
print("u * conj(u) =", u * parse_elem("23-4*sqrt(33)", K))

# 11 splits as a unit times the squares of two conjugate primes
pi = parse_elem("-5/2-1/2*sqrt(3)+1/2*sqrt(11)+1/2*sqrt(33)", K)
pi2 = parse_elem("-5/2+1/2*sqrt(3)-1/2*sqrt(11)+1/2*sqrt(33)", K)
print("u * pi^2 * pi'^2 =", u * pi**2 * pi2**2)

# Valuations live in (1/2)Z: 2 ramifies in Q(sqrt 2)
for x in (QuadElem(2, 0, 1), QuadElem(2, 0, 2), QuadElem(2, 1, 1)):
    print(f"v_2({x}) = {quad_val_ramified(x, 2).value}")

# 3 splits in Q(sqrt 7); the root 2 of 7 mod 3 picks the prime (sqrt 7 - 2)
for x in (QuadElem(7, -2, 1), QuadElem(7, 2, 1)):
    print(f"v({x}) at sqrt7 -> 2: {quad_val_split(x, 3, root=2).value}")

print("v_2(1/8) =", rat_val(Fraction(1, 8), 2).value)

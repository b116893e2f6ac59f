"""
Colouring the plane over a number field
=======================================

Each oracle subtracts a canonical class representative, reduces the result
to F_p^2 and colours the residue. Random unit-distance pairs must always get
different colours.
"""
import random
from fractions import Fraction

from unitdist.exact import QuadElem, parse_elem
from unitdist.geometry import circle_param
from unitdist.reduction import ORACLES, OracleId, color_oracle, oracle_trace

print(oracle_trace("sqrt3", (Fraction(1, 2), parse_elem("1/2*sqrt(3)"))))
print(oracle_trace("sqrt7", (parse_elem("1/9"), parse_elem("3/8*sqrt(7)"))))

rng = random.Random(0)
fields = {"q2": None, "sqrt2": 2, "sqrt3": 3, "sqrt7": 7, "sqrtneg5": -5}
for oid, m in fields.items():
    p = ORACLES[OracleId.parse(oid)].spec.p

    def elem():
        a, b = (Fraction(rng.randint(-50, 50), rng.randint(1, 50) * p ** rng.randint(0, 3)) for _ in "ab")
        return a if m is None else QuadElem(m, a, b)

    bad, seen = 0, set()
    for _ in range(2000):
        d = circle_param(elem())
        x = (elem(), elem())
        cx, cy = color_oracle(oid, x), color_oracle(oid, (x[0] + d[0], x[1] + d[1]))
        bad += cx == cy
        seen |= {cx, cy}
    print(f"{oid:9s} colours used {sorted(seen)}, monochromatic unit pairs: {bad}")

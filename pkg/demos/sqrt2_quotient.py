"""
The sixteen-vertex graph behind chi(Q(sqrt 2)^2) = 2
====================================================

Coordinates in (1/sqrt 2)A are taken modulo sqrt(2)A, leaving the classes
0, 1, U = 1/sqrt 2 and V = U + 1 per coordinate. Two classes are joined when
the squared distance is 1 modulo 2.
"""
from unitdist.catalog import SQRT2_CORRECTED_CLASS, SQRT2_PRINTED_CLASS, fixture
from unitdist.chromatic import structure_probe

fx = fixture("sqrt2_quotient")
g, names = fx.graph(), fx.data["names"]
for i in range(16):
    print(names[i], "->", " ".join(names[j] for j in g.neighbors(i)))
print("bipartite:", structure_probe(g).is_bipartite)

# The printed colour class contains U0 and U1, which differ by (0, 1)
printed = fx.data["printed_coloring"]
print("printed class", SQRT2_PRINTED_CLASS)
print("monochromatic edges:", [f"{names[i]}-{names[j]}" for i, j in g.edges if printed[i] == printed[j]])

# Swapping U1 -> 1U and V0 -> 0V gives a proper 2-colouring
fixed = fx.data["corrected_coloring"]
print("corrected class", SQRT2_CORRECTED_CLASS)
print("monochromatic edges:", [f"{names[i]}-{names[j]}" for i, j in g.edges if fixed[i] == fixed[j]])

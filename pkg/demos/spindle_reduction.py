"""
The Moser spindle modulo a prime above 11
=========================================

The spindle lives in Q(sqrt 3, sqrt 11)^2. Sending sqrt 3 to 5 and sqrt 11
to 0 reduces it into F_11^2, unit distances landing on unit distances, so a
5-colouring of Gamma(F_11^2) pulls back to the spindle.
"""
from unitdist.catalog import fixture
from unitdist.chromatic import chi_exact
from unitdist.exact import to_literal
from unitdist.reduction import ORACLES, OracleId, color_oracle, reduce_graph_hom

fx = fixture("moser_spindle")
g = fx.graph()
for i, pt in enumerate(fx.points):
    print(f"P{i} = ({to_literal(pt[0])}, {to_literal(pt[1])})")
print("edges:", [(f"P{i}", f"P{j}") for i, j in g.edges])
print("chi =", chi_exact(g).chi)

rep = reduce_graph_hom(fx.points, ORACLES[OracleId.BIQUAD_5COLOR].spec)
print("images in F_11^2:", rep.images, "violations:", rep.violations)

colors = [color_oracle("biquad", pt) for pt in fx.points]
print("colours from the table:", colors)
print("proper on the spindle:", all(colors[i] != colors[j] for i, j in g.edges))

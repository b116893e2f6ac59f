"""
Odd cycles in the Lorentzian plane
==================================

With q(x) = x1^2 - x2^2 the points (i, 0), 0 <= i <= k, together with
(k/2, sqrt(k^2 - 4)/2) form a (k+2)-cycle. There are no triangles, yet odd
cycles of every length from 5 up appear.
"""
from unitdist.catalog import fixture
from unitdist.chromatic import chi_exact, structure_probe

for k in range(3, 11):
    fx = fixture("lorentz_cycle", k)
    g = fx.graph()
    rep = structure_probe(g)
    print(f"k={k:2d} field={fx.field} n={g.n} m={g.m} triangles={rep.triangle_count}"
          f" odd cycle={rep.shortest_odd_cycle} chi={chi_exact(g).chi}")

g = fixture("lorentz_4cycle").graph()
print("rational 4-cycle edges:", g.edges)

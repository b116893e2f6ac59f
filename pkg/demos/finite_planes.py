"""
Chromatic numbers of finite planes
==================================

Gamma(F_p^2) joins x and y when (y1-x1)^2 + (y2-x2)^2 = 1 in F_p. The solver
returns a colouring together with a certificate for the lower bound, and the
certificate is audited by a separate checker.
"""
import time

from unitdist.catalog import fixture
from unitdist.certificate import certificate_to_dict, check_certificate
from unitdist.chromatic import Coloring, chi_exact, verify_coloring
from unitdist.geometry import build_fp_graph

for p in (3, 5, 7, 11):
    g = build_fp_graph(p, 2)
    t0 = time.perf_counter()
    cert = chi_exact(g)
    dt = time.perf_counter() - t0
    audit = check_certificate(g.n, g.edges, certificate_to_dict(g, cert))
    print(f"p={p:2d}: n={g.n:3d} m={g.m:3d} chi={cert.chi} lower={cert.lower.kind:16s}"
          f" nodes={cert.lower.nodes:5d} {dt:.2f}s audit={'ok' if audit.ok else 'FAILED'}")

# The printed 11 x 11 table is a 5-colouring of Gamma(F_11^2)
g = build_fp_graph(11, 2)
table = fixture("f11_table").data["table"]
print("table proper:", verify_coloring(g, Coloring(tuple(table[x][y] for x, y in g.labels), 5)))

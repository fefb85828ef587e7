"""Line bundles on the projective line: Atiyah cocycle, the missing GH
connection, the Chern form of a hermitian metric and the Bott table.

Run with ``python demos/projective_line.py``.
"""
from gcgw.bundles import (
    atiyah_cocycles,
    bott_dims,
    cech_oracle_p1,
    chern_connection,
    chern_weil,
    gh_connection_search,
    mat_str,
    projective_line,
    triviality,
)

c = projective_line(1)
at = atiyah_cocycles(c)
print("xi_01 =", mat_str(at.xi[("U0", "U1")]), " b_01 =", mat_str(at.b[("U0", "U1")]))

for bound in (2, 8):
    res = gh_connection_search(c, degree_bound=bound)
    print(f"bound {bound}: {res.certificate} ({res.unknowns} unknowns)")

metric = {"U0": [["1/(1 + z*zbar)"]], "U1": [["1/(1 + w*wbar)"]]}
ch = chern_connection(c.nerve, metric, c)
print("Chern connection on U0:", mat_str(ch.theta["U0"]))
cls = chern_weil(ch.curvature.omega11, 1, cocycle=c)
print("first class on U0:", cls.render("U0"), " glues:", cls.glues)

for m in (-2, 0, 3):
    print(f"O({m}) trivial:", triviality(projective_line(m)).trivial)

print("\n m   h0 bott/oracle   h1 bott/oracle")
for m in range(-4, 5):
    row = [(bott_dims(1, m, 0, q), cech_oracle_p1(m, q)) for q in (0, 1)]
    print(f"{m:2d}   {row[0][0]}/{row[0][1]}              {row[1][0]}/{row[1][1]}")

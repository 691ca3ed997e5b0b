"""Contracting lattice boxes one coordinate at a time.

A box around x shrinks to x by cycling through the coordinates, moving one
unit toward the center on each tick.  The slowest points are the corners,
which need n*r ticks.  The same contraction is then rewritten on the other
timelines (long, real) and squeezed back to a finite one.
"""
from digitop.constructions import cube_contraction
from digitop.homotopy import verify_homotopy
from digitop.longhtpy import l_to_long, long_to_finite, verify_l_homotopy, verify_long_homotopy
from digitop.realhtpy import long_to_real, real_to_finite, verify_real_homotopy


for n in (1, 2, 3):
    for r in (1, 2):
        lh = cube_contraction((0,) * n, r)
        worst = max(lh.stab.values())
        print(f"n={n} r={r}: {len(lh.domain):3d} points, verifies={verify_l_homotopy(lh)}, "
              f"slowest point settles at t={worst} (n*r={n * r})")

# one point's trip to the center, step by step
lh = cube_contraction((0, 0), 2)
print("track of (2, -2):", [lh((2, -2), t) for t in range(lh.T + 1)])

# long -> real -> finite
G = l_to_long(lh)
R = long_to_real(G)
F = real_to_finite(R)
print(f"long window -{G.T}..{G.T}: {verify_long_homotopy(G)}")
print(f"real, {len(R.jumps)} breakpoints at {[str(q) for q in R.jumps]}: {verify_real_homotopy(R)}")
print(f"back to finite with m={F.m}: {verify_homotopy(F, lh.layers[0], lh.layers[-1])}")
print(f"trimmed straight from long: m={long_to_finite(G).m}")

"""A line and a T are alike under the coarser relations.

X is the horizontal axis and Y adds a vertical ray at the origin.  Both
collapse to the origin, so chaining through the one-point image relates
them levelwise (similarity) and over an unbounded timeline (long
homotopy).  The certificates below are finite windows of that picture.
"""
from digitop.constructions import t_image, t_image_long, t_image_similarity
from digitop.homotopy import search_contraction
from digitop.longhtpy import verify_long_equivalence
from digitop.similarity import check_similarity, extract_equivalence_when_stable

for R in (1, 3, 5):
    X, Y = t_image(R)
    print(f"radius {R}: |X|={len(X)}, |Y|={len(Y)}")

sim = t_image_similarity(5)
print("similarity, depth 5:", check_similarity(sim, 5))
print("  level sizes:", [len(L) for L in sim.FX.levels], "vs", [len(L) for L in sim.FY.levels])
print("  collapse to one equivalence?", extract_equivalence_when_stable(sim))

cert = t_image_long(5)
print("long certificate, radius 5:", verify_long_equivalence(cert))
print("  composite maps are constants at", cert.f.values[0], "and", cert.g.values[0])

# every window is a tree, so a finite contraction exists; it just gets longer
for R in (1, 2, 3):
    _, Y = t_image(R)
    res = search_contraction(Y, 2 * R)
    print(f"Y window radius {R}: shortest contraction has length {res.witness.m}, "
          f"ending at {res.witness.end.values[0]}")

"""Gluing and multiplying certificates.

Two trees that touch only at the origin form a wedge; their contractions
glue into one.  Intervals multiply into boxes under the maximal adjacency,
and their contractions run side by side, the shorter one waiting at the end.
"""
from digitop.constructions import (
    product_certificates,
    tree_equivalence,
    tree_from_image,
    tree_long_certificate,
    tree_similarity,
    wedge,
    wedge_certificates,
)
from digitop.homotopy import verify_equivalence
from digitop.lattice import DigitalImage, interval
from digitop.longhtpy import verify_long_equivalence
from digitop.realhtpy import real_from_equivalence, verify_real_equivalence
from digitop.similarity import verify_similarity

east = tree_from_image(DigitalImage.of([(0, 0), (1, 0), (2, 0), (2, 1)]), (0, 0))
south = tree_from_image(DigitalImage.of([(0, 0), (0, -1), (-1, -1), (0, -2)]), (0, 0))
W = wedge(east.image, south.image)
print("wedge point", W.wedge_point, "joining", len(east.image), "+", len(south.image), "points")

print("plain:", verify_equivalence(wedge_certificates(tree_equivalence(east), tree_equivalence(south))))
print("long:", verify_long_equivalence(wedge_certificates(tree_long_certificate(east), tree_long_certificate(south))))
print("real:", verify_real_equivalence(wedge_certificates(real_from_equivalence(tree_equivalence(east)),
                                                          real_from_equivalence(tree_equivalence(south)))))
print("similarity:", verify_similarity(wedge_certificates(tree_similarity(east, 3), tree_similarity(south, 3))))

parts = [tree_equivalence(tree_from_image(interval(0, k), (0,))) for k in (2, 1, 3)]
box = product_certificates(parts)
print("box of", len(box.X), "points; factor lengths", [c.H.m for c in parts], "-> product length", box.H.m,
      "verifies:", verify_equivalence(box))

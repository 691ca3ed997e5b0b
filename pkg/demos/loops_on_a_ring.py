"""The 8-point ring under 4-adjacency is rigid.

Nothing continuous sits one step away from the identity except rotations,
so a bounded search never reaches a constant.  Loops tell the same story:
going once around will not shrink within any budget tried, while a loop
followed by its reverse does.
"""
from digitop.ecpath import ECPath, concat, default_budget, inverse, loops_equal_within_budget
from digitop.homotopy import search_homotopy
from digitop.lattice import DigitalImage
from digitop.maps import constant, identity

pts = [(i, j) for i in range(3) for j in range(3) if (i, j) != (1, 1)]
ring = DigitalImage.of(pts, u=1)

for steps in (2, 6, 10):
    res = search_homotopy(identity(ring), constant(ring, ring, (0, 0)), steps)
    print(f"identity ~ constant within {steps} steps? {type(res).__name__}, visited {res.visited} maps")

around = ECPath.from_values(
    [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0), (0, 0)], ring)
still = ECPath.constant((0, 0), ring)
budget = default_budget(around, still)
print("once around vs constant at", budget, "->", loops_equal_within_budget(around, still, budget))

there_and_back = concat(around, inverse(around))
res = loops_equal_within_budget(there_and_back, still)
print("around then back vs constant ->", type(res).__name__, f"({len(res.witness.rows) - 1} rows)")

# filling the hole changes everything
square = DigitalImage.of(pts + [(1, 1)], u=1)
res = search_homotopy(identity(square), constant(square, square, (1, 1)), 4)
print("filled square contracts in", res.witness.m, "steps")

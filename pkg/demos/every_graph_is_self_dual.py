"""
Every graph is its own dual
===========================

The fold map X + X -> X serves both as a cap and as a cup. Bending a wire
down and back up gives a cospan isomorphic to the identity.
"""

from spancsp import Graph, identity_cospan
from spancsp.compact import counit_cospan, dual_pair, snake_holds, verify_fold_pushout, zigzag

x = Graph.from_edges([0, 1, 2], [(0, 1), (1, 2), (2, 0)])

cap = counit_cospan(x)
print("cap: X + X with", len(cap.left_foot.nodes), "nodes -> X <- empty")

# the key square: folding the first two copies or the last two copies of
# X + X + X and then folding again gives a pushout
print("fold square is a pushout:", verify_fold_pushout(x))

z = zigzag(x, "alpha")
print("zigzag apex has", len(z.apex.nodes), "nodes; identity has", len(identity_cospan(x).apex.nodes))
print("snake equations hold:", snake_holds(x))

# the invertible cells witnessing the snake equations
data = dual_pair(x)
print("cusps are globular:", data.cusp_alpha.is_globular and data.cusp_beta.is_globular)

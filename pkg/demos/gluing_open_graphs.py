"""
Gluing open graphs
==================

Two open graphs compose by identifying the output of the first with the
input of the second.
"""

from spancsp import compose_cospans, cospans_isomorphic, identity_cospan
from spancsp.gallery import extend, merge
from spancsp.serialize import export_dot

# two edges a -> c <- b, with a and b as inputs and c as output
first = merge()
# one edge c -> d, continuing from c
second = extend()

glued = compose_cospans(first, second)
print("apex nodes:", sorted(glued.apex.nodes))
print("apex edges:", sorted(glued.apex.edge_items()))
print("inputs:", sorted(glued.left_foot.nodes), "outputs:", sorted(glued.right_foot.nodes))

# composing the other way around is refused: the feet do not match
try:
    compose_cospans(second, first)
except ValueError as exc:
    print("refused:", exc)

# gluing on an identity cospan changes identifiers, not shape; the
# comparison looks for an apex isomorphism fixing both boundaries
padded = compose_cospans(glued, identity_cospan(glued.right_foot))
print("unit law holds:", cospans_isomorphic(padded, glued) is not None)

# Graphviz rendering, inputs in green and outputs in salmon
print(export_dot(glued).decode())

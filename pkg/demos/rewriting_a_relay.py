"""
Rewriting a relay into a diamond
================================

A rule replaces the middle node of a two-edge path by a small diamond,
keeping the boundary fixed. The rule can be run backwards, or with its
inputs and outputs exchanged.
"""

from spancsp import apply_rule, cospans_isomorphic, dualize_rule, find_matches, invert_rule
from spancsp.errors import DanglingError
from spancsp.gallery import diamond, relay, relay_in_context, relay_to_diamond_rule
from spancsp.graph import Graph
from spancsp.rewrite import open_graph

rule = relay_to_diamond_rule()
host = relay()

(match,) = find_matches(rule, host)
step = apply_rule(rule, host, match)
print("result is the diamond:", cospans_isomorphic(step.result, diamond()) is not None)

# the comatch says where the replacement landed, so the inverse rule
# can undo the step exactly there
back = apply_rule(invert_rule(rule), step.result, step.comatch)
print("undone:", cospans_isomorphic(back.result, host) is not None)

# in a longer path the pattern occurs three times
print("matches in context:", len(find_matches(rule, relay_in_context())))

# deleting a node that still has an unmatched edge is not allowed
busy = open_graph(Graph.from_edges([0, 1, 2, 3], [(0, 1), (1, 2), (1, 3)]), [0], [2])
try:
    apply_rule(rule, busy, find_matches(rule, busy)[0])
except DanglingError as exc:
    print("rejected:", exc)

# exchanging inputs and outputs gives a rule for the reversed relay
dual = dualize_rule(rule)
(m,) = find_matches(dual, host.reversed())
print("dual works:", cospans_isomorphic(apply_rule(dual, host.reversed(), m).result, diamond().reversed()) is not None)

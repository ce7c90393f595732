"""Step through the construction on the 2x2 example e1 -> e2 with J = plain conjugation.

Prints the graph, its R-image, the defect space, both splittings of the
defect and which of them yields a graph.
"""

import numpy as np

from jextend import Conjugation, PartialOperator, build_doubled_map, defect_space, graph_frame, operator_from_graph
from jextend.errors import NotAGraph
from jextend.splitter import pair_fixed_vectors
from jextend.subspaces import Frame, direct_sum, map_frame

np.set_printoptions(precision=4, suppress=True)

J = Conjugation(np.eye(2))
R = build_doubled_map("R", J)
G = graph_frame(PartialOperator.from_vectors(2, [[1, 0]], [[0, 1]]))
print("G_A basis (x; y):\n", G.basis.T)
print("R G_A basis:\n", map_frame(G, R).basis.T)
D = defect_space(G, R)
print("defect space D, dim", D.dim, ":\n", D.basis.T)

g = np.column_stack([np.array([1, -1, 1, -1]) / 2, np.array([1j, 1j, -1j, -1j]) / 2])
plus, minus = pair_fixed_vectors(g)
for name, X in (("f+", plus), ("f-", minus)):
    G_B = direct_sum(G, Frame(X))
    try:
        print(f"X = span{{{name}}} -> B =\n", operator_from_graph(G_B))
    except NotAGraph as exc:
        print(f"X = span{{{name}}} -> not a graph ({exc})")

"""Split a flow on a five-node complex into gradient, curl and harmonic parts.

The complex has two filled triangles, {1,2,3} and {3,4,5}, and one empty
square 2-3-4 that carries the harmonic part.
"""
import numpy as np

from hodgerank import boundary_operators, build_complex, decompose, hodge_laplacian

c = build_complex([{1, 2, 3}, {2, 4}, {3, 4, 5}, {3, 5}, {4, 5}, {3, 4}])
print(c.summary())

b = boundary_operators(c)
print("B1 =\n", b.B1.toarray().astype(int))
print("B2 =\n", b.B2.toarray().astype(int))

bundle = hodge_laplacian(b)
flow = np.array([3.0, 1, -1, 1, 2, 3, -2])
h = decompose(flow, bundle, "unnormalized")

np.set_printoptions(precision=3, suppress=True)
print(f"{'edge':>8} {'flow':>7} {'grad':>7} {'curl':>7} {'harm':>7}")
for (u, v), row in zip(c.edge_labels().tolist(), np.column_stack([flow, h.gradient, h.curl, h.harmonic])):
    print(f"{f'[{u},{v}]':>8}" + "".join(f"{x:8.3f}" for x in row))

# the three parts are orthogonal and add back up to the flow
print("reconstruction error", np.abs(h.gradient + h.curl + h.harmonic - flow).max())
print("<grad, harm> =", float(h.gradient @ h.harmonic))

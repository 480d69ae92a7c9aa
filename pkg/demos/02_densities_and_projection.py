"""Induced subtree densities and the projection between leaf counts.

Run with ``python demos/02_densities_and_projection.py``.
"""

from fractions import Fraction

from treepoly import (ShapeDistribution, build_comb, build_complete, density_matrix,
                      density_row, display_name, enumerate_shapes, marginalize,
                      parse_shape)

tree = parse_shape("((*,*),((*,*),*))")
print(f"The 5-leaf tree {tree.encoding} seen through its 4-leaf windows:")
for pattern, prob in density_row(tree, 4).items():
    print(f"  {display_name(pattern):7s} {prob}")

print("\nA comb only ever contains combs:")
row = density_row(build_comb(9), 4)
print("  " + "  ".join(f"{display_name(p)}: {v}" for p, v in row.items()))

print("\nThe full density matrix stacks one column per larger shape (n=4, m=5):")
dm = density_matrix(4, 5)
for t, column in zip(dm.col_index.shapes, dm.columns):
    cells = ", ".join(str(v) for v in column.probs)
    print(f"  {display_name(t):7s} -> ({cells})")

print("\nProjection is linear: marginalizing a mixture mixes the projections.")
index = enumerate_shapes(6)
uniform = ShapeDistribution(index, tuple(Fraction(1, len(index)) for _ in index))
print("  uniform mixture over 6-leaf shapes, pushed down to 4 leaves:")
for pattern, prob in marginalize(uniform, 4).items():
    print(f"    {display_name(pattern):7s} {prob}")

print("\nDensities of the complete tree approach their limits from above:")
for k in (3, 4, 5):
    row = density_row(build_complete(k), 4)
    print(f"  depth {k}: balanced share {row.probs[1]} (limit 3/7)")

"""Tour of the shape layer: enumeration, parsing, named families, counting.

Run with ``python demos/01_tree_shapes.py``.
"""

import math

from treepoly import (build_bicomb, build_comb, build_comb_replace, build_complete,
                      build_max_balanced, count_pattern, display_name,
                      enumerate_shapes, labeling_count, parse_shape, restrict)

print("How many distinct rooted binary tree shapes are there?")
for n in range(1, 13):
    print(f"  n={n:2d}: {len(enumerate_shapes(n))}")

print("\nThe canonical order lists the comb tree first; n=5 has three shapes:")
for t in enumerate_shapes(5):
    print(f"  {display_name(t):7s} {t.encoding}")

print("\nShapes parse from a tiny bracket language and canonicalize themselves:")
messy = "((*,(*,*)),*)"
print(f"  {messy!r} -> {parse_shape(messy).encoding}")

print("\nNamed constructions:")
print(f"  bicomb(2,3)          = {display_name(build_bicomb(2, 3))}")
print(f"  comb over Bal_4, k=2 = {display_name(build_comb_replace(parse_shape('((*,*),(*,*))'), 2))}")
print(f"  complete depth 3     = {build_complete(3).encoding}")
print(f"  max balanced n=6     = {build_max_balanced(6).encoding}")

print("\nEach shape carries n!/2^s leaf labelings; they partition (2n-3)!!:")
for n in (4, 5, 6):
    parts = {display_name(t): labeling_count(t) for t in enumerate_shapes(n)}
    total = sum(parts.values())
    odd = math.prod(range(2 * n - 3, 0, -2))
    print(f"  n={n}: {parts} -> sum {total} == (2n-3)!! = {odd}")

print("\nRestriction keeps a leaf subset and suppresses what is left behind:")
tree = parse_shape("((*,*),((*,*),*))")
for subset in ([0, 1, 2, 3], [0, 2, 3, 4]):
    kept = restrict(tree, subset)
    print(f"  leaves {subset} of {tree.encoding} -> {display_name(kept)}")

print("\nPattern counting: how often does each 4-leaf shape appear inside?")
host = build_max_balanced(10)
for pattern in enumerate_shapes(4):
    hits = count_pattern(host, pattern)
    print(f"  {display_name(pattern):7s} appears in {hits} of {math.comb(10, 4)} leaf quadruples")

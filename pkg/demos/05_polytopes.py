"""Certified convex geometry of the finitely consistent distributions.

Run with ``python demos/05_polytopes.py``.
"""

from fractions import Fraction

from treepoly import (certify_vertices, contains_polytope, convex_hull_2d,
                      convex_membership, density_matrix, face_restrict,
                      project_points)

print("Project every 7-leaf shape onto its 5-leaf densities and certify which")
print("columns are extreme (an exact LP per point):")
dm = density_matrix(5, 7)
poly = certify_vertices(dm.point_set())
for i in poly.vertices:
    point = poly.point_set.points[i]
    tag = poly.point_set.provenance[i]
    print(f"  vertex ({', '.join(str(v) for v in point)})  from {tag}")
print(f"  -> {len(poly.vertices)} vertices among {len(dm.columns)} columns")

print("\nAn independent planar hull on the first two coordinates agrees:")
hull = convex_hull_2d(project_points(dm.point_set().points, (0, 1)))
lp_side = set(project_points(poly.vertex_points(), (0, 1)))
print(f"  orientation-predicate hull size {len(hull)}, same point set: {lp_side == set(hull)}")

print("\nMembership queries return certificates either way:")
inside = convex_membership((Fraction(4, 21), Fraction(1, 7), Fraction(2, 3)),
                           dm.point_set().points)
outside = convex_membership((Fraction(0), Fraction(1), Fraction(0)),
                            dm.point_set().points)
print(f"  limit point of the split family: {inside.status}")
print(f"  pure giraffe point:              {outside.status}")

print("\nThe polytopes shrink as the consistency level grows:")
polys = {m: certify_vertices(density_matrix(5, m).point_set()) for m in (5, 6, 7, 8)}
for m in (5, 6, 7):
    ok, _ = contains_polytope(polys[m + 1], polys[m])
    print(f"  level {m + 1} inside level {m}: {ok}")

print("\nFixing a coordinate at zero cuts out a face with known provenance:")
face = face_restrict(polys[8], 2)
for tag in face.point_set.provenance:
    print(f"  on the no-balanced-subtree face: {tag}")

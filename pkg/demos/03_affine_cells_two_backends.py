"""Affine cells: locally closed sets with two interchangeable backends.

A cell is V(F) minus V(g1*...*gr).  The deterministic backend stores a
basis of the cell's distinguished ideal; the witness backend instead
keeps a basis of a random zero-dimensional slice and answers radical
membership and properness questions from it, postponing every
positive-dimensional basis computation until someone actually asks.

Run:  python demos/03_affine_cells_two_backends.py
"""

import random

from equidim import AffineCell, PolyRing, PrimeField, groebner_of, make_witness

R = PolyRing(PrimeField(65521), ("x", "y", "z"))
x, y, z = R.gens()
rng = random.Random(11)

# V(xy): the union of two planes. Deterministic backend:
gbX = AffineCell(R, "gb", groebner_of(R, [x * y]), ())
print("gb cell:", gbX)

# Witness backend: same set, dimension 2, its witness is a slice by two
# random hyperplanes -- one point on each plane.
W, forms = make_witness(R, (x * y,), (), 2, rng)
wX = AffineCell(R, "witness", (x * y,), (), W, 2, forms)
print("witness cell, slice degree:", wX.dim_degree()[1])

# Both answer the same questions:
for f in (x, z, x + 3 * y):
    print(f"is_proper({f}):  gb={gbX.is_proper(f)}  witness={wX.is_proper(f)}")
    print(f"rad_member({f}): gb={gbX.rad_member(f)}  witness={wX.rad_member(f)}")

# Removing a hypersurface keeps the witness backend lazy: only the
# zero-dimensional slice is saturated, the equations stay untouched.
sub = wX.subtract(x)
print("\nafter subtracting V(x): stored equations", [str(g) for g in sub.F],
      "| factors", [str(g) for g in sub.G])
print("forced basis of the closure:", sub.basis())  # the x=0 plane is gone

# Proper intersection drops the dimension by one and records fresh
# witness forms for the smaller slice.
cut = wX.intersect_proper(z - 1, rng)
print("\nafter a proper cut by z=1: dim", cut.d, "degree", cut.dim_degree()[1])
